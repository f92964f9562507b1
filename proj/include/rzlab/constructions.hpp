#pragma once
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rzlab/ensemble.hpp"
#include "rzlab/polynomial.hpp"

namespace rzlab {

/// The two alternating low-degree generator blocks:
///   a(x) = -beta x^{s-1} - alpha (1 + x + ... + x^{s-2})
///   b(x) = -alpha - beta (x + x^2 + ... + x^{s-1})
/// with optional sign flips (the flip convention that actually produces a
/// verified zero pattern is part of the tuned profile, not guessed here).
struct GeneratorPair {
  Polynomial a, b;
};

GeneratorPair build_generator_pair(int s, const Rational& alpha, const Rational& beta,
                                   bool flip_a = false, bool flip_b = false);

/// Parameters of the odd-j forcing construction. The pattern polynomial is
///   B(x) = (1 + x^s + ... + x^{r_1-s}) A(x) + (x^{r_1} + ... + x^{r_2-s}) B'(x)
///          + ... + (x^{r_j} + ... + x^{m-s}) B'(x) + alpha x^m
/// with A, B' the generator pair, blocks alternating, r_list multiples of s.
struct OddPatternParams {
  int j = 1;  // odd
  int s = 4;  // even, >= 4
  Rational alpha = -1;
  Rational beta = Rational(1, 4);
  double delta = 0.1;
  int r = 8;
  double epsilon = 0.05;
  std::vector<int> r_list;  // derived when empty
  int m = 0;                // derived when zero
  bool flip_a = false, flip_b = false;
  double cap_M = 3.0;  // top-slot bound

  static std::vector<int> derive_r_list(int j, int s, int r);
  static int derive_m(int s, int r_last, double delta, double rho, int n);

  void validate() const;  // Err::BadParams / Err::BlockOverlap
};

Polynomial build_pattern_poly(const OddPatternParams& params);

/// Even-j case: the pattern polynomial is supplied by the caller. This
/// template (a comb of uniformly positive generator blocks) is one working
/// choice for j = 0.
Polynomial build_even_pattern_template(int m, int s, const Rational& alpha, const Rational& beta);

struct EvenPatternParams {
  int j = 0;  // even
  int m = 0;  // low-block length (boxes on coefficients 0..m-1)
  double epsilon = 0.05;
  double cap_M = 3.0;
};

struct FailureCert {
  uint64_t trial_index = 0;
  uint64_t seed = 0;
  std::string reason;
  std::string sample_coeffs;  // exact ascending rational list
  int zeros_in_unit = -1;
  bool all_simple = false;
  bool sign_ok = false;
};

struct PatternReport {
  uint64_t trials = 0;
  uint64_t successes = 0;
  uint64_t failures = 0;
  std::map<int, uint64_t> zero_histogram;
  std::vector<FailureCert> failure_details;  // capped at 16
  uint64_t rejected_draws = 0;
  double wall_time_s = 0;
};

/// Conditioned verification of the odd-j pattern: samples the ensemble
/// conditioned on the coefficient boxes, the bounded top block, the
/// normalized-positive middle block (margin >= n^{-1/4}, certified exactly)
/// and the moment cap; then counts zeros in [0,1] exactly and checks the
/// sign on [-1,0]. Success means: exactly j zeros in [0,1], all simple,
/// negative on [-1,0].
PatternReport verify_odd_pattern(const OddPatternParams& params, const EnsembleSpec& spec,
                                 uint64_t trials, uint64_t master_seed,
                                 uint64_t rejection_budget = 1000000);

/// Even-j analogue; claims positivity on [-1,0].
PatternReport verify_even_pattern(const Polynomial& pattern, const EvenPatternParams& params,
                                  const EnsembleSpec& spec, uint64_t trials, uint64_t master_seed,
                                  uint64_t rejection_budget = 1000000);

/// The ensemble with fixed slots (1, -2024) under the unit-variance uniform
/// law: every sample is negative at x = 2 (checked exactly per trial).
PatternReport check_forced_negativity(int n, uint64_t trials,
                                      uint64_t master_seed = 0x5EEDF00Dull);

/// Sign of the closed-form bound 2^{n-2} (2 - 2024 + sqrt(3)) is negative.
bool forced_negativity_bound_negative(int n);

/// The spec used by check_forced_negativity.
EnsembleSpec forced_negativity_spec(int n);

struct WitnessResult {
  bool found = false;
  int s = 0;
  uint64_t seed = 0;
  Polynomial witness;
  std::map<int, uint64_t> trials_per_s;
  // a none-found result is evidence, not a proof of nonexistence
};

/// Searches even window sizes s in (k, s_max] for a sample of f_{s,S} with no
/// real root of absolute value exceeding 1 (exact test). The returned witness
/// is re-verified before reporting.
WitnessResult find_no_outside_root_witness(const FixedCoeffSpec& fixed, const CoefficientLaw& law,
                                           int s_max, uint64_t trials_per_s, uint64_t master_seed);

/// Moment-growth exponent used by the coefficient cap: largest p with
/// E|a|^p <= n (capped), combined with the 1/sqrt(log n) floor.
double moment_cap_exponent(const CoefficientLaw& law, int n);

}  // namespace rzlab
