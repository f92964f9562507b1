#pragma once
#include <utility>
#include <vector>

#include "rzlab/ensemble.hpp"
#include "rzlab/polycore.hpp"
#include "rzlab/polynomial.hpp"

namespace rzlab {

struct RootCountReport {
  int total = 0;   // distinct real roots
  int simple = 0;  // distinct real roots that are simple
  std::vector<std::pair<std::pair<Rational, Rational>, int>> per_interval;
  bool all_simple = true;
  enum class Method { ExactSturm, FastEigen, FastThenExact } method = Method::ExactSturm;
  bool certified = false;
};

/// Canonical Sturm chain p0 = p, p1 = p', p_{i+1} = -rem(p_{i-1}, p_i), exact
/// rational arithmetic, ending at the last nonzero remainder.
std::vector<Polynomial> sturm_sequence(const Polynomial& p);

/// Exact distinct-real-root count via the Sturm chain (integer subresultant
/// realization with canonical signs). certified is always true.
RootCountReport count_real_roots(const Polynomial& p);

/// Distinct roots in (a, b]. Endpoint roots are handled exactly: a root at b
/// is counted by explicit evaluation, a root at a is excluded, and the Sturm
/// query runs on the polynomial with endpoint roots deflated away.
int count_roots_in_interval(const Polynomial& p, const Rational& a, const Rational& b);

/// gcd(p, p') is constant (exact).
bool is_squarefree(const Polynomial& p);

struct FastCountOptions {
  double im_tol = 1e-8;            // |Im| <= im_tol*(1+|z|) counts as real
  double ambiguity_margin = 1e-6;  // closer than this to ambiguous => untrusted
  double residual_tol = 1e-6;      // relative backward-error bound at each root
};

struct FastCount {
  int count = 0;
  bool trusted = false;
};

/// Real-eigenvalue count of the companion matrix. trusted == false whenever
/// an eigenvalue sits within the ambiguity margin of the real axis, two real
/// eigenvalues cannot be certified distinct, or the residual filter fails.
/// Callers must escalate untrusted results to count_real_roots.
/// Throws Err::NumericalBreakdown if the Schur iteration fails.
FastCount count_real_roots_fast(const Polynomial& p, const FastCountOptions& opt = {});

/// Exact: p has no real root with |x| > 1, decided through the reversal
/// x^{m-1} p(1/x) and root counting inside the open unit interval(s).
bool no_real_roots_outside_unit_disk(const Polynomial& p, int m);

/// Exact strict positivity on all of R.
bool positive_everywhere(const Polynomial& p);

enum class ThresholdVerdict { Yes, No, Undecided };

struct ThresholdCheck {
  ThresholdVerdict verdict = ThresholdVerdict::Undecided;
  double witness = 0.0;  // meaningful for No
};

/// Does f_hat(x) = p(x)/sigma(x) exceed gamma(x) for every real x?
/// Exact when gamma is identically zero; otherwise constant tails are decided
/// exactly and the window is certified by adaptive evaluation with a
/// first-derivative Lipschitz bound at the given resolution. No is only
/// reported with an exactly confirmed witness; Undecided when certification
/// fails at the resolution floor.
ThresholdCheck exceeds_threshold_everywhere(const EnsembleSpec& spec, const Polynomial& p,
                                            const ThresholdFamily& gamma, double resolution);

/// Exact distinct-real-root count through squarefree certification plus
/// Descartes bisection; used on high-degree audit paths where the full
/// subresultant chain is costly. Cross-validated against count_real_roots.
int count_distinct_real_roots_isolation(const Polynomial& p);

/// Exact root-existence test (Descartes bisection with Sturm fallback).
bool has_real_root_exact(const Polynomial& p);

}  // namespace rzlab
