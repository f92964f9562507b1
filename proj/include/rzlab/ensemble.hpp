#pragma once
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "rzlab/polynomial.hpp"
#include "rzlab/rational.hpp"
#include "rzlab/rng.hpp"

namespace rzlab {

enum class LawKind { Gaussian, UniformSymmetric, Rademacher, FiniteDiscrete };

struct Atom {
  Rational value;
  Rational prob;
};

/// Zero-mean unit-variance coefficient law.
class CoefficientLaw {
 public:
  static CoefficientLaw gaussian();
  static CoefficientLaw uniform_symmetric(double half_width);
  static CoefficientLaw rademacher();
  static CoefficientLaw finite_discrete(std::vector<Atom> atoms);

  LawKind kind() const { return kind_; }
  double half_width() const { return half_width_; }
  const std::vector<Atom>& atoms() const { return atoms_; }

  /// One draw from the per-trial stream. Continuous laws return a double;
  /// discrete laws return one of the atom values (rounded to double).
  double sample(TrialRng& rng) const;

  /// Exact draw: the atom value for discrete laws, the exact rational image
  /// of the double draw otherwise.
  Rational sample_exact(TrialRng& rng) const;

  /// E|a|^p, analytic for the built-ins, exact summation for discrete laws.
  double moment_abs(int p) const;

  /// Support membership helpers used by conditioned sampling.
  bool box_reachable(double center, double eps) const;

  bool operator==(const CoefficientLaw& o) const;

 private:
  LawKind kind_ = LawKind::Gaussian;
  double half_width_ = 0.0;
  std::vector<Atom> atoms_;
  std::vector<uint64_t> cum_threshold_;  // discrete sampling thresholds (2^64 scale)
};

double law_moment(const CoefficientLaw& law, int p);

/// Indices i in S freeze the coefficient of x^{n-i} to values[i].
struct FixedCoeffSpec {
  int k = 0;
  std::set<int> S;
  std::map<int, Rational> values;

  Rational value_of(int i) const;  // 0 when i in S but unlisted
  bool empty() const { return S.empty(); }
};

/// Optional growth rule for the block of fixed-to-zero top coefficients:
/// k(n) = max(1, floor(a * log n)) or max(1, floor(n^a)).
struct GrowthMode {
  enum class Kind { None, LogK, PowK };
  Kind kind = Kind::None;
  double a = 0.0;

  int k_of(int n) const;
  bool enabled() const { return kind != Kind::None; }
};

struct EnsembleSpec {
  std::string id;  // optional label used in reports
  int n = 0;       // number of coefficient slots; polynomial degree n-1
  CoefficientLaw law = CoefficientLaw::gaussian();
  FixedCoeffSpec fixed;
  GrowthMode growth;

  /// The fixed block actually in force (expands growth rules).
  FixedCoeffSpec effective_fixed() const;
};

enum class SpecError {
  MeanNotZero,
  VarianceNotOne,
  MissingK,
  BadIndexSet,
  ValueOutsideS,
  BadLeadingSign,
  DegreeTooSmall,
};

const char* to_string(SpecError e);

/// Returns every violated invariant, not just the first. Empty means ok.
std::vector<SpecError> validate_spec(const EnsembleSpec& spec);

/// f(x) = sum_{i in S} c_i x^{n-i} + sum_{i not in S} a_{n-i} x^{n-i} with the
/// random slots drawn from the per-trial stream in increasing slot order.
/// Pure in (spec, seed): identical arguments give bit-identical coefficients.
Polynomial sample_polynomial(const EnsembleSpec& spec, uint64_t seed);

/// Convenience: commonly used specs.
EnsembleSpec monic_spec(int n, CoefficientLaw law);
EnsembleSpec fully_random_spec(int n, CoefficientLaw law);

}  // namespace rzlab
