#pragma once
#include <utility>
#include <vector>

#include "rzlab/ensemble.hpp"
#include "rzlab/polynomial.hpp"

namespace rzlab {

/// Deterministic threshold function on all of R: identically zero, a constant,
/// or a piecewise-linear table on a window with constant tails.
struct ThresholdFamily {
  enum class Kind { Zero, Constant, Grid };

  Kind kind = Kind::Zero;
  Rational constant = 0;
  std::vector<std::pair<Rational, Rational>> knots;  // strictly increasing x
  Rational tail_value = 0;

  static ThresholdFamily zero();
  static ThresholdFamily constant_value(const Rational& c);
  /// Knots must be strictly increasing; the first and last knots are the
  /// window endpoints. Throws Err::BadParams otherwise.
  static ThresholdFamily grid(std::vector<std::pair<Rational, Rational>> knots,
                              const Rational& tail_value);

  double at(double x) const;
  Rational at_exact(const Rational& x) const;
  bool is_identically_zero() const;
  Rational window_lo() const;
  Rational window_hi() const;
};

/// E(f_{n,S}(x)^2) = sum_{i in S} c_i^2 x^{2(n-i)} + sum_{i not in S} x^{2(n-i)}.
/// Strictly positive for every real x (the constant slot is always present).
double sigma_squared(const EnsembleSpec& spec, double x);
Rational sigma_squared_exact(const EnsembleSpec& spec, const Rational& x);

/// The same second-moment function as an exact polynomial in x.
Polynomial sigma_squared_poly(const EnsembleSpec& spec);

/// f(x) / sqrt(sigma_squared(x)). Throws Err::ZeroVariancePoint if the
/// variance vanishes (not reachable for valid specs).
double normalized_value(const EnsembleSpec& spec, const Polynomial& p, double x);

/// Threshold seen by the trailing fully random block after the top k slots
/// are split off, with the moved random slots replaced by their parity caps
/// (1 for even slots at x < 0, 1/2 for odd slots, 0 otherwise).
double reduced_threshold_capped(const EnsembleSpec& spec, const ThresholdFamily& gamma, double x);

/// Same transfer with only the fixed slots subtracted (no caps).
double reduced_threshold_fixed_only(const EnsembleSpec& spec, const ThresholdFamily& gamma,
                                    double x);

}  // namespace rzlab
