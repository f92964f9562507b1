#include "rzlab/polycore.hpp"

#include <cmath>

#include "rzlab/error.hpp"

namespace rzlab {

ThresholdFamily ThresholdFamily::zero() { return ThresholdFamily{}; }

ThresholdFamily ThresholdFamily::constant_value(const Rational& c) {
  ThresholdFamily t;
  t.kind = Kind::Constant;
  t.constant = c;
  return t;
}

ThresholdFamily ThresholdFamily::grid(std::vector<std::pair<Rational, Rational>> knots,
                                      const Rational& tail_value) {
  if (knots.size() < 2) throw Error(Err::BadParams, "grid threshold needs >= 2 knots");
  for (size_t i = 1; i < knots.size(); ++i)
    if (!(knots[i - 1].first < knots[i].first))
      throw Error(Err::BadParams, "grid knots must be strictly increasing");
  ThresholdFamily t;
  t.kind = Kind::Grid;
  t.knots = std::move(knots);
  t.tail_value = tail_value;
  return t;
}

Rational ThresholdFamily::window_lo() const {
  return kind == Kind::Grid ? knots.front().first : Rational(0);
}

Rational ThresholdFamily::window_hi() const {
  return kind == Kind::Grid ? knots.back().first : Rational(0);
}

Rational ThresholdFamily::at_exact(const Rational& x) const {
  switch (kind) {
    case Kind::Zero:
      return 0;
    case Kind::Constant:
      return constant;
    case Kind::Grid: {
      if (x < knots.front().first || x > knots.back().first) return tail_value;
      for (size_t i = 1; i < knots.size(); ++i) {
        if (x <= knots[i].first) {
          const auto& [x0, y0] = knots[i - 1];
          const auto& [x1, y1] = knots[i];
          return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
        }
      }
      return knots.back().second;
    }
  }
  return 0;
}

double ThresholdFamily::at(double x) const {
  if (kind == Kind::Zero) return 0.0;
  if (kind == Kind::Constant) return to_double_nearest(constant);
  return to_double_nearest(at_exact(rational_from_double(x)));
}

bool ThresholdFamily::is_identically_zero() const {
  if (kind == Kind::Zero) return true;
  if (kind == Kind::Constant) return sgn(constant) == 0;
  return false;
}

double sigma_squared(const EnsembleSpec& spec, double x) {
  FixedCoeffSpec fixed = spec.effective_fixed();
  long double x2 = static_cast<long double>(x) * x;
  long double acc = 0;
  // Horner over slots i = 1..n: coefficient weight at exponent 2(n-i)
  for (int i = 1; i <= spec.n; ++i) {
    long double w;
    if (fixed.S.count(i)) {
      double c = to_double_nearest(fixed.value_of(i));
      w = static_cast<long double>(c) * c;
    } else {
      w = 1.0L;
    }
    acc = acc * x2 + w;
  }
  return static_cast<double>(acc);
}

Rational sigma_squared_exact(const EnsembleSpec& spec, const Rational& x) {
  FixedCoeffSpec fixed = spec.effective_fixed();
  Rational x2 = x * x;
  Rational acc = 0;
  for (int i = 1; i <= spec.n; ++i) {
    if (fixed.S.count(i)) {
      Rational c = fixed.value_of(i);
      acc = acc * x2 + c * c;
    } else {
      acc = acc * x2 + 1;
    }
  }
  return acc;
}

Polynomial sigma_squared_poly(const EnsembleSpec& spec) {
  FixedCoeffSpec fixed = spec.effective_fixed();
  std::vector<Rational> c(2 * spec.n - 1, Rational(0));
  for (int i = 1; i <= spec.n; ++i) {
    if (fixed.S.count(i)) {
      Rational v = fixed.value_of(i);
      c[2 * (spec.n - i)] += v * v;
    } else {
      c[2 * (spec.n - i)] += 1;
    }
  }
  return Polynomial::from_exact(std::move(c));
}

double normalized_value(const EnsembleSpec& spec, const Polynomial& p, double x) {
  double s2 = sigma_squared(spec, x);
  if (!(s2 > 0)) throw Error(Err::ZeroVariancePoint, "normalized_value");
  return p.eval(x) / std::sqrt(s2);
}

namespace {

// chi cap for a moved random slot: 1 if the slot index is even and x < 0,
// 1/2 if the index is odd, 0 otherwise
double chi_cap(int i, double x) {
  if (i % 2 == 0 && x < 0) return 1.0;
  if (i % 2 == 1) return 0.5;
  return 0.0;
}

double reduced_threshold_impl(const EnsembleSpec& spec, const ThresholdFamily& gamma, double x,
                              bool with_caps) {
  FixedCoeffSpec fixed = spec.effective_fixed();
  int n = spec.n, k = fixed.k;
  if (n <= k) throw Error(Err::DegreeTooSmall, "reduced threshold needs n > k");

  // trailing-block variance sum_{i=1}^{n-k} x^{2(n-k-i)}
  long double x2 = static_cast<long double>(x) * x;
  long double tail_var = 0;
  for (int i = 1; i <= n - k; ++i) tail_var = tail_var * x2 + 1.0L;

  // top-slot second moment sum: fixed slots c_i^2 x^{2(n-i)};
  // unfixed slots among 1..k have unit variance
  long double top_var = 0;
  long double shift = 0;
  long double xp = 1;  // x^{n-k} ... accumulate powers x^{n-i} top-down
  // compute x^{n-i} for i = k..1 progressively: start at x^{n-k}
  long double x_nk = std::pow(static_cast<long double>(std::fabs(x)), n - k);
  if (x < 0 && (n - k) % 2 == 1) x_nk = -x_nk;
  xp = x_nk;
  for (int i = k; i >= 1; --i) {
    // xp == x^{n-i}
    if (fixed.S.count(i)) {
      long double c = to_double_nearest(fixed.value_of(i));
      top_var += c * c * xp * xp;
      shift += c * xp;
    } else {
      top_var += xp * xp;
      if (with_caps) shift += chi_cap(i, x) * xp;
    }
    xp *= x;
  }

  long double g = gamma.at(x);
  long double root = std::sqrt(1.0L + top_var / tail_var);
  return static_cast<double>(g * root - shift / std::sqrt(tail_var));
}

}  // namespace

double reduced_threshold_capped(const EnsembleSpec& spec, const ThresholdFamily& gamma, double x) {
  return reduced_threshold_impl(spec, gamma, x, true);
}

double reduced_threshold_fixed_only(const EnsembleSpec& spec, const ThresholdFamily& gamma,
                                    double x) {
  return reduced_threshold_impl(spec, gamma, x, false);
}

}  // namespace rzlab
