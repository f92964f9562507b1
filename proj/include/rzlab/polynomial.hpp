#pragma once
#include <optional>
#include <string>
#include <vector>

#include "rzlab/rational.hpp"

namespace rzlab {

/// Dense real polynomial, ascending degree order.
///
/// Every coefficient carries an exact rational value and a double shadow equal
/// to the rational rounded to nearest. The exact values are authoritative; the
/// shadows feed the floating hot paths. The zero polynomial is the empty
/// coefficient list (degree() == -1).
class Polynomial {
 public:
  Polynomial() = default;

  static Polynomial zero() { return Polynomial(); }
  static Polynomial constant(const Rational& c);
  static Polynomial monomial(int deg, const Rational& c);
  static Polynomial from_exact(std::vector<Rational> coeffs);
  static Polynomial from_doubles(const std::vector<double>& coeffs);

  bool is_zero() const { return exact_.empty(); }
  int degree() const { return static_cast<int>(exact_.size()) - 1; }
  size_t size() const { return exact_.size(); }

  /// Exact coefficient of x^i; zero beyond the degree.
  const Rational& coeff(int i) const;
  double coeff_double(int i) const;
  const std::vector<Rational>& coeffs() const { return exact_; }
  const std::vector<double>& shadow() const { return shadow_; }

  Rational eval_exact(const Rational& x) const;
  double eval(double x) const;

  Polynomial derivative() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial scaled(const Rational& t) const;
  bool operator==(const Polynomial& o) const { return exact_ == o.exact_; }

  /// Serialized as an ascending comma-separated list of exact rationals.
  std::string to_string() const;
  static Polynomial parse(const std::string& s);

 private:
  void trim();
  void rebuild_shadow();

  std::vector<Rational> exact_;
  std::vector<double> shadow_;
};

/// Horner evaluation on the double shadows.
double evaluate(const Polynomial& p, double x);
Rational evaluate_exact(const Polynomial& p, const Rational& x);

/// Degree-(m-1) coefficient reversal x^{m-1} p(1/x). Requires degree(p) <= m-1.
Polynomial reverse(const Polynomial& p, int m);

/// B = 1 + max_i |p_i / p_deg| over i < deg; all real roots lie in [-B, B].
double cauchy_root_bound(const Polynomial& p);

}  // namespace rzlab
