#include "rzlab/polynomial.hpp"

#include <cmath>
#include <sstream>

#include "rzlab/error.hpp"

namespace rzlab {

namespace {
const Rational kZero = 0;
}

Polynomial Polynomial::constant(const Rational& c) {
  Polynomial p;
  if (sgn(c) != 0) {
    p.exact_ = {c};
    p.rebuild_shadow();
  }
  return p;
}

Polynomial Polynomial::monomial(int deg, const Rational& c) {
  Polynomial p;
  if (sgn(c) != 0) {
    p.exact_.assign(deg + 1, Rational(0));
    p.exact_[deg] = c;
    p.rebuild_shadow();
  }
  return p;
}

Polynomial Polynomial::from_exact(std::vector<Rational> coeffs) {
  Polynomial p;
  p.exact_ = std::move(coeffs);
  for (auto& q : p.exact_) q.canonicalize();
  p.trim();
  p.rebuild_shadow();
  return p;
}

Polynomial Polynomial::from_doubles(const std::vector<double>& coeffs) {
  Polynomial p;
  p.exact_.reserve(coeffs.size());
  for (double d : coeffs) p.exact_.push_back(rational_from_double(d));
  p.trim();
  // the doubles are exact, so they are their own nearest rounding
  p.shadow_.assign(coeffs.begin(), coeffs.begin() + p.exact_.size());
  return p;
}

void Polynomial::trim() {
  while (!exact_.empty() && sgn(exact_.back()) == 0) exact_.pop_back();
}

void Polynomial::rebuild_shadow() {
  shadow_.resize(exact_.size());
  for (size_t i = 0; i < exact_.size(); ++i) shadow_[i] = to_double_nearest(exact_[i]);
}

const Rational& Polynomial::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(exact_.size())) return kZero;
  return exact_[i];
}

double Polynomial::coeff_double(int i) const {
  if (i < 0 || i >= static_cast<int>(shadow_.size())) return 0.0;
  return shadow_[i];
}

Rational Polynomial::eval_exact(const Rational& x_in) const {
  Rational x = x_in;
  x.canonicalize();
  Rational acc = 0;
  for (size_t i = exact_.size(); i-- > 0;) acc = acc * x + exact_[i];
  return acc;
}

double Polynomial::eval(double x) const {
  double acc = 0;
  for (size_t i = shadow_.size(); i-- > 0;) acc = acc * x + shadow_[i];
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (degree() <= 0) return zero();
  std::vector<Rational> d(exact_.size() - 1);
  for (size_t i = 1; i < exact_.size(); ++i) d[i - 1] = exact_[i] * static_cast<long>(i);
  return from_exact(std::move(d));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<Rational> c(std::max(exact_.size(), o.exact_.size()), Rational(0));
  for (size_t i = 0; i < exact_.size(); ++i) c[i] = exact_[i];
  for (size_t i = 0; i < o.exact_.size(); ++i) c[i] += o.exact_[i];
  return from_exact(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const {
  std::vector<Rational> c(exact_);
  for (auto& q : c) q = -q;
  return from_exact(std::move(c));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return zero();
  std::vector<Rational> c(exact_.size() + o.exact_.size() - 1, Rational(0));
  for (size_t i = 0; i < exact_.size(); ++i) {
    if (sgn(exact_[i]) == 0) continue;
    for (size_t j = 0; j < o.exact_.size(); ++j) c[i + j] += exact_[i] * o.exact_[j];
  }
  return from_exact(std::move(c));
}

Polynomial Polynomial::scaled(const Rational& t) const {
  std::vector<Rational> c(exact_);
  for (auto& q : c) q *= t;
  return from_exact(std::move(c));
}

std::string Polynomial::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < exact_.size(); ++i) {
    if (i) os << ", ";
    os << format_rational(exact_[i]);
  }
  return os.str();
}

Polynomial Polynomial::parse(const std::string& s) {
  std::vector<Rational> c;
  std::string tok;
  std::istringstream is(s);
  while (std::getline(is, tok, ',')) {
    if (tok.find_first_not_of(" \t") == std::string::npos) continue;
    c.push_back(parse_rational(tok));
  }
  return from_exact(std::move(c));
}

double evaluate(const Polynomial& p, double x) { return p.eval(x); }

Rational evaluate_exact(const Polynomial& p, const Rational& x) { return p.eval_exact(x); }

Polynomial reverse(const Polynomial& p, int m) {
  if (p.degree() > m - 1)
    throw Error(Err::DegreeExceedsM, "reverse: degree " + std::to_string(p.degree()) +
                                         " exceeds m-1 = " + std::to_string(m - 1));
  std::vector<Rational> c(m, Rational(0));
  for (int i = 0; i <= p.degree(); ++i) c[m - 1 - i] = p.coeff(i);
  return Polynomial::from_exact(std::move(c));
}

double cauchy_root_bound(const Polynomial& p) {
  if (p.is_zero()) throw Error(Err::ZeroPolynomial, "cauchy_root_bound");
  int d = p.degree();
  double lead = std::fabs(p.coeff_double(d));
  double m = 0;
  for (int i = 0; i < d; ++i) m = std::max(m, std::fabs(p.coeff_double(i)) / lead);
  return 1.0 + m;
}

}  // namespace rzlab
