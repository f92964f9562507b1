#pragma once
#include <vector>

#include "rzlab/polynomial.hpp"
#include "rzlab/rational.hpp"

namespace rzlab {

/// Dense integer polynomial, ascending order, used by the exact kernels.
/// Normalized: no leading zero entries; the zero polynomial is empty.
struct IntPoly {
  std::vector<Integer> c;

  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  const Integer& lead() const { return c.back(); }
  void trim() {
    while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
  }
};

/// Clears denominators with a positive factor; sign structure is preserved.
IntPoly int_from_poly(const Polynomial& p);
Polynomial poly_from_int(const IntPoly& p);

IntPoly derivative(const IntPoly& p);
Integer content(const IntPoly& p);
IntPoly primitive_part(const IntPoly& p);

/// Exact sign of p(x) for rational x (scaled integer Horner).
int sign_at(const IntPoly& p, const Rational& x);
int sign_at_plus_inf(const IntPoly& p);
int sign_at_minus_inf(const IntPoly& p);

/// Exact quotient a/b; requires b | a over the rationals.
IntPoly divide_exact(const IntPoly& a, const IntPoly& b);

/// Sign-variation chain for the canonical Sturm sequence of (p, p').
///
/// Internally this is Brown's integer subresultant PRS; each element stores
/// the sign relating it to the corresponding canonical chain element, so the
/// sign sequences used in Sturm queries match the exact-rational chain while
/// coefficient growth stays polynomial.
class SturmChain {
 public:
  explicit SturmChain(const IntPoly& p);

  int variations_at(const Rational& x) const;
  int variations_at_plus_inf() const;
  int variations_at_minus_inf() const;

  /// Distinct real roots of p (multiple roots counted once).
  int count_distinct_real() const;

  /// Distinct roots in (a, b]; requires a < b and p(a) != 0, p(b) != 0.
  int count_halfopen(const Rational& a, const Rational& b) const;

  /// Last nonzero chain element; a scalar multiple of gcd(p, p').
  const IntPoly& gcd_like() const { return elems_.back().p; }
  bool squarefree() const { return gcd_like().degree() == 0; }

  size_t length() const { return elems_.size(); }
  const IntPoly& element(size_t i) const { return elems_[i].p; }
  int element_sign(size_t i) const { return elems_[i].sigma; }

 private:
  struct Elem {
    IntPoly p;
    int sigma;  // sigma * p is a positive multiple of the canonical element
  };
  std::vector<Elem> elems_;
};

/// Modular certificate: true means gcd(p, p') is certainly constant, i.e. p is
/// squarefree over Q. False is inconclusive (unlucky prime or true gcd).
bool certainly_squarefree_mod(const IntPoly& p);

IntPoly squarefree_part(const IntPoly& p);

struct VcaDecision {
  bool decided = false;
  bool has_root = false;
};

struct VcaCount {
  bool decided = false;
  int count = 0;
};

/// Exact Descartes-bisection existence test for a real root anywhere.
/// Undecided only when the depth cap is hit (callers fall back to Sturm).
VcaDecision vca_has_real_root(const IntPoly& p, int max_depth = 128);

/// Distinct real roots of a squarefree p in the open interval (0, 1).
VcaCount vca_count_unit(const IntPoly& p, int max_depth = 128);

/// Distinct real roots of a squarefree p on the whole line.
VcaCount vca_count_real(const IntPoly& p, int max_depth = 128);

}  // namespace rzlab
