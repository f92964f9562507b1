#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rzlab/intpoly.hpp"
#include "rzlab/rng.hpp"
#include "rzlab/rootcount.hpp"

using namespace rzlab;

namespace {

Polynomial random_int_poly(TrialRng& rng, int deg, int coeff_range) {
  std::vector<Rational> c(deg + 1);
  for (int i = 0; i <= deg; ++i)
    c[i] = Rational(static_cast<long>(rng.next_u64() % (2 * coeff_range + 1)) - coeff_range);
  if (sgn(c[deg]) == 0) c[deg] = 1;
  return Polynomial::from_exact(std::move(c));
}

// sign variations of the canonical rational chain at a point (reference path)
int canonical_variations(const std::vector<Polynomial>& chain, const Rational& x) {
  int var = 0, prev = 0;
  for (const auto& p : chain) {
    int s = sgn(p.eval_exact(x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

}  // namespace

TEST_CASE("denominator clearing keeps signs") {
  Polynomial p = Polynomial::parse("1/2, -3/4, 5");
  IntPoly ip = int_from_poly(p);
  CHECK(ip.degree() == 2);
  for (int i = 0; i <= 2; ++i) CHECK(sgn(ip.c[i]) == sgn(p.coeff(i)));
  CHECK(sign_at(ip, Rational(0)) == sgn(p.eval_exact(0)));
  CHECK(sign_at(ip, Rational(7, 3)) == sgn(p.eval_exact(Rational(7, 3))));
}

TEST_CASE("sturm chain counts distinct real roots") {
  // x^3 - x: roots -1, 0, 1
  SturmChain c1(int_from_poly(Polynomial::parse("0, -1, 0, 1")));
  CHECK(c1.count_distinct_real() == 3);
  // x^2 + 1
  SturmChain c2(int_from_poly(Polynomial::parse("1, 0, 1")));
  CHECK(c2.count_distinct_real() == 0);
  // (x-1)^2 (x+2) = x^3 - 3x + 2: distinct roots 1, -2
  SturmChain c3(int_from_poly(Polynomial::parse("2, -3, 0, 1")));
  CHECK(c3.count_distinct_real() == 2);
  CHECK(!c3.squarefree());
  CHECK(c3.gcd_like().degree() == 1);
}

TEST_CASE("interval counts are half-open") {
  SturmChain chain(int_from_poly(Polynomial::parse("0, -1, 0, 1")));  // x^3 - x
  CHECK(chain.count_halfopen(Rational(-2), Rational(2)) == 3);
  CHECK(chain.count_halfopen(Rational(-1, 2), Rational(1, 2)) == 1);
  CHECK(chain.count_halfopen(Rational(1, 2), Rational(2)) == 1);
  CHECK_THROWS(chain.count_halfopen(Rational(-1), Rational(2)));  // endpoint root
}

TEST_CASE("integer chain agrees with the canonical rational chain") {
  TrialRng rng(21, 0);
  for (int t = 0; t < 60; ++t) {
    int deg = 2 + static_cast<int>(rng.next_u64() % 9);
    Polynomial p = random_int_poly(rng, deg, 6);
    std::vector<Polynomial> canon = sturm_sequence(p);
    SturmChain fast(int_from_poly(p));
    for (int k = 0; k < 8; ++k) {
      Rational x(static_cast<long>(rng.next_u64() % 25) - 12,
                 1 + static_cast<long>(rng.next_u64() % 5));
      if (sgn(p.eval_exact(x)) == 0) continue;
      CHECK(fast.variations_at(x) == canonical_variations(canon, x));
    }
  }
}

TEST_CASE("modular squarefree certificate") {
  CHECK(certainly_squarefree_mod(int_from_poly(Polynomial::parse("-1, 0, 1"))));
  CHECK(!certainly_squarefree_mod(int_from_poly(Polynomial::parse("1, -2, 1"))));  // (x-1)^2
  TrialRng rng(31, 0);
  for (int t = 0; t < 40; ++t) {
    Polynomial p = random_int_poly(rng, 3 + static_cast<int>(rng.next_u64() % 6), 5);
    Polynomial sq = p * p;
    CHECK(!certainly_squarefree_mod(int_from_poly(sq)));
  }
}

TEST_CASE("squarefree part preserves the root set") {
  Polynomial p = Polynomial::parse("2, -3, 0, 1");  // (x-1)^2 (x+2)
  IntPoly sf = squarefree_part(int_from_poly(p));
  CHECK(sf.degree() == 2);
  SturmChain chain(sf);
  CHECK(chain.count_distinct_real() == 2);
  CHECK(chain.squarefree());
}

TEST_CASE("descartes existence agrees with sturm everywhere") {
  TrialRng rng(41, 0);
  int undecided = 0;
  for (int t = 0; t < 300; ++t) {
    int deg = 1 + static_cast<int>(rng.next_u64() % 10);
    Polynomial p = random_int_poly(rng, deg, 5);
    IntPoly ip = int_from_poly(p);
    VcaDecision d = vca_has_real_root(ip);
    if (!d.decided) {
      ++undecided;
      continue;
    }
    SturmChain chain(ip);
    CHECK(d.has_root == (chain.count_distinct_real() > 0));
  }
  CHECK(undecided < 15);  // multiple-root draws are rare
}

TEST_CASE("descartes unit-interval count agrees with sturm") {
  TrialRng rng(51, 0);
  for (int t = 0; t < 200; ++t) {
    int deg = 2 + static_cast<int>(rng.next_u64() % 9);
    Polynomial p = random_int_poly(rng, deg, 5);
    IntPoly ip = int_from_poly(p);
    if (!certainly_squarefree_mod(ip)) continue;
    VcaCount c = vca_count_unit(ip);
    REQUIRE(c.decided);
    // sturm count over (0, 1], minus a root exactly at 1
    int expect;
    if (sgn(p.eval_exact(Rational(0))) == 0 || sgn(p.eval_exact(Rational(1))) == 0) {
      expect = count_roots_in_interval(p, Rational(0), Rational(1)) -
               (sgn(p.eval_exact(Rational(1))) == 0 ? 1 : 0);
    } else {
      SturmChain chain(ip);
      expect = chain.count_halfopen(Rational(0), Rational(1)) -
               (sgn(p.eval_exact(Rational(1))) == 0 ? 1 : 0);
    }
    CHECK(c.count == expect);
  }
}

TEST_CASE("descartes full-line count agrees with sturm") {
  TrialRng rng(61, 0);
  for (int t = 0; t < 200; ++t) {
    int deg = 2 + static_cast<int>(rng.next_u64() % 9);
    Polynomial p = random_int_poly(rng, deg, 5);
    IntPoly ip = int_from_poly(p);
    if (!certainly_squarefree_mod(ip)) continue;
    VcaCount c = vca_count_real(ip);
    REQUIRE(c.decided);
    SturmChain chain(ip);
    CHECK(c.count == chain.count_distinct_real());
  }
}

TEST_CASE("exact division recovers factors") {
  Polynomial a = Polynomial::parse("-1, 0, 1");  // x^2-1
  Polynomial b = Polynomial::parse("1, 1");      // x+1
  IntPoly q = divide_exact(int_from_poly(a), int_from_poly(b));
  SturmChain chain(q);
  CHECK(q.degree() == 1);
  CHECK(sign_at(q, Rational(1)) == 0);  // factor x-1 up to positive scale
}
