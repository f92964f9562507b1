#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rzlab/covariance.hpp"
#include "rzlab/error.hpp"
#include "rzlab/polycore.hpp"

using namespace rzlab;

namespace {

EnsembleSpec lemma_spec(int n) {
  EnsembleSpec spec;
  spec.n = n;
  spec.law = CoefficientLaw::gaussian();
  spec.fixed.k = 2;
  spec.fixed.S = {2};
  spec.fixed.values[2] = Rational(0);
  return spec;
}

}  // namespace

TEST_CASE("kernel values") {
  CHECK(dominance_kernel(2, 3) == doctest::Approx(5.0 / std::sqrt(24.0)));
  CHECK(dominance_kernel(0, 0) == doctest::Approx(1.0));
  for (double x : {-0.7, 0.2, 1.3, 2.0}) CHECK(dominance_kernel(x, x) == doctest::Approx(1.0));
  CHECK_THROWS_AS(dominance_kernel(1.0, 0.5), Error);
}

TEST_CASE("unfixed top-slot polynomial") {
  EnsembleSpec all_fixed;
  all_fixed.n = 10;
  all_fixed.fixed.k = 3;
  all_fixed.fixed.S = {1, 2, 3};
  all_fixed.fixed.values[1] = Rational(1);
  CHECK(unfixed_top_poly(all_fixed, 17.0) == 0.0);  // empty sum

  CHECK(unfixed_top_poly(lemma_spec(30), 2.0) == doctest::Approx(4.0));  // z^2 at z = 2

  EnsembleSpec k3;
  k3.n = 30;
  k3.fixed.k = 3;
  k3.fixed.S = {3};
  k3.fixed.values[3] = Rational(0);
  CHECK(unfixed_top_poly(k3, 2.0) == doctest::Approx(12.0));  // 2^3 + 2^2
  CHECK(unfixed_top_poly_exact(k3, Rational(2)) == Rational(12));
}

TEST_CASE("correlation is exactly one on the diagonal") {
  IntervalSystem sys = IntervalSystem::make(0.3, 50);
  EnsembleSpec spec = lemma_spec(50);
  TrialRng rng(1234, 0);
  for (int i = 1; i <= 4; ++i) {
    const RatInterval& iv = sys.interval(i);
    for (int t = 0; t < 1000; ++t) {
      Rational x = iv.lo + (iv.hi - iv.lo) * Rational(static_cast<long>(rng.next_u64() % 1001)) / 1000;
      long double c = normalized_covariance_at(spec, x, x);
      CHECK(std::fabs(static_cast<double>(c - 1.0L)) <= 1e-12);
    }
  }
}

TEST_CASE("correlation is symmetric and bounded by one") {
  EnsembleSpec spec = lemma_spec(40);
  IntervalSystem sys = IntervalSystem::make(0.25, 40);
  TrialRng rng(88, 0);
  for (int t = 0; t < 400; ++t) {
    int a = 1 + static_cast<int>(rng.next_u64() % 4);
    int b = 1 + static_cast<int>(rng.next_u64() % 4);
    const RatInterval &ia = sys.interval(a), &ib = sys.interval(b);
    Rational x = ia.lo + (ia.hi - ia.lo) * Rational(static_cast<long>(rng.next_u64() % 101)) / 100;
    Rational y = ib.lo + (ib.hi - ib.lo) * Rational(static_cast<long>(rng.next_u64() % 101)) / 100;
    long double cxy = normalized_covariance_at(spec, x, y);
    long double cyx = normalized_covariance_at(spec, y, x);
    CHECK(static_cast<double>(cxy) == doctest::Approx(static_cast<double>(cyx)).epsilon(1e-15));
    CHECK(std::fabs(static_cast<double>(cxy)) <= 1.0 + 1e-14);
  }
}

TEST_CASE("an all-fixed-to-zero top block reduces to the shorter ensemble") {
  // S = {1..k} with zero values: the correlation term equals the fully random
  // ensemble at n - k, exactly
  EnsembleSpec spec;
  spec.n = 30;
  spec.law = CoefficientLaw::gaussian();
  spec.fixed.k = 3;
  spec.fixed.S = {1, 2, 3};
  spec.fixed.values[1] = Rational(1);  // values irrelevant for the term shape
  spec.fixed.values[2] = Rational(0);
  spec.fixed.values[3] = Rational(0);
  EnsembleSpec shorter = fully_random_spec(27, CoefficientLaw::gaussian());
  TrialRng rng(5, 0);
  for (int t = 0; t < 50; ++t) {
    Rational z(static_cast<long>(rng.next_u64() % 39) - 19, 20);
    z.canonicalize();
    CHECK(covariance_term_exact(spec, z) == covariance_term_exact(shorter, z));
  }
}

TEST_CASE("monte carlo correlation matches the formula") {
  EnsembleSpec spec = lemma_spec(30);
  REQUIRE(validate_spec(spec).empty());
  const int trials = 100000;
  double x = 0.9, y = 0.95;
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (int t = 0; t < trials; ++t) {
    Polynomial f = sample_polynomial(spec, derive_trial_seed(31337, t));
    double fx = normalized_value(spec, f, x);
    double fy = normalized_value(spec, f, y);
    sx += fx;
    sy += fy;
    sxx += fx * fx;
    syy += fy * fy;
    sxy += fx * fy;
  }
  double mx = sx / trials, my = sy / trials;
  double corr = (sxy / trials - mx * my) /
                std::sqrt((sxx / trials - mx * mx) * (syy / trials - my * my));
  double expect = normalized_covariance(spec, x, y);
  double se = (1 - expect * expect) / std::sqrt(static_cast<double>(trials));
  CHECK(std::fabs(corr - expect) < 5 * se);
}

TEST_CASE("interval system membership is exact") {
  IntervalSystem sys = IntervalSystem::make(0.3, 200);
  CHECK_THROWS_AS(IntervalSystem::make(0.6, 200), Error);
  CHECK_THROWS_AS(IntervalSystem::make(0.3, 1), Error);

  Rational mid = (sys.inner_pos.lo + sys.inner_pos.hi) / 2;
  CHECK(sys.in_union(mid));
  CHECK(sys.in_square_union(mid, sys.inner_pos.lo));
  CHECK(!sys.in_square_union(mid, sys.outer_pos.lo));  // mixed pair is off U
  CHECK(!sys.in_union(Rational(0)));
  Rational recip = 1 / mid;
  CHECK(sys.in_union(recip));
  CHECK(sys.in_union(-mid));
}

TEST_CASE("dominance holds on a coarse mesh at n = 200") {
  EnsembleSpec spec = lemma_spec(200);
  IntervalSystem sys = IntervalSystem::make(0.3, 200);
  double alpha = std::pow(200.0, -0.15);
  DominanceReport rep =
      check_covariance_dominance(spec, sys, alpha, 20, MeshRegion::InnerPosSquare, true);
  CHECK(rep.max_violation <= 0.0);
  CHECK(rep.diagonal_max_error <= 1e-12);
  CHECK(rep.least_alpha >= 0.0);
  CHECK(rep.least_alpha <= alpha + 1e-12);

  // the full sixteen-pair mesh includes the off-square regions where the
  // bound degenerates to alpha alone
  DominanceReport full = check_covariance_dominance(spec, sys, alpha, 8, MeshRegion::FullV2);
  CHECK(full.max_violation <= 0.0);
}

TEST_CASE("dominance checker rejects off-hypothesis specs") {
  EnsembleSpec monic = monic_spec(50, CoefficientLaw::gaussian());
  IntervalSystem sys = IntervalSystem::make(0.3, 50);
  CHECK_THROWS_AS(check_covariance_dominance(monic, sys, 0.3, 10), Error);

  EnsembleSpec nonzero = lemma_spec(50);
  nonzero.fixed.values[2] = Rational(1);
  CHECK_THROWS_AS(check_covariance_dominance(nonzero, sys, 0.3, 10), Error);
}

TEST_CASE("outer-square kernel product stays at or below one") {
  EnsembleSpec spec = lemma_spec(200);
  IntervalSystem sys = IntervalSystem::make(0.3, 200);
  double m = max_kernel_covariance_product(spec, sys, 20);
  CHECK(m <= 1.0 + 1e-12);
  CHECK(m >= 1.0 - 1e-12);  // the diagonal attains one

  // monomial sub-case: a different unfixed set gives a monomial r, with the
  // same bound
  EnsembleSpec mono;
  mono.n = 200;
  mono.law = CoefficientLaw::gaussian();
  mono.fixed.k = 3;
  mono.fixed.S = {2, 3};
  mono.fixed.values[2] = Rational(0);
  mono.fixed.values[3] = Rational(0);
  double m2 = max_kernel_covariance_product(mono, sys, 12);
  CHECK(m2 <= 1.0 + 1e-12);
}

TEST_CASE("top-slot ratio: endpoint evaluation and closed form") {
  EnsembleSpec spec = lemma_spec(50);  // k = 2
  SupRatio at_one = top_slot_sup_ratio(spec, 2, 1.0);
  CHECK(at_one.value == doctest::Approx(1.0 / std::sqrt(48.0)));
  CHECK(at_one.closed_form == doctest::Approx(at_one.value).epsilon(1e-12));

  SupRatio a = top_slot_sup_ratio(spec, 1, 0.9);
  SupRatio b = top_slot_sup_ratio(spec, 1, 1.0);
  CHECK(a.value <= b.value);

  CHECK_THROWS_AS(top_slot_sup_ratio(spec, 5, 1.0), Error);
  CHECK_THROWS_AS(top_slot_sup_ratio(spec, 1, -2.0), Error);
}

TEST_CASE("top-slot ratio equals a dense mesh maximization") {
  EnsembleSpec spec;
  spec.n = 100;
  spec.law = CoefficientLaw::gaussian();
  spec.fixed.k = 3;
  spec.fixed.S = {3};
  spec.fixed.values[3] = Rational(0);
  double xi = 0.01;
  double bound = 1.0 / (1.0 - xi);
  SupRatio sup = top_slot_sup_ratio(spec, 1, bound);
  CHECK(sup.value == doctest::Approx(sup.closed_form).epsilon(1e-10));

  double mesh_max = 0;
  const int mesh = 4000;
  int n = spec.n, k = 3, j = 1;
  for (int i = 0; i <= mesh; ++i) {
    long double x = bound * i / mesh;
    long double denom = 0;
    for (int t = 1; t <= n - k; ++t) denom += std::pow(x, 2 * (n - k - t));
    long double v = std::pow(x, n - j) / std::sqrt(denom);
    mesh_max = std::max(mesh_max, static_cast<double>(v));
  }
  CHECK(mesh_max <= sup.value * (1 + 1e-12));
  CHECK(sup.value == doctest::Approx(mesh_max).epsilon(1e-10));
}

TEST_CASE("summed ratios scale like the square root of the window") {
  // sum over j of the sup ratio at bound (1-xi_n)^{-1} is about k sqrt(xi_n),
  // with a constant stable in n
  std::vector<double> cs;
  for (int n : {100, 200, 400}) {
    EnsembleSpec spec;
    spec.n = n;
    spec.law = CoefficientLaw::gaussian();
    spec.fixed.k = 3;
    spec.fixed.S = {3};
    spec.fixed.values[3] = Rational(0);
    double xi = 1.0 / n;  // a window family shrinking with n
    double bound = 1.0 / (1.0 - xi);
    double total = 0;
    for (int j = 1; j <= 3; ++j) total += top_slot_sup_ratio(spec, j, bound).value;
    cs.push_back(total / (3.0 * std::sqrt(xi)));
  }
  double lo = *std::min_element(cs.begin(), cs.end());
  double hi = *std::max_element(cs.begin(), cs.end());
  CHECK(hi / lo < 1.5);
  CHECK(hi < 2.0);
}
