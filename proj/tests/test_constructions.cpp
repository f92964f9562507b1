#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "rzlab/config.hpp"
#include "rzlab/constructions.hpp"
#include "rzlab/error.hpp"
#include "rzlab/rootcount.hpp"

using namespace rzlab;

TEST_CASE("generator pair matches the displayed formulas") {
  GeneratorPair g = build_generator_pair(4, Rational(-1), Rational(1, 4));
  // a = -beta x^3 - alpha (1 + x + x^2) = 1 + x + x^2 - x^3/4
  CHECK(g.a == Polynomial::parse("1, 1, 1, -1/4"));
  // b = -alpha - beta (x + x^2 + x^3) = 1 - (x + x^2 + x^3)/4
  CHECK(g.b == Polynomial::parse("1, -1/4, -1/4, -1/4"));
  // b(1) = -alpha - (s-1) beta > 0 under the parameter constraints
  CHECK(sgn(g.b.eval_exact(Rational(1))) > 0);

  GeneratorPair flipped = build_generator_pair(4, Rational(-1), Rational(1, 4), true, true);
  CHECK(flipped.a == -g.a);
  CHECK(flipped.b == -g.b);
}

TEST_CASE("generator parameter constraints") {
  CHECK_THROWS_AS(build_generator_pair(3, Rational(-1), Rational(1, 4)), Error);   // odd s
  CHECK_THROWS_AS(build_generator_pair(4, Rational(1), Rational(1, 4)), Error);    // alpha > 0
  CHECK_THROWS_AS(build_generator_pair(4, Rational(-1, 8), Rational(1, 4)), Error);  // -alpha < beta
  CHECK_THROWS_AS(build_generator_pair(4, Rational(-1), Rational(1, 2)), Error);   // alpha+3beta > 0
}

TEST_CASE("generator blocks expand as advertised") {
  // symbolic expansion oracle: multiply the comb and the generator by hand
  GeneratorPair g = build_generator_pair(4, Rational(-1), Rational(1, 4));
  OddPatternParams p;
  p.j = 1;
  p.s = 4;
  p.alpha = Rational(-1);
  p.beta = Rational(1, 4);
  p.r_list = {8};
  p.m = 16;
  Polynomial pattern = build_pattern_poly(p);
  CHECK(pattern.degree() == 16);
  CHECK(pattern.coeff(16) == Rational(-1));  // the closing alpha x^m term

  // hand expansion: (1 + x^4) a + (x^8 + x^12) b + alpha x^16
  std::vector<Rational> expect(17, Rational(0));
  for (int block : {0, 4})
    for (int i = 0; i <= 3; ++i) expect[block + i] += g.a.coeff(i);
  for (int block : {8, 12})
    for (int i = 0; i <= 3; ++i) expect[block + i] += g.b.coeff(i);
  expect[16] += Rational(-1);
  CHECK(pattern == Polynomial::from_exact(expect));
}

TEST_CASE("the telescoping identity holds exactly") {
  for (bool flip_a : {false, true}) {
    for (bool flip_b : {false, true}) {
      OddPatternParams p;
      p.j = 3;
      p.s = 4;
      p.alpha = Rational(-2, 3);
      p.beta = Rational(1, 8);
      p.r_list = {4, 12, 24};
      p.m = 32;
      p.flip_a = flip_a;
      p.flip_b = flip_b;
      Polynomial pattern = build_pattern_poly(p);
      GeneratorPair g = build_generator_pair(p.s, p.alpha, p.beta, flip_a, flip_b);

      // (1 - x^s) pattern == a + sum_l (-1)^l (a - b) x^{r_l} - b x^m
      //                      + alpha x^m (1 - x^s)
      Polynomial one_minus_xs = Polynomial::parse("1, 0, 0, 0, -1");
      Polynomial lhs = one_minus_xs * pattern;
      Polynomial rhs = g.a;
      Polynomial amb = g.a - g.b;
      int sign = -1;
      for (int rl : p.r_list) {
        rhs = rhs + (sign > 0 ? amb : -amb) * Polynomial::monomial(rl, Rational(1));
        sign = -sign;
      }
      rhs = rhs - g.b * Polynomial::monomial(p.m, Rational(1));
      rhs = rhs + (one_minus_xs * Polynomial::monomial(p.m, p.alpha));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("block layout guards") {
  OddPatternParams p;
  p.j = 3;
  p.s = 4;
  p.alpha = Rational(-1);
  p.beta = Rational(1, 4);
  p.r_list = {4, 8, 8};  // not strictly increasing
  p.m = 20;
  CHECK_THROWS_AS(p.validate(), Error);

  p.r_list = {4, 8, 12};
  p.m = 12;  // m must exceed r_j
  CHECK_THROWS_AS(p.validate(), Error);

  p.m = 20;
  p.epsilon = 0.0;  // degenerate boxes
  CHECK_THROWS_AS(p.validate(), Error);

  p.epsilon = 0.05;
  CHECK_NOTHROW(p.validate());

  // derived lists are usable as-is
  auto rl = OddPatternParams::derive_r_list(3, 4, 3);
  CHECK(rl.size() == 3);
  CHECK(rl[0] >= 4);
  CHECK(rl[1] > rl[0]);
  CHECK(rl[2] > rl[1]);
  for (int v : rl) CHECK(v % 4 == 0);
}

TEST_CASE("forced negativity at x = 2") {
  PatternReport rep = check_forced_negativity(10, 1000);
  CHECK(rep.trials == 1000);
  CHECK(rep.successes == 1000);
  CHECK(rep.failures == 0);
  CHECK(forced_negativity_bound_negative(10));
  CHECK_THROWS_AS(check_forced_negativity(2, 10), Error);  // k = 2 >= n
}

TEST_CASE("witness search finds the easy windows and not the forced one") {
  FixedCoeffSpec monic;
  monic.k = 1;
  monic.S = {1};
  monic.values[1] = Rational(1);
  WitnessResult w =
      find_no_outside_root_witness(monic, CoefficientLaw::uniform_symmetric(std::sqrt(3.0)), 8,
                                   2000, 11);
  CHECK(w.found);
  CHECK(w.s % 2 == 0);
  CHECK(no_real_roots_outside_unit_disk(w.witness, w.s));  // re-verifies

  WitnessResult g = find_no_outside_root_witness(monic, CoefficientLaw::gaussian(), 6, 2000, 12);
  CHECK(g.found);

  EnsembleSpec forced = forced_negativity_spec(10);
  WitnessResult none =
      find_no_outside_root_witness(forced.fixed, forced.law, 8, 300, 13);
  CHECK(!none.found);
  CHECK(none.trials_per_s.size() == 3);  // s = 4, 6, 8
  for (const auto& [s, t] : none.trials_per_s) {
    CHECK(s % 2 == 0);
    CHECK(t == 300);
  }
}

TEST_CASE("committed odd profile verifies at a small sample") {
  std::string path = std::string(RZLAB_TEST_PROFILE_DIR) + "/k_j1.cfg";
  REQUIRE(std::filesystem::exists(path));
  PatternProfile profile = profile_from_config(load_config_file(path));
  REQUIRE(profile.odd_case);
  PatternReport rep = verify_odd_pattern(profile.odd, profile.spec, 40, profile.master_seed);
  CHECK(rep.successes >= 38);  // the acceptance run checks >= 0.99 on 1000
  for (const auto& [zeros, cnt] : rep.zero_histogram) {
    CHECK(zeros >= 0);
    CHECK(cnt > 0);
  }
}

TEST_CASE("committed even profile verifies at a small sample") {
  std::string path = std::string(RZLAB_TEST_PROFILE_DIR) + "/h_j0.cfg";
  REQUIRE(std::filesystem::exists(path));
  PatternProfile profile = profile_from_config(load_config_file(path));
  REQUIRE(!profile.odd_case);
  PatternReport rep = verify_even_pattern(profile.even_pattern, profile.even, profile.spec, 40,
                                          profile.master_seed);
  CHECK(rep.successes >= 38);
}

TEST_CASE("failure certificates replay deterministically") {
  // deliberately mistuned profile: displayed signs keep the pattern positive
  // near zero, so the one-zero claim fails routinely
  EnsembleSpec spec = monic_spec(60, CoefficientLaw::gaussian());
  OddPatternParams p;
  p.j = 1;
  p.s = 4;
  p.alpha = Rational(-1);
  p.beta = Rational(1, 4);
  p.r = 4;
  p.r_list = {4};
  p.m = 8;
  p.epsilon = 0.05;
  p.flip_a = false;
  p.flip_b = false;
  PatternReport rep = verify_odd_pattern(p, spec, 25, 777);
  REQUIRE(rep.failures > 0);
  REQUIRE(!rep.failure_details.empty());
  for (const auto& cert : rep.failure_details) {
    Polynomial g = Polynomial::parse(cert.sample_coeffs);
    // recount from the certificate alone
    int zeros = count_roots_in_interval(g, Rational(0), Rational(1));
    if (sgn(g.eval_exact(Rational(0))) == 0) ++zeros;
    CHECK(zeros == cert.zeros_in_unit);
    bool simple = is_squarefree(g);
    CHECK(simple == cert.all_simple);
    // and the stored seed regenerates the identical trial
    CHECK(cert.seed == derive_trial_seed(777, cert.trial_index));
  }
}

TEST_CASE("infeasible conditioning is reported, not looped forever") {
  EnsembleSpec spec = monic_spec(60, CoefficientLaw::rademacher());
  OddPatternParams p;
  p.j = 1;
  p.s = 4;
  p.alpha = Rational(-1);
  p.beta = Rational(1, 4);
  p.r = 4;
  p.r_list = {4};
  p.m = 8;
  p.epsilon = 0.05;  // boxes around fractional centers: unreachable for +-1 draws
  p.flip_a = true;
  CHECK_THROWS_AS(verify_odd_pattern(p, spec, 5, 1), Error);
}

TEST_CASE("zero-pattern parity is enforced") {
  EnsembleSpec spec = monic_spec(61, CoefficientLaw::gaussian());  // n odd
  OddPatternParams p;
  p.j = 1;  // j odd needs n even
  p.s = 4;
  p.alpha = Rational(-1);
  p.beta = Rational(1, 4);
  p.r = 4;
  p.r_list = {4};
  p.m = 8;
  p.epsilon = 0.05;
  CHECK_THROWS_AS(verify_odd_pattern(p, spec, 5, 1), Error);
}
