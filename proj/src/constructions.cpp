#include "rzlab/constructions.hpp"

#include <chrono>
#include <cmath>

#include "rzlab/error.hpp"
#include "rzlab/intpoly.hpp"
#include "rzlab/rootcount.hpp"

namespace rzlab {

GeneratorPair build_generator_pair(int s, const Rational& alpha, const Rational& beta,
                                   bool flip_a, bool flip_b) {
  if (s < 4 || s % 2 != 0) throw Error(Err::BadParams, "s must be even and >= 4");
  if (!(sgn(alpha) < 0 && sgn(beta) > 0)) throw Error(Err::BadParams, "need alpha < 0 < beta");
  if (!(-alpha > beta)) throw Error(Err::BadParams, "need -alpha > beta");
  if (!(sgn(alpha + (s - 1) * beta) < 0))
    throw Error(Err::BadParams, "need alpha + (s-1) beta < 0");

  std::vector<Rational> ac(s, Rational(0));
  for (int i = 0; i <= s - 2; ++i) ac[i] = -alpha;
  ac[s - 1] = -beta;
  std::vector<Rational> bc(s, Rational(0));
  bc[0] = -alpha;
  for (int i = 1; i <= s - 1; ++i) bc[i] = -beta;

  GeneratorPair pair;
  pair.a = Polynomial::from_exact(std::move(ac));
  pair.b = Polynomial::from_exact(std::move(bc));
  if (flip_a) pair.a = -pair.a;
  if (flip_b) pair.b = -pair.b;

  // b(1) = -alpha - (s-1) beta > 0 is implied by the parameter constraints;
  // keep the exact check visible
  Rational b_at_1 = pair.b.eval_exact(1);
  if (!flip_b && sgn(b_at_1) <= 0) throw Error(Err::BadParams, "generator b not positive at 1");
  return pair;
}

std::vector<int> OddPatternParams::derive_r_list(int j, int s, int r) {
  std::vector<int> out;
  long double v = 1;
  for (int i = 1; i <= j; ++i) {
    v *= r;
    int nearest = static_cast<int>(std::llround(v / s)) * s;
    if (nearest < s) nearest = s;
    if (!out.empty() && nearest <= out.back()) nearest = out.back() + s;
    out.push_back(nearest);
  }
  return out;
}

int OddPatternParams::derive_m(int s, int r_last, double delta, double rho, int n) {
  double target = 2.0 * r_last * rho * std::log(static_cast<double>(n)) /
                  std::fabs(std::log(1.0 - delta));
  int m = static_cast<int>(std::llround(target / s)) * s;
  if (m <= r_last) m = r_last + s;
  return m;
}

void OddPatternParams::validate() const {
  if (j < 1 || j % 2 == 0) throw Error(Err::BadParams, "j must be odd and >= 1");
  if (s < 4 || s % 2 != 0) throw Error(Err::BadParams, "s must be even and >= 4");
  if (!(epsilon > 0)) throw Error(Err::BadParams, "epsilon must be positive (boxes degenerate)");
  if (!(delta > 0 && delta < 1)) throw Error(Err::BadParams, "delta must lie in (0,1)");
  if (static_cast<int>(r_list.size()) != j) throw Error(Err::BlockOverlap, "r_list size != j");
  int prev = 0;
  for (int rl : r_list) {
    if (rl % s != 0 || rl < s) throw Error(Err::BlockOverlap, "r_list entries must be multiples of s");
    if (rl - prev < s && prev != 0) throw Error(Err::BlockOverlap, "blocks overlap");
    if (rl <= prev) throw Error(Err::BlockOverlap, "r_list not strictly increasing");
    prev = rl;
  }
  if (m % s != 0 || m <= r_list.back()) throw Error(Err::BlockOverlap, "m must be a multiple of s beyond r_j");
  // generator constraints re-checked in build_generator_pair
}

namespace {

// x^lo + x^{lo+s} + ... + x^{hi-s}
Polynomial comb(int lo, int hi, int s) {
  if (hi - s < lo) throw Error(Err::BlockOverlap, "empty generator block");
  std::vector<Rational> c(hi - s + 1, Rational(0));
  for (int e = lo; e <= hi - s; e += s) c[e] = 1;
  return Polynomial::from_exact(std::move(c));
}

}  // namespace

Polynomial build_pattern_poly(const OddPatternParams& params) {
  params.validate();
  GeneratorPair gen =
      build_generator_pair(params.s, params.alpha, params.beta, params.flip_a, params.flip_b);
  Polynomial out = comb(0, params.r_list[0], params.s) * gen.a;
  for (int block = 1; block <= params.j; ++block) {
    int lo = params.r_list[block - 1];
    int hi = (block == params.j) ? params.m : params.r_list[block];
    const Polynomial& g = (block % 2 == 1) ? gen.b : gen.a;
    out = out + comb(lo, hi, params.s) * g;
  }
  out = out + Polynomial::monomial(params.m, params.alpha);
  return out;
}

Polynomial build_even_pattern_template(int m, int s, const Rational& alpha, const Rational& beta) {
  if (m % s != 0 || m < s) throw Error(Err::BadParams, "m must be a positive multiple of s");
  GeneratorPair gen = build_generator_pair(s, alpha, beta);
  // the a-block is positive on [-1,1] under the parameter constraints, and
  // the comb is >= 1 there, so the template has a uniform positive margin
  return comb(0, m, s) * gen.a;
}

double moment_cap_exponent(const CoefficientLaw& law, int n) {
  int p = 2;
  while (p < 300 && law.moment_abs(p + 1) <= static_cast<double>(n)) ++p;
  double rho = std::max(5.0 / p, 1.0 / std::sqrt(std::log(static_cast<double>(n))));
  return rho;
}

namespace {

struct ConditionLayout {
  int low_lo = 0, low_hi = 0;  // inclusive coefficient indices with boxes
  int mid_lo = 0, mid_hi = 0;  // inclusive middle-block indices
  int top_lo = 0, top_hi = 0;  // inclusive bounded top indices
  std::vector<Rational> box_center;  // centers for low_lo..low_hi
  double epsilon = 0;
  double cap_M = 0;
  int j = 0;
  bool claim_negative = false;  // sign claim on [-1, 0]
};

// counts rejection events; one unit per rejected draw (single coefficient or
// whole middle block alike)
struct Budget {
  uint64_t left;
  void reject() {
    if (left == 0) throw Error(Err::InfeasibleConditioning, "rejection budget exhausted");
    --left;
  }
};

double draw_in_box(const CoefficientLaw& law, TrialRng& rng, double center, double eps,
                   Budget& budget) {
  for (;;) {
    double v = law.sample(rng);
    if (std::fabs(v - center) < eps) return v;
    budget.reject();
  }
}

double draw_bounded(const CoefficientLaw& law, TrialRng& rng, double bound, Budget& budget) {
  for (;;) {
    double v = law.sample(rng);
    if (std::fabs(v) <= bound) return v;
    budget.reject();
  }
}

// fast screen for the middle-block margin condition; never accepts on its own
bool screen_middle(const std::vector<double>& mid, double q) {
  int len = static_cast<int>(mid.size());
  if (mid[0] <= q) return false;            // value at 0 (sigma(0) = 1)
  if (mid[len - 1] <= 0) return false;      // positive leading coefficient needed
  auto eval = [&](double x) {
    double acc = 0;
    for (int i = len - 1; i >= 0; --i) acc = acc * x + mid[i];
    return acc;
  };
  auto sigma = [&](double x) {
    double x2 = x * x, acc = 0;
    for (int i = 0; i < len; ++i) acc = acc * x2 + 1.0;
    return std::sqrt(acc);
  };
  for (int t = 0; t <= 60; ++t) {
    double d = std::pow(2.0, -t / 4.0);
    for (double x : {1.0 - d, -(1.0 - d), 1.0 / (1.0 - d * 0.5), -1.0 / (1.0 - d * 0.5)}) {
      if (eval(x) <= q * sigma(x)) return false;
    }
  }
  for (double x : {1.0, -1.0, 2.0, -2.0}) {
    if (eval(x) <= q * sigma(x)) return false;
  }
  return true;
}

// exact certificate: mid(x) > q * sigma(x) for all x
bool certify_middle(const std::vector<Rational>& mid, const Rational& q) {
  Polynomial p = Polynomial::from_exact(std::vector<Rational>(mid));
  if (sgn(p.coeff(0)) <= 0) return false;
  int len = static_cast<int>(mid.size());
  std::vector<Rational> s2(2 * len - 1, Rational(0));
  for (int e = 0; e < len; ++e) s2[2 * e] = 1;
  Polynomial sigma2 = Polynomial::from_exact(std::move(s2));
  Polynomial h = p * p - sigma2.scaled(q * q);
  return positive_everywhere(h);
}

// exact zero-pattern verification on [-1, 1]
struct PatternCheck {
  int zeros_in_unit = 0;
  bool all_simple = false;
  bool sign_ok = false;
  bool success(int j) const { return zeros_in_unit == j && all_simple && sign_ok; }
};

// distinct roots in the open interval (0, 1)
int open_unit_count(const Polynomial& g, const IntPoly& ig, bool squarefree) {
  if (squarefree) {
    VcaCount c = vca_count_unit(ig);
    if (c.decided) return c.count;
  }
  return count_roots_in_interval(g, Rational(0), Rational(1)) -
         (sgn(g.eval_exact(Rational(1))) == 0 ? 1 : 0);
}

PatternCheck check_pattern(const Polynomial& g, bool claim_negative) {
  PatternCheck out;
  IntPoly ig = int_from_poly(g);
  bool squarefree = certainly_squarefree_mod(ig);
  if (!squarefree) {
    SturmChain chain(ig);
    squarefree = chain.squarefree();
  }
  out.all_simple = squarefree;

  // zeros in the closed interval [0, 1]
  int z = open_unit_count(g, ig, squarefree);
  if (sgn(g.eval_exact(Rational(0))) == 0) ++z;
  if (sgn(g.eval_exact(Rational(1))) == 0) ++z;
  out.zeros_in_unit = z;

  // sign on [-1, 0]: no roots inside, endpoints and midpoint on the right side
  int want = claim_negative ? -1 : +1;
  bool endpoints_ok = sgn(g.eval_exact(Rational(-1))) == want &&
                      sgn(g.eval_exact(Rational(0))) == want &&
                      sgn(g.eval_exact(Rational(-1, 2))) == want;
  if (!endpoints_ok) {
    out.sign_ok = false;
    return out;
  }
  // roots of g in (-1, 0) are roots of g(-x) in (0, 1)
  std::vector<Rational> mc(g.coeffs());
  for (size_t i = 1; i < mc.size(); i += 2) mc[i] = -mc[i];
  Polynomial gm = Polynomial::from_exact(std::move(mc));
  IntPoly igm = int_from_poly(gm);
  out.sign_ok = (open_unit_count(gm, igm, squarefree) == 0);
  return out;
}

PatternReport run_pattern_trials(const ConditionLayout& lay, const EnsembleSpec& spec,
                                 uint64_t trials, uint64_t master_seed, uint64_t rejection_budget) {
  auto errs = validate_spec(spec);
  if (!errs.empty()) throw Error(Err::BadConfig, "invalid ensemble spec");
  int n = spec.n;
  if (((n - 1) - lay.j) % 2 != 0)
    throw Error(Err::BadParams, "zero-count parity requires j == n-1 (mod 2)");
  if (lay.mid_hi < lay.mid_lo) throw Error(Err::BadParams, "middle block is empty; n too small");
  FixedCoeffSpec fixed = spec.effective_fixed();
  for (int idx = lay.low_lo; idx <= lay.low_hi; ++idx) {
    double center = to_double_nearest(lay.box_center[idx - lay.low_lo]);
    if (!spec.law.box_reachable(center, lay.epsilon))
      throw Error(Err::InfeasibleConditioning,
                  "law cannot reach box at coefficient " + std::to_string(idx));
  }
  for (const auto& [i, v] : fixed.values)
    if (abs(v) > Rational(rational_from_double(lay.cap_M)))
      throw Error(Err::BadParams, "cap M must exceed every fixed value, slot " + std::to_string(i));

  int mid_len = lay.mid_hi - lay.mid_lo + 1;
  double qd = std::pow(static_cast<double>(n), -0.25);
  Rational q = rational_from_double(std::nextafter(qd, HUGE_VAL));  // q >= n^{-1/4}
  double rho = moment_cap_exponent(spec.law, n - 1);
  double cap_all = std::pow(static_cast<double>(n - 1), rho);

  PatternReport rep;
  rep.trials = trials;
  auto t0 = std::chrono::steady_clock::now();

  for (uint64_t t = 0; t < trials; ++t) {
    uint64_t seed = derive_trial_seed(master_seed, t);
    TrialRng rng(seed, 0);
    Budget budget{rejection_budget};

    std::vector<Rational> coeffs(n, Rational(0));
    // fixed slots (top of the polynomial)
    for (int i = 1; i <= n; ++i)
      if (fixed.S.count(i)) coeffs[n - i] = fixed.value_of(i);

    // low block: per-coefficient boxes
    for (int idx = lay.low_lo; idx <= lay.low_hi; ++idx) {
      double center = to_double_nearest(lay.box_center[idx - lay.low_lo]);
      double v = draw_in_box(spec.law, rng, center, lay.epsilon, budget);
      coeffs[idx] = rational_from_double(v);
    }

    // top block: bounded draws on the random slots
    for (int idx = lay.top_lo; idx <= lay.top_hi; ++idx) {
      int slot = n - idx;
      if (fixed.S.count(slot)) continue;
      double v = draw_bounded(spec.law, rng, lay.cap_M, budget);
      coeffs[idx] = rational_from_double(v);
    }

    // middle block: rejection against the normalized-positivity margin,
    // screened in floating point, accepted only with the exact certificate
    std::vector<double> mid_d(mid_len);
    std::vector<Rational> mid_q(mid_len);
    for (;;) {
      for (int i = 0; i < mid_len; ++i) mid_d[i] = spec.law.sample(rng);
      if (!screen_middle(mid_d, to_double_nearest(q))) {
        ++rep.rejected_draws;
        budget.reject();
        continue;
      }
      bool cap_ok = true;
      for (double v : mid_d)
        if (std::fabs(v) >= cap_all) cap_ok = false;
      if (!cap_ok) {
        ++rep.rejected_draws;
        budget.reject();
        continue;
      }
      for (int i = 0; i < mid_len; ++i) mid_q[i] = rational_from_double(mid_d[i]);
      if (certify_middle(mid_q, q)) break;
      ++rep.rejected_draws;
      budget.reject();
    }
    for (int i = 0; i < mid_len; ++i) coeffs[lay.mid_lo + i] = mid_q[i];

    Polynomial g = Polynomial::from_exact(std::move(coeffs));
    PatternCheck chk = check_pattern(g, lay.claim_negative);
    rep.zero_histogram[chk.zeros_in_unit] += 1;
    if (chk.success(lay.j)) {
      rep.successes += 1;
    } else {
      rep.failures += 1;
      if (rep.failure_details.size() < 16) {
        FailureCert cert;
        cert.trial_index = t;
        cert.seed = seed;
        cert.sample_coeffs = g.to_string();
        cert.zeros_in_unit = chk.zeros_in_unit;
        cert.all_simple = chk.all_simple;
        cert.sign_ok = chk.sign_ok;
        cert.reason = chk.zeros_in_unit != lay.j ? "zero count mismatch"
                      : !chk.all_simple          ? "multiple root"
                                                 : "sign claim failed on [-1,0]";
        rep.failure_details.push_back(std::move(cert));
      }
    }
  }
  rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace

PatternReport verify_odd_pattern(const OddPatternParams& params, const EnsembleSpec& spec,
                                 uint64_t trials, uint64_t master_seed,
                                 uint64_t rejection_budget) {
  OddPatternParams p = params;
  if (p.r_list.empty()) p.r_list = OddPatternParams::derive_r_list(p.j, p.s, p.r);
  if (p.m == 0)
    p.m = OddPatternParams::derive_m(p.s, p.r_list.back(), p.delta,
                                     moment_cap_exponent(spec.law, spec.n - 1), spec.n);
  p.validate();
  Polynomial pattern = build_pattern_poly(p);

  ConditionLayout lay;
  lay.j = p.j;
  lay.claim_negative = true;
  lay.low_lo = 0;
  lay.low_hi = p.m;  // boxes on coefficients 0..m
  lay.mid_lo = p.m + 1;
  lay.mid_hi = spec.n - p.m - 1;
  lay.top_lo = spec.n - p.m;
  lay.top_hi = spec.n - 1;
  lay.epsilon = p.epsilon;
  lay.cap_M = p.cap_M;
  lay.box_center.resize(p.m + 1);
  for (int i = 0; i <= p.m; ++i) lay.box_center[i] = pattern.coeff(i);
  return run_pattern_trials(lay, spec, trials, master_seed, rejection_budget);
}

PatternReport verify_even_pattern(const Polynomial& pattern, const EvenPatternParams& params,
                                  const EnsembleSpec& spec, uint64_t trials, uint64_t master_seed,
                                  uint64_t rejection_budget) {
  if (params.j < 0 || params.j % 2 != 0) throw Error(Err::BadParams, "j must be even");
  if (params.m < 1 || pattern.degree() > params.m - 1)
    throw Error(Err::BadParams, "pattern degree must be < m");
  if (!(params.epsilon > 0)) throw Error(Err::BadParams, "epsilon must be positive");

  ConditionLayout lay;
  lay.j = params.j;
  lay.claim_negative = false;
  lay.low_lo = 0;
  lay.low_hi = params.m - 1;
  lay.mid_lo = params.m;
  lay.mid_hi = spec.n - params.m - 1;
  lay.top_lo = spec.n - params.m;
  lay.top_hi = spec.n - 1;
  lay.epsilon = params.epsilon;
  lay.cap_M = params.cap_M;
  lay.box_center.resize(params.m);
  for (int i = 0; i < params.m; ++i) lay.box_center[i] = pattern.coeff(i);
  return run_pattern_trials(lay, spec, trials, master_seed, rejection_budget);
}

EnsembleSpec forced_negativity_spec(int n) {
  EnsembleSpec spec;
  spec.id = "forced-negativity";
  spec.n = n;
  spec.law = CoefficientLaw::uniform_symmetric(std::sqrt(3.0));
  spec.fixed.k = 2;
  spec.fixed.S = {1, 2};
  spec.fixed.values[1] = 1;
  spec.fixed.values[2] = -2024;
  return spec;
}

bool forced_negativity_bound_negative(int n) {
  // 2^{n-2} (2 - 2024 + sqrt(3)) < 0
  Rational factor = Rational(2) - 2024 + rational_from_double(std::sqrt(3.0));
  Rational pow2 = 1;
  for (int i = 0; i < n - 2; ++i) pow2 *= 2;
  return sgn(pow2 * factor) < 0;
}

PatternReport check_forced_negativity(int n, uint64_t trials, uint64_t master_seed) {
  EnsembleSpec spec = forced_negativity_spec(n);
  auto errs = validate_spec(spec);
  if (!errs.empty()) throw Error(Err::DegreeTooSmall, "forced-negativity spec needs n > 2");

  PatternReport rep;
  rep.trials = trials;
  auto t0 = std::chrono::steady_clock::now();
  for (uint64_t t = 0; t < trials; ++t) {
    uint64_t seed = derive_trial_seed(master_seed, t);
    Polynomial f = sample_polynomial(spec, seed);
    bool negative_at_2 = sgn(f.eval_exact(Rational(2))) < 0;
    if (negative_at_2) {
      rep.successes += 1;
    } else {
      rep.failures += 1;
      if (rep.failure_details.size() < 16) {
        FailureCert cert;
        cert.trial_index = t;
        cert.seed = seed;
        cert.reason = "sample not negative at x = 2";
        cert.sample_coeffs = f.to_string();
        rep.failure_details.push_back(std::move(cert));
      }
    }
  }
  rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

WitnessResult find_no_outside_root_witness(const FixedCoeffSpec& fixed, const CoefficientLaw& law,
                                           int s_max, uint64_t trials_per_s,
                                           uint64_t master_seed) {
  if (s_max % 2 != 0 || s_max <= fixed.k)
    throw Error(Err::BadParams, "s_max must be even and exceed k");

  WitnessResult out;
  int s_first = fixed.k + 1;
  if (s_first % 2 != 0) ++s_first;
  for (int s = s_first; s <= s_max; s += 2) {
    EnsembleSpec spec;
    spec.n = s;
    spec.law = law;
    spec.fixed = fixed;
    if (!validate_spec(spec).empty()) continue;
    for (uint64_t t = 0; t < trials_per_s; ++t) {
      uint64_t seed = derive_trial_seed(master_seed ^ (0x517CC1B7ull * s), t);
      Polynomial f = sample_polynomial(spec, seed);
      out.trials_per_s[s] += 1;
      if (f.is_zero()) continue;
      if (no_real_roots_outside_unit_disk(f, s)) {
        // re-verify the witness before reporting it
        if (!no_real_roots_outside_unit_disk(f, s))
          throw Error(Err::NumericalBreakdown, "witness failed re-verification");
        out.found = true;
        out.s = s;
        out.seed = seed;
        out.witness = f;
        return out;
      }
    }
  }
  return out;
}

}  // namespace rzlab
