#include "rzlab/rootcount.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "rzlab/error.hpp"
#include "rzlab/intpoly.hpp"

namespace rzlab {

std::vector<Polynomial> sturm_sequence(const Polynomial& p) {
  if (p.is_zero()) throw Error(Err::ZeroPolynomial, "sturm_sequence");
  std::vector<Polynomial> chain;
  chain.push_back(p);
  if (p.degree() == 0) return chain;
  chain.push_back(p.derivative());
  while (chain.back().degree() > 0) {
    const Polynomial& a = chain[chain.size() - 2];
    const Polynomial& b = chain.back();
    // rational remainder of a by b
    std::vector<Rational> r(a.coeffs());
    int da = a.degree(), db = b.degree();
    for (int k = da; k >= db; --k) {
      Rational t = r[k] / b.coeff(db);
      if (sgn(t) != 0)
        for (int j = 0; j <= db; ++j) r[k - db + j] -= t * b.coeff(j);
      r[k] = 0;
    }
    Polynomial rem = Polynomial::from_exact(std::move(r));
    if (rem.is_zero()) break;
    chain.push_back(-rem);
  }
  return chain;
}

RootCountReport count_real_roots(const Polynomial& p) {
  if (p.is_zero()) throw Error(Err::ZeroPolynomial, "count_real_roots");
  RootCountReport rep;
  rep.method = RootCountReport::Method::ExactSturm;
  rep.certified = true;
  if (p.degree() == 0) return rep;

  IntPoly ip = int_from_poly(p);
  SturmChain chain(ip);
  rep.total = chain.count_distinct_real();
  const IntPoly& g = chain.gcd_like();
  if (g.degree() == 0) {
    rep.simple = rep.total;
    rep.all_simple = true;
  } else {
    SturmChain gchain(g);
    int multiple = gchain.count_distinct_real();
    rep.simple = rep.total - multiple;
    rep.all_simple = (multiple == 0);
  }
  return rep;
}

namespace {

// exact synthetic division by (x - r); requires p(r) == 0
Polynomial deflate_root(const Polynomial& p, const Rational& r) {
  int d = p.degree();
  std::vector<Rational> q(d);
  Rational acc = p.coeff(d);
  for (int i = d - 1; i >= 0; --i) {
    q[i] = acc;
    acc = acc * r + p.coeff(i);
  }
  return Polynomial::from_exact(std::move(q));
}

}  // namespace

int count_roots_in_interval(const Polynomial& p_in, const Rational& a, const Rational& b) {
  if (p_in.is_zero()) throw Error(Err::ZeroPolynomial, "count_roots_in_interval");
  if (!(a < b)) throw Error(Err::EndpointRoot, "count_roots_in_interval: need a < b");
  Polynomial p = p_in;
  int count = 0;
  if (sgn(p.eval_exact(b)) == 0) ++count;  // b lies in (a, b]
  while (!p.is_zero() && p.degree() > 0 && sgn(p.eval_exact(a)) == 0) p = deflate_root(p, a);
  while (!p.is_zero() && p.degree() > 0 && sgn(p.eval_exact(b)) == 0) p = deflate_root(p, b);
  if (p.degree() <= 0) return count;
  SturmChain chain(int_from_poly(p));
  return count + chain.count_halfopen(a, b);
}

bool is_squarefree(const Polynomial& p) {
  if (p.is_zero()) return false;
  if (p.degree() <= 1) return true;
  IntPoly ip = int_from_poly(p);
  if (certainly_squarefree_mod(ip)) return true;
  SturmChain chain(ip);
  return chain.squarefree();
}

FastCount count_real_roots_fast(const Polynomial& p, const FastCountOptions& opt) {
  if (p.is_zero()) throw Error(Err::ZeroPolynomial, "count_real_roots_fast");
  const std::vector<double>& c = p.shadow();
  for (double v : c)
    if (!std::isfinite(v)) throw Error(Err::NumericalBreakdown, "non-finite coefficient");

  FastCount out;
  out.trusted = true;
  // strip exact roots at zero (counted once as a distinct root); a multiple
  // root at zero is distinct-countable but not simple, so it cannot be
  // certified for simple-zero classification
  size_t v0 = 0;
  while (v0 < c.size() && c[v0] == 0.0) ++v0;
  if (v0 > 0) out.count += 1;
  if (v0 > 1) out.trusted = false;
  int d = static_cast<int>(c.size() - v0) - 1;
  if (d <= 0) return out;

  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
  double lead = c.back();
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[v0 + i] / lead;
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;

  Eigen::RealSchur<Eigen::MatrixXd> schur;
  schur.computeFromHessenberg(comp, Eigen::MatrixXd::Identity(1, 1), false);
  if (schur.info() != Eigen::Success)
    throw Error(Err::NumericalBreakdown, "Schur iteration failed");
  const Eigen::MatrixXd& T = schur.matrixT();

  std::vector<double> reals;
  int i = 0;
  while (i < d) {
    if (i + 1 < d && T(i + 1, i) != 0.0) {
      // 2x2 block: complex conjugate pair
      double re = 0.5 * (T(i, i) + T(i + 1, i + 1));
      double det = T(i, i) * T(i + 1, i + 1) - T(i, i + 1) * T(i + 1, i);
      double disc = det - re * re;  // = im^2 for a conjugate pair
      double im = disc > 0 ? std::sqrt(disc) : 0.0;
      double mag = std::hypot(re, im);
      if (im <= opt.ambiguity_margin * (1.0 + mag)) out.trusted = false;
      i += 2;
    } else {
      reals.push_back(T(i, i));
      i += 1;
    }
  }

  std::vector<double> separation = reals;
  if (v0 > 0) separation.push_back(0.0);  // the deflated root participates too
  std::sort(separation.begin(), separation.end());
  for (size_t k = 0; k + 1 < separation.size(); ++k)
    if (separation[k + 1] - separation[k] <=
        opt.ambiguity_margin * (1.0 + std::fabs(separation[k])))
      out.trusted = false;  // cannot certify distinctness

  for (double r : reals) {
    // relative backward error |p(r)| / sum |p_i| |r|^i
    double val = 0, scale = 0, xp = 1;
    for (size_t j = v0; j < c.size(); ++j) {
      val += c[j] * xp;
      scale += std::fabs(c[j]) * std::fabs(xp);
      xp *= r;
    }
    if (!(std::fabs(val) <= opt.residual_tol * scale)) out.trusted = false;
  }

  out.count += static_cast<int>(reals.size());
  return out;
}

bool no_real_roots_outside_unit_disk(const Polynomial& p, int m) {
  if (p.is_zero()) return true;
  Polynomial q = reverse(p, m);
  if (q.degree() <= 0) return true;
  // strip roots at zero of the reversal (they have no preimage)
  std::vector<Rational> c(q.coeffs());
  size_t v = 0;
  while (v < c.size() && sgn(c[v]) == 0) ++v;
  if (v) c.erase(c.begin(), c.begin() + v);
  Polynomial qs = Polynomial::from_exact(std::move(c));
  if (qs.degree() <= 0) return true;
  // roots of p outside the closed unit disk = roots of qs in (-1,0) u (0,1)
  int inside = count_roots_in_interval(qs, Rational(-1), Rational(1));
  if (sgn(qs.eval_exact(Rational(1))) == 0) --inside;  // x = 1 was counted in (-1, 1]
  // subtract a root at 0 if present (cannot happen after stripping) — kept for clarity
  return inside == 0;
}

bool positive_everywhere(const Polynomial& p) {
  if (p.is_zero()) return false;
  if (p.degree() == 0) return sgn(p.coeff(0)) > 0;
  if (sgn(p.eval_exact(Rational(0))) <= 0) return false;
  if (p.degree() % 2 == 1) return false;
  if (sgn(p.coeff(p.degree())) <= 0) return false;
  IntPoly ip = int_from_poly(p);
  VcaDecision d = vca_has_real_root(ip);
  if (d.decided) return !d.has_root;
  SturmChain chain(ip);
  return chain.count_distinct_real() == 0;
}

bool has_real_root_exact(const Polynomial& p) {
  if (p.is_zero()) return true;
  if (p.degree() <= 0) return false;
  IntPoly ip = int_from_poly(p);
  VcaDecision d = vca_has_real_root(ip);
  if (d.decided) return d.has_root;
  SturmChain chain(ip);
  return chain.count_distinct_real() > 0;
}

int count_distinct_real_roots_isolation(const Polynomial& p) {
  if (p.is_zero()) throw Error(Err::ZeroPolynomial, "count_distinct_real_roots_isolation");
  if (p.degree() == 0) return 0;
  IntPoly ip = int_from_poly(p);
  if (!certainly_squarefree_mod(ip)) ip = squarefree_part(ip);
  VcaCount c = vca_count_real(ip);
  if (c.decided) return c.count;
  SturmChain chain(ip);
  return chain.count_distinct_real();
}

// ---------------------------------------------------------------------------
// threshold certification

namespace {

// largest power-of-two root bound as a rational
Rational pow2_bound(const Polynomial& p) {
  IntPoly ip = int_from_poly(p);
  int d = ip.degree();
  size_t lead_bits = mpz_sizeinbase(ip.c[d].get_mpz_t(), 2);
  size_t max_bits = 0;
  for (int i = 0; i < d; ++i) {
    if (sgn(ip.c[i]) == 0) continue;
    max_bits = std::max(max_bits, mpz_sizeinbase(ip.c[i].get_mpz_t(), 2));
  }
  long K = std::max(static_cast<long>(max_bits) - static_cast<long>(lead_bits) + 2, 1L);
  Rational b = 1;
  mpq_mul_2exp(b.get_mpq_t(), b.get_mpq_t(), K);
  return b;
}

// exact check that h > 0 on (w, +inf); h nonzero
bool positive_beyond(const Polynomial& h, const Rational& w) {
  Rational bound = pow2_bound(h);
  if (bound <= w) return sgn(h.eval_exact(w + 1)) > 0;  // no roots beyond w at all
  Polynomial hd = h;
  // deflate a root exactly at w so the Sturm query is clean
  while (hd.degree() > 0 && sgn(hd.eval_exact(w)) == 0) hd = deflate_root(hd, w);
  if (hd.degree() <= 0) return sgn(hd.coeff(0)) > 0;
  SturmChain chain(int_from_poly(hd));
  if (chain.count_halfopen(w, bound) != 0) return false;
  // no roots past w: the sign there is constant
  return sgn(h.eval_exact(bound)) > 0;
}

struct TailPlan {
  Polynomial h;  // sign certificate polynomial on the tail
  bool want_f_positive;
};

// exact violation test at a rational point: f_hat(x) <= gamma(x)
bool exact_violation_at(const EnsembleSpec& spec, const Polynomial& p, const ThresholdFamily& g,
                        const Rational& x) {
  Rational fx = p.eval_exact(x);
  Rational gx = g.at_exact(x);
  Rational s2 = sigma_squared_exact(spec, x);
  if (sgn(gx) >= 0) {
    if (sgn(fx) <= 0) return true;
    return fx * fx <= gx * gx * s2;
  }
  if (sgn(fx) >= 0) return false;
  return fx * fx >= gx * gx * s2;
}

double gamma_max_on(const ThresholdFamily& g, double u, double v) {
  if (g.kind == ThresholdFamily::Kind::Zero) return 0.0;
  if (g.kind == ThresholdFamily::Kind::Constant) return to_double_nearest(g.constant);
  double m = std::max(g.at(u), g.at(v));
  for (const auto& [x, y] : g.knots) {
    double xd = to_double_nearest(x);
    if (xd > u && xd < v) m = std::max(m, to_double_nearest(y));
  }
  double wl = to_double_nearest(g.window_lo()), wh = to_double_nearest(g.window_hi());
  if (u < wl || v > wh) m = std::max(m, to_double_nearest(g.tail_value));
  return m;
}

// bound on |d/dx (p/sigma)| over [u, v]
double lipschitz_bound(const EnsembleSpec& spec, const Polynomial& p, double u, double v) {
  double W = std::max(std::fabs(u), std::fabs(v));
  long double af = 0, afp = 0, xp = 1;
  for (int i = 0; i <= p.degree(); ++i) {
    double ci = std::fabs(p.coeff_double(i));
    af += ci * xp;
    if (i >= 1) afp += ci * i * (xp / (W > 0 ? W : 1));
    xp *= W;
  }
  double xin = (u <= 0 && v >= 0) ? 0.0 : std::min(std::fabs(u), std::fabs(v));
  double s2min = sigma_squared(spec, xin);  // even and increasing in |x|
  double smin = std::sqrt(s2min);
  // |(sigma^2)'| <= sum over slots of w_i * 2(n-i) * W^{2(n-i)-1}
  FixedCoeffSpec fixed = spec.effective_fixed();
  long double D = 0;
  for (int i = 1; i <= spec.n; ++i) {
    int e = 2 * (spec.n - i);
    if (e == 0) continue;
    double w = 1.0;
    if (fixed.S.count(i)) {
      double cv = to_double_nearest(fixed.value_of(i));
      w = cv * cv;
    }
    D += w * e * std::pow(static_cast<long double>(W), e - 1);
  }
  return static_cast<double>(afp / smin + af * D / (2.0L * smin * s2min));
}

}  // namespace

ThresholdCheck exceeds_threshold_everywhere(const EnsembleSpec& spec, const Polynomial& p,
                                            const ThresholdFamily& gamma, double resolution) {
  ThresholdCheck out;
  if (p.is_zero()) {
    // f_hat == 0: the event holds iff gamma is everywhere negative
    bool neg_const = gamma.kind == ThresholdFamily::Kind::Constant && sgn(gamma.constant) < 0;
    out.verdict = neg_const ? ThresholdVerdict::Yes : ThresholdVerdict::No;
    return out;
  }

  // exact path: gamma identically zero
  if (gamma.is_identically_zero()) {
    if (positive_everywhere(p)) {
      out.verdict = ThresholdVerdict::Yes;
      return out;
    }
    out.verdict = ThresholdVerdict::No;
    // find a witness: scan (preferring strictly negative points), then isolate
    double B = cauchy_root_bound(p);
    int N = 4096;
    for (int want_negative = 1; want_negative >= 0; --want_negative) {
      for (int i = 0; i <= N; ++i) {
        Rational x = Rational(-static_cast<long>(N) + 2 * static_cast<long>(i)) / N;
        x *= rational_from_double(B);
        int s = sgn(p.eval_exact(x));
        if (s < 0 || (s == 0 && !want_negative)) {
          out.witness = to_double_nearest(x);
          return out;
        }
      }
    }
    // touching or narrow dip: bisect down to a root with the Sturm chain
    SturmChain chain(int_from_poly(p));
    Rational lo = rational_from_double(-B - 1), hi = rational_from_double(B + 1);
    for (int it = 0; it < 200 && chain.count_halfopen(lo, hi) > 0; ++it) {
      Rational mid = (lo + hi) / 2;
      if (sgn(p.eval_exact(mid)) <= 0) {
        out.witness = to_double_nearest(mid);
        return out;
      }
      if (chain.count_halfopen(lo, mid) > 0)
        hi = mid;
      else
        lo = mid;
      if (to_double_nearest(hi - lo) < 1e-15) break;
    }
    out.witness = to_double_nearest((lo + hi) / 2);
    return out;
  }

  // constant tails, exact
  Rational tail = gamma.kind == ThresholdFamily::Kind::Constant ? gamma.constant : gamma.tail_value;
  double B0 = cauchy_root_bound(p);
  double W = std::max({B0, std::fabs(to_double_nearest(gamma.window_lo())),
                       std::fabs(to_double_nearest(gamma.window_hi())), 2.0});
  Rational Wr = rational_from_double(std::nextafter(W, HUGE_VAL));
  Polynomial s2p = sigma_squared_poly(spec);
  Polynomial p2 = p * p;
  Polynomial diff = p2 - s2p.scaled(tail * tail);  // p^2 - tail^2 sigma^2

  for (int dir = 0; dir < 2; ++dir) {
    // sign of p on the tail is the sign at +/- infinity (W >= Cauchy bound)
    int s_tail = sgn(p.coeff(p.degree()));
    if (dir == 1 && p.degree() % 2 == 1) s_tail = -s_tail;
    Polynomial mirrored_diff = diff;
    if (dir == 1) {
      // substitute x -> -x to reuse the (W, inf) machinery
      std::vector<Rational> c(diff.coeffs());
      for (size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
      mirrored_diff = Polynomial::from_exact(std::move(c));
    }
    bool tail_ok;
    if (sgn(tail) >= 0)
      tail_ok = s_tail > 0 && positive_beyond(mirrored_diff, Wr);
    else
      tail_ok = s_tail > 0 || positive_beyond(-mirrored_diff, Wr);
    if (!tail_ok) {
      // locate an exactly confirmed witness on the failing tail
      for (int k = 0; k <= 64; ++k) {
        Rational x = Wr + (Integer(1) << k);
        if (dir == 1) x = -x;
        if (exact_violation_at(spec, p, gamma, x)) {
          out.verdict = ThresholdVerdict::No;
          out.witness = to_double_nearest(x);
          return out;
        }
      }
      out.verdict = ThresholdVerdict::Undecided;
      return out;
    }
  }

  // window [-W, W]: adaptive certification
  struct Seg {
    double u, v;
  };
  std::vector<Seg> stack{{-W, W}};
  bool undecided = false;
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    double mid = 0.5 * (s.u + s.v);
    double fm = normalized_value(spec, p, mid);
    double gmax = gamma_max_on(gamma, s.u, s.v);
    double L = lipschitz_bound(spec, p, s.u, s.v);
    double half = 0.5 * (s.v - s.u);
    if (fm - gmax > L * half) continue;  // certified above gamma on the segment
    // certified-violation probe at the three sample points
    for (double x : {s.u, mid, s.v}) {
      double fv = normalized_value(spec, p, x);
      if (fv <= gamma.at(x) + 1e-12) {
        Rational xr = rational_from_double(x);
        if (exact_violation_at(spec, p, gamma, xr)) {
          out.verdict = ThresholdVerdict::No;
          out.witness = x;
          return out;
        }
      }
    }
    if (s.v - s.u < resolution) {
      undecided = true;
      continue;
    }
    stack.push_back({s.u, mid});
    stack.push_back({mid, s.v});
  }
  out.verdict = undecided ? ThresholdVerdict::Undecided : ThresholdVerdict::Yes;
  return out;
}

}  // namespace rzlab
