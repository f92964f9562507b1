#include "rzlab/covariance.hpp"

#include <cmath>

#include "rzlab/error.hpp"

namespace rzlab {

namespace {

Rational dyadic_round(double v) {
  // nearest multiple of 2^-48
  double scaled = std::ldexp(v, 48);
  Rational r(rational_from_double(std::nearbyint(scaled)));
  r /= (Integer(1) << 48);
  return r;
}

long double to_ld(const Rational& q) {
  // good to double precision, ample for the reported tolerances
  return static_cast<long double>(mpq_get_d(q.get_mpq_t()));
}

}  // namespace

IntervalSystem IntervalSystem::make(double delta, int n) {
  if (!(delta > 0 && delta < 0.5)) throw Error(Err::BadParams, "delta must lie in (0, 1/2)");
  if (n < 2) throw Error(Err::BadParams, "interval system needs n >= 2");
  IntervalSystem sys;
  sys.delta = delta;
  sys.n = n;
  double a = 1.0 - std::pow(n, -delta);
  double b = 1.0 - std::pow(n, -(1.0 - delta));
  sys.inner_pos = {dyadic_round(a), dyadic_round(b)};
  if (!(sys.inner_pos.lo < sys.inner_pos.hi))
    throw Error(Err::BadParams, "inner interval collapsed");
  if (sgn(sys.inner_pos.lo) <= 0) throw Error(Err::BadParams, "inner interval touches zero");
  sys.outer_pos = {1 / sys.inner_pos.hi, 1 / sys.inner_pos.lo};
  sys.outer_neg = {-sys.outer_pos.hi, -sys.outer_pos.lo};
  sys.inner_neg = {-sys.inner_pos.hi, -sys.inner_pos.lo};
  return sys;
}

const RatInterval& IntervalSystem::interval(int i) const {
  switch (i) {
    case 1: return inner_pos;
    case 2: return outer_pos;
    case 3: return outer_neg;
    default: return inner_neg;
  }
}

bool IntervalSystem::in_union(const Rational& x) const {
  for (int i = 1; i <= 4; ++i)
    if (interval(i).contains(x)) return true;
  return false;
}

bool IntervalSystem::in_square_union(const Rational& x, const Rational& y) const {
  for (int i = 1; i <= 4; ++i)
    if (interval(i).contains(x) && interval(i).contains(y)) return true;
  return false;
}

double dominance_kernel(double x, double y) {
  double dx = x * x - 1.0, dy = y * y - 1.0;
  if (dx == 0.0 || dy == 0.0) throw Error(Err::PoleAtUnitCircle, "dominance_kernel");
  return std::fabs(x * y - 1.0) / std::sqrt(std::fabs(dx * dy));
}

double unfixed_top_poly(const EnsembleSpec& spec, double z) {
  FixedCoeffSpec fixed = spec.effective_fixed();
  double acc = 0;
  for (int i = 1; i <= fixed.k; ++i)
    if (!fixed.S.count(i)) acc += std::pow(z, fixed.k + 1 - i);
  return acc;
}

Rational unfixed_top_poly_exact(const EnsembleSpec& spec, const Rational& z) {
  FixedCoeffSpec fixed = spec.effective_fixed();
  Rational acc = 0;
  for (int i = 1; i <= fixed.k; ++i) {
    if (fixed.S.count(i)) continue;
    Rational p = 1;
    for (int e = 0; e < fixed.k + 1 - i; ++e) p *= z;
    acc += p;
  }
  return acc;
}

Rational covariance_term_exact(const EnsembleSpec& spec, const Rational& z) {
  FixedCoeffSpec fixed = spec.effective_fixed();
  int n = spec.n, k = fixed.k;
  int N = n - k;  // trailing block length; exponents N-1 .. 0
  const Integer& p = z.get_num();
  const Integer& q = z.get_den();
  // sum_{j=0}^{N-1} z^j = T / q^{N-1} with T = sum p^j q^{N-1-j}
  std::vector<Integer> qpow(N);
  qpow[0] = 1;
  for (int j = 1; j < N; ++j) qpow[j] = qpow[j - 1] * q;
  Integer T = 0, P = 1;
  for (int j = 0; j < N; ++j) {
    T += P * qpow[N - 1 - j];
    P *= p;
  }
  Rational geom(T, qpow[N - 1]);
  geom.canonicalize();

  // z^{N-1} r(z)
  Integer pN1;
  mpz_pow_ui(pN1.get_mpz_t(), p.get_mpz_t(), N - 1);
  Rational zpow(pN1, qpow[N - 1]);
  zpow.canonicalize();
  return geom + zpow * unfixed_top_poly_exact(spec, z);
}

long double normalized_covariance_at(const EnsembleSpec& spec, const Rational& x,
                                     const Rational& y) {
  Rational num = covariance_term_exact(spec, x * y);
  Rational dx = covariance_term_exact(spec, x * x);
  Rational dy = covariance_term_exact(spec, y * y);
  return to_ld(num) / std::sqrt(to_ld(dx) * to_ld(dy));
}

double normalized_covariance(const EnsembleSpec& spec, double x, double y) {
  return static_cast<double>(
      normalized_covariance_at(spec, rational_from_double(x), rational_from_double(y)));
}

namespace {

void require_lemma_spec(const EnsembleSpec& spec) {
  FixedCoeffSpec fixed = spec.effective_fixed();
  if (fixed.S.count(1)) throw Error(Err::InvalidSpecForLemma, "1 must not be in S");
  for (const auto& [i, v] : fixed.values) {
    (void)i;
    if (sgn(v) != 0) throw Error(Err::InvalidSpecForLemma, "fixed values must all be zero");
  }
}

std::vector<Rational> mesh_points(const RatInterval& iv, int mesh) {
  std::vector<Rational> pts(mesh);
  for (int t = 0; t < mesh; ++t)
    pts[t] = iv.lo + (iv.hi - iv.lo) * Rational(t) / Rational(mesh - 1);
  return pts;
}

}  // namespace

DominanceReport check_covariance_dominance(const EnsembleSpec& spec, const IntervalSystem& sys,
                                           double alpha_n, int mesh, MeshRegion region,
                                           bool search_least_alpha,
                                           std::vector<MeshPoint>* mesh_dump) {
  require_lemma_spec(spec);
  if (mesh < 2) throw Error(Err::BadParams, "mesh must be >= 2");

  std::vector<std::pair<int, int>> region_pairs;
  if (region == MeshRegion::InnerPosSquare)
    region_pairs = {{1, 1}};
  else if (region == MeshRegion::OuterPosSquare)
    region_pairs = {{2, 2}};
  else
    for (int a = 1; a <= 4; ++a)
      for (int b = 1; b <= 4; ++b) region_pairs.push_back({a, b});

  DominanceReport rep;
  rep.mesh = mesh;
  rep.alpha_n = alpha_n;
  rep.max_violation = -HUGE_VAL;

  struct Point {
    long double cov, g;
    bool in_u;
    double x, y;
  };
  std::vector<Point> evaluated;

  for (auto [ia, ib] : region_pairs) {
    std::vector<Rational> xs = mesh_points(sys.interval(ia), mesh);
    std::vector<Rational> ys = mesh_points(sys.interval(ib), mesh);
    std::vector<Rational> dx_terms(mesh);
    for (int i = 0; i < mesh; ++i) dx_terms[i] = covariance_term_exact(spec, xs[i] * xs[i]);
    std::vector<Rational> dy_terms(mesh);
    for (int j = 0; j < mesh; ++j) dy_terms[j] = covariance_term_exact(spec, ys[j] * ys[j]);

    for (int i = 0; i < mesh; ++i) {
      for (int j = 0; j < mesh; ++j) {
        const Rational& x = xs[i];
        const Rational& y = ys[j];
        Rational num = covariance_term_exact(spec, x * y);
        long double cov = to_ld(num) / std::sqrt(to_ld(dx_terms[i]) * to_ld(dy_terms[j]));
        double xd = to_double_nearest(x), yd = to_double_nearest(y);
        long double g = dominance_kernel(xd, yd);
        bool in_u = sys.in_square_union(x, y);
        evaluated.push_back({cov, g, in_u, xd, yd});
        if (x == y) {
          double err = std::fabs(static_cast<double>(cov - 1.0L));
          rep.diagonal_max_error = std::max(rep.diagonal_max_error, err);
        }
      }
    }
  }

  auto violation_for = [&](double alpha) {
    double worst = -HUGE_VAL;
    std::pair<double, double> at{0, 0};
    for (const auto& pt : evaluated) {
      long double bound = pt.in_u ? (1.0L - alpha) / pt.g + alpha : alpha;
      double v = static_cast<double>(pt.cov - bound);
      if (v > worst) {
        worst = v;
        at = {pt.x, pt.y};
      }
    }
    return std::make_pair(worst, at);
  };

  auto [worst, at] = violation_for(alpha_n);
  rep.max_violation = worst;
  rep.worst = at;

  if (mesh_dump) {
    for (const auto& pt : evaluated) {
      long double bound = pt.in_u ? (1.0L - alpha_n) / pt.g + alpha_n : alpha_n;
      mesh_dump->push_back({pt.x, pt.y, static_cast<double>(pt.cov),
                            static_cast<double>(pt.g), pt.in_u,
                            static_cast<double>(pt.cov - bound)});
    }
  }

  if (search_least_alpha) {
    // the mesh feasibility is monotone in alpha
    double lo = 0.0, hi = std::pow(sys.n, -sys.delta / 2);
    if (violation_for(hi).first > 0) {
      rep.least_alpha = -1;  // even the ceiling fails on this mesh
    } else {
      for (int it = 0; it < 40; ++it) {
        double mid = 0.5 * (lo + hi);
        if (violation_for(mid).first > 0)
          lo = mid;
        else
          hi = mid;
      }
      rep.least_alpha = hi;
    }
  }
  return rep;
}

double max_kernel_covariance_product(const EnsembleSpec& spec, const IntervalSystem& sys,
                                     int mesh) {
  require_lemma_spec(spec);
  std::vector<Rational> xs = mesh_points(sys.outer_pos, mesh);
  std::vector<Rational> terms(mesh);
  for (int i = 0; i < mesh; ++i) terms[i] = covariance_term_exact(spec, xs[i] * xs[i]);
  long double best = -HUGE_VALL;
  for (int i = 0; i < mesh; ++i) {
    for (int j = 0; j < mesh; ++j) {
      Rational num = covariance_term_exact(spec, xs[i] * xs[j]);
      long double cov = to_ld(num) / std::sqrt(to_ld(terms[i]) * to_ld(terms[j]));
      long double g = dominance_kernel(to_double_nearest(xs[i]), to_double_nearest(xs[j]));
      best = std::max(best, g * cov);
    }
  }
  return static_cast<double>(best);
}

SupRatio top_slot_sup_ratio(const EnsembleSpec& spec, int j, double bound_x) {
  FixedCoeffSpec fixed = spec.effective_fixed();
  int n = spec.n, k = fixed.k;
  if (j < 1 || j > k) throw Error(Err::BadParams, "need 1 <= j <= k");
  if (!(bound_x > 0)) throw Error(Err::BadParams, "bound_x must be positive");

  long double X = bound_x;
  // direct summation at the endpoint
  long double denom = 0;
  for (int i = 1; i <= n - k; ++i) denom += std::pow(X, 2 * (n - k - i));
  long double direct = std::pow(X, n - j) / std::sqrt(denom);

  // geometric closed form for the same denominator
  long double closed_denom;
  if (std::fabs(static_cast<double>(X) - 1.0) < 1e-15)
    closed_denom = n - k;
  else
    closed_denom = (std::pow(X, 2 * (n - k)) - 1.0L) / (X * X - 1.0L);
  long double closed = std::pow(X, n - j) / std::sqrt(closed_denom);

  SupRatio out;
  out.value = static_cast<double>(direct);
  out.closed_form = static_cast<double>(closed);
  return out;
}

}  // namespace rzlab
