#include "rzlab/algint.hpp"

#include <cmath>

#include "rzlab/error.hpp"
#include "rzlab/intpoly.hpp"
#include "rzlab/rng.hpp"
#include "rzlab/rootcount.hpp"

namespace rzlab {

Polynomial IntegerMonicPoly::to_polynomial() const {
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  for (int i = 1; i <= n; ++i) c[n - i] = Rational(p[i - 1]);
  return Polynomial::from_exact(std::move(c));
}

double height(const IntegerMonicPoly& poly) {
  double h = 0;
  for (int i = 1; i <= poly.n; ++i) {
    double v = std::fabs(poly.p[i - 1].get_d());
    if (v == 0) continue;
    h = std::max(h, std::pow(v, 1.0 / i));
  }
  return h;
}

IntegerMonicPoly normalize_trace(const IntegerMonicPoly& poly) {
  // trace = -p_1; want -p_1 + n t in {0, ..., n-1}, i.e. t = ceil(p_1 / n)
  Integer t_num = poly.p[0];
  Integer t;
  mpz_cdiv_q_ui(t.get_mpz_t(), t_num.get_mpz_t(), poly.n);
  if (t == 0) return poly;
  // substitute x -> x - t via repeated synthetic shifts (Horner / Pascal),
  // on the full ascending coefficient vector
  std::vector<Integer> c(poly.n + 1);
  c[poly.n] = 1;
  for (int i = 1; i <= poly.n; ++i) c[poly.n - i] = poly.p[i - 1];
  // c(x) <- c(x - t)
  for (int i = 0; i < poly.n; ++i)
    for (int j = poly.n - 1; j >= i; --j) c[j] -= t * c[j + 1];
  IntegerMonicPoly out;
  out.n = poly.n;
  out.p.resize(poly.n);
  for (int i = 1; i <= poly.n; ++i) out.p[i - 1] = c[poly.n - i];
  return out;
}

int count_real_embeddings(const IntegerMonicPoly& poly) {
  Polynomial p = poly.to_polynomial();
  if (!is_squarefree(p)) throw Error(Err::NotSquarefree, "count_real_embeddings");
  return count_real_roots(p).total;
}

namespace {

// every rational root of a monic integer polynomial is an integer divisor of
// the constant term
bool has_integer_root(const IntegerMonicPoly& poly) {
  const Integer& c0 = poly.p[poly.n - 1];
  Polynomial p = poly.to_polynomial();
  if (sgn(c0) == 0) return true;  // root at 0
  Integer a = abs(c0);
  for (Integer d = 1; d * d <= a; ++d) {
    if (a % d != 0) continue;
    Integer pair[2] = {d, Integer(a / d)};
    for (const Integer& cand : pair) {
      if (sgn(p.eval_exact(Rational(cand))) == 0) return true;
      if (sgn(p.eval_exact(Rational(-cand))) == 0) return true;
    }
  }
  return false;
}

// monic quadratic-factor search: x^4 + p1 x^3 + p2 x^2 + p3 x + p4 =
// (x^2 + a x + b)(x^2 + c x + d) with integer a, b, c, d
bool has_quadratic_factor_quartic(const IntegerMonicPoly& poly) {
  const Integer &p1 = poly.p[0], &p2 = poly.p[1], &p3 = poly.p[2], &p4 = poly.p[3];
  if (sgn(p4) == 0) return true;  // x divides
  Integer a4 = abs(p4);
  std::vector<Integer> divs;
  for (Integer d = 1; d * d <= a4; ++d) {
    if (a4 % d != 0) continue;
    divs.push_back(d);
    divs.push_back(a4 / d);
  }
  for (const Integer& bd : divs) {
    for (int sign_b : {1, -1}) {
      Integer b = sign_b * bd;
      if (b == 0) continue;
      if (p4 % b != 0) continue;
      Integer d = p4 / b;
      // a + c = p1, b + d + a c = p2, a d + b c = p3
      // => a c = p2 - b - d; a, c are roots of t^2 - p1 t + (p2 - b - d)
      Integer prod = p2 - b - d;
      Integer disc = p1 * p1 - 4 * prod;
      if (sgn(disc) < 0) continue;
      Integer root;
      mpz_sqrt(root.get_mpz_t(), disc.get_mpz_t());
      if (root * root != disc) continue;
      for (int sr : {1, -1}) {
        Integer two_a = p1 + sr * root;
        if (mpz_odd_p(two_a.get_mpz_t())) continue;
        Integer a = two_a / 2;
        Integer c = p1 - a;
        if (a * d + b * c == p3) return true;
      }
    }
  }
  return false;
}

}  // namespace

bool is_irreducible(const IntegerMonicPoly& poly) {
  if (poly.n > 4) throw Error(Err::DegreeUnsupported, "exact irreducibility only for n <= 4");
  if (poly.n <= 1) return poly.n == 1;
  if (has_integer_root(poly)) return false;
  if (poly.n <= 3) return true;  // degree 2, 3: only linear factors possible
  return !has_quadratic_factor_quartic(poly);
}

CensusRecord enumerate_census(int n, double H, bool irreducible_only, uint64_t budget,
                              bool with_listing) {
  if (n < 1) throw Error(Err::BadParams, "census needs n >= 1");
  if (!(H > 0)) throw Error(Err::BadParams, "census needs H > 0");

  std::vector<long> box(n);  // |p_i| <= floor(H^i)
  for (int i = 1; i <= n; ++i) {
    double b = std::floor(std::pow(H, i) + 1e-9);
    box[i - 1] = static_cast<long>(b);
  }
  // trace normalization: p_1 in {-(n-1), ..., 0} intersected with the box
  long p1_lo = -std::min<long>(n - 1, box[0]);
  double combos = static_cast<double>(-p1_lo + 1);
  for (int i = 2; i <= n; ++i) combos *= 2.0 * box[i - 1] + 1.0;
  if (combos > static_cast<double>(budget))
    throw Error(Err::BudgetExceeded, "census box has " + std::to_string(combos) + " points");

  CensusRecord rec;
  rec.n = n;
  rec.height_bound = H;

  IntegerMonicPoly poly;
  poly.n = n;
  poly.p.assign(n, Integer(0));
  std::vector<long> cur(n);
  cur[0] = p1_lo;
  for (int i = 2; i <= n; ++i) cur[i - 1] = -box[i - 1];

  for (;;) {
    for (int i = 0; i < n; ++i) poly.p[i] = cur[i];
    Polynomial p = poly.to_polynomial();
    RootCountReport rep = count_real_roots(p);
    rec.total += 1;
    rec.by_j[rep.total] += 1;
    bool squarefree = rep.all_simple && is_squarefree(p);
    if (squarefree) {
      rec.squarefree_total += 1;
      rec.squarefree_by_j[rep.total] += 1;
    }
    if (irreducible_only && n <= 4) {
      if (is_irreducible(poly)) rec.irreducible_by_j[rep.total] += 1;
    }
    if (with_listing && rec.listing.size() < 100000) {
      std::string key;
      for (int i = 0; i < n; ++i) {
        if (i) key += ' ';
        key += poly.p[i].get_str();
      }
      rec.listing.emplace_back(std::move(key), rep.total);
    }

    // odometer
    int pos = 0;
    for (;;) {
      if (pos == n) break;
      long hi = (pos == 0) ? 0 : box[pos];
      if (cur[pos] < hi) {
        cur[pos] += 1;
        break;
      }
      cur[pos] = (pos == 0) ? p1_lo : -box[pos];
      ++pos;
    }
    if (pos == n) break;
  }

  for (const auto& [j, cnt] : rec.by_j)
    rec.density_by_j[j] = static_cast<double>(cnt) / static_cast<double>(rec.total);

  if (irreducible_only && n > 4) {
    // sampled lower estimate of the reducible fraction: integer-root test
    // (complete factor search is out of scope beyond degree 4)
    uint64_t samples = 2000, reducible = 0;
    TrialRng rng(0xA16127ull ^ n, 0);
    for (uint64_t t = 0; t < samples; ++t) {
      IntegerMonicPoly s;
      s.n = n;
      s.p.resize(n);
      s.p[0] = -static_cast<long>(rng.next_u64() % (-p1_lo + 1));
      for (int i = 2; i <= n; ++i)
        s.p[i - 1] = static_cast<long>(rng.next_u64() % (2 * box[i - 1] + 1)) - box[i - 1];
      if (has_integer_root(s)) ++reducible;
    }
    rec.reducible_fraction_lower_estimate =
        static_cast<double>(reducible) / static_cast<double>(samples);
  }
  return rec;
}

}  // namespace rzlab
