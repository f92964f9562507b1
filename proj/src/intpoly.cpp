#include "rzlab/intpoly.hpp"

#include <algorithm>
#include <cstdint>

#include "rzlab/error.hpp"

namespace rzlab {

IntPoly int_from_poly(const Polynomial& p) {
  IntPoly r;
  if (p.is_zero()) return r;
  Integer den = 1;
  for (const auto& q : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
  r.c.reserve(p.size());
  for (const auto& q : p.coeffs()) r.c.push_back(Integer(q.get_num() * (den / q.get_den())));
  r.trim();
  return r;
}

Polynomial poly_from_int(const IntPoly& p) {
  std::vector<Rational> c;
  c.reserve(p.c.size());
  for (const auto& z : p.c) c.emplace_back(z);
  return Polynomial::from_exact(std::move(c));
}

IntPoly derivative(const IntPoly& p) {
  IntPoly d;
  if (p.degree() <= 0) return d;
  d.c.resize(p.c.size() - 1);
  for (size_t i = 1; i < p.c.size(); ++i) d.c[i - 1] = p.c[i] * static_cast<long>(i);
  d.trim();
  return d;
}

Integer content(const IntPoly& p) {
  Integer g = 0;
  for (const auto& z : p.c) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return p;
  Integer g = content(p);
  if (g == 0 || g == 1) return p;
  IntPoly r;
  r.c.reserve(p.c.size());
  for (const auto& z : p.c) r.c.push_back(Integer(z / g));
  return r;
}

int sign_at(const IntPoly& p, const Rational& x_in) {
  if (p.is_zero()) return 0;
  Rational x = x_in;
  x.canonicalize();  // the scaled Horner below needs den > 0
  int d = p.degree();
  const Integer& num = x.get_num();
  const Integer& den = x.get_den();
  if (num == 0) return sgn(p.c[0]);
  Integer acc = p.c[d];
  Integer dp = 1;
  for (int i = d - 1; i >= 0; --i) {
    dp *= den;
    acc = acc * num + p.c[i] * dp;
  }
  return sgn(acc);
}

int sign_at_plus_inf(const IntPoly& p) { return p.is_zero() ? 0 : sgn(p.lead()); }

int sign_at_minus_inf(const IntPoly& p) {
  if (p.is_zero()) return 0;
  int s = sgn(p.lead());
  return (p.degree() % 2 == 0) ? s : -s;
}

IntPoly divide_exact(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw Error(Err::ZeroPolynomial, "divide_exact");
  int da = a.degree(), db = b.degree();
  if (da < db) throw Error(Err::ZeroPolynomial, "divide_exact: degree underflow");
  std::vector<Rational> rem(a.c.size());
  for (size_t i = 0; i < a.c.size(); ++i) rem[i] = Rational(a.c[i]);
  Rational lb(b.lead());
  std::vector<Rational> q(da - db + 1);
  for (int k = da; k >= db; --k) {
    Rational t = rem[k] / lb;
    q[k - db] = t;
    if (sgn(t) != 0)
      for (int j = 0; j <= db; ++j) rem[k - db + j] -= t * Rational(b.c[j]);
  }
  for (int i = 0; i < db; ++i)
    if (sgn(rem[i]) != 0) throw Error(Err::ZeroPolynomial, "divide_exact: not divisible");
  Integer den = 1;
  for (const auto& v : q) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den().get_mpz_t());
  IntPoly out;
  out.c.reserve(q.size());
  for (const auto& v : q) out.c.push_back(Integer(v.get_num() * (den / v.get_den())));
  out.trim();
  return out;
}

// Pseudo-remainder lc(b)^{deg a - deg b + 1} * a mod b, all exact integer ops.
static IntPoly prem(const IntPoly& a, const IntPoly& b) {
  int da = a.degree(), db = b.degree();
  const Integer& lb = b.lead();
  std::vector<Integer> r = a.c;
  for (int k = da; k >= db; --k) {
    Integer t = r[k];
    for (int j = 0; j < k; ++j) r[j] *= lb;
    if (sgn(t) != 0)
      for (int j = 0; j < db; ++j) r[k - db + j] -= t * b.c[j];
    r[k] = 0;
  }
  IntPoly out;
  out.c = std::move(r);
  out.trim();
  return out;
}

SturmChain::SturmChain(const IntPoly& p) {
  if (p.is_zero()) throw Error(Err::ZeroPolynomial, "SturmChain");
  elems_.push_back({primitive_part(p), +1});
  if (p.degree() == 0) return;
  IntPoly dp = primitive_part(derivative(p));
  elems_.push_back({std::move(dp), +1});

  // Brown's subresultant PRS on the primitive input pair.
  Integer g = 1, h = 1;
  while (true) {
    const Elem& A = elems_[elems_.size() - 2];
    const Elem& B = elems_[elems_.size() - 1];
    if (B.p.degree() < 0) break;
    int delta = A.p.degree() - B.p.degree();
    IntPoly r = prem(A.p, B.p);
    if (r.is_zero()) break;
    Integer divisor = g;
    for (int i = 0; i < delta; ++i) divisor *= h;
    IntPoly next;
    next.c.resize(r.c.size());
    for (size_t i = 0; i < r.c.size(); ++i) next.c[i] = r.c[i] / divisor;

    // canonical-sign bookkeeping: next = (-sigma_A * sign(lc(B))^{delta+1}
    // * sign(divisor)) * (positive) * canonical_next
    int s_lc = sgn(B.p.lead());
    int s_pow = ((delta + 1) % 2 == 0) ? +1 : s_lc;
    int sigma_next = -A.sigma * s_pow * sgn(divisor);

    g = B.p.lead();
    if (delta >= 1) {
      Integer hn = 1;
      for (int i = 0; i < delta; ++i) hn *= g;
      for (int i = 0; i < delta - 1; ++i) hn /= h;
      h = hn;
    }
    elems_.push_back({std::move(next), sigma_next});
    if (elems_.back().p.degree() == 0) break;
  }
}

namespace {
template <typename SignFn>
int count_variations(const std::vector<int>& sigmas, SignFn&& sign_of_elem, size_t n) {
  int var = 0, prev = 0;
  for (size_t i = 0; i < n; ++i) {
    int s = sign_of_elem(i) * sigmas[i];
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}
}  // namespace

int SturmChain::variations_at(const Rational& x) const {
  int var = 0, prev = 0;
  bool at_zero = (sgn(x) == 0);
  bool at_one = (x == 1);
  bool at_minus_one = (x == -1);
  for (const auto& e : elems_) {
    int s;
    if (at_zero) {
      s = e.p.is_zero() ? 0 : sgn(e.p.c[0]);
    } else if (at_one || at_minus_one) {
      Integer acc = 0;
      for (size_t i = 0; i < e.p.c.size(); ++i) {
        if (at_one || i % 2 == 0)
          acc += e.p.c[i];
        else
          acc -= e.p.c[i];
      }
      s = sgn(acc);
    } else {
      s = sign_at(e.p, x);
    }
    s *= e.sigma;
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

int SturmChain::variations_at_plus_inf() const {
  int var = 0, prev = 0;
  for (const auto& e : elems_) {
    int s = sign_at_plus_inf(e.p) * e.sigma;
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

int SturmChain::variations_at_minus_inf() const {
  int var = 0, prev = 0;
  for (const auto& e : elems_) {
    int s = sign_at_minus_inf(e.p) * e.sigma;
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

int SturmChain::count_distinct_real() const {
  if (elems_.front().p.degree() <= 0) return 0;
  return variations_at_minus_inf() - variations_at_plus_inf();
}

int SturmChain::count_halfopen(const Rational& a, const Rational& b) const {
  if (!(a < b)) throw Error(Err::EndpointRoot, "count_halfopen: need a < b");
  if (sign_at(elems_.front().p, a) == 0 || sign_at(elems_.front().p, b) == 0)
    throw Error(Err::EndpointRoot, "count_halfopen: endpoint is a root");
  return variations_at(a) - variations_at(b);
}

// ---------------------------------------------------------------------------
// modular squarefree certificate

namespace {

constexpr uint64_t kP61 = 2305843009213693951ull;  // 2^61 - 1, prime

inline uint64_t mulmod(uint64_t a, uint64_t b) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % kP61);
}

uint64_t powmod(uint64_t a, uint64_t e) {
  uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

inline uint64_t invmod(uint64_t a) { return powmod(a, kP61 - 2); }

std::vector<uint64_t> reduce_mod(const IntPoly& p) {
  std::vector<uint64_t> r(p.c.size());
  for (size_t i = 0; i < p.c.size(); ++i) {
    uint64_t m = mpz_fdiv_ui(p.c[i].get_mpz_t(), kP61);
    r[i] = m;
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

// gcd degree over F_p; -1 for gcd == 0
int gcd_degree_mod(std::vector<uint64_t> a, std::vector<uint64_t> b) {
  while (!b.empty()) {
    if (a.size() < b.size()) {
      a.swap(b);
      continue;
    }
    // a <- a mod b
    uint64_t inv = invmod(b.back());
    for (size_t k = a.size(); k-- > 0;) {
      if (k + 1 < b.size()) break;
      uint64_t q = mulmod(a[k], inv);
      if (q != 0) {
        size_t off = k + 1 - b.size();
        for (size_t j = 0; j + 1 < b.size(); ++j)
          a[off + j] = (a[off + j] + kP61 - mulmod(q, b[j])) % kP61;
      }
      a[k] = 0;
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    a.swap(b);
  }
  return static_cast<int>(a.size()) - 1;
}

}  // namespace

bool certainly_squarefree_mod(const IntPoly& p) {
  if (p.degree() <= 0) return false;
  std::vector<uint64_t> a = reduce_mod(p);
  if (static_cast<int>(a.size()) - 1 != p.degree()) return false;  // prime divides lc
  IntPoly d = derivative(p);
  std::vector<uint64_t> b = reduce_mod(d);
  if (b.empty()) return false;
  return gcd_degree_mod(std::move(a), std::move(b)) == 0;
}

IntPoly squarefree_part(const IntPoly& p) {
  if (p.degree() <= 0) return p;
  if (certainly_squarefree_mod(p)) return p;
  SturmChain chain(p);
  const IntPoly& g = chain.gcd_like();
  if (g.degree() == 0) return p;
  return divide_exact(p, g);
}

// ---------------------------------------------------------------------------
// Descartes / bisection kernels

namespace {

// c(x) <- c(x+1), in place
void taylor_shift_1(std::vector<Integer>& c) {
  int d = static_cast<int>(c.size()) - 1;
  for (int i = 0; i < d; ++i)
    for (int j = d - 1; j >= i; --j) c[j] += c[j + 1];
}

// removes a common power-of-two factor, cheap growth control
void strip_twos(std::vector<Integer>& c) {
  mp_bitcnt_t k = ~static_cast<mp_bitcnt_t>(0);
  for (const auto& z : c) {
    if (sgn(z) == 0) continue;
    k = std::min(k, mpz_scan1(z.get_mpz_t(), 0));
    if (k == 0) return;
  }
  if (k == 0 || k == ~static_cast<mp_bitcnt_t>(0)) return;
  for (auto& z : c) mpz_tdiv_q_2exp(z.get_mpz_t(), z.get_mpz_t(), k);
}

int descartes_var(const std::vector<Integer>& c) {
  int var = 0, prev = 0;
  for (const auto& z : c) {
    int s = sgn(z);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

// sign variation bound for roots in open (0,1): var of (1+x)^d p(1/(1+x))
int bound_unit(const std::vector<Integer>& c) {
  std::vector<Integer> q(c.rbegin(), c.rend());
  taylor_shift_1(q);
  return descartes_var(q);
}

// left half: 2^d p(x/2)
std::vector<Integer> half_left(const std::vector<Integer>& c) {
  int d = static_cast<int>(c.size()) - 1;
  std::vector<Integer> r(c.size());
  for (int i = 0; i <= d; ++i) {
    r[i] = c[i];
    mpz_mul_2exp(r[i].get_mpz_t(), r[i].get_mpz_t(), d - i);
  }
  return r;
}

struct UnitWork {
  bool counting;
  int max_depth;
  bool overflowed = false;
  bool found = false;  // existence mode
  int count = 0;       // counting mode
};

// roots in open (0,1) of c; existence mode stops at the first certain root
void unit_recurse(std::vector<Integer> c, int depth, UnitWork& w) {
  if (w.overflowed || (!w.counting && w.found)) return;
  strip_twos(c);
  int v = bound_unit(c);
  if (v == 0) return;
  if (v == 1) {
    if (w.counting)
      ++w.count;
    else
      w.found = true;
    return;
  }
  if (!w.counting && v % 2 == 1) {
    w.found = true;
    return;
  }
  if (depth >= w.max_depth) {
    w.overflowed = true;
    return;
  }
  std::vector<Integer> l = half_left(c);
  std::vector<Integer> r = l;
  taylor_shift_1(r);
  // value at the midpoint 1/2 is r[0] (up to the positive 2^d factor)
  if (sgn(r[0]) == 0) {
    if (w.counting)
      ++w.count;
    else {
      w.found = true;
      return;
    }
  }
  unit_recurse(std::move(l), depth + 1, w);
  unit_recurse(std::move(r), depth + 1, w);
}

// strips x^v, returns valuation
int strip_valuation(std::vector<Integer>& c) {
  size_t v = 0;
  while (v < c.size() && sgn(c[v]) == 0) ++v;
  if (v) c.erase(c.begin(), c.begin() + v);
  return static_cast<int>(v);
}

// scale so that roots in (0, 2^K) map to (0,1): c_i <- c_i * 2^{K i}
void scale_pow2(std::vector<Integer>& c, long K) {
  for (size_t i = 1; i < c.size(); ++i)
    mpz_mul_2exp(c[i].get_mpz_t(), c[i].get_mpz_t(), K * i);
}

long pow2_root_bound_exp(const std::vector<Integer>& c) {
  // 2^K >= 1 + max |c_i| / |c_d|
  int d = static_cast<int>(c.size()) - 1;
  size_t lead_bits = mpz_sizeinbase(c[d].get_mpz_t(), 2);
  size_t max_bits = 0;
  for (int i = 0; i < d; ++i) {
    if (sgn(c[i]) == 0) continue;
    max_bits = std::max(max_bits, mpz_sizeinbase(c[i].get_mpz_t(), 2));
  }
  long K = static_cast<long>(max_bits) - static_cast<long>(lead_bits) + 2;
  return std::max(K, 1L);
}

void negate_odd(std::vector<Integer>& c) {
  for (size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
}

// roots in (0, inf)
void positive_side(std::vector<Integer> c, UnitWork& w) {
  if (descartes_var(c) == 0) return;  // Descartes: no positive roots at all
  long K = pow2_root_bound_exp(c);
  scale_pow2(c, K);
  unit_recurse(std::move(c), 0, w);
}

}  // namespace

VcaDecision vca_has_real_root(const IntPoly& p, int max_depth) {
  VcaDecision out;
  if (p.is_zero()) {
    out.decided = true;
    out.has_root = true;
    return out;
  }
  if (p.degree() == 0) {
    out.decided = true;
    out.has_root = false;
    return out;
  }
  if (p.degree() % 2 == 1) {
    out.decided = true;
    out.has_root = true;
    return out;
  }
  std::vector<Integer> c = p.c;
  if (strip_valuation(c) > 0) {
    out.decided = true;
    out.has_root = true;  // root at x = 0
    return out;
  }
  UnitWork w{/*counting=*/false, max_depth};
  positive_side(c, w);
  if (w.found) {
    out.decided = true;
    out.has_root = true;
    return out;
  }
  bool pos_overflow = w.overflowed;
  UnitWork wn{/*counting=*/false, max_depth};
  negate_odd(c);
  positive_side(std::move(c), wn);
  if (wn.found) {
    out.decided = true;
    out.has_root = true;
    return out;
  }
  out.decided = !pos_overflow && !wn.overflowed;
  out.has_root = false;
  return out;
}

VcaCount vca_count_unit(const IntPoly& p, int max_depth) {
  VcaCount out;
  if (p.is_zero() || p.degree() == 0) {
    out.decided = !p.is_zero();
    return out;
  }
  std::vector<Integer> c = p.c;
  strip_valuation(c);
  UnitWork w{/*counting=*/true, max_depth};
  unit_recurse(std::move(c), 0, w);
  out.decided = !w.overflowed;
  out.count = w.count;
  return out;
}

VcaCount vca_count_real(const IntPoly& p, int max_depth) {
  VcaCount out;
  if (p.is_zero() || p.degree() == 0) {
    out.decided = !p.is_zero();
    return out;
  }
  std::vector<Integer> c = p.c;
  int zero_root = strip_valuation(c) > 0 ? 1 : 0;
  UnitWork wp{/*counting=*/true, max_depth};
  positive_side(c, wp);
  UnitWork wn{/*counting=*/true, max_depth};
  negate_odd(c);
  positive_side(std::move(c), wn);
  out.decided = !wp.overflowed && !wn.overflowed;
  out.count = wp.count + wn.count + zero_root;
  return out;
}

}  // namespace rzlab
