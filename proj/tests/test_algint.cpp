#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rzlab/algint.hpp"
#include "rzlab/error.hpp"
#include "rzlab/rng.hpp"

using namespace rzlab;

namespace {

IntegerMonicPoly make(int n, std::vector<long> p) {
  IntegerMonicPoly out;
  out.n = n;
  for (long v : p) out.p.emplace_back(v);
  return out;
}

// independent cubic classifier: discriminant sign rule with the degenerate
// cases resolved by the triple-root shape test
int cubic_distinct_real_roots(long p1, long p2, long p3) {
  // x^3 + p1 x^2 + p2 x + p3
  Integer a(p1), b(p2), c(p3);
  Integer disc = 18 * a * b * c - 4 * a * a * a * c + a * a * b * b - 4 * b * b * b - 27 * c * c;
  if (sgn(disc) > 0) return 3;
  if (sgn(disc) < 0) return 1;
  // disc == 0: triple root iff (x + a/3)^3 expands to the polynomial
  if (a % 3 == 0) {
    Integer t = a / 3;
    if (b == 3 * t * t && c == t * t * t) return 1;
  }
  return 2;  // double + simple
}

}  // namespace

TEST_CASE("height of the normalized polynomial") {
  CHECK(height(make(3, {0, 0, -2})) == doctest::Approx(std::pow(2.0, 1.0 / 3.0)));
  CHECK(height(make(2, {3, 1})) == doctest::Approx(3.0));
  CHECK(height(make(4, {0, 0, 0, 0})) == doctest::Approx(0.0));
}

TEST_CASE("trace normalization lands in the canonical window") {
  // x^2 + 5x + 1 has trace -5; the translate needs trace in {0, 1}
  IntegerMonicPoly p = make(2, {5, 1});
  IntegerMonicPoly q = normalize_trace(p);
  Integer trace = -q.p[0];
  CHECK(trace >= 0);
  CHECK(trace < 2);
  // binomial-shift oracle: p(x - t) with t = ceil(5/2) = 3 is x^2 - x - 5
  CHECK(q.p[0] == -1);
  CHECK(q.p[1] == -5);

  IntegerMonicPoly cube = make(3, {0, 0, -2});  // trace 0 already canonical
  IntegerMonicPoly same = normalize_trace(cube);
  CHECK(same.p == cube.p);
}

TEST_CASE("trace normalization is idempotent") {
  TrialRng rng(42, 0);
  for (int t = 0; t < 100; ++t) {
    int n = 2 + static_cast<int>(rng.next_u64() % 4);
    IntegerMonicPoly p;
    p.n = n;
    for (int i = 0; i < n; ++i)
      p.p.emplace_back(static_cast<long>(rng.next_u64() % 41) - 20);
    IntegerMonicPoly q = normalize_trace(p);
    IntegerMonicPoly qq = normalize_trace(q);
    CHECK(q.p == qq.p);
    Integer trace = -q.p[0];
    CHECK(trace >= 0);
    CHECK(trace < n);
  }
}

TEST_CASE("real-embedding counts") {
  CHECK(count_real_embeddings(make(3, {0, 0, -2})) == 1);   // x^3 - 2
  CHECK(count_real_embeddings(make(2, {0, 1})) == 0);       // x^2 + 1
  CHECK(count_real_embeddings(make(3, {0, -3, 1})) == 3);   // x^3 - 3x + 1, disc 81
  CHECK(cubic_distinct_real_roots(0, -3, 1) == 3);
  CHECK_THROWS_AS(count_real_embeddings(make(2, {-2, 1})), Error);  // (x-1)^2
}

TEST_CASE("small-degree irreducibility") {
  CHECK(is_irreducible(make(3, {0, 0, -2})));       // x^3 - 2
  CHECK(!is_irreducible(make(2, {0, -1})));         // x^2 - 1
  CHECK(!is_irreducible(make(4, {0, 0, 0, 4})));    // x^4 + 4 = (x^2-2x+2)(x^2+2x+2)
  CHECK(is_irreducible(make(4, {0, 0, 0, 1})));     // x^4 + 1
  CHECK(is_irreducible(make(2, {1, 1})));           // x^2 + x + 1
  CHECK(!is_irreducible(make(4, {0, 2, 0, 1})));    // (x^2+1)^2
  CHECK_THROWS_AS(is_irreducible(make(5, {0, 0, 0, 0, 2})), Error);

  // quadratic-factor oracle: the two advertised factors really multiply back
  // to x^4 + 4
  // (x^2 - 2x + 2)(x^2 + 2x + 2) = x^4 + 4
  Integer a = -2, b = 2, c = 2, d = 2;
  CHECK(a + c == 0);
  CHECK(b + d + a * c == 0);
  CHECK(a * d + b * c == 0);
  CHECK(b * d == 4);
}

TEST_CASE("hand-enumerated census at n = 2, H = 1") {
  CensusRecord rec = enumerate_census(2, 1.0, true);
  CHECK(rec.total == 6);  // p1 in {-1, 0}, p2 in {-1, 0, 1}
  // x^2+1 and x^2-x+1 have no real roots; x^2 alone has one distinct;
  // x^2-1, x^2-x, x^2-x-1 have two
  CHECK(rec.by_j.at(0) == 2);
  CHECK(rec.by_j.at(1) == 1);
  CHECK(rec.by_j.at(2) == 3);
  uint64_t total = 0;
  for (const auto& [j, c] : rec.by_j) total += c;
  CHECK(total == rec.total);
  // irreducible entries: x^2+1, x^2-x+1 (j=0), x^2-x-1 (j=2)
  CHECK(rec.irreducible_by_j.at(0) == 2);
  CHECK(rec.irreducible_by_j.at(2) == 1);
}

TEST_CASE("cubic census against the discriminant rule") {
  CensusRecord rec = enumerate_census(3, 2.0, true);
  // brute-force oracle over the same box
  std::map<int, uint64_t> oracle;
  uint64_t total = 0;
  for (long p1 = -2; p1 <= 0; ++p1)
    for (long p2 = -4; p2 <= 4; ++p2)
      for (long p3 = -8; p3 <= 8; ++p3) {
        ++total;
        oracle[cubic_distinct_real_roots(p1, p2, p3)] += 1;
      }
  CHECK(rec.total == total);
  for (const auto& [j, cnt] : oracle) CHECK(rec.by_j.at(j) == cnt);
  // squarefree entries respect the parity j == n (mod 2)
  for (const auto& [j, cnt] : rec.squarefree_by_j) {
    CHECK((j - 3) % 2 == 0);
    CHECK(cnt > 0);
  }
}

TEST_CASE("census counts grow with the height bound") {
  CensusRecord small = enumerate_census(3, 1.0, false);
  CensusRecord big = enumerate_census(3, 2.0, false);
  for (const auto& [j, cnt] : small.by_j) {
    CHECK(big.by_j.count(j));
    CHECK(big.by_j.at(j) >= cnt);
  }
}

TEST_CASE("census respects the budget") {
  CHECK_THROWS_AS(enumerate_census(7, 2.0, false, 1 << 10), Error);
}

TEST_CASE("classification is invariant under pre-translation") {
  TrialRng rng(7, 0);
  for (int t = 0; t < 60; ++t) {
    int n = 2 + static_cast<int>(rng.next_u64() % 3);
    IntegerMonicPoly p;
    p.n = n;
    for (int i = 0; i < n; ++i)
      p.p.emplace_back(static_cast<long>(rng.next_u64() % 9) - 4);
    long shift = static_cast<long>(rng.next_u64() % 7) - 3;
    // exact translate p(x - shift) via repeated synthetic shifts
    std::vector<Integer> c(n + 1);
    c[n] = 1;
    for (int i = 1; i <= n; ++i) c[n - i] = p.p[i - 1];
    for (int i = 0; i < n; ++i)
      for (int j = n - 1; j >= i; --j) c[j] -= Integer(shift) * c[j + 1];
    IntegerMonicPoly tr;
    tr.n = n;
    tr.p.resize(n);
    for (int i = 1; i <= n; ++i) tr.p[i - 1] = c[n - i];
    // translates collapse to the same canonical representative
    CHECK(normalize_trace(p).p == normalize_trace(tr).p);
  }
}

TEST_CASE("one-real-embedding density decreases in the degree") {
  // qualitative trend at a fixed height scaling
  double prev = 2.0;
  for (int n : {3, 5, 7}) {
    CensusRecord rec = enumerate_census(n, 1.4, false);
    double frac = rec.density_by_j.count(1) ? rec.density_by_j.at(1) : 0.0;
    CHECK(frac < prev);
    prev = frac;
  }
}
