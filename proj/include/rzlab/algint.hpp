#pragma once
#include <cstdint>
#include <map>
#include <vector>

#include "rzlab/polynomial.hpp"
#include "rzlab/rational.hpp"

namespace rzlab {

/// Monic integer polynomial x^n + p_1 x^{n-1} + ... + p_n.
struct IntegerMonicPoly {
  int n = 0;
  std::vector<Integer> p;  // p[0] = p_1 ... p[n-1] = p_n

  Polynomial to_polynomial() const;  // ascending representation
};

/// max over i of |p_i|^{1/i}.
double height(const IntegerMonicPoly& p);

/// The unique integer translate x -> x - t whose trace (-p_1 of the
/// translate) lies in {0, ..., n-1}. Idempotent.
IntegerMonicPoly normalize_trace(const IntegerMonicPoly& p);

/// Number of distinct real roots (exact); the real-embedding count of the
/// algebraic integers the polynomial defines. Throws Err::NotSquarefree.
int count_real_embeddings(const IntegerMonicPoly& p);

/// Exact irreducibility over Q for n <= 4 (integer-root test plus bounded
/// quadratic-factor search). Throws Err::DegreeUnsupported for n > 4.
bool is_irreducible(const IntegerMonicPoly& p);

struct CensusRecord {
  int n = 0;
  double height_bound = 0;
  uint64_t total = 0;
  std::map<int, uint64_t> by_j;               // distinct-real-root classes
  std::map<int, uint64_t> squarefree_by_j;    // same classes, squarefree entries
  std::map<int, uint64_t> irreducible_by_j;   // filled when requested (n <= 4)
  uint64_t squarefree_total = 0;
  std::map<int, double> density_by_j;
  double reducible_fraction_lower_estimate = -1;  // sampled, n > 4 only
  // optional full classified listing ("p_1 ... p_n", j), small boxes only
  std::vector<std::pair<std::string, int>> listing;
};

/// Exact census over the closed height box |p_i| <= H^i with the trace
/// normalized into {0, ..., n-1} (p_1 in {-(n-1), ..., 0} intersected with
/// the box). Every polynomial is classified by its distinct real roots.
/// Throws Err::BudgetExceeded when the box has more than budget points.
CensusRecord enumerate_census(int n, double H, bool irreducible_only,
                              uint64_t budget = uint64_t(1) << 24,
                              bool with_listing = false);

}  // namespace rzlab
