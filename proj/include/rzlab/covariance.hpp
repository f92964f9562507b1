#pragma once
#include <utility>
#include <vector>

#include "rzlab/ensemble.hpp"
#include "rzlab/rational.hpp"

namespace rzlab {

struct RatInterval {
  Rational lo, hi;
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

/// The four near-unit intervals used by the dominance checks:
///   inner_pos = [1 - n^-delta, 1 - n^-(1-delta)], outer_pos its reciprocal,
///   and their mirror images. Endpoints are dyadic rationals (rounded at
///   2^-48), so membership tests in the union V and the square union U are
///   exact interval arithmetic.
struct IntervalSystem {
  double delta = 0;
  int n = 0;
  RatInterval inner_pos, outer_pos, outer_neg, inner_neg;

  static IntervalSystem make(double delta, int n);

  const RatInterval& interval(int i) const;  // 1..4: inner_pos..inner_neg
  bool in_union(const Rational& x) const;    // x in V
  bool in_square_union(const Rational& x, const Rational& y) const;  // (x,y) in U
};

/// |xy - 1| / sqrt(|(x^2-1)(y^2-1)|); throws Err::PoleAtUnitCircle on |x|=1.
double dominance_kernel(double x, double y);

/// r(z) = sum over unfixed top slots i of z^{k+1-i}.
double unfixed_top_poly(const EnsembleSpec& spec, double z);
Rational unfixed_top_poly_exact(const EnsembleSpec& spec, const Rational& z);

/// Correlation of the normalized ensemble at x and y for all-zero fixed
/// values: T(xy) / sqrt(T(x^2) T(y^2)) with
/// T(z) = z^{n-k-1} r(z) + sum_{i=1}^{n-k} z^{n-k-i}. Exactly 1 on the
/// diagonal. The three T values are computed exactly and rounded once.
double normalized_covariance(const EnsembleSpec& spec, double x, double y);
long double normalized_covariance_at(const EnsembleSpec& spec, const Rational& x,
                                     const Rational& y);

/// Exact T(z) building block (shared by tests).
Rational covariance_term_exact(const EnsembleSpec& spec, const Rational& z);

enum class MeshRegion { FullV2, InnerPosSquare, OuterPosSquare };

struct DominanceReport {
  int mesh = 0;
  double alpha_n = 0;
  double max_violation = 0;
  std::pair<double, double> worst = {0, 0};
  double diagonal_max_error = 0;
  double least_alpha = -1;  // least feasible alpha on the mesh; -1 if not searched
  // grid evidence only: the inequality is evaluated at mesh points, nothing
  // is claimed off-mesh
};

struct MeshPoint {
  double x, y;
  double cov, kernel;
  bool in_u;
  double violation;
};

/// Evaluates covariance - [(1-alpha)/g * chi_U + alpha] over a mesh of the
/// requested region; positive max_violation means the bound failed somewhere.
/// Requires all fixed values zero and 1 not in S. When mesh_dump is given the
/// evaluated points are appended to it (for external plotting).
DominanceReport check_covariance_dominance(const EnsembleSpec& spec, const IntervalSystem& sys,
                                           double alpha_n, int mesh,
                                           MeshRegion region = MeshRegion::FullV2,
                                           bool search_least_alpha = false,
                                           std::vector<MeshPoint>* mesh_dump = nullptr);

/// Max of g(x,y) * covariance(x,y) over a mesh of outer_pos^2.
double max_kernel_covariance_product(const EnsembleSpec& spec, const IntervalSystem& sys,
                                     int mesh);

struct SupRatio {
  double value = 0;        // endpoint evaluation (the ratio increases in |x|)
  double closed_form = 0;  // geometric-series closed form at the endpoint
};

/// sup over |x| <= bound_x of |x|^{n-j} / sqrt(sum_{i=1}^{n-k} x^{2(n-k-i)}).
SupRatio top_slot_sup_ratio(const EnsembleSpec& spec, int j, double bound_x);

}  // namespace rzlab
