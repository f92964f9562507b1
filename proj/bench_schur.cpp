// Scratch benchmark: companion-matrix eigenvalues and GMP subresultant cost
// at the degrees the estimators run at. Not part of the build.
#include <Eigen/Dense>
#include <gmpxx.h>
#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

using Clock = std::chrono::steady_clock;

static double bench_schur(int deg, int reps) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> g(0, 1);
  double acc = 0;
  auto t0 = Clock::now();
  for (int r = 0; r < reps; ++r) {
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(deg, deg);
    std::vector<double> coef(deg + 1);
    for (int i = 0; i < deg; ++i) coef[i] = g(rng);
    coef[deg] = 1.0;
    for (int i = 0; i < deg; ++i) C(i, deg - 1) = -coef[i];
    for (int i = 1; i < deg; ++i) C(i, i - 1) = 1.0;
    Eigen::RealSchur<Eigen::MatrixXd> schur;
    schur.computeFromHessenberg(C, Eigen::MatrixXd::Identity(deg, deg), false);
    acc += schur.matrixT()(0, 0);
  }
  auto t1 = Clock::now();
  (void)acc;
  return std::chrono::duration<double>(t1 - t0).count() / reps;
}

static double bench_prs(int deg, int reps) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g(0, 1);
  auto t0 = Clock::now();
  for (int r = 0; r < reps; ++r) {
    // integer coefficients ~ double mantissas scaled by 2^60
    std::vector<mpz_class> a(deg + 1), b(deg);
    for (int i = 0; i <= deg; ++i) {
      mpq_class q(g(rng));
      q *= mpz_class(1) << 60;
      a[i] = q.get_num() / q.get_den();
    }
    for (int i = 1; i <= deg; ++i) b[i - 1] = a[i] * i;
    // Brown subresultant PRS
    std::vector<mpz_class> A = a, B = b;
    mpz_class gg = 1, h = 1;
    while (true) {
      int da = (int)A.size() - 1, db = (int)B.size() - 1;
      if (db < 0) break;
      int delta = da - db;
      // pseudo remainder rem(lc(B)^{delta+1} A, B)
      mpz_class lb = B[db];
      std::vector<mpz_class> R = A;
      mpz_class lbp = 1;
      for (int k = 0; k <= delta; ++k) lbp *= lb;
      for (auto& c : R) c *= lbp;
      for (int k = da; k >= db; --k) {
        if (R[k] == 0) continue;
        mpz_class q = R[k] / lb;
        for (int j = 0; j <= db; ++j) R[k - db + j] -= q * B[j];
      }
      int dr = db - 1;
      while (dr >= 0 && R[dr] == 0) --dr;
      if (dr < 0) break;
      R.resize(dr + 1);
      mpz_class divisor = gg;
      for (int k = 0; k < delta; ++k) divisor *= h;
      for (auto& c : R) c /= divisor;
      A.swap(B);
      B.swap(R);
      gg = A[A.size() - 1];
      if (delta >= 1) {
        mpz_class hn = 1;
        for (int k = 0; k < delta; ++k) hn *= gg;
        for (int k = 0; k < delta - 1; ++k) hn /= h;
        h = hn;
      }
    }
  }
  auto t1 = Clock::now();
  return std::chrono::duration<double>(t1 - t0).count() / reps;
}

int main() {
  for (int deg : {32, 64, 128, 256})
    printf("schur deg %3d : %8.2f ms\n", deg, 1e3 * bench_schur(deg, deg >= 128 ? 5 : 20));
  for (int deg : {50, 64, 128, 199, 256, 284})
    printf("prs   deg %3d : %8.2f ms\n", deg, 1e3 * bench_prs(deg, deg >= 199 ? 2 : 5));
  return 0;
}
