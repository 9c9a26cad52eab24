#include "equivoc/lp.hpp"

#include <cmath>

#include "equivoc/prob_core.hpp"

namespace equivoc {

bool lp_feasible(const DenseMatrix& A, const std::vector<double>& b, double tol,
                 std::vector<double>* solution) {
  require(A.data.size() == A.rows * A.cols && b.size() == A.rows, "LP dimensions do not match");
  const std::size_t m = A.rows, n = A.cols, width = n + m + 1;
  // Tableau over [x, artificials | rhs]; one artificial per row.
  std::vector<double> t(m * width, 0.0);
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    const double sign = b[r] < 0.0 ? -1.0 : 1.0;
    for (std::size_t c = 0; c < n; ++c) t[r * width + c] = sign * A(r, c);
    t[r * width + n + r] = 1.0;
    t[r * width + width - 1] = sign * b[r];
    basis[r] = n + r;
  }
  // Reduced costs of the phase-I objective (sum of artificials).
  std::vector<double> cost(width, 0.0);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < width; ++c)
      if (c < n || c == width - 1) cost[c] -= t[r * width + c];

  constexpr double kPivotTol = 1e-12;
  for (int iter = 0; iter < 10000; ++iter) {
    std::size_t enter = width;
    for (std::size_t c = 0; c + 1 < width; ++c)
      if (cost[c] < -kPivotTol) {
        enter = c;
        break;
      }
    if (enter == width) break;
    std::size_t leave = m;
    double best_ratio = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
      const double a = t[r * width + enter];
      if (a <= kPivotTol) continue;
      const double ratio = t[r * width + width - 1] / a;
      if (leave == m || ratio < best_ratio - 1e-15 ||
          (std::abs(ratio - best_ratio) <= 1e-15 && basis[r] < basis[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction cannot occur in phase I
    const double piv = t[leave * width + enter];
    for (std::size_t c = 0; c < width; ++c) t[leave * width + c] /= piv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == leave) continue;
      const double f = t[r * width + enter];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < width; ++c) t[r * width + c] -= f * t[leave * width + c];
    }
    const double f = cost[enter];
    for (std::size_t c = 0; c < width; ++c) cost[c] -= f * t[leave * width + c];
    basis[leave] = enter;
  }
  const bool feasible = -cost[width - 1] <= tol;
  if (solution) {
    solution->assign(n, 0.0);
    for (std::size_t r = 0; r < m; ++r)
      if (basis[r] < n) (*solution)[basis[r]] = t[r * width + width - 1];
  }
  return feasible;
}

}  // namespace equivoc
