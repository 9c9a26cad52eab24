#pragma once

#include <cstddef>
#include <vector>

namespace equivoc {

/// Dense row-major matrix for small linear programs.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;
  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// Whether {x >= 0 : A x = b} is non-empty, by phase-I simplex with Bland's
/// rule. Feasible when the artificial objective ends below `tol`.
bool lp_feasible(const DenseMatrix& A, const std::vector<double>& b, double tol = 1e-9,
                 std::vector<double>* solution = nullptr);

}  // namespace equivoc
