#include <array>
#include <cmath>

#include "equivoc/lp.hpp"
#include "equivoc/optimizer.hpp"

namespace equivoc {

namespace {

// Coordinates to be minimized.
std::array<double, 4> oriented(const RegionPoint& p) { return {p.R_A, p.R_C, p.D, -p.Delta}; }

bool dominated(std::span<const RegionPoint> others, const RegionPoint& x, double tol) {
  const auto xc = oriented(x);
  std::vector<std::size_t> usable;
  for (std::size_t j = 0; j < others.size(); ++j) {
    const auto yc = oriented(others[j]);
    bool ok = true;
    for (int i = 0; i < 4; ++i)
      if (std::isinf(yc[i]) && yc[i] > 0 && !std::isinf(xc[i])) ok = false;
    if (ok) usable.push_back(j);
  }
  if (usable.empty()) return false;
  std::vector<int> rows;
  for (int i = 0; i < 4; ++i)
    if (!std::isinf(xc[i])) rows.push_back(i);
  const std::size_t n = usable.size(), m = rows.size() + 1;
  DenseMatrix A{m, n + rows.size(), std::vector<double>(m * (n + rows.size()), 0.0)};
  std::vector<double> b(m, 0.0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t j = 0; j < n; ++j) A(r, j) = oriented(others[usable[j]])[rows[r]];
    A(r, n + r) = 1.0;  // slack
    b[r] = xc[rows[r]] + tol;
  }
  for (std::size_t j = 0; j < n; ++j) A(m - 1, j) = 1.0;
  b[m - 1] = 1.0;
  return lp_feasible(A, b, 1e-10);
}

}  // namespace

bool dominated_by_hull(std::span<const RegionPoint> hull, const RegionPoint& x, double tol) {
  return dominated(hull, x, tol);
}

std::vector<RegionPoint> convexify(std::span<const RegionPoint> points) {
  require(!points.empty(), "convexify needs at least one point");
  std::vector<RegionPoint> kept;
  for (const auto& p : points) {
    bool dup = false;
    for (const auto& q : kept) dup = dup || oriented(p) == oriented(q);
    if (!dup) kept.push_back(p);
  }
  for (std::size_t i = 0; i < kept.size();) {
    std::vector<RegionPoint> others;
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (j != i) others.push_back(kept[j]);
    if (dominated(others, kept[i], 0.0))
      kept.erase(kept.begin() + static_cast<long>(i));
    else
      ++i;
  }
  return kept;
}

}  // namespace equivoc
