#include "equivoc/typicality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "equivoc/prob_core.hpp"

namespace equivoc {

namespace {

// Integer counts N with |N - target| <= n delta, clipped to [0, cap].
std::pair<long, long> count_window(double target, int n, double delta, long cap) {
  if (target <= 0.0) return {0, 0};
  const long lo = std::max(0L, static_cast<long>(std::ceil(target - n * (delta + 1e-12))));
  const long hi = std::min(cap, static_cast<long>(std::floor(target + n * (delta + 1e-12))));
  return {lo, hi};
}

bool windows_admit(std::span<const std::pair<long, long>> windows, long total) {
  long lo = 0, hi = 0;
  for (const auto& [a, b] : windows) {
    if (a > b) return false;
    lo += a;
    hi += b;
  }
  return lo <= total && total <= hi;
}

}  // namespace

double counts_deviation(std::span<const int> counts, std::span<const double> p, int n) {
  const double inv = 1.0 / n;
  double worst = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] <= 0.0) {
      if (counts[x] != 0) return std::numeric_limits<double>::infinity();
      continue;
    }
    worst = std::max(worst, std::abs(counts[x] * inv - p[x]));
  }
  return worst;
}

bool counts_typical(std::span<const int> counts, std::span<const double> p, int n, double delta) {
  return counts_deviation(counts, p, n) <= delta + 1e-12;
}

bool is_typical(std::span<const Symbol> seq, std::span<const double> p, double delta) {
  require(!seq.empty(), "typicality needs a non-empty sequence");
  std::vector<int> counts(p.size(), 0);
  for (Symbol s : seq) {
    require(s < p.size(), "sequence symbol out of alphabet");
    ++counts[s];
  }
  return counts_typical(counts, p, static_cast<int>(seq.size()), delta);
}

bool is_jointly_typical(std::span<const std::span<const Symbol>> seqs,
                        std::span<const std::size_t> sizes, std::span<const double> joint,
                        double delta) {
  require(!seqs.empty() && seqs.size() == sizes.size(), "joint typicality arity mismatch");
  const std::size_t n = seqs.front().size();
  for (const auto& s : seqs) require(s.size() == n, "joint typicality needs equal lengths");
  std::vector<int> counts(joint.size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < seqs.size(); ++k) {
      require(seqs[k][i] < sizes[k], "sequence symbol out of alphabet");
      idx = idx * sizes[k] + seqs[k][i];
    }
    ++counts[idx];
  }
  return counts_typical(counts, joint, static_cast<int>(n), delta);
}

double conditional_counts_deviation(std::span<const int> xy_counts, std::span<const int> x_counts,
                                    std::span<const double> y_given_x, std::size_t ny, int n) {
  const double inv = 1.0 / n;
  double worst = 0.0;
  for (std::size_t a = 0; a < x_counts.size(); ++a)
    for (std::size_t b = 0; b < ny; ++b) {
      const double q = y_given_x[a * ny + b];
      const int c = xy_counts[a * ny + b];
      if (q <= 0.0) {
        if (c != 0) return std::numeric_limits<double>::infinity();
        continue;
      }
      worst = std::max(worst, std::abs(c * inv - x_counts[a] * inv * q));
    }
  return worst;
}

bool conditional_counts_typical(std::span<const int> xy_counts, std::span<const int> x_counts,
                                std::span<const double> y_given_x, std::size_t ny, int n, double delta) {
  return conditional_counts_deviation(xy_counts, x_counts, y_given_x, ny, n) <= delta + 1e-12;
}

bool is_conditionally_typical(std::span<const Symbol> x, std::span<const Symbol> y,
                              std::span<const double> y_given_x, std::size_t ny, double delta) {
  require(x.size() == y.size() && !x.empty(), "conditional typicality needs equal lengths");
  const std::size_t nx = y_given_x.size() / ny;
  std::vector<int> nxy(nx * ny, 0), nxs(nx, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(x[i] < nx && y[i] < ny, "sequence symbol out of alphabet");
    ++nxy[x[i] * ny + y[i]];
    ++nxs[x[i]];
  }
  return conditional_counts_typical(nxy, nxs, y_given_x, ny, static_cast<int>(x.size()), delta);
}

bool typical_set_nonempty(std::span<const double> p, int n, double delta) {
  std::vector<std::pair<long, long>> w;
  for (double q : p) w.push_back(count_window(q * n, n, delta, n));
  return windows_admit(w, n);
}

bool conditional_typical_set_nonempty(std::span<const int> x_counts, std::span<const double> y_given_x,
                                      std::size_t ny, int n, double delta) {
  for (std::size_t a = 0; a < x_counts.size(); ++a) {
    std::vector<std::pair<long, long>> w;
    for (std::size_t b = 0; b < ny; ++b)
      w.push_back(count_window(x_counts[a] * y_given_x[a * ny + b], n, delta, x_counts[a]));
    if (!windows_admit(w, x_counts[a])) return false;
  }
  return true;
}

}  // namespace equivoc
