#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "equivoc/prob_core.hpp"

namespace equivoc {

/// Lexicographic score: any feasible candidate beats any infeasible one.
/// Infeasible candidates carry minus their constraint violation as value so
/// the ascent can walk toward the feasible set; they are never reported.
struct Score {
  bool feasible = false;
  double value = -std::numeric_limits<double>::infinity();

  friend bool operator<(const Score& a, const Score& b) {
    if (a.feasible != b.feasible) return !a.feasible;
    return a.value < b.value;
  }
  bool better_than(const Score& other, double margin) const {
    if (feasible != other.feasible) return feasible;
    return value > other.value + margin;
  }
};

using ChannelObjective = std::function<Score(std::span<const Channel>)>;

struct SearchOptions {
  int multistart = 64;
  std::uint64_t seed = 20111;
  int max_sweeps = 60;
  int line_points = 9;
  int golden_iters = 24;
  double tol = 1e-6;
};

struct SearchResult {
  Score best;
  std::vector<Channel> channels;
  int best_start = -1;
  std::vector<double> start_values;  // best feasible value per start (-inf if none)
  long evaluations = 0;
};

/// Multi-start coordinate ascent over stochastic matrices. Each move
/// transfers mass between two entries of one row (a 1-d line search: grid
/// then golden section). `templ` fixes the channel shapes; channels flagged
/// in `frozen` keep their template value. Deterministic starts in `seeds`
/// run first, followed by `opts.multistart` random starts.
SearchResult multistart_ascent(const std::vector<Channel>& templ, const std::vector<bool>& frozen,
                               const std::vector<std::vector<Channel>>& seeds,
                               const ChannelObjective& objective, const SearchOptions& opts);

/// Single coordinate-ascent run from `start` (modified in place).
Score coordinate_ascent(std::vector<Channel>& start, const std::vector<bool>& frozen,
                        const ChannelObjective& objective, const SearchOptions& opts,
                        long* evaluations = nullptr);

/// Deterministic channel that maps input x to output x mod |out|.
Channel index_channel(std::size_t in, std::size_t out);

}  // namespace equivoc
