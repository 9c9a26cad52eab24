#include "equivoc/search.hpp"

#include <algorithm>
#include <cmath>

#include "equivoc/rng.hpp"

namespace equivoc {

namespace {

constexpr std::uint64_t kRandomStartDomain = 0x5eed5747;
constexpr double kInvPhi = 0.6180339887498949;

struct LineBest {
  double t;
  Score score;
};

}  // namespace

Channel index_channel(std::size_t in, std::size_t out) {
  std::vector<double> rows(in * out, 0.0);
  for (std::size_t x = 0; x < in; ++x) rows[x * out + x % out] = 1.0;
  return Channel(in, out, std::move(rows));
}

Score coordinate_ascent(std::vector<Channel>& ch, const std::vector<bool>& frozen,
                        const ChannelObjective& objective, const SearchOptions& opts,
                        long* evaluations) {
  long count = 0;
  auto eval = [&] {
    ++count;
    return objective(ch);
  };
  Score current = eval();
  const int grid = std::max(opts.line_points, 3);

  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    const Score at_sweep_start = current;
    for (std::size_t k = 0; k < ch.size(); ++k) {
      if (k < frozen.size() && frozen[k]) continue;
      const std::size_t out = ch[k].output_size();
      if (out < 2) continue;
      for (std::size_t x = 0; x < ch[k].input_size(); ++x) {
        for (std::size_t i = 0; i + 1 < out; ++i) {
          for (std::size_t j = i + 1; j < out; ++j) {
            auto row = ch[k].mutable_row(x);
            const double mass = row[i] + row[j];
            if (mass <= 0.0) continue;
            auto place = [&](double t) {
              row[i] = t;
              row[j] = mass - t;
            };
            LineBest best{row[i], current};
            auto probe = [&](double t) {
              place(t);
              const Score s = eval();
              if (s.better_than(best.score, 0.0)) best = {t, s};
              return s;
            };
            const double h = mass / (grid - 1);
            for (int g = 0; g < grid; ++g) probe(g == grid - 1 ? mass : h * g);

            double lo = std::max(0.0, best.t - h);
            double hi = std::min(mass, best.t + h);
            double x1 = hi - kInvPhi * (hi - lo);
            double x2 = lo + kInvPhi * (hi - lo);
            Score f1 = probe(x1);
            Score f2 = probe(x2);
            for (int it = 0; it < opts.golden_iters; ++it) {
              if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + kInvPhi * (hi - lo);
                f2 = probe(x2);
              } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - kInvPhi * (hi - lo);
                f1 = probe(x1);
              }
            }
            place(best.t);
            current = best.score;
          }
        }
      }
    }
    if (!current.better_than(at_sweep_start, opts.tol) &&
        current.feasible == at_sweep_start.feasible)
      break;
  }
  if (evaluations) *evaluations += count;
  return current;
}

SearchResult multistart_ascent(const std::vector<Channel>& templ, const std::vector<bool>& frozen,
                               const std::vector<std::vector<Channel>>& seeds,
                               const ChannelObjective& objective, const SearchOptions& opts) {
  require(opts.multistart >= 0, "multistart count must be non-negative");
  const int n_seeds = static_cast<int>(seeds.size());
  const int total = n_seeds + opts.multistart;
  require(total > 0, "search needs at least one start");

  std::vector<std::vector<Channel>> finals(total);
  std::vector<Score> scores(total);
  std::vector<long> evals(total, 0);

#pragma omp parallel for schedule(dynamic, 1)
  for (int s = 0; s < total; ++s) {
    std::vector<Channel> ch;
    if (s < n_seeds) {
      ch = seeds[s];
    } else {
      ch = templ;
      auto gen = make_stream(opts.seed, kRandomStartDomain, static_cast<std::uint64_t>(s - n_seeds));
      for (std::size_t k = 0; k < ch.size(); ++k) {
        if (k < frozen.size() && frozen[k]) continue;
        for (std::size_t x = 0; x < ch[k].input_size(); ++x) sample_simplex_row(gen, ch[k].mutable_row(x));
      }
    }
    scores[s] = coordinate_ascent(ch, frozen, objective, opts, &evals[s]);
    finals[s] = std::move(ch);
  }

  SearchResult res;
  res.start_values.resize(total);
  for (int s = 0; s < total; ++s) {
    res.start_values[s] = scores[s].feasible ? scores[s].value : -std::numeric_limits<double>::infinity();
    res.evaluations += evals[s];
    if (res.best_start < 0 || res.best < scores[s]) {
      res.best = scores[s];
      res.best_start = s;
    }
  }
  res.channels = finals[res.best_start];
  return res;
}

}  // namespace equivoc
