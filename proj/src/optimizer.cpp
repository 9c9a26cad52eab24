#include "equivoc/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace equivoc {

namespace {

constexpr double kInvPhi = 0.6180339887498949;
constexpr double kReportTol = 1e-7;

double xlogx_sum(std::span<const double> p) {
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log2(x);
  return h;
}

double nonneg(double x) { return x < 0.0 ? 0.0 : x; }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void check_grid(std::span<const double> grid, const char* what) {
  require(!grid.empty(), std::string(what) + " grid must be non-empty");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    require(std::isfinite(grid[k]), std::string(what) + " grid values must be finite");
    if (k > 0) require(grid[k] > grid[k - 1], std::string(what) + " grid must be strictly increasing");
  }
}

// Maximizes f over [lo, hi] by golden section to width `tol`; the endpoints
// are probed too. Returns the best visited (x, f(x)), starting from `best`.
template <class F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, double tol,
                                     std::pair<double, double> best) {
  auto visit = [&](double x) {
    const double v = f(x);
    if (v > best.second) best = {x, v};
    return v;
  };
  visit(lo);
  visit(hi);
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = visit(x1), f2 = visit(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = visit(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = visit(x1);
    }
  }
  return best;
}

}  // namespace

std::vector<RateConstraint> Sweep::expand() const {
  require(variable == "R_A" || variable == "R_C" || variable == "D",
          "sweep variable must be R_A, R_C or D");
  check_grid(values, variable.c_str());
  std::vector<RateConstraint> out;
  out.reserve(values.size());
  for (double x : values) {
    RateConstraint c = fixed;
    if (variable == "R_A") c.R_A = x;
    if (variable == "R_C") c.R_C = x;
    if (variable == "D") c.D = x;
    out.push_back(c);
  }
  return out;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  require(lo > 0.0 && hi > lo, "log grid needs 0 < lo < hi");
  require(count >= 2, "log grid needs at least 2 points");
  std::vector<double> g(count);
  const double a = std::log(lo), b = std::log(hi);
  for (int k = 0; k < count; ++k) g[k] = std::exp(a + (b - a) * k / (count - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

// ---- binary -----------------------------------------------------------------------

std::pair<double, double> binary_alpha_range(double eps, double D, double rate_cap) {
  require(D >= 0.0, "distortion must be non-negative");
  require(!(rate_cap < 0.0), "rate cap must be non-negative");
  const double hi = eps > 0.0 ? std::min(0.5, D / eps) : 0.5;
  double lo = 0.0;
  if (std::isfinite(rate_cap) && eps > 0.0) {
    const double need = 1.0 - rate_cap / eps;
    if (need > 0.0) lo = h2_inverse(std::min(1.0, need));
  }
  return {lo, hi};
}

BinaryOptimum binary_optimum(double p, double eps, double D, double rate_cap,
                             const BinarySearchOptions& opts) {
  require(opts.coarse_alpha >= 2 && opts.coarse_beta >= 2, "coarse resolutions must be >= 2");
  require(opts.tol > 0.0, "refinement tolerance must be positive");
  BinaryParams(p, eps, 0.0, 0.0);  // validates p and eps
  const auto [lo, hi] = binary_alpha_range(eps, D, rate_cap);
  BinaryOptimum best;
  if (lo > hi) return best;

  auto f = [&](double a, double b) { return binary_bec_bsc_point(BinaryParams(p, eps, a, b)).Delta_max; };
  const int na = hi > lo ? opts.coarse_alpha : 1;
  const int nb = opts.wyner_ziv ? 1 : opts.coarse_beta;
  double a_best = lo, b_best = 0.0, v_best = -kUnbounded;
  for (int i = 0; i < na; ++i) {
    const double a = na == 1 ? lo : (i == na - 1 ? hi : lo + (hi - lo) * i / (na - 1));
    for (int j = 0; j < nb; ++j) {
      const double b = nb == 1 ? 0.0 : 0.5 * j / (nb - 1);
      const double v = f(a, b);
      if (v > v_best) {
        v_best = v;
        a_best = a;
        b_best = b;
      }
    }
  }

  const double ha = na > 1 ? (hi - lo) / (na - 1) : 0.0;
  const double hb = nb > 1 ? 0.5 / (nb - 1) : 0.0;
  int rounds = 0;
  for (; rounds < opts.max_rounds; ++rounds) {
    const double a0 = a_best, b0 = b_best;
    if (ha > 0.0) {
      auto r = golden_max([&](double a) { return f(a, b_best); }, std::max(lo, a_best - ha),
                          std::min(hi, a_best + ha), opts.tol, {a_best, v_best});
      a_best = r.first;
      v_best = r.second;
    }
    if (hb > 0.0) {
      auto r = golden_max([&](double b) { return f(a_best, b); }, std::max(0.0, b_best - hb),
                          std::min(0.5, b_best + hb), opts.tol, {b_best, v_best});
      b_best = r.first;
      v_best = r.second;
    }
    if (std::abs(a_best - a0) <= opts.tol && std::abs(b_best - b0) <= opts.tol) {
      ++rounds;
      break;
    }
  }

  best.feasible = true;
  best.alpha = a_best;
  best.beta = b_best;
  best.bounds = binary_bec_bsc_point(BinaryParams(p, eps, a_best, b_best));
  best.rounds = rounds;
  if (best.bounds.D_min > D + kConstraintSlack ||
      (std::isfinite(rate_cap) && best.bounds.R_A_min > rate_cap + kConstraintSlack))
    throw std::logic_error("binary optimizer produced a point violating its constraints");
  return best;
}

std::vector<BinaryFrontierRow> binary_sweep(double p, double eps, std::span<const double> D_grid,
                                            double rate_cap, const BinarySearchOptions& opts) {
  check_grid(D_grid, "D");
  require(D_grid.front() >= 0.0 && D_grid.back() <= eps / 2.0 + 1e-12,
          "D grid must lie within [0, eps/2]");
  std::vector<BinaryFrontierRow> rows(D_grid.size());
  BinarySearchOptions wz = opts;
  wz.wyner_ziv = true;
  BinarySearchOptions full = opts;
  full.wyner_ziv = false;
  const long n = static_cast<long>(D_grid.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long k = 0; k < n; ++k) {
    BinaryFrontierRow& r = rows[k];
    r.D = D_grid[k];
    r.wyner_ziv = binary_optimum(p, eps, r.D, rate_cap, wz);
    r.optimal = binary_optimum(p, eps, r.D, rate_cap, full);
    // beta = 0 is inside the search space, so the WZ optimum is a candidate.
    if (r.wyner_ziv.feasible && r.wyner_ziv.bounds.Delta_max > r.optimal.bounds.Delta_max) {
      const int rounds = r.optimal.rounds;
      r.optimal = r.wyner_ziv;
      r.optimal.rounds = rounds;
    }
  }
  return rows;
}

FrontierResult binary_frontier(double p, double eps, std::span<const double> D_grid,
                               double rate_cap, const BinarySearchOptions& opts) {
  const auto rows = binary_sweep(p, eps, D_grid, rate_cap, opts);
  FrontierResult res;
  res.model = "binary_bec_bsc";
  res.sweep_variable = "D";
  res.provenance = {{"p", fmt(p)},
                    {"eps", fmt(eps)},
                    {"rate_cap", fmt(rate_cap)},
                    {"coarse_alpha", std::to_string(opts.coarse_alpha)},
                    {"coarse_beta", std::to_string(opts.coarse_beta)},
                    {"tol", fmt(opts.tol)}};
  for (const auto& r : rows) {
    FrontierPoint pt;
    pt.sweep = r.D;
    pt.constraint.D = r.D;
    pt.constraint.R_A = rate_cap;
    pt.feasible = r.optimal.feasible;
    res.trace.push_back(r.optimal.rounds);
    if (pt.feasible) {
      pt.point = {r.optimal.bounds.R_A_min, kUnbounded, r.optimal.bounds.D_min,
                  r.optimal.bounds.Delta_max};
      pt.params = {{"alpha", r.optimal.alpha},
                   {"beta", r.optimal.beta},
                   {"Delta_wz", r.wyner_ziv.bounds.Delta_max},
                   {"alpha_wz", r.wyner_ziv.alpha}};
    }
    res.points.push_back(std::move(pt));
  }
  return res;
}

double binary_merge_threshold(double p, double eps, std::span<const BinaryFrontierRow> rows,
                              double gap_tol, const BinarySearchOptions& opts) {
  require(!rows.empty(), "merge threshold needs at least one frontier row");
  auto gap_of = [](const BinaryFrontierRow& r) {
    return r.optimal.bounds.Delta_max - r.wyner_ziv.bounds.Delta_max;
  };
  long last_open = -1;
  for (std::size_t k = 0; k < rows.size(); ++k)
    if (rows[k].optimal.feasible && gap_of(rows[k]) > gap_tol) last_open = static_cast<long>(k);
  if (last_open < 0) return rows.front().D;
  if (last_open + 1 == static_cast<long>(rows.size())) return rows.back().D;

  BinarySearchOptions wz = opts, full = opts;
  wz.wyner_ziv = true;
  full.wyner_ziv = false;
  double lo = rows[last_open].D, hi = rows[last_open + 1].D;
  for (int it = 0; it < 50 && hi - lo > 1e-9; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double g = binary_optimum(p, eps, mid, kUnbounded, full).bounds.Delta_max -
                     binary_optimum(p, eps, mid, kUnbounded, wz).bounds.Delta_max;
    (g > gap_tol ? lo : hi) = mid;
  }
  return hi;
}

// ---- generic ----------------------------------------------------------------------

AlphabetCaps inner_caps(const JointSource& s) {
  return {s.na() + 5, (s.na() + 5) * (s.na() + 3), s.nc() + 3};
}

AlphabetCaps uncoded_caps(const JointSource& s) {
  return {s.na() + 2, (s.na() + 2) * (s.na() + 1), s.nc()};
}

InnerBounds fast_inner_bounds(const JointSource& s, const DistortionMeasure& d,
                              const Channel& u_given_v, const Channel& v_given_a,
                              const Channel& w_given_c, Reconstruction* rec_out) {
  const std::size_t na = s.na(), nc = s.nc(), ne = s.ne();
  const std::size_t nv = v_given_a.output_size(), nu = u_given_v.output_size(),
                    nw = w_given_c.output_size();
  require(v_given_a.input_size() == na && u_given_v.input_size() == nv &&
              w_given_c.input_size() == nc,
          "auxiliary channel shapes do not match the source");

  std::vector<double> pac(na * nc, 0.0), pae(na * ne, 0.0), pa(na, 0.0);
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t c = 0; c < nc; ++c)
      for (std::size_t e = 0; e < ne; ++e) {
        const double x = s(a, c, e);
        pac[a * nc + c] += x;
        pae[a * ne + e] += x;
        pa[a] += x;
      }

  // p(v,w,a,c) and its marginals.
  std::vector<double> vwac(nv * nw * na * nc), vwa(nv * nw * na, 0.0), vwc(nv * nw * nc, 0.0),
      vw(nv * nw, 0.0), wa(nw * na, 0.0), w(nw, 0.0), vc(nv * nc, 0.0), v(nv, 0.0), va(nv * na, 0.0);
  for (std::size_t iv = 0; iv < nv; ++iv)
    for (std::size_t ia = 0; ia < na; ++ia) {
      const double pva = v_given_a(ia, iv);
      for (std::size_t iw = 0; iw < nw; ++iw)
        for (std::size_t ic = 0; ic < nc; ++ic) {
          const double x = pva * pac[ia * nc + ic] * w_given_c(ic, iw);
          vwac[((iv * nw + iw) * na + ia) * nc + ic] = x;
          vwa[(iv * nw + iw) * na + ia] += x;
          vwc[(iv * nw + iw) * nc + ic] += x;
          vw[iv * nw + iw] += x;
          wa[iw * na + ia] += x;
          w[iw] += x;
          vc[iv * nc + ic] += x;
          v[iv] += x;
          va[iv * na + ia] += x;
        }
    }

  // p(u,w,a) and p(u,a,e) through the long Markov chain.
  std::vector<double> uwa(nu * nw * na, 0.0), uw(nu * nw, 0.0), ua(nu * na, 0.0), u(nu, 0.0),
      uae(nu * na * ne, 0.0), ue(nu * ne, 0.0);
  for (std::size_t iu = 0; iu < nu; ++iu)
    for (std::size_t iv = 0; iv < nv; ++iv) {
      const double q = u_given_v(iv, iu);
      if (q == 0.0) continue;
      for (std::size_t iw = 0; iw < nw; ++iw)
        for (std::size_t ia = 0; ia < na; ++ia) {
          const double x = q * vwa[(iv * nw + iw) * na + ia];
          uwa[(iu * nw + iw) * na + ia] += x;
          uw[iu * nw + iw] += x;
        }
      for (std::size_t ia = 0; ia < na; ++ia) {
        const double qa = q * v_given_a(ia, iv);
        ua[iu * na + ia] += qa * pa[ia];
        u[iu] += qa * pa[ia];
        for (std::size_t ie = 0; ie < ne; ++ie) {
          const double x = qa * pae[ia * ne + ie];
          uae[(iu * na + ia) * ne + ie] += x;
          ue[iu * ne + ie] += x;
        }
      }
    }

  const double H_vwac = xlogx_sum(vwac), H_vwa = xlogx_sum(vwa), H_vwc = xlogx_sum(vwc),
               H_vw = xlogx_sum(vw), H_wa = xlogx_sum(wa), H_w = xlogx_sum(w), H_vc = xlogx_sum(vc),
               H_v = xlogx_sum(v), H_va = xlogx_sum(va), H_ac = xlogx_sum(pac);
  const double H_uwa = xlogx_sum(uwa), H_uw = xlogx_sum(uw), H_ua = xlogx_sum(ua), H_u = xlogx_sum(u),
               H_uae = xlogx_sum(uae), H_ue = xlogx_sum(ue);

  // Distortion-optimal estimator, same rule as optimal_reconstruction.
  auto argmin_cost = [&](const double* weight) {
    std::size_t best = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    for (std::size_t ah = 0; ah < na; ++ah) {
      double cost = 0.0;
      for (std::size_t a = 0; a < na; ++a) cost += weight[a] * d(a, ah);
      if (cost < best_cost) {
        best_cost = cost;
        best = ah;
      }
    }
    return best;
  };
  const std::size_t fallback = argmin_cost(pa.data());
  std::vector<std::size_t> map(nv * nw);
  double dist = 0.0;
  for (std::size_t k = 0; k < nv * nw; ++k) {
    const double* cell = vwa.data() + k * na;
    double mass = 0.0;
    for (std::size_t a = 0; a < na; ++a) mass += cell[a];
    map[k] = mass > 0.0 ? argmin_cost(cell) : fallback;
    for (std::size_t a = 0; a < na; ++a) dist += cell[a] * d(a, map[k]);
  }

  InnerBounds b;
  b.R_A_min = nonneg(H_vw + H_wa - H_vwa - H_w);
  b.R_C_min = nonneg(H_vw + H_vc - H_vwc - H_v);
  b.sum_min = nonneg(H_vw + H_ac - H_vwac);
  b.D_min = dist;
  const double eve_gain = nonneg(H_ua + H_ue - H_uae - H_u);
  const double w_gain = nonneg(H_ua + H_uw - H_uwa - H_u);
  b.Delta_max = nonneg(H_vwa - H_vw) + w_gain - eve_gain;
  b.Delta_minus_Rc_max = nonneg(H_va - H_v) - eve_gain - b.R_C_min;
  if (rec_out) *rec_out = Reconstruction(nv, nw, std::move(map));
  return b;
}

Score inner_score(const InnerBounds& b, const RateConstraint& c) {
  const double violation = nonneg(b.R_A_min - c.R_A) + nonneg(b.R_C_min - c.R_C) +
                           nonneg(b.sum_min - (c.R_A + c.R_C)) + nonneg(b.D_min - c.D);
  if (violation <= kConstraintSlack)
    return {true, std::min(b.Delta_max, b.Delta_minus_Rc_max + c.R_C)};
  return {false, -violation};
}

RegionPoint inner_report_point(const InnerBounds& b, const RateConstraint& c) {
  RegionPoint pt;
  pt.Delta = std::min(b.Delta_max, b.Delta_minus_Rc_max + c.R_C);
  pt.D = b.D_min;
  if (std::isfinite(c.R_C)) {
    pt.R_C = c.R_C;
  } else {
    pt.R_C = std::max(b.R_C_min, pt.Delta - b.Delta_minus_Rc_max);
    if (std::isfinite(c.R_A)) pt.R_C = std::max(pt.R_C, b.sum_min - c.R_A);
  }
  pt.R_A = std::isfinite(c.R_A) ? c.R_A : std::max(b.R_A_min, b.sum_min - pt.R_C);
  return pt;
}

namespace {

void check_caps(const JointSource& s, const AlphabetCaps& caps, bool allow_override) {
  require(caps.u >= 1 && caps.v >= 1 && caps.w >= 1, "auxiliary alphabet sizes must be >= 1");
  if (allow_override) return;
  const AlphabetCaps lim = inner_caps(s);
  require(caps.u <= lim.u && caps.v <= lim.v && caps.w <= lim.w,
          "auxiliary alphabet sizes exceed the cardinality bounds (|U| <= " + std::to_string(lim.u) +
              ", |V| <= " + std::to_string(lim.v) + ", |W| <= " + std::to_string(lim.w) + ")");
}

void check_close(const InnerBounds& fast, const InnerBounds& ref) {
  const double diffs[] = {fast.R_A_min - ref.R_A_min, fast.R_C_min - ref.R_C_min,
                          fast.sum_min - ref.sum_min, fast.D_min - ref.D_min,
                          fast.Delta_max - ref.Delta_max,
                          fast.Delta_minus_Rc_max - ref.Delta_minus_Rc_max};
  for (double x : diffs)
    if (std::abs(x) > kReportTol)
      throw std::logic_error("optimizer result failed re-validation against the region evaluator");
}

// Rescores every argmax system under every constraint so a looser
// constraint never reports less than a tighter one.
template <class Value, class Apply>
void cross_seed(std::size_t n, Value&& value_at, Apply&& try_system) {
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j)
      if (j != k) try_system(k, j, value_at);
}

}  // namespace

InnerOptimum inner_optimum(const JointSource& s, const DistortionMeasure& d,
                           const AlphabetCaps& caps_in, const RateConstraint& constraint,
                           const InnerSearchOptions& opts) {
  require(d.alphabet_size() == s.na(), "distortion alphabet must match |A|");
  AlphabetCaps caps = caps_in;
  if (opts.fixed_w) {
    require(opts.fixed_w->input_size() == s.nc(), "fixed p(w|c) input must match |C|");
    caps.w = opts.fixed_w->output_size();
  }
  check_caps(s, caps, opts.allow_cap_override || opts.fixed_w.has_value());

  const std::size_t na = s.na(), nc = s.nc();
  const Channel w_fixed = opts.fixed_w ? *opts.fixed_w : Channel::constant(nc, caps.w);
  const std::vector<Channel> templ = {Channel::constant(caps.v, caps.u), Channel::constant(na, caps.v),
                                      w_fixed};
  const std::vector<bool> frozen = {false, false, opts.fixed_w.has_value()};

  std::vector<std::vector<Channel>> seeds;
  for (int vi = 0; vi < 2; ++vi)
    for (int ui = 0; ui < 2; ++ui)
      for (int wi = 0; wi < (opts.fixed_w ? 1 : 2); ++wi) {
        Channel vch = vi ? index_channel(na, caps.v) : Channel::constant(na, caps.v);
        Channel uch = ui ? index_channel(caps.v, caps.u) : Channel::constant(caps.v, caps.u);
        Channel wch = opts.fixed_w ? *opts.fixed_w
                                   : (wi ? index_channel(nc, caps.w) : Channel::constant(nc, caps.w));
        seeds.push_back({std::move(uch), std::move(vch), std::move(wch)});
      }

  const ChannelObjective objective = [&](std::span<const Channel> ch) {
    return inner_score(fast_inner_bounds(s, d, ch[0], ch[1], ch[2]), constraint);
  };
  InnerOptimum out;
  out.search = multistart_ascent(templ, frozen, seeds, objective, opts.search);
  const auto& ch = out.search.channels;
  Reconstruction rec;
  const InnerBounds fast = fast_inner_bounds(s, d, ch[0], ch[1], ch[2], &rec);
  out.system = {ch[0], ch[1], ch[2], std::move(rec)};
  out.bounds = inner_bound_point(s, d, out.system);
  check_close(fast, out.bounds);
  out.feasible = out.search.best.feasible && inner_score(out.bounds, constraint).feasible;
  if (out.feasible) {
    out.point = inner_report_point(out.bounds, constraint);
    if (!out.bounds.admits(out.point, kReportTol))
      throw std::logic_error("reported inner point is not admitted by its own system");
  }
  return out;
}

FrontierResult generic_inner_frontier(const JointSource& s, const DistortionMeasure& d,
                                      const AlphabetCaps& caps, const Sweep& sweep,
                                      const InnerSearchOptions& opts) {
  const auto constraints = sweep.expand();
  std::vector<InnerOptimum> best;
  best.reserve(constraints.size());
  FrontierResult res;
  for (const auto& c : constraints) {
    best.push_back(inner_optimum(s, d, caps, c, opts));
    for (double v : best.back().search.start_values) res.trace.push_back(v);
  }
  auto value = [&](std::size_t k) {
    return best[k].feasible ? inner_score(best[k].bounds, constraints[k]).value : -kUnbounded;
  };
  cross_seed(constraints.size(), value, [&](std::size_t k, std::size_t j, auto&& val) {
    if (!best[j].feasible) return;
    const Score sc = inner_score(best[j].bounds, constraints[k]);
    if (sc.feasible && sc.value > val(k)) {
      best[k].system = best[j].system;
      best[k].bounds = best[j].bounds;
      best[k].feasible = true;
      best[k].point = inner_report_point(best[k].bounds, constraints[k]);
    }
  });

  res.model = "generic_discrete";
  res.sweep_variable = sweep.variable;
  res.provenance = {{"caps", std::to_string(caps.u) + "," + std::to_string(caps.v) + "," +
                                 std::to_string(opts.fixed_w ? opts.fixed_w->output_size() : caps.w)},
                    {"multistart", std::to_string(opts.search.multistart)},
                    {"seed", std::to_string(opts.search.seed)},
                    {"max_sweeps", std::to_string(opts.search.max_sweeps)},
                    {"tol", fmt(opts.search.tol)}};
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    FrontierPoint pt;
    pt.sweep = sweep.values[k];
    pt.constraint = constraints[k];
    pt.feasible = best[k].feasible;
    if (pt.feasible) {
      pt.point = best[k].point;
      pt.system = best[k].system;
    }
    res.points.push_back(std::move(pt));
  }
  return res;
}

// ---- lossless -----------------------------------------------------------------------

std::size_t lossless_u_cap(const JointSource& s) { return s.na() + 2; }

namespace {

Score lossless_score(const LosslessBounds& b, const RateConstraint& c) {
  const double violation = nonneg(b.R_C_min - c.R_C) + nonneg(b.R_A_min - c.R_A) +
                           nonneg(b.sum_min - (c.R_A + c.R_C));
  if (violation <= kConstraintSlack) return {true, b.Delta_max};
  return {false, -violation};
}

RegionPoint lossless_report_point(const LosslessBounds& b, const RateConstraint& c) {
  RegionPoint pt;
  pt.D = 0.0;
  pt.Delta = b.Delta_max;
  if (std::isfinite(c.R_C)) {
    pt.R_C = c.R_C;
    pt.R_A = std::isfinite(c.R_A) ? c.R_A : std::max(b.R_A_min, b.sum_min - pt.R_C);
  } else {
    pt.R_A = std::isfinite(c.R_A) ? c.R_A : b.R_A_min;
    pt.R_C = std::max(b.R_C_min, b.sum_min - pt.R_A);
  }
  return pt;
}

}  // namespace

LosslessOptimum lossless_optimum(const JointSource& s, const RateConstraint& constraint,
                                 std::size_t u_size, const SearchOptions& opts) {
  require(u_size >= 1, "|U| must be >= 1");
  const std::size_t na = s.na();
  const std::vector<Channel> templ = {Channel::constant(na, u_size)};
  const std::vector<std::vector<Channel>> seeds = {{Channel::constant(na, u_size)},
                                                   {index_channel(na, u_size)}};
  const ChannelObjective objective = [&](std::span<const Channel> ch) {
    return lossless_score(lossless_region_point(s, ch[0]), constraint);
  };
  LosslessOptimum out;
  out.search = multistart_ascent(templ, {false}, seeds, objective, opts);
  out.u_given_a = out.search.channels[0];
  out.bounds = lossless_region_point(s, out.u_given_a);
  out.feasible = lossless_score(out.bounds, constraint).feasible;
  if (out.feasible) out.point = lossless_report_point(out.bounds, constraint);
  return out;
}

FrontierResult lossless_frontier(const JointSource& s, const Sweep& sweep, std::size_t u_size,
                                 const SearchOptions& opts) {
  require(sweep.variable == "R_A" || sweep.variable == "R_C",
          "lossless sweep variable must be R_A or R_C");
  const auto constraints = sweep.expand();
  FrontierResult res;
  std::vector<LosslessOptimum> best;
  for (const auto& c : constraints) {
    best.push_back(lossless_optimum(s, c, u_size, opts));
    for (double v : best.back().search.start_values) res.trace.push_back(v);
  }
  auto value = [&](std::size_t k) { return best[k].feasible ? best[k].bounds.Delta_max : -kUnbounded; };
  cross_seed(constraints.size(), value, [&](std::size_t k, std::size_t j, auto&& val) {
    if (!best[j].feasible) return;
    const Score sc = lossless_score(best[j].bounds, constraints[k]);
    if (sc.feasible && sc.value > val(k)) {
      best[k].u_given_a = best[j].u_given_a;
      best[k].bounds = best[j].bounds;
      best[k].feasible = true;
      best[k].point = lossless_report_point(best[k].bounds, constraints[k]);
    }
  });

  res.model = "lossless";
  res.sweep_variable = sweep.variable;
  res.provenance = {{"u_size", std::to_string(u_size)},
                    {"multistart", std::to_string(opts.multistart)},
                    {"seed", std::to_string(opts.seed)}};
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    FrontierPoint pt;
    pt.sweep = sweep.values[k];
    pt.constraint = constraints[k];
    pt.feasible = best[k].feasible;
    if (pt.feasible) {
      pt.point = best[k].point;
      pt.u_given_a = best[k].u_given_a;
    }
    res.points.push_back(std::move(pt));
  }
  return res;
}

// ---- gaussian -----------------------------------------------------------------------

FrontierResult gaussian_frontier(const GaussianParams& params, const Sweep& sweep) {
  require(sweep.variable == "D" || sweep.variable == "R_C", "gaussian sweep variable must be D or R_C");
  check_grid(sweep.values, sweep.variable.c_str());
  FrontierResult res;
  res.model = "gaussian";
  res.sweep_variable = sweep.variable;
  res.provenance = {{"rho_C", fmt(params.rho_C)}, {"rho_E", fmt(params.rho_E)}};
  for (double x : sweep.values) {
    const double R_C = sweep.variable == "R_C" ? x : sweep.fixed.R_C;
    const double D = sweep.variable == "D" ? x : sweep.fixed.D;
    require(std::isfinite(D), "gaussian sweep needs a finite distortion");
    const GaussianBounds g = gaussian_inner(params, R_C, D);
    FrontierPoint pt;
    pt.sweep = x;
    pt.constraint = {kUnbounded, R_C, D};
    pt.feasible = true;
    pt.point = {g.R_A_min, R_C, D, g.Delta_max};
    pt.params = {{"exact_region", params.rho_E == 0.0 ? 1.0 : 0.0}};
    res.points.push_back(std::move(pt));
  }
  return res;
}

// ---- specs --------------------------------------------------------------------------

void validate(const FrontierSpec& spec) {
  check_grid(spec.sweep.values, spec.sweep.variable.c_str());
  require(spec.binary.coarse_alpha >= 2 && spec.binary.coarse_beta >= 2,
          "grid resolutions must be >= 2");
  require(spec.binary.max_rounds >= 1, "refinement iteration count must be >= 1");
  require(spec.inner.search.multistart >= 0 && spec.inner.search.max_sweeps >= 1,
          "search iteration counts must be positive");
  require(spec.inner.search.line_points >= 2, "line-search resolution must be >= 2");
}

FrontierResult run_frontier(const FrontierSpec& spec) {
  validate(spec);
  switch (spec.model) {
    case FrontierSpec::Model::binary_bec_bsc:
      require(spec.sweep.variable == "D", "binary frontier sweeps D");
      return binary_frontier(spec.p, spec.eps, spec.sweep.values, spec.sweep.fixed.R_A, spec.binary);
    case FrontierSpec::Model::generic_discrete:
      return generic_inner_frontier(spec.source, spec.distortion,
                                    spec.caps.value_or(inner_caps(spec.source)), spec.sweep, spec.inner);
    case FrontierSpec::Model::lossless:
      return lossless_frontier(spec.source, spec.sweep,
                               spec.caps ? spec.caps->u : lossless_u_cap(spec.source),
                               spec.inner.search);
    case FrontierSpec::Model::gaussian:
      return gaussian_frontier(GaussianParams(spec.rho_C, spec.rho_E), spec.sweep);
  }
  throw ValidationError("unknown frontier model");
}

}  // namespace equivoc
