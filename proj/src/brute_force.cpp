#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <tuple>

#include "equivoc/optimizer.hpp"

namespace equivoc {

namespace {

int grid_denominator(double step) {
  require(step > 0.0 && step <= 1.0, "grid step must lie in (0, 1]");
  const double m = std::round(1.0 / step);
  require(std::abs(m * step - 1.0) < 1e-9, "grid step must divide 1");
  return static_cast<int>(m);
}

double xlogx_sum(const double* p, std::size_t n) {
  double h = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    if (p[k] > 0.0) h -= p[k] * std::log2(p[k]);
  return h;
}

// A channel family on the grid: flat in x out matrices.
struct ChannelList {
  std::size_t in = 0, out = 0;
  std::vector<double> data;
  std::size_t count() const { return data.size() / (in * out); }
  const double* at(std::size_t k) const { return data.data() + k * in * out; }
  Channel channel(std::size_t k) const {
    return Channel(in, out, std::vector<double>(at(k), at(k) + in * out));
  }
};

// Output relabelings leave every region term unchanged. Keeping only matrices
// whose columns are in non-increasing lexicographic order picks one
// representative per orbit.
bool canonical_columns(const double* m, std::size_t in, std::size_t out) {
  for (std::size_t j = 0; j + 1 < out; ++j) {
    for (std::size_t x = 0; x < in; ++x) {
      const double a = m[x * out + j], b = m[x * out + j + 1];
      if (a > b) break;
      if (a < b) return false;
    }
  }
  return true;
}

ChannelList enumerate_channels(std::size_t in, std::size_t out, int m, bool canonical_only) {
  const auto rows = simplex_grid(out, m);
  ChannelList list{in, out, {}};
  std::vector<std::size_t> idx(in, 0);
  std::vector<double> mat(in * out);
  while (true) {
    for (std::size_t x = 0; x < in; ++x) std::copy(rows[idx[x]].begin(), rows[idx[x]].end(), mat.begin() + x * out);
    if (!canonical_only || canonical_columns(mat.data(), in, out))
      list.data.insert(list.data.end(), mat.begin(), mat.end());
    std::size_t k = in;
    while (k > 0) {
      --k;
      if (++idx[k] < rows.size()) break;
      idx[k] = 0;
      if (k == 0) return list;
    }
    if (in == 0) return list;
  }
}

ChannelList single(const Channel& ch) {
  return {ch.input_size(), ch.output_size(), std::vector<double>(ch.data().begin(), ch.data().end())};
}

struct Candidate {
  double value = -kUnbounded;
  std::size_t v = 0, w = 0, u = 0;
  bool found = false;

  // Larger value wins; ties go to the lowest (v, w, u).
  bool beats(const Candidate& o) const {
    if (!found) return false;
    if (!o.found) return true;
    if (value != o.value) return value > o.value;
    return std::tie(v, w, u) < std::tie(o.v, o.w, o.u);
  }
};

BruteForceOptimum finish(const JointSource& s, const DistortionMeasure& d, const RateConstraint& c,
                         const Channel& u, const Channel& v, const Channel& w) {
  BruteForceOptimum out;
  Reconstruction rec;
  fast_inner_bounds(s, d, u, v, w, &rec);
  out.system = {u, v, w, rec};
  const InnerBounds b = inner_bound_point(s, d, out.system);
  const Score sc = inner_score(b, c);
  if (!sc.feasible) throw std::logic_error("brute-force optimum failed re-validation");
  out.feasible = true;
  out.value = sc.value;
  out.point = inner_report_point(b, c);
  return out;
}

void check_budget(double size, double budget) {
  if (size > budget) {
    std::ostringstream os;
    os << "brute-force grid has " << size << " channel combinations, above the budget of " << budget;
    throw BudgetError(os.str());
  }
}

}  // namespace

std::vector<std::vector<double>> simplex_grid(std::size_t k, int m) {
  require(k >= 1 && m >= 1, "simplex grid needs k >= 1 and m >= 1");
  std::vector<std::vector<double>> out;
  std::vector<int> parts(k, 0);
  auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
    if (pos + 1 == k) {
      parts[pos] = left;
      std::vector<double> row(k);
      for (std::size_t j = 0; j < k; ++j) row[j] = static_cast<double>(parts[j]) / m;
      out.push_back(std::move(row));
      return;
    }
    for (int x = 0; x <= left; ++x) {
      parts[pos] = x;
      self(self, pos + 1, left - x);
    }
  };
  rec(rec, 0, m);
  return out;
}

double brute_force_size(const JointSource& s, const AlphabetCaps& caps, const BruteForceOptions& opts) {
  const int m = grid_denominator(opts.step);
  auto rows = [&](std::size_t k) {
    // C(m + k - 1, k - 1)
    double r = 1.0;
    for (std::size_t j = 1; j < k; ++j) r = r * static_cast<double>(m + j) / static_cast<double>(j);
    return std::round(r);
  };
  double total = std::pow(rows(caps.u), static_cast<double>(caps.v)) *
                 std::pow(rows(caps.v), static_cast<double>(s.na()));
  if (!opts.fixed_w) total *= std::pow(rows(caps.w), static_cast<double>(s.nc()));
  return total;
}

std::vector<BruteForceOptimum> brute_force_search(const JointSource& s, const DistortionMeasure& d,
                                                  const AlphabetCaps& caps_in,
                                                  std::span<const RateConstraint> constraints,
                                                  const BruteForceOptions& opts) {
  require(!constraints.empty(), "brute force needs at least one constraint");
  require(d.alphabet_size() == s.na(), "distortion alphabet must match |A|");
  AlphabetCaps caps = caps_in;
  if (opts.fixed_w) {
    require(opts.fixed_w->input_size() == s.nc(), "fixed p(w|c) input must match |C|");
    caps.w = opts.fixed_w->output_size();
  }
  require(caps.u >= 1 && caps.v >= 1 && caps.w >= 1, "auxiliary alphabet sizes must be >= 1");
  check_budget(brute_force_size(s, caps, opts), opts.budget);
  const int m = grid_denominator(opts.step);

  const std::size_t na = s.na(), nc = s.nc(), ne = s.ne();
  const std::size_t nu = caps.u, nv = caps.v, nw = caps.w;
  const ChannelList U = enumerate_channels(nv, nu, m, true);
  const ChannelList V = enumerate_channels(na, nv, m, true);
  const ChannelList W = opts.fixed_w ? single(*opts.fixed_w) : enumerate_channels(nc, nw, m, true);
  const std::size_t K = constraints.size();

  std::vector<double> pa(na, 0.0), pac(na * nc, 0.0), pae(na * ne, 0.0), pe(ne, 0.0);
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t c = 0; c < nc; ++c)
      for (std::size_t e = 0; e < ne; ++e) {
        const double x = s(a, c, e);
        pa[a] += x;
        pac[a * nc + c] += x;
        pae[a * ne + e] += x;
        pe[e] += x;
      }
  const double H_a = xlogx_sum(pa.data(), na), H_e = xlogx_sum(pe.data(), ne),
               H_ac = xlogx_sum(pac.data(), na * nc);
  const double I_ae = std::max(0.0, H_a + H_e - xlogx_sum(pae.data(), na * ne));
  std::size_t fallback = 0;
  {
    double best = kUnbounded;
    for (std::size_t ah = 0; ah < na; ++ah) {
      double cost = 0.0;
      for (std::size_t a = 0; a < na; ++a) cost += pa[a] * d(a, ah);
      if (cost < best) {
        best = cost;
        fallback = ah;
      }
    }
  }

  std::vector<Candidate> global(K);
  const long nV = static_cast<long>(V.count());

#pragma omp parallel
  {
    std::vector<Candidate> local(K);
    std::vector<double> pvac(nv * na * nc), pv(nv), pva(nv * na), pvc(nv * nc), pve(nv * ne);
    std::vector<double> iue(U.count()), hu(U.count());
    std::vector<std::size_t> order(U.count());
    std::vector<double> vwa(nv * nw * na), vwc(nv * nw * nc), vw(nv * nw), wa(nw * na), w(nw),
        uw(nu * nw), tmp(nu * ne), tmpu(nu);
    std::vector<double> Kk(K), rc(K);
    std::vector<char> active(K);

#pragma omp for schedule(dynamic, 4)
    for (long vi = 0; vi < nV; ++vi) {
      const double* qv = V.at(vi);  // p(v|a), na x nv
      std::fill(pv.begin(), pv.end(), 0.0);
      std::fill(pva.begin(), pva.end(), 0.0);
      std::fill(pvc.begin(), pvc.end(), 0.0);
      std::fill(pve.begin(), pve.end(), 0.0);
      for (std::size_t v = 0; v < nv; ++v)
        for (std::size_t a = 0; a < na; ++a) {
          const double q = qv[a * nv + v];
          pva[v * na + a] = q * pa[a];
          pv[v] += q * pa[a];
          for (std::size_t c = 0; c < nc; ++c) {
            pvac[(v * na + a) * nc + c] = q * pac[a * nc + c];
            pvc[v * nc + c] += q * pac[a * nc + c];
          }
          for (std::size_t e = 0; e < ne; ++e) pve[v * ne + e] += q * pae[a * ne + e];
        }
      const double H_v = xlogx_sum(pv.data(), nv), H_va = xlogx_sum(pva.data(), nv * na),
                   H_vc = xlogx_sum(pvc.data(), nv * nc);
      const double H_a_given_v = std::max(0.0, H_va - H_v);

      // I(U;E) for every U under this V, visited in decreasing order.
      for (std::size_t ui = 0; ui < U.count(); ++ui) {
        const double* qu = U.at(ui);  // p(u|v), nv x nu
        std::fill(tmp.begin(), tmp.end(), 0.0);
        std::fill(tmpu.begin(), tmpu.end(), 0.0);
        for (std::size_t v = 0; v < nv; ++v)
          for (std::size_t u = 0; u < nu; ++u) {
            const double q = qu[v * nu + u];
            if (q == 0.0) continue;
            tmpu[u] += q * pv[v];
            for (std::size_t e = 0; e < ne; ++e) tmp[u * ne + e] += q * pve[v * ne + e];
          }
        hu[ui] = xlogx_sum(tmpu.data(), nu);
        iue[ui] = std::max(0.0, hu[ui] + H_e - xlogx_sum(tmp.data(), nu * ne));
      }
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t x, std::size_t y) { return iue[x] > iue[y]; });
      const double iue_max = order.empty() ? 0.0 : iue[order.front()];

      for (std::size_t wi = 0; wi < W.count(); ++wi) {
        const double* qw = W.at(wi);  // p(w|c), nc x nw
        std::fill(vwa.begin(), vwa.end(), 0.0);
        std::fill(vwc.begin(), vwc.end(), 0.0);
        std::fill(vw.begin(), vw.end(), 0.0);
        std::fill(wa.begin(), wa.end(), 0.0);
        std::fill(w.begin(), w.end(), 0.0);
        double H_vwac = 0.0;
        for (std::size_t v = 0; v < nv; ++v)
          for (std::size_t a = 0; a < na; ++a)
            for (std::size_t c = 0; c < nc; ++c) {
              const double base = pvac[(v * na + a) * nc + c];
              if (base == 0.0) continue;
              for (std::size_t x = 0; x < nw; ++x) {
                const double p = base * qw[c * nw + x];
                if (p <= 0.0) continue;
                H_vwac -= p * std::log2(p);
                vwa[(v * nw + x) * na + a] += p;
                vwc[(v * nw + x) * nc + c] += p;
                vw[v * nw + x] += p;
                wa[x * na + a] += p;
                w[x] += p;
              }
            }
        const double H_vwa = xlogx_sum(vwa.data(), vwa.size()), H_vwc = xlogx_sum(vwc.data(), vwc.size()),
                     H_vw = xlogx_sum(vw.data(), vw.size()), H_wa = xlogx_sum(wa.data(), wa.size()),
                     H_w = xlogx_sum(w.data(), nw);
        const double R_A_min = std::max(0.0, H_vw + H_wa - H_vwa - H_w);
        const double R_C_min = std::max(0.0, H_vw + H_vc - H_vwc - H_v);
        const double sum_min = std::max(0.0, H_vw + H_ac - H_vwac);
        const double H_a_given_vw = std::max(0.0, H_vwa - H_vw);
        const double I_aw = std::max(0.0, H_a + H_w - H_wa);
        double dist = 0.0;
        for (std::size_t k = 0; k < nv * nw; ++k) {
          const double* cell = vwa.data() + k * na;
          double mass = 0.0;
          for (std::size_t a = 0; a < na; ++a) mass += cell[a];
          std::size_t best = fallback;
          if (mass > 0.0) {
            double best_cost = kUnbounded;
            for (std::size_t ah = 0; ah < na; ++ah) {
              double cost = 0.0;
              for (std::size_t a = 0; a < na; ++a) cost += cell[a] * d(a, ah);
              if (cost < best_cost) {
                best_cost = cost;
                best = ah;
              }
            }
          }
          for (std::size_t a = 0; a < na; ++a) dist += cell[a] * d(a, best);
        }

        const double delta_base = H_a_given_vw + I_aw - I_ae;         // + I(U;E) - I(U;W)
        const double rc_base = H_a_given_v - I_ae - R_C_min;           // + I(U;E) + R_C
        bool any = false;
        for (std::size_t k = 0; k < K; ++k) {
          const RateConstraint& c = constraints[k];
          const InnerBounds b{R_A_min, R_C_min, sum_min, dist, 0.0, 0.0};
          rc[k] = c.R_C;
          active[k] = inner_score(b, c).feasible;
          Kk[k] = std::min(delta_base, rc_base + c.R_C);
          if (active[k] && local[k].found && Kk[k] + iue_max + 1e-12 < local[k].value) active[k] = 0;
          any = any || active[k];
        }
        if (!any) continue;

        for (std::size_t pos = 0; pos < order.size(); ++pos) {
          const std::size_t ui = order[pos];
          const double ie = iue[ui];
          bool live = false;
          for (std::size_t k = 0; k < K; ++k) {
            if (!active[k]) continue;
            if (local[k].found && Kk[k] + ie + 1e-12 < local[k].value)
              active[k] = 0;
            else
              live = true;
          }
          if (!live) break;
          const double* qu = U.at(ui);
          std::fill(uw.begin(), uw.end(), 0.0);
          for (std::size_t v = 0; v < nv; ++v)
            for (std::size_t u = 0; u < nu; ++u) {
              const double q = qu[v * nu + u];
              if (q == 0.0) continue;
              for (std::size_t x = 0; x < nw; ++x) uw[u * nw + x] += q * vw[v * nw + x];
            }
          const double I_uw = std::max(0.0, hu[ui] + H_w - xlogx_sum(uw.data(), nu * nw));
          const double dmax = delta_base - I_uw + ie;
          for (std::size_t k = 0; k < K; ++k) {
            if (!active[k]) continue;
            Candidate cand{std::min(dmax, rc_base + ie + rc[k]), static_cast<std::size_t>(vi), wi, ui, true};
            if (cand.beats(local[k])) local[k] = cand;
          }
        }
      }
    }

#pragma omp critical
    for (std::size_t k = 0; k < K; ++k)
      if (local[k].beats(global[k])) global[k] = local[k];
  }

  std::vector<BruteForceOptimum> out(K);
  for (std::size_t k = 0; k < K; ++k)
    if (global[k].found)
      out[k] = finish(s, d, constraints[k], U.channel(global[k].u), V.channel(global[k].v),
                      W.channel(global[k].w));
  return out;
}

std::vector<BruteForceOptimum> brute_force_search_reference(
    const JointSource& s, const DistortionMeasure& d, const AlphabetCaps& caps_in,
    std::span<const RateConstraint> constraints, const BruteForceOptions& opts) {
  require(!constraints.empty(), "brute force needs at least one constraint");
  AlphabetCaps caps = caps_in;
  if (opts.fixed_w) caps.w = opts.fixed_w->output_size();
  check_budget(brute_force_size(s, caps, opts), opts.budget);
  const int m = grid_denominator(opts.step);
  const ChannelList U = enumerate_channels(caps.v, caps.u, m, false);
  const ChannelList V = enumerate_channels(s.na(), caps.v, m, false);
  const ChannelList W = opts.fixed_w ? single(*opts.fixed_w) : enumerate_channels(s.nc(), caps.w, m, false);

  std::vector<BruteForceOptimum> best(constraints.size());
  for (std::size_t vi = 0; vi < V.count(); ++vi) {
    const Channel v = V.channel(vi);
    for (std::size_t wi = 0; wi < W.count(); ++wi) {
      const Channel w = W.channel(wi);
      for (std::size_t ui = 0; ui < U.count(); ++ui) {
        const Channel u = U.channel(ui);
        const FullJoint joint = compose_full_joint(s, u, v, w);
        AuxiliarySystem sys{u, v, w, optimal_reconstruction(joint, d)};
        const InnerBounds b = bounds_from_joint(joint, d, sys.reconstruction);
        for (std::size_t k = 0; k < constraints.size(); ++k) {
          const Score sc = inner_score(b, constraints[k]);
          if (sc.feasible && (!best[k].feasible || sc.value > best[k].value)) {
            best[k].feasible = true;
            best[k].value = sc.value;
            best[k].system = sys;
            best[k].point = inner_report_point(b, constraints[k]);
          }
        }
      }
    }
  }
  return best;
}

FrontierResult brute_force_oracle(const JointSource& s, const DistortionMeasure& d,
                                  const AlphabetCaps& caps, const Sweep& sweep,
                                  const BruteForceOptions& opts) {
  const auto constraints = sweep.expand();
  const auto best = brute_force_search(s, d, caps, constraints, opts);
  FrontierResult res;
  res.model = "brute_force";
  res.sweep_variable = sweep.variable;
  std::ostringstream step;
  step << opts.step;
  res.provenance = {{"step", step.str()},
                    {"caps", std::to_string(caps.u) + "," + std::to_string(caps.v) + "," +
                                 std::to_string(opts.fixed_w ? opts.fixed_w->output_size() : caps.w)}};
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

}  // namespace equivoc
