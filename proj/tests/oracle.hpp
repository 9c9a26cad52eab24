#pragma once

// Independent reference computations for the tests. Everything here works by
// direct summation over explicit tables and shares no code with the library.

#include <cmath>
#include <cstddef>
#include <map>
#include <random>
#include <vector>

#include "equivoc/prob_core.hpp"
#include "equivoc/regions.hpp"

namespace oracle {

/// Dense table with explicit per-axis sizes, last axis fastest.
struct Table {
  std::vector<std::size_t> dims;
  std::vector<double> p;

  std::vector<std::size_t> unflatten(std::size_t flat) const {
    std::vector<std::size_t> idx(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
      idx[k] = flat % dims[k];
      flat /= dims[k];
    }
    return idx;
  }
};

using Key = std::vector<std::size_t>;

inline std::map<Key, double> marginal(const Table& t, const std::vector<std::size_t>& axes) {
  std::map<Key, double> m;
  for (std::size_t f = 0; f < t.p.size(); ++f) {
    if (t.p[f] == 0.0) continue;
    const auto idx = t.unflatten(f);
    Key k;
    for (auto a : axes) k.push_back(idx[a]);
    m[k] += t.p[f];
  }
  return m;
}

inline Key project(const Key& full, const std::vector<std::size_t>& axes) {
  Key k;
  for (auto a : axes) k.push_back(full[a]);
  return k;
}

inline std::vector<std::size_t> concat(std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// H(X|Z) = -sum p(x,z) log2 p(x,z)/p(z).
inline double cond_entropy(const Table& t, const std::vector<std::size_t>& x,
                           const std::vector<std::size_t>& z = {}) {
  const auto xz_axes = concat(x, z);
  const auto pxz = marginal(t, xz_axes);
  const auto pz = marginal(t, z);
  std::vector<std::size_t> zpos;
  for (std::size_t k = 0; k < z.size(); ++k) zpos.push_back(x.size() + k);
  double h = 0.0;
  for (const auto& [k, v] : pxz) h -= v * std::log2(v / pz.at(project(k, zpos)));
  return h;
}

/// I(X;Y|Z) = sum p(x,y,z) log2 [p(x,y,z) p(z) / (p(x,z) p(y,z))].
inline double cond_mi(const Table& t, const std::vector<std::size_t>& x, const std::vector<std::size_t>& y,
                      const std::vector<std::size_t>& z = {}) {
  const auto all = concat(concat(x, y), z);
  const auto pxyz = marginal(t, all);
  const auto pxz = marginal(t, concat(x, z));
  const auto pyz = marginal(t, concat(y, z));
  const auto pz = marginal(t, z);
  std::vector<std::size_t> xpos, ypos, zpos;
  for (std::size_t k = 0; k < x.size(); ++k) xpos.push_back(k);
  for (std::size_t k = 0; k < y.size(); ++k) ypos.push_back(x.size() + k);
  for (std::size_t k = 0; k < z.size(); ++k) zpos.push_back(x.size() + y.size() + k);
  double i = 0.0;
  for (const auto& [k, v] : pxyz) {
    const Key kz = project(k, zpos);
    const double num = v * pz.at(kz);
    const double den = pxz.at(concat(project(k, xpos), kz)) * pyz.at(concat(project(k, ypos), kz));
    i += v * std::log2(num / den);
  }
  return i;
}

inline Table from_pmf(const equivoc::Pmf& pmf) {
  return {pmf.dims(), {pmf.probs().begin(), pmf.probs().end()}};
}

// Axes of the six-variable table built by full_joint.
enum Axis : std::size_t { U = 0, V = 1, W = 2, A = 3, C = 4, E = 5 };

/// p(u,v,w,a,c,e) = p(u|v) p(v|a) p(w|c) p(a,c,e), by nested loops.
inline Table full_joint(const equivoc::JointSource& s, const equivoc::Channel& uv, const equivoc::Channel& va,
                        const equivoc::Channel& wc) {
  Table t;
  t.dims = {uv.output_size(), va.output_size(), wc.output_size(), s.na(), s.nc(), s.ne()};
  t.p.assign(t.dims[0] * t.dims[1] * t.dims[2] * s.na() * s.nc() * s.ne(), 0.0);
  std::size_t f = 0;
  for (std::size_t u = 0; u < t.dims[0]; ++u)
    for (std::size_t v = 0; v < t.dims[1]; ++v)
      for (std::size_t w = 0; w < t.dims[2]; ++w)
        for (std::size_t a = 0; a < s.na(); ++a)
          for (std::size_t c = 0; c < s.nc(); ++c)
            for (std::size_t e = 0; e < s.ne(); ++e) t.p[f++] = uv(v, u) * va(a, v) * wc(c, w) * s(a, c, e);
  return t;
}

/// Six-variable joint where W depends on (U, V, C).
inline Table outer_joint(const equivoc::JointSource& s, const equivoc::Channel& uv, const equivoc::Channel& va,
                         const equivoc::Channel& w_uvc) {
  Table t;
  const std::size_t nu = uv.output_size(), nv = va.output_size(), nw = w_uvc.output_size();
  t.dims = {nu, nv, nw, s.na(), s.nc(), s.ne()};
  t.p.assign(nu * nv * nw * s.na() * s.nc() * s.ne(), 0.0);
  std::size_t f = 0;
  for (std::size_t u = 0; u < nu; ++u)
    for (std::size_t v = 0; v < nv; ++v)
      for (std::size_t w = 0; w < nw; ++w)
        for (std::size_t a = 0; a < s.na(); ++a)
          for (std::size_t c = 0; c < s.nc(); ++c)
            for (std::size_t e = 0; e < s.ne(); ++e)
              t.p[f++] = uv(v, u) * va(a, v) * w_uvc((u * nv + v) * s.nc() + c, w) * s(a, c, e);
  return t;
}

struct SixTerms {
  double R_A_min, R_C_min, sum_min, D_min, Delta_max, Delta_minus_Rc_max;
};

inline SixTerms six_terms(const Table& t, const equivoc::DistortionMeasure& d, const equivoc::Reconstruction& rec) {
  SixTerms r{};
  r.R_A_min = cond_mi(t, {V}, {A}, {W});
  r.R_C_min = cond_mi(t, {W}, {C}, {V});
  r.sum_min = cond_mi(t, {V, W}, {A, C});
  double dist = 0.0;
  for (std::size_t f = 0; f < t.p.size(); ++f) {
    const auto idx = t.unflatten(f);
    dist += t.p[f] * d(idx[A], rec(idx[V], idx[W]));
  }
  r.D_min = dist;
  const double eve = cond_mi(t, {A}, {E}, {U});
  r.Delta_max = cond_entropy(t, {A}, {V, W}) + cond_mi(t, {A}, {W}, {U}) - eve;
  r.Delta_minus_Rc_max = cond_entropy(t, {A}, {V}) - eve - r.R_C_min;
  return r;
}

/// Random row-stochastic matrix with entries drawn uniformly then normalized,
/// occasionally with an exact zero to exercise zero-mass cells.
inline equivoc::Channel random_channel(std::mt19937_64& g, std::size_t in, std::size_t out, bool zeros = true) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> rows(in * out);
  for (std::size_t x = 0; x < in; ++x) {
    double total = 0.0;
    for (std::size_t y = 0; y < out; ++y) {
      double v = u(g);
      if (zeros && out > 1 && u(g) < 0.1) v = 0.0;
      rows[x * out + y] = v;
      total += v;
    }
    if (total == 0.0) {
      rows[x * out] = 1.0;
      total = 1.0;
    }
    for (std::size_t y = 0; y < out; ++y) rows[x * out + y] /= total;
  }
  return equivoc::Channel(in, out, rows);
}

inline std::vector<double> random_dist(std::mt19937_64& g, std::size_t n) {
  std::uniform_real_distribution<double> u(0.01, 1.0);
  std::vector<double> p(n);
  double total = 0.0;
  for (auto& x : p) total += (x = u(g));
  for (auto& x : p) x /= total;
  return p;
}

inline equivoc::JointSource random_source(std::mt19937_64& g, std::size_t na, std::size_t nc, std::size_t ne) {
  auto p = random_dist(g, na * nc * ne);
  return equivoc::JointSource(na, nc, ne, p);
}

inline equivoc::Reconstruction random_reconstruction(std::mt19937_64& g, std::size_t nv, std::size_t nw,
                                                     std::size_t na) {
  std::uniform_int_distribution<std::size_t> pick(0, na - 1);
  std::vector<std::size_t> map(nv * nw);
  for (auto& m : map) m = pick(g);
  return equivoc::Reconstruction(nv, nw, map);
}

inline equivoc::AuxiliarySystem random_system(std::mt19937_64& g, const equivoc::JointSource& s, std::size_t nu,
                                              std::size_t nv, std::size_t nw) {
  equivoc::AuxiliarySystem sys;
  sys.v_given_a = random_channel(g, s.na(), nv);
  sys.u_given_v = random_channel(g, nv, nu);
  sys.w_given_c = random_channel(g, s.nc(), nw);
  sys.reconstruction = random_reconstruction(g, nv, nw, s.na());
  return sys;
}

/// Binary entropy by the two-term sum.
inline double h2(double x) {
  double h = 0.0;
  if (x > 0.0) h -= x * std::log2(x);
  if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
  return h;
}

}  // namespace oracle
