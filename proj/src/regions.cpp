#include "equivoc/regions.hpp"

#include <cmath>
#include <limits>

namespace equivoc {

namespace {
using FJ = FullJoint;

void check_system(const JointSource& source, const AuxiliarySystem& sys) {
  require(sys.v_given_a.input_size() == source.na(), "p(v|a) input must match |A|");
  require(sys.u_given_v.input_size() == sys.v_given_a.output_size(),
          "p(u|v) input must match |V|");
  require(sys.w_given_c.input_size() == source.nc(), "p(w|c) input must match |C|");
  require(sys.reconstruction.v_size() == sys.v_given_a.output_size() &&
              sys.reconstruction.w_size() == sys.w_given_c.output_size(),
          "reconstruction map must be defined on V x W");
}

void check_reconstruction(const Reconstruction& rec, const DistortionMeasure& d) {
  for (auto s : rec.table()) require(s < d.alphabet_size(), "reconstruction symbol outside A");
}
}  // namespace

Reconstruction::Reconstruction(std::size_t v_size, std::size_t w_size, std::vector<std::size_t> map)
    : nv_(v_size), nw_(w_size), map_(std::move(map)) {
  require(nv_ > 0 && nw_ > 0, "reconstruction domain must be non-empty");
  require(map_.size() == nv_ * nw_, "reconstruction table must be |V| x |W|");
}

Reconstruction Reconstruction::erasure_fill(std::size_t erasure_symbol) {
  std::vector<std::size_t> map(2 * 3);
  for (std::size_t v = 0; v < 2; ++v)
    for (std::size_t c = 0; c < 3; ++c) map[v * 3 + c] = (c == erasure_symbol) ? v : c;
  return Reconstruction(2, 3, std::move(map));
}

Reconstruction Reconstruction::constant(std::size_t v_size, std::size_t w_size, std::size_t symbol) {
  return Reconstruction(v_size, w_size, std::vector<std::size_t>(v_size * w_size, symbol));
}

bool InnerBounds::admits(const RegionPoint& pt, double tol) const {
  return pt.R_A >= R_A_min - tol && pt.R_C >= R_C_min - tol && pt.R_A + pt.R_C >= sum_min - tol &&
         pt.D >= D_min - tol && pt.Delta <= Delta_max + tol &&
         pt.Delta - pt.R_C <= Delta_minus_Rc_max + tol;
}

double expected_distortion(const FullJoint& joint, const DistortionMeasure& d,
                           const Reconstruction& rec) {
  const std::size_t nv = joint.size_of(FJ::V), nw = joint.size_of(FJ::W), na = joint.size_of(FJ::A);
  require(rec.v_size() == nv && rec.w_size() == nw, "reconstruction map must be defined on V x W");
  require(d.alphabet_size() == na, "distortion alphabet must match |A|");
  check_reconstruction(rec, d);
  const Pmf vwa = joint.table().marginal(FJ::V | FJ::W | FJ::A);
  double total = 0.0;
  for (std::size_t v = 0; v < nv; ++v)
    for (std::size_t w = 0; w < nw; ++w)
      for (std::size_t a = 0; a < na; ++a) total += vwa[(v * nw + w) * na + a] * d(a, rec(v, w));
  return total;
}

Reconstruction optimal_reconstruction(const FullJoint& joint, const DistortionMeasure& d) {
  const std::size_t nv = joint.size_of(FJ::V), nw = joint.size_of(FJ::W), na = joint.size_of(FJ::A);
  require(d.alphabet_size() == na, "distortion alphabet must match |A|");
  const Pmf vwa = joint.table().marginal(FJ::V | FJ::W | FJ::A);
  const Pmf pa = joint.table().marginal(FJ::A);
  auto argmin_cost = [&](auto&& weight) {
    std::size_t best = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    for (std::size_t ah = 0; ah < na; ++ah) {
      double cost = 0.0;
      for (std::size_t a = 0; a < na; ++a) cost += weight(a) * d(a, ah);
      if (cost < best_cost) {
        best_cost = cost;
        best = ah;
      }
    }
    return best;
  };
  const std::size_t fallback = argmin_cost([&](std::size_t a) { return pa[a]; });
  std::vector<std::size_t> map(nv * nw);
  for (std::size_t v = 0; v < nv; ++v)
    for (std::size_t w = 0; w < nw; ++w) {
      const std::size_t base = (v * nw + w) * na;
      double mass = 0.0;
      for (std::size_t a = 0; a < na; ++a) mass += vwa[base + a];
      map[v * nw + w] =
          mass > 0.0 ? argmin_cost([&](std::size_t a) { return vwa[base + a]; }) : fallback;
    }
  return Reconstruction(nv, nw, std::move(map));
}

InnerBounds bounds_from_joint(const FullJoint& j, const DistortionMeasure& d,
                              const Reconstruction& rec) {
  InnerBounds b;
  b.R_A_min = j.I(FJ::V, FJ::A, FJ::W);
  b.R_C_min = j.I(FJ::W, FJ::C, FJ::V);
  b.sum_min = j.I(FJ::V | FJ::W, FJ::A | FJ::C);
  b.D_min = expected_distortion(j, d, rec);
  const double eve_gain = j.I(FJ::A, FJ::E, FJ::U);
  b.Delta_max = j.H(FJ::A, FJ::V | FJ::W) + j.I(FJ::A, FJ::W, FJ::U) - eve_gain;
  b.Delta_minus_Rc_max = j.H(FJ::A, FJ::V) - eve_gain - b.R_C_min;
  return b;
}

InnerBounds inner_bound_point(const JointSource& source, const DistortionMeasure& d,
                              const AuxiliarySystem& sys) {
  check_system(source, sys);
  require(d.alphabet_size() == source.na(), "distortion alphabet must match |A|");
  const auto joint = compose_full_joint(source, sys.u_given_v, sys.v_given_a, sys.w_given_c);
  return bounds_from_joint(joint, d, sys.reconstruction);
}

RegionPoint corner_point(const JointSource& source, const DistortionMeasure& d,
                         const AuxiliarySystem& sys, CornerPoint which) {
  check_system(source, sys);
  require(d.alphabet_size() == source.na(), "distortion alphabet must match |A|");
  const auto j = compose_full_joint(source, sys.u_given_v, sys.v_given_a, sys.w_given_c);
  RegionPoint pt;
  pt.D = expected_distortion(j, d, sys.reconstruction);
  const double h_a_ue = j.H(FJ::A, FJ::U | FJ::E);
  switch (which) {
    case CornerPoint::I:
      pt.R_A = j.I(FJ::V, FJ::A, FJ::W);
      pt.R_C = j.I(FJ::W, FJ::C);
      pt.Delta = h_a_ue - j.I(FJ::V, FJ::A, FJ::U | FJ::W);
      break;
    case CornerPoint::II:
      pt.R_A = j.I(FJ::U, FJ::A) + j.I(FJ::V, FJ::A, FJ::U | FJ::W);
      pt.R_C = j.I(FJ::W, FJ::C, FJ::U);
      pt.Delta = h_a_ue - j.I(FJ::V, FJ::A, FJ::U | FJ::W);
      break;
    case CornerPoint::III:
      pt.R_A = j.I(FJ::V, FJ::A);
      pt.R_C = j.I(FJ::W, FJ::C, FJ::V);
      pt.Delta = h_a_ue - j.I(FJ::V, FJ::A, FJ::U);
      break;
  }
  return pt;
}

FullJoint compose_outer_joint(const JointSource& source, const Channel& u_given_v,
                              const Channel& v_given_a, const Channel& w_given_uvc) {
  require(v_given_a.input_size() == source.na(), "p(v|a) input must match |A|");
  require(u_given_v.input_size() == v_given_a.output_size(), "p(u|v) input must match |V|");
  const std::size_t nu = u_given_v.output_size(), nv = v_given_a.output_size(),
                    na = source.na(), nc = source.nc(), ne = source.ne();
  require(w_given_uvc.input_size() == nu * nv * nc, "p(w|u,v,c) input must be |U||V||C|");
  const std::size_t nw = w_given_uvc.output_size();
  std::vector<double> t(nu * nv * nw * na * nc * ne, 0.0);
  std::size_t flat = 0;
  for (std::size_t u = 0; u < nu; ++u)
    for (std::size_t v = 0; v < nv; ++v)
      for (std::size_t w = 0; w < nw; ++w)
        for (std::size_t a = 0; a < na; ++a) {
          const double puva = u_given_v(v, u) * v_given_a(a, v);
          for (std::size_t c = 0; c < nc; ++c) {
            const double pw = w_given_uvc((u * nv + v) * nc + c, w) * puva;
            for (std::size_t e = 0; e < ne; ++e) t[flat++] = pw * source(a, c, e);
          }
        }
  FullJoint joint(Pmf::trusted({nu, nv, nw, na, nc, ne}, std::move(t)));
  require(joint.table().markov_residual(FJ::W, FJ::C, FJ::A | FJ::E) < 1e-9,
          "outer-bound system violates W - C - (A, E)");
  return joint;
}

InnerBounds outer_bound_point(const JointSource& source, const DistortionMeasure& d,
                              const Channel& u_given_v, const Channel& v_given_a,
                              const Channel& w_given_uvc, const Reconstruction& rec) {
  require(d.alphabet_size() == source.na(), "distortion alphabet must match |A|");
  const auto joint = compose_outer_joint(source, u_given_v, v_given_a, w_given_uvc);
  return bounds_from_joint(joint, d, rec);
}

namespace {
FullJoint uncoded_joint(const JointSource& source, const DistortionMeasure& d,
                        const Channel& u_given_v, const Channel& v_given_a,
                        const Reconstruction& rec) {
  require(d.alphabet_size() == source.na(), "distortion alphabet must match |A|");
  require(rec.v_size() == v_given_a.output_size() && rec.w_size() == source.nc(),
          "uncoded reconstruction map must be defined on V x C");
  return compose_full_joint(source, u_given_v, v_given_a, Channel::identity(source.nc()));
}
}  // namespace

UncodedBounds uncoded_region_point(const JointSource& source, const DistortionMeasure& d,
                                   const Channel& u_given_v, const Channel& v_given_a,
                                   const Reconstruction& rec) {
  const auto j = uncoded_joint(source, d, u_given_v, v_given_a, rec);
  UncodedBounds b;
  b.R_A_min = j.I(FJ::V, FJ::A, FJ::C);
  b.D_min = expected_distortion(j, d, rec);
  b.Delta_max = j.H(FJ::A, FJ::V | FJ::C) + j.I(FJ::A, FJ::C, FJ::U) - j.I(FJ::A, FJ::E, FJ::U);
  return b;
}

UncodedBounds uncoded_region_point_alt(const JointSource& source, const DistortionMeasure& d,
                                       const Channel& u_given_v, const Channel& v_given_a,
                                       const Reconstruction& rec) {
  auto b = uncoded_region_point(source, d, u_given_v, v_given_a, rec);
  const auto j = uncoded_joint(source, d, u_given_v, v_given_a, rec);
  b.R_A_min += positive_part(j.I(FJ::U, FJ::C) - j.I(FJ::U, FJ::E));
  return b;
}

namespace {
FullJoint lossless_joint(const JointSource& source, const Channel& u_given_a) {
  require(u_given_a.input_size() == source.na(), "p(u|a) input must match |A|");
  return compose_full_joint(source, u_given_a, Channel::identity(source.na()),
                            Channel::identity(source.nc()));
}
}  // namespace

LosslessBounds lossless_region_point(const JointSource& source, const Channel& u_given_a) {
  const auto j = lossless_joint(source, u_given_a);
  LosslessBounds b;
  b.R_A_min = j.H(FJ::A, FJ::C);
  b.R_C_min = j.H(FJ::C, FJ::U);
  b.sum_min = j.H(FJ::A | FJ::C);
  b.Delta_max = j.I(FJ::A, FJ::C, FJ::U) - j.I(FJ::A, FJ::E, FJ::U);
  return b;
}

LosslessBounds lossless_region_point_alt(const JointSource& source, const Channel& u_given_a) {
  auto b = lossless_region_point(source, u_given_a);
  const auto j = lossless_joint(source, u_given_a);
  b.R_A_min += positive_part(j.I(FJ::U, FJ::C) - j.I(FJ::U, FJ::E));
  return b;
}

}  // namespace equivoc
