#pragma once

#include <cstddef>
#include <vector>

#include "equivoc/prob_core.hpp"

namespace equivoc {

/// (R_A, R_C, D, Delta): rates in bits/symbol, distortion, equivocation rate.
struct RegionPoint {
  double R_A = 0.0;
  double R_C = 0.0;
  double D = 0.0;
  double Delta = 0.0;
};

/// Deterministic estimator a_hat = map(v, w) used by Bob.
class Reconstruction {
 public:
  Reconstruction() = default;
  Reconstruction(std::size_t v_size, std::size_t w_size, std::vector<std::size_t> map);

  /// a_hat = c when c is not the erasure symbol, v otherwise (binary BEC case).
  static Reconstruction erasure_fill(std::size_t erasure_symbol = 2);
  static Reconstruction constant(std::size_t v_size, std::size_t w_size, std::size_t symbol);

  std::size_t v_size() const { return nv_; }
  std::size_t w_size() const { return nw_; }
  std::size_t operator()(std::size_t v, std::size_t w) const { return map_[v * nw_ + w]; }
  const std::vector<std::size_t>& table() const { return map_; }
  bool operator==(const Reconstruction&) const = default;

 private:
  std::size_t nv_ = 0;
  std::size_t nw_ = 0;
  std::vector<std::size_t> map_;
};

/// Channels p(u|v), p(v|a), p(w|c) and the estimator A_hat(v, w).
struct AuxiliarySystem {
  Channel u_given_v;
  Channel v_given_a;
  Channel w_given_c;
  Reconstruction reconstruction;
};

/// The six right-hand sides of the inner-bound inequalities at one system.
struct InnerBounds {
  double R_A_min = 0.0;             // I(V;A|W)
  double R_C_min = 0.0;             // I(W;C|V)
  double sum_min = 0.0;             // I(VW;AC)
  double D_min = 0.0;               // E d(A, A_hat(V,W))
  double Delta_max = 0.0;           // H(A|VW) + I(A;W|U) - I(A;E|U)
  double Delta_minus_Rc_max = 0.0;  // H(A|V) - I(A;E|U) - I(W;C|V)

  /// Whether `pt` satisfies all six inequalities (slack `tol`).
  bool admits(const RegionPoint& pt, double tol = 1e-9) const;
};

/// Eve-side quantities only depend on (U, V) and are shared with the outer bound.
InnerBounds bounds_from_joint(const FullJoint& joint, const DistortionMeasure& d,
                              const Reconstruction& rec);

/// E d(A, A_hat(V, W)) under the joint.
double expected_distortion(const FullJoint& joint, const DistortionMeasure& d,
                           const Reconstruction& rec);

/// Per (v, w) the symbol minimizing sum_a p(a, v, w) d(a, a_hat); ties go to
/// the lowest index. Cells with zero mass map to the globally best constant.
Reconstruction optimal_reconstruction(const FullJoint& joint, const DistortionMeasure& d);

InnerBounds inner_bound_point(const JointSource& source, const DistortionMeasure& d,
                              const AuxiliarySystem& sys);

enum class CornerPoint { I, II, III };

RegionPoint corner_point(const JointSource& source, const DistortionMeasure& d,
                         const AuxiliarySystem& sys, CornerPoint which);

/// Outer-bound terms for a system whose W only satisfies W - C - (A, E).
/// `w_given_uvc` is a channel from the product alphabet U x V x C (flat
/// index (u * |V| + v) * |C| + c) to W. Throws when W - C - (A, E) fails.
InnerBounds outer_bound_point(const JointSource& source, const DistortionMeasure& d,
                              const Channel& u_given_v, const Channel& v_given_a,
                              const Channel& w_given_uvc, const Reconstruction& rec);

/// Builds the (generally non-long-chain) joint used by outer_bound_point.
FullJoint compose_outer_joint(const JointSource& source, const Channel& u_given_v,
                              const Channel& v_given_a, const Channel& w_given_uvc);

struct UncodedBounds {
  double R_A_min = 0.0;
  double D_min = 0.0;
  double Delta_max = 0.0;
};

/// Bob observes C directly; `rec` is indexed (v, c).
UncodedBounds uncoded_region_point(const JointSource& source, const DistortionMeasure& d,
                                   const Channel& u_given_v, const Channel& v_given_a,
                                   const Reconstruction& rec);
/// Same with R_A_min = [I(U;C) - I(U;E)]_+ + I(V;A|C).
UncodedBounds uncoded_region_point_alt(const JointSource& source, const DistortionMeasure& d,
                                       const Channel& u_given_v, const Channel& v_given_a,
                                       const Reconstruction& rec);

struct LosslessBounds {
  double R_A_min = 0.0;    // H(A|C)
  double R_C_min = 0.0;    // H(C|U)
  double sum_min = 0.0;    // H(AC)
  double Delta_max = 0.0;  // I(A;C|U) - I(A;E|U)
};

LosslessBounds lossless_region_point(const JointSource& source, const Channel& u_given_a);
/// Same with R_A_min = [I(U;C) - I(U;E)]_+ + H(A|C).
LosslessBounds lossless_region_point_alt(const JointSource& source, const Channel& u_given_a);

// ---- Gaussian sources --------------------------------------------------------

struct GaussianParams {
  double rho_C = 0.0;
  double rho_E = 0.0;
  GaussianParams(double rho_c, double rho_e);
};

struct GaussianBounds {
  double R_A_min = 0.0;
  double Delta_max = 0.0;  // differential-entropy convention, any real
};

/// Residual variance of A given the quantized C at rate R_C:
/// 1 - rho_C^2 + rho_C^2 2^{-2 R_C}. R_C = kUnbounded gives 1 - rho_C^2.
double gaussian_residual_variance(double rho_C, double R_C);

GaussianBounds gaussian_inner(const GaussianParams& params, double R_C, double D);
GaussianBounds gaussian_optimal_no_eve_si(double rho_C, double R_C, double D);

// ---- Binary source, BEC to Bob, BSC to Eve -----------------------------------

struct BinaryParams {
  double p = 0.0;
  double eps = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  BinaryParams(double p, double eps, double alpha, double beta);
};

struct BinaryBounds {
  double R_A_min = 0.0;
  double D_min = 0.0;
  double Delta_max = 0.0;
};

BinaryBounds binary_bec_bsc_point(const BinaryParams& params);
BinaryBounds binary_wyner_ziv_point(double p, double eps, double alpha);

/// Uniform A, C = BEC(eps) output on {0, 1, erasure}, E = BSC(p) output.
JointSource binary_bec_bsc_source(double p, double eps);

/// V = BSC(alpha) of A, U = BSC(beta) of V, C used directly, the erasure-fill estimator.
struct BinaryAuxiliaries {
  Channel u_given_v;
  Channel v_given_a;
  Reconstruction reconstruction;
};
BinaryAuxiliaries binary_auxiliaries(double alpha, double beta);

}  // namespace equivoc
