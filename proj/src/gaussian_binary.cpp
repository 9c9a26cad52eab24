#include <cmath>
#include <numbers>

#include "equivoc/regions.hpp"

namespace equivoc {

GaussianParams::GaussianParams(double rho_c, double rho_e) : rho_C(rho_c), rho_E(rho_e) {
  require(rho_C > 0.0 && rho_C < 1.0, "rho_C must lie in (0, 1)");
  require(rho_E >= 0.0 && rho_E < 1.0, "rho_E must lie in [0, 1)");
}

double gaussian_residual_variance(double rho_C, double R_C) {
  require(R_C >= 0.0, "R_C must be non-negative");
  const double r2 = rho_C * rho_C;
  return 1.0 - r2 + r2 * std::exp2(-2.0 * R_C);
}

namespace {
void check_rate_distortion(double R_C, double D) {
  require(!std::isnan(R_C) && R_C >= 0.0, "R_C must be non-negative");
  require(std::isfinite(D) && D > 0.0, "distortion D must be positive");
}

double half_log_2pie() { return 0.5 * std::log2(2.0 * std::numbers::pi * std::numbers::e); }
}  // namespace

GaussianBounds gaussian_inner(const GaussianParams& params, double R_C, double D) {
  check_rate_distortion(R_C, D);
  const double sigma2 = gaussian_residual_variance(params.rho_C, R_C);
  const double noise_e = 1.0 - params.rho_E * params.rho_E;
  const double rate_term = positive_part(std::log2(sigma2 / D));
  const double eve_term = std::log2(1.0 + noise_e * positive_part(1.0 / D - 1.0 / sigma2));
  GaussianBounds b;
  b.R_A_min = 0.5 * rate_term;
  b.Delta_max = 0.5 * std::log2(2.0 * std::numbers::pi * std::numbers::e * noise_e) -
                0.5 * std::min(rate_term, eve_term);
  return b;
}

GaussianBounds gaussian_optimal_no_eve_si(double rho_C, double R_C, double D) {
  require(rho_C > 0.0 && rho_C < 1.0, "rho_C must lie in (0, 1)");
  check_rate_distortion(R_C, D);
  const double sigma2 = gaussian_residual_variance(rho_C, R_C);
  GaussianBounds b;
  b.R_A_min = 0.5 * positive_part(std::log2(sigma2 / D));
  b.Delta_max = half_log_2pie() - b.R_A_min;
  return b;
}

BinaryParams::BinaryParams(double p_, double eps_, double alpha_, double beta_)
    : p(p_), eps(eps_), alpha(alpha_), beta(beta_) {
  require(p >= 0.0 && p <= 0.5, "p must lie in [0, 1/2]");
  require(eps >= 0.0 && eps <= 1.0, "eps must lie in [0, 1]");
  require(alpha >= 0.0 && alpha <= 0.5, "alpha must lie in [0, 1/2]");
  require(beta >= 0.0 && beta <= 0.5, "beta must lie in [0, 1/2]");
}

BinaryBounds binary_bec_bsc_point(const BinaryParams& bp) {
  const double ab = star(bp.alpha, bp.beta);
  BinaryBounds b;
  b.R_A_min = bp.eps * (1.0 - h2(bp.alpha));
  b.D_min = bp.eps * bp.alpha;
  b.Delta_max = bp.eps * h2(bp.alpha) + (1.0 - bp.eps) * h2(ab) - h2(star(bp.p, ab)) + h2(bp.p);
  return b;
}

BinaryBounds binary_wyner_ziv_point(double p, double eps, double alpha) {
  return binary_bec_bsc_point(BinaryParams(p, eps, alpha, 0.0));
}

JointSource binary_bec_bsc_source(double p, double eps) {
  const double pa[2] = {0.5, 0.5};
  return JointSource::from_channels(pa, Channel::bec(eps), Channel::bsc(p));
}

BinaryAuxiliaries binary_auxiliaries(double alpha, double beta) {
  return {Channel::bsc(beta), Channel::bsc(alpha), Reconstruction::erasure_fill()};
}

}  // namespace equivoc
