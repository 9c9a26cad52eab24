#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "equivoc/prob_core.hpp"
#include "equivoc/regions.hpp"
#include "equivoc/search.hpp"

namespace equivoc {

/// Upper limits on (R_A, R_C, D); kUnbounded turns a limit off.
struct RateConstraint {
  double R_A = kUnbounded;
  double R_C = kUnbounded;
  double D = kUnbounded;
};

inline constexpr double kConstraintSlack = 1e-9;

/// One swept variable ("R_A", "R_C" or "D") over a strictly increasing grid,
/// the remaining limits taken from `fixed`.
struct Sweep {
  std::string variable = "D";
  std::vector<double> values;
  RateConstraint fixed;

  std::vector<RateConstraint> expand() const;
};

struct FrontierPoint {
  double sweep = 0.0;
  RateConstraint constraint;
  bool feasible = false;
  RegionPoint point;
  std::vector<std::pair<std::string, double>> params;
  std::optional<AuxiliarySystem> system;
  std::optional<Channel> u_given_a;
};

struct FrontierResult {
  std::string model;
  std::string sweep_variable;
  std::vector<FrontierPoint> points;
  std::vector<std::pair<std::string, std::string>> provenance;
  std::vector<double> trace;  // best value per start or refinement round
};

// ---- Binary source with BEC to Bob and BSC to Eve ----------------------------

struct BinarySearchOptions {
  int coarse_alpha = 41;
  int coarse_beta = 51;
  double tol = 1e-5;
  int max_rounds = 40;
  bool wyner_ziv = false;  // force beta = 0
};

struct BinaryOptimum {
  bool feasible = false;
  double alpha = 0.0;
  double beta = 0.0;
  BinaryBounds bounds;
  int rounds = 0;
};

/// alpha range allowed by D and an optional rate cap: [alpha_lo, alpha_hi].
std::pair<double, double> binary_alpha_range(double eps, double D, double rate_cap);

/// Maximizes the binary Delta over (alpha, beta) at distortion D and rate cap.
BinaryOptimum binary_optimum(double p, double eps, double D, double rate_cap,
                             const BinarySearchOptions& opts = {});

struct BinaryFrontierRow {
  double D = 0.0;
  BinaryOptimum optimal;
  BinaryOptimum wyner_ziv;
};

std::vector<BinaryFrontierRow> binary_sweep(double p, double eps, std::span<const double> D_grid,
                                            double rate_cap = kUnbounded,
                                            const BinarySearchOptions& opts = {});

FrontierResult binary_frontier(double p, double eps, std::span<const double> D_grid,
                               double rate_cap = kUnbounded, const BinarySearchOptions& opts = {});

/// Smallest D in [lo, hi] above which the optimal and Wyner-Ziv frontiers
/// differ by at most `gap_tol`. `rows` must come from binary_sweep on a grid
/// covering [lo, hi]; the crossing is refined by bisection.
double binary_merge_threshold(double p, double eps, std::span<const BinaryFrontierRow> rows,
                              double gap_tol = 1e-6, const BinarySearchOptions& opts = {});

/// Log-spaced grid of `count` points on [lo, hi].
std::vector<double> log_grid(double lo, double hi, int count);

// ---- Generic discrete sources --------------------------------------------------

struct AlphabetCaps {
  std::size_t u = 1;
  std::size_t v = 1;
  std::size_t w = 1;
};

/// |U| <= |A|+5, |V| <= (|A|+5)(|A|+3), |W| <= |C|+3.
AlphabetCaps inner_caps(const JointSource& source);
/// |U| <= |A|+2, |V| <= (|A|+2)(|A|+1).
AlphabetCaps uncoded_caps(const JointSource& source);

/// Inner-bound terms at (p(u|v), p(v|a), p(w|c)) with the distortion-optimal
/// estimator, computed from small marginals instead of the full joint.
InnerBounds fast_inner_bounds(const JointSource& source, const DistortionMeasure& d,
                              const Channel& u_given_v, const Channel& v_given_a,
                              const Channel& w_given_c, Reconstruction* rec = nullptr);

/// Best Delta admitted by `b` under `c`, with lexicographic feasibility.
Score inner_score(const InnerBounds& b, const RateConstraint& c);

/// The region point reported for a feasible system: rates at the limits when
/// finite, otherwise the smallest rates the six inequalities allow.
RegionPoint inner_report_point(const InnerBounds& b, const RateConstraint& c);

struct InnerSearchOptions {
  SearchOptions search;
  std::optional<Channel> fixed_w;  // e.g. identity for the uncoded embedding
  bool allow_cap_override = false;
};

struct InnerOptimum {
  bool feasible = false;
  RegionPoint point;
  InnerBounds bounds;
  AuxiliarySystem system;
  SearchResult search;
};

InnerOptimum inner_optimum(const JointSource& source, const DistortionMeasure& d,
                           const AlphabetCaps& caps, const RateConstraint& constraint,
                           const InnerSearchOptions& opts = {});

FrontierResult generic_inner_frontier(const JointSource& source, const DistortionMeasure& d,
                                      const AlphabetCaps& caps, const Sweep& sweep,
                                      const InnerSearchOptions& opts = {});

// ---- Lossless reconstruction -----------------------------------------------------

struct LosslessOptimum {
  bool feasible = false;
  RegionPoint point;
  LosslessBounds bounds;
  Channel u_given_a;
  SearchResult search;
};

/// Working cap |U| <= |A| + 2.
std::size_t lossless_u_cap(const JointSource& source);

LosslessOptimum lossless_optimum(const JointSource& source, const RateConstraint& constraint,
                                 std::size_t u_size, const SearchOptions& opts = {});

FrontierResult lossless_frontier(const JointSource& source, const Sweep& sweep,
                                 std::size_t u_size, const SearchOptions& opts = {});

// ---- Gaussian ----------------------------------------------------------------------

/// Closed-form sweep; `sweep.variable` is "D" or "R_C".
FrontierResult gaussian_frontier(const GaussianParams& params, const Sweep& sweep);

// ---- Exhaustive oracle ---------------------------------------------------------------

struct BruteForceOptions {
  double step = 0.05;
  double budget = 2e10;  // max number of (U, V, W) channel combinations
  std::optional<Channel> fixed_w;
};

struct BruteForceOptimum {
  bool feasible = false;
  double value = -kUnbounded;
  RegionPoint point;
  AuxiliarySystem system;
};

/// Number of (U, V, W) combinations before symmetry reduction.
double brute_force_size(const JointSource& source, const AlphabetCaps& caps,
                        const BruteForceOptions& opts);

/// Parallel exhaustive search over grid channels for every constraint at
/// once. Uses relabeling symmetry and exact upper bounds to skip work.
std::vector<BruteForceOptimum> brute_force_search(const JointSource& source,
                                                  const DistortionMeasure& d,
                                                  const AlphabetCaps& caps,
                                                  std::span<const RateConstraint> constraints,
                                                  const BruteForceOptions& opts);

/// Serial reference: every combination evaluated through inner_bound_point.
std::vector<BruteForceOptimum> brute_force_search_reference(
    const JointSource& source, const DistortionMeasure& d, const AlphabetCaps& caps,
    std::span<const RateConstraint> constraints, const BruteForceOptions& opts);

FrontierResult brute_force_oracle(const JointSource& source, const DistortionMeasure& d,
                                  const AlphabetCaps& caps, const Sweep& sweep,
                                  const BruteForceOptions& opts);

/// All rows of length `k` with entries in {0, 1/m, ..., 1}, lexicographic.
std::vector<std::vector<double>> simplex_grid(std::size_t k, int m);

// ---- Time sharing ---------------------------------------------------------------------

/// Extreme points of the convex hull in the (R_A, R_C, D, -Delta) orientation:
/// a point is dropped when a convex combination of the others is no worse in
/// every coordinate.
std::vector<RegionPoint> convexify(std::span<const RegionPoint> points);

/// Whether some convex combination of `hull` is no worse than `x` everywhere.
bool dominated_by_hull(std::span<const RegionPoint> hull, const RegionPoint& x, double tol = 1e-9);

// ---- Specs ----------------------------------------------------------------------------

struct FrontierSpec {
  enum class Model { binary_bec_bsc, generic_discrete, lossless, gaussian };
  Model model = Model::binary_bec_bsc;
  // binary
  double p = 0.1;
  double eps = 0.0;
  BinarySearchOptions binary;  // rate cap taken from sweep.fixed.R_A
  // generic / lossless
  JointSource source;
  DistortionMeasure distortion;
  std::optional<AlphabetCaps> caps;
  InnerSearchOptions inner;
  // gaussian
  double rho_C = 0.5;
  double rho_E = 0.0;

  Sweep sweep;
};

/// Validates the sweep grid (non-empty, strictly increasing) and resolutions (>= 2).
void validate(const FrontierSpec& spec);

FrontierResult run_frontier(const FrontierSpec& spec);

}  // namespace equivoc
