#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace equivoc {

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();
inline constexpr double kNormTol = 1e-12;
// Information quantities down to -kClampTol are rounding noise and clamp to 0.
inline constexpr double kClampTol = 1e-10;

// Bit set of axes of a dense table (axis k <-> bit k).
using AxisMask = std::uint32_t;

constexpr AxisMask axis_bit(std::size_t k) { return AxisMask{1} << k; }

/// Dense joint probability table over a small number of finite axes.
/// Cells are stored row-major: the last axis varies fastest.
class Pmf {
 public:
  Pmf() = default;
  /// Validates non-negativity and normalization (1e-12).
  Pmf(std::vector<std::size_t> dims, std::vector<double> probs);

  /// Skips the normalization check; used for intermediate tables that are
  /// normalized by construction up to accumulated rounding.
  static Pmf trusted(std::vector<std::size_t> dims, std::vector<double> probs);

  std::size_t rank() const { return dims_.size(); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::span<const double> probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  AxisMask all_axes() const { return static_cast<AxisMask>((AxisMask{1} << rank()) - 1); }

  double operator[](std::size_t flat) const { return probs_[flat]; }
  double at(std::span<const std::size_t> index) const;

  /// Marginal over the axes in `keep`, axes kept in original order.
  Pmf marginal(AxisMask keep) const;

  /// Joint entropy in bits of the axes in `axes`; H(empty) = 0.
  double entropy(AxisMask axes) const;
  double entropy() const { return entropy(all_axes()); }

  /// H(X|Y) = H(XY) - H(Y).
  double conditional_entropy(AxisMask x, AxisMask given) const;
  /// I(X;Y|Z) with the clamp at zero.
  double mutual_information(AxisMask x, AxisMask y, AxisMask given = 0) const;

  /// max over cells |p(x,y,z) p(y) - p(x,y) p(y,z)|, normalized by p(y)
  /// (i.e. the largest deviation from p(x,y)p(y,z)/p(y)).
  double markov_residual(AxisMask x, AxisMask y, AxisMask z) const;

 private:
  std::vector<std::size_t> dims_;
  std::vector<double> probs_;
};

/// Shannon entropy in bits of a normalized probability vector.
double entropy(std::span<const double> dist);
/// I(X;Y) for a 2-d joint table.
double mutual_information(const Pmf& joint);
/// I(X;Y|Z) for a 3-d joint table; the two remaining axes keep their order.
double conditional_mi(const Pmf& joint, std::size_t conditioning_axis);

/// Binary entropy in bits.
double h2(double x);
/// Inverse of h2 on [0, 1/2]; y must be in [0, 1].
double h2_inverse(double y);
/// Binary convolution a(1-b) + (1-a)b.
double star(double a, double b);
/// [x]_+.
inline double positive_part(double x) { return x > 0.0 ? x : 0.0; }

/// Stochastic matrix; row x holds p(y|x).
class Channel {
 public:
  Channel() = default;
  Channel(std::size_t input_size, std::size_t output_size, std::vector<double> rows);
  Channel(const std::vector<std::vector<double>>& rows);

  static Channel identity(std::size_t n);
  /// Every input maps to output 0 of a size-`output_size` alphabet.
  static Channel constant(std::size_t input_size, std::size_t output_size = 1);
  static Channel bsc(double crossover);
  /// Binary erasure channel, outputs ordered {0, 1, erasure}.
  static Channel bec(double erasure);

  std::size_t input_size() const { return in_; }
  std::size_t output_size() const { return out_; }
  double operator()(std::size_t x, std::size_t y) const { return rows_[x * out_ + y]; }
  std::span<const double> row(std::size_t x) const { return {rows_.data() + x * out_, out_}; }
  std::span<double> mutable_row(std::size_t x) { return {rows_.data() + x * out_, out_}; }
  std::span<const double> data() const { return rows_; }

  /// Composition: (this then next)(z|x) = sum_y this(y|x) next(z|y).
  Channel then(const Channel& next) const;

  bool operator==(const Channel&) const = default;

 private:
  std::size_t in_ = 0;
  std::size_t out_ = 0;
  std::vector<double> rows_;
};

/// Finite distortion measure d(a, a_hat) with 0 <= d <= d_max < inf.
class DistortionMeasure {
 public:
  DistortionMeasure() = default;
  DistortionMeasure(std::size_t alphabet, std::vector<double> table);
  static DistortionMeasure hamming(std::size_t alphabet);

  std::size_t alphabet_size() const { return n_; }
  double operator()(std::size_t a, std::size_t a_hat) const { return table_[a * n_ + a_hat]; }
  double d_max() const { return d_max_; }
  std::span<const double> table() const { return table_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> table_;
  double d_max_ = 0.0;
};

/// Joint p(a,c,e) of a memoryless source triple.
/// Row-major: flat index = (a * |C| + c) * |E| + e.
class JointSource {
 public:
  JointSource() = default;
  JointSource(std::size_t na, std::size_t nc, std::size_t ne, std::vector<double> probs);
  /// p(a) followed by independent side channels p(c|a), p(e|a).
  static JointSource from_channels(std::span<const double> pa, const Channel& c_given_a,
                                   const Channel& e_given_a);

  std::size_t na() const { return pmf_.dims()[0]; }
  std::size_t nc() const { return pmf_.dims()[1]; }
  std::size_t ne() const { return pmf_.dims()[2]; }
  double operator()(std::size_t a, std::size_t c, std::size_t e) const {
    return pmf_[(a * nc() + c) * ne() + e];
  }
  const Pmf& pmf() const { return pmf_; }

  static constexpr AxisMask A = axis_bit(0);
  static constexpr AxisMask C = axis_bit(1);
  static constexpr AxisMask E = axis_bit(2);

  std::vector<double> marginal_a() const;
  /// p(e|a) as a channel (rows with p(a) = 0 are uniform).
  Channel e_given_a() const;

 private:
  Pmf pmf_;
};

/// p(u,v,w,a,c,e) on axes ordered (U, V, W, A, C, E).
class FullJoint {
 public:
  static constexpr AxisMask U = axis_bit(0);
  static constexpr AxisMask V = axis_bit(1);
  static constexpr AxisMask W = axis_bit(2);
  static constexpr AxisMask A = axis_bit(3);
  static constexpr AxisMask C = axis_bit(4);
  static constexpr AxisMask E = axis_bit(5);

  explicit FullJoint(Pmf table) : table_(std::move(table)) {}

  const Pmf& table() const { return table_; }
  std::size_t size_of(AxisMask single_axis) const;

  double H(AxisMask x, AxisMask given = 0) const { return table_.conditional_entropy(x, given); }
  double I(AxisMask x, AxisMask y, AxisMask given = 0) const {
    return table_.mutual_information(x, y, given);
  }

  /// Largest residual among U-(A,C,E,W)|V, V-(C,E,W)|A, W-(U,V,A,E)|C.
  double long_chain_residual() const;

 private:
  Pmf table_;
};

/// p(u|v) p(v|a) p(w|c) p(a,c,e).
FullJoint compose_full_joint(const JointSource& source, const Channel& u_given_v,
                             const Channel& v_given_a, const Channel& w_given_c);

enum class BecBscRegime { degraded, less_noisy, more_capable, none };

std::string to_string(BecBscRegime r);

/// Side-information ordering of the binary source with BEC(eps) to Bob and
/// BSC(p) to Eve. Boundaries go to the stronger regime.
BecBscRegime classify_bec_bsc_regime(double p, double eps);

/// I(A;C) >= I(A;E).
bool is_more_capable(const JointSource& source);

void require(bool cond, const std::string& message);

}  // namespace equivoc
