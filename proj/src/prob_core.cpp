#include "equivoc/prob_core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

namespace equivoc {

void require(bool cond, const std::string& message) {
  if (!cond) throw ValidationError(message);
}

namespace {

// Strides that map a multi-index over `dims` onto the flat index of the
// marginal table that keeps the axes in `keep`; dropped axes get stride 0.
std::vector<std::size_t> projection_strides(const std::vector<std::size_t>& dims, AxisMask keep) {
  std::vector<std::size_t> strides(dims.size(), 0);
  std::size_t s = 1;
  for (std::size_t k = dims.size(); k-- > 0;) {
    if (keep & axis_bit(k)) {
      strides[k] = s;
      s *= dims[k];
    }
  }
  return strides;
}

std::vector<std::size_t> kept_dims(const std::vector<std::size_t>& dims, AxisMask keep) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (keep & axis_bit(k)) out.push_back(dims[k]);
  return out;
}

std::size_t product(const std::vector<std::size_t>& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

// Visits every cell of a table with dims `dims` in row-major order, passing
// the projected flat indices for each stride set.
template <std::size_t N, typename F>
void for_each_cell(const std::vector<std::size_t>& dims,
                   const std::array<const std::vector<std::size_t>*, N>& strides, F&& f) {
  const std::size_t rank = dims.size();
  std::vector<std::size_t> idx(rank, 0);
  std::array<std::size_t, N> proj{};
  const std::size_t total = product(dims);
  for (std::size_t flat = 0; flat < total; ++flat) {
    f(flat, proj);
    for (std::size_t k = rank; k-- > 0;) {
      ++idx[k];
      for (std::size_t m = 0; m < N; ++m) proj[m] += (*strides[m])[k];
      if (idx[k] < dims[k]) break;
      for (std::size_t m = 0; m < N; ++m) proj[m] -= (*strides[m])[k] * dims[k];
      idx[k] = 0;
    }
  }
}

double xlog2x_sum(std::span<const double> p) {
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log2(x);
  return h;
}

double clamp_info(double v) {
  if (v < 0.0 && v > -kClampTol) return 0.0;
  return v < 0.0 ? 0.0 : v;
}

}  // namespace

Pmf::Pmf(std::vector<std::size_t> dims, std::vector<double> probs)
    : dims_(std::move(dims)), probs_(std::move(probs)) {
  require(!dims_.empty() && dims_.size() <= 30, "table rank must be in [1, 30]");
  for (auto d : dims_) require(d > 0, "alphabet sizes must be positive");
  require(product(dims_) == probs_.size(), "probability table size does not match dimensions");
  double total = 0.0;
  for (double p : probs_) {
    require(std::isfinite(p) && p >= 0.0, "probabilities must be finite and non-negative");
    total += p;
  }
  if (std::abs(total - 1.0) > kNormTol) {
    std::ostringstream os;
    os.precision(17);
    os << "probabilities sum to " << total << ", not 1";
    throw ValidationError(os.str());
  }
}

Pmf Pmf::trusted(std::vector<std::size_t> dims, std::vector<double> probs) {
  Pmf p;
  p.dims_ = std::move(dims);
  p.probs_ = std::move(probs);
  return p;
}

double Pmf::at(std::span<const std::size_t> index) const {
  require(index.size() == rank(), "index rank mismatch");
  std::size_t flat = 0;
  for (std::size_t k = 0; k < rank(); ++k) {
    require(index[k] < dims_[k], "index out of range");
    flat = flat * dims_[k] + index[k];
  }
  return probs_[flat];
}

Pmf Pmf::marginal(AxisMask keep) const {
  keep &= all_axes();
  if (keep == all_axes()) return *this;
  if (keep == 0) return trusted({1}, {std::accumulate(probs_.begin(), probs_.end(), 0.0)});
  auto out_dims = kept_dims(dims_, keep);
  std::vector<double> out(product(out_dims), 0.0);
  const auto strides = projection_strides(dims_, keep);
  for_each_cell<1>(dims_, {&strides}, [&](std::size_t flat, const std::array<std::size_t, 1>& pr) {
    out[pr[0]] += probs_[flat];
  });
  return trusted(std::move(out_dims), std::move(out));
}

double Pmf::entropy(AxisMask axes) const {
  axes &= all_axes();
  if (axes == 0) return 0.0;
  if (axes == all_axes()) return xlog2x_sum(probs_);
  return xlog2x_sum(marginal(axes).probs());
}

double Pmf::conditional_entropy(AxisMask x, AxisMask given) const {
  const double h = entropy(x | given) - entropy(given);
  return h < 0.0 ? clamp_info(h) : h;
}

double Pmf::mutual_information(AxisMask x, AxisMask y, AxisMask given) const {
  return clamp_info(entropy(x | given) + entropy(y | given) - entropy(x | y | given) -
                    entropy(given));
}

double Pmf::markov_residual(AxisMask x, AxisMask y, AxisMask z) const {
  require((x & y) == 0 && (x & z) == 0 && (y & z) == 0, "Markov axis sets must be disjoint");
  const AxisMask all = x | y | z;
  const Pmf joint = marginal(all);
  const Pmf pxy = marginal(x | y);
  const Pmf pyz = marginal(y | z);
  const Pmf py = marginal(y);
  // Axis masks relative to the compacted joint table.
  auto relabel = [&](AxisMask m) {
    AxisMask out = 0;
    std::size_t pos = 0;
    for (std::size_t k = 0; k < rank(); ++k) {
      if (!(all & axis_bit(k))) continue;
      if (m & axis_bit(k)) out |= axis_bit(pos);
      ++pos;
    }
    return out;
  };
  const auto s_xy = projection_strides(joint.dims(), relabel(x | y));
  const auto s_yz = projection_strides(joint.dims(), relabel(y | z));
  const auto s_y = projection_strides(joint.dims(), relabel(y));
  double worst = 0.0;
  for_each_cell<3>(joint.dims(), {&s_xy, &s_yz, &s_y},
                   [&](std::size_t flat, const std::array<std::size_t, 3>& pr) {
                     const double denom = y ? py[pr[2]] : 1.0;
                     if (denom <= 0.0) return;
                     const double r = std::abs(joint[flat] - pxy[pr[0]] * pyz[pr[1]] / denom);
                     worst = std::max(worst, r);
                   });
  return worst;
}

double entropy(std::span<const double> dist) {
  require(!dist.empty(), "distribution must be non-empty");
  double total = 0.0;
  for (double p : dist) {
    require(std::isfinite(p) && p >= 0.0, "probabilities must be finite and non-negative");
    total += p;
  }
  require(std::abs(total - 1.0) <= kNormTol, "distribution is not normalized");
  return xlog2x_sum(dist);
}

double mutual_information(const Pmf& joint) {
  require(joint.rank() == 2, "mutual_information expects a 2-d joint table");
  return joint.mutual_information(axis_bit(0), axis_bit(1));
}

double conditional_mi(const Pmf& joint, std::size_t conditioning_axis) {
  require(joint.rank() == 3, "conditional_mi expects a 3-d joint table");
  require(conditioning_axis < 3, "conditioning axis out of range");
  AxisMask others[2];
  std::size_t k = 0;
  for (std::size_t ax = 0; ax < 3; ++ax)
    if (ax != conditioning_axis) others[k++] = axis_bit(ax);
  return joint.mutual_information(others[0], others[1], axis_bit(conditioning_axis));
}

double h2(double x) {
  require(x >= 0.0 && x <= 1.0, "h2 argument must lie in [0, 1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double h2_inverse(double y) {
  require(y >= 0.0 && y <= 1.0, "h2_inverse argument must lie in [0, 1]");
  double lo = 0.0, hi = 0.5;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    (h2(mid) < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double star(double a, double b) {
  require(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0, "star arguments must lie in [0, 1]");
  return a * (1.0 - b) + (1.0 - a) * b;
}

Channel::Channel(std::size_t input_size, std::size_t output_size, std::vector<double> rows)
    : in_(input_size), out_(output_size), rows_(std::move(rows)) {
  require(in_ > 0 && out_ > 0, "channel alphabets must be non-empty");
  require(rows_.size() == in_ * out_, "channel table size does not match dimensions");
  for (std::size_t x = 0; x < in_; ++x) {
    double total = 0.0;
    for (double p : row(x)) {
      require(std::isfinite(p) && p >= 0.0, "channel entries must be finite and non-negative");
      total += p;
    }
    require(std::abs(total - 1.0) <= kNormTol, "channel row does not sum to 1");
  }
}

Channel::Channel(const std::vector<std::vector<double>>& rows) {
  require(!rows.empty(), "channel needs at least one row");
  std::vector<double> flat;
  for (const auto& r : rows) {
    require(r.size() == rows.front().size(), "ragged channel rows");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  *this = Channel(rows.size(), rows.front().size(), std::move(flat));
}

Channel Channel::identity(std::size_t n) {
  std::vector<double> rows(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) rows[i * n + i] = 1.0;
  return Channel(n, n, std::move(rows));
}

Channel Channel::constant(std::size_t input_size, std::size_t output_size) {
  std::vector<double> rows(input_size * output_size, 0.0);
  for (std::size_t i = 0; i < input_size; ++i) rows[i * output_size] = 1.0;
  return Channel(input_size, output_size, std::move(rows));
}

Channel Channel::bsc(double crossover) {
  require(crossover >= 0.0 && crossover <= 1.0, "BSC crossover must lie in [0, 1]");
  return Channel(2, 2, {1.0 - crossover, crossover, crossover, 1.0 - crossover});
}

Channel Channel::bec(double erasure) {
  require(erasure >= 0.0 && erasure <= 1.0, "BEC erasure probability must lie in [0, 1]");
  return Channel(2, 3, {1.0 - erasure, 0.0, erasure, 0.0, 1.0 - erasure, erasure});
}

Channel Channel::then(const Channel& next) const {
  require(out_ == next.in_, "channel composition dimension mismatch");
  std::vector<double> rows(in_ * next.out_, 0.0);
  for (std::size_t x = 0; x < in_; ++x)
    for (std::size_t y = 0; y < out_; ++y) {
      const double p = (*this)(x, y);
      if (p == 0.0) continue;
      for (std::size_t z = 0; z < next.out_; ++z) rows[x * next.out_ + z] += p * next(y, z);
    }
  Channel c;
  c.in_ = in_;
  c.out_ = next.out_;
  c.rows_ = std::move(rows);
  return c;
}

DistortionMeasure::DistortionMeasure(std::size_t alphabet, std::vector<double> table)
    : n_(alphabet), table_(std::move(table)) {
  require(n_ > 0, "distortion alphabet must be non-empty");
  require(table_.size() == n_ * n_, "distortion table must be |A| x |A|");
  for (double d : table_) {
    require(std::isfinite(d) && d >= 0.0, "distortion entries must be finite and non-negative");
    d_max_ = std::max(d_max_, d);
  }
}

DistortionMeasure DistortionMeasure::hamming(std::size_t alphabet) {
  std::vector<double> t(alphabet * alphabet, 1.0);
  for (std::size_t i = 0; i < alphabet; ++i) t[i * alphabet + i] = 0.0;
  return DistortionMeasure(alphabet, std::move(t));
}

JointSource::JointSource(std::size_t na, std::size_t nc, std::size_t ne, std::vector<double> probs)
    : pmf_({na, nc, ne}, std::move(probs)) {}

JointSource JointSource::from_channels(std::span<const double> pa, const Channel& c_given_a,
                                       const Channel& e_given_a) {
  const std::size_t na = pa.size();
  require(c_given_a.input_size() == na && e_given_a.input_size() == na,
          "side channels must take A as input");
  const std::size_t nc = c_given_a.output_size(), ne = e_given_a.output_size();
  std::vector<double> probs(na * nc * ne);
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t c = 0; c < nc; ++c)
      for (std::size_t e = 0; e < ne; ++e)
        probs[(a * nc + c) * ne + e] = pa[a] * c_given_a(a, c) * e_given_a(a, e);
  return JointSource(na, nc, ne, std::move(probs));
}

std::vector<double> JointSource::marginal_a() const {
  auto m = pmf_.marginal(A);
  return {m.probs().begin(), m.probs().end()};
}

Channel JointSource::e_given_a() const {
  const auto pae = pmf_.marginal(A | E);
  std::vector<double> rows(na() * ne());
  for (std::size_t a = 0; a < na(); ++a) {
    double pa = 0.0;
    for (std::size_t e = 0; e < ne(); ++e) pa += pae[a * ne() + e];
    for (std::size_t e = 0; e < ne(); ++e)
      rows[a * ne() + e] = pa > 0.0 ? pae[a * ne() + e] / pa : 1.0 / static_cast<double>(ne());
    double s = 0.0;
    for (std::size_t e = 0; e < ne(); ++e) s += rows[a * ne() + e];
    for (std::size_t e = 0; e < ne(); ++e) rows[a * ne() + e] /= s;
  }
  return Channel(na(), ne(), std::move(rows));
}

std::size_t FullJoint::size_of(AxisMask single_axis) const {
  for (std::size_t k = 0; k < 6; ++k)
    if (single_axis == axis_bit(k)) return table_.dims()[k];
  throw ValidationError("size_of expects a single axis");
}

double FullJoint::long_chain_residual() const {
  return std::max({table_.markov_residual(U, V, A | C | E | W),
                   table_.markov_residual(V, A, C | E | W),
                   table_.markov_residual(W, C, U | V | A | E)});
}

FullJoint compose_full_joint(const JointSource& source, const Channel& u_given_v,
                             const Channel& v_given_a, const Channel& w_given_c) {
  require(v_given_a.input_size() == source.na(), "p(v|a) input must match |A|");
  require(u_given_v.input_size() == v_given_a.output_size(), "p(u|v) input must match |V|");
  require(w_given_c.input_size() == source.nc(), "p(w|c) input must match |C|");
  const std::size_t nu = u_given_v.output_size(), nv = v_given_a.output_size(),
                    nw = w_given_c.output_size(), na = source.na(), nc = source.nc(),
                    ne = source.ne();
  std::vector<double> t(nu * nv * nw * na * nc * ne, 0.0);
  std::size_t flat = 0;
  for (std::size_t u = 0; u < nu; ++u)
    for (std::size_t v = 0; v < nv; ++v) {
      const double puv = u_given_v(v, u);
      for (std::size_t w = 0; w < nw; ++w)
        for (std::size_t a = 0; a < na; ++a) {
          const double pva = v_given_a(a, v) * puv;
          for (std::size_t c = 0; c < nc; ++c) {
            const double pw = w_given_c(c, w) * pva;
            for (std::size_t e = 0; e < ne; ++e) t[flat++] = pw * source(a, c, e);
          }
        }
    }
  return FullJoint(Pmf::trusted({nu, nv, nw, na, nc, ne}, std::move(t)));
}

std::string to_string(BecBscRegime r) {
  switch (r) {
    case BecBscRegime::degraded: return "degraded";
    case BecBscRegime::less_noisy: return "less_noisy";
    case BecBscRegime::more_capable: return "more_capable";
    case BecBscRegime::none: return "none";
  }
  return "unknown";
}

BecBscRegime classify_bec_bsc_regime(double p, double eps) {
  require(p >= 0.0 && p <= 0.5, "BSC crossover p must lie in [0, 1/2]");
  require(eps >= 0.0 && eps <= 1.0, "BEC erasure eps must lie in [0, 1]");
  constexpr double slack = 1e-12;
  if (eps <= 2.0 * p + slack) return BecBscRegime::degraded;
  if (eps <= 4.0 * p * (1.0 - p) + slack) return BecBscRegime::less_noisy;
  if (eps <= h2(p) + slack) return BecBscRegime::more_capable;
  return BecBscRegime::none;
}

bool is_more_capable(const JointSource& source) {
  const auto& t = source.pmf();
  return t.mutual_information(JointSource::A, JointSource::C) >=
         t.mutual_information(JointSource::A, JointSource::E) - kClampTol;
}

}  // namespace equivoc
