#include <cmath>
#include <optional>
#include <sstream>

#include "equivoc/rng.hpp"
#include "equivoc/simulator.hpp"

namespace equivoc {

namespace {

constexpr std::uint64_t kDomainU = 0xc0de0001;
constexpr std::uint64_t kDomainV = 0xc0de0002;
constexpr std::uint64_t kDomainW = 0xc0de0003;

std::vector<double> marginalize(const std::vector<double>& joint, const std::vector<std::size_t>& dims,
                                const std::vector<bool>& keep) {
  std::vector<std::size_t> kd;
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (keep[k]) kd.push_back(dims[k]);
  std::size_t out_size = 1;
  for (auto d : kd) out_size *= d;
  std::vector<double> out(out_size, 0.0);
  std::vector<std::size_t> idx(dims.size(), 0);
  for (std::size_t flat = 0; flat < joint.size(); ++flat) {
    std::size_t o = 0;
    for (std::size_t k = 0; k < dims.size(); ++k)
      if (keep[k]) o = o * dims[k] + idx[k];
    out[o] += joint[flat];
    for (std::size_t k = dims.size(); k-- > 0;) {
      if (++idx[k] < dims[k]) break;
      idx[k] = 0;
    }
  }
  return out;
}

void sample_typical(std::mt19937_64& gen, std::span<Symbol> out, std::span<const double> p, double delta,
                    long max_attempts) {
  for (long attempt = 0; attempt < max_attempts; ++attempt) {
    for (auto& s : out) s = static_cast<Symbol>(sample_index(gen, p));
    if (is_typical(out, p, delta)) return;
  }
  throw InfeasibleError("typical set too small for rejection sampling; increase n or delta");
}

void sample_conditionally_typical(std::mt19937_64& gen, std::span<Symbol> out, std::span<const Symbol> x,
                                  std::span<const double> y_given_x, std::size_t ny, double delta,
                                  long max_attempts) {
  for (long attempt = 0; attempt < max_attempts; ++attempt) {
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = static_cast<Symbol>(sample_index(gen, y_given_x.subspan(x[i] * ny, ny)));
    if (is_conditionally_typical(x, out, y_given_x, ny, delta)) return;
  }
  throw InfeasibleError("conditional typical set too small for rejection sampling; increase n or delta");
}

std::string empty_set_message(const char* which, int n, double delta) {
  std::ostringstream os;
  os << "typical set of " << which << " is empty at n = " << n << ", delta = " << delta
     << "; use a larger n or delta";
  return os.str();
}

}  // namespace

double CodeConfig::effective_delta() const { return delta > 0.0 ? delta : std::pow(n, -1.0 / 3.0); }

void CodeConfig::validate() const {
  require(n >= 1, "blocklength n must be positive");
  for (double r : {R1, R2, RC, S1, S2, SC}) require(std::isfinite(r) && r >= 0.0, "rates must be finite and non-negative");
  require(S1 >= R1 && S2 >= R2 && SC >= RC, "codebook rates must be at least the bin rates");
  require(!std::isnan(delta), "delta must be a number");
  require(max_attempts >= 1, "max_attempts must be positive");
}

std::size_t code_size(int n, double rate) {
  const double x = std::ceil(std::exp2(n * rate) - 1e-9);
  require(x < 9e15, "code size overflows");
  return std::max<std::size_t>(1, static_cast<std::size_t>(x));
}

SchemeLaws scheme_laws(const JointSource& s, const AuxiliarySystem& sys, bool uncoded) {
  const Channel& uv = sys.u_given_v;
  const Channel& va = sys.v_given_a;
  const Channel w_c = uncoded ? Channel::identity(s.nc()) : sys.w_given_c;
  require(va.input_size() == s.na() && uv.input_size() == va.output_size() && w_c.input_size() == s.nc(),
          "auxiliary channel shapes do not match the source");
  SchemeLaws L;
  L.na = s.na();
  L.nc = s.nc();
  L.nu = uv.output_size();
  L.nv = va.output_size();
  L.nw = w_c.output_size();
  require(L.na <= 256 && L.nc <= 256 && L.nu <= 256 && L.nv <= 256 && L.nw <= 256,
          "simulator alphabets are limited to 256 symbols");
  // p(u, v, w, a, c)
  std::vector<double> pac(L.na * L.nc, 0.0);
  for (std::size_t a = 0; a < L.na; ++a)
    for (std::size_t c = 0; c < L.nc; ++c)
      for (std::size_t e = 0; e < s.ne(); ++e) pac[a * L.nc + c] += s(a, c, e);
  const std::vector<std::size_t> dims = {L.nu, L.nv, L.nw, L.na, L.nc};
  std::vector<double> j(L.nu * L.nv * L.nw * L.na * L.nc, 0.0);
  for (std::size_t u = 0; u < L.nu; ++u)
    for (std::size_t v = 0; v < L.nv; ++v)
      for (std::size_t w = 0; w < L.nw; ++w)
        for (std::size_t a = 0; a < L.na; ++a)
          for (std::size_t c = 0; c < L.nc; ++c)
            j[(((u * L.nv + v) * L.nw + w) * L.na + a) * L.nc + c] =
                uv(v, u) * va(a, v) * w_c(c, w) * pac[a * L.nc + c];
  L.p_u = marginalize(j, dims, {true, false, false, false, false});
  L.p_w = marginalize(j, dims, {false, false, true, false, false});
  L.p_ua = marginalize(j, dims, {true, false, false, true, false});
  L.p_uva = marginalize(j, dims, {true, true, false, true, false});
  L.p_wc = marginalize(j, dims, {false, false, true, false, true});
  L.p_uvw = marginalize(j, dims, {true, true, true, false, false});
  const auto p_uv = marginalize(j, dims, {true, true, false, false, false});
  L.v_given_u.assign(L.nu * L.nv, 0.0);
  for (std::size_t u = 0; u < L.nu; ++u)
    for (std::size_t v = 0; v < L.nv; ++v)
      L.v_given_u[u * L.nv + v] = L.p_u[u] > 0.0 ? p_uv[u * L.nv + v] / L.p_u[u] : (v == 0 ? 1.0 : 0.0);
  L.va_given_u.assign(L.nu * L.nv * L.na, 0.0);
  for (std::size_t u = 0; u < L.nu; ++u)
    for (std::size_t va = 0; va < L.nv * L.na; ++va)
      L.va_given_u[u * L.nv * L.na + va] = L.p_u[u] > 0.0 ? L.p_uva[u * L.nv * L.na + va] / L.p_u[u] : 0.0;
  return L;
}

CodeInstance generate_codebooks(const JointSource& source, const AuxiliarySystem& sys, const CodeConfig& cfg,
                                const DistortionMeasure& distortion) {
  cfg.validate();
  CodeInstance inst;
  inst.distortion = distortion.alphabet_size() ? distortion : DistortionMeasure::hamming(source.na());
  require(inst.distortion.alphabet_size() == source.na(), "distortion alphabet must match |A|");
  inst.config = cfg;
  inst.delta = cfg.effective_delta();
  require(inst.delta > 0.0, "typicality slack must be positive");
  inst.laws = scheme_laws(source, sys, cfg.uncoded_side_info);
  const auto& L = inst.laws;
  const std::size_t nw_rec = cfg.uncoded_side_info ? source.nc() : L.nw;
  require(sys.reconstruction.v_size() == L.nv && sys.reconstruction.w_size() == nw_rec,
          "reconstruction map must be defined on V x W (V x C when uncoded)");
  for (auto sym : sys.reconstruction.table()) require(sym < source.na(), "reconstruction symbol outside A");
  inst.reconstruction = sys.reconstruction;
  {
    const auto pa = source.marginal_a();
    double best = kUnbounded;
    for (std::size_t ah = 0; ah < source.na(); ++ah) {
      double cost = 0.0;
      for (std::size_t a = 0; a < source.na(); ++a) cost += pa[a] * inst.distortion(a, ah);
      if (cost < best) {
        best = cost;
        inst.fallback_symbol = ah;
      }
    }
  }

  const int n = cfg.n;
  inst.count1 = code_size(n, cfg.S1);
  inst.count2 = code_size(n, cfg.S2);
  inst.bins1 = code_size(n, cfg.R1);
  inst.bins2 = code_size(n, cfg.R2);
  if (!cfg.uncoded_side_info) {
    inst.countw = code_size(n, cfg.SC);
    inst.binsw = code_size(n, cfg.RC);
  }
  require(inst.bins1 <= inst.count1 && inst.bins2 <= inst.count2 && inst.binsw <= inst.countw,
          "bin count exceeds codeword count");
  const double symbols = static_cast<double>(n) *
                         (static_cast<double>(inst.count1) * (1.0 + static_cast<double>(inst.count2)) +
                          (cfg.uncoded_side_info ? 0.0 : static_cast<double>(inst.countw)));
  if (symbols > cfg.max_codeword_symbols) {
    std::ostringstream os;
    os << "codebooks need " << symbols << " symbols, above the budget of " << cfg.max_codeword_symbols;
    throw BudgetError(os.str());
  }

  if (!typical_set_nonempty(L.p_u, n, inst.delta)) throw InfeasibleError(empty_set_message("U", n, inst.delta));
  if (!cfg.uncoded_side_info && !typical_set_nonempty(L.p_w, n, inst.delta))
    throw InfeasibleError(empty_set_message("W", n, inst.delta));

  inst.u.n = inst.v.n = static_cast<std::size_t>(n);
  inst.u.symbols.assign(inst.count1 * n, 0);
  inst.v.symbols.assign(inst.count1 * inst.count2 * n, 0);
  const long c1 = static_cast<long>(inst.count1);
  const std::size_t c2 = inst.count2;
  const double delta = inst.delta;
  const long attempts = cfg.max_attempts;
  // 0 ok, 1 empty conditional set, 2 rejection sampling exhausted.
  std::vector<char> status(inst.count1 + inst.countw, 0);

#pragma omp parallel for schedule(dynamic, 8)
  for (long s1 = 0; s1 < c1; ++s1) {
    try {
      std::span<Symbol> uw(inst.u.symbols.data() + s1 * n, n);
      auto gen = make_stream(cfg.seed, kDomainU, static_cast<std::uint64_t>(s1));
      sample_typical(gen, uw, L.p_u, delta, attempts);
      std::vector<int> counts(L.nu, 0);
      for (Symbol x : uw) ++counts[x];
      if (!conditional_typical_set_nonempty(counts, L.v_given_u, L.nv, n, delta)) {
        status[s1] = 1;
        continue;
      }
      for (std::size_t s2 = 0; s2 < c2; ++s2) {
        auto gv = make_stream(cfg.seed, kDomainV, static_cast<std::uint64_t>(s1) * c2 + s2);
        std::span<Symbol> vw(inst.v.symbols.data() + (s1 * c2 + s2) * n, n);
        sample_conditionally_typical(gv, vw, uw, L.v_given_u, L.nv, delta, attempts);
      }
    } catch (const InfeasibleError&) {
      status[s1] = 2;
    }
  }

  if (!cfg.uncoded_side_info) {
    inst.w.n = static_cast<std::size_t>(n);
    inst.w.symbols.assign(inst.countw * n, 0);
    const long cw = static_cast<long>(inst.countw);
#pragma omp parallel for schedule(dynamic, 8)
    for (long s = 0; s < cw; ++s) {
      try {
        auto gen = make_stream(cfg.seed, kDomainW, static_cast<std::uint64_t>(s));
        sample_typical(gen, std::span<Symbol>(inst.w.symbols.data() + s * n, n), L.p_w, delta, attempts);
      } catch (const InfeasibleError&) {
        status[inst.count1 + s] = 2;
      }
    }
  }
  for (char st : status) {
    if (st == 1) throw InfeasibleError(empty_set_message("V given a u-codeword", n, inst.delta));
    if (st == 2)
      throw InfeasibleError("typical set too small for rejection sampling; increase n, delta or max_attempts");
  }
  return inst;
}

namespace {

// Joint-type deviation over a product alphabet built from up to three sequences.
double joint_deviation(std::span<const Symbol> x, std::size_t ny, std::span<const Symbol> y, std::size_t nz,
                       std::span<const Symbol> z, std::span<const double> joint, std::vector<int>& counts) {
  counts.assign(joint.size(), 0);
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t idx = x[i];
    if (ny) idx = idx * ny + y[i];
    if (nz) idx = idx * nz + z[i];
    ++counts[idx];
  }
  return counts_deviation(counts, joint, static_cast<int>(n));
}

bool joint_counts_typical(std::span<const Symbol> x, std::size_t ny, std::span<const Symbol> y,
                          std::size_t nz, std::span<const Symbol> z, std::span<const double> joint,
                          double delta, std::vector<int>& counts) {
  return joint_deviation(x, ny, y, nz, z, joint, counts) <= delta + 1e-12;
}

// Deviation of (v, a) from p(v, a | u) given u.
double va_deviation_given_u(std::span<const Symbol> u, std::span<const Symbol> v, std::span<const Symbol> a,
                            const SchemeLaws& L, std::vector<int>& counts, std::vector<int>& u_counts) {
  const std::size_t ny = L.nv * L.na;
  counts.assign(L.nu * ny, 0);
  u_counts.assign(L.nu, 0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    ++counts[u[i] * ny + v[i] * L.na + a[i]];
    ++u_counts[u[i]];
  }
  return conditional_counts_deviation(counts, u_counts, L.va_given_u, ny, static_cast<int>(u.size()));
}

// Index of the codeword the rule selects among those with deviation <= delta.
template <class Deviation>
std::optional<std::size_t> select_codeword(std::size_t count, EncoderRule rule, double delta, Deviation&& dev) {
  std::optional<std::size_t> best;
  double best_dev = delta + 1e-12;
  for (std::size_t k = 0; k < count; ++k) {
    const double d = dev(k);
    if (d > delta + 1e-12) continue;
    if (rule == EncoderRule::first_typical) return k;
    if (!best || d < best_dev - 1e-12) {
      best = k;
      best_dev = d;
    }
  }
  return best;
}

}  // namespace

AliceMessage encode_alice(std::span<const Symbol> a, const CodeInstance& inst) {
  const auto& L = inst.laws;
  require(a.size() == inst.u.n, "source sequence length must equal n");
  for (Symbol x : a) require(x < L.na, "source symbol outside A");
  const EncoderRule rule = inst.config.encoder_rule;
  AliceMessage msg;
  std::vector<int> counts, u_counts;
  const auto s1 = select_codeword(inst.count1, rule, inst.delta, [&](std::size_t k) {
    return joint_deviation(inst.u[k], L.na, a, 0, {}, L.p_ua, counts);
  });
  msg.u_failed = !s1;
  if (s1) {
    msg.s1 = *s1;
    const auto u = inst.u[msg.s1];
    const auto s2 = select_codeword(inst.count2, rule, inst.delta, [&](std::size_t k) {
      return va_deviation_given_u(u, inst.v_word(msg.s1, k), a, L, counts, u_counts);
    });
    msg.v_failed = !s2;
    if (s2) msg.s2 = *s2;
  }
  msg.r1 = inst.bin1(msg.s1);
  msg.r2 = inst.bin2(msg.s2);
  return msg;
}

CharlieMessage encode_charlie(std::span<const Symbol> c, const CodeInstance& inst) {
  CharlieMessage msg;
  if (inst.config.uncoded_side_info) return msg;
  const auto& L = inst.laws;
  require(c.size() == inst.w.n, "side-information sequence length must equal n");
  for (Symbol x : c) require(x < L.nc, "side-information symbol outside C");
  std::vector<int> counts;
  const auto s = select_codeword(inst.countw, inst.config.encoder_rule, inst.delta, [&](std::size_t k) {
    return joint_deviation(inst.w[k], L.nc, c, 0, {}, L.p_wc, counts);
  });
  msg.failed = !s;
  if (s) msg.s = *s;
  msg.r = inst.binw(msg.s);
  return msg;
}

BobDecision decode_bob(std::size_t r1, std::size_t r2, std::size_t k, std::span<const Symbol> side,
                       const CodeInstance& inst) {
  require(r1 < inst.bins1 && r2 < inst.bins2 && k < inst.binsw, "bin index out of range");
  const auto& L = inst.laws;
  const std::size_t n = inst.u.n;
  const bool uncoded = inst.config.uncoded_side_info;
  if (uncoded) {
    require(side.size() == n, "uncoded side information must have length n");
    for (Symbol x : side) require(x < L.nc, "side-information symbol outside C");
  }
  BobDecision out;
  std::vector<int> counts;
  for (std::size_t s1 = r1; s1 < inst.count1; s1 += inst.bins1) {
    const auto u = inst.u[s1];
    for (std::size_t s2 = r2; s2 < inst.count2; s2 += inst.bins2) {
      const auto v = inst.v_word(s1, s2);
      const std::size_t w_begin = uncoded ? 0 : k, w_end = uncoded ? 1 : inst.countw,
                        w_step = uncoded ? 1 : inst.binsw;
      for (std::size_t s = w_begin; s < w_end; s += w_step) {
        const auto w = uncoded ? side : inst.w[s];
        if (!joint_counts_typical(u, L.nv, v, L.nw, w, L.p_uvw, inst.delta, counts)) continue;
        if (out.matches++ == 0) {
          out.s1 = s1;
          out.s2 = s2;
          out.s = s;
        }
      }
    }
  }
  out.unique = out.matches == 1;
  out.a_hat.assign(n, static_cast<Symbol>(inst.fallback_symbol));
  if (out.matches > 0) {
    const auto v = inst.v_word(out.s1, out.s2);
    const auto w = uncoded ? side : inst.w[out.s];
    for (std::size_t i = 0; i < n; ++i) out.a_hat[i] = static_cast<Symbol>(inst.reconstruction(v[i], w[i]));
  }
  return out;
}

}  // namespace equivoc
