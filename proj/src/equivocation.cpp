#include <algorithm>
#include <cmath>
#include <sstream>

#include "equivoc/simulator.hpp"

namespace equivoc {

namespace {

double checked_power(std::size_t base, int n, double budget, const char* what) {
  const double size = std::pow(static_cast<double>(base), n);
  if (size > budget) {
    std::ostringstream os;
    os << what << " enumeration needs " << size << " states, above the budget of " << budget;
    throw BudgetError(os.str());
  }
  return size;
}

double neg_xlogx(double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; }

// Maps a weight tensor over A^n to the induced mass over E^n, one axis at a
// time: out[.., e, ..] = sum_a in[.., a, ..] p(e|a). `work` is scratch.
void product_transform(std::vector<double>& buf, std::vector<double>& work, std::size_t na,
                       std::size_t ne, int n, const std::vector<double>& e_given_a) {
  // Shape before step k: ne^k (done axes, leading) x na (current) x na^(n-k-1).
  std::size_t lead = 1, trail = 1;
  for (int k = 1; k < n; ++k) trail *= na;
  for (int k = 0; k < n; ++k) {
    work.assign(lead * ne * trail, 0.0);
    for (std::size_t l = 0; l < lead; ++l)
      for (std::size_t a = 0; a < na; ++a) {
        const double* src = buf.data() + (l * na + a) * trail;
        for (std::size_t e = 0; e < ne; ++e) {
          const double q = e_given_a[a * ne + e];
          if (q == 0.0) continue;
          double* dst = work.data() + (l * ne + e) * trail;
          for (std::size_t t = 0; t < trail; ++t) dst[t] += q * src[t];
        }
      }
    buf.swap(work);
    lead *= ne;
    if (k + 1 < n) trail /= na;
  }
}

struct Enumeration {
  std::size_t na = 0, ne = 0, NA = 0, NE = 0;
  std::vector<double> p_seq;      // p(a^n)
  std::vector<double> e_given_a;  // |A| x |E|
  std::vector<double> h_e_given_a;
  std::vector<std::uint32_t> messages;          // distinct J values, ascending
  std::vector<std::size_t> offsets, members;    // CSR preimages
  double h_ae = 0.0;
};

Enumeration enumerate(std::span<const std::uint32_t> encoder, const JointSource& s, int n, double budget) {
  require(n >= 1, "blocklength must be positive");
  Enumeration en;
  en.na = s.na();
  en.ne = s.ne();
  en.NA = static_cast<std::size_t>(checked_power(en.na, n, budget, "source"));
  en.NE = static_cast<std::size_t>(checked_power(en.ne, n, budget, "eavesdropper"));
  require(encoder.size() == en.NA, "encoder table must cover all |A|^n sequences");
  const auto pa = s.marginal_a();
  const Channel ea = s.e_given_a();
  en.e_given_a.assign(ea.data().begin(), ea.data().end());
  en.h_e_given_a.resize(en.na);
  for (std::size_t a = 0; a < en.na; ++a) {
    double h = 0.0;
    for (std::size_t e = 0; e < en.ne; ++e) h += neg_xlogx(ea(a, e));
    en.h_e_given_a[a] = h;
  }
  {
    std::vector<double> pae(en.na * en.ne, 0.0);
    for (std::size_t a = 0; a < en.na; ++a)
      for (std::size_t c = 0; c < s.nc(); ++c)
        for (std::size_t e = 0; e < en.ne; ++e) pae[a * en.ne + e] += s(a, c, e);
    for (double x : pae) en.h_ae += neg_xlogx(x);
  }
  en.p_seq.assign(en.NA, 1.0);
  for (std::size_t idx = 0; idx < en.NA; ++idx) {
    std::size_t rest = idx;
    double p = 1.0;
    for (int i = 0; i < n; ++i) {
      p *= pa[rest % en.na];
      rest /= en.na;
    }
    en.p_seq[idx] = p;
  }
  en.messages.assign(encoder.begin(), encoder.end());
  std::sort(en.messages.begin(), en.messages.end());
  en.messages.erase(std::unique(en.messages.begin(), en.messages.end()), en.messages.end());
  en.offsets.assign(en.messages.size() + 1, 0);
  for (auto j : encoder) {
    const auto pos = std::lower_bound(en.messages.begin(), en.messages.end(), j) - en.messages.begin();
    ++en.offsets[pos + 1];
  }
  for (std::size_t k = 0; k < en.messages.size(); ++k) en.offsets[k + 1] += en.offsets[k];
  en.members.resize(en.NA);
  std::vector<std::size_t> fill(en.offsets.begin(), en.offsets.end() - 1);
  for (std::size_t idx = 0; idx < en.NA; ++idx) {
    const auto pos = std::lower_bound(en.messages.begin(), en.messages.end(), encoder[idx]) - en.messages.begin();
    en.members[fill[pos]++] = idx;
  }
  return en;
}

// Symbol of sequence `idx` at position i (first symbol most significant).
std::size_t symbol_at(std::size_t idx, std::size_t alphabet, int n, int i) {
  for (int k = n - 1; k > i; --k) idx /= alphabet;
  return idx % alphabet;
}

}  // namespace

std::vector<Symbol> decode_sequence_index(std::size_t index, std::size_t alphabet, int n) {
  std::vector<Symbol> seq(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    seq[i] = static_cast<Symbol>(index % alphabet);
    index /= alphabet;
  }
  return seq;
}

std::vector<std::uint32_t> encoder_map(const CodeInstance& inst, std::size_t na) {
  const int n = inst.config.n;
  const auto NA = static_cast<std::size_t>(checked_power(na, n, inst.config.equivocation_budget, "source"));
  require(static_cast<double>(inst.bins1) * static_cast<double>(inst.bins2) < 4294967296.0,
          "message set too large for the encoder table");
  std::vector<std::uint32_t> map(NA);
  const long total = static_cast<long>(NA);
#pragma omp parallel for schedule(dynamic, 256)
  for (long idx = 0; idx < total; ++idx) {
    const auto a = decode_sequence_index(static_cast<std::size_t>(idx), na, n);
    map[idx] = static_cast<std::uint32_t>(encode_alice(a, inst).index(inst));
  }
  return map;
}

double exact_equivocation(std::span<const std::uint32_t> encoder, const JointSource& s, int n, double budget) {
  const Enumeration en = enumerate(encoder, s, n, budget);
  const long M = static_cast<long>(en.messages.size());
  std::vector<double> contrib(M, 0.0);
#pragma omp parallel
  {
    std::vector<double> buf, work;
#pragma omp for schedule(dynamic, 1)
    for (long k = 0; k < M; ++k) {
      const std::size_t b = en.offsets[k], e = en.offsets[k + 1];
      if (e - b == 1) {
        // Single preimage: H of p(a^n) p(e^n|a^n) in closed form.
        const std::size_t idx = en.members[b];
        const double p = en.p_seq[idx];
        if (p <= 0.0) continue;
        double h_cond = 0.0;
        std::size_t rest = idx;
        for (int i = 0; i < n; ++i) {
          h_cond += en.h_e_given_a[rest % en.na];
          rest /= en.na;
        }
        contrib[k] = p * (-std::log2(p) + h_cond);
        continue;
      }
      buf.assign(en.NA, 0.0);
      for (std::size_t m = b; m < e; ++m) buf[en.members[m]] = en.p_seq[en.members[m]];
      product_transform(buf, work, en.na, en.ne, n, en.e_given_a);
      double h = 0.0;
      for (double q : buf) h += neg_xlogx(q);
      contrib[k] = h;
    }
  }
  double h_je = 0.0;
  for (double c : contrib) h_je += c;
  const double value = (n * en.h_ae - h_je) / n;
  return value < 0.0 && value > -1e-12 ? 0.0 : value;
}

double exact_equivocation(const CodeInstance& inst, const JointSource& source) {
  const auto map = encoder_map(inst, source.na());
  return exact_equivocation(map, source, inst.config.n, inst.config.equivocation_budget);
}

double exact_equivocation_reference(std::span<const std::uint32_t> encoder, const JointSource& s, int n,
                                    double budget) {
  const Enumeration en = enumerate(encoder, s, n, budget);
  checked_power(en.NA * en.NE, 1, budget, "joint (a^n, e^n)");
  std::vector<double> joint(en.messages.size() * en.NE, 0.0);
  for (std::size_t idx = 0; idx < en.NA; ++idx) {
    const auto a = decode_sequence_index(idx, en.na, n);
    const auto j = std::lower_bound(en.messages.begin(), en.messages.end(), encoder[idx]) - en.messages.begin();
    for (std::size_t eidx = 0; eidx < en.NE; ++eidx) {
      const auto e = decode_sequence_index(eidx, en.ne, n);
      double p = en.p_seq[idx];
      for (int i = 0; i < n; ++i) p *= en.e_given_a[a[i] * en.ne + e[i]];
      joint[j * en.NE + eidx] += p;
    }
  }
  double h_je = 0.0;
  for (double q : joint) h_je += neg_xlogx(q);
  return std::max(0.0, (n * en.h_ae - h_je) / n);
}

double eve_map_ber(std::span<const std::uint32_t> encoder, const JointSource& s, int n, double budget) {
  const Enumeration en = enumerate(encoder, s, n, budget);
  const long M = static_cast<long>(en.messages.size());
  std::vector<double> contrib(M, 0.0);
#pragma omp parallel
  {
    std::vector<double> buf, work;
    std::vector<std::vector<double>> per_symbol(en.na);
#pragma omp for schedule(dynamic, 1)
    for (long k = 0; k < M; ++k) {
      double err = 0.0;
      for (int i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < en.na; ++a) {
          buf.assign(en.NA, 0.0);
          for (std::size_t m = en.offsets[k]; m < en.offsets[k + 1]; ++m) {
            const std::size_t idx = en.members[m];
            if (symbol_at(idx, en.na, n, i) == a) buf[idx] = en.p_seq[idx];
          }
          product_transform(buf, work, en.na, en.ne, n, en.e_given_a);
          per_symbol[a] = buf;
        }
        for (std::size_t e = 0; e < en.NE; ++e) {
          double total = 0.0, best = 0.0;
          for (std::size_t a = 0; a < en.na; ++a) {
            total += per_symbol[a][e];
            best = std::max(best, per_symbol[a][e]);
          }
          err += total - best;
        }
      }
      contrib[k] = err;
    }
  }
  double err = 0.0;
  for (double c : contrib) err += c;
  return err / n;
}

}  // namespace equivoc
