#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "equivoc/prob_core.hpp"
#include "equivoc/regions.hpp"
#include "equivoc/typicality.hpp"

namespace equivoc {

/// Which jointly typical codeword an encoder sends when several qualify.
enum class EncoderRule {
  first_typical,  // lowest index
  closest_type,   // smallest joint-type deviation, ties to the lowest index
};

/// Block code parameters; all rates in bits per source symbol.
struct CodeConfig {
  int n = 8;
  double R1 = 0.0;  // u-bin rate
  double R2 = 0.0;  // v-bin rate
  double RC = 0.0;  // Charlie's bin rate
  double S1 = 0.0;  // u-codebook rate
  double S2 = 0.0;  // v-codebook rate, per u codeword
  double SC = 0.0;  // w-codebook rate
  double delta = 0.0;  // typicality slack; <= 0 selects n^{-1/3}
  std::uint64_t seed = 1;
  /// Bob observes C^n directly (W = C, no Charlie codebook).
  bool uncoded_side_info = false;
  EncoderRule encoder_rule = EncoderRule::first_typical;
  double max_codeword_symbols = 1 << 26;
  long max_attempts = 1'000'000;  // rejection-sampling draws per codeword
  double equivocation_budget = 1 << 24;  // max |A|^n and |E|^n

  double effective_delta() const;
  void validate() const;
};

/// ceil(2^{n rate}), at least 1.
std::size_t code_size(int n, double rate);

/// Flat store of equal-length sequences.
struct Codebook {
  std::size_t n = 0;
  std::vector<Symbol> symbols;
  std::size_t size() const { return n ? symbols.size() / n : 0; }
  std::span<const Symbol> operator[](std::size_t k) const { return {symbols.data() + k * n, n}; }
};

/// Single-letter distributions the typicality tests refer to.
struct SchemeLaws {
  std::size_t na = 0, nc = 0, nu = 0, nv = 0, nw = 0;
  std::vector<double> p_u;    // U
  std::vector<double> v_given_u;  // |U| x |V|
  std::vector<double> p_w;    // W
  std::vector<double> p_ua;   // (U, A)
  std::vector<double> p_uva;  // (U, V, A)
  std::vector<double> va_given_u;  // |U| x |V||A|
  std::vector<double> p_wc;   // (W, C)
  std::vector<double> p_uvw;  // (U, V, W)
};

SchemeLaws scheme_laws(const JointSource& source, const AuxiliarySystem& sys, bool uncoded_side_info);

struct CodeInstance {
  CodeConfig config;
  double delta = 0.0;
  SchemeLaws laws;
  Reconstruction reconstruction;
  DistortionMeasure distortion;
  std::size_t fallback_symbol = 0;  // best constant estimate of A
  Codebook u;                        // count1 codewords
  Codebook v;                        // count1 * count2 codewords, index s1 * count2 + s2
  Codebook w;                        // countw codewords (empty when uncoded)
  std::size_t count1 = 1, count2 = 1, countw = 1;
  std::size_t bins1 = 1, bins2 = 1, binsw = 1;

  std::size_t bin1(std::size_t s1) const { return s1 % bins1; }
  std::size_t bin2(std::size_t s2) const { return s2 % bins2; }
  std::size_t binw(std::size_t s) const { return s % binsw; }
  std::span<const Symbol> v_word(std::size_t s1, std::size_t s2) const { return v[s1 * count2 + s2]; }
};

/// Samples every codebook from its typical set (rejection from the i.i.d.
/// law) on per-codeword random streams. An empty distortion selects Hamming.
CodeInstance generate_codebooks(const JointSource& source, const AuxiliarySystem& sys,
                                const CodeConfig& cfg, const DistortionMeasure& distortion = {});

struct AliceMessage {
  std::size_t s1 = 0, s2 = 0;
  std::size_t r1 = 0, r2 = 0;
  bool u_failed = false;
  bool v_failed = false;
  std::size_t index(const CodeInstance& inst) const { return r1 * inst.bins2 + r2; }
};

struct CharlieMessage {
  std::size_t s = 0;
  std::size_t r = 0;
  bool failed = false;
};

struct BobDecision {
  bool unique = false;
  std::size_t matches = 0;
  std::size_t s1 = 0, s2 = 0, s = 0;
  std::vector<Symbol> a_hat;
};

AliceMessage encode_alice(std::span<const Symbol> a, const CodeInstance& inst);
CharlieMessage encode_charlie(std::span<const Symbol> c, const CodeInstance& inst);
/// `side` is C^n in the uncoded mode and ignored otherwise.
BobDecision decode_bob(std::size_t r1, std::size_t r2, std::size_t k, std::span<const Symbol> side,
                       const CodeInstance& inst);

// ---- Exact equivocation ----------------------------------------------------------

/// All |A|^n source sequences, first symbol most significant.
std::vector<Symbol> decode_sequence_index(std::size_t index, std::size_t alphabet, int n);

/// J = f(a^n) for every a^n in enumeration order.
std::vector<std::uint32_t> encoder_map(const CodeInstance& inst, std::size_t na);

/// H(A^n | J, E^n) / n for a deterministic encoder given as a table over all
/// a^n. Parallel over messages; the law of E^n given J = j comes from an
/// axis-by-axis product transform of the preimage weights.
double exact_equivocation(std::span<const std::uint32_t> encoder, const JointSource& source, int n,
                          double budget = 1 << 24);
double exact_equivocation(const CodeInstance& inst, const JointSource& source);

/// Serial reference: accumulates p(j, e^n) over all (a^n, e^n) pairs; the
/// budget bounds |A|^n |E|^n.
double exact_equivocation_reference(std::span<const std::uint32_t> encoder, const JointSource& source,
                                     int n, double budget = 1 << 20);

/// Mean bit error rate of Eve's symbol-wise MAP estimate of A_i from (J, E^n).
double eve_map_ber(std::span<const std::uint32_t> encoder, const JointSource& source, int n,
                   double budget = 1 << 16);

// ---- Experiments --------------------------------------------------------------------

struct TrialOutcome {
  double distortion = 0.0;
  bool decode_error = false;
  bool u_failed = false, v_failed = false, w_failed = false;
  std::size_t matches = 0;
};

struct SimReport {
  int n = 0;
  long trials = 0;
  double delta = 0.0;
  double empirical_distortion = 0.0;
  double decode_error_rate = 0.0;
  double decode_error_stderr = 0.0;
  double u_failure_rate = 0.0, v_failure_rate = 0.0, w_failure_rate = 0.0;
  double alice_rate = 0.0;    // log2(bins1 bins2) / n
  double charlie_rate = 0.0;  // log2(binsw) / n, 0 when uncoded
  std::size_t count1 = 0, count2 = 0, countw = 0, bins1 = 0, bins2 = 0, binsw = 0;
  double h_a_given_e = 0.0;
  std::optional<double> exact_equivocation;
  std::optional<double> eve_ber;
  std::vector<TrialOutcome> trace;
};

struct ExperimentOptions {
  bool equivocation = true;
  bool eve_ber = false;
  bool keep_trace = false;
};

SimReport run_experiment(const JointSource& source, const AuxiliarySystem& sys, const CodeConfig& cfg,
                         long trials, const ExperimentOptions& opts = {},
                         const DistortionMeasure& distortion = {});
SimReport summarize(const JointSource& source, const CodeInstance& inst,
                    std::span<const TrialOutcome> outcomes);

/// One trial on its own random stream.
TrialOutcome run_trial(const JointSource& source, const CodeInstance& inst, std::uint64_t trial_index);

/// Serial reference loop over trials (same per-trial streams).
SimReport run_experiment_reference(const JointSource& source, const CodeInstance& inst, long trials);

}  // namespace equivoc
