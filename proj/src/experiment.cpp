#include <cmath>
#include <vector>

#include "equivoc/rng.hpp"
#include "equivoc/simulator.hpp"

namespace equivoc {

namespace {

constexpr std::uint64_t kDomainTrial = 0x7a1a1000;

bool within_budget(std::size_t alphabet, int n, double budget) {
  return std::pow(static_cast<double>(alphabet), n) <= budget;
}

}  // namespace

TrialOutcome run_trial(const JointSource& s, const CodeInstance& inst, std::uint64_t trial_index) {
  const int n = inst.config.n;
  auto gen = make_stream(inst.config.seed, kDomainTrial, trial_index);
  std::vector<Symbol> a(n), c(n);
  const auto probs = s.pmf().probs();
  const std::size_t nce = s.nc() * s.ne();
  for (int i = 0; i < n; ++i) {
    const std::size_t flat = sample_index(gen, probs);
    a[i] = static_cast<Symbol>(flat / nce);
    c[i] = static_cast<Symbol>((flat / s.ne()) % s.nc());
  }
  const AliceMessage alice = encode_alice(a, inst);
  const CharlieMessage charlie = encode_charlie(c, inst);
  const BobDecision bob = decode_bob(alice.r1, alice.r2, charlie.r, c, inst);

  TrialOutcome out;
  out.u_failed = alice.u_failed;
  out.v_failed = alice.v_failed;
  out.w_failed = charlie.failed;
  out.matches = bob.matches;
  out.decode_error = !bob.unique || bob.s1 != alice.s1 || bob.s2 != alice.s2 ||
                     (!inst.config.uncoded_side_info && bob.s != charlie.s);
  double d = 0.0;
  for (int i = 0; i < n; ++i) d += inst.distortion(a[i], bob.a_hat[i]);
  out.distortion = d / n;
  return out;
}

SimReport summarize(const JointSource& s, const CodeInstance& inst, std::span<const TrialOutcome> outcomes) {
  SimReport r;
  r.n = inst.config.n;
  r.trials = static_cast<long>(outcomes.size());
  r.delta = inst.delta;
  r.count1 = inst.count1;
  r.count2 = inst.count2;
  r.bins1 = inst.bins1;
  r.bins2 = inst.bins2;
  r.countw = inst.config.uncoded_side_info ? 0 : inst.countw;
  r.binsw = inst.config.uncoded_side_info ? 0 : inst.binsw;
  r.alice_rate = std::log2(static_cast<double>(inst.bins1) * static_cast<double>(inst.bins2)) / r.n;
  r.charlie_rate = inst.config.uncoded_side_info ? 0.0 : std::log2(static_cast<double>(inst.binsw)) / r.n;
  r.h_a_given_e = s.pmf().conditional_entropy(JointSource::A, JointSource::E);
  if (outcomes.empty()) return r;
  double dist = 0.0;
  long err = 0, fu = 0, fv = 0, fw = 0;
  for (const auto& o : outcomes) {
    dist += o.distortion;
    err += o.decode_error;
    fu += o.u_failed;
    fv += o.v_failed;
    fw += o.w_failed;
  }
  const double t = static_cast<double>(outcomes.size());
  r.empirical_distortion = dist / t;
  r.decode_error_rate = err / t;
  r.decode_error_stderr = std::sqrt(r.decode_error_rate * (1.0 - r.decode_error_rate) / t);
  r.u_failure_rate = fu / t;
  r.v_failure_rate = fv / t;
  r.w_failure_rate = fw / t;
  return r;
}

SimReport run_experiment(const JointSource& s, const AuxiliarySystem& sys, const CodeConfig& cfg, long trials,
                         const ExperimentOptions& opts, const DistortionMeasure& distortion) {
  require(trials >= 0, "trial count must be non-negative");
  const CodeInstance inst = generate_codebooks(s, sys, cfg, distortion);
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(dynamic, 16)
  for (long t = 0; t < trials; ++t) outcomes[t] = run_trial(s, inst, static_cast<std::uint64_t>(t));
  SimReport r = summarize(s, inst, outcomes);
  const bool enumerable =
      within_budget(s.na(), cfg.n, cfg.equivocation_budget) && within_budget(s.ne(), cfg.n, cfg.equivocation_budget);
  if ((opts.equivocation || opts.eve_ber) && enumerable) {
    const auto map = encoder_map(inst, s.na());
    if (opts.equivocation) r.exact_equivocation = exact_equivocation(map, s, cfg.n, cfg.equivocation_budget);
    if (opts.eve_ber) r.eve_ber = eve_map_ber(map, s, cfg.n, cfg.equivocation_budget);
  }
  if (opts.keep_trace) r.trace = std::move(outcomes);
  return r;
}

SimReport run_experiment_reference(const JointSource& s, const CodeInstance& inst, long trials) {
  require(trials >= 0, "trial count must be non-negative");
  std::vector<TrialOutcome> outcomes;
  outcomes.reserve(static_cast<std::size_t>(trials));
  for (long t = 0; t < trials; ++t) outcomes.push_back(run_trial(s, inst, static_cast<std::uint64_t>(t)));
  return summarize(s, inst, outcomes);
}

}  // namespace equivoc
