#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "equivoc/optimizer.hpp"
#include "equivoc/simulator.hpp"

namespace equivoc {

using Json = nlohmann::ordered_json;

/// Parses a number or the token "h2p" (resolved against `p`).
double parse_eps(const Json& j, double p);
/// Reads a limit; null, "inf" or a missing key mean unbounded.
double parse_limit(const Json& j, const char* key);

/// {"alphabets": [na, nc, ne], "probs": [...]} with flat index
/// (a * nc + c) * ne + e, or {"p_a": [...], "c_given_a": [[...]], "e_given_a": [[...]]}.
JointSource source_from_json(const Json& j);
Json to_json(const JointSource& s);

Channel channel_from_json(const Json& j);
Json to_json(const Channel& ch);

/// "hamming" or an |A| x |A| matrix; `na` sizes the Hamming case.
DistortionMeasure distortion_from_json(const Json& j, std::size_t na);
Json to_json(const DistortionMeasure& d);

/// Channels plus "reconstruction": a |V| x |W| integer matrix, "optimal"
/// (distortion-optimal for the joint) or "erasure_fill".
AuxiliarySystem system_from_json(const Json& j, const JointSource& s, const DistortionMeasure& d,
                                 bool uncoded_side_info);
Json to_json(const AuxiliarySystem& sys);

/// Grid as an explicit list, {"log": [lo, hi, count]} or {"linear": [lo, hi, count]}.
std::vector<double> grid_from_json(const Json& j);

FrontierSpec frontier_spec_from_json(const Json& j);
Json to_json(const FrontierSpec& spec);

Json to_json(const FrontierResult& r);
/// Columns: sweep, R_A, R_C, D, Delta, feasible, then one per parameter name.
void write_csv(std::ostream& os, const FrontierResult& r);

/// Binary frontier side by side: D, Delta_opt, Delta_wz, alpha, beta, feasible.
Json binary_rows_to_json(std::span<const BinaryFrontierRow> rows, double p, double eps, double rate_cap);
void write_binary_csv(std::ostream& os, std::span<const BinaryFrontierRow> rows);

struct SimulationSpec {
  JointSource source;
  DistortionMeasure distortion;
  AuxiliarySystem system;
  CodeConfig code;
  long trials = 0;
  ExperimentOptions options;
  std::string trace_path;
  std::optional<double> single_letter_delta;  // reference value when known
};

SimulationSpec simulation_spec_from_json(const Json& j);
/// `timestamp` empty omits the field.
Json to_json(const SimReport& r, const std::string& timestamp = {});
void write_trace_csv(std::ostream& os, std::span<const TrialOutcome> trace);

/// "%.6g" formatting used by all CSV output; infinities print as inf.
std::string csv_number(double x);

}  // namespace equivoc
