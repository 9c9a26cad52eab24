#include "equivoc/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <ostream>
#include <string_view>

namespace equivoc {

namespace {

Json limit_json(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw ValidationError(std::string(what) + " must be a number");
  return j.get<double>();
}

std::size_t count(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw ValidationError(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
  return j.at(key);
}

void reject_unknown(const Json& j, std::initializer_list<std::string_view> allowed, const char* where) {
  if (!j.is_object()) throw ValidationError(std::string(where) + " must be an object");
  for (const auto& [key, value] : j.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ValidationError("unknown field '" + key + "' in " + where);
}

std::vector<double> numbers(const Json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& x : j) out.push_back(number(x, what));
  return out;
}

const char* model_name(FrontierSpec::Model m) {
  switch (m) {
    case FrontierSpec::Model::binary_bec_bsc: return "binary_bec_bsc";
    case FrontierSpec::Model::generic_discrete: return "generic_discrete";
    case FrontierSpec::Model::lossless: return "lossless";
    case FrontierSpec::Model::gaussian: return "gaussian";
  }
  return "unknown";
}

Json point_params(const FrontierPoint& pt) {
  Json params = Json::object();
  for (const auto& [k, v] : pt.params) params[k] = limit_json(v);
  return params;
}

}  // namespace

std::string csv_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

double parse_eps(const Json& j, double p) {
  if (j.is_string()) {
    if (j.get<std::string>() == "h2p") return h2(p);
    throw ValidationError("eps must be a number or \"h2p\"");
  }
  return number(j, "eps");
}

double parse_limit(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return kUnbounded;
  const Json& x = j.at(key);
  if (x.is_string() && x.get<std::string>() == "inf") return kUnbounded;
  return number(x, key);
}

JointSource source_from_json(const Json& j) {
  if (j.contains("alphabets")) {
    const auto& al = field(j, "alphabets");
    if (!al.is_array() || al.size() != 3) throw ValidationError("alphabets must be [|A|, |C|, |E|]");
    return JointSource(count(al[0], "|A|"), count(al[1], "|C|"), count(al[2], "|E|"),
                       numbers(field(j, "probs"), "probs"));
  }
  const auto pa = numbers(field(j, "p_a"), "p_a");
  return JointSource::from_channels(pa, channel_from_json(field(j, "c_given_a")),
                                    channel_from_json(field(j, "e_given_a")));
}

Json to_json(const JointSource& s) {
  Json j;
  j["alphabets"] = {s.na(), s.nc(), s.ne()};
  j["probs"] = std::vector<double>(s.pmf().probs().begin(), s.pmf().probs().end());
  return j;
}

Channel channel_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError("channel must be a non-empty array of rows");
  std::vector<std::vector<double>> rows;
  for (const auto& r : j) rows.push_back(numbers(r, "channel row"));
  return Channel(rows);
}

Json to_json(const Channel& ch) {
  Json rows = Json::array();
  for (std::size_t x = 0; x < ch.input_size(); ++x)
    rows.push_back(std::vector<double>(ch.row(x).begin(), ch.row(x).end()));
  return rows;
}

DistortionMeasure distortion_from_json(const Json& j, std::size_t na) {
  if (j.is_null() || (j.is_string() && j.get<std::string>() == "hamming")) return DistortionMeasure::hamming(na);
  if (!j.is_array()) throw ValidationError("distortion must be \"hamming\" or a matrix");
  std::vector<double> table;
  for (const auto& r : j) {
    const auto row = numbers(r, "distortion row");
    if (row.size() != j.size()) throw ValidationError("distortion matrix must be square");
    table.insert(table.end(), row.begin(), row.end());
  }
  return DistortionMeasure(j.size(), std::move(table));
}

Json to_json(const DistortionMeasure& d) {
  Json rows = Json::array();
  for (std::size_t a = 0; a < d.alphabet_size(); ++a) {
    Json r = Json::array();
    for (std::size_t b = 0; b < d.alphabet_size(); ++b) r.push_back(d(a, b));
    rows.push_back(r);
  }
  return rows;
}

AuxiliarySystem system_from_json(const Json& j, const JointSource& s, const DistortionMeasure& d,
                                 bool uncoded) {
  AuxiliarySystem sys;
  sys.u_given_v = channel_from_json(field(j, "u_given_v"));
  sys.v_given_a = channel_from_json(field(j, "v_given_a"));
  sys.w_given_c = j.contains("w_given_c") ? channel_from_json(j.at("w_given_c")) : Channel::identity(s.nc());
  require(sys.v_given_a.input_size() == s.na(), "v_given_a must have |A| rows");
  require(sys.u_given_v.input_size() == sys.v_given_a.output_size(), "u_given_v must have |V| rows");
  require(sys.w_given_c.input_size() == s.nc(), "w_given_c must have |C| rows");
  const Channel w_eff = uncoded ? Channel::identity(s.nc()) : sys.w_given_c;
  const Json rec = j.contains("reconstruction") ? j.at("reconstruction") : Json("optimal");
  if (rec.is_string()) {
    const auto name = rec.get<std::string>();
    if (name == "optimal") {
      sys.reconstruction =
          optimal_reconstruction(compose_full_joint(s, sys.u_given_v, sys.v_given_a, w_eff), d);
    } else if (name == "erasure_fill") {
      sys.reconstruction = Reconstruction::erasure_fill();
    } else {
      throw ValidationError("reconstruction must be a matrix, \"optimal\" or \"erasure_fill\"");
    }
  } else {
    if (!rec.is_array() || rec.empty()) throw ValidationError("reconstruction must be a |V| x |W| matrix");
    std::vector<std::size_t> map;
    for (const auto& r : rec) {
      if (!r.is_array() || r.size() != rec.front().size()) throw ValidationError("ragged reconstruction matrix");
      for (const auto& x : r) map.push_back(count(x, "reconstruction symbol"));
    }
    sys.reconstruction = Reconstruction(rec.size(), rec.front().size(), std::move(map));
  }
  return sys;
}

Json to_json(const AuxiliarySystem& sys) {
  Json j;
  j["u_given_v"] = to_json(sys.u_given_v);
  j["v_given_a"] = to_json(sys.v_given_a);
  j["w_given_c"] = to_json(sys.w_given_c);
  Json rec = Json::array();
  for (std::size_t v = 0; v < sys.reconstruction.v_size(); ++v) {
    Json r = Json::array();
    for (std::size_t w = 0; w < sys.reconstruction.w_size(); ++w) r.push_back(sys.reconstruction(v, w));
    rec.push_back(r);
  }
  j["reconstruction"] = rec;
  return j;
}

std::vector<double> grid_from_json(const Json& j) {
  if (j.is_array()) return numbers(j, "grid");
  for (const char* kind : {"log", "linear"}) {
    if (!j.is_object() || !j.contains(kind)) continue;
    const auto spec = numbers(j.at(kind), "grid spec");
    if (spec.size() != 3) throw ValidationError("grid spec must be [lo, hi, count]");
    const int n = static_cast<int>(spec[2]);
    require(n >= 1 && spec[2] == n, "grid count must be a positive integer");
    if (std::string(kind) == "log") return n == 1 ? std::vector<double>{spec[0]} : log_grid(spec[0], spec[1], n);
    std::vector<double> g(n);
    for (int k = 0; k < n; ++k) g[k] = n == 1 ? spec[0] : spec[0] + (spec[1] - spec[0]) * k / (n - 1);
    return g;
  }
  throw ValidationError("grid must be a list or {\"log\"|\"linear\": [lo, hi, count]}");
}

FrontierSpec frontier_spec_from_json(const Json& j) {
  FrontierSpec spec;
  reject_unknown(j,
                 {"model", "sweep", "search", "p", "eps", "binary", "source", "distortion", "caps", "fixed_w",
                  "allow_cap_override", "rho_C", "rho_E"},
                 "frontier config");
  const std::string model = field(j, "model").get<std::string>();
  if (model == "binary_bec_bsc") {
    spec.model = FrontierSpec::Model::binary_bec_bsc;
  } else if (model == "generic_discrete") {
    spec.model = FrontierSpec::Model::generic_discrete;
  } else if (model == "lossless") {
    spec.model = FrontierSpec::Model::lossless;
  } else if (model == "gaussian") {
    spec.model = FrontierSpec::Model::gaussian;
  } else {
    throw ValidationError("unknown model '" + model + "'");
  }
  const bool discrete = spec.model == FrontierSpec::Model::generic_discrete || spec.model == FrontierSpec::Model::lossless;
  if (!discrete)
    for (const char* k : {"source", "distortion", "caps", "fixed_w"})
      if (j.contains(k)) throw ValidationError(std::string("field '") + k + "' only applies to discrete sources");
  if (spec.model != FrontierSpec::Model::gaussian)
    for (const char* k : {"rho_C", "rho_E"})
      if (j.contains(k)) throw ValidationError(std::string("field '") + k + "' only applies to the gaussian model");

  const Json& sw = field(j, "sweep");
  reject_unknown(sw, {"variable", "values", "fixed"}, "sweep");
  spec.sweep.variable = field(sw, "variable").get<std::string>();
  spec.sweep.values = grid_from_json(field(sw, "values"));
  if (sw.contains("fixed")) {
    const Json& f = sw.at("fixed");
    reject_unknown(f, {"R_A", "R_C", "D"}, "sweep.fixed");
    spec.sweep.fixed = {parse_limit(f, "R_A"), parse_limit(f, "R_C"), parse_limit(f, "D")};
  }

  switch (spec.model) {
    case FrontierSpec::Model::binary_bec_bsc:
      spec.p = number(field(j, "p"), "p");
      spec.eps = parse_eps(field(j, "eps"), spec.p);
      if (j.contains("binary")) {
        const Json& b = j.at("binary");
        reject_unknown(b, {"coarse_alpha", "coarse_beta", "tol", "max_rounds"}, "binary");
        spec.binary.coarse_alpha = b.value("coarse_alpha", spec.binary.coarse_alpha);
        spec.binary.coarse_beta = b.value("coarse_beta", spec.binary.coarse_beta);
        spec.binary.tol = b.value("tol", spec.binary.tol);
        spec.binary.max_rounds = b.value("max_rounds", spec.binary.max_rounds);
      }
      break;
    case FrontierSpec::Model::generic_discrete:
    case FrontierSpec::Model::lossless: {
      spec.source = source_from_json(field(j, "source"));
      spec.distortion = distortion_from_json(j.contains("distortion") ? j.at("distortion") : Json(), spec.source.na());
      if (j.contains("caps")) {
        const auto c = j.at("caps");
        if (!c.is_array() || c.size() != 3) throw ValidationError("caps must be [|U|, |V|, |W|]");
        spec.caps = AlphabetCaps{count(c[0], "|U|"), count(c[1], "|V|"), count(c[2], "|W|")};
      }
      if (j.contains("fixed_w")) spec.inner.fixed_w = channel_from_json(j.at("fixed_w"));
      spec.inner.allow_cap_override = j.value("allow_cap_override", false);
      break;
    }
    case FrontierSpec::Model::gaussian:
      spec.rho_C = number(field(j, "rho_C"), "rho_C");
      spec.rho_E = number(field(j, "rho_E"), "rho_E");
      break;
  }
  if (j.contains("search")) {
    const Json& s = j.at("search");
    reject_unknown(s, {"multistart", "seed", "max_sweeps", "line_points", "golden_iters", "tol"}, "search");
    auto& o = spec.inner.search;
    o.multistart = s.value("multistart", o.multistart);
    o.seed = s.value("seed", o.seed);
    o.max_sweeps = s.value("max_sweeps", o.max_sweeps);
    o.line_points = s.value("line_points", o.line_points);
    o.golden_iters = s.value("golden_iters", o.golden_iters);
    o.tol = s.value("tol", o.tol);
  }
  validate(spec);
  return spec;
}

Json to_json(const FrontierSpec& spec) {
  Json j;
  j["model"] = model_name(spec.model);
  Json sw;
  sw["variable"] = spec.sweep.variable;
  sw["values"] = spec.sweep.values;
  sw["fixed"] = {{"R_A", limit_json(spec.sweep.fixed.R_A)},
                 {"R_C", limit_json(spec.sweep.fixed.R_C)},
                 {"D", limit_json(spec.sweep.fixed.D)}};
  j["sweep"] = sw;
  switch (spec.model) {
    case FrontierSpec::Model::binary_bec_bsc:
      j["p"] = spec.p;
      j["eps"] = spec.eps;
      j["binary"] = {{"coarse_alpha", spec.binary.coarse_alpha},
                     {"coarse_beta", spec.binary.coarse_beta},
                     {"tol", spec.binary.tol},
                     {"max_rounds", spec.binary.max_rounds}};
      break;
    case FrontierSpec::Model::generic_discrete:
    case FrontierSpec::Model::lossless:
      j["source"] = to_json(spec.source);
      j["distortion"] = to_json(spec.distortion);
      if (spec.caps) j["caps"] = {spec.caps->u, spec.caps->v, spec.caps->w};
      if (spec.inner.fixed_w) j["fixed_w"] = to_json(*spec.inner.fixed_w);
      j["allow_cap_override"] = spec.inner.allow_cap_override;
      break;
    case FrontierSpec::Model::gaussian:
      j["rho_C"] = spec.rho_C;
      j["rho_E"] = spec.rho_E;
      break;
  }
  const auto& o = spec.inner.search;
  j["search"] = {{"multistart", o.multistart}, {"seed", o.seed},          {"max_sweeps", o.max_sweeps},
                 {"line_points", o.line_points}, {"golden_iters", o.golden_iters}, {"tol", o.tol}};
  return j;
}

Json to_json(const FrontierResult& r) {
  Json j;
  j["model"] = r.model;
  j["sweep_variable"] = r.sweep_variable;
  Json prov = Json::object();
  for (const auto& [k, v] : r.provenance) prov[k] = v;
  j["provenance"] = prov;
  j["trace"] = Json::array();
  for (double x : r.trace) j["trace"].push_back(limit_json(x));
  Json pts = Json::array();
  for (const auto& pt : r.points) {
    Json p;
    p["sweep"] = pt.sweep;
    p["constraint"] = {{"R_A", limit_json(pt.constraint.R_A)},
                       {"R_C", limit_json(pt.constraint.R_C)},
                       {"D", limit_json(pt.constraint.D)}};
    p["feasible"] = pt.feasible;
    if (pt.feasible) {
      p["R_A"] = limit_json(pt.point.R_A);
      p["R_C"] = limit_json(pt.point.R_C);
      p["D"] = pt.point.D;
      p["Delta"] = pt.point.Delta;
      p["params"] = point_params(pt);
      if (pt.system) p["system"] = to_json(*pt.system);
      if (pt.u_given_a) p["u_given_a"] = to_json(*pt.u_given_a);
    }
    pts.push_back(p);
  }
  j["points"] = pts;
  return j;
}

void write_csv(std::ostream& os, const FrontierResult& r) {
  std::vector<std::string> names;
  for (const auto& pt : r.points)
    for (const auto& [k, v] : pt.params)
      if (std::find(names.begin(), names.end(), k) == names.end()) names.push_back(k);
  os << "sweep,R_A,R_C,D,Delta,feasible";
  for (const auto& k : names) os << ',' << k;
  os << '\n';
  for (const auto& pt : r.points) {
    os << csv_number(pt.sweep);
    if (pt.feasible) {
      os << ',' << csv_number(pt.point.R_A) << ',' << csv_number(pt.point.R_C) << ',' << csv_number(pt.point.D)
         << ',' << csv_number(pt.point.Delta) << ",1";
    } else {
      os << ",,,,,0";
    }
    for (const auto& k : names) {
      os << ',';
      for (const auto& [pk, pv] : pt.params)
        if (pk == k) os << csv_number(pv);
    }
    os << '\n';
  }
}

Json binary_rows_to_json(std::span<const BinaryFrontierRow> rows, double p, double eps, double rate_cap) {
  Json j;
  j["model"] = "binary_bec_bsc";
  j["p"] = p;
  j["eps"] = eps;
  j["rate_cap"] = limit_json(rate_cap);
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json x;
    x["D"] = r.D;
    x["feasible"] = r.optimal.feasible;
    if (r.optimal.feasible) {
      x["Delta_opt"] = r.optimal.bounds.Delta_max;
      x["Delta_wz"] = r.wyner_ziv.bounds.Delta_max;
      x["alpha"] = r.optimal.alpha;
      x["beta"] = r.optimal.beta;
      x["alpha_wz"] = r.wyner_ziv.alpha;
      x["R_A"] = r.optimal.bounds.R_A_min;
      x["D_min"] = r.optimal.bounds.D_min;
    }
    arr.push_back(x);
  }
  j["rows"] = arr;
  return j;
}

void write_binary_csv(std::ostream& os, std::span<const BinaryFrontierRow> rows) {
  os << "D,Delta_opt,Delta_wz,alpha,beta,feasible\n";
  for (const auto& r : rows) {
    os << csv_number(r.D);
    if (r.optimal.feasible) {
      os << ',' << csv_number(r.optimal.bounds.Delta_max) << ',' << csv_number(r.wyner_ziv.bounds.Delta_max) << ','
         << csv_number(r.optimal.alpha) << ',' << csv_number(r.optimal.beta) << ",1\n";
    } else {
      os << ",,,,,0\n";
    }
  }
}

SimulationSpec simulation_spec_from_json(const Json& j) {
  SimulationSpec spec;
  reject_unknown(j, {"binary", "source", "distortion", "system", "code", "seed", "trials", "equivocation", "eve_ber", "trace"},
                 "simulation config");
  const Json code = j.contains("code") ? j.at("code") : Json::object();
  reject_unknown(code,
                 {"n", "R1", "R2", "RC", "S1", "S2", "SC", "delta", "uncoded_side_info", "encoder_rule", "max_attempts",
                  "max_codeword_symbols", "equivocation_budget"},
                 "code");
  auto& c = spec.code;
  if (j.contains("binary")) {
    if (j.contains("source") || j.contains("system"))
      throw ValidationError("binary shorthand excludes explicit source and system");
    const Json& b = j.at("binary");
    reject_unknown(b, {"p", "eps", "alpha", "beta"}, "binary");
    const double p = number(field(b, "p"), "p");
    const double eps = parse_eps(field(b, "eps"), p);
    const double alpha = number(field(b, "alpha"), "alpha");
    const double beta = number(field(b, "beta"), "beta");
    spec.source = binary_bec_bsc_source(p, eps);
    spec.distortion = DistortionMeasure::hamming(2);
    const auto aux = binary_auxiliaries(alpha, beta);
    spec.system = {aux.u_given_v, aux.v_given_a, Channel::identity(3), aux.reconstruction};
    spec.single_letter_delta = binary_bec_bsc_point(BinaryParams(p, eps, alpha, beta)).Delta_max;
    c.uncoded_side_info = true;
  } else {
    spec.source = source_from_json(field(j, "source"));
    spec.distortion = distortion_from_json(j.contains("distortion") ? j.at("distortion") : Json(), spec.source.na());
    c.uncoded_side_info = code.value("uncoded_side_info", false);
    spec.system = system_from_json(field(j, "system"), spec.source, spec.distortion, c.uncoded_side_info);
  }
  c.uncoded_side_info = code.value("uncoded_side_info", c.uncoded_side_info);
  c.n = code.value("n", c.n);
  c.R1 = code.value("R1", 0.0);
  c.R2 = code.value("R2", 0.0);
  c.RC = code.value("RC", 0.0);
  c.S1 = code.value("S1", c.R1);
  c.S2 = code.value("S2", c.R2);
  c.SC = code.value("SC", c.RC);
  c.delta = code.value("delta", 0.0);
  const std::string rule = code.value("encoder_rule", std::string("first_typical"));
  if (rule == "first_typical")
    c.encoder_rule = EncoderRule::first_typical;
  else if (rule == "closest_type")
    c.encoder_rule = EncoderRule::closest_type;
  else
    throw ValidationError("encoder_rule must be first_typical or closest_type");
  c.max_attempts = code.value("max_attempts", c.max_attempts);
  c.max_codeword_symbols = code.value("max_codeword_symbols", c.max_codeword_symbols);
  c.equivocation_budget = code.value("equivocation_budget", c.equivocation_budget);
  c.seed = j.value("seed", c.seed);
  c.validate();
  spec.trials = j.value("trials", 0L);
  require(spec.trials >= 0, "trials must be non-negative");
  spec.options.equivocation = j.value("equivocation", true);
  spec.options.eve_ber = j.value("eve_ber", false);
  spec.trace_path = j.value("trace", std::string());
  spec.options.keep_trace = !spec.trace_path.empty();
  return spec;
}

Json to_json(const SimReport& r, const std::string& timestamp) {
  Json j;
  if (!timestamp.empty()) j["timestamp"] = timestamp;
  j["n"] = r.n;
  j["trials"] = r.trials;
  j["delta"] = r.delta;
  j["empirical_distortion"] = r.empirical_distortion;
  j["decode_error_rate"] = r.decode_error_rate;
  j["decode_error_stderr"] = r.decode_error_stderr;
  j["encode_failure_rates"] = {{"alice_u", r.u_failure_rate}, {"alice_v", r.v_failure_rate},
                               {"charlie", r.w_failure_rate}};
  j["codebook"] = {{"count1", r.count1}, {"count2", r.count2}, {"countw", r.countw},
                   {"bins1", r.bins1},   {"bins2", r.bins2},   {"binsw", r.binsw}};
  j["alice_rate"] = r.alice_rate;
  j["charlie_rate"] = r.charlie_rate;
  j["h_a_given_e"] = r.h_a_given_e;
  j["exact_equivocation"] = r.exact_equivocation ? Json(*r.exact_equivocation) : Json(nullptr);
  if (r.eve_ber) {
    j["eve_ber"] = *r.eve_ber;
    j["eve_ber_bound"] = h2(std::min(0.5, *r.eve_ber));
  }
  return j;
}

void write_trace_csv(std::ostream& os, std::span<const TrialOutcome> trace) {
  os << "trial,distortion,decode_error,matches,u_failed,v_failed,w_failed\n";
  for (std::size_t t = 0; t < trace.size(); ++t) {
    const auto& o = trace[t];
    os << t << ',' << csv_number(o.distortion) << ',' << o.decode_error << ',' << o.matches << ','
       << o.u_failed << ',' << o.v_failed << ',' << o.w_failed << '\n';
  }
}

}  // namespace equivoc
