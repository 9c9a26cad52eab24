#include "equivoc/commands.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "equivoc/io.hpp"
#include "equivoc/simulator.hpp"

namespace equivoc {

// ---- reproduction reports ------------------------------------------------------------

double ReproCell::delta() const { return std::abs(computed - expected); }

bool ReproReport::ok() const {
  for (const auto& c : cells)
    if (!c.ok()) return false;
  for (const auto& [name, pass] : checks)
    if (!pass) return false;
  return true;
}

std::vector<std::string> ReproReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : cells)
    if (!c.ok()) out.push_back(c.name);
  for (const auto& [name, pass] : checks)
    if (!pass) out.push_back(name);
  return out;
}

void ReproReport::print(std::ostream& os) const {
  os << std::left << std::setw(28) << "cell" << std::right << std::setw(12) << "computed" << std::setw(12)
     << "expected" << std::setw(12) << "|delta|" << std::setw(10) << "tol"
     << "  status\n";
  for (const auto& c : cells) {
    os << std::left << std::setw(28) << c.name << std::right << std::fixed << std::setprecision(6)
       << std::setw(12) << c.computed << std::setw(12) << c.expected << std::setw(12) << c.delta()
       << std::setw(10) << std::setprecision(4) << c.tol << "  " << (c.ok() ? "ok" : "FAIL") << '\n';
  }
  os.unsetf(std::ios::floatfield);
  for (const auto& [name, pass] : checks) os << std::left << std::setw(74) << name << "  " << (pass ? "ok" : "FAIL") << '\n';
}

ReproReport reproduce_table3() {
  constexpr double p = 0.1;
  const double eps = h2(p);
  constexpr double cap = 0.375;
  BinarySearchOptions wz;
  wz.wyner_ziv = true;

  const BinaryOptimum lossless = binary_optimum(p, eps, 0.0, kUnbounded);
  const BinaryOptimum slepian_wolf = binary_optimum(p, eps, 0.0, kUnbounded, wz);
  const double alpha_lo = binary_alpha_range(eps, eps / 2, cap).first;
  const double d_cap = eps * alpha_lo;
  const BinaryOptimum lossy = binary_optimum(p, eps, d_cap, cap);
  const BinaryOptimum lossy_wz = binary_optimum(p, eps, d_cap, cap, wz);
  for (const auto* o : {&lossless, &slepian_wolf, &lossy, &lossy_wz})
    if (!o->feasible) throw InfeasibleError("binary example point is infeasible");

  ReproReport r;
  auto cell = [&](std::string name, double computed, double expected, double tol) {
    r.cells.push_back({std::move(name), computed, expected, tol});
  };
  cell("secure D=0: R", lossless.bounds.R_A_min, 0.469, kTable3Tol);
  cell("secure D=0: D", lossless.bounds.D_min, 0.0, kTable3Tol);
  cell("secure D=0: Delta", lossless.bounds.Delta_max, 0.039, kTable3Tol);
  cell("secure D=0: alpha", lossless.alpha, 0.0, kTable3ParamTol);
  cell("secure D=0: beta", lossless.beta, 0.078, kTable3ParamTol);
  cell("slepian-wolf: R", slepian_wolf.bounds.R_A_min, 0.469, kTable3Tol);
  cell("slepian-wolf: Delta", slepian_wolf.bounds.Delta_max, 0.0, kTable3Tol);
  cell("secure R=0.375: R", lossy.bounds.R_A_min, 0.375, kTable3Tol);
  cell("secure R=0.375: D", lossy.bounds.D_min, 0.015, kTable3Tol);
  cell("secure R=0.375: Delta", lossy.bounds.Delta_max, 0.133, kTable3Tol);
  cell("secure R=0.375: alpha", lossy.alpha, 0.031, kTable3ParamTol);
  cell("secure R=0.375: beta", lossy.beta, 0.050, kTable3ParamTol);
  cell("wyner-ziv R=0.375: D", lossy_wz.bounds.D_min, 0.015, kTable3Tol);
  cell("wyner-ziv R=0.375: Delta", lossy_wz.bounds.Delta_max, 0.126, kTable3Tol);
  cell("wyner-ziv R=0.375: alpha", lossy_wz.alpha, 0.031, kTable3ParamTol);
  return r;
}

Fig10Result reproduce_fig10(const Fig10Options& o) {
  require(o.points >= 2, "fig10 needs at least two grid points");
  constexpr double p = 0.1;
  const double eps = h2(p);
  Fig10Result res;
  const auto grid = log_grid(o.d_min, o.d_max, o.points);
  res.rows = binary_sweep(p, eps, grid, kUnbounded);
  res.merge_threshold = binary_merge_threshold(p, eps, res.rows, o.merge_gap);

  bool dominance = true, coincide = true, separated = false, monotone = true;
  double max_gap_above = 0.0, max_gap_below = 0.0;
  for (std::size_t k = 0; k < res.rows.size(); ++k) {
    const auto& row = res.rows[k];
    const double gap = row.optimal.bounds.Delta_max - row.wyner_ziv.bounds.Delta_max;
    dominance = dominance && row.optimal.feasible && gap >= 0.0;
    if (row.D >= o.coincide_from) {
      max_gap_above = std::max(max_gap_above, gap);
      coincide = coincide && gap <= o.coincide_tol;
    }
    if (row.D < o.separate_below) {
      max_gap_below = std::max(max_gap_below, gap);
      separated = separated || gap > o.separate_gap;
    }
    if (k > 0)
      monotone = monotone &&
                 row.optimal.bounds.Delta_max >= res.rows[k - 1].optimal.bounds.Delta_max - o.monotone_tol;
  }
  auto& r = res.report;
  r.cells.push_back({"merge threshold D", res.merge_threshold, o.merge_expected, o.merge_tol});
  r.cells.push_back({"max gap for D >= " + csv_number(o.coincide_from), max_gap_above, 0.0, o.coincide_tol});
  r.checks.emplace_back("optimal >= wyner-ziv at every grid point", dominance);
  r.checks.emplace_back("curves coincide above " + csv_number(o.coincide_from), coincide);
  r.checks.emplace_back("gap > " + csv_number(o.separate_gap) + " below D = " + csv_number(o.separate_below) +
                            " (max " + csv_number(max_gap_below) + ")",
                        separated);
  r.checks.emplace_back("optimal curve nondecreasing in D", monotone);
  return res;
}

// ---- output re-validation --------------------------------------------------------------

namespace {

constexpr double kRecheckTol = 1e-7;

void recheck(bool cond, const std::string& what) {
  if (!cond) throw std::logic_error("emitted row failed re-validation: " + what);
}

void recheck_binary(double p, double eps, double cap, double D, const BinaryOptimum& o, bool wyner_ziv) {
  if (!o.feasible) return;
  const BinaryBounds b = binary_bec_bsc_point(BinaryParams(p, eps, o.alpha, o.beta));
  recheck(std::abs(b.Delta_max - o.bounds.Delta_max) <= 1e-12, "binary Delta mismatch");
  recheck(b.D_min <= D + kConstraintSlack, "binary distortion above target");
  recheck(b.R_A_min <= cap + kConstraintSlack, "binary rate above cap");
  recheck(!wyner_ziv || o.beta == 0.0, "Wyner-Ziv row with nonzero beta");
}

void recheck_rows(double p, double eps, double cap, std::span<const BinaryFrontierRow> rows) {
  for (const auto& r : rows) {
    recheck_binary(p, eps, cap, r.D, r.optimal, false);
    recheck_binary(p, eps, cap, r.D, r.wyner_ziv, true);
    recheck(!r.optimal.feasible || r.optimal.bounds.Delta_max >= r.wyner_ziv.bounds.Delta_max,
            "optimal below Wyner-Ziv");
  }
}

bool within(const RegionPoint& pt, const RateConstraint& c) {
  return pt.R_A <= c.R_A + kConstraintSlack && pt.R_C <= c.R_C + kConstraintSlack &&
         pt.D <= c.D + kConstraintSlack;
}

void recheck_frontier(const FrontierSpec& spec, const FrontierResult& res) {
  for (const auto& pt : res.points) {
    if (!pt.feasible) continue;
    switch (spec.model) {
      case FrontierSpec::Model::binary_bec_bsc: {
        double alpha = -1.0, beta = -1.0;
        for (const auto& [k, v] : pt.params) {
          if (k == "alpha") alpha = v;
          if (k == "beta") beta = v;
        }
        const BinaryBounds b = binary_bec_bsc_point(BinaryParams(spec.p, spec.eps, alpha, beta));
        recheck(std::abs(b.Delta_max - pt.point.Delta) <= 1e-12, "binary Delta mismatch");
        recheck(b.D_min <= pt.constraint.D + kConstraintSlack, "binary distortion above target");
        recheck(b.R_A_min <= pt.constraint.R_A + kConstraintSlack, "binary rate above cap");
        break;
      }
      case FrontierSpec::Model::generic_discrete: {
        recheck(pt.system.has_value(), "generic point without a system");
        const InnerBounds b = inner_bound_point(spec.source, spec.distortion, *pt.system);
        recheck(b.admits(pt.point, kRecheckTol), "point outside the inner bound of its system");
        recheck(within(pt.point, pt.constraint), "point violates its constraint");
        break;
      }
      case FrontierSpec::Model::lossless: {
        recheck(pt.u_given_a.has_value(), "lossless point without a channel");
        const LosslessBounds b = lossless_region_point(spec.source, *pt.u_given_a);
        recheck(pt.point.R_A >= b.R_A_min - kRecheckTol && pt.point.R_C >= b.R_C_min - kRecheckTol &&
                    pt.point.R_A + pt.point.R_C >= b.sum_min - kRecheckTol &&
                    pt.point.Delta <= b.Delta_max + kRecheckTol,
                "point outside the lossless region of its channel");
        recheck(within(pt.point, pt.constraint), "point violates its constraint");
        break;
      }
      case FrontierSpec::Model::gaussian: {
        const GaussianBounds g = gaussian_inner(GaussianParams(spec.rho_C, spec.rho_E), pt.point.R_C, pt.point.D);
        recheck(std::abs(g.R_A_min - pt.point.R_A) <= 1e-12 && std::abs(g.Delta_max - pt.point.Delta) <= 1e-12,
                "gaussian point mismatch");
        break;
      }
    }
  }
}

// ---- command plumbing ------------------------------------------------------------------

struct Globals {
  std::uint64_t seed = 20111;
  bool seed_given = false;
  int threads = 0;
  std::string format;
  std::string out_path;
};

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
    stream_ = &file_;
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::string format_or(const Globals& g, const char* fallback) { return g.format.empty() ? fallback : g.format; }

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("config '" + path + "': " + e.what());
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

double eps_from_string(const std::string& s, double p) {
  if (s == "h2p") return h2(p);
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ValidationError("--eps must be a number or h2p");
}

bool all_infeasible(const FrontierResult& r) {
  for (const auto& pt : r.points)
    if (pt.feasible) return false;
  return true;
}

int emit_frontier(const Globals& g, const FrontierSpec& spec, const FrontierResult& res, std::ostream& out) {
  recheck_frontier(spec, res);
  Output o(g.out_path, out);
  if (format_or(g, "csv") == "json") {
    Json j = to_json(res);
    j["spec"] = to_json(spec);
    o.get() << j.dump(2) << '\n';
  } else {
    write_csv(o.get(), res);
  }
  return all_infeasible(res) ? kExitInfeasible : kExitOk;
}

struct BinaryArgs {
  double p = 0.1;
  std::string eps = "h2p";
  double d_min = 1e-4;
  double d_max = 0.0;
  int d_points = 60;
  std::vector<double> d_list;
  double rate_cap = kUnbounded;
  CLI::Option* d_min_opt = nullptr;
  CLI::Option* d_max_opt = nullptr;
  CLI::Option* d_points_opt = nullptr;
  CLI::Option* rate_cap_opt = nullptr;
};

int cmd_binary(const Globals& g, const BinaryArgs& a, std::ostream& out) {
  const double eps = eps_from_string(a.eps, a.p);
  require(a.p >= 0.0 && a.p <= 0.5, "p must lie in [0, 1/2]");
  require(eps >= 0.0 && eps <= 1.0, "eps must lie in [0, 1]");
  const bool range_given = a.d_min_opt->count() || a.d_max_opt->count() || a.d_points_opt->count();
  require(a.d_list.empty() || !range_given, "--d excludes --d-min/--d-max/--d-points");
  std::vector<double> grid;
  if (!a.d_list.empty()) {
    grid = a.d_list;
  } else if (a.rate_cap_opt->count() && !range_given) {
    require(a.rate_cap >= 0.0, "rate cap must be non-negative");
    grid = {eps > 0.0 ? eps * binary_alpha_range(eps, eps / 2, a.rate_cap).first : 0.0};
  } else {
    const double hi = a.d_max_opt->count() ? a.d_max : std::min(0.2, eps / 2);
    require(a.d_min > 0.0 && hi > a.d_min, "D range must satisfy 0 < d-min < d-max");
    require(a.d_points >= 2, "--d-points must be >= 2");
    grid = log_grid(a.d_min, hi, a.d_points);
  }
  const auto rows = binary_sweep(a.p, eps, grid, a.rate_cap);
  recheck_rows(a.p, eps, a.rate_cap, rows);

  Output o(g.out_path, out);
  if (format_or(g, "csv") == "json") {
    Json j = binary_rows_to_json(rows, a.p, eps, a.rate_cap);
    FrontierSpec spec;
    spec.model = FrontierSpec::Model::binary_bec_bsc;
    spec.p = a.p;
    spec.eps = eps;
    spec.sweep.variable = "D";
    spec.sweep.values = grid;
    spec.sweep.fixed.R_A = a.rate_cap;
    j["spec"] = to_json(spec);
    o.get() << j.dump(2) << '\n';
  } else {
    write_binary_csv(o.get(), rows);
  }
  for (const auto& r : rows)
    if (r.optimal.feasible) return kExitOk;
  return kExitInfeasible;
}

struct GaussianArgs {
  double rho_C = 0.8;
  double rho_E = 0.6;
  std::vector<double> rc_list;
  double rc_min = 0.0, rc_max = 4.0;
  int rc_points = 41;
  std::vector<double> d_list{0.1};
  std::string config;
};

int cmd_gaussian(const Globals& g, const GaussianArgs& a, std::ostream& out) {
  if (!a.config.empty()) {
    Json j = load_json(a.config);
    const FrontierSpec spec = frontier_spec_from_json(j);
    require(spec.model == FrontierSpec::Model::gaussian, "gaussian command needs a gaussian model config");
    return emit_frontier(g, spec, run_frontier(spec), out);
  }
  const GaussianParams params(a.rho_C, a.rho_E);
  std::vector<double> rc = a.rc_list;
  if (rc.empty()) {
    require(a.rc_points >= 1 && a.rc_max >= a.rc_min, "R_C range must satisfy rc-min <= rc-max");
    for (int k = 0; k < a.rc_points; ++k)
      rc.push_back(a.rc_points == 1 ? a.rc_min : a.rc_min + (a.rc_max - a.rc_min) * k / (a.rc_points - 1));
  }
  const bool exact = a.rho_E == 0.0;
  std::vector<FrontierSpec> specs;
  std::vector<FrontierResult> results;
  for (double r : rc) {
    FrontierSpec spec;
    spec.model = FrontierSpec::Model::gaussian;
    spec.rho_C = a.rho_C;
    spec.rho_E = a.rho_E;
    spec.sweep.variable = "D";
    spec.sweep.values = a.d_list;
    spec.sweep.fixed.R_C = r;
    results.push_back(run_frontier(spec));
    recheck_frontier(spec, results.back());
    specs.push_back(std::move(spec));
  }
  Output o(g.out_path, out);
  if (format_or(g, "csv") == "json") {
    Json j;
    j["model"] = "gaussian";
    j["rho_C"] = a.rho_C;
    j["rho_E"] = a.rho_E;
    j["exact_region"] = exact;
    Json rows = Json::array();
    for (const auto& res : results)
      for (const auto& pt : res.points)
        rows.push_back({{"R_C", pt.point.R_C}, {"D", pt.point.D}, {"R_A_min", pt.point.R_A},
                        {"Delta_max", pt.point.Delta}});
    j["rows"] = rows;
    Json sj = Json::array();
    for (const auto& s : specs) sj.push_back(to_json(s));
    j["specs"] = sj;
    o.get() << j.dump(2) << '\n';
  } else {
    o.get() << "R_C,D,R_A_min,Delta_max,exact_region\n";
    for (const auto& res : results)
      for (const auto& pt : res.points)
        o.get() << csv_number(pt.point.R_C) << ',' << csv_number(pt.point.D) << ',' << csv_number(pt.point.R_A)
                << ',' << csv_number(pt.point.Delta) << ',' << (exact ? 1 : 0) << '\n';
  }
  return kExitOk;
}

struct RegionArgs {
  std::string config;
  bool brute_force = false;
  double step = 0.05;
  double budget = 2e10;
};

int cmd_region(const Globals& g, const RegionArgs& a, std::ostream& out, bool lossless) {
  Json j = load_json(a.config);
  if (lossless && j.is_object() && !j.contains("model")) j["model"] = "lossless";
  FrontierSpec spec = frontier_spec_from_json(j);
  if (lossless) require(spec.model == FrontierSpec::Model::lossless, "lossless command needs a lossless model config");
  if (g.seed_given) spec.inner.search.seed = g.seed;
  if (a.brute_force) {
    require(spec.model == FrontierSpec::Model::generic_discrete, "--brute-force applies to generic_discrete models");
    BruteForceOptions bo;
    bo.step = a.step;
    bo.budget = a.budget;
    bo.fixed_w = spec.inner.fixed_w;
    const auto caps = spec.caps.value_or(inner_caps(spec.source));
    return emit_frontier(g, spec, brute_force_oracle(spec.source, spec.distortion, caps, spec.sweep, bo), out);
  }
  return emit_frontier(g, spec, run_frontier(spec), out);
}

struct SimulateArgs {
  std::string config;
  std::string trace;
  long trials = -1;
};

int cmd_simulate(const Globals& g, const SimulateArgs& a, std::ostream& out) {
  require(format_or(g, "json") == "json", "simulate emits JSON only");
  SimulationSpec spec = simulation_spec_from_json(load_json(a.config));
  if (g.seed_given) spec.code.seed = g.seed;
  if (a.trials >= 0) spec.trials = a.trials;
  if (!a.trace.empty()) spec.trace_path = a.trace;
  spec.options.keep_trace = !spec.trace_path.empty();
  const SimReport rep =
      run_experiment(spec.source, spec.system, spec.code, spec.trials, spec.options, spec.distortion);
  Json j = to_json(rep, utc_timestamp());
  j["seed"] = spec.code.seed;
  if (spec.single_letter_delta) {
    j["single_letter_delta"] = *spec.single_letter_delta;
    if (rep.exact_equivocation) j["equivocation_gap"] = *spec.single_letter_delta - *rep.exact_equivocation;
  }
  if (!spec.trace_path.empty()) {
    Output t(spec.trace_path, out);
    write_trace_csv(t.get(), rep.trace);
  }
  Output o(g.out_path, out);
  o.get() << j.dump(2) << '\n';
  if (!g.out_path.empty()) out << g.out_path << '\n';
  return kExitOk;
}

Json report_json(const ReproReport& r) {
  Json cells = Json::array();
  for (const auto& c : r.cells)
    cells.push_back({{"name", c.name}, {"computed", c.computed}, {"expected", c.expected},
                     {"delta", c.delta()}, {"tol", c.tol}, {"pass", c.ok()}});
  Json checks = Json::array();
  for (const auto& [name, pass] : r.checks) checks.push_back({{"name", name}, {"pass", pass}});
  return {{"cells", cells}, {"checks", checks}, {"pass", r.ok()}};
}

int cmd_reproduce(const Globals& g, const std::string& which, std::ostream& out, std::ostream& err) {
  ReproReport report;
  Json j;
  if (which == "table3") {
    report = reproduce_table3();
    j = report_json(report);
  } else {
    const Fig10Result f = reproduce_fig10();
    recheck_rows(0.1, h2(0.1), kUnbounded, f.rows);
    report = f.report;
    j = report_json(report);
    j["merge_threshold"] = f.merge_threshold;
    j["frontier"] = binary_rows_to_json(f.rows, 0.1, h2(0.1), kUnbounded);
  }
  Output o(g.out_path, out);
  const std::string fmt = format_or(g, "text");
  if (fmt == "json") {
    o.get() << j.dump(2) << '\n';
  } else if (fmt == "csv") {
    o.get() << "name,computed,expected,delta,tol,pass\n";
    for (const auto& c : report.cells)
      o.get() << c.name << ',' << csv_number(c.computed) << ',' << csv_number(c.expected) << ','
              << csv_number(c.delta()) << ',' << csv_number(c.tol) << ',' << c.ok() << '\n';
  } else {
    report.print(o.get());
  }
  if (report.ok()) return kExitOk;
  err << "reproduction outside tolerance:";
  for (const auto& name : report.failures()) err << "\n  " << name;
  err << '\n';
  return kExitReproduction;
}

}  // namespace

// ---- entry point -----------------------------------------------------------------------

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rate-distortion-equivocation regions: frontier sweeps, simulation, reproduction"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  auto* seed_opt = app.add_option("--seed", g.seed, "Seed for every random stream")->capture_default_str();
  app.add_option("--threads", g.threads, "OpenMP worker count (0 keeps the runtime default)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json", "text"}));
  app.add_option("--out", g.out_path, "Output file (default stdout)");

  BinaryArgs ba;
  auto* bin = app.add_subcommand("binary", "Binary source, BEC to Bob, BSC to Eve: optimal vs Wyner-Ziv");
  bin->add_option("--p", ba.p, "Eve's crossover probability")->capture_default_str();
  bin->add_option("--eps", ba.eps, "Bob's erasure probability or h2p")->capture_default_str();
  ba.d_min_opt = bin->add_option("--d-min", ba.d_min, "Smallest distortion of the log grid");
  ba.d_max_opt = bin->add_option("--d-max", ba.d_max, "Largest distortion (default min(0.2, eps/2))");
  ba.d_points_opt = bin->add_option("--d-points", ba.d_points, "Grid size");
  bin->add_option("--d", ba.d_list, "Explicit distortion grid")->delimiter(',');
  ba.rate_cap_opt = bin->add_option("--rate-cap", ba.rate_cap, "Upper limit on R_A");

  GaussianArgs ga;
  auto* gau = app.add_subcommand("gaussian", "Gaussian source inner bound over (R_C, D)");
  gau->add_option("--rho-c", ga.rho_C, "Correlation of C with A")->capture_default_str();
  gau->add_option("--rho-e", ga.rho_E, "Correlation of E with A")->capture_default_str();
  gau->add_option("--rc", ga.rc_list, "Explicit R_C grid")->delimiter(',');
  gau->add_option("--rc-min", ga.rc_min)->capture_default_str();
  gau->add_option("--rc-max", ga.rc_max)->capture_default_str();
  gau->add_option("--rc-points", ga.rc_points)->capture_default_str();
  gau->add_option("--d", ga.d_list, "Distortion grid")->delimiter(',')->capture_default_str();
  gau->add_option("--config", ga.config, "Frontier config with model gaussian")->check(CLI::ExistingFile);

  RegionArgs ra;
  auto* reg = app.add_subcommand("region", "Inner-bound frontier for a config file");
  reg->add_option("--config", ra.config, "Frontier config (JSON)")->required()->check(CLI::ExistingFile);
  reg->add_flag("--brute-force", ra.brute_force, "Exhaustive grid search instead of coordinate ascent");
  reg->add_option("--step", ra.step, "Grid step of the exhaustive search")->capture_default_str();
  reg->add_option("--budget", ra.budget, "Max channel combinations")->capture_default_str();

  RegionArgs la;
  auto* los = app.add_subcommand("lossless", "Lossless-reconstruction frontier for a config file");
  los->add_option("--config", la.config, "Frontier config (JSON)")->required()->check(CLI::ExistingFile);

  SimulateArgs sa;
  auto* sim = app.add_subcommand("simulate", "Finite-blocklength binning simulation");
  sim->add_option("--config", sa.config, "Simulation config (JSON)")->required()->check(CLI::ExistingFile);
  sim->add_option("--trace", sa.trace, "Per-trial CSV trace path");
  sim->add_option("--trials", sa.trials, "Override the trial count")->check(CLI::NonNegativeNumber);

  std::string which;
  auto* rep = app.add_subcommand("reproduce", "Rerun the binary example pipelines against reference values");
  rep->add_option("which", which, "table3 or fig10")->required()->check(CLI::IsMember({"table3", "fig10"}));
  auto* rep_t3 = app.add_subcommand("reproduce-table3", "Alias of 'reproduce table3'");
  auto* rep_f10 = app.add_subcommand("reproduce-fig10", "Alias of 'reproduce fig10'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  g.seed_given = seed_opt->count() > 0;
  if (g.threads > 0) omp_set_num_threads(g.threads);

  try {
    if (*bin) return cmd_binary(g, ba, out);
    if (*gau) return cmd_gaussian(g, ga, out);
    if (*reg) return cmd_region(g, ra, out, false);
    if (*los) return cmd_region(g, la, out, true);
    if (*sim) return cmd_simulate(g, sa, out);
    if (*rep) return cmd_reproduce(g, which, out, err);
    if (*rep_t3) return cmd_reproduce(g, "table3", out, err);
    if (*rep_f10) return cmd_reproduce(g, "fig10", out, err);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const BudgetError& e) {
    err << "budget: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"equivoc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace equivoc
