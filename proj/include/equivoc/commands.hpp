#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "equivoc/optimizer.hpp"

namespace equivoc {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  kExitValidation = 2,
  kExitInfeasible = 3,
  kExitBudget = 4,
  kExitReproduction = 5,
};

/// One computed-vs-reference comparison with its absolute tolerance.
struct ReproCell {
  std::string name;
  double computed = 0.0;
  double expected = 0.0;
  double tol = 0.0;

  double delta() const;
  bool ok() const { return delta() <= tol; }
};

struct ReproReport {
  std::vector<ReproCell> cells;
  /// Structural checks reported as pass/fail only.
  std::vector<std::pair<std::string, bool>> checks;

  bool ok() const;
  /// Human-readable table with absolute deltas.
  void print(std::ostream& os) const;
  /// Names of every failed cell or check.
  std::vector<std::string> failures() const;
};

inline constexpr double kTable3Tol = 0.002;
inline constexpr double kTable3ParamTol = 0.003;

/// The binary example at p = 0.1, eps = h2(p): the lossless secure and
/// Slepian-Wolf columns at D = 0, and the columns at rate cap 0.375 with
/// the smallest distortion that cap allows.
ReproReport reproduce_table3();

struct Fig10Options {
  double d_min = 1e-4;
  double d_max = 0.2;
  int points = 60;
  double coincide_from = 0.039;
  double coincide_tol = 1e-3;
  double separate_below = 0.01;
  double separate_gap = 5e-3;
  double merge_expected = 0.036;
  double merge_tol = 0.003;
  double merge_gap = 1e-6;
  double monotone_tol = 1e-9;
};

struct Fig10Result {
  std::vector<BinaryFrontierRow> rows;
  double merge_threshold = 0.0;
  ReproReport report;
};

Fig10Result reproduce_fig10(const Fig10Options& opts = {});

/// Parses `argv` and runs one subcommand; returns an ExitCode.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload for tests; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace equivoc
