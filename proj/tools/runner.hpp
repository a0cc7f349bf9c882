#pragma once

#include "sharpineq/functionals.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sharpineq::cli {

enum class Format { Json, Csv };

inline constexpr const char* kSchemaVersion = "1.0";

struct ExperimentConfig {
  std::string subcommand;
  std::string ineq; ///< empty selects the experiment's default id
  int n = 3;
  double p = 2.0;
  std::optional<double> theta; ///< defaults to p
  std::optional<double> sigma; ///< defaults to p* (theta for homogeneous ids)
  double R = 1.0;
  double a = 1.0;
  double b = 1.0;
  std::vector<double> lambdas{0.25, 0.5, 2.0, 4.0};
  std::vector<double> ps{2.5, 2.9, 2.99, 2.999};
  std::vector<double> radii{1.0};
  std::vector<double> rhos{0.5, 0.36787944117144233, 0.1};
  std::vector<double> mus{1.0, 10.0, 100.0};
  std::vector<int> dims{2, 3, 5};
  int points = 100;
  std::optional<double> tol;
  std::optional<double> quad_tol; ///< relative quadrature tolerance override
  std::uint64_t seed = 42;
  Format format = Format::Json;
  std::string out; ///< empty writes to stdout

  /// Throws DomainError on empty grids, non-positive tolerances or an unknown subcommand.
  void validate() const;
};

const std::vector<std::string>& subcommands();

struct Row {
  std::string inequality;
  int n = 0;
  double p = 0.0;
  double theta = 0.0;
  double sigma = 0.0;
  double R = 0.0;
  double lambda = 0.0; ///< sweep variable of the row, NaN when there is none
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;
  double quotient = 0.0;
  double deficit = 0.0;
  double quad_error = 0.0;
  bool pass = false;
};

struct Report {
  ExperimentConfig config;
  double tol = 0.0; ///< tolerance actually used
  FunctionalConfig fc;
  std::vector<Row> rows;
  bool complete = true; ///< false after numerical non-convergence
  std::string message;
  double wall_time_s = 0.0;

  int passed() const;
  int failed() const;
};

/// Runs one experiment. Parameter-domain errors propagate as DomainError;
/// non-convergence stops the run and returns the partial report.
Report run(const ExperimentConfig& config);

/// 0 when every row passes and the run completed, 1 otherwise.
int exit_code(const Report& report);

std::string to_json(const Report& report);
std::string to_csv(const Report& report);

/// Full command-line entry point: parses args (without the program name),
/// runs, writes the report. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sharpineq::cli
