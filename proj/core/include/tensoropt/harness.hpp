#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "tensoropt/linalg.hpp"
#include "tensoropt/outer_basic.hpp"
#include "tensoropt/problems.hpp"

namespace tensoropt {

/// Malformed dataset file. The message names the offending row and column
/// (both 1-based, counted in the file).
class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads a headerless (or one-header-row) CSV of samples: all columns but the
/// last are features, the last is a 0/1 label. The intercept column is
/// prepended here.
Dataset load_dataset(const std::filesystem::path& path, bool has_header = false);
Dataset parse_dataset(std::istream& in, bool has_header = false);

/// Per-epsilon run summary: iteration and call counters plus final state.
struct RunReport {
  double epsilon = 0.0;
  std::int64_t it = 0;      // accepted outer iterations
  std::int64_t co = 0;      // oracle calls
  std::int64_t bgm_e = 0;   // inner-solver executions
  std::int64_t bgm_it = 0;  // total inner iterations
  double bgm_a = 0.0;       // bgm_it / bgm_e
  double final_grad_norm = 0.0;
  double final_f = 0.0;
  double wall_time_s = 0.0;
  RunStatus status = RunStatus::Converged;
};

RunReport make_report(double epsilon, const SolveResult& result, double wall_time_s);

struct LogisticProblem {
  std::filesystem::path dataset;
  bool has_header = false;
};
struct QuarticProblem {
  Index n = 2;
};

enum class SolverKind { Basic, Accel };
enum class StartPolicy { Ones, Zeros, Explicit };

struct RunConfig {
  std::variant<LogisticProblem, QuarticProblem> problem = QuarticProblem{};
  SolverKind solver = SolverKind::Basic;
  std::vector<double> epsilons;
  double m0 = 1.0;
  StartPolicy start = StartPolicy::Ones;
  Vector explicit_start;  // used with StartPolicy::Explicit
  std::optional<double> fd_tau;
  int max_outer = 100000;
  int max_inner = 10000;
  std::uint64_t seed = 0;
  TraceSink* trace = nullptr;

  void validate() const;
};

/// Raised when a solver fails during an experiment; names the epsilon.
class ExperimentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs the configured solver once per epsilon, each from the configured
/// start with a freshly built oracle, and returns one report per epsilon.
std::vector<RunReport> run_experiment(const RunConfig& config);

/// Same, on a preloaded dataset for logistic problems (skips file IO).
std::vector<RunReport> run_experiment(const RunConfig& config, const Dataset& data);

enum class ReportFormat { Table, Csv, JsonLines };

inline constexpr const char* kReportCsvHeader =
    "epsilon,IT,CO,BGM_E,BGM_IT,BGM_A,final_grad_norm,final_f,wall_time_s";

/// Table columns are eps, IT, CO, BGM-E, BGM-IT, BGM-A. BGM-A is printed with
/// four decimals in table and csv.
void emit_report(const std::vector<RunReport>& reports, ReportFormat format,
                 std::ostream& sink);

/// Inverse of the csv format. BGM_A is recomputed from BGM_IT / BGM_E rather
/// than read back at four decimals. Status is not serialized and comes back
/// as Converged.
std::vector<RunReport> parse_report_csv(std::istream& in);

}  // namespace tensoropt
