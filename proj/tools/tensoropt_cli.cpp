// tensoropt: command-line front end for the adaptive third-order solvers.
//
//   tensoropt solve --problem quartic --n 2 --solver basic --eps 1e-2,1e-4
//   tensoropt solve --problem logistic --dataset data.csv --solver accel --eps 1e-6
//
// Exit status: 0 when every epsilon converged, 2 when any run hit an
// iteration cap, 1 on usage or IO errors.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "tensoropt/harness.hpp"
#include "tensoropt/trace.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitCapHit = 2;

struct SolveArgs {
  std::string problem;
  std::string dataset;
  bool has_header = false;
  long n = 2;
  std::string solver;
  std::vector<double> epsilons;
  double m0 = 1.0;
  std::string x0 = "ones";
  std::optional<double> fd_tau;
  int max_outer = 100000;
  int max_inner = 10000;
  std::string trace_path;
  std::string format = "table";
  std::string out_path;
};

int run_solve(const SolveArgs& args) {
  using namespace tensoropt;

  RunConfig config;
  if (args.problem == "logistic") {
    if (args.dataset.empty()) {
      std::cerr << "error: --dataset is required for --problem logistic\n";
      return kExitFailure;
    }
    config.problem = LogisticProblem{args.dataset, args.has_header};
  } else {
    config.problem = QuarticProblem{static_cast<Index>(args.n)};
  }
  config.solver = args.solver == "accel" ? SolverKind::Accel : SolverKind::Basic;
  config.epsilons = args.epsilons;
  config.m0 = args.m0;
  config.start = args.x0 == "zeros" ? StartPolicy::Zeros : StartPolicy::Ones;
  config.fd_tau = args.fd_tau;
  config.max_outer = args.max_outer;
  config.max_inner = args.max_inner;

  std::ofstream trace_file;
  std::unique_ptr<JsonLinesTraceSink> trace;
  if (!args.trace_path.empty()) {
    trace_file.open(args.trace_path);
    if (!trace_file) {
      std::cerr << "error: cannot open trace file " << args.trace_path << '\n';
      return kExitFailure;
    }
    trace = std::make_unique<JsonLinesTraceSink>(trace_file);
    config.trace = trace.get();
  }

  const std::map<std::string, ReportFormat> formats = {
      {"table", ReportFormat::Table},
      {"csv", ReportFormat::Csv},
      {"jsonl", ReportFormat::JsonLines}};

  try {
    const std::vector<RunReport> reports = run_experiment(config);

    std::ofstream out_file;
    std::ostream* sink = &std::cout;
    if (!args.out_path.empty()) {
      out_file.open(args.out_path);
      if (!out_file) {
        std::cerr << "error: cannot open output file " << args.out_path << '\n';
        return kExitFailure;
      }
      sink = &out_file;
    }
    emit_report(reports, formats.at(args.format), *sink);

    int status = kExitOk;
    for (const auto& r : reports) {
      if (r.status != RunStatus::Converged) {
        std::cerr << "warning: epsilon " << r.epsilon << " stopped with "
                  << to_string(r.status) << '\n';
        status = kExitCapHit;
      }
    }
    return status;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive third-order tensor methods for convex minimization"};
  app.require_subcommand(1);

  SolveArgs args;
  CLI::App* solve = app.add_subcommand("solve", "Run a solver over an epsilon sweep");
  solve->add_option("--problem", args.problem, "Problem family")
      ->required()
      ->check(CLI::IsMember({"logistic", "quartic"}));
  solve->add_option("--dataset", args.dataset, "CSV dataset (logistic)");
  solve->add_flag("--has-header", args.has_header, "Skip one header row in the dataset");
  solve->add_option("--n", args.n, "Dimension of the quartic problem")
      ->check(CLI::PositiveNumber);
  solve->add_option("--solver", args.solver, "Outer method")
      ->required()
      ->check(CLI::IsMember({"basic", "accel"}));
  solve->add_option("--eps", args.epsilons, "Comma-separated target gradient norms")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  solve->add_option("--m0", args.m0, "Initial regularization estimate")
      ->check(CLI::PositiveNumber);
  solve->add_option("--x0", args.x0, "Starting point")
      ->check(CLI::IsMember({"ones", "zeros"}));
  solve->add_option("--fd-tau", args.fd_tau,
                    "Replace third derivatives by gradient differences with this step")
      ->check(CLI::PositiveNumber);
  solve->add_option("--max-outer", args.max_outer, "Outer iteration cap")
      ->check(CLI::PositiveNumber);
  solve->add_option("--max-inner", args.max_inner, "Inner iteration cap")
      ->check(CLI::PositiveNumber);
  solve->add_option("--trace", args.trace_path, "Write JSON-lines trace to this file");
  solve->add_option("--format", args.format, "Report format")
      ->check(CLI::IsMember({"table", "csv", "jsonl"}));
  solve->add_option("--out", args.out_path, "Write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitFailure;
  }

  if (solve->parsed()) return run_solve(args);
  return kExitFailure;
}
