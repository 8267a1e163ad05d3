#include "tensoropt/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <memory>
#include <sstream>

#include "tensoropt/finite_difference.hpp"
#include "tensoropt/outer_accel.hpp"

namespace tensoropt {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::optional<double> parse_double(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end != cell.c_str() + cell.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string where(std::size_t row, std::size_t col) {
  return "row " + std::to_string(row) + ", column " + std::to_string(col);
}

}  // namespace

Dataset parse_dataset(std::istream& in, bool has_header) {
  std::vector<std::vector<double>> rows;
  std::size_t width = 0;
  std::string line;
  std::size_t line_no = 0;
  bool header_pending = has_header;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    const auto cells = split_commas(line);
    if (cells.size() < 2) {
      throw DatasetError(where(line_no, 1) + ": need at least one feature and a label");
    }
    if (width == 0) width = cells.size();
    if (cells.size() != width) {
      throw DatasetError(where(line_no, cells.size()) + ": expected " +
                         std::to_string(width) + " columns, found " +
                         std::to_string(cells.size()));
    }
    std::vector<double> values(width);
    for (std::size_t c = 0; c < width; ++c) {
      const auto v = parse_double(cells[c]);
      if (!v) {
        throw DatasetError(where(line_no, c + 1) + ": '" + cells[c] + "' is not a number");
      }
      values[c] = *v;
    }
    if (values.back() != 0.0 && values.back() != 1.0) {
      throw DatasetError(where(line_no, width) + ": label '" + cells.back() +
                         "' is not 0 or 1");
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw DatasetError("dataset has no samples");

  const Index m = static_cast<Index>(rows.size());
  const Index p = static_cast<Index>(width - 1);
  Matrix raw(m, p);
  Vector labels(m);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < p; ++j) raw(i, j) = rows[i][j];
    labels(i) = rows[i][p];
  }
  return Dataset::with_intercept(raw, std::move(labels));
}

Dataset load_dataset(const std::filesystem::path& path, bool has_header) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open dataset file " + path.string());
  try {
    return parse_dataset(in, has_header);
  } catch (const DatasetError& e) {
    throw DatasetError(path.string() + ": " + e.what());
  }
}

RunReport make_report(double epsilon, const SolveResult& result, double wall_time_s) {
  RunReport r;
  r.epsilon = epsilon;
  r.it = result.counters.outer_iterations;
  r.co = static_cast<std::int64_t>(result.counters.calls.total());
  r.bgm_e = result.counters.inner_executions;
  r.bgm_it = result.counters.inner_iterations;
  r.bgm_a = r.bgm_e > 0 ? static_cast<double>(r.bgm_it) / static_cast<double>(r.bgm_e)
                        : 0.0;
  r.final_grad_norm = result.final_grad_norm;
  r.final_f = result.final_f;
  r.wall_time_s = wall_time_s;
  r.status = result.status;
  return r;
}

void RunConfig::validate() const {
  if (epsilons.empty()) throw std::invalid_argument("at least one epsilon is required");
  for (double e : epsilons) {
    if (!(e > 0.0)) throw std::invalid_argument("epsilons must be positive");
  }
  if (!(m0 > 0.0)) throw std::invalid_argument("M0 must be positive");
  if (fd_tau && !(*fd_tau > 0.0)) throw std::invalid_argument("fd tau must be positive");
  if (max_outer <= 0 || max_inner <= 0) throw std::invalid_argument("caps must be positive");
  if (const auto* q = std::get_if<QuarticProblem>(&problem); q && q->n <= 0) {
    throw std::invalid_argument("quartic dimension must be positive");
  }
}

namespace {

std::vector<RunReport> run_sweep(const RunConfig& config, const Dataset* data) {
  config.validate();

  auto make_oracle = [&]() -> std::shared_ptr<const SmoothOracle> {
    std::shared_ptr<const SmoothOracle> base;
    if (std::holds_alternative<LogisticProblem>(config.problem)) {
      base = std::make_shared<LogisticOracle>(*data);
    } else {
      base = std::make_shared<QuarticOracle>(std::get<QuarticProblem>(config.problem).n);
    }
    if (config.fd_tau) return std::make_shared<FiniteDifferenceOracle>(base, *config.fd_tau);
    return base;
  };

  const ZeroComposite composite;
  std::vector<RunReport> reports;
  for (double eps : config.epsilons) {
    const auto oracle = make_oracle();
    const Index n = oracle->dimension();
    Vector x0;
    switch (config.start) {
      case StartPolicy::Ones: x0 = Vector::Ones(n); break;
      case StartPolicy::Zeros: x0 = Vector::Zero(n); break;
      case StartPolicy::Explicit:
        if (config.explicit_start.size() != n) {
          throw std::invalid_argument("explicit start has the wrong dimension");
        }
        x0 = config.explicit_start;
        break;
    }

    OuterOptions options;
    options.m0 = config.m0;
    options.epsilon = eps;
    options.max_outer = config.max_outer;
    options.max_inner = config.max_inner;
    options.trace = config.trace;

    const auto started = std::chrono::steady_clock::now();
    try {
      const SolveResult result = config.solver == SolverKind::Basic
                                     ? run_basic(*oracle, composite, x0, options)
                                     : SolveResult(run_accel(*oracle, composite, x0, options));
      const std::chrono::duration<double> elapsed =
          std::chrono::steady_clock::now() - started;
      reports.push_back(make_report(eps, result, elapsed.count()));
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << "epsilon " << eps << ": " << e.what();
      throw ExperimentError(msg.str());
    }
  }
  return reports;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

std::vector<RunReport> run_experiment(const RunConfig& config) {
  if (const auto* logistic = std::get_if<LogisticProblem>(&config.problem)) {
    config.validate();
    const Dataset data = load_dataset(logistic->dataset, logistic->has_header);
    return run_sweep(config, &data);
  }
  return run_sweep(config, nullptr);
}

std::vector<RunReport> run_experiment(const RunConfig& config, const Dataset& data) {
  return run_sweep(config, &data);
}

void emit_report(const std::vector<RunReport>& reports, ReportFormat format,
                 std::ostream& sink) {
  if (reports.empty()) throw std::invalid_argument("no reports to emit");
  switch (format) {
    case ReportFormat::Table: {
      sink << std::setw(9) << "epsilon" << " | " << std::setw(7) << "IT" << " | "
           << std::setw(9) << "CO" << " | " << std::setw(7) << "BGM-E" << " | "
           << std::setw(8) << "BGM-IT" << " | " << std::setw(8) << "BGM-A" << '\n';
      for (const auto& r : reports) {
        std::ostringstream eps;
        eps << std::scientific << std::setprecision(0) << r.epsilon;
        sink << std::setw(9) << eps.str() << " | " << std::setw(7) << r.it << " | "
             << std::setw(9) << r.co << " | " << std::setw(7) << r.bgm_e << " | "
             << std::setw(8) << r.bgm_it << " | " << std::setw(8) << format_fixed4(r.bgm_a)
             << '\n';
      }
      break;
    }
    case ReportFormat::Csv:
      sink << kReportCsvHeader << '\n';
      for (const auto& r : reports) {
        sink << format_double(r.epsilon) << ',' << r.it << ',' << r.co << ',' << r.bgm_e
             << ',' << r.bgm_it << ',' << format_fixed4(r.bgm_a) << ','
             << format_double(r.final_grad_norm) << ',' << format_double(r.final_f) << ','
             << format_double(r.wall_time_s) << '\n';
      }
      break;
    case ReportFormat::JsonLines:
      for (const auto& r : reports) {
        nlohmann::json j = {{"epsilon", r.epsilon},
                            {"IT", r.it},
                            {"CO", r.co},
                            {"BGM_E", r.bgm_e},
                            {"BGM_IT", r.bgm_it},
                            {"BGM_A", r.bgm_a},
                            {"final_grad_norm", r.final_grad_norm},
                            {"final_f", r.final_f},
                            {"wall_time_s", r.wall_time_s},
                            {"status", std::string(to_string(r.status))}};
        sink << j.dump() << '\n';
      }
      break;
  }
  sink.flush();
  if (!sink) throw std::runtime_error("failed to write report");
}

std::vector<RunReport> parse_report_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kReportCsvHeader) {
    throw std::runtime_error("report csv is missing its header");
  }
  std::vector<RunReport> out;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto cells = split_commas(line);
    if (cells.size() != 9) throw std::runtime_error("report csv row has wrong width");
    std::vector<double> v;
    for (const auto& c : cells) {
      const auto d = parse_double(c);
      if (!d) throw std::runtime_error("report csv cell '" + c + "' is not a number");
      v.push_back(*d);
    }
    RunReport r;
    r.epsilon = v[0];
    r.it = static_cast<std::int64_t>(v[1]);
    r.co = static_cast<std::int64_t>(v[2]);
    r.bgm_e = static_cast<std::int64_t>(v[3]);
    r.bgm_it = static_cast<std::int64_t>(v[4]);
    // The printed BGM_A is rounded; the counters it came from are exact.
    r.bgm_a = r.bgm_e > 0 ? static_cast<double>(r.bgm_it) / static_cast<double>(r.bgm_e)
                          : v[5];
    r.final_grad_norm = v[6];
    r.final_f = v[7];
    r.wall_time_s = v[8];
    out.push_back(r);
  }
  return out;
}

}  // namespace tensoropt
