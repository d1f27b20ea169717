#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "zodd/harness/config.hpp"

namespace zodd::harness {

/// Outcome of one (method, seed) descent run.
///
/// status is "ok", "diverged" or "budget_error". obj_mean / obj_sd are the
/// mean and standard deviation of `evaluation_draws` fresh samples at the
/// returned iterate; they are NaN unless status is "ok".
struct ResultRow {
  std::string method;
  std::uint64_t seed = 0;
  std::string status = "ok";
  double obj_mean = 0.0;
  double obj_sd = 0.0;
  std::uint64_t samples_used = 0;
  std::size_t iterations = 0;
  std::optional<double> grad_norm_sq;
  double wall_seconds = 0.0;
  std::string message;
};

struct TracePoint {
  std::string method;
  std::uint64_t seed = 0;
  std::size_t iteration = 0;
  std::uint64_t cumulative_samples = 0;
  double obj_estimate = 0.0;
};

/// Per-method aggregate over seeds with status "ok".
struct SummaryRow {
  std::string method;
  std::size_t runs = 0;
  double obj_mean = 0.0;
  double obj_sd = 0.0;  // across seeds
};

/// Hyper-parameters chosen for a method (from the config, the planner, or
/// the tuning grid).
struct ResolvedMethod {
  std::string name;
  EstimatorConfig estimator;
  double step = 0.0;
  std::optional<double> M;            // set when the planner supplied the step
  std::optional<std::size_t> max_T;   // planner iteration count
  double tuning_score = 0.0;          // mean objective on the tuning seeds
  bool tuned = false;
};

struct RunReport {
  std::vector<ResolvedMethod> methods;
  std::vector<ResultRow> rows;
  std::vector<TracePoint> trace;
  std::vector<SummaryRow> summary;
};

/// Executes every (method, seed) pair under the sample budget. Rows are
/// ordered by method then seed, independent of `threads`.
RunReport run_experiment(const ExperimentConfig& config, const BuiltEnvironment& built,
                         std::size_t threads = 1);

/// One run; exposed for tests and tuning.
ResultRow run_single(const ResolvedMethod& method, std::uint64_t seed,
                     const ExperimentConfig& config, const BuiltEnvironment& built,
                     std::vector<TracePoint>* trace);

void write_results_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows);
void write_timing_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows);
void write_trace_csv(const std::filesystem::path& path, const std::vector<TracePoint>& trace);
void write_summary_csv(const std::filesystem::path& path, const std::vector<SummaryRow>& rows);
void write_methods_csv(const std::filesystem::path& path,
                       const std::vector<ResolvedMethod>& methods);

/// `zodd run`: returns the process exit code (0 ok, 2 config error).
int cmd_run(const std::filesystem::path& config_path, const std::filesystem::path& out_dir,
            std::optional<std::uint64_t> seed, std::size_t threads);

}  // namespace zodd::harness
