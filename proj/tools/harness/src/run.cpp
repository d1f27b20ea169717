#include "zodd/harness/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <limits>
#include <map>

#include "zodd/descent.hpp"
#include "zodd/errors.hpp"
#include "zodd/harness/csv.hpp"
#include "zodd/oracle.hpp"
#include "zodd/parallel.hpp"

namespace zodd::harness {
namespace {

constexpr std::uint64_t kEvaluationTag = 0xE7A1;
constexpr std::uint64_t kTraceTag = 0x7AC3;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// FNV-1a; gives every method name its own stream family.
std::uint64_t name_hash(const std::string& name) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};

MeanSd sample_objective(const Environment& env, const Point& x, std::size_t draws,
                        const RngStream& stream) {
  RngEngine rng = stream.engine();
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t q = 0; q < draws; ++q) {
    const double v = env.draw(x, rng);
    sum += v;
    sum_sq += v * v;
  }
  const double n = static_cast<double>(draws);
  const double mean = sum / n;
  const double var = draws > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
  return {mean, std::sqrt(var)};
}

double objective_estimate(const Environment& env, const Point& x, std::size_t draws,
                          const RngStream& stream) {
  if (env.has_exact_objective()) return env.objective(x);
  return sample_objective(env, x, std::min<std::size_t>(draws, 100), stream).mean;
}

ResolvedMethod resolve_method(const MethodSpec& spec, const BuiltEnvironment& built,
                              const TuningSpec& tuning) {
  ResolvedMethod out;
  out.name = spec.name;
  out.estimator = spec.estimator;
  const auto constants = built.env->constants();
  if (spec.plan) {
    if (!constants || !(constants->M > 0.0)) {
      throw ConfigError("estimators." + spec.name +
                        ".plan: environment has no known smoothness constant");
    }
    PlannerConstants pc = spec.plan->constants;
    if (const auto f_star = built.env->minimum_value(); f_star && built.env->has_exact_objective()) {
      pc.initial_gap = built.env->objective(built.x0) - *f_star;
    }
    ParameterPlan plan;
    try {
      plan = plan_parameters(spec.estimator.kind, spec.plan->regime, spec.plan->epsilon,
                             built.env->dimension(), constants->sigma, constants->M, constants->H,
                             pc);
    } catch (const Error& e) {
      throw ConfigError("estimators." + spec.name + ".plan: " + e.what());
    }
    out.estimator = plan.estimator();
    out.step = plan.eta;
    out.M = plan.M;
    out.max_T = plan.T;
    return out;
  }
  if (spec.step) {
    out.step = *spec.step;
  } else if (constants && constants->M > 0.0) {
    out.step = 1.0 / (4.0 * constants->M);
  } else if (tuning.enabled && !tuning.step.empty()) {
    out.step = tuning.step.front();
  } else {
    throw ConfigError("estimators." + spec.name +
                      ".step: required when the environment has no known smoothness constant");
  }
  return out;
}

// Grid search: the lowest mean objective over the tuning seeds wins; ties go
// to the earliest grid point.
ResolvedMethod tune_method(const ResolvedMethod& base, const ExperimentConfig& config,
                           const BuiltEnvironment& built, std::size_t threads) {
  const TuningSpec& t = config.tuning;
  const bool batch_is_N = base.estimator.kind == EstimatorKind::sphere ||
                          base.estimator.kind == EstimatorKind::gaussian;
  std::vector<ResolvedMethod> grid;
  for (double step : t.step) {
    for (double mu : t.mu) {
      for (std::size_t batch : t.batch) {
        ResolvedMethod c = base;
        c.step = step;
        c.estimator.mu = mu;
        if (batch_is_N) {
          c.estimator.N = batch;
          c.estimator.m = 1;
        } else {
          c.estimator.m = batch;
          if (base.estimator.kind == EstimatorKind::one_point) c.estimator.N = 1;
        }
        grid.push_back(std::move(c));
      }
    }
  }
  const std::size_t per = t.seeds.size();
  const auto scores = parallel_map(grid.size() * per, threads, [&](std::size_t job) {
    const ResultRow row = run_single(grid[job / per], t.seeds[job % per], config, built, nullptr);
    return row.status == "ok" ? row.obj_mean : std::numeric_limits<double>::infinity();
  });
  std::size_t best = 0;
  double best_score = std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < grid.size(); ++g) {
    double total = 0.0;
    for (std::size_t s = 0; s < per; ++s) total += scores[g * per + s];
    const double mean = total / static_cast<double>(per);
    if (mean < best_score) {
      best_score = mean;
      best = g;
    }
  }
  ResolvedMethod out = grid[best];
  out.tuned = true;
  out.tuning_score = best_score;
  return out;
}

}  // namespace

ResultRow run_single(const ResolvedMethod& method, std::uint64_t seed,
                     const ExperimentConfig& config, const BuiltEnvironment& built,
                     std::vector<TracePoint>* trace) {
  const auto started = std::chrono::steady_clock::now();
  const Environment& env = *built.env;
  const std::size_t d = env.dimension();
  const RngStream root(seed, name_hash(method.name));

  ResultRow row;
  row.method = method.name;
  row.seed = seed;
  row.obj_mean = kNaN;
  row.obj_sd = kNaN;

  EnvironmentOracle oracle(env, config.budget);
  const std::uint64_t cost = method.estimator.samples_per_estimate(d);
  const std::uint64_t affordable = config.budget / cost;
  auto finish = [&] {
    row.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return row;
  };

  if (affordable < 2) {
    row.status = "budget_error";
    try {
      (void)estimate_gradient(built.x0, method.estimator, oracle, root);
      row.message = "budget of " + std::to_string(config.budget) +
                    " draws covers fewer than two estimates of " + std::to_string(cost);
    } catch (const BudgetError& e) {
      row.message = e.what();
    }
    row.samples_used = oracle.budget().consumed();
    return finish();
  }

  ParameterPlan plan;
  plan.kind = method.estimator.kind;
  plan.mu = method.estimator.mu;
  plan.N = method.estimator.N;
  plan.m = method.estimator.m;
  plan.eta = method.step;
  plan.M = method.M;
  plan.T = static_cast<std::size_t>(affordable - 1);
  if (method.max_T) plan.T = std::min(plan.T, *method.max_T);

  RunOptions options;
  options.thinning = std::max<std::size_t>(1, (plan.T + 1) / config.trace_points);
  RunResult result;
  try {
    result = run_descent(built.x0, plan, oracle, root, options);
  } catch (const DivergenceError& e) {
    row.status = "diverged";
    row.message = e.what();
    row.iterations = e.trace().steps;
    row.samples_used = oracle.budget().consumed();
    return finish();
  }

  row.iterations = result.trace.steps;
  row.samples_used = oracle.budget().consumed();
  const MeanSd obj =
      sample_objective(env, result.x_bar, config.evaluation_draws, root.child(kEvaluationTag));
  row.obj_mean = obj.mean;
  row.obj_sd = obj.sd;
  if (env.has_gradient()) row.grad_norm_sq = env.gradient(result.x_bar).squaredNorm();

  if (trace) {
    const RngStream trace_stream = root.child(kTraceTag);
    for (std::size_t k = 0; k < result.trace.iterates.size(); ++k) {
      const std::size_t t = result.trace.iterate_index[k];
      TracePoint p;
      p.method = method.name;
      p.seed = seed;
      p.iteration = t;
      p.cumulative_samples = t == 0 ? 0 : result.trace.samples_cumulative[t - 1];
      p.obj_estimate = objective_estimate(env, result.trace.iterates[k], config.evaluation_draws,
                                          trace_stream.child(t));
      trace->push_back(std::move(p));
    }
  }
  return finish();
}

RunReport run_experiment(const ExperimentConfig& config, const BuiltEnvironment& built,
                         std::size_t threads) {
  RunReport report;
  for (const MethodSpec& spec : config.methods) {
    ResolvedMethod m = resolve_method(spec, built, config.tuning);
    if (config.tuning.enabled && !spec.plan) m = tune_method(m, config, built, threads);
    report.methods.push_back(std::move(m));
  }

  const std::size_t per = config.seeds.size();
  struct Job {
    ResultRow row;
    std::vector<TracePoint> trace;
  };
  auto jobs = parallel_map(report.methods.size() * per, threads, [&](std::size_t i) {
    Job job;
    job.row = run_single(report.methods[i / per], config.seeds[i % per], config, built, &job.trace);
    return job;
  });
  for (auto& job : jobs) {
    report.rows.push_back(std::move(job.row));
    for (auto& p : job.trace) report.trace.push_back(std::move(p));
  }

  for (const ResolvedMethod& m : report.methods) {
    SummaryRow s;
    s.method = m.name;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const ResultRow& r : report.rows) {
      if (r.method != m.name || r.status != "ok") continue;
      ++s.runs;
      sum += r.obj_mean;
      sum_sq += r.obj_mean * r.obj_mean;
    }
    const double n = static_cast<double>(s.runs);
    s.obj_mean = s.runs ? sum / n : kNaN;
    s.obj_sd = s.runs > 1 ? std::sqrt(std::max(0.0, (sum_sq - n * s.obj_mean * s.obj_mean) /
                                                        (n - 1.0)))
                          : (s.runs ? 0.0 : kNaN);
    report.summary.push_back(std::move(s));
  }
  return report;
}

void write_results_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows) {
  auto out = open_csv(path);
  out << "method,seed,status,obj_mean,obj_sd,samples_used,iterations,grad_norm_sq\n";
  for (const ResultRow& r : rows) {
    out << r.method << ',' << r.seed << ',' << r.status << ',' << format_number(r.obj_mean) << ','
        << format_number(r.obj_sd) << ',' << r.samples_used << ',' << r.iterations << ','
        << format_optional(r.grad_norm_sq) << '\n';
  }
}

void write_timing_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows) {
  auto out = open_csv(path);
  out << "method,seed,wall_seconds\n";
  for (const ResultRow& r : rows) {
    out << r.method << ',' << r.seed << ',' << format_number(r.wall_seconds) << '\n';
  }
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<TracePoint>& trace) {
  auto out = open_csv(path);
  out << "method,seed,iteration,cumulative_samples,obj_estimate\n";
  for (const TracePoint& p : trace) {
    out << p.method << ',' << p.seed << ',' << p.iteration << ',' << p.cumulative_samples << ','
        << format_number(p.obj_estimate) << '\n';
  }
}

void write_summary_csv(const std::filesystem::path& path, const std::vector<SummaryRow>& rows) {
  auto out = open_csv(path);
  out << "method,runs,obj_mean,obj_sd\n";
  for (const SummaryRow& s : rows) {
    out << s.method << ',' << s.runs << ',' << format_number(s.obj_mean) << ','
        << format_number(s.obj_sd) << '\n';
  }
}

void write_methods_csv(const std::filesystem::path& path,
                       const std::vector<ResolvedMethod>& methods) {
  auto out = open_csv(path);
  out << "method,kind,mu,N,m,step,tuned,tuning_score\n";
  for (const ResolvedMethod& m : methods) {
    out << m.name << ',' << to_string(m.estimator.kind) << ',' << format_number(m.estimator.mu)
        << ',' << m.estimator.N << ',' << m.estimator.m << ',' << format_number(m.step) << ','
        << (m.tuned ? "true" : "false") << ','
        << (m.tuned ? format_number(m.tuning_score) : std::string()) << '\n';
  }
}

int cmd_run(const std::filesystem::path& config_path, const std::filesystem::path& out_dir,
            std::optional<std::uint64_t> seed, std::size_t threads) {
  try {
    ExperimentConfig config = load_config(config_path);
    if (seed) config.seeds = {*seed};
    const BuiltEnvironment built = build_environment(config, config_path.parent_path());
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw ConfigError(out_dir.string() + ": " + ec.message());
    const RunReport report = run_experiment(config, built, threads);
    write_results_csv(out_dir / "results.csv", report.rows);
    write_trace_csv(out_dir / "trace.csv", report.trace);
    write_summary_csv(out_dir / "summary.csv", report.summary);
    write_methods_csv(out_dir / "methods.csv", report.methods);
    write_timing_csv(out_dir / "timing.csv", report.rows);
    for (const SummaryRow& s : report.summary) {
      std::cout << s.method << ": runs=" << s.runs << " obj_mean=" << format_number(s.obj_mean)
                << " obj_sd=" << format_number(s.obj_sd) << '\n';
    }
    for (const ResultRow& r : report.rows) {
      if (r.status != "ok") {
        std::cout << r.method << " seed " << r.seed << ": " << r.status << ": " << r.message
                  << '\n';
      }
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace zodd::harness
