#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace zodd::harness {

enum class Suite { moments, unbiasedness, lemma_bounds, n_dominance, descent_lemma };

std::string_view to_string(Suite suite) noexcept;
Suite parse_suite(std::string_view text);

/// One statistical check. `empirical` must not exceed `bound`; `margin` is
/// bound - empirical.
struct CheckResult {
  std::string suite;
  std::string lemma;
  std::string grid_point;
  std::string statistic;
  double empirical = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  bool passed = false;
};

struct VerifyOptions {
  std::uint64_t seed = 20250101;
  std::size_t threads = 1;
  std::size_t draws = 100000;     // Monte-Carlo draws for moments / unbiasedness
  std::size_t replicates = 2000;  // estimator replicates for MSE checks
  std::size_t descent_runs = 10;
  double z_threshold = 5.0;
};

/// E||u||^2, E[s s^T], E[(a^T s)^2 s s^T], E[(a^T u)^2 u u^T] and
/// E[||u||^k u u^T] (k = 2, 4) at d = 2, 5, 10; max entrywise z-score.
std::vector<CheckResult> verify_moments(const VerifyOptions& options);

/// Mean of sphere / gaussian estimates against grad F on the noise-free
/// quadratic (d = 5, mu = 0.1), and the one-point mean against its smoothed
/// target; max coordinate z-score.
std::vector<CheckResult> verify_unbiasedness(const VerifyOptions& options);

/// Empirical MSE against the gradient-Lipschitz and Hessian-Lipschitz (H = 0)
/// bounds over mu in {0.05, 0.1, 0.2} x N in {10, 100} x m in {1, 10}, plus
/// the sphere / gaussian MSE ratio with mu_ga = mu_sp / sqrt(d).
std::vector<CheckResult> verify_lemma_bounds(const VerifyOptions& options);

/// MSE(N = 100, m = 1) <= MSE(N = 1, m = 100) for sphere and gaussian.
std::vector<CheckResult> verify_n_dominance(const VerifyOptions& options);

/// Descent inequality on seeded quadratic runs, one check per run.
std::vector<CheckResult> verify_descent_lemma(const VerifyOptions& options);

std::vector<CheckResult> run_suite(Suite suite, const VerifyOptions& options);

/// Tab-separated report: suite, lemma, grid point, statistic, empirical,
/// bound, margin, PASS/FAIL.
void write_report(std::ostream& out, const std::vector<CheckResult>& results);

/// `zodd verify`: writes verify_report.txt; exit 0 when every check passes, 1 otherwise.
int cmd_verify(const std::vector<Suite>& suites, const std::filesystem::path& out_dir,
               const VerifyOptions& options);

}  // namespace zodd::harness
