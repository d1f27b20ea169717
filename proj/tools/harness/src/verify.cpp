#include "zodd/harness/verify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "zodd/descent.hpp"
#include "zodd/errors.hpp"
#include "zodd/estimators.hpp"
#include "zodd/harness/config.hpp"
#include "zodd/harness/csv.hpp"
#include "zodd/oracle.hpp"
#include "zodd/parallel.hpp"
#include "zodd/quadratic_env.hpp"
#include "zodd/smoothing_math.hpp"

namespace zodd::harness {
namespace {

constexpr std::size_t kDim = 5;
constexpr std::uint64_t kEnvSeed = 7;

QuadraticEnv verification_env(double sigma) {
  QuadraticSpec spec;
  spec.dimension = kDim;
  spec.sigma = sigma;
  spec.lambda_min = 0.1;
  spec.lambda_max = 1.0;
  spec.seed = kEnvSeed;
  return make_quadratic_env(spec);
}

Point verification_point() { return Point::Ones(static_cast<Eigen::Index>(kDim)); }

std::string point_label(const EstimatorConfig& cfg) {
  std::ostringstream out;
  out << to_string(cfg.kind) << " mu=" << format_number(cfg.mu) << " N=" << cfg.N
      << " m=" << cfg.m;
  return out.str();
}

CheckResult upper_check(std::string suite, std::string lemma, std::string point,
                        std::string statistic, double empirical, double bound) {
  CheckResult r{std::move(suite), std::move(lemma), std::move(point), std::move(statistic),
                empirical, bound, bound - empirical, empirical <= bound};
  return r;
}

double max_z(const Matrix& mean, const Matrix& se, const Matrix& target) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < mean.size(); ++i) {
    const double diff = std::abs(mean.data()[i] - target.data()[i]);
    const double s = se.data()[i];
    const double z = s > 0.0 ? diff / s : (diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
    worst = std::max(worst, z);
  }
  return worst;
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

// Empirical E||g - grad F(x)||^2 over independent replicates.
MeanSe estimator_mse(const Environment& env, const Point& x, const EstimatorConfig& cfg,
                     std::size_t replicates, const RngStream& rng, std::size_t threads) {
  EnvironmentOracle oracle(env);
  const Vector grad = env.gradient(x);
  const auto errors = parallel_map(replicates, threads, [&](std::size_t r) {
    return (estimate_gradient(x, cfg, oracle, rng.child(r)).g - grad).squaredNorm();
  });
  return mean_se(errors);
}

// Mean estimate over replicates with per-coordinate standard errors.
McVector estimator_mean(const Environment& env, const Point& x, const EstimatorConfig& cfg,
                        std::size_t replicates, const RngStream& rng, std::size_t threads) {
  EnvironmentOracle oracle(env);
  const auto d = static_cast<Eigen::Index>(env.dimension());
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (replicates + kChunk - 1) / kChunk;
  struct Sums {
    Vector sum;
    Vector sum_sq;
  };
  const auto parts = parallel_map(chunks, threads, [&](std::size_t c) {
    Sums s{Vector::Zero(d), Vector::Zero(d)};
    const std::size_t end = std::min(replicates, (c + 1) * kChunk);
    for (std::size_t r = c * kChunk; r < end; ++r) {
      const Vector g = estimate_gradient(x, cfg, oracle, rng.child(r)).g;
      s.sum += g;
      s.sum_sq += g.cwiseAbs2();
    }
    return s;
  });
  Vector sum = Vector::Zero(d);
  Vector sum_sq = Vector::Zero(d);
  for (const auto& p : parts) {
    sum += p.sum;
    sum_sq += p.sum_sq;
  }
  const double n = static_cast<double>(replicates);
  McVector out;
  out.draws = replicates;
  out.mean = sum / n;
  const Vector var = ((sum_sq - n * out.mean.cwiseAbs2()) / (n - 1.0)).cwiseMax(0.0);
  out.standard_error = (var / n).cwiseSqrt();
  return out;
}

}  // namespace

std::string_view to_string(Suite suite) noexcept {
  switch (suite) {
    case Suite::moments: return "moments";
    case Suite::unbiasedness: return "unbiasedness";
    case Suite::lemma_bounds: return "lemma_bounds";
    case Suite::n_dominance: return "n_dominance";
    case Suite::descent_lemma: return "descent_lemma";
  }
  return "unknown";
}

Suite parse_suite(std::string_view text) {
  for (Suite s : {Suite::moments, Suite::unbiasedness, Suite::lemma_bounds, Suite::n_dominance,
                  Suite::descent_lemma}) {
    if (text == to_string(s)) return s;
  }
  throw ConfigError("unknown suite '" + std::string(text) +
                    "' (expected moments, unbiasedness, lemma_bounds, n_dominance or "
                    "descent_lemma)");
}

std::vector<CheckResult> verify_moments(const VerifyOptions& o) {
  std::vector<CheckResult> out;
  const RngStream root(o.seed, 0x301);
  const char* suite = "moments";
  for (std::size_t d : {2u, 5u, 10u}) {
    const RngStream rng = root.child(d);
    Vector a(static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < a.size(); ++i) a[i] = 1.0 - 0.5 * static_cast<double>(i % 3);
    const std::string dim = "d=" + std::to_string(d);

    const McScalar norm = sample_gaussian_norm_sq(d, o.draws, rng.child(1));
    const double z_norm = std::abs(norm.mean - static_cast<double>(d)) / norm.standard_error;
    out.push_back(upper_check(suite, "E||u||^2 = d", dim, "|z|", z_norm, o.z_threshold));

    struct Case {
      MomentKind kind;
      int k;
      bool with_a;
      const char* lemma;
    };
    const Case cases[] = {
        {MomentKind::sphere_kth_ssT, 0, false, "E[s s^T] = I/d"},
        {MomentKind::sphere_quad_form, 0, true, "E[(a^T s)^2 s s^T] = (a^T a I + 2 a a^T)/(d(d+2))"},
        {MomentKind::gauss_quad_form, 0, true, "E[(a^T u)^2 u u^T] = a^T a I + 2 a a^T"},
        {MomentKind::gauss_kth_uuT, 2, false, "E[||u||^2 u u^T] = (d+2) I"},
        {MomentKind::gauss_kth_uuT, 4, false, "E[||u||^4 u u^T] = (d+2)(d+4) I"},
    };
    std::uint64_t tag = 2;
    for (const Case& c : cases) {
      const std::optional<Vector> av = c.with_a ? std::optional<Vector>(a) : std::nullopt;
      const Matrix exact = analytic_moment(c.kind, d, c.k, av);
      const McMatrix mc = sample_moment(c.kind, d, c.k, av, o.draws, rng.child(tag++), o.threads);
      out.push_back(upper_check(suite, c.lemma, dim, "max entry |z|",
                                max_z(mc.mean, mc.standard_error, exact), o.z_threshold));
    }
  }
  return out;
}

std::vector<CheckResult> verify_unbiasedness(const VerifyOptions& o) {
  std::vector<CheckResult> out;
  const QuadraticEnv env = verification_env(0.0);
  const Point x = verification_point();
  const Vector grad = env.gradient(x);
  const RngStream root(o.seed, 0x302);
  const char* suite = "unbiasedness";

  for (EstimatorKind kind : {EstimatorKind::sphere, EstimatorKind::gaussian}) {
    EstimatorConfig cfg;
    cfg.kind = kind;
    cfg.mu = 0.1;
    const McVector mean = estimator_mean(env, x, cfg, o.draws, root.child(static_cast<int>(kind)),
                                         o.threads);
    const char* lemma = kind == EstimatorKind::sphere ? "E[g_sphere] = grad F_mu,B = grad F"
                                                      : "E[g_gaussian] = grad F_mu,N = grad F";
    out.push_back(upper_check(suite, lemma, point_label(cfg) + " d=5 sigma=0", "max coord |z|",
                              max_z(mean.mean, mean.standard_error, grad), o.z_threshold));
  }

  EstimatorConfig one;
  one.kind = EstimatorKind::one_point;
  one.mu = 0.1;
  const McVector est = estimator_mean(env, x, one, o.draws, root.child(10), o.threads);
  const SmoothedFunctionOracle smooth(env, one.mu, SmoothingKernel::ball, o.draws);
  const McVector target = smooth.one_point_mean(x, root.child(11), o.threads);
  const Vector se = (est.standard_error.cwiseAbs2() + target.standard_error.cwiseAbs2()).cwiseSqrt();
  out.push_back(upper_check(suite, "E[g_one_point] = (d/(2mu)) E[F(x+mu s) s]",
                            point_label(one) + " d=5 sigma=0", "max coord |z|",
                            max_z(est.mean, se, target.mean), o.z_threshold));
  return out;
}

std::vector<CheckResult> verify_lemma_bounds(const VerifyOptions& o) {
  std::vector<CheckResult> out;
  const QuadraticEnv env = verification_env(1.0);
  const Point x = verification_point();
  const auto c = *env.constants();
  const double grad_sq = env.gradient(x).squaredNorm();
  const RngStream root(o.seed, 0x303);
  const char* suite = "lemma_bounds";
  const double d = static_cast<double>(kDim);

  std::uint64_t tag = 0;
  auto check_bounds = [&](const EstimatorConfig& cfg, const MeanSe& mse) {
    const double allowance = o.z_threshold * mse.se;
    const double grad_form =
        mse_bound(cfg.kind, cfg.mu, cfg.N, cfg.m, kDim, c.sigma, c.M, std::nullopt, grad_sq);
    const double hess_form =
        mse_bound(cfg.kind, cfg.mu, cfg.N, cfg.m, kDim, c.sigma, c.M, 0.0, grad_sq);
    const char* names[3][2] = {{"MSE <= 3s^2 d/(2mu^2 m) + 3M^2 d mu^2/4", "MSE <= 3s^2 d/(2mu^2 m) + H^2 mu^4 d/12 (H=0)"},
                               {"MSE <= sphere gradient-Lipschitz bound", "MSE <= sphere Hessian-Lipschitz bound (H=0)"},
                               {"MSE <= gaussian gradient-Lipschitz bound", "MSE <= gaussian Hessian-Lipschitz bound (H=0)"}};
    const int row = cfg.kind == EstimatorKind::coordinate ? 0 : cfg.kind == EstimatorKind::sphere ? 1 : 2;
    out.push_back(upper_check(suite, names[row][0], point_label(cfg), "MSE vs bound+5se",
                              mse.mean, grad_form + allowance));
    out.push_back(upper_check(suite, names[row][1], point_label(cfg), "MSE vs bound+5se",
                              mse.mean, hess_form + allowance));
  };

  for (double mu : {0.05, 0.1, 0.2}) {
    for (std::size_t m : {1u, 10u}) {
      EstimatorConfig cfg{EstimatorKind::coordinate, mu, kDim, m, false};
      check_bounds(cfg, estimator_mse(env, x, cfg, o.replicates, root.child(tag++), o.threads));
    }
    for (std::size_t N : {10u, 100u}) {
      for (std::size_t m : {1u, 10u}) {
        EstimatorConfig sp{EstimatorKind::sphere, mu, N, m, false};
        const MeanSe mse_sp = estimator_mse(env, x, sp, o.replicates, root.child(tag++), o.threads);
        check_bounds(sp, mse_sp);
        EstimatorConfig ga{EstimatorKind::gaussian, mu, N, m, false};
        check_bounds(ga, estimator_mse(env, x, ga, o.replicates, root.child(tag++), o.threads));

        EstimatorConfig ga_scaled{EstimatorKind::gaussian, mu / std::sqrt(d), N, m, false};
        const MeanSe mse_ga =
            estimator_mse(env, x, ga_scaled, o.replicates, root.child(tag++), o.threads);
        const double ratio = std::max(mse_sp.mean / mse_ga.mean, mse_ga.mean / mse_sp.mean);
        out.push_back(upper_check(suite, "MSE_sphere(mu) ~ MSE_gaussian(mu/sqrt(d))",
                                  point_label(sp) + " vs gaussian mu=" + format_number(ga_scaled.mu),
                                  "max(ratio, 1/ratio)", ratio, 4.0));
      }
    }
  }
  return out;
}

std::vector<CheckResult> verify_n_dominance(const VerifyOptions& o) {
  std::vector<CheckResult> out;
  const QuadraticEnv env = verification_env(1.0);
  const Point x = verification_point();
  const RngStream root(o.seed, 0x304);
  std::uint64_t tag = 0;
  for (EstimatorKind kind : {EstimatorKind::sphere, EstimatorKind::gaussian}) {
    for (double mu : {0.05, 0.1, 0.2}) {
      const EstimatorConfig wide{kind, mu, 100, 1, false};
      const EstimatorConfig deep{kind, mu, 1, 100, false};
      const MeanSe a = estimator_mse(env, x, wide, o.replicates, root.child(tag++), o.threads);
      const MeanSe b = estimator_mse(env, x, deep, o.replicates, root.child(tag++), o.threads);
      const double allowance = o.z_threshold * std::sqrt(a.se * a.se + b.se * b.se);
      out.push_back(upper_check("n_dominance", "MSE(N=100,m=1) <= MSE(N=1,m=100)",
                                std::string(to_string(kind)) + " mu=" + format_number(mu) +
                                    " budget=200",
                                "MSE(N=100) vs MSE(m=100)+5se", a.mean, b.mean + allowance));
    }
  }
  return out;
}

std::vector<CheckResult> verify_descent_lemma(const VerifyOptions& o) {
  std::vector<CheckResult> out;
  const QuadraticEnv env = verification_env(1.0);
  const Point x0 = Point::Constant(static_cast<Eigen::Index>(kDim), 3.0);
  const double M = env.smoothness();
  const EstimatorKind kinds[] = {EstimatorKind::coordinate, EstimatorKind::sphere,
                                 EstimatorKind::gaussian};
  for (std::size_t run = 0; run < o.descent_runs; ++run) {
    ParameterPlan plan;
    plan.kind = kinds[run % 3];
    plan.mu = 0.1;
    plan.N = 10;
    plan.m = 1;
    plan.eta = 1.0 / (4.0 * M);
    plan.M = M;
    plan.T = 200;
    EnvironmentOracle oracle(env);
    RunOptions options;
    options.analytic = &env;
    const RunResult result =
        run_descent(x0, plan, oracle, RngStream(o.seed + run, 0x305), options);
    const DescentLemmaCheck check =
        check_descent_lemma(result.trace, plan.eta, *env.minimum_value());
    CheckResult r{"descent_lemma",
                  "mean ||grad F||^2 <= 4 gap/(eta(T+1)) + 3 mean ||grad F - g||^2",
                  std::string(to_string(plan.kind)) + " run=" + std::to_string(run) + " T=200",
                  "lhs vs rhs",
                  check.lhs,
                  check.rhs,
                  check.rhs - check.lhs,
                  check.holds};
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<CheckResult> run_suite(Suite suite, const VerifyOptions& options) {
  switch (suite) {
    case Suite::moments: return verify_moments(options);
    case Suite::unbiasedness: return verify_unbiasedness(options);
    case Suite::lemma_bounds: return verify_lemma_bounds(options);
    case Suite::n_dominance: return verify_n_dominance(options);
    case Suite::descent_lemma: return verify_descent_lemma(options);
  }
  return {};
}

void write_report(std::ostream& out, const std::vector<CheckResult>& results) {
  out << "suite\tlemma\tgrid_point\tstatistic\tempirical\tbound\tmargin\tresult\n";
  for (const CheckResult& r : results) {
    out << r.suite << '\t' << r.lemma << '\t' << r.grid_point << '\t' << r.statistic << '\t'
        << format_number(r.empirical) << '\t' << format_number(r.bound) << '\t'
        << format_number(r.margin) << '\t' << (r.passed ? "PASS" : "FAIL") << '\n';
  }
}

int cmd_verify(const std::vector<Suite>& suites, const std::filesystem::path& out_dir,
               const VerifyOptions& options) {
  std::vector<CheckResult> all;
  for (Suite s : suites) {
    const auto results = run_suite(s, options);
    std::size_t failed = 0;
    for (const auto& r : results) failed += r.passed ? 0 : 1;
    std::cout << to_string(s) << ": " << results.size() - failed << "/" << results.size()
              << " checks passed\n";
    all.insert(all.end(), results.begin(), results.end());
  }
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    std::cerr << "config error: " << out_dir.string() << ": " << ec.message() << '\n';
    return 2;
  }
  std::ofstream report(out_dir / "verify_report.txt", std::ios::binary);
  if (!report) {
    std::cerr << "config error: cannot write " << (out_dir / "verify_report.txt").string() << '\n';
    return 2;
  }
  write_report(report, all);
  const bool ok = std::all_of(all.begin(), all.end(), [](const auto& r) { return r.passed; });
  return ok ? 0 : 1;
}

}  // namespace zodd::harness
