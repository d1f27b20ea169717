// zodd: command-line front end for descent runs, statistical verification and
// parameter planning.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zodd/errors.hpp"
#include "zodd/harness/config.hpp"
#include "zodd/harness/plan.hpp"
#include "zodd/harness/run.hpp"
#include "zodd/harness/verify.hpp"

namespace {

constexpr int kConfigError = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zeroth-order descent under decision-dependent distributions"};
  app.require_subcommand(1);

  std::size_t threads = 1;
  app.add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();

  // run
  auto* run = app.add_subcommand("run", "Run descent experiments from a config file");
  std::string run_config;
  std::string run_out = "out";
  std::optional<std::uint64_t> run_seed;
  run->add_option("--config", run_config, "Experiment config (YAML)")->required();
  run->add_option("--out", run_out, "Output directory")->capture_default_str();
  run->add_option("--seed", run_seed, "Replace the config's seed list with one seed");
  run->add_option("--threads", threads, "Worker threads (0 = all cores)");

  // verify
  auto* verify = app.add_subcommand("verify", "Run statistical verification suites");
  std::vector<std::string> suites;
  std::string verify_out = "out";
  zodd::harness::VerifyOptions vopt;
  verify->add_option("--suite", suites,
                     "moments, unbiasedness, lemma_bounds, n_dominance, descent_lemma or all")
      ->required();
  verify->add_option("--out", verify_out, "Output directory")->capture_default_str();
  verify->add_option("--seed", vopt.seed, "Base seed")->capture_default_str();
  verify->add_option("--draws", vopt.draws, "Monte-Carlo draws per moment check")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  verify->add_option("--replicates", vopt.replicates, "Estimator replicates per MSE check")
      ->capture_default_str()
      ->check(CLI::Range(2, 100000000));
  verify->add_option("--z-threshold", vopt.z_threshold, "Standard errors allowed per check")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--threads", threads, "Worker threads (0 = all cores)");

  // plan
  auto* plan = app.add_subcommand("plan", "Print the parameter schedule for a target accuracy");
  zodd::harness::PlanRequest req;
  std::string kind = "sphere";
  std::string regime = "grad";
  std::optional<double> H;
  std::optional<double> c_T;
  std::optional<double> gap;
  bool allow_any_epsilon = false;
  plan->add_option("--kind", kind, "coordinate, sphere or gaussian")->required();
  plan->add_option("--regime", regime, "grad or hessian")->capture_default_str();
  plan->add_option("--epsilon", req.epsilon, "Target accuracy")->required();
  plan->add_option("--dimension,-d", req.dimension, "Decision dimension")->required();
  plan->add_option("--sigma", req.sigma, "Noise bound")->capture_default_str();
  plan->add_option("--M", req.M, "Smoothness constant")->capture_default_str();
  plan->add_option("--H", H, "Hessian-Lipschitz constant");
  plan->add_option("--c-mu", req.constants.c_mu, "Constant in mu")->capture_default_str();
  plan->add_option("--c-m", req.constants.c_m, "Constant in m")->capture_default_str();
  plan->add_option("--c-T", c_T, "Constant in T");
  plan->add_option("--gap", gap, "Known F(x0) - F*, sets c_T = 16 M gap");
  plan->add_flag("--allow-any-epsilon", allow_any_epsilon,
                 "Skip the epsilon range check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*run) {
      return zodd::harness::cmd_run(run_config, run_out, run_seed, threads);
    }
    if (*verify) {
      std::vector<zodd::harness::Suite> parsed;
      for (const auto& s : suites) {
        if (s == "all") {
          parsed = {zodd::harness::Suite::moments, zodd::harness::Suite::unbiasedness,
                    zodd::harness::Suite::lemma_bounds, zodd::harness::Suite::n_dominance,
                    zodd::harness::Suite::descent_lemma};
          break;
        }
        parsed.push_back(zodd::harness::parse_suite(s));
      }
      vopt.threads = threads;
      return zodd::harness::cmd_verify(parsed, verify_out, vopt);
    }
    if (*plan) {
      req.kind = zodd::parse_estimator_kind(kind);
      req.regime = zodd::parse_regime(regime);
      req.H = H;
      req.constants.c_T = c_T;
      req.constants.initial_gap = gap;
      req.constants.enforce_epsilon_range = !allow_any_epsilon;
      return zodd::harness::cmd_plan(req);
    }
  } catch (const zodd::harness::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const zodd::Error& e) {
    std::cerr << "argument error: " << e.what() << '\n';
    return kConfigError;
  }
  return kConfigError;
}
