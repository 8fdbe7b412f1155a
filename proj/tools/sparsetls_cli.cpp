// sparsetls command-line driver: instance generation, single solves and the
// CSV experiment suite (trace, lambda/xi sweeps, per-iteration benchmark).

#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sparsetls/experiments.hpp"
#include "sparsetls/instance_io.hpp"

namespace fs = std::filesystem;
using namespace sparsetls;

namespace {

struct Options {
  std::string scenario = "s1";
  int cols = 0;
  int rows = 0;
  int sparsity = 0;
  std::string ensemble = "gaussian";
  std::optional<double> lambda;
  std::optional<double> xi;
  std::vector<double> lambdas;
  std::vector<double> xis;
  int trials = 100;
  std::uint64_t seed = 0;
  std::optional<int> iters;
  std::string algo = "both";
  std::string out = ".";
  unsigned threads = 0;
  int trial = 0;
  std::string instance;
};

// Thrown for argument combinations CLI11 cannot express; maps to exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<NamedScenario> scenarios_from(const Options& o) {
  if (o.scenario == "all") return {NamedScenario::s1(), NamedScenario::s2()};
  if (o.scenario == "custom") {
    if (o.cols <= 0 || o.rows <= 0 || o.sparsity <= 0) {
      throw UsageError("--scenario custom needs --cols, --rows and --sparsity");
    }
    try {
      return {NamedScenario::custom(o.cols, o.rows, o.sparsity, parse_ensemble(o.ensemble))};
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  return {NamedScenario::by_name(o.scenario)};
}

std::vector<Algorithm> algorithms_from(const std::string& algo) {
  if (algo == "both") return {Algorithm::Pg, Algorithm::Adcd};
  return {parse_algorithm(algo)};
}

ExperimentConfig config_for(const Options& o, const NamedScenario& sc) {
  ExperimentConfig cfg;
  cfg.scenario = sc;
  cfg.trials = o.trials;
  cfg.master_seed = o.seed;
  cfg.iterations = o.iters;
  cfg.algorithms = algorithms_from(o.algo);
  cfg.out_dir = o.out;
  cfg.threads = o.threads;
  if (o.lambda) cfg.lambda = *o.lambda;
  if (o.xi) cfg.xi = *o.xi;
  if (!o.lambdas.empty()) {
    cfg.lambda_grid = o.lambdas;
  } else if (o.lambda) {
    cfg.lambda_grid = {*o.lambda};
  }
  if (!o.xis.empty()) {
    cfg.xi_grid = o.xis;
  } else if (o.xi) {
    cfg.xi_grid = {*o.xi};
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

template <class Row>
void append(std::vector<Row>& all, std::vector<Row> more) {
  all.insert(all.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

int cmd_generate(const Options& o) {
  for (const auto& sc : scenarios_from(o)) {
    const auto cfg = config_for(o, sc);
    const ProblemInstance inst = trial_instance(cfg, o.trial, cfg.xi);
    const InstanceHeader h{sc.config.M, sc.config.N, sc.config.K, cfg.xi, o.seed};
    const fs::path path =
        fs::path(o.out) / fmt::format("instance_{}_seed{}_trial{}.txt", sc.name, o.seed, o.trial);
    save_instance(path, h, inst);
    std::cout << path.string() << '\n';
  }
  return 0;
}

int cmd_solve(const Options& o) {
  if (!o.lambda) throw UsageError("solve requires --lambda");
  if (!(*o.lambda > 0.0)) throw UsageError("--lambda must be positive");

  ProblemInstance inst;
  int iterations = 0;
  if (!o.instance.empty()) {
    inst = load_instance(o.instance).instance;
    iterations = o.iters ? *o.iters : iteration_schedule(*o.lambda, Schedule::S1);
  } else {
    const auto scs = scenarios_from(o);
    if (scs.size() != 1) throw UsageError("solve takes a single scenario");
    const auto cfg = config_for(o, scs.front());
    inst = trial_instance(cfg, o.trial, cfg.xi);
    iterations = cfg.iterations_for(*o.lambda);
  }
  if (iterations < 1) throw UsageError("--iters must be >= 1");

  SolveOptions opts;
  opts.iterations = iterations;
  opts.ground_truth = inst.x_o;
  for (Algorithm algo : algorithms_from(o.algo)) {
    const SolveResult res = run_solver(algo, inst, *o.lambda, opts);
    const auto& last = res.trace.back();
    const auto support = (res.x.array() != 0.0).count();
    std::cout << fmt::format("algorithm={} iterations={} sq_error={:.17g} cost={:.17g} nnz={}\n",
                             to_string(algo), res.trace.size(), last.sq_error.value_or(0.0),
                             last.cost, support);
  }
  return 0;
}

int cmd_trace(const Options& o) {
  std::vector<TraceRow> rows;
  for (const auto& sc : scenarios_from(o)) {
    const auto cfg = config_for(o, sc);
    append(rows, run_trace(cfg, cfg.lambda, cfg.xi));
  }
  const fs::path path = fs::path(o.out) / "trace.csv";
  write_file(path, [&](std::ostream& os) { write_trace_csv(os, rows); });
  std::cout << path.string() << '\n';
  return 0;
}

int cmd_sweep_lambda(const Options& o) {
  std::vector<LambdaSweepRow> rows;
  for (const auto& sc : scenarios_from(o)) append(rows, run_lambda_sweep(config_for(o, sc)));
  const fs::path path = fs::path(o.out) / "lambda_sweep.csv";
  write_file(path, [&](std::ostream& os) { write_lambda_sweep_csv(os, rows); });
  std::cout << path.string() << '\n';
  return 0;
}

int cmd_sweep_xi(const Options& o) {
  std::vector<AggregateRow> rows;
  for (const auto& sc : scenarios_from(o)) append(rows, run_xi_sweep(config_for(o, sc)));
  const fs::path path = fs::path(o.out) / "xi_sweep.csv";
  write_file(path, [&](std::ostream& os) { write_xi_sweep_csv(os, rows); });
  std::cout << path.string() << '\n';
  return 0;
}

int cmd_bench(const Options& o) {
  std::vector<BenchRow> rows;
  for (const auto& sc : scenarios_from(o)) {
    const auto cfg = config_for(o, sc);
    append(rows, run_bench(cfg, cfg.lambda_grid));
  }
  const fs::path path = fs::path(o.out) / "bench.csv";
  write_file(path, [&](std::ostream& os) { write_bench_csv(os, rows); });
  std::cout << path.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse total least-squares reconstruction for perturbed compressive sensing"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a file of 'key = value' lines");

  Options o;
  app.add_option("--scenario", o.scenario, "s1, s2, all (both named scenarios) or custom")
      ->check(CLI::IsMember({"s1", "s2", "all", "custom"}))
      ->capture_default_str();
  app.add_option("--cols", o.cols, "Custom scenario: column count N");
  app.add_option("--rows", o.rows, "Custom scenario: row count M");
  app.add_option("--sparsity", o.sparsity, "Custom scenario: nonzeros K");
  app.add_option("--ensemble", o.ensemble, "Custom scenario: gaussian or rademacher")
      ->check(CLI::IsMember({"gaussian", "rademacher"}));
  app.add_option("--lambda", o.lambda, "Regularization weight (single value)");
  app.add_option("--xi", o.xi, "Perturbation-variance parameter (single value)");
  app.add_option("--lambdas", o.lambdas, "Lambda grid, comma separated")->delimiter(',');
  app.add_option("--xis", o.xis, "Xi grid, comma separated")->delimiter(',');
  app.add_option("--trials", o.trials, "Independent trials per grid point")->capture_default_str();
  app.add_option("--seed", o.seed, "Master seed")->capture_default_str();
  app.add_option("--iters", o.iters, "Iteration count (overrides the lambda schedule)");
  app.add_option("--algo", o.algo, "pg, adcd or both")
      ->check(CLI::IsMember({"pg", "adcd", "both"}))
      ->capture_default_str();
  app.add_option("--out", o.out, "Output directory")->capture_default_str();
  app.add_option("--threads", o.threads, "Worker threads for trials (0 = all cores)");
  app.add_option("--trial", o.trial, "Trial index for generate/solve")->capture_default_str();
  app.add_option("--instance", o.instance, "solve: read the instance from a dump file");

  auto sub = [&](const char* name, const char* desc) {
    auto* s = app.add_subcommand(name, desc);
    s->fallthrough();
    return s;
  };
  auto* generate = sub("generate", "Write one problem instance to a text dump");
  auto* solve = sub("solve", "Solve one instance and print the final error and cost");
  auto* trace = sub("trace", "Per-iteration mean error and cost (trace.csv)");
  auto* sweep_lambda = sub("sweep-lambda", "Converged error and support errors vs lambda");
  auto* sweep_xi = sub("sweep-xi", "Converged error vs xi");
  auto* bench = sub("bench", "Per-iteration wall-clock and flop comparison (bench.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*generate) return cmd_generate(o);
    if (*solve) return cmd_solve(o);
    if (*trace) return cmd_trace(o);
    if (*sweep_lambda) return cmd_sweep_lambda(o);
    if (*sweep_xi) return cmd_sweep_xi(o);
    if (*bench) return cmd_bench(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
