#include "sparsetls/experiments.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "sparsetls/adcd.hpp"
#include "sparsetls/pg.hpp"

namespace sparsetls {

std::string to_string(Algorithm a) { return a == Algorithm::Pg ? "pg" : "adcd"; }

Algorithm parse_algorithm(const std::string& name) {
  if (name == "pg") return Algorithm::Pg;
  if (name == "adcd") return Algorithm::Adcd;
  throw std::invalid_argument("unknown algorithm '" + name + "' (expected pg or adcd)");
}

int iteration_schedule(double lambda, Schedule schedule) {
  const double hi_iters = schedule == Schedule::S1 ? 2800.0 : 3500.0;
  const double lo_iters = schedule == Schedule::S1 ? 40.0 : 50.0;
  const double lam = std::clamp(lambda, kScheduleLambdaLo, kScheduleLambdaHi);
  const double t = (std::log(lam) - std::log(kScheduleLambdaLo)) /
                   (std::log(kScheduleLambdaHi) - std::log(kScheduleLambdaLo));
  const double log_iters = std::log(hi_iters) + t * (std::log(lo_iters) - std::log(hi_iters));
  return static_cast<int>(std::lround(std::exp(log_iters)));
}

NamedScenario NamedScenario::s1() { return {"s1", ScenarioConfig::scenario1(), Schedule::S1, 1}; }
NamedScenario NamedScenario::s2() { return {"s2", ScenarioConfig::scenario2(), Schedule::S2, 2}; }

NamedScenario NamedScenario::custom(int N, int M, int K, Ensemble ensemble) {
  NamedScenario s{"custom", ScenarioConfig{N, M, K, ensemble, kDefaultXi, 0}, Schedule::S1, 3};
  s.config.validate();
  return s;
}

NamedScenario NamedScenario::by_name(const std::string& name) {
  if (name == "s1") return s1();
  if (name == "s2") return s2();
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (n < 1 || !(lo > 0.0) || !(hi >= lo)) throw std::invalid_argument("log_grid: bad range");
  if (n == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(n));
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = std::exp(a + (b - a) * k / (n - 1));
  // pin the endpoints exactly
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> default_lambda_grid() { return log_grid(kScheduleLambdaLo, kScheduleLambdaHi, 25); }
std::vector<double> default_xi_grid() { return log_grid(1e-4, 1e-1, 13); }

void ExperimentConfig::validate() const {
  scenario.config.validate();
  auto check_grid = [](const std::vector<double>& g, const char* name, bool allow_zero) {
    if (g.empty()) throw std::invalid_argument(std::string(name) + " grid is empty");
    for (double v : g) {
      if (!std::isfinite(v) || (allow_zero ? v < 0.0 : v <= 0.0)) {
        throw std::invalid_argument(std::string(name) + " grid has an invalid value");
      }
    }
    if (!std::is_sorted(g.begin(), g.end())) {
      throw std::invalid_argument(std::string(name) + " grid must be sorted ascending");
    }
  };
  check_grid(lambda_grid, "lambda", false);
  check_grid(xi_grid, "xi", true);
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (!(xi >= 0.0)) throw std::invalid_argument("xi must be non-negative");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (iterations && *iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (algorithms.empty()) throw std::invalid_argument("no algorithms selected");
}

int ExperimentConfig::iterations_for(double lam) const {
  return iterations ? *iterations : iteration_schedule(lam, scenario.schedule);
}

void for_each_trial(int trials, unsigned threads, const std::function<void(int)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max(trials, 1)));
  if (threads <= 1) {
    for (int t = 0; t < trials; ++t) body(t);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&] {
        for (int t = next++; t < trials; t = next++) {
          try {
            body(t);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = trials;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

ProblemInstance trial_instance(const ExperimentConfig& cfg, int trial, double xi) {
  ScenarioConfig sc = cfg.scenario.config;
  sc.xi = xi;
  sc.seed = cfg.master_seed;
  RngStream rng = derive_stream(cfg.master_seed, cfg.scenario.tag, static_cast<std::uint64_t>(trial));
  return generate_instance(sc, rng);
}

SolveResult run_solver(Algorithm algo, const ProblemInstance& inst, double lambda,
                       const SolveOptions& opts) {
  return algo == Algorithm::Pg ? pg_solve(inst.A, inst.b, lambda, opts)
                               : adcd_solve(inst.A, inst.b, lambda, opts);
}

PairedTrial run_paired_trial(const ExperimentConfig& cfg, int trial, double lambda, double xi,
                             int iterations, bool record_error) {
  const ProblemInstance inst = trial_instance(cfg, trial, xi);
  PairedTrial out;
  out.fingerprint = instance_fingerprint(inst);
  out.x_o = inst.x_o;
  SolveOptions opts;
  opts.iterations = iterations;
  if (record_error) opts.ground_truth = inst.x_o;
  for (Algorithm algo : cfg.algorithms) {
    out.fingerprints_seen.push_back(instance_fingerprint(inst));
    out.results.push_back(run_solver(algo, inst, lambda, opts));
  }
  return out;
}

std::vector<TraceRow> run_trace(const ExperimentConfig& cfg, double lambda, double xi) {
  cfg.validate();
  const int iterations = cfg.iterations_for(lambda);
  std::vector<PairedTrial> trials(static_cast<std::size_t>(cfg.trials));
  for_each_trial(cfg.trials, cfg.threads, [&](int t) {
    trials[static_cast<std::size_t>(t)] = run_paired_trial(cfg, t, lambda, xi, iterations, true);
  });

  std::vector<TraceRow> rows;
  const auto n_trials = static_cast<double>(cfg.trials);
  for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
    std::vector<double> err(static_cast<std::size_t>(iterations), 0.0);
    std::vector<double> cost(static_cast<std::size_t>(iterations), 0.0);
    for (const auto& tr : trials) {
      const auto& trace = tr.results[a].trace;
      for (std::size_t k = 0; k < trace.size(); ++k) {
        err[k] += trace[k].sq_error.value_or(0.0);
        cost[k] += trace[k].cost;
      }
    }
    for (int k = 0; k < iterations; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      rows.push_back({cfg.scenario.name, to_string(cfg.algorithms[a]), k + 1, err[ku] / n_trials,
                      cost[ku] / n_trials});
    }
  }
  return rows;
}

namespace {

// records[algo][trial] for one (lambda, xi) cell
std::vector<std::vector<TrialRecord>> run_cell(const ExperimentConfig& cfg, double lambda,
                                               double xi, int iterations) {
  std::vector<std::vector<TrialRecord>> records(
      cfg.algorithms.size(), std::vector<TrialRecord>(static_cast<std::size_t>(cfg.trials)));
  for_each_trial(cfg.trials, cfg.threads, [&](int t) {
    const auto tr = run_paired_trial(cfg, t, lambda, xi, iterations, false);
    for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
      records[a][static_cast<std::size_t>(t)] = evaluate_trial(tr.results[a].x, tr.x_o);
    }
  });
  return records;
}

}  // namespace

std::vector<LambdaSweepRow> run_lambda_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<LambdaSweepRow> rows;
  for (double lambda : cfg.lambda_grid) {
    const int iterations = cfg.iterations_for(lambda);
    const auto records = run_cell(cfg, lambda, cfg.xi, iterations);
    for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
      rows.push_back({aggregate(records[a], cfg.scenario.name, to_string(cfg.algorithms[a]), lambda),
                      iterations});
    }
  }
  return rows;
}

std::vector<AggregateRow> run_xi_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<AggregateRow> rows;
  const int iterations = cfg.iterations_for(cfg.lambda);
  for (double xi : cfg.xi_grid) {
    const auto records = run_cell(cfg, cfg.lambda, xi, iterations);
    for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
      rows.push_back(aggregate(records[a], cfg.scenario.name, to_string(cfg.algorithms[a]), xi));
    }
  }
  return rows;
}

std::vector<BenchRow> run_bench(const ExperimentConfig& cfg, const std::vector<double>& lambda_grid) {
  cfg.validate();
  using clock = std::chrono::steady_clock;
  std::vector<BenchRow> rows;
  for (double lambda : lambda_grid) {
    const int iterations = cfg.iterations_for(lambda);
    std::vector<double> ns(cfg.algorithms.size(), 0.0);
    std::vector<double> flops(cfg.algorithms.size(), 0.0);
    for (int t = 0; t < cfg.trials; ++t) {
      const ProblemInstance inst = trial_instance(cfg, t, cfg.xi);
      SolveOptions opts;
      opts.iterations = iterations;
      for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
        const auto start = clock::now();
        const SolveResult res = run_solver(cfg.algorithms[a], inst, lambda, opts);
        const auto stop = clock::now();
        const auto done = static_cast<double>(res.trace.size());
        ns[a] += std::chrono::duration<double, std::nano>(stop - start).count() / done;
        // flop column is steady-state work; the one-time A^T A is in the timing only
        flops[a] += static_cast<double>(res.total_flops() - res.precompute_flops) / done;
      }
    }
    const auto n = static_cast<double>(cfg.trials);
    double pg_ns = std::nan("");
    for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
      if (cfg.algorithms[a] == Algorithm::Pg) pg_ns = ns[a] / n;
    }
    for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
      const double mean_ns = ns[a] / n;
      rows.push_back({cfg.scenario.name, lambda, to_string(cfg.algorithms[a]), mean_ns,
                      flops[a] / n, mean_ns / pg_ns});
    }
  }
  return rows;
}

namespace {

std::string num(double v) { return fmt::format("{:.17g}", v); }

}  // namespace

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& rows) {
  os << "scenario,algorithm,iteration,mean_sq_error,mean_cost\n";
  for (const auto& r : rows) {
    os << r.scenario << ',' << r.algorithm << ',' << r.iteration << ',' << num(r.mean_sq_error)
       << ',' << num(r.mean_cost) << '\n';
  }
}

void write_lambda_sweep_csv(std::ostream& os, const std::vector<LambdaSweepRow>& rows) {
  os << "scenario,algorithm,lambda,iterations,mean_sq_error,mean_fn,mean_fp,mean_fn_rate,"
        "mean_fp_rate\n";
  for (const auto& row : rows) {
    const auto& s = row.stats;
    os << s.scenario << ',' << s.algorithm << ',' << num(s.parameter) << ',' << row.iterations
       << ',' << num(s.mean_sq_error) << ',' << num(s.mean_fn) << ',' << num(s.mean_fp) << ','
       << num(s.mean_fn_rate) << ',' << num(s.mean_fp_rate) << '\n';
  }
}

void write_xi_sweep_csv(std::ostream& os, const std::vector<AggregateRow>& rows) {
  os << "scenario,algorithm,xi,mean_sq_error\n";
  for (const auto& s : rows) {
    os << s.scenario << ',' << s.algorithm << ',' << num(s.parameter) << ','
       << num(s.mean_sq_error) << '\n';
  }
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << "scenario,lambda,algo,mean_iter_ns,mean_iter_flops,ratio_vs_pg\n";
  for (const auto& r : rows) {
    os << r.scenario << ',' << num(r.lambda) << ',' << r.algo << ',' << num(r.mean_iter_ns) << ','
       << num(r.mean_iter_flops) << ',' << num(r.ratio_vs_pg) << '\n';
  }
}

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& writer) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      throw std::runtime_error("cannot create directory '" + path.parent_path().string() +
                               "': " + ec.message());
    }
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  writer(os);
  os.flush();
  if (!os) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace sparsetls
