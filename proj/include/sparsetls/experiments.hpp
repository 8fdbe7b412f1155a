#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sparsetls/metrics.hpp"
#include "sparsetls/problem.hpp"
#include "sparsetls/trace.hpp"

namespace sparsetls {

enum class Algorithm { Pg, Adcd };

std::string to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& name);

/// Iteration budgets: log-linear in lambda between (5e-4, hi) and (1, lo).
enum class Schedule { S1, S2 };

inline constexpr double kScheduleLambdaLo = 5e-4;
inline constexpr double kScheduleLambdaHi = 1.0;

/// Lambda outside [5e-4, 1] is clamped to the nearest endpoint.
int iteration_schedule(double lambda, Schedule schedule);

struct NamedScenario {
  std::string name;  // "s1", "s2" or "custom"
  ScenarioConfig config;
  Schedule schedule = Schedule::S1;
  std::uint64_t tag = 0;  // stream-derivation tag

  static NamedScenario s1();
  static NamedScenario s2();
  static NamedScenario custom(int N, int M, int K, Ensemble ensemble);
  /// "s1" or "s2"; throws std::invalid_argument otherwise.
  static NamedScenario by_name(const std::string& name);
};

/// n points spaced evenly in log between lo and hi, inclusive.
std::vector<double> log_grid(double lo, double hi, int n);
std::vector<double> default_lambda_grid();  // 25 points on [5e-4, 1]
std::vector<double> default_xi_grid();      // 13 points on [1e-4, 1e-1]

inline constexpr double kDefaultLambda = 0.02;
inline constexpr double kDefaultXi = 0.01;

struct ExperimentConfig {
  NamedScenario scenario = NamedScenario::s1();
  std::vector<double> lambda_grid = default_lambda_grid();
  std::vector<double> xi_grid = default_xi_grid();
  double lambda = kDefaultLambda;  // fixed lambda for trace and xi sweeps
  double xi = kDefaultXi;          // fixed xi for trace and lambda sweeps
  int trials = 100;
  std::uint64_t master_seed = 0;
  std::optional<int> iterations;  // overrides the schedule when set
  std::vector<Algorithm> algorithms{Algorithm::Pg, Algorithm::Adcd};
  std::filesystem::path out_dir = ".";
  unsigned threads = 0;  // 0 picks std::thread::hardware_concurrency()

  /// Throws std::invalid_argument on empty or unsorted grids, trials < 1, etc.
  void validate() const;
  int iterations_for(double lambda) const;
};

/// Runs body(trial) for trial in [0, trials) on up to `threads` workers.
/// Results must be written into per-trial slots; callers reduce in order.
void for_each_trial(int trials, unsigned threads, const std::function<void(int)>& body);

/// The instance every algorithm sees for (scenario, trial, xi).
ProblemInstance trial_instance(const ExperimentConfig& cfg, int trial, double xi);

struct PairedTrial {
  std::uint64_t fingerprint = 0;
  Vector x_o;
  std::vector<SolveResult> results;  // one per cfg.algorithms entry
  std::vector<std::uint64_t> fingerprints_seen;  // fingerprint of the data each solver received
};

PairedTrial run_paired_trial(const ExperimentConfig& cfg, int trial, double lambda, double xi,
                             int iterations, bool record_error);

SolveResult run_solver(Algorithm algo, const ProblemInstance& inst, double lambda,
                       const SolveOptions& opts);

struct TraceRow {
  std::string scenario;
  std::string algorithm;
  int iteration = 0;
  double mean_sq_error = 0.0;
  double mean_cost = 0.0;
};

struct LambdaSweepRow {
  AggregateRow stats;
  int iterations = 0;
};

struct BenchRow {
  std::string scenario;
  double lambda = 0.0;
  std::string algo;
  double mean_iter_ns = 0.0;     // includes one-time precomputation, amortized
  double mean_iter_flops = 0.0;  // steady-state iterations only
  double ratio_vs_pg = 0.0;  // wall-clock per iteration relative to pg
};

std::vector<TraceRow> run_trace(const ExperimentConfig& cfg, double lambda, double xi);
std::vector<LambdaSweepRow> run_lambda_sweep(const ExperimentConfig& cfg);
std::vector<AggregateRow> run_xi_sweep(const ExperimentConfig& cfg);
/// Sequential, so timings are not perturbed by other trials.
std::vector<BenchRow> run_bench(const ExperimentConfig& cfg, const std::vector<double>& lambda_grid);

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& rows);
void write_lambda_sweep_csv(std::ostream& os, const std::vector<LambdaSweepRow>& rows);
void write_xi_sweep_csv(std::ostream& os, const std::vector<AggregateRow>& rows);
void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows);

/// Opens path for writing (creating parent directories) and runs writer.
/// I/O failures throw std::runtime_error naming the path.
void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& writer);

}  // namespace sparsetls
