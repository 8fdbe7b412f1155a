#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sparsetls/types.hpp"

namespace sparsetls {

/// One accepted iteration. Both solvers emit the same schema.
struct TraceRecord {
  int iteration = 0;
  double cost = 0.0;  // f(x) + lambda*||x||_1 at the accepted iterate
  double f = 0.0;
  double step = 0.0;  // accepted step size; 0 for AD-CD
  int backtracks = 0;
  std::uint64_t flops = 0;        // cumulative, including precomputation
  std::optional<double> sq_error; // ||x - x_o||^2 when ground truth was supplied
};

struct SolveResult {
  Vector x;
  std::vector<TraceRecord> trace;
  std::uint64_t precompute_flops = 0;

  std::uint64_t total_flops() const { return trace.empty() ? precompute_flops : trace.back().flops; }
};

struct SolveOptions {
  int iterations = 1;
  std::optional<Vector> ground_truth;
  /// Stop once ||x_{n+1} - x_n|| <= tol * max(||x_n||, 1e-300). 0 disables.
  double stop_tolerance = 0.0;
};

}  // namespace sparsetls
