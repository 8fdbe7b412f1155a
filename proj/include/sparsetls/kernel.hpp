#pragma once

#include <cstdint>

#include "sparsetls/types.hpp"

namespace sparsetls {

/// Counts scalar multiply-adds (an add, a multiply or a fused pair each count one).
struct FlopCounter {
  std::uint64_t multiply_adds = 0;

  void add(std::uint64_t n) noexcept { multiply_adds += n; }
};

/// Split of the composite cost c(x) = f(x) + r(x).
struct CostEval {
  double f = 0.0;  // ||Ax - b||^2 / (||x||^2 + 1)
  double y = 1.0;  // 1 / (||x||^2 + 1)
  double r = 0.0;  // lambda * ||x||_1
  double c = 0.0;  // f + r
};

/// Throws std::invalid_argument on shape mismatch.
CostEval eval_cost(const Matrix& A, const Vector& b, const Vector& x, double lambda);

/// ||Ax - b||^2 skipping columns where x is exactly zero.
double residual_norm_sq(const Matrix& A, const Vector& b, const Vector& x, FlopCounter& flops);

/// Gradient of the Rayleigh-quotient residual at x:
///
///   g = 2 y (A^T A x - A^T b - f x)
///
/// where y and f are the cached values at x. Columns of A^T A whose x entry
/// is zero are skipped, so the cost ranges from N*nnz(x) to N^2.
Vector gradient(const Matrix& AtA, const Vector& Atb, const Vector& x, double y, double f,
                FlopCounter& flops);

/// Soft thresholding, the prox of t*||.||_1. |z_i| <= t maps to exactly 0.
Vector shrink(const Vector& z, double t);

/// Scalar soft threshold with the same boundary convention.
double soft_threshold(double v, double t) noexcept;

}  // namespace sparsetls
