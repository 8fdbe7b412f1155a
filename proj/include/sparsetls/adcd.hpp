#pragma once

#include "sparsetls/kernel.hpp"
#include "sparsetls/trace.hpp"

namespace sparsetls {

// Alternating-direction coordinate descent on
//
//   min_{x,E} ||(A + E) x - b||^2 + ||E||_F^2 + lambda ||x||_1
//
// Each outer iteration is a Gauss-Seidel soft-threshold sweep over x with E
// fixed, followed by the closed-form minimizer over E with x fixed.

struct AdcdState {
  Vector x;
  Matrix E;
  int n = 0;
  FlopCounter flops;
};

AdcdState adcd_init(Index rows, Index cols);

/// Minimizes over x_i with every other coordinate and E held fixed, writes
/// the result into state.x and returns it. Zero-norm columns give x_i = 0.
double adcd_coordinate_update(AdcdState& state, const Matrix& A, const Vector& b, double lambda,
                              Index i);

/// Full sweep over i = 0..N-1, then E = (b - A x) x^T / (||x||^2 + 1).
/// Returns the composite cost f(x) + lambda ||x||_1 at the new x.
CostEval adcd_step(AdcdState& state, const Matrix& A, const Vector& b, double lambda);

SolveResult adcd_solve(const Matrix& A, const Vector& b, double lambda, const SolveOptions& opts);

/// ||(A + E) x - b||^2 + ||E||_F^2 + lambda ||x||_1
double adcd_objective(const Matrix& A, const Vector& b, const Matrix& E, const Vector& x,
                      double lambda);

}  // namespace sparsetls
