#pragma once

#include <stdexcept>
#include <string>

#include "sparsetls/kernel.hpp"
#include "sparsetls/trace.hpp"

namespace sparsetls {

/// Problem data shared by every iteration of one solve. A^T A and A^T b are
/// formed once here. A and b are held by reference and must outlive this.
class PgProblem {
 public:
  PgProblem(const Matrix& A, const Vector& b, double lambda);

  const Matrix& A() const { return *A_; }
  const Vector& b() const { return *b_; }
  const Matrix& AtA() const { return AtA_; }
  const Vector& Atb() const { return Atb_; }
  double lambda() const { return lambda_; }
  std::uint64_t precompute_flops() const { return precompute_flops_; }

 private:
  const Matrix* A_;
  const Vector* b_;
  Matrix AtA_;
  Vector Atb_;
  double lambda_;
  std::uint64_t precompute_flops_ = 0;
};

/// State at iteration n: x holds x_n, x_prev holds x_{n-1} and g_prev the
/// gradient at x_{n-1}. The gradient at x_n is formed at the start of the
/// next step.
struct PgState {
  Vector x_prev;
  Vector x;
  Vector g_prev;
  double mu = 0.0;  // last accepted step
  double y = 1.0;  // 1 / (||x||^2 + 1)
  double f = 0.0;  // y * ||Ax - b||^2
  int n = 0;
  FlopCounter flops;
  int backtracks_last = 0;
};

class BacktrackingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kInitialStep = 0.2;
inline constexpr int kMaxHalvings = 60;

/// x_0 = 0, g_0 = -2 A^T b, mu_0 = 0.2, x_1 = shrink(x_0 - mu_0 g_0, mu_0 lambda).
/// Returns the state at n = 1.
PgState pg_init(const PgProblem& problem);

/// Hybrid spectral step from dx = x_n - x_{n-1} and dg = g_n - g_{n-1}.
/// Falls back to mu_prev when either denominator is exactly zero or the
/// result is not positive.
double adaptive_step(const Vector& dx, const Vector& dg, double mu_prev);

/// Sufficient-decrease test f_next < f_cur + dx^T g + ||dx||^2 / (2 mu).
bool line_search_ok(double f_next, double f_cur, const Vector& dx, const Vector& g, double mu);

/// One proximal-gradient iteration with backtracking; advances n by one.
/// Throws BacktrackingError after kMaxHalvings rejected trials.
void pg_step(PgState& state, const PgProblem& problem);

/// pg_init followed by iterations - 1 calls to pg_step.
SolveResult pg_solve(const Matrix& A, const Vector& b, double lambda, const SolveOptions& opts);

}  // namespace sparsetls
