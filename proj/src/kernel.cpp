#include "sparsetls/kernel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sparsetls {

namespace {

void check_shapes(const Matrix& A, const Vector& b, const Vector& x) {
  if (A.rows() != b.size() || A.cols() != x.size()) {
    throw std::invalid_argument("shape mismatch: A is " + std::to_string(A.rows()) + "x" +
                                std::to_string(A.cols()) + ", b has " + std::to_string(b.size()) +
                                ", x has " + std::to_string(x.size()));
  }
}

}  // namespace

double residual_norm_sq(const Matrix& A, const Vector& b, const Vector& x, FlopCounter& flops) {
  check_shapes(A, b, x);
  const Index M = A.rows();
  Vector r = -b;
  Index nnz = 0;
  for (Index j = 0; j < x.size(); ++j) {
    const double xj = x(j);
    if (xj == 0.0) continue;
    ++nnz;
    for (Index i = 0; i < M; ++i) r(i) += A(i, j) * xj;
  }
  flops.add(static_cast<std::uint64_t>(M * nnz + 2 * M));
  return r.squaredNorm();
}

CostEval eval_cost(const Matrix& A, const Vector& b, const Vector& x, double lambda) {
  FlopCounter scratch;
  const double res = residual_norm_sq(A, b, x, scratch);
  CostEval out;
  out.y = 1.0 / (x.squaredNorm() + 1.0);
  out.f = out.y * res;
  out.r = lambda * x.lpNorm<1>();
  out.c = out.f + out.r;
  return out;
}

Vector gradient(const Matrix& AtA, const Vector& Atb, const Vector& x, double y, double f,
                FlopCounter& flops) {
  const Index N = x.size();
  if (AtA.rows() != N || AtA.cols() != N || Atb.size() != N) {
    throw std::invalid_argument("gradient: AtA must be NxN and Atb length N with N = x.size()");
  }
  // AtA is symmetric, so its rows double as columns.
  Vector AtAx = Vector::Zero(N);
  Index nnz = 0;
  for (Index j = 0; j < N; ++j) {
    const double xj = x(j);
    if (xj == 0.0) continue;
    ++nnz;
    AtAx.noalias() += xj * AtA.row(j).transpose();
  }
  flops.add(static_cast<std::uint64_t>(N * nnz + 3 * N));
  return (2.0 * y) * (AtAx - Atb - f * x);
}

double soft_threshold(double v, double t) noexcept {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

Vector shrink(const Vector& z, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("shrink: threshold must be >= 0");
  Vector out(z.size());
  for (Index i = 0; i < z.size(); ++i) out(i) = soft_threshold(z(i), t);
  return out;
}

}  // namespace sparsetls
