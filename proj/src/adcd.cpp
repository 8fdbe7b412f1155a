#include "sparsetls/adcd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sparsetls {

namespace {

void check_problem(const AdcdState& s, const Matrix& A, const Vector& b) {
  if (A.rows() != b.size() || s.x.size() != A.cols() || s.E.rows() != A.rows() ||
      s.E.cols() != A.cols()) {
    throw std::invalid_argument("AD-CD: shape mismatch between state, A and b");
  }
}

}  // namespace

AdcdState adcd_init(Index rows, Index cols) {
  AdcdState s;
  s.x = Vector::Zero(cols);
  s.E = Matrix::Zero(rows, cols);
  return s;
}

double adcd_coordinate_update(AdcdState& s, const Matrix& A, const Vector& b, double lambda,
                              Index i) {
  const Index M = A.rows();
  const Index N = A.cols();
  if (i < 0 || i >= N) throw std::out_of_range("adcd_coordinate_update: column index out of range");
  const auto M_u = static_cast<std::uint64_t>(M);

  // e = b - sum_{j != i} (A + E)_j x_j. Coordinates before i already hold
  // this sweep's values, so this is the Gauss-Seidel residual.
  Vector e = b;
  for (Index j = 0; j < N; ++j) {
    const double xj = s.x(j);
    if (j == i || xj == 0.0) continue;
    e.noalias() -= (A.col(j) + s.E.col(j)) * xj;
    s.flops.add(2 * M_u);
  }
  const Vector a = A.col(i) + s.E.col(i);
  const double a_norm_sq = a.squaredNorm();
  const double rho = e.dot(a);
  s.flops.add(3 * M_u);

  const double xi = a_norm_sq == 0.0 ? 0.0 : soft_threshold(rho, lambda / 2.0) / a_norm_sq;
  s.x(i) = xi;
  return xi;
}

CostEval adcd_step(AdcdState& s, const Matrix& A, const Vector& b, double lambda) {
  check_problem(s, A, b);
  const Index M = A.rows();
  const Index N = A.cols();
  for (Index i = 0; i < N; ++i) adcd_coordinate_update(s, A, b, lambda, i);

  // E_{n+1} = (b - A x) x^T / (||x||^2 + 1)
  Vector r = b;
  Index nnz = 0;
  for (Index j = 0; j < N; ++j) {
    const double xj = s.x(j);
    if (xj == 0.0) continue;
    ++nnz;
    r.noalias() -= A.col(j) * xj;
  }
  const double y = 1.0 / (s.x.squaredNorm() + 1.0);
  const Vector scaled = y * r;
  s.E.noalias() = scaled * s.x.transpose();
  s.flops.add(static_cast<std::uint64_t>(M * nnz + M + N + M + M * N));

  CostEval c;
  c.y = y;
  c.f = y * r.squaredNorm();
  c.r = lambda * s.x.lpNorm<1>();
  c.c = c.f + c.r;
  s.flops.add(static_cast<std::uint64_t>(M + N));
  ++s.n;
  return c;
}

double adcd_objective(const Matrix& A, const Vector& b, const Matrix& E, const Vector& x,
                      double lambda) {
  return ((A + E) * x - b).squaredNorm() + E.squaredNorm() + lambda * x.lpNorm<1>();
}

SolveResult adcd_solve(const Matrix& A, const Vector& b, double lambda, const SolveOptions& opts) {
  if (opts.iterations < 1) throw std::invalid_argument("adcd_solve: iterations must be >= 1");
  if (A.rows() != b.size()) throw std::invalid_argument("adcd_solve: A and b disagree on rows");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("adcd_solve: lambda must be positive and finite");
  }
  if (opts.ground_truth && opts.ground_truth->size() != A.cols()) {
    throw std::invalid_argument("adcd_solve: ground truth length does not match A");
  }

  AdcdState s = adcd_init(A.rows(), A.cols());
  SolveResult out;
  out.trace.reserve(static_cast<std::size_t>(opts.iterations));
  Vector x_before;
  for (int k = 0; k < opts.iterations; ++k) {
    if (opts.stop_tolerance > 0.0) x_before = s.x;
    const CostEval c = adcd_step(s, A, b, lambda);
    TraceRecord r;
    r.iteration = s.n;
    r.cost = c.c;
    r.f = c.f;
    r.flops = s.flops.multiply_adds;
    if (opts.ground_truth) r.sq_error = (s.x - *opts.ground_truth).squaredNorm();
    out.trace.push_back(r);
    if (opts.stop_tolerance > 0.0 &&
        (s.x - x_before).norm() <= opts.stop_tolerance * std::max(x_before.norm(), 1e-300)) {
      break;
    }
  }
  out.x = std::move(s.x);
  return out;
}

}  // namespace sparsetls
