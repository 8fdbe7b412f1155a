#include "sparsetls/pg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sparsetls {

PgProblem::PgProblem(const Matrix& A, const Vector& b, double lambda)
    : A_(&A), b_(&b), lambda_(lambda) {
  if (A.rows() != b.size()) {
    throw std::invalid_argument("PgProblem: A has " + std::to_string(A.rows()) + " rows but b has " +
                                std::to_string(b.size()) + " entries");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("PgProblem: lambda must be positive and finite");
  }
  const Index M = A.rows();
  const Index N = A.cols();

  // Accumulate the upper triangle row by row of A, then mirror, so AtA is
  // exactly symmetric.
  AtA_ = Matrix::Zero(N, N);
  Atb_ = Vector::Zero(N);
  for (Index k = 0; k < M; ++k) {
    const auto row = A.row(k);
    for (Index i = 0; i < N; ++i) {
      const double aki = row(i);
      Atb_(i) += aki * b(k);
      for (Index j = i; j < N; ++j) AtA_(i, j) += aki * row(j);
    }
  }
  for (Index i = 0; i < N; ++i)
    for (Index j = 0; j < i; ++j) AtA_(i, j) = AtA_(j, i);

  precompute_flops_ = static_cast<std::uint64_t>(M * N * (N + 1) / 2 + M * N);
}

namespace {

// y and f at a trial point; shared by init and the line search.
struct TrialEval {
  double y;
  double f;
};

TrialEval evaluate(const PgProblem& p, const Vector& x, FlopCounter& flops) {
  const double res = residual_norm_sq(p.A(), p.b(), x, flops);
  const double y = 1.0 / (x.squaredNorm() + 1.0);
  flops.add(static_cast<std::uint64_t>(x.size()));
  return {y, y * res};
}

}  // namespace

PgState pg_init(const PgProblem& problem) {
  const Index N = problem.A().cols();
  const double lambda = problem.lambda();

  PgState s;
  s.x_prev = Vector::Zero(N);
  s.g_prev = -2.0 * problem.Atb();
  s.mu = kInitialStep;
  s.x = shrink(s.x_prev - s.mu * s.g_prev, s.mu * lambda);
  s.flops.add(static_cast<std::uint64_t>(3 * N));
  const auto e = evaluate(problem, s.x, s.flops);
  s.y = e.y;
  s.f = e.f;
  s.n = 1;
  return s;
}

double adaptive_step(const Vector& dx, const Vector& dg, double mu_prev) {
  const double dxdg = dx.dot(dg);
  const double dgdg = dg.squaredNorm();
  if (dxdg == 0.0 || dgdg == 0.0) return mu_prev;

  const double steepest = dx.squaredNorm() / dxdg;
  const double min_residual = dxdg / dgdg;
  const double mu =
      (min_residual / steepest > 0.5) ? min_residual : steepest - min_residual / 2.0;
  return mu > 0.0 ? mu : mu_prev;
}

bool line_search_ok(double f_next, double f_cur, const Vector& dx, const Vector& g, double mu) {
  return f_next < f_cur + dx.dot(g) + dx.squaredNorm() / (2.0 * mu);
}

void pg_step(PgState& s, const PgProblem& problem) {
  const Index N = s.x.size();
  const auto N_u = static_cast<std::uint64_t>(N);
  const double lambda = problem.lambda();

  Vector g = gradient(problem.AtA(), problem.Atb(), s.x, s.y, s.f, s.flops);
  double mu = adaptive_step(s.x - s.x_prev, g - s.g_prev, s.mu);
  s.flops.add(5 * N_u);

  Vector x_next;
  TrialEval next{};
  int halvings = 0;
  for (;;) {
    x_next = shrink(s.x - mu * g, mu * lambda);
    next = evaluate(problem, x_next, s.flops);
    const Vector dx = x_next - s.x;
    s.flops.add(5 * N_u);
    // A proximal fixed point does not depend on mu, so halving cannot move
    // it; accept instead of tripping the strict inequality at dx = 0.
    if (line_search_ok(next.f, s.f, dx, g, mu) || (dx.array() == 0.0).all()) break;
    if (halvings == kMaxHalvings) {
      throw BacktrackingError("proximal-gradient line search failed after " +
                              std::to_string(kMaxHalvings) + " halvings at iteration " +
                              std::to_string(s.n) + " (mu = " + std::to_string(mu) + ")");
    }
    mu /= 2.0;
    ++halvings;
  }

  s.x_prev = std::move(s.x);
  s.x = std::move(x_next);
  s.g_prev = std::move(g);
  s.mu = mu;
  s.y = next.y;
  s.f = next.f;
  s.backtracks_last = halvings;
  ++s.n;
}

namespace {

TraceRecord record(const PgState& s, const PgProblem& p, const SolveOptions& opts) {
  TraceRecord r;
  r.iteration = s.n;
  r.f = s.f;
  r.cost = s.f + p.lambda() * s.x.lpNorm<1>();
  r.step = s.mu;
  r.backtracks = s.backtracks_last;
  r.flops = p.precompute_flops() + s.flops.multiply_adds;
  if (opts.ground_truth) r.sq_error = (s.x - *opts.ground_truth).squaredNorm();
  return r;
}

}  // namespace

SolveResult pg_solve(const Matrix& A, const Vector& b, double lambda, const SolveOptions& opts) {
  if (opts.iterations < 1) throw std::invalid_argument("pg_solve: iterations must be >= 1");
  if (opts.ground_truth && opts.ground_truth->size() != A.cols()) {
    throw std::invalid_argument("pg_solve: ground truth length does not match A");
  }
  const PgProblem problem(A, b, lambda);
  PgState s = pg_init(problem);

  SolveResult out;
  out.precompute_flops = problem.precompute_flops();
  out.trace.reserve(static_cast<std::size_t>(opts.iterations));
  out.trace.push_back(record(s, problem, opts));
  while (s.n < opts.iterations) {
    pg_step(s, problem);
    out.trace.push_back(record(s, problem, opts));
    if (opts.stop_tolerance > 0.0 &&
        (s.x - s.x_prev).norm() <= opts.stop_tolerance * std::max(s.x_prev.norm(), 1e-300)) {
      break;
    }
  }
  out.x = std::move(s.x);
  return out;
}

}  // namespace sparsetls
