#include <doctest.h>

#include <cmath>
#include <vector>

#include "sparsetls/pg.hpp"
#include "sparsetls/problem.hpp"
#include "test_util.hpp"

using namespace sparsetls;
using namespace sparsetls::testing;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double d : v) out(i++) = d;
  return out;
}

// Straight-line transcription of the algorithm on std::vector, written
// without any library kernels. Used as an oracle for pg_init/pg_step.
struct ReferencePg {
  using V = std::vector<double>;
  std::vector<V> A;  // rows
  V b;
  double lambda;
  std::size_t M, N;

  V x_prev, x, g_prev;
  double mu = 0.2, y = 1.0, f = 0.0;

  ReferencePg(const Matrix& Am, const Vector& bv, double lam)
      : b(bv.data(), bv.data() + bv.size()),
        lambda(lam),
        M(static_cast<std::size_t>(Am.rows())),
        N(static_cast<std::size_t>(Am.cols())) {
    for (std::size_t i = 0; i < M; ++i) {
      A.emplace_back();
      for (std::size_t j = 0; j < N; ++j) A.back().push_back(Am(Index(i), Index(j)));
    }
    x_prev.assign(N, 0.0);
    g_prev.assign(N, 0.0);
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t i = 0; i < M; ++i) g_prev[j] -= 2.0 * A[i][j] * b[i];
    x = prox(x_prev, g_prev, mu);
    eval(x, y, f);
  }

  V prox(const V& xn, const V& g, double step) const {
    V out(N);
    for (std::size_t j = 0; j < N; ++j) {
      const double z = xn[j] - step * g[j];
      const double t = step * lambda;
      out[j] = z > t ? z - t : (z < -t ? z + t : 0.0);
    }
    return out;
  }

  void eval(const V& v, double& y_out, double& f_out) const {
    double nrm = 0.0;
    for (double d : v) nrm += d * d;
    y_out = 1.0 / (nrm + 1.0);
    double res = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
      double r = -b[i];
      for (std::size_t j = 0; j < N; ++j) r += A[i][j] * v[j];
      res += r * r;
    }
    f_out = y_out * res;
  }

  void step() {
    // g = 2y (A^T (A x - b) - f x), formed from the residual directly
    V r(M);
    for (std::size_t i = 0; i < M; ++i) {
      r[i] = -b[i];
      for (std::size_t j = 0; j < N; ++j) r[i] += A[i][j] * x[j];
    }
    V g(N);
    for (std::size_t j = 0; j < N; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < M; ++i) s += A[i][j] * r[i];
      g[j] = 2.0 * y * (s - f * x[j]);
    }
    double dxdg = 0.0, dxdx = 0.0, dgdg = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      const double dx = x[j] - x_prev[j];
      const double dg = g[j] - g_prev[j];
      dxdg += dx * dg;
      dxdx += dx * dx;
      dgdg += dg * dg;
    }
    double m = mu;
    if (dxdg != 0.0 && dgdg != 0.0) {
      const double ms = dxdx / dxdg;
      const double mm = dxdg / dgdg;
      m = mm / ms > 0.5 ? mm : ms - mm / 2.0;
      if (m <= 0.0) m = mu;
    }
    V xn;
    double yn = 0.0, fn = 0.0;
    for (;;) {
      xn = prox(x, g, m);
      eval(xn, yn, fn);
      double lin = 0.0, quad = 0.0;
      for (std::size_t j = 0; j < N; ++j) {
        const double d = xn[j] - x[j];
        lin += d * g[j];
        quad += d * d;
      }
      if (fn < f + lin + quad / (2.0 * m) || quad == 0.0) break;
      m /= 2.0;
    }
    x_prev = x;
    x = xn;
    g_prev = g;
    mu = m;
    y = yn;
    f = fn;
  }
};

double max_rel_diff(const Vector& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (Index i = 0; i < a.size(); ++i) {
    const double ref = b[static_cast<std::size_t>(i)];
    worst = std::max(worst, std::abs(a(i) - ref) / std::max(1.0, std::abs(ref)));
  }
  return worst;
}

ProblemInstance s1_instance(std::uint64_t seed, double xi = 0.01) {
  RngStream rng = derive_stream(seed, 1, 0);
  return generate_instance(ScenarioConfig::scenario1(xi), rng);
}

}  // namespace

TEST_CASE("pg_init") {
  const Matrix I = Matrix::Identity(2, 2);
  SUBCASE("zero measurements stay at the origin") {
    const Vector b = Vector::Zero(2);
    const PgProblem p(I, b, 0.3);
    const PgState s = pg_init(p);
    CHECK(s.x.isZero(0.0));
    CHECK(s.mu == 0.2);
    CHECK(s.n == 1);
  }
  SUBCASE("hand-evaluated 2x2 case") {
    const Vector b = vec({1, 0});
    const PgProblem p(I, b, 1.0);
    const PgState s = pg_init(p);
    CHECK(s.g_prev(0) == -2.0);
    CHECK(s.g_prev(1) == 0.0);
    CHECK(s.x(0) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(s.x(1) == 0.0);
    CHECK(s.mu == kInitialStep);
    CHECK(s.y == doctest::Approx(1.0 / 1.04).epsilon(1e-15));
    CHECK(s.f == doctest::Approx(0.64 / 1.04).epsilon(1e-15));
  }
  SUBCASE("caches A^T A and A^T b") {
    RngStream rng(3);
    const Matrix A = random_matrix(6, 9, rng);
    const Vector b = random_vector(6, rng);
    const PgProblem p(A, b, 0.1);
    CHECK((p.AtA() - A.transpose() * A).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((p.AtA().array() == p.AtA().transpose().array()).all());
    CHECK((p.Atb() - A.transpose() * b).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(p.precompute_flops() == 6 * 9 * 10 / 2 + 6 * 9);
  }
  SUBCASE("argument errors") {
    const Vector b3 = Vector::Zero(3);
    const Vector b2 = Vector::Zero(2);
    CHECK_THROWS_AS(PgProblem(I, b3, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(PgProblem(I, b2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(PgProblem(I, b2, -1.0), std::invalid_argument);
  }
}

TEST_CASE("adaptive_step") {
  CHECK(adaptive_step(vec({1, 0}), vec({2, 0}), 0.1) == 0.5);
  CHECK(adaptive_step(vec({1, 0}), vec({1, 1}), 0.1) == 0.75);
  CHECK(adaptive_step(vec({1, 0}), vec({-1, 0}), 0.3) == 0.3);
  // guards
  CHECK(adaptive_step(vec({0, 0}), vec({1, 1}), 0.4) == 0.4);
  CHECK(adaptive_step(vec({1, 0}), vec({0, 0}), 0.4) == 0.4);
  CHECK(adaptive_step(vec({1, 0}), vec({0, 1}), 0.4) == 0.4);
  // "otherwise" branch producing a non-positive value also falls back
  CHECK(adaptive_step(vec({1, 0}), vec({-1, 3}), 0.6) == 0.6);
}

TEST_CASE("line_search_ok") {
  CHECK_FALSE(line_search_ok(1.0, 1.0, Vector::Zero(2), vec({1, 1}), 0.1));
  CHECK(line_search_ok(0.99, 1.0, Vector::Zero(2), vec({1, 1}), 0.1));
  CHECK(line_search_ok(0.5, 1.0, vec({0.1, 0}), vec({-1, 0}), 0.1));
  CHECK_FALSE(line_search_ok(1.2, 1.0, vec({0.1, 0}), vec({-1, 0}), 0.1));
  // strict at equality: rhs = 1 - 0.5 + 0.25 = 0.75, exact in binary
  CHECK_FALSE(line_search_ok(0.75, 1.0, vec({0.5, 0}), vec({-1, 0}), 0.5));
  CHECK(line_search_ok(std::nextafter(0.75, 0.0), 1.0, vec({0.5, 0}), vec({-1, 0}), 0.5));
}

TEST_CASE("pg_step matches the reference transcription") {
  SUBCASE("2x2 example, one step") {
    const Matrix I = Matrix::Identity(2, 2);
    const Vector b = vec({1, 0});
    const PgProblem p(I, b, 1.0);
    PgState s = pg_init(p);
    ReferencePg ref(I, b, 1.0);
    CHECK(max_rel_diff(s.x, ref.x) < 1e-14);
    pg_step(s, p);
    ref.step();
    CHECK(max_rel_diff(s.x, ref.x) < 1e-14);
    CHECK(std::abs(s.mu - ref.mu) < 1e-14);
    CHECK(std::abs(s.f - ref.f) < 1e-14);
  }
  SUBCASE("scenario-1 instance, 30 steps") {
    const auto inst = s1_instance(5);
    const PgProblem p(inst.A, inst.b, 0.02);
    PgState s = pg_init(p);
    ReferencePg ref(inst.A, inst.b, 0.02);
    for (int k = 0; k < 30; ++k) {
      pg_step(s, p);
      ref.step();
      REQUIRE(max_rel_diff(s.x, ref.x) < 1e-9);
    }
    CHECK(std::abs(s.f - ref.f) < 1e-10);
  }
}

TEST_CASE("fixed point is kept") {
  const Matrix I = Matrix::Identity(3, 3);
  const Vector b = Vector::Zero(3);
  const PgProblem p(I, b, 0.5);
  PgState s = pg_init(p);
  for (int k = 0; k < 5; ++k) {
    const double f_before = s.f;
    pg_step(s, p);
    CHECK(s.x.isZero(0.0));
    CHECK(s.f == f_before);
    CHECK(s.backtracks_last == 0);
  }
}

TEST_CASE("monotone descent and post-hoc line-search check on scenario 1") {
  const auto inst = s1_instance(0);
  const double lambda = 0.02;
  const PgProblem p(inst.A, inst.b, lambda);
  PgState s = pg_init(p);
  auto cost = [&](const PgState& st) { return st.f + lambda * st.x.lpNorm<1>(); };
  const Index N = inst.A.cols();
  const Index M = inst.A.rows();
  for (int k = 0; k < 356; ++k) {
    const double c_before = cost(s);
    const double f_before = s.f;
    const std::uint64_t flops_before = s.flops.multiply_adds;
    const auto nnz_before = static_cast<std::uint64_t>((s.x.array() != 0.0).count());
    pg_step(s, p);
    const double c_after = cost(s);
    REQUIRE(c_after <= c_before + 1e-12 * std::max(1.0, c_before));
    const Vector dx = s.x - s.x_prev;
    if (!dx.isZero(0.0)) REQUIRE(line_search_ok(s.f, f_before, dx, s.g_prev, s.mu));
    // y and f consistent with the iterate
    REQUIRE(std::abs(s.y - 1.0 / (s.x.squaredNorm() + 1.0)) < 1e-12);
    REQUIRE(std::abs(s.f - s.y * (inst.A * s.x - inst.b).squaredNorm()) <= 1e-10 * s.f);
    // per-iteration work between N*nnz and N^2 + (trials)*(M*N + O(N))
    const auto delta = s.flops.multiply_adds - flops_before;
    const auto trials = static_cast<std::uint64_t>(s.backtracks_last + 1);
    REQUIRE(delta >= static_cast<std::uint64_t>(N) * nnz_before);
    REQUIRE(delta <= static_cast<std::uint64_t>(N * N + 8 * N) +
                         trials * static_cast<std::uint64_t>(M * N + 2 * M + 6 * N));
  }
}

TEST_CASE("pg_solve") {
  const auto inst = s1_instance(1);
  SUBCASE("one iteration returns the init iterate") {
    SolveOptions opts;
    opts.iterations = 1;
    const auto res = pg_solve(inst.A, inst.b, 0.05, opts);
    const PgProblem p(inst.A, inst.b, 0.05);
    const PgState s = pg_init(p);
    CHECK((res.x.array() == s.x.array()).all());
    CHECK(res.trace.size() == 1);
    CHECK(res.trace[0].step == 0.2);
  }
  SUBCASE("zero measurements give zero") {
    SolveOptions opts;
    opts.iterations = 50;
    const Vector b = Vector::Zero(inst.b.size());
    const auto res = pg_solve(inst.A, b, 0.01, opts);
    CHECK(res.x.isZero(0.0));
    CHECK(res.trace.back().cost == 0.0);
  }
  SUBCASE("trace length, errors and determinism") {
    SolveOptions opts;
    opts.iterations = 120;
    opts.ground_truth = inst.x_o;
    const auto a = pg_solve(inst.A, inst.b, 0.02, opts);
    const auto b = pg_solve(inst.A, inst.b, 0.02, opts);
    REQUIRE(a.trace.size() == 120);
    for (std::size_t k = 0; k < a.trace.size(); ++k) {
      REQUIRE(a.trace[k].iteration == static_cast<int>(k) + 1);
      REQUIRE(a.trace[k].cost == b.trace[k].cost);
      REQUIRE(a.trace[k].flops == b.trace[k].flops);
      REQUIRE(a.trace[k].sq_error.has_value());
      if (k) REQUIRE(a.trace[k].flops > a.trace[k - 1].flops);
    }
    CHECK((a.x.array() == b.x.array()).all());
    CHECK(*a.trace.back().sq_error == doctest::Approx((a.x - inst.x_o).squaredNorm()));
  }
  SUBCASE("early stop is opt-in") {
    SolveOptions opts;
    opts.iterations = 5000;
    opts.stop_tolerance = 1e-10;
    const auto res = pg_solve(inst.A, inst.b, 0.1, opts);
    CHECK(res.trace.size() < 5000);
  }
  SUBCASE("argument errors") {
    SolveOptions opts;
    opts.iterations = 0;
    CHECK_THROWS_AS(pg_solve(inst.A, inst.b, 0.02, opts), std::invalid_argument);
    opts.iterations = 3;
    opts.ground_truth = Vector::Zero(3);
    CHECK_THROWS_AS(pg_solve(inst.A, inst.b, 0.02, opts), std::invalid_argument);
  }
}

TEST_CASE("inconsistent cached cost trips the backtracking cap") {
  const auto inst = s1_instance(2);
  const PgProblem p(inst.A, inst.b, 0.02);
  PgState s = pg_init(p);
  pg_step(s, p);
  // f far below any attainable value: no trial step can satisfy the test
  s.f = -1e6;
  CHECK_THROWS_AS(pg_step(s, p), BacktrackingError);
}
