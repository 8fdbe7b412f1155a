#include "sparsetls/problem.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace sparsetls {

std::string to_string(Ensemble e) {
  return e == Ensemble::Gaussian ? "gaussian" : "rademacher";
}

Ensemble parse_ensemble(const std::string& name) {
  if (name == "gaussian") return Ensemble::Gaussian;
  if (name == "rademacher") return Ensemble::Rademacher;
  throw std::invalid_argument("unknown ensemble '" + name + "' (expected gaussian or rademacher)");
}

void ScenarioConfig::validate() const {
  if (K < 1 || !(K < M) || !(M < N)) {
    throw std::invalid_argument("scenario dimensions must satisfy 1 <= K < M < N (got N=" +
                                std::to_string(N) + ", M=" + std::to_string(M) +
                                ", K=" + std::to_string(K) + ")");
  }
  if (!(xi >= 0.0) || !std::isfinite(xi)) {
    throw std::invalid_argument("xi must be finite and non-negative");
  }
}

ScenarioConfig ScenarioConfig::scenario1(double xi, std::uint64_t seed) {
  return {40, 20, 5, Ensemble::Gaussian, xi, seed};
}

ScenarioConfig ScenarioConfig::scenario2(double xi, std::uint64_t seed) {
  return {200, 80, 20, Ensemble::Rademacher, xi, seed};
}

Matrix gaussian_matrix(Index rows, Index cols, double variance, RngStream& rng) {
  if (!(variance >= 0.0)) throw std::invalid_argument("gaussian_matrix: variance must be >= 0");
  const double sd = std::sqrt(variance);
  Matrix out(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) out(i, j) = sd * rng.normal();
  return out;
}

Vector gaussian_vector(Index size, double variance, RngStream& rng) {
  if (!(variance >= 0.0)) throw std::invalid_argument("gaussian_vector: variance must be >= 0");
  const double sd = std::sqrt(variance);
  Vector out(size);
  for (Index i = 0; i < size; ++i) out(i) = sd * rng.normal();
  return out;
}

Matrix rademacher_matrix(Index rows, Index cols, RngStream& rng) {
  if (rows < 1) throw std::invalid_argument("rademacher_matrix: rows must be >= 1");
  const double v = 1.0 / std::sqrt(static_cast<double>(rows));
  Matrix out(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) out(i, j) = rng.coin() ? v : -v;
  return out;
}

Vector sparse_signal(Index size, Index nonzeros, RngStream& rng) {
  if (nonzeros < 1 || nonzeros > size) {
    throw std::invalid_argument("sparse_signal: need 1 <= K <= N");
  }
  // Partial Fisher-Yates: the first K slots become a uniform K-subset.
  std::vector<Index> idx(static_cast<std::size_t>(size));
  std::iota(idx.begin(), idx.end(), Index{0});
  for (Index k = 0; k < nonzeros; ++k) {
    const auto pick = k + static_cast<Index>(rng.below(static_cast<std::uint64_t>(size - k)));
    std::swap(idx[static_cast<std::size_t>(k)], idx[static_cast<std::size_t>(pick)]);
  }
  Vector x = Vector::Zero(size);
  for (Index k = 0; k < nonzeros; ++k) {
    double v = rng.normal();
    // A zero draw would break the support count; it has probability zero
    // but redraw rather than rely on that.
    while (v == 0.0) v = rng.normal();
    x(idx[static_cast<std::size_t>(k)]) = v;
  }
  x /= x.norm();
  return x;
}

ProblemInstance generate_instance(const ScenarioConfig& cfg, RngStream& rng) {
  cfg.validate();
  const Index M = cfg.M;
  const Index N = cfg.N;
  const double M_d = static_cast<double>(M);

  ProblemInstance p;
  p.A_o = cfg.ensemble == Ensemble::Gaussian ? gaussian_matrix(M, N, 1.0 / M_d, rng)
                                             : rademacher_matrix(M, N, rng);
  p.x_o = sparse_signal(N, cfg.K, rng);
  // Plain loop rather than an Eigen product so the summation order is fixed.
  p.b_o = Vector::Zero(M);
  for (Index i = 0; i < M; ++i)
    for (Index j = 0; j < N; ++j) p.b_o(i) += p.A_o(i, j) * p.x_o(j);
  p.E_o = gaussian_matrix(M, N, cfg.xi / M_d, rng);
  p.e_o = gaussian_vector(M, cfg.xi / M_d, rng);
  p.A = p.A_o - p.E_o;
  p.b = p.b_o - p.e_o;
  return p;
}

namespace {

void fnv_bytes(std::uint64_t& h, const void* data, std::size_t len) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
}

}  // namespace

std::uint64_t instance_fingerprint(const ProblemInstance& inst) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const Index dims[2] = {inst.A.rows(), inst.A.cols()};
  fnv_bytes(h, dims, sizeof dims);
  fnv_bytes(h, inst.A.data(), sizeof(double) * static_cast<std::size_t>(inst.A.size()));
  fnv_bytes(h, inst.b.data(), sizeof(double) * static_cast<std::size_t>(inst.b.size()));
  return h;
}

}  // namespace sparsetls
