#pragma once

#include <cstdint>
#include <string>

#include "sparsetls/rng.hpp"
#include "sparsetls/types.hpp"

namespace sparsetls {

enum class Ensemble { Gaussian, Rademacher };

std::string to_string(Ensemble e);
Ensemble parse_ensemble(const std::string& name);

struct ScenarioConfig {
  int N = 40;  // columns
  int M = 20;  // rows
  int K = 5;   // nonzeros in the target
  Ensemble ensemble = Ensemble::Gaussian;
  double xi = 0.01;  // perturbation-variance parameter
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument unless K < M < N and xi >= 0.
  void validate() const;

  static ScenarioConfig scenario1(double xi = 0.01, std::uint64_t seed = 0);
  static ScenarioConfig scenario2(double xi = 0.01, std::uint64_t seed = 0);
};

/// Hidden truth plus the observed perturbed pair.
///
///   b_o = A_o x_o,  A = A_o - E_o,  b = b_o - e_o
struct ProblemInstance {
  Matrix A_o;
  Vector x_o;
  Vector b_o;
  Matrix E_o;
  Vector e_o;
  Matrix A;
  Vector b;

  Index rows() const { return A.rows(); }
  Index cols() const { return A.cols(); }
};

/// I.i.d. N(0, variance) entries.
Matrix gaussian_matrix(Index rows, Index cols, double variance, RngStream& rng);
Vector gaussian_vector(Index size, double variance, RngStream& rng);

/// Entries +-1/sqrt(rows), fair sign per entry.
Matrix rademacher_matrix(Index rows, Index cols, RngStream& rng);

/// Uniformly random K-subset support, standard-normal values, unit l2 norm.
Vector sparse_signal(Index size, Index nonzeros, RngStream& rng);

/// Draw order: A_o, x_o, E_o, e_o. The perturbations are drawn as unit
/// normals and scaled, so instances that differ only in xi share every draw.
ProblemInstance generate_instance(const ScenarioConfig& cfg, RngStream& rng);

/// FNV-1a over the raw bytes of A and b; used to check paired runs.
std::uint64_t instance_fingerprint(const ProblemInstance& inst);

}  // namespace sparsetls
