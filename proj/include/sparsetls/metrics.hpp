#pragma once

#include <span>
#include <string>

#include "sparsetls/types.hpp"

namespace sparsetls {

struct SupportErrors {
  Index false_negatives = 0;  // true nonzero estimated as exactly zero
  Index false_positives = 0;  // true zero estimated as nonzero
};

double squared_error(const Vector& x_hat, const Vector& x_o);

/// Exact-zero comparison; both solvers produce exact zeros via soft thresholding.
SupportErrors support_errors(const Vector& x_hat, const Vector& x_o);

struct TrialRecord {
  double sq_error = 0.0;
  double false_negatives = 0.0;
  double false_positives = 0.0;
  double fn_rate = 0.0;  // false_negatives / K
  double fp_rate = 0.0;  // false_positives / (N - K)
};

TrialRecord evaluate_trial(const Vector& x_hat, const Vector& x_o);

struct AggregateRow {
  std::string scenario;
  std::string algorithm;
  double parameter = 0.0;
  double mean_sq_error = 0.0;
  double mean_fn = 0.0;
  double mean_fp = 0.0;
  double mean_fn_rate = 0.0;
  double mean_fp_rate = 0.0;
  std::size_t trials = 0;
};

/// Means in trial order. Throws std::invalid_argument on empty input.
AggregateRow aggregate(std::span<const TrialRecord> rows, std::string scenario,
                       std::string algorithm, double parameter);

}  // namespace sparsetls
