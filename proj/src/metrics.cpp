#include "sparsetls/metrics.hpp"

#include <stdexcept>
#include <string>

namespace sparsetls {

namespace {

void check_lengths(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("length mismatch: " + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
  }
}

}  // namespace

double squared_error(const Vector& x_hat, const Vector& x_o) {
  check_lengths(x_hat, x_o);
  return (x_hat - x_o).squaredNorm();
}

SupportErrors support_errors(const Vector& x_hat, const Vector& x_o) {
  check_lengths(x_hat, x_o);
  SupportErrors out;
  for (Index i = 0; i < x_o.size(); ++i) {
    const bool truth = x_o(i) != 0.0;
    const bool est = x_hat(i) != 0.0;
    if (truth && !est) ++out.false_negatives;
    if (!truth && est) ++out.false_positives;
  }
  return out;
}

TrialRecord evaluate_trial(const Vector& x_hat, const Vector& x_o) {
  const auto se = support_errors(x_hat, x_o);
  const auto K = static_cast<double>((x_o.array() != 0.0).count());
  const auto zeros = static_cast<double>(x_o.size()) - K;
  TrialRecord r;
  r.sq_error = squared_error(x_hat, x_o);
  r.false_negatives = static_cast<double>(se.false_negatives);
  r.false_positives = static_cast<double>(se.false_positives);
  r.fn_rate = K > 0 ? r.false_negatives / K : 0.0;
  r.fp_rate = zeros > 0 ? r.false_positives / zeros : 0.0;
  return r;
}

AggregateRow aggregate(std::span<const TrialRecord> rows, std::string scenario,
                       std::string algorithm, double parameter) {
  if (rows.empty()) throw std::invalid_argument("aggregate: no trial records");
  AggregateRow out;
  out.scenario = std::move(scenario);
  out.algorithm = std::move(algorithm);
  out.parameter = parameter;
  out.trials = rows.size();
  for (const auto& r : rows) {
    out.mean_sq_error += r.sq_error;
    out.mean_fn += r.false_negatives;
    out.mean_fp += r.false_positives;
    out.mean_fn_rate += r.fn_rate;
    out.mean_fp_rate += r.fp_rate;
  }
  const auto n = static_cast<double>(rows.size());
  out.mean_sq_error /= n;
  out.mean_fn /= n;
  out.mean_fp /= n;
  out.mean_fn_rate /= n;
  out.mean_fp_rate /= n;
  return out;
}

}  // namespace sparsetls
