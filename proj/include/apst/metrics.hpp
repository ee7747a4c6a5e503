#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>

#include "apst/errors.hpp"
#include "apst/summation.hpp"

namespace apst {

namespace detail {

inline void check_paired(std::span<const double> predicted, std::span<const double> actual) {
  if (predicted.size() != actual.size() || predicted.empty()) {
    throw Error(ErrorCode::LengthMismatch,
                "predicted has " + std::to_string(predicted.size()) + " entries, actual has " +
                    std::to_string(actual.size()) + " (need equal, non-zero lengths)");
  }
}

}  // namespace detail

// Mean absolute error, (1/N) * sum |predicted - actual|.
inline double mean_absolute_error(std::span<const double> predicted,
                                  std::span<const double> actual) {
  detail::check_paired(predicted, actual);
  KbnSum abs_sum;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    abs_sum.add(std::abs(predicted[i] - actual[i]));
  }
  return abs_sum.value() / static_cast<double>(predicted.size());
}

// Mean error relative to the period mean, as a percentage:
// 100 * (1/N) * sum |predicted - actual| / period_mean.
inline double mean_error_relative(std::span<const double> predicted,
                                  std::span<const double> actual, double period_mean) {
  detail::check_paired(predicted, actual);
  if (!(period_mean > 0.0) || !std::isfinite(period_mean)) {
    throw Error(ErrorCode::ZeroPeriodMean,
                "period mean must be a positive finite value, got " +
                    std::to_string(period_mean));
  }
  KbnSum abs_sum;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    abs_sum.add(std::abs(predicted[i] - actual[i]));
  }
  return 100.0 * abs_sum.value() / (static_cast<double>(predicted.size()) * period_mean);
}

}  // namespace apst
