#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "apst/errors.hpp"
#include "apst/knn.hpp"
#include "apst/metrics.hpp"
#include "apst/msm.hpp"
#include "apst/series.hpp"
#include "apst/summation.hpp"

namespace apst {

// One walk-forward step: the forecast made at step_index from prior history
// only, scored against the next m approximated values.
struct BacktestStep {
  std::size_t step_index = 0;
  std::vector<double> predicted;
  std::vector<double> actual;
  std::vector<double> absolute_errors;

  friend bool operator==(const BacktestStep&, const BacktestStep&) = default;
};

struct BacktestReport {
  std::vector<BacktestStep> steps;
  std::size_t skipped_steps = 0;  // steps whose prediction failed, excluded from N
  double mer_percent = 0.0;
  double mae = 0.0;
  double period_mean = 0.0;  // mean of all actual values consumed by the backtest
  double elapsed_prediction_seconds = 0.0;
  ApproxParams approx_params;
  ForecastConfig forecast_config;
  double start_fraction = 0.7;
};

// Naive stand-in comparator: repeat the last observed value m times.
inline std::vector<double> persistence_baseline(const ApproxSeries& history,
                                                std::size_t horizon) {
  if (history.values.empty()) {
    throw Error(ErrorCode::EmptyHistory, "persistence baseline needs at least one value");
  }
  if (horizon == 0) {
    throw Error(ErrorCode::ZeroSize, "horizon must be positive");
  }
  return std::vector<double>(horizon, history.values.back());
}

namespace detail {

inline ApproxSeries history_prefix(const ApproxSeries& ap, std::size_t length) {
  ApproxSeries prefix;
  prefix.values.assign(ap.values.begin(),
                       ap.values.begin() + static_cast<std::ptrdiff_t>(length));
  prefix.params = ap.params;
  prefix.dropped_tail = 0;
  return prefix;
}

}  // namespace detail

// Expanding-window evaluation: the full series is approximated once, then
// each step s in [floor(start_fraction * n), n - m] predicts from ap[0, s)
// alone and is scored against ap[s, s + m). A step whose prediction fails is
// skipped and counted; MER/MAE aggregate the completed steps only.
inline BacktestReport walk_forward_backtest(const PriceSeries& series,
                                            const ApproxParams& approx_params,
                                            const ForecastConfig& config,
                                            double start_fraction = 0.7) {
  if (!(start_fraction > 0.0) || !(start_fraction < 1.0)) {
    throw Error(ErrorCode::InvalidConfig,
                "start fraction must lie in (0, 1), got " + std::to_string(start_fraction));
  }
  validate_config(config);

  const ApproxSeries ap = approximate(series, approx_params);
  const std::size_t n = ap.size();
  const std::size_t m = config.horizon;
  const auto start = static_cast<std::size_t>(start_fraction * static_cast<double>(n));
  if (start < config.window + m + 1) {
    throw Error(ErrorCode::InsufficientHistory,
                "initial history of " + std::to_string(start) +
                    " approximated values is below window + horizon + 1 = " +
                    std::to_string(config.window + m + 1));
  }
  if (start + m > n) {
    throw Error(ErrorCode::InsufficientHistory,
                "no step fits: start " + std::to_string(start) + ", horizon " +
                    std::to_string(m) + ", approximated length " + std::to_string(n));
  }

  BacktestReport report;
  report.approx_params = approx_params;
  report.forecast_config = config;
  report.start_fraction = start_fraction;

  std::vector<double> all_predicted;
  std::vector<double> all_actual;
  KbnSum actual_sum;
  std::chrono::steady_clock::duration elapsed{0};

  for (std::size_t s = start; s + m <= n; ++s) {
    const ApproxSeries history = detail::history_prefix(ap, s);
    Forecast forecast;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      forecast = predict(history, config);
    } catch (const Error&) {
      elapsed += std::chrono::steady_clock::now() - t0;
      ++report.skipped_steps;
      continue;
    }
    elapsed += std::chrono::steady_clock::now() - t0;

    BacktestStep step;
    step.step_index = s;
    step.predicted = std::move(forecast.values);
    step.actual.assign(ap.values.begin() + static_cast<std::ptrdiff_t>(s),
                       ap.values.begin() + static_cast<std::ptrdiff_t>(s + m));
    step.absolute_errors.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
      step.absolute_errors.push_back(std::abs(step.predicted[j] - step.actual[j]));
      actual_sum.add(step.actual[j]);
    }
    all_predicted.insert(all_predicted.end(), step.predicted.begin(), step.predicted.end());
    all_actual.insert(all_actual.end(), step.actual.begin(), step.actual.end());
    report.steps.push_back(std::move(step));
  }

  if (report.steps.empty()) {
    throw Error(ErrorCode::InsufficientHistory,
                "every step failed; " + std::to_string(report.skipped_steps) + " skipped");
  }

  report.period_mean = actual_sum.value() / static_cast<double>(all_actual.size());
  report.mer_percent = mean_error_relative(all_predicted, all_actual, report.period_mean);
  report.mae = mean_absolute_error(all_predicted, all_actual);
  report.elapsed_prediction_seconds =
      std::chrono::duration_cast<std::chrono::duration<double>>(elapsed).count();
  return report;
}

// Side-by-side run of the pattern forecaster and the persistence baseline
// over the same steps and actuals.
struct BaselineComparison {
  BacktestReport backtest;  // the pattern-forecast run; steps carry predicted/actual
  std::vector<std::vector<double>> baseline_predictions;  // aligned with backtest.steps
  double baseline_mer_percent = 0.0;
  double baseline_mae = 0.0;
};

inline BaselineComparison compare_with_persistence(const PriceSeries& series,
                                                   const ApproxParams& approx_params,
                                                   const ForecastConfig& config,
                                                   double start_fraction = 0.7) {
  BaselineComparison cmp;
  cmp.backtest = walk_forward_backtest(series, approx_params, config, start_fraction);

  const ApproxSeries ap = approximate(series, approx_params);
  std::vector<double> baseline_flat;
  std::vector<double> actual_flat;
  cmp.baseline_predictions.reserve(cmp.backtest.steps.size());
  for (const BacktestStep& step : cmp.backtest.steps) {
    const ApproxSeries history = detail::history_prefix(ap, step.step_index);
    std::vector<double> predicted = persistence_baseline(history, config.horizon);
    baseline_flat.insert(baseline_flat.end(), predicted.begin(), predicted.end());
    actual_flat.insert(actual_flat.end(), step.actual.begin(), step.actual.end());
    cmp.baseline_predictions.push_back(std::move(predicted));
  }
  cmp.baseline_mer_percent =
      mean_error_relative(baseline_flat, actual_flat, cmp.backtest.period_mean);
  cmp.baseline_mae = mean_absolute_error(baseline_flat, actual_flat);
  return cmp;
}

}  // namespace apst
