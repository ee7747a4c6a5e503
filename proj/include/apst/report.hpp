#pragma once

#include <charconv>
#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "apst/backtest.hpp"
#include "apst/knn.hpp"
#include "apst/msm.hpp"

// JSON is the canonical report format: nested steps, config echo, metrics,
// with timing segregated under "metadata" so the rest of a report is
// byte-reproducible for identical inputs. CSV output is flat per-step rows
// for plotting.

namespace apst {

inline void to_json(nlohmann::json& j, const ApproxParams& p) {
  j = {{"partition_size", p.partition_size}, {"segment_size", p.segment_size}};
}

inline void from_json(const nlohmann::json& j, ApproxParams& p) {
  j.at("partition_size").get_to(p.partition_size);
  j.at("segment_size").get_to(p.segment_size);
}

inline void to_json(nlohmann::json& j, const ForecastConfig& c) {
  j = {{"window", c.window},
       {"neighbors", c.neighbors},
       {"horizon", c.horizon},
       {"threshold", nullptr}};
  if (c.threshold) j["threshold"] = *c.threshold;
}

inline void from_json(const nlohmann::json& j, ForecastConfig& c) {
  j.at("window").get_to(c.window);
  j.at("neighbors").get_to(c.neighbors);
  j.at("horizon").get_to(c.horizon);
  const auto& threshold = j.at("threshold");
  c.threshold = threshold.is_null() ? std::nullopt : std::optional<double>(threshold.get<double>());
}

inline void to_json(nlohmann::json& j, const ApproxSeries& ap) {
  j = {{"values", ap.values}, {"params", ap.params}, {"dropped_tail", ap.dropped_tail}};
}

inline void from_json(const nlohmann::json& j, ApproxSeries& ap) {
  j.at("values").get_to(ap.values);
  j.at("params").get_to(ap.params);
  j.at("dropped_tail").get_to(ap.dropped_tail);
}

inline void to_json(nlohmann::json& j, const MsmTree& tree) {
  j = {{"partition_index", tree.partition_index}, {"levels", tree.levels}};
}

inline void from_json(const nlohmann::json& j, MsmTree& tree) {
  j.at("partition_index").get_to(tree.partition_index);
  j.at("levels").get_to(tree.levels);
}

inline void to_json(nlohmann::json& j, const Neighbor& nb) {
  j = {{"start_index", nb.start_index},
       {"distance", nb.distance},
       {"successors", nb.successors}};
}

inline void from_json(const nlohmann::json& j, Neighbor& nb) {
  j.at("start_index").get_to(nb.start_index);
  j.at("distance").get_to(nb.distance);
  j.at("successors").get_to(nb.successors);
}

inline void to_json(nlohmann::json& j, const Forecast& fc) {
  j = {{"values", fc.values},
       {"neighbors_used", fc.neighbors_used},
       {"query_window", fc.query_window}};
}

inline void from_json(const nlohmann::json& j, Forecast& fc) {
  j.at("values").get_to(fc.values);
  j.at("neighbors_used").get_to(fc.neighbors_used);
  j.at("query_window").get_to(fc.query_window);
}

inline void to_json(nlohmann::json& j, const BacktestStep& step) {
  j = {{"step_index", step.step_index},
       {"predicted", step.predicted},
       {"actual", step.actual},
       {"absolute_errors", step.absolute_errors}};
}

inline void from_json(const nlohmann::json& j, BacktestStep& step) {
  j.at("step_index").get_to(step.step_index);
  j.at("predicted").get_to(step.predicted);
  j.at("actual").get_to(step.actual);
  j.at("absolute_errors").get_to(step.absolute_errors);
}

inline void to_json(nlohmann::json& j, const BacktestReport& report) {
  j = {{"config",
        {{"approx", report.approx_params},
         {"forecast", report.forecast_config},
         {"start_fraction", report.start_fraction}}},
       {"metrics",
        {{"mer_percent", report.mer_percent},
         {"mae", report.mae},
         {"period_mean", report.period_mean},
         {"steps_completed", report.steps.size()},
         {"steps_skipped", report.skipped_steps}}},
       {"steps", report.steps},
       {"metadata", {{"elapsed_prediction_seconds", report.elapsed_prediction_seconds}}}};
}

inline void from_json(const nlohmann::json& j, BacktestReport& report) {
  const auto& config = j.at("config");
  config.at("approx").get_to(report.approx_params);
  config.at("forecast").get_to(report.forecast_config);
  config.at("start_fraction").get_to(report.start_fraction);
  const auto& metrics = j.at("metrics");
  metrics.at("mer_percent").get_to(report.mer_percent);
  metrics.at("mae").get_to(report.mae);
  metrics.at("period_mean").get_to(report.period_mean);
  metrics.at("steps_skipped").get_to(report.skipped_steps);
  j.at("steps").get_to(report.steps);
  j.at("metadata").at("elapsed_prediction_seconds").get_to(report.elapsed_prediction_seconds);
}

inline bool operator==(const BacktestReport& a, const BacktestReport& b) {
  return a.steps == b.steps && a.skipped_steps == b.skipped_steps &&
         a.mer_percent == b.mer_percent && a.mae == b.mae && a.period_mean == b.period_mean &&
         a.elapsed_prediction_seconds == b.elapsed_prediction_seconds &&
         a.approx_params == b.approx_params && a.forecast_config == b.forecast_config &&
         a.start_fraction == b.start_fraction;
}

inline void to_json(nlohmann::json& j, const BaselineComparison& cmp) {
  nlohmann::json steps = nlohmann::json::array();
  for (std::size_t i = 0; i < cmp.backtest.steps.size(); ++i) {
    const BacktestStep& step = cmp.backtest.steps[i];
    steps.push_back({{"step_index", step.step_index},
                     {"actual", step.actual},
                     {"apst_predicted", step.predicted},
                     {"apst_absolute_errors", step.absolute_errors},
                     {"persistence_predicted", cmp.baseline_predictions[i]}});
  }
  j = {{"config",
        {{"approx", cmp.backtest.approx_params},
         {"forecast", cmp.backtest.forecast_config},
         {"start_fraction", cmp.backtest.start_fraction}}},
       {"metrics",
        {{"apst", {{"mer_percent", cmp.backtest.mer_percent}, {"mae", cmp.backtest.mae}}},
         {"persistence",
          {{"mer_percent", cmp.baseline_mer_percent}, {"mae", cmp.baseline_mae}}},
         {"period_mean", cmp.backtest.period_mean},
         {"steps_completed", cmp.backtest.steps.size()},
         {"steps_skipped", cmp.backtest.skipped_steps}}},
       {"steps", steps},
       {"metadata",
        {{"elapsed_prediction_seconds", cmp.backtest.elapsed_prediction_seconds}}}};
}

inline void from_json(const nlohmann::json& j, BaselineComparison& cmp) {
  const auto& config = j.at("config");
  config.at("approx").get_to(cmp.backtest.approx_params);
  config.at("forecast").get_to(cmp.backtest.forecast_config);
  config.at("start_fraction").get_to(cmp.backtest.start_fraction);
  const auto& metrics = j.at("metrics");
  metrics.at("apst").at("mer_percent").get_to(cmp.backtest.mer_percent);
  metrics.at("apst").at("mae").get_to(cmp.backtest.mae);
  metrics.at("persistence").at("mer_percent").get_to(cmp.baseline_mer_percent);
  metrics.at("persistence").at("mae").get_to(cmp.baseline_mae);
  metrics.at("period_mean").get_to(cmp.backtest.period_mean);
  metrics.at("steps_skipped").get_to(cmp.backtest.skipped_steps);
  cmp.backtest.steps.clear();
  cmp.baseline_predictions.clear();
  for (const auto& item : j.at("steps")) {
    BacktestStep step;
    item.at("step_index").get_to(step.step_index);
    item.at("actual").get_to(step.actual);
    item.at("apst_predicted").get_to(step.predicted);
    item.at("apst_absolute_errors").get_to(step.absolute_errors);
    cmp.backtest.steps.push_back(std::move(step));
    cmp.baseline_predictions.push_back(item.at("persistence_predicted").get<std::vector<double>>());
  }
  j.at("metadata")
      .at("elapsed_prediction_seconds")
      .get_to(cmp.backtest.elapsed_prediction_seconds);
}

inline bool operator==(const BaselineComparison& a, const BaselineComparison& b) {
  return a.backtest == b.backtest && a.baseline_predictions == b.baseline_predictions &&
         a.baseline_mer_percent == b.baseline_mer_percent && a.baseline_mae == b.baseline_mae;
}

// Canonical text rendering: two-space indent, sorted keys, trailing newline.
inline std::string render_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

namespace detail {

// Shortest decimal representation that parses back to the same double.
inline std::string format_double(double value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

}  // namespace detail

inline std::string render_csv(const ApproxSeries& ap) {
  std::string out = "index,value\n";
  for (std::size_t i = 0; i < ap.values.size(); ++i) {
    out += std::to_string(i) + "," + detail::format_double(ap.values[i]) + "\n";
  }
  return out;
}

inline std::string render_csv(const Forecast& fc) {
  std::string out = "offset,value\n";
  for (std::size_t j = 0; j < fc.values.size(); ++j) {
    out += std::to_string(j) + "," + detail::format_double(fc.values[j]) + "\n";
  }
  return out;
}

inline std::string render_csv(const BacktestReport& report) {
  std::string out = "step,offset,predicted,actual,absolute_error\n";
  for (const BacktestStep& step : report.steps) {
    for (std::size_t j = 0; j < step.predicted.size(); ++j) {
      out += std::to_string(step.step_index) + "," + std::to_string(j) + "," +
             detail::format_double(step.predicted[j]) + "," +
             detail::format_double(step.actual[j]) + "," +
             detail::format_double(step.absolute_errors[j]) + "\n";
    }
  }
  return out;
}

inline std::string render_csv(const BaselineComparison& cmp) {
  std::string out =
      "step,offset,actual,apst_predicted,apst_absolute_error,persistence_predicted,"
      "persistence_absolute_error\n";
  for (std::size_t i = 0; i < cmp.backtest.steps.size(); ++i) {
    const BacktestStep& step = cmp.backtest.steps[i];
    for (std::size_t j = 0; j < step.predicted.size(); ++j) {
      const double baseline = cmp.baseline_predictions[i][j];
      out += std::to_string(step.step_index) + "," + std::to_string(j) + "," +
             detail::format_double(step.actual[j]) + "," +
             detail::format_double(step.predicted[j]) + "," +
             detail::format_double(step.absolute_errors[j]) + "," +
             detail::format_double(baseline) + "," +
             detail::format_double(std::abs(baseline - step.actual[j])) + "\n";
    }
  }
  return out;
}

}  // namespace apst
