#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "apst/backtest.hpp"
#include "apst/csv.hpp"
#include "apst/errors.hpp"
#include "apst/knn.hpp"
#include "apst/msm.hpp"
#include "apst/report.hpp"

namespace apst {

enum class RunMode { Approximate, Predict, Backtest, Compare };

enum class OutputFormat { Json, Csv };

constexpr std::string_view to_string(RunMode mode) noexcept {
  switch (mode) {
    case RunMode::Approximate: return "approximate";
    case RunMode::Predict: return "predict";
    case RunMode::Backtest: return "backtest";
    case RunMode::Compare: return "compare";
  }
  return "unknown";
}

// Everything one pipeline invocation needs. Populated by the CLI from flags
// and config file; usable directly from code.
struct RunConfig {
  RunMode mode = RunMode::Backtest;
  std::filesystem::path input_path;
  std::filesystem::path output_path;  // empty writes the report to stdout
  OutputFormat format = OutputFormat::Json;
  CsvSchema csv;
  ApproxParams approx;
  ForecastConfig forecast;
  double start_fraction = 0.7;
  bool emit_trees = false;
};

namespace detail {

inline void write_output(const RunConfig& config, const std::string& content,
                         std::ostream& out) {
  if (config.output_path.empty()) {
    out << content;
    return;
  }
  std::ofstream file(config.output_path, std::ios::binary);
  if (!file) {
    throw Error(ErrorCode::FileNotFound, "cannot open output file " + config.output_path.string());
  }
  file << content;
}

}  // namespace detail

// Runs one mode end to end: load, model, emit. Returns 0 on success; on any
// failure prints a diagnostic naming the failing stage and returns 1.
// `out` receives reports when no output path is set; `diag` the diagnostics.
inline int run(const RunConfig& config, std::ostream& out = std::cout,
               std::ostream& diag = std::cerr) {
  std::string stage = "load";
  try {
    if (!(config.start_fraction > 0.0) || !(config.start_fraction < 1.0)) {
      throw Error(ErrorCode::InvalidConfig, "start fraction must lie in (0, 1)");
    }
    std::size_t bad_rows = 0;
    const PriceSeries series = load_csv(config.input_path, config.csv, &bad_rows);
    if (bad_rows > 0) {
      diag << "load: skipped " << bad_rows << " unparsable row(s)\n";
    }
    if (series.empty()) {
      throw Error(ErrorCode::EmptyFile,
                  "no usable price rows in " + config.input_path.string());
    }

    stage = std::string(to_string(config.mode));
    std::string rendered;
    switch (config.mode) {
      case RunMode::Approximate: {
        const ApproxSeries ap = approximate(series, config.approx);
        if (config.format == OutputFormat::Json) {
          nlohmann::json j = ap;
          if (config.emit_trees) j["trees"] = build_trees(series, config.approx);
          rendered = render_json(j);
        } else {
          rendered = render_csv(ap);
        }
        break;
      }
      case RunMode::Predict: {
        const ApproxSeries ap = approximate(series, config.approx);
        const Forecast forecast = predict(ap, config.forecast);
        rendered = config.format == OutputFormat::Json
                       ? render_json(nlohmann::json(forecast))
                       : render_csv(forecast);
        break;
      }
      case RunMode::Backtest: {
        const BacktestReport report =
            walk_forward_backtest(series, config.approx, config.forecast, config.start_fraction);
        rendered = config.format == OutputFormat::Json ? render_json(nlohmann::json(report))
                                                       : render_csv(report);
        break;
      }
      case RunMode::Compare: {
        const BaselineComparison cmp = compare_with_persistence(
            series, config.approx, config.forecast, config.start_fraction);
        rendered = config.format == OutputFormat::Json ? render_json(nlohmann::json(cmp))
                                                       : render_csv(cmp);
        break;
      }
    }

    stage = "write";
    detail::write_output(config, rendered, out);
    return 0;
  } catch (const Error& e) {
    diag << "error in stage '" << stage << "': " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    diag << "error in stage '" << stage << "': " << e.what() << "\n";
    return 1;
  }
}

}  // namespace apst
