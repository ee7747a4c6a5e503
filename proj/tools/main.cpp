#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "apst/run.hpp"

namespace {

apst::RunMode mode_for(const CLI::App& app, const CLI::App* chosen) {
  const std::string name = chosen->get_name();
  if (name == "approximate") return apst::RunMode::Approximate;
  if (name == "predict") return apst::RunMode::Predict;
  if (name == "backtest") return apst::RunMode::Backtest;
  (void)app;
  return apst::RunMode::Compare;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "apst: stock time-series forecasting via segment-mean approximation and\n"
      "nearest-neighbour pattern matching, with a walk-forward backtest harness"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Flat key=value config file; flags override it");

  std::string input;
  std::string output;
  std::string format = "json";
  std::size_t partition_size = 27;
  std::size_t segment_size = 3;
  std::size_t window = 3;
  std::size_t neighbors = 2;
  std::size_t horizon = 1;
  double threshold = 0.0;
  double start_fraction = 0.7;
  std::string price_column = "0";
  std::string date_column;
  std::string delimiter = ",";
  bool no_header = false;
  bool skip_bad_rows = false;
  bool emit_trees = false;

  app.add_option("-i,--input", input, "Input CSV of prices")->required();
  app.add_option("-o,--output", output, "Output file (default: stdout)");
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("-K,--partition-size", partition_size, "Partition size K")
      ->capture_default_str();
  app.add_option("-t,--segment-size", segment_size, "Segment size t (K must be a power of t)")
      ->capture_default_str();
  app.add_option("-w,--window", window, "Pattern window w")->capture_default_str();
  app.add_option("-k,--neighbors", neighbors, "Nearest neighbours k")->capture_default_str();
  app.add_option("-m,--horizon", horizon, "Forecast horizon m")->capture_default_str();
  auto* threshold_opt =
      app.add_option("--threshold", threshold, "Distance cutoff for neighbours (default: off)");
  app.add_option("--start-fraction", start_fraction,
                 "Fraction of the approximated series used as initial history")
      ->capture_default_str();
  app.add_option("--price-column", price_column, "Price column, 0-based index or header name")
      ->capture_default_str();
  app.add_option("--date-column", date_column, "Date column, 0-based index or header name");
  app.add_option("--delimiter", delimiter, "Field delimiter (single character)")
      ->capture_default_str();
  app.add_flag("--no-header", no_header, "Treat the first row as data");
  app.add_flag("--skip-bad-rows", skip_bad_rows, "Drop unparsable rows instead of aborting");
  app.add_flag("--emit-trees", emit_trees,
               "Include the per-partition mean hierarchies (approximate mode, JSON)");

  auto* cmd_approximate =
      app.add_subcommand("approximate", "Compress the series to its partition means");
  auto* cmd_predict = app.add_subcommand("predict", "Forecast the next m approximated values");
  auto* cmd_backtest = app.add_subcommand("backtest", "Walk-forward evaluation with MER/MAE");
  auto* cmd_compare =
      app.add_subcommand("compare", "Backtest against the persistence baseline");
  (void)cmd_approximate;
  (void)cmd_predict;
  (void)cmd_backtest;

  CLI11_PARSE(app, argc, argv);

  if (delimiter.size() != 1) {
    std::cerr << "error in stage 'configure': InvalidConfig: delimiter must be a single "
                 "character, got '"
              << delimiter << "'\n";
    return 1;
  }

  apst::RunConfig config;
  config.mode = mode_for(app, app.get_subcommands().front());
  config.input_path = input;
  config.output_path = output;
  config.format = format == "csv" ? apst::OutputFormat::Csv : apst::OutputFormat::Json;
  config.csv.price_column = price_column;
  if (!date_column.empty()) config.csv.date_column = date_column;
  config.csv.has_header = !no_header;
  config.csv.delimiter = delimiter[0];
  config.csv.skip_bad_rows = skip_bad_rows;
  config.approx.partition_size = partition_size;
  config.approx.segment_size = segment_size;
  config.forecast.window = window;
  config.forecast.neighbors = neighbors;
  config.forecast.horizon = horizon;
  if (threshold_opt->count() > 0) config.forecast.threshold = threshold;
  config.start_fraction = start_fraction;
  config.emit_trees = emit_trees;
  (void)cmd_compare;

  return apst::run(config);
}
