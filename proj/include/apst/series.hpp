#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "apst/errors.hpp"

namespace apst {

// Ordered daily closing prices with optional date labels. Values must be
// finite; labels, when present, pair one-to-one with values. Immutable after
// construction.
class PriceSeries {
public:
  PriceSeries() = default;

  explicit PriceSeries(std::vector<double> values, std::vector<std::string> labels = {})
      : values_(std::move(values)), labels_(std::move(labels)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!std::isfinite(values_[i])) {
        throw Error(ErrorCode::InvalidSeries,
                    "non-finite price at position " + std::to_string(i));
      }
    }
    if (!labels_.empty() && labels_.size() != values_.size()) {
      throw Error(ErrorCode::InvalidSeries,
                  "label count " + std::to_string(labels_.size()) +
                      " does not match value count " + std::to_string(values_.size()));
    }
  }

  const std::vector<double>& values() const noexcept { return values_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  friend bool operator==(const PriceSeries&, const PriceSeries&) = default;

private:
  std::vector<double> values_;
  std::vector<std::string> labels_;
};

}  // namespace apst
