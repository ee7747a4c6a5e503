#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "apst/counters.hpp"
#include "apst/errors.hpp"
#include "apst/msm.hpp"

namespace apst {

// Pattern-matching parameters: query window w, neighbor count k, forecast
// horizon m, and an optional distance cutoff. With the cutoff unset the
// search is pure k-NN; when set it pre-filters candidates before the k-cut.
struct ForecastConfig {
  std::size_t window = 3;     // w
  std::size_t neighbors = 2;  // k
  std::size_t horizon = 1;    // m
  std::optional<double> threshold;

  friend bool operator==(const ForecastConfig&, const ForecastConfig&) = default;
};

// A matched historical window and the m values that followed it.
struct Neighbor {
  std::size_t start_index = 0;
  double distance = 0.0;
  std::vector<double> successors;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// Predicted values plus the evidence they were averaged from.
struct Forecast {
  std::vector<double> values;
  std::vector<Neighbor> neighbors_used;
  std::vector<double> query_window;

  friend bool operator==(const Forecast&, const Forecast&) = default;
};

inline void validate_config(const ForecastConfig& config) {
  if (config.window == 0 || config.neighbors == 0 || config.horizon == 0) {
    throw Error(ErrorCode::ZeroSize, "window, neighbors and horizon must be positive");
  }
  if (config.threshold && (!std::isfinite(*config.threshold) || *config.threshold < 0.0)) {
    throw Error(ErrorCode::InvalidConfig, "threshold must be finite and non-negative");
  }
}

// L2 distance, sqrt(sum of squared differences), accumulated left to right.
inline double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "window lengths differ: " + std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()));
  }
  double sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sq += d * d;
  }
  return std::sqrt(sq);
}

// The trailing w values of the approximated sequence, in chronological order.
inline std::vector<double> extract_pattern(const ApproxSeries& ap, std::size_t window) {
  if (window == 0) {
    throw Error(ErrorCode::ZeroSize, "window must be positive");
  }
  if (ap.size() < window) {
    throw Error(ErrorCode::SeriesTooShort,
                "window " + std::to_string(window) + " exceeds approximated length " +
                    std::to_string(ap.size()));
  }
  return std::vector<double>(ap.values.end() - static_cast<std::ptrdiff_t>(window),
                             ap.values.end());
}

// Scans every eligible start index s (window [s, s+w) inside history,
// m successors available, no overlap with the query suffix [n-w, n)),
// filters by the distance cutoff when set, and returns the k closest
// sorted by (distance, start_index) ascending.
inline std::vector<Neighbor> find_neighbors(const ApproxSeries& ap,
                                            std::span<const double> pattern,
                                            const ForecastConfig& config,
                                            CostCounters* counters = nullptr) {
  validate_config(config);
  const std::size_t w = config.window;
  const std::size_t m = config.horizon;
  const std::size_t n = ap.size();
  if (pattern.size() != w) {
    throw Error(ErrorCode::LengthMismatch,
                "pattern length " + std::to_string(pattern.size()) +
                    " does not equal window " + std::to_string(w));
  }
  if (n < w + m || n < 2 * w) {
    throw Error(ErrorCode::NoCandidates,
                "no start index fits window " + std::to_string(w) + " plus horizon " +
                    std::to_string(m) + " in approximated length " + std::to_string(n));
  }
  const std::size_t last = std::min(n - w - m, n - 2 * w);

  struct Candidate {
    std::size_t start;
    double distance;
  };
  const auto& values = ap.values;
  std::vector<Candidate> candidates;
  candidates.reserve(last + 1);
  for (std::size_t s = 0; s <= last; ++s) {
    double sq = 0.0;
    for (std::size_t i = 0; i < w; ++i) {
      const double d = values[s + i] - pattern[i];
      sq += d * d;
    }
    if (counters != nullptr) counters->scan_ops += w;
    const double distance = std::sqrt(sq);
    if (config.threshold && distance > *config.threshold) continue;
    candidates.push_back({s, distance});
  }
  if (candidates.empty()) {
    throw Error(ErrorCode::NoNeighborsWithinThreshold,
                "all " + std::to_string(last + 1) + " candidates exceed threshold");
  }

  const std::size_t take = std::min<std::size_t>(config.neighbors, candidates.size());
  std::partial_sort(candidates.begin(),
                    candidates.begin() + static_cast<std::ptrdiff_t>(take), candidates.end(),
                    [](const Candidate& a, const Candidate& b) {
                      if (a.distance != b.distance) return a.distance < b.distance;
                      return a.start < b.start;
                    });

  std::vector<Neighbor> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    Neighbor nb;
    nb.start_index = candidates[i].start;
    nb.distance = candidates[i].distance;
    const auto begin = values.begin() + static_cast<std::ptrdiff_t>(candidates[i].start + w);
    nb.successors.assign(begin, begin + static_cast<std::ptrdiff_t>(m));
    out.push_back(std::move(nb));
  }
  return out;
}

// Exhaustive reference scan for cross-checking find_neighbors: enumerates
// every window, scores each with euclidean_distance, and keeps the k best
// via a full stable sort (ties fall back to enumeration order, which is
// ascending start index). Must stay independent of find_neighbors.
inline std::vector<Neighbor> brute_force_neighbors(const ApproxSeries& ap,
                                                   std::span<const double> pattern,
                                                   const ForecastConfig& config) {
  validate_config(config);
  const std::size_t w = config.window;
  const std::size_t m = config.horizon;
  const std::size_t n = ap.size();
  if (pattern.size() != w) {
    throw Error(ErrorCode::LengthMismatch,
                "pattern length " + std::to_string(pattern.size()) +
                    " does not equal window " + std::to_string(w));
  }

  const auto& values = ap.values;
  std::vector<Neighbor> matches;
  bool any_eligible = false;
  for (std::size_t s = 0; s + w + m <= n; ++s) {
    if (s + 2 * w > n) continue;  // window would overlap the query suffix
    any_eligible = true;
    const std::vector<double> window(values.begin() + static_cast<std::ptrdiff_t>(s),
                                     values.begin() + static_cast<std::ptrdiff_t>(s + w));
    const double distance = euclidean_distance(window, pattern);
    if (config.threshold && distance > *config.threshold) continue;
    Neighbor nb;
    nb.start_index = s;
    nb.distance = distance;
    nb.successors.assign(values.begin() + static_cast<std::ptrdiff_t>(s + w),
                         values.begin() + static_cast<std::ptrdiff_t>(s + w + m));
    matches.push_back(std::move(nb));
  }
  if (!any_eligible) {
    throw Error(ErrorCode::NoCandidates,
                "no start index fits window " + std::to_string(w) + " plus horizon " +
                    std::to_string(m) + " in approximated length " + std::to_string(n));
  }
  if (matches.empty()) {
    throw Error(ErrorCode::NoNeighborsWithinThreshold, "all candidates exceed threshold");
  }
  std::stable_sort(matches.begin(), matches.end(),
                   [](const Neighbor& a, const Neighbor& b) { return a.distance < b.distance; });
  if (matches.size() > config.neighbors) matches.resize(config.neighbors);
  return matches;
}

// Predicts the next m values: each forecast entry is the positionwise mean
// of the surviving neighbors' successors. When the cutoff leaves fewer than
// k neighbors the divisor is the surviving count, visible in neighbors_used.
inline Forecast predict(const ApproxSeries& ap, const ForecastConfig& config,
                        CostCounters* counters = nullptr) {
  validate_config(config);
  if (ap.size() < config.window + config.horizon + 1) {
    throw Error(ErrorCode::SeriesTooShort,
                "approximated length " + std::to_string(ap.size()) +
                    " is below window + horizon + 1 = " +
                    std::to_string(config.window + config.horizon + 1));
  }
  Forecast forecast;
  forecast.query_window = extract_pattern(ap, config.window);
  forecast.neighbors_used = find_neighbors(ap, forecast.query_window, config, counters);

  forecast.values.assign(config.horizon, 0.0);
  for (const Neighbor& nb : forecast.neighbors_used) {
    for (std::size_t j = 0; j < config.horizon; ++j) {
      forecast.values[j] += nb.successors[j];
      if (counters != nullptr) ++counters->average_ops;
    }
  }
  const auto divisor = static_cast<double>(forecast.neighbors_used.size());
  for (double& value : forecast.values) value /= divisor;
  return forecast;
}

}  // namespace apst
