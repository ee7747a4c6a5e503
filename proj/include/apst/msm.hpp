#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "apst/counters.hpp"
#include "apst/errors.hpp"
#include "apst/series.hpp"
#include "apst/summation.hpp"

namespace apst {

// Partition size K and segment size t. K must be an exact power of t so the
// mean hierarchy is well-defined at every level; K = 1 is the identity
// passthrough that keeps day-granularity runs in the same pipeline.
struct ApproxParams {
  std::size_t partition_size = 27;  // K
  std::size_t segment_size = 3;     // t

  friend bool operator==(const ApproxParams&, const ApproxParams&) = default;
};

// Per-partition hierarchy of segment means. levels[j] holds the t^j means of
// level j, so levels.front() is the single partition-level mean and
// levels.back() the finest aggregation of the raw elements.
struct MsmTree {
  std::size_t partition_index = 1;  // 1-based position of the source partition
  std::vector<std::vector<double>> levels;

  double root() const { return levels.front().front(); }

  friend bool operator==(const MsmTree&, const MsmTree&) = default;
};

// The level-0 means, one per complete partition, in partition order.
struct ApproxSeries {
  std::vector<double> values;
  ApproxParams params;
  std::size_t dropped_tail = 0;  // raw elements past the last complete partition

  std::size_t size() const noexcept { return values.size(); }

  friend bool operator==(const ApproxSeries&, const ApproxSeries&) = default;
};

// Contiguous K-element views into a price series plus the discarded remainder.
struct Partitioned {
  std::vector<std::span<const double>> parts;
  std::size_t dropped_tail = 0;
};

// Returns the level count l with t^l == K.
inline std::size_t validate_params(const ApproxParams& params) {
  const std::size_t k = params.partition_size;
  const std::size_t t = params.segment_size;
  if (k == 0 || t == 0) {
    throw Error(ErrorCode::ZeroSize, "partition size and segment size must be positive");
  }
  if (t == 1) {
    if (k != 1) {
      throw Error(ErrorCode::NotPowerOfSegmentSize,
                  "segment size 1 only admits partition size 1, got " + std::to_string(k));
    }
    return 0;
  }
  std::size_t levels = 0;
  std::size_t power = 1;
  while (power < k) {
    power *= t;
    ++levels;
  }
  if (power != k) {
    throw Error(ErrorCode::NotPowerOfSegmentSize,
                "partition size " + std::to_string(k) + " is not a power of segment size " +
                    std::to_string(t));
  }
  return levels;
}

// Splits the series into floor(N/K) contiguous K-element chunks; the trailing
// N mod K elements are reported, not padded. The spans alias the series.
inline Partitioned partition(const PriceSeries& series, std::size_t partition_size) {
  if (partition_size == 0) {
    throw Error(ErrorCode::ZeroSize, "partition size must be positive");
  }
  const auto& values = series.values();
  const std::size_t count = values.size() / partition_size;
  if (count == 0) {
    throw Error(ErrorCode::EmptySeries,
                "series of length " + std::to_string(values.size()) +
                    " yields no complete partition of size " + std::to_string(partition_size));
  }
  Partitioned out;
  out.parts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.parts.emplace_back(values.data() + i * partition_size, partition_size);
  }
  out.dropped_tail = values.size() - count * partition_size;
  return out;
}

namespace detail {

inline double segment_mean(std::span<const double> xs, CostCounters* counters) {
  KbnSum sum;
  for (double x : xs) sum.add(x);
  if (counters != nullptr) counters->approx_ops += xs.size() + 1;
  return sum.value() / static_cast<double>(xs.size());
}

}  // namespace detail

// Builds the mean hierarchy for one partition: the finest level averages
// t-element segments of the raw data, each coarser level averages t adjacent
// children, down to the single level-0 value.
inline MsmTree build_tree(std::span<const double> part, const ApproxParams& params,
                          std::size_t partition_index = 1, CostCounters* counters = nullptr) {
  const std::size_t level_count = validate_params(params);
  if (part.size() != params.partition_size) {
    throw Error(ErrorCode::LengthMismatch,
                "partition length " + std::to_string(part.size()) + " does not equal K = " +
                    std::to_string(params.partition_size));
  }

  MsmTree tree;
  tree.partition_index = partition_index;
  if (level_count == 0) {
    tree.levels = {{part[0]}};
    return tree;
  }

  const std::size_t t = params.segment_size;
  tree.levels.resize(level_count);

  std::size_t segments = params.partition_size / t;
  auto& finest = tree.levels[level_count - 1];
  finest.reserve(segments);
  for (std::size_t s = 0; s < segments; ++s) {
    finest.push_back(detail::segment_mean(part.subspan(s * t, t), counters));
  }

  for (std::size_t level = level_count - 1; level-- > 0;) {
    const auto& children = tree.levels[level + 1];
    segments = children.size() / t;
    auto& current = tree.levels[level];
    current.reserve(segments);
    for (std::size_t s = 0; s < segments; ++s) {
      current.push_back(
          detail::segment_mean(std::span(children).subspan(s * t, t), counters));
    }
  }
  return tree;
}

// Full hierarchy for every complete partition.
inline std::vector<MsmTree> build_trees(const PriceSeries& series, const ApproxParams& params,
                                        CostCounters* counters = nullptr) {
  validate_params(params);
  const Partitioned parts = partition(series, params.partition_size);
  std::vector<MsmTree> trees;
  trees.reserve(parts.parts.size());
  for (std::size_t i = 0; i < parts.parts.size(); ++i) {
    trees.push_back(build_tree(parts.parts[i], params, i + 1, counters));
  }
  return trees;
}

// Compresses the series to one level-0 mean per partition. With equal-size
// segments the result equals the plain mean of each K-block.
inline ApproxSeries approximate(const PriceSeries& series, const ApproxParams& params,
                                CostCounters* counters = nullptr) {
  validate_params(params);
  const Partitioned parts = partition(series, params.partition_size);
  ApproxSeries out;
  out.params = params;
  out.dropped_tail = parts.dropped_tail;
  out.values.reserve(parts.parts.size());
  for (std::size_t i = 0; i < parts.parts.size(); ++i) {
    out.values.push_back(build_tree(parts.parts[i], params, i + 1, counters).root());
  }
  return out;
}

}  // namespace apst
