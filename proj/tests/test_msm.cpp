#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "helpers.hpp"

using namespace apst;
using apst::test::code_of;

namespace {

// Independent check value: plain running-sum mean over a block.
double naive_block_mean(const std::vector<double>& values, std::size_t begin, std::size_t len) {
  double sum = 0.0;
  for (std::size_t i = begin; i < begin + len; ++i) sum += values[i];
  return sum / static_cast<double>(len);
}

double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace

TEST_CASE("validate_params returns the exact level count", "[msm]") {
  CHECK(validate_params({27, 3}) == 3);
  CHECK(validate_params({9, 3}) == 2);
  CHECK(validate_params({8, 2}) == 3);
  CHECK(validate_params({16, 4}) == 2);
  CHECK(validate_params({1, 1}) == 0);
  CHECK(validate_params({1, 3}) == 0);
}

TEST_CASE("validate_params rejects sizes that break the hierarchy", "[msm][error]") {
  CHECK(code_of([] { validate_params({10, 3}); }) == ErrorCode::NotPowerOfSegmentSize);
  CHECK(code_of([] { validate_params({12, 2}); }) == ErrorCode::NotPowerOfSegmentSize);
  CHECK(code_of([] { validate_params({5, 1}); }) == ErrorCode::NotPowerOfSegmentSize);
  CHECK(code_of([] { validate_params({0, 3}); }) == ErrorCode::ZeroSize);
  CHECK(code_of([] { validate_params({27, 0}); }) == ErrorCode::ZeroSize);
}

TEST_CASE("partition splits into complete chunks and reports the tail", "[msm]") {
  const PriceSeries exact(test::ramp(54));
  const Partitioned p1 = partition(exact, 27);
  REQUIRE(p1.parts.size() == 2);
  CHECK(p1.dropped_tail == 0);
  CHECK(p1.parts[0].front() == 1.0);
  CHECK(p1.parts[0].back() == 27.0);
  CHECK(p1.parts[1].front() == 28.0);
  CHECK(p1.parts[1].back() == 54.0);

  const PriceSeries ragged(test::ramp(60));
  const Partitioned p2 = partition(ragged, 27);
  REQUIRE(p2.parts.size() == 2);
  CHECK(p2.dropped_tail == 6);
}

TEST_CASE("partition with fewer elements than one chunk fails", "[msm][error]") {
  const PriceSeries series(test::ramp(10));
  CHECK(code_of([&] { partition(series, 27); }) == ErrorCode::EmptySeries);
}

TEST_CASE("build_tree reproduces the known 27-element ramp hierarchy", "[msm]") {
  const std::vector<double> part = test::ramp(27);

  // Expected values re-derived here by direct summation.
  std::vector<double> level2;
  for (std::size_t s = 0; s < 9; ++s) level2.push_back(naive_block_mean(part, s * 3, 3));
  std::vector<double> level1;
  for (std::size_t s = 0; s < 3; ++s) {
    level1.push_back((level2[3 * s] + level2[3 * s + 1] + level2[3 * s + 2]) / 3.0);
  }
  const double level0 = (level1[0] + level1[1] + level1[2]) / 3.0;

  REQUIRE(level2 == std::vector<double>{2, 5, 8, 11, 14, 17, 20, 23, 26});
  REQUIRE(level1 == std::vector<double>{5, 14, 23});
  REQUIRE(level0 == 14.0);

  const MsmTree tree = build_tree(part, {27, 3});
  REQUIRE(tree.levels.size() == 3);
  CHECK(tree.levels[2] == level2);
  CHECK(tree.levels[1] == level1);
  CHECK(tree.levels[0] == std::vector<double>{level0});
  CHECK(tree.root() == 14.0);
}

TEST_CASE("build_tree on a constant partition is constant at every level", "[msm]") {
  const std::vector<double> part(27, 42.5);
  const MsmTree tree = build_tree(part, {27, 3});
  for (const auto& level : tree.levels) {
    for (double v : level) CHECK(v == 42.5);
  }
}

TEST_CASE("build_tree identity case keeps the single value", "[msm]") {
  const std::vector<double> part{7.5};
  const MsmTree tree = build_tree(part, {1, 1});
  REQUIRE(tree.levels.size() == 1);
  CHECK(tree.levels[0] == std::vector<double>{7.5});
}

TEST_CASE("build_tree rejects a partition of the wrong length", "[msm][error]") {
  const std::vector<double> part(26, 1.0);
  CHECK(code_of([&] { build_tree(part, {27, 3}); }) == ErrorCode::LengthMismatch);
}

TEST_CASE("approximate emits one partition mean per block", "[msm]") {
  const PriceSeries series(test::ramp(54));
  const ApproxSeries ap = approximate(series, {27, 3});
  REQUIRE(ap.values == std::vector<double>{14.0, 41.0});
  CHECK(ap.dropped_tail == 0);
  CHECK(ap.params == ApproxParams{27, 3});
}

TEST_CASE("approximate of a constant series repeats the constant", "[msm]") {
  const PriceSeries series(std::vector<double>(81, 3.25));
  const ApproxSeries ap = approximate(series, {27, 3});
  REQUIRE(ap.size() == 3);
  for (double v : ap.values) CHECK(v == 3.25);
}

TEST_CASE("approximate with K=1 is the identity passthrough", "[msm]") {
  std::mt19937 rng(7);
  const auto values = test::uniform_values(rng, 40, 1.0, 1000.0);
  const ApproxSeries ap = approximate(PriceSeries(values), {1, 1});
  CHECK(ap.values == values);
  CHECK(ap.dropped_tail == 0);
}

TEST_CASE("approximate propagates partition and parameter errors", "[msm][error]") {
  const PriceSeries series(test::ramp(10));
  CHECK(code_of([&] { approximate(series, {27, 3}); }) == ErrorCode::EmptySeries);
  CHECK(code_of([&] { approximate(series, {10, 3}); }) == ErrorCode::NotPowerOfSegmentSize);
}

TEST_CASE("level j holds exactly t^j means and parents average their children", "[msm]") {
  std::mt19937 rng(11);
  const auto values = test::uniform_values(rng, 27 * 4, 1.0, 1000.0);
  const auto trees = build_trees(PriceSeries(values), {27, 3});
  REQUIRE(trees.size() == 4);
  for (const MsmTree& tree : trees) {
    REQUIRE(tree.levels.size() == 3);
    std::size_t expected = 1;
    for (std::size_t j = 0; j < tree.levels.size(); ++j) {
      CHECK(tree.levels[j].size() == expected);
      expected *= 3;
    }
    for (std::size_t j = 0; j + 1 < tree.levels.size(); ++j) {
      for (std::size_t s = 0; s < tree.levels[j].size(); ++s) {
        const auto& children = tree.levels[j + 1];
        const double mean = (children[3 * s] + children[3 * s + 1] + children[3 * s + 2]) / 3.0;
        CHECK(rel_diff(tree.levels[j][s], mean) < 1e-9);
      }
    }
  }
}

TEST_CASE("every tree entry stays within the partition's min and max", "[msm]") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const auto values = test::uniform_values(rng, 16 * 3, -50.0, 50.0);
    const auto trees = build_trees(PriceSeries(values), {16, 4});
    for (std::size_t i = 0; i < trees.size(); ++i) {
      const auto begin = values.begin() + static_cast<std::ptrdiff_t>(i * 16);
      const auto [lo, hi] = std::minmax_element(begin, begin + 16);
      for (const auto& level : trees[i].levels) {
        for (double v : level) {
          CHECK(v >= *lo);
          CHECK(v <= *hi);
        }
      }
    }
  }
}

TEST_CASE("level-0 values match plain block means on random series", "[msm][property]") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    std::uniform_int_distribution<std::size_t> len_dist(27, 500);
    const auto values = test::uniform_values(rng, len_dist(rng), 1.0, 1000.0);
    const PriceSeries series(values);
    for (const ApproxParams params : {ApproxParams{27, 3}, ApproxParams{9, 3}, ApproxParams{8, 2}}) {
      if (values.size() < params.partition_size) continue;
      const ApproxSeries ap = approximate(series, params);
      for (std::size_t i = 0; i < ap.size(); ++i) {
        const double expected =
            naive_block_mean(values, i * params.partition_size, params.partition_size);
        REQUIRE(rel_diff(ap.values[i], expected) < 1e-9);
      }
    }
  }
}

TEST_CASE("a value swap across partitions only changes the affected outputs", "[msm][property]") {
  std::mt19937 rng(19);
  auto values = test::uniform_values(rng, 27 * 5, 1.0, 1000.0);
  const ApproxSeries before = approximate(PriceSeries(values), {27, 3});

  // Swap one element of partition 1 with one of partition 3.
  std::swap(values[30], values[27 * 3 + 4]);
  const ApproxSeries after = approximate(PriceSeries(values), {27, 3});

  CHECK(before.values[0] == after.values[0]);
  CHECK(before.values[2] == after.values[2]);
  CHECK(before.values[4] == after.values[4]);
  CHECK(before.values[1] != after.values[1]);
  CHECK(before.values[3] != after.values[3]);
}

TEST_CASE("approximate cost grows linearly in the series length", "[msm][cost]") {
  std::mt19937 rng(23);
  const auto small = test::uniform_values(rng, 27 * 20, 1.0, 100.0);
  const auto large = test::uniform_values(rng, 27 * 40, 1.0, 100.0);

  CostCounters c1;
  approximate(PriceSeries(small), {27, 3}, &c1);
  CostCounters c2;
  approximate(PriceSeries(large), {27, 3}, &c2);

  REQUIRE(c1.approx_ops > 0);
  const double ratio = static_cast<double>(c2.approx_ops) / static_cast<double>(c1.approx_ops);
  CHECK(ratio > 1.9);
  CHECK(ratio < 2.1);
}

TEST_CASE("PriceSeries rejects non-finite values and mismatched labels", "[series][error]") {
  CHECK(code_of([] {
    PriceSeries(std::vector<double>{1.0, std::nan(""), 3.0});
  }) == ErrorCode::InvalidSeries);
  CHECK(code_of([] {
    PriceSeries(std::vector<double>{1.0, 2.0},
                std::vector<std::string>{"2010-04-01"});
  }) == ErrorCode::InvalidSeries);
  const PriceSeries labelled(std::vector<double>{1.0, 2.0},
                             std::vector<std::string>{"a", "b"});
  CHECK(labelled.labels().size() == 2);
}
