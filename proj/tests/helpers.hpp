#pragma once

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "apst/apst.hpp"

namespace apst::test {

// Runs f, which must throw apst::Error, and returns its code.
template <typename F>
ErrorCode code_of(F&& f) {
  try {
    std::forward<F>(f)();
  } catch (const Error& e) {
    return e.code();
  }
  throw std::logic_error("expected apst::Error was not thrown");
}

inline std::vector<double> ramp(std::size_t n, double start = 1.0, double step = 1.0) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = start + step * static_cast<double>(i);
  return out;
}

inline std::vector<double> uniform_values(std::mt19937& rng, std::size_t n, double lo,
                                          double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> out(n);
  for (double& x : out) x = dist(rng);
  return out;
}

inline std::vector<double> integer_values(std::mt19937& rng, std::size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  std::vector<double> out(n);
  for (double& x : out) x = static_cast<double>(dist(rng));
  return out;
}

// Periodic with bitwise-identical cycles: the phase is reduced before sin.
inline std::vector<double> sine_series(std::size_t n, std::size_t period, double amplitude,
                                       double level) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto phase = static_cast<double>(i % period) / static_cast<double>(period);
    out[i] = level + amplitude * std::sin(2.0 * std::numbers::pi * phase);
  }
  return out;
}

// Scratch directory removed on destruction.
class TempDir {
public:
  TempDir() {
    auto base = std::filesystem::temp_directory_path();
    std::random_device rd;
    path_ = base / ("apst-test-" + std::to_string(rd()) + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

  std::filesystem::path write_file(const std::string& name, const std::string& content) const {
    const auto file = path_ / name;
    std::ofstream out(file, std::ios::binary);
    out << content;
    return file;
  }

private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace apst::test
