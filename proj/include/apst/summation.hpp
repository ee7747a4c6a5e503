#pragma once

#include <cmath>

namespace apst {

// Neumaier-compensated running sum. Keeps segment means and error
// aggregates within a few ulps of the exact value regardless of length.
class KbnSum {
public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const noexcept { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace apst
