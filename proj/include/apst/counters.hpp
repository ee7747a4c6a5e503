#pragma once

#include <cstdint>

namespace apst {

// Arithmetic-operation tallies backing the cost checks. Counting is opt-in:
// pass a counter to approximate()/predict(), read the fields afterwards.
struct CostCounters {
  std::uint64_t approx_ops = 0;   // accumulations + divisions while building segment means
  std::uint64_t scan_ops = 0;     // per-element work in the candidate distance scan
  std::uint64_t average_ops = 0;  // accumulations in the successor-averaging stage
};

}  // namespace apst
