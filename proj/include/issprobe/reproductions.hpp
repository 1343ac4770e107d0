#pragma once

#include "issprobe/report_json.hpp"

#include <cstdint>
#include <string>

namespace issprobe {

struct ExamplesOutput {
  ojson report;
  /// Fixed-width summary table, one row per reproduced quantity.
  std::string table;
  bool all_expected = true;
};

/// Runs the canned reproductions: piecewise-rotation divergence witness,
/// projection sup-value demo, negation cancellation, signed-power
/// sensitivity and the linear-system forward/reverse audit.
ExamplesOutput run_reproductions(std::uint64_t seed);

}  // namespace issprobe
