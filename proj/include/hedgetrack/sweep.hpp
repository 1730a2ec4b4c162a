#pragma once

#include <span>
#include <vector>

#include "hedgetrack/analysis.hpp"
#include "hedgetrack/trace.hpp"

namespace hedgetrack {

struct SweepRow {
  double theta;
  double auc;           // mean success AUC vs ground truth across traces
  double anchor_ratio;  // mean empirical anchor ratio across traces
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::size_t best_index;  // argmax AUC, first on ties
};

// Runs the engine once per (trace, theta) with the shared seed and reports
// AUC against ground truth plus the empirical anchor ratio. Traces must
// carry ground truth on every frame.
SweepResult theta_sweep(std::span<const Trace> traces,
                        std::span<const double> theta_grid,
                        std::uint64_t seed);

// Parses "lo:hi:step" into an inclusive grid.
std::vector<double> parse_theta_grid(const std::string& spec);

}  // namespace hedgetrack
