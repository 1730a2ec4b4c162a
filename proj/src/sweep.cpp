#include "hedgetrack/sweep.hpp"

#include <cmath>
#include <stdexcept>

namespace hedgetrack {

SweepResult theta_sweep(std::span<const Trace> traces,
                        std::span<const double> theta_grid,
                        std::uint64_t seed) {
  if (traces.empty() || theta_grid.empty()) {
    throw std::invalid_argument("theta_sweep: empty traces or grid");
  }
  for (const auto& trace : traces) {
    for (const auto& obs : trace.observations) {
      if (!obs.gt) {
        throw std::invalid_argument("theta_sweep: trace " +
                                    trace.header.sequence_id +
                                    " lacks ground truth");
      }
    }
  }

  SweepResult result;
  result.rows.reserve(theta_grid.size());
  for (double theta : theta_grid) {
    double auc_sum = 0.0;
    double ratio_sum = 0.0;
    for (const auto& trace : traces) {
      const RunResult run_result = run(trace, RunConfig{theta, seed});
      std::vector<BoundingBox> predictions;
      std::vector<BoundingBox> gt;
      predictions.reserve(run_result.decisions.size());
      gt.reserve(run_result.decisions.size());
      for (std::size_t k = 0; k < run_result.decisions.size(); ++k) {
        predictions.push_back(run_result.decisions[k].prediction);
        gt.push_back(*trace.observations[k].gt);
      }
      auc_sum += success_auc(predictions, gt);
      const std::uint64_t frames = run_result.decisions.size();
      ratio_sum +=
          frames > 1 ? static_cast<double>(run_result.anchors.size() - 1) /
                           static_cast<double>(frames - 1)
                     : 1.0;
    }
    const double count = static_cast<double>(traces.size());
    result.rows.push_back(SweepRow{theta, auc_sum / count, ratio_sum / count});
  }

  result.best_index = 0;
  for (std::size_t i = 1; i < result.rows.size(); ++i) {
    if (result.rows[i].auc > result.rows[result.best_index].auc) {
      result.best_index = i;
    }
  }
  return result;
}

std::vector<double> parse_theta_grid(const std::string& spec) {
  const auto first = spec.find(':');
  const auto second = spec.find(':', first + 1);
  if (first == std::string::npos || second == std::string::npos) {
    throw std::invalid_argument("theta grid must be lo:hi:step, got " + spec);
  }
  const double lo = std::stod(spec.substr(0, first));
  const double hi = std::stod(spec.substr(first + 1, second - first - 1));
  const double step = std::stod(spec.substr(second + 1));
  if (!(step > 0.0) || hi < lo) {
    throw std::invalid_argument("invalid theta grid: " + spec);
  }
  std::vector<double> grid;
  // Index-based stepping avoids accumulating float error across the grid.
  const auto count = static_cast<std::size_t>(
      std::floor((hi - lo) / step + 1e-9));
  for (std::size_t i = 0; i <= count; ++i) {
    grid.push_back(lo + static_cast<double>(i) * step);
  }
  return grid;
}

}  // namespace hedgetrack
