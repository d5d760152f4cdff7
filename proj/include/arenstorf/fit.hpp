#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "arenstorf/accumulator.hpp"

namespace arenstorf::fit {

/// One (1/N, mean) observation.
struct FitPoint {
  double x = 0.0;
  double y = 0.0;
};

/// y = intercept + slope * x by unweighted least squares.
struct FitResult {
  double intercept = 0.0;
  double slope = 0.0;
  double residual_rms = 0.0;
  std::size_t n_points = 0;

  double predict(double x) const noexcept { return intercept + slope * x; }
};

/// Closed-form OLS on centered data. Throws ErrorCode::fit for fewer than two
/// points, non-finite input, or identical x values.
FitResult linear_fit(std::span<const FitPoint> points);

/// (1/N, mean) for each checkpoint.
std::vector<FitPoint> to_points(std::span<const Checkpoint> checkpoints);

/// Fit over the checkpoints with k_min <= log2 N <= k_max.
FitResult windowed_fit(std::span<const Checkpoint> checkpoints, int k_min, int k_max);

struct PlotRow {
  double x = 0.0;
  double mean = 0.0;
  std::optional<double> fitted;
};

struct PlotTable {
  std::vector<PlotRow> rows;
  std::optional<FitResult> fit;
};

/// Rows in input order; the fitted column is present only when `fit` is.
PlotTable emit_plot_data(std::span<const Checkpoint> checkpoints, const std::optional<FitResult>& fit);

/// Tab-separated table with a commented header, ready for a log-x plot:
///   # intercept <value>      (when a fit is attached)
///   # inv_N  mean  [fitted]
void write_plot_tsv(std::ostream& out, const PlotTable& table);

}  // namespace arenstorf::fit
