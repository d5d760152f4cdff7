#include "arenstorf/fit.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "arenstorf/error.hpp"

namespace arenstorf::fit {

FitResult linear_fit(std::span<const FitPoint> points) {
  const std::size_t n = points.size();
  if (n < 2) fail(ErrorCode::fit, "least squares needs at least two points, got " + std::to_string(n));
  for (const auto& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) fail(ErrorCode::fit, "non-finite fit point");
  }

  double x_mean = 0.0;
  double y_mean = 0.0;
  for (const auto& p : points) {
    x_mean += p.x;
    y_mean += p.y;
  }
  x_mean /= static_cast<double>(n);
  y_mean /= static_cast<double>(n);

  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& p : points) {
    const double dx = p.x - x_mean;
    sxx += dx * dx;
    sxy += dx * (p.y - y_mean);
  }
  if (!(sxx > 0.0)) fail(ErrorCode::fit, "degenerate fit: all x values are equal");

  FitResult out;
  out.slope = sxy / sxx;
  out.intercept = y_mean - out.slope * x_mean;
  out.n_points = n;

  double ss = 0.0;
  for (const auto& p : points) {
    const double r = p.y - out.predict(p.x);
    ss += r * r;
  }
  out.residual_rms = std::sqrt(ss / static_cast<double>(n));
  return out;
}

std::vector<FitPoint> to_points(std::span<const Checkpoint> checkpoints) {
  std::vector<FitPoint> out;
  out.reserve(checkpoints.size());
  for (const auto& c : checkpoints) {
    if (c.n == 0) fail(ErrorCode::fit, "checkpoint with N = 0");
    out.push_back({1.0 / static_cast<double>(c.n), c.mean});
  }
  return out;
}

FitResult windowed_fit(std::span<const Checkpoint> checkpoints, int k_min, int k_max) {
  std::vector<Checkpoint> selected;
  for (const auto& c : checkpoints) {
    const int k = c.exponent();
    if (k >= k_min && k <= k_max) selected.push_back(c);
  }
  if (selected.size() < 2) {
    fail(ErrorCode::fit, "window [" + std::to_string(k_min) + ", " + std::to_string(k_max) + "] selects " +
                             std::to_string(selected.size()) + " checkpoint(s); need at least two");
  }
  return linear_fit(to_points(selected));
}

PlotTable emit_plot_data(std::span<const Checkpoint> checkpoints, const std::optional<FitResult>& fit) {
  PlotTable table;
  table.fit = fit;
  for (const auto& point : to_points(checkpoints)) {
    PlotRow row{point.x, point.y, std::nullopt};
    if (fit) row.fitted = fit->predict(point.x);
    table.rows.push_back(row);
  }
  return table;
}

namespace {

// shortest text that parses back to the same double
std::string shortest(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

void write_plot_tsv(std::ostream& out, const PlotTable& table) {
  if (table.fit) {
    out << "# intercept\t" << shortest(table.fit->intercept) << "\n";
    out << "# slope\t" << shortest(table.fit->slope) << "\n";
    out << "# inv_N\tmean\tfitted\n";
  } else {
    out << "# inv_N\tmean\n";
  }
  for (const auto& row : table.rows) {
    out << shortest(row.x) << '\t' << shortest(row.mean);
    if (row.fitted) out << '\t' << shortest(*row.fitted);
    out << '\n';
  }
}

}  // namespace arenstorf::fit
