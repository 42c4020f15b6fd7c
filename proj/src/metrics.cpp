#include "hwarp/metrics.hpp"

#include <cmath>
#include <limits>

#include "hwarp/error.hpp"

namespace hwarp {

Corners template_corners(double width, double height) {
  const double hx = 0.5 * width;
  const double hy = 0.5 * height;
  return {Vector2(-hx, -hy), Vector2(hx, -hy), Vector2(hx, hy), Vector2(-hx, hy)};
}

double alignment_error(const Homography& pred, const Homography& truth, const Corners& corners) {
  double sum = 0.0;
  for (const Vector2& c : corners) {
    const Vector2 a = pred.map(c);
    const Vector2 b = truth.map(c);
    if (!a.allFinite() || !b.allFinite()) return std::numeric_limits<double>::infinity();
    sum += (a - b).norm();
  }
  return sum / static_cast<double>(corners.size());
}

double discrepancy_score(const Homography& pred, const Homography& truth, double width,
                         double height) {
  const Matrix3 s = Eigen::Vector3d(width, height, 1.0).asDiagonal();
  const Matrix3 s_inv = Eigen::Vector3d(1.0 / width, 1.0 / height, 1.0).asDiagonal();
  const Homography p(s_inv * pred.matrix() * s);
  const Homography t(s_inv * truth.matrix() * s);
  return alignment_error(p, t, template_corners(1.0, 1.0));
}

MaceResult mace(std::span<const double> errors) {
  if (errors.empty()) throw InvalidArgument("mace: empty sample list");
  MaceResult r;
  r.sample_count = static_cast<int>(errors.size());
  double sum = 0.0;
  int finite = 0;
  for (double e : errors) {
    if (std::isfinite(e)) {
      sum += e;
      ++finite;
    } else {
      ++r.infinite_count;
    }
  }
  r.value = finite > 0 ? sum / finite : std::numeric_limits<double>::infinity();
  return r;
}

MaceResult mace(std::span<const std::pair<Homography, Homography>> pred_truth, const Corners& corners) {
  std::vector<double> errors;
  errors.reserve(pred_truth.size());
  for (const auto& [pred, truth] : pred_truth) errors.push_back(alignment_error(pred, truth, corners));
  return mace(errors);
}

Curve threshold_curve(std::span<const double> values, std::span<const double> thresholds) {
  if (values.empty()) throw InvalidArgument("threshold_curve: no values");
  if (thresholds.empty()) throw InvalidArgument("threshold_curve: empty threshold grid");
  Curve c;
  c.thresholds.assign(thresholds.begin(), thresholds.end());
  double sum = 0.0;
  for (double t : thresholds) {
    std::size_t below = 0;
    for (double v : values) {
      if (v < t) ++below;
    }
    const double f = static_cast<double>(below) / static_cast<double>(values.size());
    c.fractions.push_back(f);
    sum += f;
  }
  c.average = sum / static_cast<double>(thresholds.size());
  return c;
}

PrecisionSuccess precision_and_success(std::span<const double> alignment_errors,
                                       std::span<const double> discrepancies,
                                       std::span<const double> precision_grid,
                                       std::span<const double> success_grid) {
  return {threshold_curve(alignment_errors, precision_grid), threshold_curve(discrepancies, success_grid)};
}

std::vector<double> default_precision_grid() {
  std::vector<double> g;
  for (int t = 1; t <= 100; ++t) g.push_back(t);
  return g;
}

std::vector<double> default_success_grid() {
  std::vector<double> g;
  for (int t = 1; t <= 100; ++t) g.push_back(t / 100.0);
  return g;
}

}  // namespace hwarp
