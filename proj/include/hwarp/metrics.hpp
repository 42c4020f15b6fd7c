#pragma once

// Corner-based evaluation: alignment error, MACE, precision and success
// curves.

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "hwarp/sl3.hpp"

namespace hwarp {

using Corners = std::array<Vector2, 4>;

// Corners of a w x h template crop in center-origin coordinates (+-w/2, +-h/2).
Corners template_corners(double width, double height);

// Mean L2 distance between the four corners mapped by each homography.
// Returns +infinity when a corner maps to the line at infinity.
double alignment_error(const Homography& pred, const Homography& truth, const Corners& corners);

// Alignment error measured on the centered unit square after expressing
// both homographies in coordinates normalized by the template size; a
// dimensionless stand-in for a homography discrepancy score.
double discrepancy_score(const Homography& pred, const Homography& truth, double width,
                         double height);

struct MaceResult {
  double value = 0.0;      // mean over finite errors (+inf if none)
  int infinite_count = 0;  // samples excluded as infinite
  int sample_count = 0;
};

// Throws InvalidArgument on an empty list.
MaceResult mace(std::span<const std::pair<Homography, Homography>> pred_truth, const Corners& corners);
MaceResult mace(std::span<const double> errors);

struct Curve {
  std::vector<double> thresholds;
  std::vector<double> fractions;  // fraction of values strictly below each threshold
  double average = 0.0;           // mean of fractions over the grid
};

// Throws InvalidArgument on empty values or an empty grid.
Curve threshold_curve(std::span<const double> values, std::span<const double> thresholds);

struct PrecisionSuccess {
  Curve precision;  // over alignment error, px
  Curve success;    // over discrepancy score
};

PrecisionSuccess precision_and_success(std::span<const double> alignment_errors,
                                       std::span<const double> discrepancies,
                                       std::span<const double> precision_grid,
                                       std::span<const double> success_grid);

// 1..100 px, step 1.
std::vector<double> default_precision_grid();
// 0.01..1.00, step 0.01 (fraction of the template side).
std::vector<double> default_success_grid();

}  // namespace hwarp
