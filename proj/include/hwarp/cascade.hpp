#pragma once

// Six-stage warp-and-correlate homography estimator. Each stage rectifies
// the search image through everything estimated so far, warps both images
// with its subgroup warp, and reads the subgroup coefficients off the
// phase-correlation peak.

#include <optional>
#include <string_view>
#include <vector>

#include "hwarp/phase_correlation.hpp"
#include "hwarp/raster.hpp"
#include "hwarp/sl3.hpp"
#include "hwarp/warp_maps.hpp"

namespace hwarp {

enum class Stage { Translation, ScaleRotation, AspectRatio, Shear, Perspective1, Perspective2 };

inline constexpr Stage kAllStages[] = {Stage::Translation, Stage::ScaleRotation,
                                       Stage::AspectRatio, Stage::Shear,
                                       Stage::Perspective1, Stage::Perspective2};

// translation, scale-rot, aspect, shear, persp1, persp2.
std::string_view to_string(Stage stage);
std::optional<Stage> parse_stage(std::string_view name);
// Comma-separated list; "all" selects every stage. Throws InvalidArgument.
std::vector<Stage> parse_stage_list(std::string_view list);

// The warp a non-translation stage uses.
WarpKind stage_warp(Stage stage);

struct EstimatorConfig {
  WarpConfig warp_config = WarpConfig::for_size(256);
  std::vector<Stage> stages{std::begin(kAllStages), std::end(kAllStages)};
  bool subpixel = true;
  bool hann_window = true;
  // Optional low-pass weight on each stage's cross-power spectrum
  // (cycles/pixel). Around 0.01 it tolerates unresolved nuisance better but
  // biases the aspect and perspective stages; 0 is plain phase correlation.
  double spectral_sigma = 0.0;

  // Stages must be strictly increasing in cascade order.
  void validate() const;
};

struct StageDiagnostics {
  Stage stage;
  Vector2 mu{0.0, 0.0};
  double confidence = 0.0;
  AlgebraCoeffs b_after;  // cumulative estimate after this stage
};

struct EstimationResult {
  AlgebraCoeffs b_hat;
  Homography h_hat;
  std::vector<StageDiagnostics> stages;
  double confidence = 0.0;  // minimum stage confidence
};

struct StageEstimate {
  CoeffUpdate update;
  PeakEstimate peak;
};

// Search mapped toward the template frame: warp(search, H(partial_b)^-1).
ImageGrid rectify(const ImageGrid& search, const AlgebraCoeffs& partial_b);

// Correlation options a stage uses (windowing policy per warp).
CorrelationOptions stage_correlation_options(Stage stage, const EstimatorConfig& config);

// One stage on an already rectified search image.
StageEstimate estimate_stage(const ImageGrid& templ, const ImageGrid& search, Stage stage,
                             const EstimatorConfig& config);

// Full cascade. Template and search must share width, height and channels.
EstimationResult estimate(const ImageGrid& templ, const ImageGrid& search,
                          const EstimatorConfig& config = {});

}  // namespace hwarp
