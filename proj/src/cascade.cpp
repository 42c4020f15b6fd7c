#include "hwarp/cascade.hpp"

#include <algorithm>
#include <string>

#include "hwarp/error.hpp"

namespace hwarp {

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::Translation: return "translation";
    case Stage::ScaleRotation: return "scale-rot";
    case Stage::AspectRatio: return "aspect";
    case Stage::Shear: return "shear";
    case Stage::Perspective1: return "persp1";
    case Stage::Perspective2: return "persp2";
  }
  return "unknown";
}

std::optional<Stage> parse_stage(std::string_view name) {
  for (Stage s : kAllStages) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::vector<Stage> parse_stage_list(std::string_view list) {
  if (list == "all") return {std::begin(kAllStages), std::end(kAllStages)};
  std::vector<Stage> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t end = std::min(list.find(',', start), list.size());
    const std::string_view item = list.substr(start, end - start);
    const auto stage = parse_stage(item);
    if (!stage) throw InvalidArgument("unknown stage '" + std::string(item) + "'");
    out.push_back(*stage);
    start = end + 1;
  }
  return out;
}

WarpKind stage_warp(Stage stage) {
  switch (stage) {
    case Stage::ScaleRotation: return WarpKind::ScaleRotation;
    case Stage::AspectRatio: return WarpKind::AspectRatio;
    case Stage::Shear: return WarpKind::Shear;
    case Stage::Perspective1: return WarpKind::Perspective1;
    case Stage::Perspective2: return WarpKind::Perspective2;
    case Stage::Translation: break;
  }
  throw InvalidArgument("translation stage has no warp");
}

void EstimatorConfig::validate() const {
  warp_config.validate();
  for (std::size_t i = 1; i < stages.size(); ++i) {
    if (!(static_cast<int>(stages[i - 1]) < static_cast<int>(stages[i]))) {
      throw InvalidArgument("EstimatorConfig: stages must follow cascade order without repeats");
    }
  }
}

ImageGrid rectify(const ImageGrid& search, const AlgebraCoeffs& partial_b) {
  if (partial_b == AlgebraCoeffs{}) return search;
  return warp_by_homography(search, compose_homography(partial_b).inverse());
}

CorrelationOptions stage_correlation_options(Stage stage, const EstimatorConfig& config) {
  CorrelationOptions opts;
  opts.subpixel = config.subpixel;
  opts.window_x = config.hann_window;
  // The angular axis of the log-polar warp is periodic.
  opts.window_y = config.hann_window && stage != Stage::ScaleRotation;
  opts.spectral_sigma = config.spectral_sigma;
  return opts;
}

StageEstimate estimate_stage(const ImageGrid& templ, const ImageGrid& search, Stage stage,
                             const EstimatorConfig& config) {
  const CorrelationOptions opts = stage_correlation_options(stage, config);
  StageEstimate out;
  if (stage == Stage::Translation) {
    out.peak = phase_correlate(templ, search, opts);
    out.update.set(kB1, out.peak.mu.x());
    out.update.set(kB2, out.peak.mu.y());
    return out;
  }
  const WarpKind kind = stage_warp(stage);
  const WarpedImage wt = warp_image(templ, kind, config.warp_config);
  const WarpedImage ws = warp_image(search, kind, config.warp_config);
  out.peak = phase_correlate(wt.grid, ws.grid, opts);
  out.update = recover_coeffs(kind, config.warp_config, out.peak.mu);
  return out;
}

EstimationResult estimate(const ImageGrid& templ, const ImageGrid& search,
                          const EstimatorConfig& config) {
  config.validate();
  if (templ.empty() || search.empty()) throw InvalidArgument("estimate: empty image");
  if (templ.width() != search.width() || templ.height() != search.height() ||
      templ.channels() != search.channels()) {
    throw InvalidArgument("estimate: template and search differ in shape");
  }

  EstimationResult result;
  double min_conf = 1.0;
  for (Stage stage : config.stages) {
    const ImageGrid rectified = rectify(search, result.b_hat);
    const StageEstimate est = estimate_stage(templ, rectified, stage, config);
    est.update.apply_to(result.b_hat);
    result.stages.push_back({stage, est.peak.mu, est.peak.confidence, result.b_hat});
    min_conf = std::min(min_conf, est.peak.confidence);
  }
  result.confidence = config.stages.empty() ? 0.0 : min_conf;
  result.h_hat = compose_homography(result.b_hat);
  return result;
}

}  // namespace hwarp
