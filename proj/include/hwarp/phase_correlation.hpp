#pragma once

#include "hwarp/raster.hpp"
#include "hwarp/sl3.hpp"

namespace hwarp {

struct CorrelationOptions {
  bool subpixel = true;
  // Separable Hann apodization per axis. Leave an axis unwindowed when the
  // signal is genuinely periodic along it (the angular axis of a log-polar
  // warp).
  bool window_x = true;
  bool window_y = true;
  // Gaussian weight on the normalized cross-power spectrum, as a standard
  // deviation in cycles per pixel; 0 leaves every frequency equally weighted.
  double spectral_sigma = 0.0;
};

struct PeakEstimate {
  Vector2 mu{0.0, 0.0};  // shift of b relative to a: b(p) ~ a(p - mu)
  double confidence = 0.0;  // peak / L2 norm of the response, in [0, 1]
};

// Normalized cross-power-spectrum correlation. Multi-channel inputs are
// correlated per channel and the responses averaged. Shifts are reported in
// [-w/2, w/2) x [-h/2, h/2). Throws InvalidArgument for mismatched shapes.
PeakEstimate phase_correlate(const ImageGrid& a, const ImageGrid& b,
                             const CorrelationOptions& options = {});

// Averaged correlation response (row-major, origin at index 0, circular).
ImageGrid correlation_surface(const ImageGrid& a, const ImageGrid& b,
                              const CorrelationOptions& options = {});

}  // namespace hwarp
