#pragma once

// The five subgroup warps. Each maps a regular n x n warped grid mu into the
// source image so that the subgroup's action on the source becomes a
// translation of the warped raster (a pseudo-translation).
//
// Grid index (col, row) maps to mu = (col, row) for ScaleRotation and
// AspectRatio, and to mu = (col - n/2, row - n/2) for Shear and the two
// perspective warps, whose formulas are odd in mu.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "hwarp/raster.hpp"
#include "hwarp/sl3.hpp"

namespace hwarp {

enum class WarpKind { ScaleRotation, AspectRatio, Shear, Perspective1, Perspective2 };

inline constexpr std::array<WarpKind, 5> kAllWarpKinds = {
    WarpKind::ScaleRotation, WarpKind::AspectRatio, WarpKind::Shear, WarpKind::Perspective1,
    WarpKind::Perspective2};

// CLI vocabulary: scale-rot, aspect, shear, persp1, persp2.
std::string_view to_string(WarpKind kind);
std::optional<WarpKind> parse_warp_kind(std::string_view name);

// Coefficients a warp recovers: (b3, b4), (b5), (b6), (b7), (b8).
std::span<const Coeff> warp_coeffs(WarpKind kind);

struct WarpConfig {
  int n = 256;
  double phi1 = 64.0;  // perspective center offset, px
  double phi2 = 64.0;  // perspective zoom, px

  // n with phi1 = phi2 = n/4.
  static WarpConfig for_size(int n);

  // Throws InvalidArgument unless n is even and >= 32 and both phis are positive.
  void validate() const;

  bool operator==(const WarpConfig&) const = default;
};

struct WarpedImage {
  ImageGrid grid;
  WarpKind kind;
  WarpConfig config;
};

// Coefficient values produced by one warp stage.
class CoeffUpdate {
 public:
  void set(Coeff c, double v) {
    values_[c] = v;
    present_[c] = true;
  }
  std::optional<double> get(Coeff c) const {
    return present_[c] ? std::optional<double>(values_[c]) : std::nullopt;
  }
  bool empty() const {
    for (bool p : present_) if (p) return false;
    return true;
  }
  // Overwrites the present entries of b.
  void apply_to(AlgebraCoeffs& b) const {
    for (std::size_t i = 0; i < 8; ++i) if (present_[i]) b[i] = values_[i];
  }

 private:
  std::array<double, 8> values_{};
  std::array<bool, 8> present_{};
};

// Warped coordinate mu of grid index (col, row).
Vector2 warped_coord(WarpKind kind, const WarpConfig& config, double col, double row);

// Source coordinate (center-origin) sampled at warped coordinate mu.
// Throws DomainError for a vanishing perspective denominator.
Vector2 sample_coords(WarpKind kind, const WarpConfig& config, const Vector2& mu);

// Pseudo-translation of the warped raster caused by applying the warp's
// subgroup element (taken from b) to the source image.
Vector2 peak_from_coeffs(WarpKind kind, const WarpConfig& config, const AlgebraCoeffs& b);

// Inverse of peak_from_coeffs on the warp's coefficients.
CoeffUpdate recover_coeffs(WarpKind kind, const WarpConfig& config, const Vector2& mu_hat);

// AspectRatio double check: the per-axis estimates of (b5, -b5) and their
// antisymmetric reconciliation.
std::pair<double, double> aspect_axis_estimates(const WarpConfig& config, const Vector2& mu_hat);
double reconcile_aspect(double b5_from_x, double minus_b5_from_y);

// Bilinear resampling on the n x n warped grid. AspectRatio produces four
// channels, one per quadrant in order (+,+), (-,+), (+,-), (-,-), from the
// channel-averaged source; the other warps keep the source channels.
WarpedImage warp_image(const ImageGrid& image, WarpKind kind, const WarpConfig& config);

}  // namespace hwarp
