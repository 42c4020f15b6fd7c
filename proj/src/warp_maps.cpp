#include "hwarp/warp_maps.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hwarp/error.hpp"

namespace hwarp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// sgn with sgn(0) = +1 so the perspective denominator never vanishes.
double sgn_pos(double v) { return v < 0.0 ? -1.0 : 1.0; }

double log_half(const WarpConfig& c) { return std::log(0.5 * c.n); }

constexpr Coeff kScaleRotCoeffs[] = {kB3, kB4};
constexpr Coeff kAspectCoeffs[] = {kB5};
constexpr Coeff kShearCoeffs[] = {kB6};
constexpr Coeff kPersp1Coeffs[] = {kB7};
constexpr Coeff kPersp2Coeffs[] = {kB8};

}  // namespace

std::string_view to_string(WarpKind kind) {
  switch (kind) {
    case WarpKind::ScaleRotation: return "scale-rot";
    case WarpKind::AspectRatio: return "aspect";
    case WarpKind::Shear: return "shear";
    case WarpKind::Perspective1: return "persp1";
    case WarpKind::Perspective2: return "persp2";
  }
  return "unknown";
}

std::optional<WarpKind> parse_warp_kind(std::string_view name) {
  for (WarpKind k : kAllWarpKinds) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::span<const Coeff> warp_coeffs(WarpKind kind) {
  switch (kind) {
    case WarpKind::ScaleRotation: return kScaleRotCoeffs;
    case WarpKind::AspectRatio: return kAspectCoeffs;
    case WarpKind::Shear: return kShearCoeffs;
    case WarpKind::Perspective1: return kPersp1Coeffs;
    case WarpKind::Perspective2: return kPersp2Coeffs;
  }
  return {};
}

WarpConfig WarpConfig::for_size(int n) {
  return WarpConfig{n, 0.25 * n, 0.25 * n};
}

void WarpConfig::validate() const {
  if (n < 32 || n % 2 != 0) {
    throw InvalidArgument("WarpConfig: n must be even and >= 32, got " + std::to_string(n));
  }
  if (!(phi1 > 0.0) || !(phi2 > 0.0) || !std::isfinite(phi1) || !std::isfinite(phi2)) {
    throw InvalidArgument("WarpConfig: phi1 and phi2 must be positive");
  }
}

Vector2 warped_coord(WarpKind kind, const WarpConfig& config, double col, double row) {
  switch (kind) {
    case WarpKind::ScaleRotation:
    case WarpKind::AspectRatio:
      return {col, row};
    case WarpKind::Shear:
    case WarpKind::Perspective1:
    case WarpKind::Perspective2:
      break;
  }
  const double half = 0.5 * config.n;
  return {col - half, row - half};
}

Vector2 sample_coords(WarpKind kind, const WarpConfig& config, const Vector2& mu) {
  const double n = config.n;
  const double half = 0.5 * n;
  switch (kind) {
    case WarpKind::ScaleRotation: {
      const double r = std::pow(half, mu.x() / n);
      const double a = kTwoPi * mu.y() / n;
      return {r * std::cos(a), r * std::sin(a)};
    }
    case WarpKind::AspectRatio:
      return {std::pow(half, 2.0 * mu.x() / n), std::pow(half, 2.0 * mu.y() / n)};
    case WarpKind::Shear:
      return {(2.0 / n) * mu.x() * mu.y(), mu.y()};
    case WarpKind::Perspective1: {
      const double d = mu.x() + sgn_pos(mu.x()) * config.phi1;
      if (d == 0.0) throw DomainError("sample_coords: perspective denominator vanishes");
      return {config.phi2 * n / (2.0 * d), mu.y() * n / (2.0 * d)};
    }
    case WarpKind::Perspective2: {
      const double d = mu.y() + sgn_pos(mu.y()) * config.phi1;
      if (d == 0.0) throw DomainError("sample_coords: perspective denominator vanishes");
      return {mu.x() * n / (2.0 * d), config.phi2 * n / (2.0 * d)};
    }
  }
  return {0.0, 0.0};
}

Vector2 peak_from_coeffs(WarpKind kind, const WarpConfig& config, const AlgebraCoeffs& b) {
  const double n = config.n;
  switch (kind) {
    case WarpKind::ScaleRotation:
      return {b[kB4] * n / log_half(config), b[kB3] * n / kTwoPi};
    case WarpKind::AspectRatio: {
      const double shift = b[kB5] * n / (2.0 * log_half(config));
      return {shift, -shift};
    }
    case WarpKind::Shear:
      return {b[kB6] * 0.5 * n, 0.0};
    case WarpKind::Perspective1:
      return {b[kB7] * 0.5 * config.phi2 * n, 0.0};
    case WarpKind::Perspective2:
      return {0.0, b[kB8] * 0.5 * config.phi2 * n};
  }
  return {0.0, 0.0};
}

std::pair<double, double> aspect_axis_estimates(const WarpConfig& config, const Vector2& mu_hat) {
  const double k = 2.0 * log_half(config) / config.n;
  return {k * mu_hat.x(), k * mu_hat.y()};
}

double reconcile_aspect(double b5_from_x, double minus_b5_from_y) {
  return 0.5 * (b5_from_x - minus_b5_from_y);
}

CoeffUpdate recover_coeffs(WarpKind kind, const WarpConfig& config, const Vector2& mu_hat) {
  const double n = config.n;
  CoeffUpdate u;
  switch (kind) {
    case WarpKind::ScaleRotation:
      u.set(kB3, kTwoPi * mu_hat.y() / n);
      u.set(kB4, mu_hat.x() / n * log_half(config));
      break;
    case WarpKind::AspectRatio: {
      const auto [bx, by] = aspect_axis_estimates(config, mu_hat);
      u.set(kB5, reconcile_aspect(bx, by));
      break;
    }
    case WarpKind::Shear:
      u.set(kB6, 2.0 * mu_hat.x() / n);
      break;
    case WarpKind::Perspective1:
      u.set(kB7, 2.0 * mu_hat.x() / (config.phi2 * n));
      break;
    case WarpKind::Perspective2:
      u.set(kB8, 2.0 * mu_hat.y() / (config.phi2 * n));
      break;
  }
  return u;
}

WarpedImage warp_image(const ImageGrid& image, WarpKind kind, const WarpConfig& config) {
  if (image.empty()) throw InvalidArgument("warp_image: empty image");
  config.validate();
  const int n = config.n;

  if (kind == WarpKind::AspectRatio) {
    static constexpr double kSigns[4][2] = {{1, 1}, {-1, 1}, {1, -1}, {-1, -1}};
    const ImageGrid gray = to_gray(image);
    ImageGrid out(n, n, 4);
    double value = 0.0;
    for (int row = 0; row < n; ++row) {
      for (int col = 0; col < n; ++col) {
        const Vector2 u = sample_coords(kind, config, warped_coord(kind, config, col, row));
        for (int q = 0; q < 4; ++q) {
          bilinear_sample(gray, Vector2(kSigns[q][0] * u.x(), kSigns[q][1] * u.y()),
                          std::span<double>(&value, 1));
          out.at(col, row, q) = value;
        }
      }
    }
    return {std::move(out), kind, config};
  }

  ImageGrid out(n, n, image.channels());
  auto dst = out.data();
  const int nc = image.channels();
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      const Vector2 u = sample_coords(kind, config, warped_coord(kind, config, col, row));
      const std::size_t base = (static_cast<std::size_t>(row) * n + col) * nc;
      bilinear_sample(image, u, dst.subspan(base, nc));
    }
  }
  return {std::move(out), kind, config};
}

}  // namespace hwarp
