#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hwarp/error.hpp"
#include "hwarp/rng.hpp"
#include "hwarp/warp_maps.hpp"
#include "oracles.hpp"

using namespace hwarp;

namespace {

const WarpConfig kCfg = WarpConfig::for_size(256);

// One in-subgroup coefficient vector per warp.
AlgebraCoeffs subgroup_coeffs(WarpKind kind, std::mt19937_64& rng) {
  AlgebraCoeffs b;
  switch (kind) {
    case WarpKind::ScaleRotation:
      b[kB3] = uniform(rng, -0.8, 0.8);
      b[kB4] = uniform(rng, -0.3, 0.3);
      break;
    case WarpKind::AspectRatio:
      b[kB5] = uniform(rng, -0.3, 0.3);
      break;
    case WarpKind::Shear:
      b[kB6] = uniform(rng, -0.2, 0.2);
      break;
    case WarpKind::Perspective1:
      b[kB7] = uniform(rng, -1e-3, 1e-3);
      break;
    case WarpKind::Perspective2:
      b[kB8] = uniform(rng, -1e-3, 1e-3);
      break;
  }
  return b;
}

}  // namespace

TEST_CASE("warp kind names") {
  for (WarpKind k : kAllWarpKinds) CHECK(parse_warp_kind(to_string(k)) == k);
  CHECK(parse_warp_kind("scale-rot") == WarpKind::ScaleRotation);
  CHECK_FALSE(parse_warp_kind("rotate").has_value());
}

TEST_CASE("config validation") {
  CHECK_NOTHROW(kCfg.validate());
  CHECK(kCfg.phi1 == 64.0);
  CHECK_THROWS_AS((WarpConfig{255, 64, 64}.validate()), InvalidArgument);
  CHECK_THROWS_AS((WarpConfig{256, 0, 64}.validate()), InvalidArgument);
}

TEST_CASE("sample coordinates follow the closed forms") {
  const double n = 256;
  const double a = std::log(n / 2);
  Vector2 u = sample_coords(WarpKind::ScaleRotation, kCfg, {128, 64});
  CHECK(u.norm() == doctest::Approx(std::exp(a * 128 / n)));
  CHECK(std::atan2(u.y(), u.x()) == doctest::Approx(std::numbers::pi / 2));
  u = sample_coords(WarpKind::AspectRatio, kCfg, {64, 192});
  CHECK(u.x() == doctest::Approx(std::exp(2 * a * 64 / n)));
  CHECK(u.y() == doctest::Approx(std::exp(2 * a * 192 / n)));
  u = sample_coords(WarpKind::Shear, kCfg, {10, -20});
  CHECK(u == Vector2(2.0 / n * 10 * -20, -20));
  u = sample_coords(WarpKind::Perspective1, kCfg, {-16, 30});
  CHECK(u.x() == doctest::Approx(64 * n / (2 * (-16 - 64))));
  CHECK(u.y() == doctest::Approx(30 * n / (2 * (-16 - 64))));
  u = sample_coords(WarpKind::Perspective2, kCfg, {30, 0});
  CHECK(u.y() == doctest::Approx(64 * n / (2 * 64.0)));
}

TEST_CASE("pseudo-translation is exact at the coordinate level") {
  // u(mu + delta) = H u(mu) for H in the warp's subgroup.
  std::mt19937_64 rng(17);
  for (WarpKind kind : kAllWarpKinds) {
    for (int trial = 0; trial < 40; ++trial) {
      const AlgebraCoeffs b = subgroup_coeffs(kind, rng);
      const Homography h = compose_homography(b);
      const Vector2 delta = peak_from_coeffs(kind, kCfg, b);
      const Vector2 mu = warped_coord(kind, kCfg, uniform(rng, 150, 216), uniform(rng, 150, 216));
      const Vector2 moved = sample_coords(kind, kCfg, mu + delta);
      const Vector2 mapped = h.map(sample_coords(kind, kCfg, mu));
      CHECK((moved - mapped).norm() < 1e-9 * std::max(1.0, mapped.norm()));
    }
  }
}

TEST_CASE("analytic peaks") {
  AlgebraCoeffs b;
  b[kB3] = 0.5;
  b[kB4] = 0.2;
  const Vector2 p = peak_from_coeffs(WarpKind::ScaleRotation, kCfg, b);
  CHECK(p.x() == doctest::Approx(0.2 * 256 / std::log(128.0)));
  CHECK(p.y() == doctest::Approx(0.5 * 256 / (2 * std::numbers::pi)));
  b = {};
  b[kB6] = 0.1;
  CHECK(peak_from_coeffs(WarpKind::Shear, kCfg, b) == Vector2(12.8, 0));
  b = {};
  b[kB7] = 1e-3;
  CHECK(peak_from_coeffs(WarpKind::Perspective1, kCfg, b).x() == doctest::Approx(1e-3 * 64 * 128));
}

TEST_CASE("recover inverts the analytic peak") {
  std::mt19937_64 rng(5);
  for (WarpKind kind : kAllWarpKinds) {
    const AlgebraCoeffs b = subgroup_coeffs(kind, rng);
    AlgebraCoeffs r;
    recover_coeffs(kind, kCfg, peak_from_coeffs(kind, kCfg, b)).apply_to(r);
    for (int i = 0; i < 8; ++i) CHECK(r[i] == doctest::Approx(b[i]).epsilon(1e-12));
  }
  // The two aspect axes are averaged.
  const CoeffUpdate u = recover_coeffs(WarpKind::AspectRatio, kCfg, {10.0, -6.0});
  const auto [bx, by] = aspect_axis_estimates(kCfg, {10.0, -6.0});
  CHECK(*u.get(kB5) == doctest::Approx(reconcile_aspect(bx, by)));
  CHECK(reconcile_aspect(0.2, -0.1) == doctest::Approx(0.15));
  CHECK_FALSE(u.get(kB3).has_value());
}

TEST_CASE("warped images match a per-pixel oracle") {
  WarpConfig cfg = WarpConfig::for_size(32);
  ImageGrid img(40, 36, 1);
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (double& v : img.data()) v = unit(rng);
  for (WarpKind kind : kAllWarpKinds) {
    const WarpedImage w = warp_image(img, kind, cfg);
    REQUIRE(w.grid.width() == 32);
    REQUIRE(w.grid.channels() == (kind == WarpKind::AspectRatio ? 4 : 1));
    for (int row = 0; row < 32; ++row)
      for (int col = 0; col < 32; ++col) {
        const Vector2 u = sample_coords(kind, cfg, warped_coord(kind, cfg, col, row));
        if (kind == WarpKind::AspectRatio) {
          CHECK(w.grid.at(col, row, 0) == doctest::Approx(oracle::bilinear(img, u.x(), u.y())));
          CHECK(w.grid.at(col, row, 3) == doctest::Approx(oracle::bilinear(img, -u.x(), -u.y())));
        } else {
          CHECK(w.grid.at(col, row) == doctest::Approx(oracle::bilinear(img, u.x(), u.y())));
        }
      }
  }
  CHECK_THROWS_AS(warp_image(ImageGrid{}, WarpKind::Shear, cfg), InvalidArgument);
}
