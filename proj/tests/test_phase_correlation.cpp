#include <doctest.h>

#include <cmath>

#include "hwarp/error.hpp"
#include "hwarp/phase_correlation.hpp"
#include "hwarp/texture.hpp"

using namespace hwarp;

namespace {

ImageGrid circular_shift(const ImageGrid& a, int sx, int sy) {
  const int w = a.width();
  const int h = a.height();
  ImageGrid out(w, h, a.channels());
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < a.channels(); ++c)
        out.at(x, y, c) = a.at(((x - sx) % w + w) % w, ((y - sy) % h + h) % h, c);
  return out;
}

// Integer offset maximizing the plain circular cross-correlation sum.
std::pair<int, int> brute_force_argmax(const ImageGrid& a, const ImageGrid& b) {
  const int w = a.width();
  const int h = a.height();
  double best = -1e300;
  std::pair<int, int> arg{0, 0};
  for (int dy = -h / 2; dy < h / 2; ++dy)
    for (int dx = -w / 2; dx < w / 2; ++dx) {
      double s = 0.0;
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) s += b.at(x, y) * a.at(((x - dx) % w + w) % w, ((y - dy) % h + h) % h);
      if (s > best) {
        best = s;
        arg = {dx, dy};
      }
    }
  return arg;
}

}  // namespace

TEST_CASE("autocorrelation peaks at the origin") {
  const ImageGrid a = fractal_texture(64, 64, 3);
  const PeakEstimate p = phase_correlate(a, a);
  CHECK(p.mu.norm() < 1e-9);
  CHECK(p.confidence > 0.99);
}

TEST_CASE("circular integer shift") {
  const ImageGrid a = fractal_texture(48, 40, 9);
  const ImageGrid b = circular_shift(a, 5, -3);
  const auto oracle = brute_force_argmax(a, b);
  CHECK(oracle == std::pair<int, int>{5, -3});
  CorrelationOptions opts;
  opts.window_x = opts.window_y = false;
  const PeakEstimate p = phase_correlate(a, b, opts);
  CHECK(p.mu.x() == doctest::Approx(oracle.first).epsilon(1e-9));
  CHECK(p.mu.y() == doctest::Approx(oracle.second).epsilon(1e-9));
}

TEST_CASE("windowed correlation finds the same integer shift") {
  const ImageGrid a = fractal_texture(64, 64, 1);
  const PeakEstimate p = phase_correlate(a, circular_shift(a, -7, 11));
  CHECK(std::round(p.mu.x()) == -7);
  CHECK(std::round(p.mu.y()) == 11);
}

TEST_CASE("subpixel refinement") {
  const ImageGrid src = fractal_texture(64, 64, 4, 2.0, 0.2);
  // b(x) = a(x - 2.5): linear interpolation between two circular shifts.
  const ImageGrid s2 = circular_shift(src, 2, 0);
  const ImageGrid s3 = circular_shift(src, 3, 0);
  ImageGrid b(64, 64, 1);
  for (std::size_t i = 0; i < b.data().size(); ++i) b.data()[i] = 0.5 * (s2.data()[i] + s3.data()[i]);
  const PeakEstimate p = phase_correlate(src, b);
  CHECK(std::abs(p.mu.x() - 2.5) < 0.25);
  CHECK(std::abs(p.mu.y()) < 0.25);
  CorrelationOptions integer;
  integer.subpixel = false;
  const PeakEstimate q = phase_correlate(src, b, integer);
  CHECK(q.mu.x() == std::round(q.mu.x()));
}

TEST_CASE("multi-channel responses are averaged") {
  const ImageGrid g = fractal_texture(32, 32, 5);
  ImageGrid a(32, 32, 2);
  for (int y = 0; y < 32; ++y)
    for (int x = 0; x < 32; ++x) {
      a.at(x, y, 0) = g.at(x, y);
      a.at(x, y, 1) = 1.0 - g.at(x, y);
    }
  const PeakEstimate p = phase_correlate(a, circular_shift(a, 3, 2));
  CHECK(std::round(p.mu.x()) == 3);
  CHECK(std::round(p.mu.y()) == 2);
}

TEST_CASE("degenerate inputs") {
  const ImageGrid zero(16, 16, 1);
  const PeakEstimate p = phase_correlate(zero, zero);
  CHECK(p.mu == Vector2(0, 0));
  CHECK(p.confidence == 0.0);
  CHECK_THROWS_AS(phase_correlate(ImageGrid(16, 16, 1), ImageGrid(16, 8, 1)), InvalidArgument);
}

TEST_CASE("spectral weighting keeps the peak") {
  const ImageGrid a = fractal_texture(64, 64, 8);
  CorrelationOptions opts;
  opts.spectral_sigma = 0.05;
  const PeakEstimate p = phase_correlate(a, circular_shift(a, 4, -6), opts);
  CHECK(std::round(p.mu.x()) == 4);
  CHECK(std::round(p.mu.y()) == -6);
  CHECK(std::isfinite(p.confidence));
}
