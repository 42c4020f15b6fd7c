#include "hwarp/phase_correlation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "hwarp/error.hpp"
#include "hwarp/fft.hpp"

namespace hwarp {

namespace {

std::vector<double> hann(int len, bool enabled) {
  std::vector<double> w(len, 1.0);
  if (!enabled || len < 2) return w;
  for (int i = 0; i < len; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * (i + 0.5) / len);
  }
  return w;
}

// Windowed, weighted-mean-removed copy of one channel.
std::vector<double> prepare(const ImageGrid& img, int c, const std::vector<double>& wx,
                            const std::vector<double>& wy) {
  const int w = img.width();
  const int h = img.height();
  double sum = 0.0;
  double wsum = 0.0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double weight = wx[x] * wy[y];
      sum += weight * img.at(x, y, c);
      wsum += weight;
    }
  }
  const double mean = wsum > 0.0 ? sum / wsum : 0.0;
  std::vector<double> out(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      out[static_cast<std::size_t>(y) * w + x] = wx[x] * wy[y] * (img.at(x, y, c) - mean);
    }
  }
  return out;
}

int wrap(int i, int n) { return ((i % n) + n) % n; }

double parabolic_offset(double left, double center, double right) {
  const double denom = left - 2.0 * center + right;
  if (!(denom < 0.0)) return 0.0;
  return std::clamp(0.5 * (left - right) / denom, -0.5, 0.5);
}

}  // namespace

ImageGrid correlation_surface(const ImageGrid& a, const ImageGrid& b,
                              const CorrelationOptions& options) {
  if (a.empty() || b.empty()) throw InvalidArgument("phase_correlate: empty image");
  if (a.width() != b.width() || a.height() != b.height() || a.channels() != b.channels()) {
    throw InvalidArgument("phase_correlate: images differ in shape");
  }
  const int w = a.width();
  const int h = a.height();
  const auto wx = hann(w, options.window_x);
  const auto wy = hann(h, options.window_y);

  ImageGrid surface(w, h, 1);
  auto acc = surface.data();
  for (int c = 0; c < a.channels(); ++c) {
    const auto fa = fft::forward(prepare(a, c, wx, wy), w, h);
    const auto fb = fft::forward(prepare(b, c, wx, wy), w, h);
    std::vector<std::complex<double>> cross(fa.size());
    double max_mag = 0.0;
    for (std::size_t i = 0; i < fa.size(); ++i) {
      cross[i] = fb[i] * std::conj(fa[i]);
      max_mag = std::max(max_mag, std::abs(cross[i]));
    }
    if (max_mag == 0.0) continue;
    const double floor = 1e-12 * max_mag;
    const int half_w = w / 2 + 1;
    for (std::size_t i = 0; i < cross.size(); ++i) {
      auto& v = cross[i];
      const double mag = std::abs(v);
      v = mag > floor ? v / mag : std::complex<double>(0.0, 0.0);
      if (options.spectral_sigma > 0.0) {
        const double fx = static_cast<double>(i % half_w) / w;
        const int ky = static_cast<int>(i / half_w);
        const double fy = static_cast<double>(ky <= h / 2 ? ky : ky - h) / h;
        v *= std::exp(-(fx * fx + fy * fy) / (2.0 * options.spectral_sigma * options.spectral_sigma));
      }
    }
    const auto r = fft::inverse(cross, w, h);
    const double scale = 1.0 / (static_cast<double>(w) * h * a.channels());
    for (std::size_t i = 0; i < r.size(); ++i) acc[i] += r[i] * scale;
  }
  return surface;
}

PeakEstimate phase_correlate(const ImageGrid& a, const ImageGrid& b,
                             const CorrelationOptions& options) {
  const ImageGrid surface = correlation_surface(a, b, options);
  const int w = surface.width();
  const int h = surface.height();
  const auto r = surface.data();

  double energy = 0.0;
  std::size_t best = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    energy += r[i] * r[i];
    if (r[i] > r[best]) best = i;
  }
  PeakEstimate est;
  if (energy == 0.0) return est;

  const int px = static_cast<int>(best % w);
  const int py = static_cast<int>(best / w);
  double dx = px < (w + 1) / 2 ? px : px - w;
  double dy = py < (h + 1) / 2 ? py : py - h;
  if (options.subpixel) {
    const double c = surface.at(px, py);
    if (w >= 3) dx += parabolic_offset(surface.at(wrap(px - 1, w), py), c, surface.at(wrap(px + 1, w), py));
    if (h >= 3) dy += parabolic_offset(surface.at(px, wrap(py - 1, h)), c, surface.at(px, wrap(py + 1, h)));
  }
  est.mu = Vector2(dx, dy);
  est.confidence = std::clamp(r[best] / std::sqrt(energy), 0.0, 1.0);
  return est;
}

}  // namespace hwarp
