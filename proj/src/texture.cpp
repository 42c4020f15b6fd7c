#include "hwarp/texture.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "hwarp/fft.hpp"
#include "hwarp/rng.hpp"

namespace hwarp {

ImageGrid fractal_texture(int width, int height, std::uint64_t seed, double beta, double cutoff) {
  ImageGrid out(width, height, 1);
  std::mt19937_64 rng(splitmix64(seed));
  const int cols = width / 2 + 1;
  std::vector<std::complex<double>> spectrum(static_cast<std::size_t>(height) * cols);
  for (int ky = 0; ky < height; ++ky) {
    const double fy = (ky <= height / 2 ? ky : ky - height) / static_cast<double>(height);
    for (int kx = 0; kx < cols; ++kx) {
      const double fx = kx / static_cast<double>(width);
      const double f = std::hypot(fx, fy);
      const double phase = 2.0 * std::numbers::pi * unit_uniform(rng);
      const double gauss = std::sqrt(-2.0 * std::log(1.0 - unit_uniform(rng)));
      if (f == 0.0) continue;
      // Low-frequency floor keeps the image from being one giant blob.
      const double f_eff = std::max(f, 2.0 / std::max(width, height));
      const double amp = gauss * std::pow(f_eff, -0.5 * beta) * std::exp(-0.5 * (f / cutoff) * (f / cutoff));
      spectrum[static_cast<std::size_t>(ky) * cols + kx] = std::polar(amp, phase);
    }
  }
  std::vector<double> field = fft::inverse(spectrum, width, height);

  // Robust normalization to [0,1]: map the 0.5 / 99.5 percentiles.
  std::vector<double> sorted = field;
  const std::size_t lo_i = sorted.size() / 200;
  const std::size_t hi_i = sorted.size() - 1 - lo_i;
  std::nth_element(sorted.begin(), sorted.begin() + lo_i, sorted.end());
  const double lo = sorted[lo_i];
  std::nth_element(sorted.begin(), sorted.begin() + hi_i, sorted.end());
  const double hi = sorted[hi_i];
  const double span = hi > lo ? hi - lo : 1.0;
  auto dst = out.data();
  for (std::size_t i = 0; i < field.size(); ++i) dst[i] = std::clamp((field[i] - lo) / span, 0.0, 1.0);
  return out;
}

}  // namespace hwarp
