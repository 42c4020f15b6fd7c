#pragma once

// Thin RAII layer over FFTW's 2-D real transforms. Plans are created with
// FFTW_ESTIMATE (deterministic) under a process-wide lock; execution is
// lock-free.

#include <complex>
#include <span>
#include <vector>

namespace hwarp::fft {

// Forward real-to-complex transform of a row-major height x width array.
// Output has height x (width/2 + 1) coefficients.
std::vector<std::complex<double>> forward(std::span<const double> real, int width, int height);

// Unnormalized inverse of forward(): returns height x width reals scaled by
// width * height.
std::vector<double> inverse(std::span<const std::complex<double>> spectrum, int width, int height);

}  // namespace hwarp::fft
