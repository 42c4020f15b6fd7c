#pragma once

#include <cstdint>

#include "hwarp/raster.hpp"

namespace hwarp {

// Deterministic 1/f^beta noise texture in [0,1], single channel. Natural
// images sit near beta = 2. Frequencies above `cutoff` cycles/pixel are
// rolled off with a Gaussian to keep bilinear resampling well behaved.
ImageGrid fractal_texture(int width, int height, std::uint64_t seed, double beta = 2.0,
                          double cutoff = 0.25);

}  // namespace hwarp
