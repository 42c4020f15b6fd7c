#pragma once

// Netpbm raster I/O: binary PGM (P5, gray), PPM (P6, RGB) and PAM (P7,
// arbitrary channel count), 8- or 16-bit samples. Samples are normalized to
// [0,1] on load and re-quantized (rounded, clamped) on save.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "hwarp/raster.hpp"

namespace hwarp {

ImageGrid decode_netpbm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_netpbm(const ImageGrid& image, int bit_depth = 8);

ImageGrid load_image(const std::filesystem::path& path);
void save_image(const ImageGrid& image, const std::filesystem::path& path, int bit_depth = 8);

}  // namespace hwarp
