#pragma once

// Raster container with a center-origin continuous coordinate frame.
//
// Pixel (i, j) (column i, row j) sits at continuous coordinate
// (i - (w-1)/2, j - (h-1)/2); +x points right and +y points down. Every
// subgroup of the six-factor homography family fixes this origin.

#include <cstddef>
#include <span>
#include <vector>

#include "hwarp/sl3.hpp"

namespace hwarp {

class ImageGrid {
 public:
  ImageGrid() = default;
  // Zero-filled raster. Throws InvalidArgument for non-positive sizes.
  ImageGrid(int width, int height, int channels = 1);
  ImageGrid(int width, int height, int channels, std::vector<double> data);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  bool empty() const { return data_.empty(); }
  std::size_t pixel_count() const { return static_cast<std::size_t>(width_) * height_; }

  double& at(int x, int y, int c = 0) { return data_[index(x, y, c)]; }
  double at(int x, int y, int c = 0) const { return data_[index(x, y, c)]; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  // Continuous center-origin coordinate of pixel (x, y).
  Vector2 to_centered(double x, double y) const {
    return {x - 0.5 * (width_ - 1), y - 0.5 * (height_ - 1)};
  }

  // Single channel c as a new one-channel image.
  ImageGrid channel(int c) const;

  bool operator==(const ImageGrid&) const = default;

 private:
  std::size_t index(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<double> data_;
};

// Bilinear interpolation at a center-origin point. Neighbours outside the
// raster contribute zero; points outside [-w/2, w/2] x [-h/2, h/2] return 0.
// `out` must hold image.channels() values.
void bilinear_sample(const ImageGrid& image, const Vector2& p, std::span<double> out);
std::vector<double> bilinear_sample(const ImageGrid& image, const Vector2& p);

// Inverse-mapping warp: out(p) = image(H^-1 p) with bilinear sampling and
// zero fill. Output has the input's dimensions.
ImageGrid warp_by_homography(const ImageGrid& image, const Homography& h);

// Same mapping onto an out_width x out_height raster that shares the
// source's center: a centered crop of the full-size warp, computed directly.
ImageGrid warp_by_homography(const ImageGrid& image, const Homography& h, int out_width,
                             int out_height);

// Centered crop of size w x h. The size difference must be even in each
// axis so the crop shares the source's center coordinate.
ImageGrid center_crop(const ImageGrid& image, int width, int height);

// Centered zero-padding to w x h (inverse of center_crop).
ImageGrid center_pad(const ImageGrid& image, int width, int height);

// Channel-averaged single-channel copy.
ImageGrid to_gray(const ImageGrid& image);

}  // namespace hwarp
