#include "hwarp/raster.hpp"

#include <cmath>
#include <string>

#include "hwarp/error.hpp"

namespace hwarp {

ImageGrid::ImageGrid(int width, int height, int channels)
    : width_(width), height_(height), channels_(channels) {
  if (width < 1 || height < 1 || channels < 1) {
    throw InvalidArgument("ImageGrid: dimensions must be positive");
  }
  data_.assign(pixel_count() * channels_, 0.0);
}

ImageGrid::ImageGrid(int width, int height, int channels, std::vector<double> data)
    : ImageGrid(width, height, channels) {
  if (data.size() != data_.size()) {
    throw InvalidArgument("ImageGrid: data length " + std::to_string(data.size()) +
                          " does not match " + std::to_string(data_.size()));
  }
  data_ = std::move(data);
}

ImageGrid ImageGrid::channel(int c) const {
  if (c < 0 || c >= channels_) throw InvalidArgument("ImageGrid::channel: index out of range");
  ImageGrid out(width_, height_, 1);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) out.at(x, y) = at(x, y, c);
  }
  return out;
}

void bilinear_sample(const ImageGrid& image, const Vector2& p, std::span<double> out) {
  const int w = image.width();
  const int h = image.height();
  const int nc = image.channels();
  for (int c = 0; c < nc; ++c) out[c] = 0.0;
  if (!(std::abs(p.x()) <= 0.5 * w && std::abs(p.y()) <= 0.5 * h)) return;

  const double x = p.x() + 0.5 * (w - 1);
  const double y = p.y() + 0.5 * (h - 1);
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const double fx = x - x0;
  const double fy = y - y0;
  const double weights[4] = {(1 - fx) * (1 - fy), fx * (1 - fy), (1 - fx) * fy, fx * fy};
  const int xs[4] = {x0, x0 + 1, x0, x0 + 1};
  const int ys[4] = {y0, y0, y0 + 1, y0 + 1};

  const auto pixels = image.data();
  for (int k = 0; k < 4; ++k) {
    if (weights[k] == 0.0) continue;
    if (xs[k] < 0 || xs[k] >= w || ys[k] < 0 || ys[k] >= h) continue;
    const std::size_t base = (static_cast<std::size_t>(ys[k]) * w + xs[k]) * nc;
    for (int c = 0; c < nc; ++c) out[c] += weights[k] * pixels[base + c];
  }
}

std::vector<double> bilinear_sample(const ImageGrid& image, const Vector2& p) {
  std::vector<double> out(image.channels());
  bilinear_sample(image, p, out);
  return out;
}

ImageGrid warp_by_homography(const ImageGrid& image, const Homography& h) {
  return warp_by_homography(image, h, image.width(), image.height());
}

ImageGrid warp_by_homography(const ImageGrid& image, const Homography& h, int out_width,
                             int out_height) {
  if (image.empty()) throw InvalidArgument("warp_by_homography: empty image");
  const Matrix3 inv = h.inverse().matrix();
  ImageGrid out(out_width, out_height, image.channels());
  auto dst = out.data();
  const int nc = image.channels();
  for (int y = 0; y < out_height; ++y) {
    for (int x = 0; x < out_width; ++x) {
      const Vector2 p = out.to_centered(x, y);
      const double qx = inv(0, 0) * p.x() + inv(0, 1) * p.y() + inv(0, 2);
      const double qy = inv(1, 0) * p.x() + inv(1, 1) * p.y() + inv(1, 2);
      const double qw = inv(2, 0) * p.x() + inv(2, 1) * p.y() + inv(2, 2);
      if (qw == 0.0) continue;
      const std::size_t base = (static_cast<std::size_t>(y) * out_width + x) * nc;
      bilinear_sample(image, Vector2(qx / qw, qy / qw), dst.subspan(base, nc));
    }
  }
  return out;
}

ImageGrid center_crop(const ImageGrid& image, int width, int height) {
  if (width > image.width() || height > image.height()) {
    throw InvalidArgument("center_crop: crop larger than image");
  }
  if ((image.width() - width) % 2 != 0 || (image.height() - height) % 2 != 0) {
    throw InvalidArgument("center_crop: size difference must be even");
  }
  const int ox = (image.width() - width) / 2;
  const int oy = (image.height() - height) / 2;
  ImageGrid out(width, height, image.channels());
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < image.channels(); ++c) out.at(x, y, c) = image.at(x + ox, y + oy, c);
    }
  }
  return out;
}

ImageGrid center_pad(const ImageGrid& image, int width, int height) {
  if (width < image.width() || height < image.height()) {
    throw InvalidArgument("center_pad: target smaller than image");
  }
  if ((width - image.width()) % 2 != 0 || (height - image.height()) % 2 != 0) {
    throw InvalidArgument("center_pad: size difference must be even");
  }
  const int ox = (width - image.width()) / 2;
  const int oy = (height - image.height()) / 2;
  ImageGrid out(width, height, image.channels());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      for (int c = 0; c < image.channels(); ++c) out.at(x + ox, y + oy, c) = image.at(x, y, c);
    }
  }
  return out;
}

ImageGrid to_gray(const ImageGrid& image) {
  if (image.channels() == 1) return image;
  ImageGrid out(image.width(), image.height(), 1);
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      double sum = 0.0;
      for (int c = 0; c < image.channels(); ++c) sum += image.at(x, y, c);
      out.at(x, y) = sum / image.channels();
    }
  }
  return out;
}

}  // namespace hwarp
