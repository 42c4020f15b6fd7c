#include "hwarp/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <random>

#include "hwarp/error.hpp"
#include "hwarp/image_io.hpp"
#include "hwarp/json_io.hpp"
#include "hwarp/parallel.hpp"
#include "hwarp/rng.hpp"

namespace hwarp {

namespace fs = std::filesystem;

namespace {

void check_interval(const Interval& iv, const char* name, bool positive) {
  if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.lo > iv.hi) {
    throw InvalidArgument(std::string("ParamRanges: invalid interval for ") + name);
  }
  if (positive && !(iv.lo > 0.0)) {
    throw InvalidArgument(std::string("ParamRanges: ") + name + " interval must be positive");
  }
}

Interval sym(double a) { return {-a, a}; }

std::string zero_pad(int index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d", index);
  return buf;
}

}  // namespace

void ParamRanges::validate() const {
  check_interval(t1, "t1", false);
  check_interval(t2, "t2", false);
  check_interval(theta, "theta", false);
  check_interval(gamma, "gamma", true);
  check_interval(k1, "k1", true);
  check_interval(k2, "k2", false);
  check_interval(nu1, "nu1", false);
  check_interval(nu2, "nu2", false);
}

bool ParamRanges::contains(const IntermediateParams& x) const {
  return t1.contains(x.t1) && t2.contains(x.t2) && theta.contains(x.theta) &&
         gamma.contains(x.gamma) && k1.contains(x.k1) && k2.contains(x.k2) &&
         nu1.contains(x.nu1) && nu2.contains(x.nu2);
}

ParamRanges preset_ranges(const std::string& name) {
  ParamRanges r;
  if (name == "middle") {
    r.t1 = r.t2 = sym(16.0);
    r.theta = sym(0.6);
    r.gamma = {0.7, 1.3};
    r.k1 = {std::exp(-0.2), std::exp(0.2)};
    r.k2 = sym(0.15);
    r.nu1 = r.nu2 = sym(1e-4);
  } else if (name == "large") {
    r.t1 = r.t2 = sym(32.0);
    r.theta = sym(0.8);
    r.gamma = {0.7, 1.3};
    r.k1 = {std::exp(-0.3), std::exp(0.3)};
    r.k2 = sym(0.2);
    r.nu1 = r.nu2 = sym(1e-3);
  } else if (name == "pot") {
    r.t1 = r.t2 = sym(32.0);
    r.theta = sym(0.7);
    r.gamma = {1.0 / 1.38, 1.38};
    r.k1 = {std::exp(-0.1), std::exp(0.1)};
    r.k2 = sym(0.015);
    r.nu1 = r.nu2 = sym(0.0015);
  } else {
    throw InvalidArgument("unknown preset '" + name + "' (expected middle, large or pot)");
  }
  return r;
}

ParamRanges identity_ranges() { return ParamRanges{}; }

AlgebraCoeffs sample_coeffs(const ParamRanges& ranges, std::uint64_t seed) {
  ranges.validate();
  std::mt19937_64 rng(splitmix64(seed));
  auto draw = [&rng](const Interval& iv) { return uniform(rng, iv.lo, iv.hi); };
  IntermediateParams x;
  x.t1 = draw(ranges.t1);
  x.t2 = draw(ranges.t2);
  x.theta = draw(ranges.theta);
  x.gamma = draw(ranges.gamma);
  x.k1 = draw(ranges.k1);
  x.k2 = draw(ranges.k2);
  x.nu1 = draw(ranges.nu1);
  x.nu2 = draw(ranges.nu2);
  return coeffs_from_params(x);
}

AugSample make_pair(const ImageGrid& image, const AlgebraCoeffs& b, CropSize template_crop,
                    CropSize search_crop, std::uint64_t seed) {
  if (image.empty()) throw InvalidArgument("make_pair: empty source image");
  const Homography h = compose_homography(b);
  const Homography h_inv = h.inverse();

  // Every sampled source point needs its full bilinear footprint inside.
  const double half_w = 0.5 * (image.width() - 1);
  const double half_h = 0.5 * (image.height() - 1);
  double reach = 0.0;
  bool at_infinity = false;
  const double sx = 0.5 * (search_crop.width - 1);
  const double sy = 0.5 * (search_crop.height - 1);
  for (const Vector2& corner : {Vector2(-sx, -sy), Vector2(sx, -sy), Vector2(-sx, sy), Vector2(sx, sy)}) {
    const Eigen::Vector3d q = h_inv.matrix() * Eigen::Vector3d(corner.x(), corner.y(), 1.0);
    if (!(q.z() > 0.0)) {
      at_infinity = true;
      continue;
    }
    reach = std::max({reach, std::abs(q.x() / q.z()), std::abs(q.y() / q.z())});
  }
  reach = std::max({reach, 0.5 * (template_crop.width - 1), 0.5 * (template_crop.height - 1)});
  const int required = static_cast<int>(std::ceil(2.0 * reach)) + 2;
  if (at_infinity || reach > half_w || reach > half_h) {
    throw MarginError("make_pair: source " + std::to_string(image.width()) + "x" +
                          std::to_string(image.height()) + " too small; need at least " +
                          (at_infinity ? std::string("a finite preimage") : std::to_string(required) + "x" + std::to_string(required)),
                      at_infinity ? -1 : required);
  }

  AugSample s;
  s.templ = warp_by_homography(image, Homography::identity(), template_crop.width, template_crop.height);
  s.search = warp_by_homography(image, h, search_crop.width, search_crop.height);
  s.b_true = b;
  s.h_true = h;
  s.seed = seed;
  return s;
}

AugSample make_pair(const ImageGrid& image, const AlgebraCoeffs& b, CropSize crop, std::uint64_t seed) {
  return make_pair(image, b, crop, crop, seed);
}

ImageGrid mask_corners(const ImageGrid& image, double radius) {
  if (radius < 0.0) throw InvalidArgument("mask_corners: radius must be non-negative");
  ImageGrid out = image;
  if (radius == 0.0) return out;
  const double r2 = radius * radius;
  const double cx[2] = {0.0, static_cast<double>(image.width() - 1)};
  const double cy[2] = {0.0, static_cast<double>(image.height() - 1)};
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      bool hit = false;
      for (double ax : cx) {
        for (double ay : cy) {
          const double dx = x - ax;
          const double dy = y - ay;
          if (dx * dx + dy * dy < r2) hit = true;
        }
      }
      if (hit) {
        for (int c = 0; c < image.channels(); ++c) out.at(x, y, c) = 0.0;
      }
    }
  }
  return out;
}

DatasetOptions default_dataset_options(const std::string& preset) {
  DatasetOptions o;
  o.preset = preset;
  o.ranges = preset_ranges(preset);
  if (preset == "pot") {
    o.template_crop = {127, 127};
    o.search_crop = {255, 255};
  }
  return o;
}

std::vector<fs::path> list_rasters(const fs::path& dir) {
  std::vector<fs::path> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension().string();
    if (ext == ".pgm" || ext == ".ppm" || ext == ".pam") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Manifest generate_dataset(const fs::path& source_dir, const DatasetOptions& options,
                          const fs::path& out_dir) {
  options.ranges.validate();
  if (options.count < 0) throw InvalidArgument("generate_dataset: count must be non-negative");
  if (options.mask_radius < 0.0) throw InvalidArgument("generate_dataset: mask radius must be non-negative");
  const auto sources = list_rasters(source_dir);
  if (sources.empty() && options.count > 0) {
    throw InvalidArgument("generate_dataset: no rasters in " + source_dir.string());
  }

  fs::create_directories(out_dir / "pairs");
  fs::create_directories(out_dir / "gt");

  const std::size_t count = static_cast<std::size_t>(options.count);
  std::vector<std::optional<ManifestEntry>> entries(count);
  std::vector<std::string> warnings(count);

  parallel_for(count, [&](std::size_t i) {
    const int index = static_cast<int>(i);
    const fs::path& src = sources[i % sources.size()];
    ManifestEntry e;
    e.index = index;
    e.seed = derive_seed(options.seed, i);
    e.source = src.filename().string();
    e.templ = "pairs/" + zero_pad(index) + "_t.pgm";
    e.search = "pairs/" + zero_pad(index) + "_s.pgm";
    e.gt = "gt/" + zero_pad(index) + ".json";
    try {
      const ImageGrid image = to_gray(load_image(src));
      const AlgebraCoeffs b = sample_coeffs(options.ranges, e.seed);
      AugSample s = make_pair(image, b, options.template_crop, options.search_crop, e.seed);
      if (options.mask_radius > 0.0) {
        s.templ = mask_corners(s.templ, options.mask_radius);
        s.search = mask_corners(s.search, options.mask_radius);
      }
      save_image(s.templ, out_dir / e.templ, 16);
      save_image(s.search, out_dir / e.search, 16);
      write_json_file(sidecar_json(e, s.b_true, s.h_true), out_dir / e.gt);
      entries[i] = e;
    } catch (const std::exception& ex) {
      warnings[i] = "sample " + std::to_string(index) + " (" + e.source + ") skipped: " + ex.what();
    }
  });

  Manifest m;
  m.options = options;
  for (std::size_t i = 0; i < count; ++i) {
    if (entries[i]) m.samples.push_back(*entries[i]);
    if (!warnings[i].empty()) m.warnings.push_back(warnings[i]);
  }
  write_json_file(to_json(m), out_dir / "manifest.json");
  return m;
}

}  // namespace hwarp
