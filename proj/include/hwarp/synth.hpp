#pragma once

// Ground-truth pair synthesis: coefficient sampling from augmentation
// ranges, template/search pair rendering, corner occlusion masks and
// on-disk dataset generation.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hwarp/raster.hpp"
#include "hwarp/sl3.hpp"

namespace hwarp {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double v) const { return lo <= v && v <= hi; }
  bool operator==(const Interval&) const = default;
};

// Closed intervals on the intermediate parameters x. gamma and k1 are
// ratios (k1 = e^{b5}).
struct ParamRanges {
  Interval t1, t2, theta, gamma{1.0, 1.0}, k1{1.0, 1.0}, k2, nu1, nu2;

  // Throws InvalidArgument for lo > hi, non-finite bounds, or non-positive
  // gamma / k1 intervals.
  void validate() const;
  bool contains(const IntermediateParams& x) const;
  bool operator==(const ParamRanges&) const = default;
};

// Named presets: "middle", "large", "pot". Throws InvalidArgument otherwise.
ParamRanges preset_ranges(const std::string& name);
ParamRanges identity_ranges();

// Uniform, independent draws of each x-component; deterministic per seed.
AlgebraCoeffs sample_coeffs(const ParamRanges& ranges, std::uint64_t seed);

struct CropSize {
  int width = 256;
  int height = 256;
};

struct AugSample {
  ImageGrid templ;
  ImageGrid search;
  AlgebraCoeffs b_true;
  Homography h_true;
  std::uint64_t seed = 0;
};

// Template: centered crop of `image`. Search: centered crop of
// warp_by_homography(image, compose_homography(b)). Throws MarginError,
// naming the required square source size, when any sample of the search
// crop would fall outside the source.
AugSample make_pair(const ImageGrid& image, const AlgebraCoeffs& b, CropSize template_crop,
                    CropSize search_crop, std::uint64_t seed = 0);
AugSample make_pair(const ImageGrid& image, const AlgebraCoeffs& b, CropSize crop,
                    std::uint64_t seed = 0);

// Zero every pixel strictly closer than `radius` to one of the four corner
// pixel centers.
ImageGrid mask_corners(const ImageGrid& image, double radius);

struct DatasetOptions {
  std::string preset = "middle";
  ParamRanges ranges = preset_ranges("middle");
  int count = 0;
  std::uint64_t seed = 0;
  double mask_radius = 0.0;
  CropSize template_crop;
  CropSize search_crop;
};

// Crop sizes a preset uses by default: 256/256, or 127/255 for "pot".
DatasetOptions default_dataset_options(const std::string& preset);

struct ManifestEntry {
  int index = 0;
  std::uint64_t seed = 0;
  std::string source;
  std::string templ;   // relative to the dataset root
  std::string search;
  std::string gt;
};

struct Manifest {
  DatasetOptions options;
  std::vector<ManifestEntry> samples;
  std::vector<std::string> warnings;
};

// Writes pairs/NNNN_t.pgm, pairs/NNNN_s.pgm, gt/NNNN.json and manifest.json
// under out_dir. Source rasters are taken from source_dir in filename
// order, cycling. Unreadable sources and margin failures skip the sample
// with a warning. Throws InvalidArgument when source_dir has no rasters.
Manifest generate_dataset(const std::filesystem::path& source_dir, const DatasetOptions& options,
                          const std::filesystem::path& out_dir);

// Raster files (.pgm, .ppm, .pam) in a directory, sorted by name.
std::vector<std::filesystem::path> list_rasters(const std::filesystem::path& dir);

}  // namespace hwarp
