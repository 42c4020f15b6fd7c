#pragma once

// Warp sensitivity diagnostic: how far the warped-image correlation peak
// moves when a warp's own parameter (primary) and some other coefficient
// (nuisance) are applied together.

#include <ostream>
#include <vector>

#include "hwarp/phase_correlation.hpp"
#include "hwarp/raster.hpp"
#include "hwarp/warp_maps.hpp"

namespace hwarp {

struct SensitivityConfig {
  WarpKind kind = WarpKind::ScaleRotation;
  Coeff primary = kB3;
  std::vector<double> primary_values;
  Coeff nuisance = kB5;
  std::vector<double> nuisance_values;
  WarpConfig warp_config = WarpConfig::for_size(256);
  int crop = 256;  // side of the probe crop
  CorrelationOptions correlation;

  // Primary must belong to the warp; nuisance must differ from it.
  void validate() const;
};

// Defaults for a warp: its first coefficient against a representative
// nuisance, each on a 7-point grid inside the large augmentation ranges.
SensitivityConfig default_sensitivity_config(WarpKind kind);

// Symmetric grid of `points` values in [-extent, extent] for a coefficient,
// where extent comes from the large augmentation preset.
std::vector<double> default_coeff_grid(Coeff c, int points = 7);

struct SensitivityCell {
  double primary = 0.0;
  double nuisance = 0.0;
  Vector2 offset{0.0, 0.0};    // measured correlation peak
  Vector2 analytic{0.0, 0.0};  // pseudo-translation of the primary alone
  double confidence = 0.0;
};

struct SensitivityMatrix {
  SensitivityConfig setup;
  // Row-major: one row per nuisance value, one column per primary value.
  std::vector<SensitivityCell> cells;

  const SensitivityCell& at(std::size_t nuisance_i, std::size_t primary_i) const {
    return cells[nuisance_i * setup.primary_values.size() + primary_i];
  }
};

// `probe_source` must be large enough for make_pair at every grid point.
// The reference is the warp of the untransformed probe crop.
SensitivityMatrix warp_sensitivity(const SensitivityConfig& setup, const ImageGrid& probe_source);

void write_sensitivity_csv(const SensitivityMatrix& m, std::ostream& out);

}  // namespace hwarp
