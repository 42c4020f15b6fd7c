#include "hwarp/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>

#include "hwarp/error.hpp"
#include "hwarp/parallel.hpp"
#include "hwarp/synth.hpp"

namespace hwarp {

namespace {

constexpr const char* kCoeffNames[8] = {"b1", "b2", "b3", "b4", "b5", "b6", "b7", "b8"};

double coeff_extent(Coeff c) {
  const ParamRanges r = preset_ranges("large");
  switch (c) {
    case kB1: return r.t1.hi;
    case kB2: return r.t2.hi;
    case kB3: return r.theta.hi;
    case kB4: return std::log(r.gamma.hi);
    case kB5: return std::log(r.k1.hi);
    case kB6: return r.k2.hi;
    case kB7: return r.nu1.hi;
    case kB8: return r.nu2.hi;
  }
  return 0.0;
}

}  // namespace

void SensitivityConfig::validate() const {
  warp_config.validate();
  const auto own = warp_coeffs(kind);
  if (std::find(own.begin(), own.end(), primary) == own.end()) {
    throw InvalidArgument("sensitivity: primary coefficient does not belong to the warp");
  }
  if (nuisance == primary) throw InvalidArgument("sensitivity: nuisance must differ from primary");
  if (primary_values.empty() || nuisance_values.empty()) {
    throw InvalidArgument("sensitivity: grids must be non-empty");
  }
  if (crop < 8) throw InvalidArgument("sensitivity: crop too small");
}

std::vector<double> default_coeff_grid(Coeff c, int points) {
  const double extent = coeff_extent(c);
  std::vector<double> g;
  if (points == 1) return {0.0};
  for (int i = 0; i < points; ++i) g.push_back(-extent + 2.0 * extent * i / (points - 1));
  // Pin the center exactly so the identity row/column is exact.
  if (points % 2 == 1) g[points / 2] = 0.0;
  return g;
}

SensitivityConfig default_sensitivity_config(WarpKind kind) {
  SensitivityConfig s;
  s.kind = kind;
  switch (kind) {
    case WarpKind::ScaleRotation: s.primary = kB3; s.nuisance = kB5; break;
    case WarpKind::AspectRatio: s.primary = kB5; s.nuisance = kB3; break;
    case WarpKind::Shear: s.primary = kB6; s.nuisance = kB3; break;
    case WarpKind::Perspective1: s.primary = kB7; s.nuisance = kB8; break;
    case WarpKind::Perspective2: s.primary = kB8; s.nuisance = kB7; break;
  }
  s.primary_values = default_coeff_grid(s.primary);
  s.nuisance_values = default_coeff_grid(s.nuisance);
  s.correlation.window_y = kind != WarpKind::ScaleRotation;
  return s;
}

SensitivityMatrix warp_sensitivity(const SensitivityConfig& setup, const ImageGrid& probe_source) {
  setup.validate();
  const CropSize crop{setup.crop, setup.crop};
  const ImageGrid reference_crop = make_pair(probe_source, AlgebraCoeffs{}, crop).templ;
  const ImageGrid reference = warp_image(reference_crop, setup.kind, setup.warp_config).grid;

  SensitivityMatrix m;
  m.setup = setup;
  const std::size_t cols = setup.primary_values.size();
  m.cells.resize(setup.nuisance_values.size() * cols);
  parallel_for(m.cells.size(), [&](std::size_t i) {
    SensitivityCell cell;
    cell.nuisance = setup.nuisance_values[i / cols];
    cell.primary = setup.primary_values[i % cols];
    AlgebraCoeffs primary_only;
    primary_only[setup.primary] = cell.primary;
    AlgebraCoeffs both = primary_only;
    both[setup.nuisance] = cell.nuisance;

    const AugSample pair = make_pair(probe_source, both, crop);
    const ImageGrid moved = warp_image(pair.search, setup.kind, setup.warp_config).grid;
    const PeakEstimate peak = phase_correlate(reference, moved, setup.correlation);
    cell.offset = peak.mu;
    cell.confidence = peak.confidence;
    cell.analytic = peak_from_coeffs(setup.kind, setup.warp_config, primary_only);
    m.cells[i] = cell;
  });
  return m;
}

void write_sensitivity_csv(const SensitivityMatrix& m, std::ostream& out) {
  const auto& s = m.setup;
  out << "# warp=" << to_string(s.kind) << " primary=" << kCoeffNames[s.primary]
      << " nuisance=" << kCoeffNames[s.nuisance] << " n=" << s.warp_config.n << "\n";
  out << "primary,nuisance,offset_x,offset_y,analytic_x,analytic_y,confidence\n";
  out << std::setprecision(10);
  for (const auto& c : m.cells) {
    out << c.primary << ',' << c.nuisance << ',' << c.offset.x() << ',' << c.offset.y() << ','
        << c.analytic.x() << ',' << c.analytic.y() << ',' << c.confidence << '\n';
  }
}

}  // namespace hwarp
