// Acceptance run: one PASS/FAIL line per criterion. Exits non-zero if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hwarp/benchmark.hpp"
#include "hwarp/cascade.hpp"
#include "hwarp/cli.hpp"
#include "hwarp/image_io.hpp"
#include "hwarp/json_io.hpp"
#include "hwarp/metrics.hpp"
#include "hwarp/parallel.hpp"
#include "hwarp/phase_correlation.hpp"
#include "hwarp/rng.hpp"
#include "hwarp/sensitivity.hpp"
#include "hwarp/synth.hpp"
#include "hwarp/texture.hpp"
#include "hwarp/warp_maps.hpp"
#include "oracles.hpp"

using namespace hwarp;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

const std::vector<ImageGrid>& sources() {
  static const std::vector<ImageGrid> s = [] {
    std::vector<ImageGrid> v;
    for (std::uint64_t i = 0; i < 4; ++i) v.push_back(fractal_texture(832, 832, 1000 + i));
    return v;
  }();
  return s;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// Coefficients for one warp's subgroup, drawn inside the middle or large ranges.
AlgebraCoeffs subgroup_draw(WarpKind kind, std::mt19937_64& rng, bool large) {
  const ParamRanges r = preset_ranges(large ? "large" : "middle");
  AlgebraCoeffs b;
  switch (kind) {
    case WarpKind::ScaleRotation:
      b[kB3] = uniform(rng, r.theta.lo, r.theta.hi);
      b[kB4] = std::log(uniform(rng, r.gamma.lo, r.gamma.hi));
      break;
    case WarpKind::AspectRatio:
      b[kB5] = std::log(uniform(rng, r.k1.lo, r.k1.hi));
      break;
    case WarpKind::Shear:
      b[kB6] = uniform(rng, r.k2.lo, r.k2.hi);
      break;
    case WarpKind::Perspective1:
      b[kB7] = uniform(rng, r.nu1.lo, r.nu1.hi);
      break;
    case WarpKind::Perspective2:
      b[kB8] = uniform(rng, r.nu2.lo, r.nu2.hi);
      break;
  }
  return b;
}

Outcome factor_equivalence() {
  const ParamRanges r = preset_ranges("middle");
  const auto& a = generators();
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const AlgebraCoeffs b = sample_coeffs(r, derive_seed(1, s));
    const double d[6] = {
        projective_distance(translation_factor(b[0], b[1]), expm(b[0] * a[0] + b[1] * a[1])),
        projective_distance(similarity_factor(b[2], b[3]), expm(b[2] * a[2] + b[3] * a[3])),
        projective_distance(aspect_factor(b[4]), expm(b[4] * a[4])),
        projective_distance(shear_factor(b[5]), expm(b[5] * a[5])),
        projective_distance(perspective1_factor(b[6]), expm(b[6] * a[6])),
        projective_distance(perspective2_factor(b[7]), expm(b[7] * a[7]))};
    for (double v : d) worst = std::max(worst, v);
  }
  return {worst < 1e-10, fmt("max projective distance %.2e over 1000 b (limit 1e-10)", worst)};
}

Outcome round_trip() {
  const ParamRanges r = preset_ranges("middle");
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const AlgebraCoeffs b = sample_coeffs(r, derive_seed(2, s));
    const AlgebraCoeffs back = decompose_homography(compose_homography(b));
    for (int i = 0; i < 8; ++i) worst = std::max(worst, std::abs(back[i] - b[i]));
  }
  return {worst < 1e-9, fmt("max |b - decompose(compose(b))| %.2e over 1000 b (limit 1e-9)", worst)};
}

Outcome equivariance() {
  const WarpConfig cfg = WarpConfig::for_size(256);
  const CropSize crop{256, 256};
  std::string detail;
  bool pass = true;
  for (WarpKind kind : kAllWarpKinds) {
    std::vector<int> hits(50, 0);
    parallel_for(50, [&](std::size_t t) {
      std::mt19937_64 rng(derive_seed(3, t + 100 * static_cast<int>(kind)));
      const AlgebraCoeffs b = subgroup_draw(kind, rng, true);
      const ImageGrid& src = sources()[t % 4];
      const ImageGrid ref = warp_image(make_pair(src, {}, crop).templ, kind, cfg).grid;
      const ImageGrid moved = warp_image(make_pair(src, b, crop).search, kind, cfg).grid;
      const PeakEstimate p = phase_correlate(ref, moved);
      hits[t] = (p.mu - peak_from_coeffs(kind, cfg, b)).norm() <= 1.0;
    });
    const int ok = std::count(hits.begin(), hits.end(), 1);
    pass = pass && ok >= 48;  // 95% of 50 rounds up to 48
    detail += std::string(to_string(kind)) + " " + std::to_string(ok) + "/50  ";
  }
  return {pass, detail + "(need >= 95% within 1 px)"};
}

Outcome per_stage() {
  struct Case {
    Stage stage;
    Coeff coeff;
    double tol;
  };
  const Case cases[] = {{Stage::ScaleRotation, kB3, 0.03}, {Stage::ScaleRotation, kB4, 0.03},
                        {Stage::AspectRatio, kB5, 0.03},   {Stage::Shear, kB6, 0.02},
                        {Stage::Perspective1, kB7, 2e-4},  {Stage::Perspective2, kB8, 2e-4}};
  const EstimatorConfig cfg;
  std::string detail;
  bool pass = true;
  for (const Case& c : cases) {
    std::vector<int> hits(50, 0);
    parallel_for(50, [&](std::size_t t) {
      std::mt19937_64 rng(derive_seed(4, t + 1000 * c.coeff));
      const AlgebraCoeffs b = subgroup_draw(stage_warp(c.stage), rng, false);
      const AugSample p = make_pair(sources()[t % 4], b, CropSize{256, 256});
      AlgebraCoeffs est;
      estimate_stage(p.templ, p.search, c.stage, cfg).update.apply_to(est);
      hits[t] = std::abs(est[c.coeff] - b[c.coeff]) <= c.tol;
    });
    const int ok = std::count(hits.begin(), hits.end(), 1);
    pass = pass && ok >= 45;
    detail += "b" + std::to_string(c.coeff + 1) + " " + std::to_string(ok) + "/50  ";
  }
  return {pass, detail + "(need >= 90%)"};
}

Outcome full_cascade() {
  const ParamRanges r = preset_ranges("middle");
  const Corners corners = template_corners(256, 256);
  std::vector<double> plain(200), masked(200);
  parallel_for(200, [&](std::size_t i) {
    const std::uint64_t seed = derive_seed(5, i);
    const AlgebraCoeffs b = sample_coeffs(r, seed);
    const AugSample p = make_pair(sources()[i % 4], b, CropSize{256, 256}, seed);
    plain[i] = alignment_error(estimate(p.templ, p.search).h_hat, p.h_true, corners);
    const EstimationResult m = estimate(mask_corners(p.templ, 60.0), mask_corners(p.search, 60.0));
    masked[i] = alignment_error(m.h_hat, p.h_true, corners);
  });
  const double mp = median(plain);
  const double mm = median(masked);
  return {mp <= 5.0 && mm - mp <= 2.0,
          fmt("median corner error %.2f px (limit 5), masked r=60 %.2f px, degradation %.2f px (limit 2)", mp,
              mm, mm - mp)};
}

Outcome metric_oracles() {
  std::mt19937_64 rng(6);
  auto draw = [&rng] {
    AlgebraCoeffs b;
    b[kB1] = uniform(rng, -30, 30);
    b[kB2] = uniform(rng, -30, 30);
    b[kB3] = uniform(rng, -0.6, 0.6);
    b[kB4] = uniform(rng, -0.3, 0.3);
    b[kB5] = uniform(rng, -0.2, 0.2);
    b[kB6] = uniform(rng, -0.15, 0.15);
    b[kB7] = uniform(rng, -1e-3, 1e-3);
    b[kB8] = uniform(rng, -1e-3, 1e-3);
    return compose_homography(b);
  };
  const Corners corners = template_corners(256, 256);
  const std::vector<std::array<double, 2>> plain{{-128, -128}, {128, -128}, {128, 128}, {-128, 128}};
  std::vector<std::pair<Homography, Homography>> pairs;
  double worst = 0.0;
  double sum = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Homography p = draw();
    const Homography t = draw();
    const double want = oracle::corner_error(p.matrix(), t.matrix(), plain);
    worst = std::max(worst, std::abs(alignment_error(p, t, corners) - want));
    sum += want;
    pairs.emplace_back(p, t);
  }
  const double mace_gap = std::abs(mace(pairs, corners).value - sum / 100);

  // Ten-sample curves against direct counting.
  bool curves_exact = true;
  for (int set = 0; set < 5; ++set) {
    std::vector<double> e(10), d(10);
    for (int i = 0; i < 10; ++i) {
      e[i] = std::floor(uniform(rng, 0, 40) * 4) / 4;  // exact ties with the grid occur
      d[i] = std::floor(uniform(rng, 0, 0.5) * 100) / 100;
    }
    const auto pg = default_precision_grid();
    const auto sg = default_success_grid();
    const PrecisionSuccess ps = precision_and_success(e, d, pg, sg);
    for (std::size_t k = 0; k < pg.size(); ++k) {
      int n = 0;
      for (double v : e) n += v < pg[k];
      curves_exact = curves_exact && ps.precision.fractions[k] == n / 10.0;
    }
    for (std::size_t k = 0; k < sg.size(); ++k) {
      int n = 0;
      for (double v : d) n += v < sg[k];
      curves_exact = curves_exact && ps.success.fractions[k] == n / 10.0;
    }
  }
  return {worst < 1e-9 && mace_gap < 1e-9 && curves_exact,
          fmt("alignment error gap %.2e, MACE gap %.2e (limit 1e-9), curves exact: ", worst, mace_gap) +
              (curves_exact ? "yes" : "no")};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "hwarp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "hwarp_acceptance_determinism";
  fs::remove_all(root);
  fs::create_directories(root / "src");
  for (int i = 0; i < 2; ++i) {
    save_image(sources()[i], root / "src" / ("s" + std::to_string(i) + ".pgm"), 16);
  }
  for (const char* run : {"a", "b"}) {
    const fs::path out = root / run;
    if (cli({"gen-dataset", "--source", (root / "src").string(), "--preset", "middle", "--count", "12",
             "--seed", "2024", "--mask-radius", "0", "--out", out.string()}) != 0 ||
        cli({"benchmark", "--dataset", out.string(), "--report", (out / "report.json").string()}) != 0) {
      fs::remove_all(root);
      return {false, "CLI run failed"};
    }
  }
  int files = 0;
  bool same = slurp(root / "a" / "manifest.json") == slurp(root / "b" / "manifest.json");
  for (const auto& e : fs::directory_iterator(root / "a" / "gt")) {
    same = same && slurp(e.path()) == slurp(root / "b" / "gt" / e.path().filename());
    ++files;
  }
  json ra = read_json_file(root / "a" / "report.json");
  json rb = read_json_file(root / "b" / "report.json");
  ra.erase("runtime");
  rb.erase("runtime");
  const bool reports = ra == rb;
  fs::remove_all(root);
  return {same && reports && files == 12,
          "sidecars byte-identical: " + std::string(same ? "yes" : "no") + " (" + std::to_string(files) +
              " files), reports identical: " + (reports ? "yes" : "no")};
}

Outcome sensitivity() {
  const ImageGrid& probe = sources()[0];
  double worst = 0.0;
  int points = 0;
  for (WarpKind kind : kAllWarpKinds) {
    SensitivityConfig setup = default_sensitivity_config(kind);
    setup.nuisance_values = {0.0};
    const SensitivityMatrix m = warp_sensitivity(setup, probe);
    for (const auto& c : m.cells) {
      worst = std::max(worst, (c.offset - c.analytic).norm());
      ++points;
    }
  }
  return {worst <= 1.0, fmt("max offset error %.3f px over %.0f grid points (limit 1 px)", worst, points)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0: no runtime limit
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "factor/exponential equivalence", 5, factor_equivalence},
      {2, "compose/decompose round trip", 5, round_trip},
      {3, "warp equivariance", 60, equivariance},
      {4, "per-stage recovery", 60, per_stage},
      {5, "full-cascade benchmark", 180, full_cascade},
      {6, "metric oracles", 0, metric_oracles},
      {7, "determinism", 0, determinism},
      {8, "sensitivity diagnostic", 0, sensitivity},
  };
  sources();  // texture synthesis is shared setup, not part of any criterion
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit_s == 0 || secs < c.limit_s;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::string timing = fmt("%.1f s", secs);
    if (c.limit_s > 0) timing += fmt(" (limit %.0f s)", c.limit_s);
    std::printf("criterion %d: %s  %s: %s; %s\n", c.id, pass ? "PASS" : "FAIL", c.name, o.detail.c_str(),
                timing.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
