#include "hwarp/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hwarp/benchmark.hpp"
#include "hwarp/cascade.hpp"
#include "hwarp/error.hpp"
#include "hwarp/image_io.hpp"
#include "hwarp/json_io.hpp"
#include "hwarp/rng.hpp"
#include "hwarp/sensitivity.hpp"
#include "hwarp/sl3.hpp"
#include "hwarp/synth.hpp"
#include "hwarp/texture.hpp"
#include "hwarp/warp_maps.hpp"

namespace hwarp {

namespace fs = std::filesystem;

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void print_matrix(const Matrix3& m, std::ostream& out) {
  for (int r = 0; r < 3; ++r) {
    out << fmt(m(r, 0)) << ' ' << fmt(m(r, 1)) << ' ' << fmt(m(r, 2)) << '\n';
  }
}

std::vector<Stage> stages_from_flag(const std::string& flag) {
  auto stages = parse_stage_list(flag);
  if (stages.empty()) throw InvalidArgument("no stages selected");
  return stages;
}

// Warp size for an image: the largest even side that fits.
WarpConfig warp_config_for(int width, int height) { return WarpConfig::for_size(std::min(width, height) & ~1); }

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path.string());
  f << text;
  if (!f) throw IoError("write failed: " + path.string());
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Homography estimation by warped-image phase correlation", "hwarp"};
  app.require_subcommand(1);

  std::vector<double> compose_b;
  auto* compose = app.add_subcommand("compose", "Print the homography for 8 algebra coefficients");
  compose->add_option("--b", compose_b, "b1..b8")->required()->expected(8);

  std::vector<double> decompose_h;
  auto* decompose = app.add_subcommand("decompose", "Print the algebra coefficients of a homography");
  decompose->set_help_flag("--help", "Print this help message and exit");  // frees --h
  decompose->add_option("--h", decompose_h, "row-major 3x3 matrix")->required()->expected(9);

  std::string warp_kind, warp_in, warp_out;
  int warp_n = 256;
  std::optional<double> warp_phi1, warp_phi2;
  auto* warp = app.add_subcommand("warp", "Resample an image into a warped domain");
  warp->add_option("--kind", warp_kind, "scale-rot|aspect|shear|persp1|persp2")->required();
  warp->add_option("--n", warp_n, "output side length");
  warp->add_option("--phi1", warp_phi1, "perspective center offset (default n/4)");
  warp->add_option("--phi2", warp_phi2, "perspective zoom (default n/4)");
  warp->add_option("--input", warp_in, "input raster")->required();
  warp->add_option("--output", warp_out, "output raster (.pam for the 4-channel aspect warp)")->required();

  std::string est_templ, est_search, est_out, est_stages = "all";
  auto* est = app.add_subcommand("estimate", "Estimate the homography between two images");
  est->add_option("--template", est_templ)->required();
  est->add_option("--search", est_search)->required();
  est->add_option("--stages", est_stages, "comma list or 'all'");
  est->add_option("--out", est_out, "write result JSON here instead of stdout");
  double est_sigma = 0.0;
  est->add_option("--spectral-sigma", est_sigma, "low-pass weight, cycles/pixel (0: off)")
      ->check(CLI::NonNegativeNumber);

  std::string gen_source, gen_preset = "middle", gen_out;
  int gen_count = 0;
  std::uint64_t gen_seed = 0;
  double gen_mask = 0.0;
  auto* gen = app.add_subcommand("gen-dataset", "Generate seeded template/search pairs");
  gen->add_option("--source", gen_source, "directory of source rasters")->required();
  gen->add_option("--preset", gen_preset)->check(CLI::IsMember({"middle", "large", "pot"}));
  gen->add_option("--count", gen_count)->required()->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", gen_seed);
  gen->add_option("--mask-radius", gen_mask)->check(CLI::NonNegativeNumber);
  gen->add_option("--out", gen_out)->required();

  std::string bench_dataset, bench_report, bench_stages = "all";
  auto* bench = app.add_subcommand("benchmark", "Evaluate the estimator over a dataset");
  bench->add_option("--dataset", bench_dataset)->required();
  bench->add_option("--stages", bench_stages, "comma list or 'all'");
  bench->add_option("--report", bench_report, "report JSON; curves go to <report>.curves.csv")->required();
  double bench_sigma = 0.0;
  bench->add_option("--spectral-sigma", bench_sigma, "low-pass weight, cycles/pixel (0: off)")
      ->check(CLI::NonNegativeNumber);

  std::string sens_kind, sens_out, sens_probe;
  std::uint64_t sens_seed = 1;
  int sens_points = 7;
  auto* sens = app.add_subcommand("sensitivity", "Warp-center offset matrix for one warp");
  sens->add_option("--kind", sens_kind)->required();
  sens->add_option("--out", sens_out, "CSV path")->required();
  sens->add_option("--probe", sens_probe, "probe raster (default: seeded texture)");
  sens->add_option("--seed", sens_seed, "texture seed when no probe is given");
  sens->add_option("--points", sens_points, "grid points per axis")->check(CLI::Range(2, 101));

  std::string src_out;
  int src_count = 4, src_size = 1024;
  std::uint64_t src_seed = 0;
  auto* gsrc = app.add_subcommand("gen-source", "Write seeded fractal-noise source images");
  gsrc->add_option("--out", src_out)->required();
  gsrc->add_option("--count", src_count)->check(CLI::PositiveNumber);
  gsrc->add_option("--size", src_size)->check(CLI::Range(16, 8192));
  gsrc->add_option("--seed", src_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return kUsageError;
  }

  try {
    if (*compose) {
      AlgebraCoeffs b;
      for (int i = 0; i < 8; ++i) b[i] = compose_b[i];
      print_matrix(compose_homography(b).matrix(), out);
    } else if (*decompose) {
      Matrix3 h;
      for (int i = 0; i < 9; ++i) h(i / 3, i % 3) = decompose_h[i];
      const AlgebraCoeffs b = decompose_homography(h);
      for (int i = 0; i < 8; ++i) out << (i ? " " : "") << fmt(b[i]);
      out << '\n';
    } else if (*warp) {
      const auto kind = parse_warp_kind(warp_kind);
      if (!kind) throw InvalidArgument("unknown warp kind: " + warp_kind);
      WarpConfig cfg = WarpConfig::for_size(warp_n);
      if (warp_phi1) cfg.phi1 = *warp_phi1;
      if (warp_phi2) cfg.phi2 = *warp_phi2;
      cfg.validate();
      const WarpedImage w = warp_image(load_image(warp_in), *kind, cfg);
      save_image(w.grid, warp_out, 16);
    } else if (*est) {
      EstimatorConfig cfg;
      cfg.stages = stages_from_flag(est_stages);
      cfg.spectral_sigma = est_sigma;
      ImageGrid templ = to_gray(load_image(est_templ));
      const ImageGrid search = to_gray(load_image(est_search));
      if (templ.width() != search.width() || templ.height() != search.height()) {
        templ = center_pad(templ, search.width(), search.height());
      }
      cfg.warp_config = warp_config_for(search.width(), search.height());
      const std::string text = to_json(estimate(templ, search, cfg)).dump(2) + "\n";
      if (est_out.empty()) {
        out << text;
      } else {
        write_text(est_out, text);
      }
    } else if (*gen) {
      DatasetOptions opts = default_dataset_options(gen_preset);
      opts.count = gen_count;
      opts.seed = gen_seed;
      opts.mask_radius = gen_mask;
      const Manifest m = generate_dataset(gen_source, opts, gen_out);
      for (const auto& w : m.warnings) err << "warning: " << w << '\n';
      out << m.samples.size() << " pairs written to " << gen_out << '\n';
    } else if (*bench) {
      BenchmarkOptions opts;
      opts.estimator.stages = stages_from_flag(bench_stages);
      opts.estimator.spectral_sigma = bench_sigma;
      const Manifest m = manifest_from_json(read_json_file(fs::path(bench_dataset) / "manifest.json"));
      if (m.samples.empty()) throw DomainError("dataset has no samples");
      opts.estimator.warp_config = warp_config_for(m.options.search_crop.width, m.options.search_crop.height);
      const BenchmarkReport report = run_benchmark(fs::path(bench_dataset), opts);
      write_text(bench_report, to_json(report).dump(2) + "\n");
      std::ostringstream csv;
      write_curves_csv(report, csv);
      write_text(bench_report + ".curves.csv", csv.str());
      out << "samples " << report.mace.sample_count << "  MACE " << fmt(report.mace.value)
          << "  median " << fmt(report.median_error) << "  infinite " << report.mace.infinite_count
          << '\n';
    } else if (*sens) {
      const auto kind = parse_warp_kind(sens_kind);
      if (!kind) throw InvalidArgument("unknown warp kind: " + sens_kind);
      SensitivityConfig setup = default_sensitivity_config(*kind);
      setup.primary_values = default_coeff_grid(setup.primary, sens_points);
      setup.nuisance_values = default_coeff_grid(setup.nuisance, sens_points);
      const ImageGrid probe =
          sens_probe.empty() ? fractal_texture(1024, 1024, sens_seed) : to_gray(load_image(sens_probe));
      std::ostringstream csv;
      write_sensitivity_csv(warp_sensitivity(setup, probe), csv);
      write_text(sens_out, csv.str());
    } else if (*gsrc) {
      fs::create_directories(src_out);
      for (int i = 0; i < src_count; ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "src_%03d.pgm", i);
        save_image(fractal_texture(src_size, src_size, derive_seed(src_seed, i)),
                   fs::path(src_out) / name, 16);
      }
    }
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return 0;
}

}  // namespace hwarp
