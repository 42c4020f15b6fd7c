#include "hwarp/benchmark.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>

#include "hwarp/error.hpp"
#include "hwarp/image_io.hpp"
#include "hwarp/parallel.hpp"

namespace hwarp {

namespace fs = std::filesystem;

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_from(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

}  // namespace

void recompute_aggregates(BenchmarkReport& report) {
  std::vector<double> errors;
  std::vector<double> discrepancies;
  for (const auto& s : report.samples) {
    errors.push_back(s.alignment_error);
    discrepancies.push_back(s.discrepancy);
  }
  report.mace = mace(errors);
  report.median_error = median(errors);
  report.curves = precision_and_success(errors, discrepancies, report.precision_grid, report.success_grid);
}

BenchmarkReport run_benchmark(std::vector<BenchmarkInput> inputs, const BenchmarkOptions& options) {
  options.estimator.validate();
  if (inputs.empty()) throw InvalidArgument("benchmark: no samples");
  std::sort(inputs.begin(), inputs.end(), [](const auto& a, const auto& b) { return a.index < b.index; });

  BenchmarkReport report;
  report.template_size = {inputs.front().templ.width(), inputs.front().templ.height()};
  report.precision_grid = options.precision_grid;
  report.success_grid = options.success_grid;
  report.samples.resize(inputs.size());
  const Corners corners = template_corners(report.template_size.width, report.template_size.height);

  parallel_for(
      inputs.size(),
      [&](std::size_t i) {
        const BenchmarkInput& in = inputs[i];
        const auto start = std::chrono::steady_clock::now();
        ImageGrid templ = in.templ;
        if (templ.width() != in.search.width() || templ.height() != in.search.height()) {
          templ = center_pad(templ, in.search.width(), in.search.height());
        }
        const EstimationResult est = estimate(templ, in.search, options.estimator);
        const auto stop = std::chrono::steady_clock::now();

        SampleRecord r;
        r.index = in.index;
        r.seed = in.seed;
        r.b_true = in.b_true;
        r.b_hat = est.b_hat;
        r.h_true = compose_homography(in.b_true);
        r.h_hat = est.h_hat;
        r.alignment_error = alignment_error(r.h_hat, r.h_true, corners);
        r.discrepancy = discrepancy_score(r.h_hat, r.h_true, report.template_size.width,
                                          report.template_size.height);
        r.confidence = est.confidence;
        for (const auto& st : est.stages) {
          r.stage_errors.push_back(alignment_error(compose_homography(st.b_after), r.h_true, corners));
        }
        r.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
        report.samples[i] = std::move(r);
      },
      options.threads);

  double total_ms = 0.0;
  for (const auto& s : report.samples) total_ms += s.runtime_ms;
  report.mean_runtime_ms = total_ms / static_cast<double>(report.samples.size());
  recompute_aggregates(report);
  return report;
}

BenchmarkReport run_benchmark(const fs::path& dataset_dir, const BenchmarkOptions& options) {
  const Manifest manifest = manifest_from_json(read_json_file(dataset_dir / "manifest.json"));
  std::vector<BenchmarkInput> inputs;
  for (const auto& e : manifest.samples) {
    BenchmarkInput in;
    in.index = e.index;
    in.seed = e.seed;
    in.templ = to_gray(load_image(dataset_dir / e.templ));
    in.search = to_gray(load_image(dataset_dir / e.search));
    in.b_true = coeffs_from_json(read_json_file(dataset_dir / e.gt).at("b"));
    inputs.push_back(std::move(in));
  }
  return run_benchmark(std::move(inputs), options);
}

json to_json(const BenchmarkReport& report) {
  json samples = json::array();
  for (const auto& s : report.samples) {
    json stage_errors = json::array();
    for (double e : s.stage_errors) stage_errors.push_back(number_or_null(e));
    samples.push_back({{"index", s.index},
                       {"seed", s.seed},
                       {"b_true", to_json_array(s.b_true)},
                       {"b_hat", to_json_array(s.b_hat)},
                       {"h_true", to_json_array(s.h_true.matrix())},
                       {"h_hat", to_json_array(s.h_hat.matrix())},
                       {"alignment_error", number_or_null(s.alignment_error)},
                       {"discrepancy", number_or_null(s.discrepancy)},
                       {"confidence", s.confidence},
                       {"stage_errors", stage_errors}});
  }
  auto curve_json = [](const Curve& c) {
    return json{{"thresholds", c.thresholds}, {"fractions", c.fractions}, {"average", c.average}};
  };
  return {{"tool_version", kToolVersion},
          {"discrepancy_definition",
           "corner alignment error on the centered unit square in template-normalized coordinates "
           "(surrogate for a homography discrepancy score)"},
          {"template_size", json::array({report.template_size.width, report.template_size.height})},
          {"metrics",
           {{"mace", number_or_null(report.mace.value)},
            {"infinite_errors", report.mace.infinite_count},
            {"sample_count", report.mace.sample_count},
            {"median_error", number_or_null(report.median_error)},
            {"precision", curve_json(report.curves.precision)},
            {"success", curve_json(report.curves.success)}}},
          {"samples", samples},
          {"runtime", {{"mean_ms_per_sample", report.mean_runtime_ms}}}};
}

BenchmarkReport report_from_json(const json& j) {
  BenchmarkReport r;
  r.template_size = {j.at("template_size").at(0).get<int>(), j.at("template_size").at(1).get<int>()};
  const json& metrics = j.at("metrics");
  r.precision_grid = metrics.at("precision").at("thresholds").get<std::vector<double>>();
  r.success_grid = metrics.at("success").at("thresholds").get<std::vector<double>>();
  for (const auto& s : j.at("samples")) {
    SampleRecord rec;
    rec.index = s.at("index").get<int>();
    rec.seed = s.at("seed").get<std::uint64_t>();
    rec.b_true = coeffs_from_json(s.at("b_true"));
    rec.b_hat = coeffs_from_json(s.at("b_hat"));
    rec.h_true = Homography(matrix_from_json(s.at("h_true")));
    rec.h_hat = Homography(matrix_from_json(s.at("h_hat")));
    rec.alignment_error = number_from(s.at("alignment_error"));
    rec.discrepancy = number_from(s.at("discrepancy"));
    rec.confidence = s.at("confidence").get<double>();
    for (const auto& e : s.at("stage_errors")) rec.stage_errors.push_back(number_from(e));
    r.samples.push_back(std::move(rec));
  }
  if (j.contains("runtime")) r.mean_runtime_ms = j.at("runtime").value("mean_ms_per_sample", 0.0);
  recompute_aggregates(r);
  return r;
}

void write_curves_csv(const BenchmarkReport& report, std::ostream& out) {
  out << "curve,threshold,fraction\n" << std::setprecision(10);
  const auto& p = report.curves.precision;
  for (std::size_t i = 0; i < p.thresholds.size(); ++i) {
    out << "precision," << p.thresholds[i] << ',' << p.fractions[i] << '\n';
  }
  const auto& s = report.curves.success;
  for (std::size_t i = 0; i < s.thresholds.size(); ++i) {
    out << "success," << s.thresholds[i] << ',' << s.fractions[i] << '\n';
  }
}

}  // namespace hwarp
