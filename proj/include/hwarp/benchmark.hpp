#pragma once

// Benchmark harness over generated datasets (or in-memory pairs).

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <vector>

#include "hwarp/cascade.hpp"
#include "hwarp/json_io.hpp"
#include "hwarp/metrics.hpp"
#include "hwarp/synth.hpp"

namespace hwarp {

struct BenchmarkOptions {
  EstimatorConfig estimator;
  std::vector<double> precision_grid = default_precision_grid();
  std::vector<double> success_grid = default_success_grid();
  unsigned threads = 0;  // 0: hardware concurrency
};

struct SampleRecord {
  int index = 0;
  std::uint64_t seed = 0;
  AlgebraCoeffs b_true;
  AlgebraCoeffs b_hat;
  Homography h_true;
  Homography h_hat;
  double alignment_error = 0.0;  // px over the template corners
  double discrepancy = 0.0;      // unit-square surrogate
  double confidence = 0.0;
  std::vector<double> stage_errors;  // alignment error after each stage
  double runtime_ms = 0.0;
};

struct BenchmarkReport {
  std::vector<SampleRecord> samples;  // sorted by index
  MaceResult mace;
  double median_error = 0.0;
  PrecisionSuccess curves;
  double mean_runtime_ms = 0.0;
  CropSize template_size;
  std::vector<double> precision_grid;
  std::vector<double> success_grid;
};

// A template may be smaller than its search image; it is zero-padded about
// the shared center before estimation.
struct BenchmarkInput {
  int index = 0;
  std::uint64_t seed = 0;
  ImageGrid templ;
  ImageGrid search;
  AlgebraCoeffs b_true;
};

BenchmarkReport run_benchmark(std::vector<BenchmarkInput> inputs, const BenchmarkOptions& options);
BenchmarkReport run_benchmark(const std::filesystem::path& dataset_dir, const BenchmarkOptions& options);

// Aggregates (MACE, median, curves) from per-sample records alone.
void recompute_aggregates(BenchmarkReport& report);

json to_json(const BenchmarkReport& report);
// Per-sample records and grids back from a report; aggregates recomputed.
BenchmarkReport report_from_json(const json& j);
void write_curves_csv(const BenchmarkReport& report, std::ostream& out);

}  // namespace hwarp
