#include "hwarp/json_io.hpp"

#include <fstream>

#include "hwarp/error.hpp"

namespace hwarp {

namespace {

json interval_json(const Interval& iv) { return json::array({iv.lo, iv.hi}); }

Interval interval_from(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_array() || v.size() != 2) {
    throw ParseError(std::string("ranges: '") + key + "' must be a [lo, hi] pair", 0);
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

json crop_json(const CropSize& c) { return json::array({c.width, c.height}); }

CropSize crop_from(const json& j) { return {j.at(0).get<int>(), j.at(1).get<int>()}; }

}  // namespace

json to_json_array(const AlgebraCoeffs& b) {
  json out = json::array();
  for (double v : b.b) out.push_back(v);
  return out;
}

json to_json_array(const Matrix3& m) {
  json out = json::array();
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) out.push_back(m(r, c));
  }
  return out;
}

AlgebraCoeffs coeffs_from_json(const json& j) {
  if (!j.is_array() || j.size() != 8) throw ParseError("expected an array of 8 coefficients", 0);
  AlgebraCoeffs b;
  for (std::size_t i = 0; i < 8; ++i) b[i] = j[i].get<double>();
  return b;
}

Matrix3 matrix_from_json(const json& j) {
  if (!j.is_array() || j.size() != 9) throw ParseError("expected an array of 9 matrix entries", 0);
  Matrix3 m;
  for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = j[i].get<double>();
  return m;
}

json to_json(const EstimationResult& r) {
  json stages = json::array();
  for (const auto& s : r.stages) {
    stages.push_back({{"kind", std::string(to_string(s.stage))},
                      {"mu", json::array({s.mu.x(), s.mu.y()})},
                      {"confidence", s.confidence}});
  }
  return {{"b", to_json_array(r.b_hat)},
          {"h", to_json_array(r.h_hat.matrix())},
          {"stages", stages},
          {"confidence", r.confidence}};
}

json to_json(const ParamRanges& r) {
  return {{"t1", interval_json(r.t1)},       {"t2", interval_json(r.t2)},
          {"theta", interval_json(r.theta)}, {"gamma", interval_json(r.gamma)},
          {"k1", interval_json(r.k1)},       {"k2", interval_json(r.k2)},
          {"nu1", interval_json(r.nu1)},     {"nu2", interval_json(r.nu2)}};
}

ParamRanges ranges_from_json(const json& j) {
  ParamRanges r;
  r.t1 = interval_from(j, "t1");
  r.t2 = interval_from(j, "t2");
  r.theta = interval_from(j, "theta");
  r.gamma = interval_from(j, "gamma");
  r.k1 = interval_from(j, "k1");
  r.k2 = interval_from(j, "k2");
  r.nu1 = interval_from(j, "nu1");
  r.nu2 = interval_from(j, "nu2");
  return r;
}

json to_json(const Manifest& m) {
  json samples = json::array();
  for (const auto& e : m.samples) {
    samples.push_back({{"index", e.index},
                       {"seed", e.seed},
                       {"source", e.source},
                       {"template", e.templ},
                       {"search", e.search},
                       {"gt", e.gt}});
  }
  return {{"tool_version", kToolVersion},
          {"preset", m.options.preset},
          {"ranges", to_json(m.options.ranges)},
          {"distribution", "independent uniform per intermediate parameter"},
          {"seed", m.options.seed},
          {"count", m.options.count},
          {"mask_radius", m.options.mask_radius},
          {"template_size", crop_json(m.options.template_crop)},
          {"search_size", crop_json(m.options.search_crop)},
          {"samples", samples},
          {"warnings", m.warnings}};
}

Manifest manifest_from_json(const json& j) {
  Manifest m;
  m.options.preset = j.at("preset").get<std::string>();
  m.options.ranges = ranges_from_json(j.at("ranges"));
  m.options.seed = j.at("seed").get<std::uint64_t>();
  m.options.count = j.at("count").get<int>();
  m.options.mask_radius = j.at("mask_radius").get<double>();
  m.options.template_crop = crop_from(j.at("template_size"));
  m.options.search_crop = crop_from(j.at("search_size"));
  for (const auto& s : j.at("samples")) {
    ManifestEntry e;
    e.index = s.at("index").get<int>();
    e.seed = s.at("seed").get<std::uint64_t>();
    e.source = s.at("source").get<std::string>();
    e.templ = s.at("template").get<std::string>();
    e.search = s.at("search").get<std::string>();
    e.gt = s.at("gt").get<std::string>();
    m.samples.push_back(std::move(e));
  }
  for (const auto& w : j.value("warnings", json::array())) m.warnings.push_back(w.get<std::string>());
  return m;
}

json sidecar_json(const ManifestEntry& entry, const AlgebraCoeffs& b, const Homography& h) {
  const IntermediateParams x = params_from_coeffs(b);
  return {{"index", entry.index},
          {"seed", entry.seed},
          {"source", entry.source},
          {"b", to_json_array(b)},
          {"h", to_json_array(h.matrix())},
          {"x", json::array({x.t1, x.t2, x.theta, x.gamma, x.k1, x.k2, x.nu1, x.nu2})}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what(), e.byte);
  }
}

void write_json_file(const json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace hwarp
