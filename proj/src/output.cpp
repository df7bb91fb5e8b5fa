#include "holosim/output.hpp"

#include "holosim/config.hpp"
#include "holosim/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <vector>

namespace holosim {

namespace {

std::ofstream open_binary(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw ConfigError("cannot write to " + path.string());
  return out;
}

std::string format9(Real v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

} // namespace

void emit_profile_csv(const ScenarioResult& result,
                      const std::filesystem::path& path) {
  std::ofstream out = open_binary(path);
  const bool parts = result.profiles.intensity_object.has_value() &&
                     result.profiles.intensity_reference.has_value() &&
                     result.profiles.interference.has_value();
  out << "x_mm,total";
  if (parts) out << ",intensity_object,intensity_reference,interference";
  out << "\n";
  const SamplingGrid& grid = result.profiles.total.grid;
  for (Index i = 0; i < grid.n_points; ++i) {
    out << format9(grid.coord(i) * 1e3) << ","
        << format9(result.profiles.total.values[i]);
    if (parts) {
      out << "," << format9(result.profiles.intensity_object->values[i]) << ","
          << format9(result.profiles.intensity_reference->values[i]) << ","
          << format9(result.profiles.interference->values[i]);
    }
    out << "\n";
  }
}

void emit_map_pgm(const CoincidenceMap& map, const std::filesystem::path& path,
                  const std::string& component) {
  const RealMatrix* selected = nullptr;
  if (component == "total") {
    selected = &map.total;
  } else if (component == "interference") {
    selected = &map.interference;
  } else {
    throw ConfigError("emit_map_pgm: component must be total or interference");
  }

  const Real lo = selected->minCoeff();
  const Real hi = selected->maxCoeff();
  const bool degenerate = !(hi > lo);

  std::ofstream out = open_binary(path);
  out << "P5\n" << selected->cols() << " " << selected->rows() << "\n65535\n";
  std::vector<unsigned char> row(static_cast<size_t>(selected->cols()) * 2);
  for (Index i = 0; i < selected->rows(); ++i) {
    for (Index j = 0; j < selected->cols(); ++j) {
      std::uint16_t pixel = 32768;
      if (!degenerate) {
        const Real t = ((*selected)(i, j) - lo) / (hi - lo);
        pixel = static_cast<std::uint16_t>(std::llround(t * 65535.0));
      }
      row[2 * j] = static_cast<unsigned char>(pixel >> 8);  // big-endian
      row[2 * j + 1] = static_cast<unsigned char>(pixel & 0xFF);
    }
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size()));
  }

  nlohmann::json sidecar;
  sidecar["component"] = component;
  sidecar["rows_coordinate"] = "x1";
  sidecar["columns_coordinate"] = "x2";
  sidecar["min_value"] = lo;
  sidecar["max_value"] = hi;
  sidecar["pixel_to_value"] = {{"offset", lo},
                               {"scale", degenerate ? 0.0 : (hi - lo) / 65535.0}};
  sidecar["degenerate_constant_map"] = degenerate;
  sidecar["map_normalization"] = map.normalization;
  std::ofstream meta = open_binary(path.string() + ".json");
  meta << sidecar.dump(2) << "\n";
}

void emit_metrics_json(const ScenarioResult& result,
                       const std::filesystem::path& path) {
  nlohmann::json j;
  j["scenario"] = result.config.name;
  j["mode"] = result.config.mode == ScenarioMode::OnePhoton ? "one_photon"
                                                            : "two_photon";
  j["object"] = result.config.mask.describe();
  j["metrics"]["visibility"] = result.metrics.visibility;
  j["metrics"]["interference_ratio"] = result.metrics.interference_ratio;
  j["metrics"]["imaged_period_m"] = result.metrics.imaged_period;
  if (result.metrics.oracle_match)
    j["metrics"]["oracle_match_rel_l2"] = *result.metrics.oracle_match;
  else
    j["metrics"]["oracle_match_rel_l2"] = nullptr;
  if (result.metrics.talbot_length > 0.0)
    j["metrics"]["talbot_length_m"] = result.metrics.talbot_length;
  j["profile_normalization"] = result.profiles.normalization;
  j["warnings"] = result.warnings;
  j["config"] = serialize_config(result.config);

  std::ofstream out = open_binary(path);
  out << j.dump(2) << "\n";
}

} // namespace holosim
