#include "holosim/config.hpp"

#include "holosim/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace holosim {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

using Section = std::map<std::string, std::string>;
using Document = std::map<std::string, Section>;

Document parse_sections(const std::string& text, std::string* name_out) {
  Document doc;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      doc[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) {
      if (key == "name" && name_out) {
        *name_out = value;
        continue;
      }
      throw ConfigError("config: key '" + key + "' before any section");
    }
    doc[section][key] = value;
  }
  return doc;
}

Real parse_number(const std::string& value, const std::string& key) {
  char* end = nullptr;
  const Real v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || trim(end).size() != 0)
    throw ConfigError("key '" + key + "': cannot parse number from '" + value +
                      "'");
  return v;
}

long long parse_integer(const std::string& value, const std::string& key) {
  char* end = nullptr;
  const long long v = std::strtoll(value.c_str(), &end, 10);
  if (end == value.c_str() || trim(end).size() != 0)
    throw ConfigError("key '" + key + "': cannot parse integer from '" +
                      value + "'");
  return v;
}

} // namespace

Real parse_length(const std::string& value, const std::string& key) {
  char* end = nullptr;
  const Real v = std::strtod(value.c_str(), &end);
  if (end == value.c_str())
    throw ConfigError("key '" + key + "': cannot parse length from '" + value +
                      "'");
  const std::string unit = trim(end);
  if (unit.empty())
    throw ConfigError("key '" + key + "': length '" + value +
                      "' lacks a unit suffix (nm, um, mm, cm, m)");
  if (unit == "nm") return v * 1e-9;
  if (unit == "um" || unit == "\xC2\xB5m") return v * 1e-6;  // um / µm
  if (unit == "mm") return v * 1e-3;
  if (unit == "cm") return v * 1e-2;
  if (unit == "m") return v;
  throw ConfigError("key '" + key + "': unknown length unit '" + unit + "'");
}

namespace {

class SectionReader {
public:
  SectionReader(const Document& doc, const std::string& name)
      : name_(name) {
    const auto it = doc.find(name);
    if (it == doc.end())
      throw ConfigError("config: missing section [" + name + "]");
    section_ = &it->second;
  }

  bool has(const std::string& key) const { return section_->count(key) > 0; }

  std::string text(const std::string& key) {
    const auto it = section_->find(key);
    if (it == section_->end())
      throw ConfigError("config [" + name_ + "]: missing key '" + key + "'");
    seen_.insert(key);
    return it->second;
  }

  std::string text_or(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    return text(key);
  }

  Real length(const std::string& key) {
    return parse_length(text(key), name_ + "." + key);
  }
  Real length_or(const std::string& key, Real fallback) {
    if (!has(key)) return fallback;
    return length(key);
  }
  Real number(const std::string& key) {
    return parse_number(text(key), name_ + "." + key);
  }
  Real number_or(const std::string& key, Real fallback) {
    if (!has(key)) return fallback;
    return number(key);
  }
  long long integer(const std::string& key) {
    return parse_integer(text(key), name_ + "." + key);
  }

  void reject_unknown() const {
    for (const auto& [key, value] : *section_) {
      if (!seen_.count(key))
        throw ConfigError("config [" + name_ + "]: unknown key '" + key + "'");
    }
  }

private:
  const Section* section_;
  std::string name_;
  std::set<std::string> seen_;
};

void validate_config(const ScenarioConfig& c) {
  if (c.mode == ScenarioMode::TwoPhoton &&
      c.regime.kind == DetectionRegime::Kind::Point) {
    if (std::abs(c.regime.point_position) > c.grid.window / 2.0) {
      std::ostringstream msg;
      msg << "detection.position " << c.regime.point_position
          << " m lies outside the grid window (+-" << c.grid.window / 2.0
          << " m)";
      throw ConfigError(msg.str());
    }
  }
  if (!(c.geometry.eta > 0.0) || c.geometry.eta > 1.0)
    throw ConfigError("geometry.eta must lie in (0, 1]");
}

} // namespace

ScenarioConfig parse_config(const std::string& text) {
  std::string name;
  const Document doc = parse_sections(text, &name);
  for (const auto& [section, keys] : doc) {
    static const std::set<std::string> known = {
        "grid", "geometry", "source", "object", "detection", "variant",
        "noise"};
    if (!known.count(section))
      throw ConfigError("config: unknown section [" + section + "]");
  }

  ScenarioConfig c;
  c.name = name.empty() ? "custom" : name;

  SectionReader grid(doc, "grid");
  c.grid = make_grid(static_cast<Index>(grid.integer("n_points")),
                     grid.length("window"), grid.length("wavelength"));
  grid.reject_unknown();

  SectionReader geom(doc, "geometry");
  const std::string mode = geom.text("mode");
  if (mode == "one_photon") {
    c.mode = ScenarioMode::OnePhoton;
    c.geometry = classical_geometry(geom.length("z_o1"), geom.length("z_o2"),
                                    geom.length("z_r"));
  } else if (mode == "two_photon") {
    c.mode = ScenarioMode::TwoPhoton;
    c.geometry = quantum_geometry(geom.length("z_so1"), geom.length("z_so2"),
                                  geom.length("z_sr"), geom.length("z_i"));
  } else {
    throw ConfigError("geometry.mode must be one_photon or two_photon, got '" +
                      mode + "'");
  }
  c.geometry.theta = normalize_angle(geom.number_or("theta", 0.0));
  c.geometry.eta = geom.number_or("eta", kDefaultAmplitudeRatio);
  geom.reject_unknown();

  SectionReader source(doc, "source");
  const std::string source_kind = source.text("kind");
  if (source_kind == "plane_coherent") {
    c.source = SourceModel::plane_coherent(source.number_or("amplitude", 1.0));
  } else if (source_kind == "pinhole") {
    c.source = SourceModel::pinhole(source.length_or("position", 0.0),
                                    source.length("width"),
                                    source.number_or("amplitude", 1.0));
  } else if (source_kind == "incoherent_thermal") {
    c.source = SourceModel::incoherent_thermal(
        source.number_or("intensity", 1.0),
        source.length_or("emitting_width", 0.0));
  } else if (source_kind == "entangled_pair") {
    c.source = SourceModel::entangled_pair(source.number_or("strength", 1.0));
  } else {
    throw ConfigError("source.kind '" + source_kind + "' is not one of "
                      "plane_coherent, pinhole, incoherent_thermal, "
                      "entangled_pair");
  }
  source.reject_unknown();

  SectionReader object(doc, "object");
  const std::string object_kind = object.text("kind");
  if (object_kind == "grating") {
    c.mask = ObjectMask::grating(object.length("period"),
                                 object.length("slit_width"),
                                 object.length_or("offset", 0.0));
  } else if (object_kind == "single_slit") {
    c.mask = ObjectMask::single_slit(object.length("width"),
                                     object.length_or("center", 0.0));
  } else if (object_kind == "unity") {
    c.mask = ObjectMask::unity();
  } else {
    throw ConfigError("object.kind '" + object_kind +
                      "' is not one of grating, single_slit, unity");
  }
  object.reject_unknown();

  SectionReader detection(doc, "detection");
  const std::string regime = detection.text_or("regime", "point");
  if (regime == "point") {
    c.regime = DetectionRegime::point(detection.length_or("position", 0.0));
  } else if (regime == "coherent") {
    c.regime = DetectionRegime::coherent();
  } else if (regime == "bucket") {
    c.regime = DetectionRegime::bucket();
  } else {
    throw ConfigError("detection.regime '" + regime +
                      "' is not one of point, coherent, bucket");
  }
  detection.reject_unknown();

  SectionReader variant(doc, "variant");
  const std::string variant_kind = variant.text("kind");
  if (variant_kind == "blocked_reference") {
    c.variant = ScenarioVariant::BlockedReference;
  } else if (variant_kind == "open_in_phase") {
    c.variant = ScenarioVariant::OpenInPhase;
  } else if (variant_kind == "open_out_of_phase") {
    c.variant = ScenarioVariant::OpenOutOfPhase;
  } else if (variant_kind == "no_pinhole") {
    c.variant = ScenarioVariant::NoPinhole;
  } else if (variant_kind == "bucket_swap") {
    c.variant = ScenarioVariant::BucketSwap;
  } else {
    throw ConfigError("variant.kind '" + variant_kind + "' is unknown");
  }
  variant.reject_unknown();

  if (doc.count("noise")) {
    SectionReader noise(doc, "noise");
    NoiseSpec spec;
    spec.total_counts = noise.integer("total_counts");
    spec.seed = static_cast<unsigned long long>(noise.integer("seed"));
    if (spec.total_counts <= 0)
      throw ConfigError("noise.total_counts must be positive");
    c.noise = spec;
    noise.reject_unknown();
  }

  validate_config(c);
  return c;
}

ScenarioConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

namespace {

std::string format_double(Real v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_length(Real v) { return format_double(v) + "m"; }

} // namespace

std::string serialize_config(const ScenarioConfig& c) {
  std::ostringstream out;
  out << "name = " << c.name << "\n\n";

  out << "[grid]\n";
  out << "n_points = " << c.grid.n_points << "\n";
  out << "window = " << format_length(c.grid.window) << "\n";
  out << "wavelength = " << format_length(c.grid.wavelength) << "\n\n";

  out << "[geometry]\n";
  if (c.mode == ScenarioMode::OnePhoton) {
    out << "mode = one_photon\n";
    out << "z_o1 = " << format_length(c.geometry.z_o1) << "\n";
    out << "z_o2 = " << format_length(c.geometry.z_o2) << "\n";
    out << "z_r = " << format_length(c.geometry.z_r) << "\n";
  } else {
    out << "mode = two_photon\n";
    out << "z_so1 = " << format_length(c.geometry.z_so1) << "\n";
    out << "z_so2 = " << format_length(c.geometry.z_so2) << "\n";
    out << "z_sr = " << format_length(c.geometry.z_sr) << "\n";
    out << "z_i = " << format_length(c.geometry.z_i) << "\n";
  }
  out << "theta = " << format_double(c.geometry.theta) << "\n";
  out << "eta = " << format_double(c.geometry.eta) << "\n\n";

  out << "[source]\n";
  switch (c.source.kind) {
    case SourceModel::Kind::PlaneCoherent:
      out << "kind = plane_coherent\n";
      out << "amplitude = " << format_double(c.source.amplitude.real()) << "\n";
      break;
    case SourceModel::Kind::Pinhole:
      out << "kind = pinhole\n";
      out << "position = " << format_length(c.source.position) << "\n";
      out << "width = " << format_length(c.source.width) << "\n";
      out << "amplitude = " << format_double(c.source.amplitude.real()) << "\n";
      break;
    case SourceModel::Kind::IncoherentThermal:
      out << "kind = incoherent_thermal\n";
      out << "intensity = " << format_double(c.source.intensity) << "\n";
      out << "emitting_width = " << format_length(c.source.emitting_width)
          << "\n";
      break;
    case SourceModel::Kind::EntangledPair:
      out << "kind = entangled_pair\n";
      out << "strength = " << format_double(c.source.strength) << "\n";
      break;
  }
  out << "\n[object]\n";
  switch (c.mask.kind()) {
    case ObjectMask::Kind::Grating:
      out << "kind = grating\n";
      out << "period = " << format_length(c.mask.period()) << "\n";
      out << "slit_width = " << format_length(c.mask.slit_width()) << "\n";
      out << "offset = " << format_length(c.mask.offset()) << "\n";
      break;
    case ObjectMask::Kind::SingleSlit:
      out << "kind = single_slit\n";
      out << "width = " << format_length(c.mask.slit_width()) << "\n";
      out << "center = " << format_length(c.mask.offset()) << "\n";
      break;
    case ObjectMask::Kind::Unity:
      out << "kind = unity\n";
      break;
    case ObjectMask::Kind::PhaseMask:
      throw ConfigError("serialize_config: tabulated phase masks have no "
                        "text form");
  }

  out << "\n[detection]\n";
  switch (c.regime.kind) {
    case DetectionRegime::Kind::Point:
      out << "regime = point\n";
      out << "position = " << format_length(c.regime.point_position) << "\n";
      break;
    case DetectionRegime::Kind::Coherent:
      out << "regime = coherent\n";
      break;
    case DetectionRegime::Kind::Bucket:
      out << "regime = bucket\n";
      break;
  }

  out << "\n[variant]\n";
  const char* variant = nullptr;
  switch (c.variant) {
    case ScenarioVariant::BlockedReference: variant = "blocked_reference"; break;
    case ScenarioVariant::OpenInPhase: variant = "open_in_phase"; break;
    case ScenarioVariant::OpenOutOfPhase: variant = "open_out_of_phase"; break;
    case ScenarioVariant::NoPinhole: variant = "no_pinhole"; break;
    case ScenarioVariant::BucketSwap: variant = "bucket_swap"; break;
  }
  out << "kind = " << variant << "\n";

  if (c.noise) {
    out << "\n[noise]\n";
    out << "total_counts = " << c.noise->total_counts << "\n";
    out << "seed = " << c.noise->seed << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Flat overrides.

std::vector<std::string> valid_override_keys() {
  return {
      "grid.n_points",     "grid.window",          "grid.wavelength",
      "geometry.z_o1",     "geometry.z_o2",        "geometry.z_r",
      "geometry.z_so1",    "geometry.z_so2",       "geometry.z_sr",
      "geometry.z_i",      "theta",                "eta",
      "regime.kind",       "regime.position",      "source.kind",
      "source.amplitude",  "source.position",      "source.width",
      "source.intensity",  "source.emitting_width", "source.strength",
      "object.period",     "object.slit_width",    "object.offset",
      "object.width",      "object.center",        "variant",
      "noise.total_counts", "noise.seed",
  };
}

void apply_override(ScenarioConfig& c, const std::string& key,
                    const std::string& value) {
  auto length = [&] { return parse_length(value, key); };
  auto number = [&] { return parse_number(value, key); };
  auto integer = [&] { return parse_integer(value, key); };

  if (key == "grid.n_points") {
    c.grid = make_grid(static_cast<Index>(integer()), c.grid.window,
                       c.grid.wavelength);
  } else if (key == "grid.window") {
    c.grid = make_grid(c.grid.n_points, length(), c.grid.wavelength);
  } else if (key == "grid.wavelength") {
    c.grid = make_grid(c.grid.n_points, c.grid.window, length());
  } else if (key == "geometry.z_o1") {
    c.geometry.z_o1 = length();
  } else if (key == "geometry.z_o2") {
    c.geometry.z_o2 = length();
  } else if (key == "geometry.z_r") {
    c.geometry.z_r = length();
  } else if (key == "geometry.z_so1") {
    c.geometry.z_so1 = length();
  } else if (key == "geometry.z_so2") {
    c.geometry.z_so2 = length();
  } else if (key == "geometry.z_sr") {
    c.geometry.z_sr = length();
  } else if (key == "geometry.z_i") {
    c.geometry.z_i = length();
  } else if (key == "theta") {
    c.geometry.theta = normalize_angle(number());
  } else if (key == "eta") {
    c.geometry.eta = number();
  } else if (key == "regime.kind") {
    if (value == "point")
      c.regime = DetectionRegime::point(c.regime.point_position);
    else if (value == "coherent")
      c.regime = DetectionRegime::coherent();
    else if (value == "bucket")
      c.regime = DetectionRegime::bucket();
    else
      throw ConfigError("regime.kind must be point, coherent or bucket");
  } else if (key == "regime.position") {
    c.regime.point_position = length();
  } else if (key == "source.kind") {
    if (value == "plane_coherent")
      c.source = SourceModel::plane_coherent();
    else if (value == "pinhole")
      c.source = SourceModel::pinhole(0.0, 100e-6);
    else if (value == "incoherent_thermal")
      c.source = SourceModel::incoherent_thermal();
    else if (value == "entangled_pair")
      c.source = SourceModel::entangled_pair();
    else
      throw ConfigError("source.kind '" + value + "' is unknown");
  } else if (key == "source.amplitude") {
    c.source.amplitude = number();
  } else if (key == "source.position") {
    c.source.position = length();
  } else if (key == "source.width") {
    c.source.width = length();
  } else if (key == "source.intensity") {
    c.source.intensity = number();
  } else if (key == "source.emitting_width") {
    c.source.emitting_width = length();
  } else if (key == "source.strength") {
    c.source.strength = number();
  } else if (key == "object.period") {
    c.mask = ObjectMask::grating(length(), c.mask.slit_width(),
                                 c.mask.offset());
  } else if (key == "object.slit_width") {
    c.mask = ObjectMask::grating(c.mask.period(), length(), c.mask.offset());
  } else if (key == "object.offset") {
    c.mask = ObjectMask::grating(c.mask.period(), c.mask.slit_width(),
                                 length());
  } else if (key == "object.width") {
    c.mask = ObjectMask::single_slit(length(), c.mask.offset());
  } else if (key == "object.center") {
    c.mask = ObjectMask::single_slit(c.mask.slit_width(), length());
  } else if (key == "variant") {
    if (value == "blocked_reference")
      c.variant = ScenarioVariant::BlockedReference;
    else if (value == "open_in_phase")
      c.variant = ScenarioVariant::OpenInPhase;
    else if (value == "open_out_of_phase")
      c.variant = ScenarioVariant::OpenOutOfPhase;
    else if (value == "no_pinhole")
      c.variant = ScenarioVariant::NoPinhole;
    else if (value == "bucket_swap")
      c.variant = ScenarioVariant::BucketSwap;
    else
      throw ConfigError("variant '" + value + "' is unknown");
  } else if (key == "noise.total_counts") {
    NoiseSpec spec = c.noise.value_or(NoiseSpec{});
    spec.total_counts = integer();
    c.noise = spec;
  } else if (key == "noise.seed") {
    NoiseSpec spec = c.noise.value_or(NoiseSpec{});
    spec.seed = static_cast<unsigned long long>(integer());
    c.noise = spec;
  } else {
    std::ostringstream msg;
    msg << "unknown override key '" << key << "'; valid keys:";
    for (const auto& k : valid_override_keys()) msg << " " << k;
    throw ConfigError(msg.str());
  }
  validate_config(c);
}

} // namespace holosim
