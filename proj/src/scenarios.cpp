#include "holosim/scenarios.hpp"

#include "holosim/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace holosim {

namespace {

constexpr Real kPi = std::numbers::pi;
// 120 fs pump pulses: longitudinal coherence length ~36 um. Unequal-path
// scenarios are flagged, not modeled.
constexpr Real kCoherenceLength = 36e-6;

ScenarioConfig base_one_photon(const std::string& name) {
  ScenarioConfig c;
  c.name = name;
  c.mode = ScenarioMode::OnePhoton;
  c.grid = default_grid();
  c.mask = ObjectMask::grating(400e-6, 200e-6);
  c.geometry = classical_geometry(0.40, 0.40, 0.80);
  c.source = SourceModel::pinhole(0.0, 100e-6);
  return c;
}

ScenarioConfig base_two_photon(const std::string& name) {
  ScenarioConfig c;
  c.name = name;
  c.mode = ScenarioMode::TwoPhoton;
  c.grid = default_grid();
  c.mask = ObjectMask::grating(400e-6, 200e-6);
  c.geometry = quantum_geometry(0.40, 0.15, 0.55, 0.25);
  c.source = SourceModel::entangled_pair();
  c.regime = DetectionRegime::point(0.0);
  return c;
}

} // namespace

std::vector<ScenarioConfig> builtin_scenarios() {
  std::vector<ScenarioConfig> list;

  auto fig3 = [](const std::string& name, ScenarioVariant v, Real theta) {
    ScenarioConfig c = base_one_photon(name);
    c.variant = v;
    c.geometry.theta = theta;
    return c;
  };
  list.push_back(fig3("fig3a", ScenarioVariant::BlockedReference, 0.0));
  list.push_back(fig3("fig3b", ScenarioVariant::OpenInPhase, 0.0));
  list.push_back(fig3("fig3c", ScenarioVariant::OpenOutOfPhase, kPi));
  list.push_back(fig3("fig3d", ScenarioVariant::NoPinhole, 0.0));
  list.push_back(fig3("fig3e", ScenarioVariant::NoPinhole, kPi));

  auto fig4 = [](const std::string& name, ScenarioVariant v, Real theta) {
    ScenarioConfig c = base_two_photon(name);
    c.variant = v;
    c.geometry.theta = theta;
    return c;
  };
  list.push_back(fig4("fig4a", ScenarioVariant::BlockedReference, 0.0));
  list.push_back(fig4("fig4b", ScenarioVariant::OpenInPhase, 0.0));
  list.push_back(fig4("fig4c", ScenarioVariant::OpenOutOfPhase, kPi));
  list.push_back(fig4("fig4d", ScenarioVariant::BucketSwap, 0.0));
  list.push_back(fig4("fig4e", ScenarioVariant::BucketSwap, kPi));

  // Coherent detection demo: short signal reference leg keeps the
  // lens-aperture projection close to the ideal momentum filter.
  ScenarioConfig coh = base_two_photon("coherent_regime_demo");
  coh.geometry = quantum_geometry(0.04, 0.15, 0.19, 0.25);
  coh.regime = DetectionRegime::coherent();
  coh.variant = ScenarioVariant::OpenInPhase;
  list.push_back(coh);

  return list;
}

ScenarioConfig find_scenario(const std::string& name) {
  for (auto& c : builtin_scenarios()) {
    if (c.name == name) return c;
  }
  std::ostringstream msg;
  msg << "unknown scenario '" << name << "'; available:";
  for (auto& c : builtin_scenarios()) msg << " " << c.name;
  throw ConfigError(msg.str());
}

std::vector<SweepDefinition> builtin_sweeps() {
  std::vector<SweepDefinition> sweeps;

  SweepDefinition theta_scan;
  theta_scan.name = "theta_scan";
  for (int j = 0; j < 16; ++j) {
    ScenarioConfig c = base_two_photon("theta_scan");
    c.variant = ScenarioVariant::OpenInPhase;
    c.geometry.theta = 2.0 * kPi * j / 16.0;
    std::ostringstream label;
    label << "theta_" << (j < 10 ? "0" : "") << j;
    c.name = theta_scan.name + "/" + label.str();
    theta_scan.points.push_back({label.str(), c});
  }
  sweeps.push_back(theta_scan);

  SweepDefinition bucket_scan;
  bucket_scan.name = "bucket_path_scan";
  for (Real dz_cm : {0.0, 5.0, 10.0, 20.0}) {
    ScenarioConfig c = base_two_photon("bucket_path_scan");
    c.variant = ScenarioVariant::BucketSwap;
    c.geometry.z_sr = c.geometry.z_so() + dz_cm * 1e-2;
    std::ostringstream label;
    label << "dz_" << dz_cm << "cm";
    c.name = bucket_scan.name + "/" + label.str();
    bucket_scan.points.push_back({label.str(), c});
  }
  sweeps.push_back(bucket_scan);

  return sweeps;
}

SweepDefinition find_sweep(const std::string& name) {
  for (auto& s : builtin_sweeps()) {
    if (s.name == name) return s;
  }
  std::ostringstream msg;
  msg << "unknown sweep '" << name << "'; available:";
  for (auto& s : builtin_sweeps()) msg << " " << s.name;
  throw ConfigError(msg.str());
}

// ---------------------------------------------------------------------------

namespace {

/// Variant applied to working copies: the result still echoes the original.
struct EffectiveSetup {
  HologramGeometry geometry;
  SourceModel source;
  DetectionRegime regime;
  bool reference_blocked = false;
};

EffectiveSetup resolve_variant(const ScenarioConfig& c) {
  EffectiveSetup e{c.geometry, c.source, c.regime, false};
  switch (c.variant) {
    case ScenarioVariant::BlockedReference:
      e.reference_blocked = true;
      break;
    // The in/out-of-phase presets are carried by geometry.theta so that
    // explicit theta overrides keep working; the variant only labels them.
    case ScenarioVariant::OpenInPhase:
    case ScenarioVariant::OpenOutOfPhase:
      break;
    case ScenarioVariant::NoPinhole:
      if (c.mode != ScenarioMode::OnePhoton)
        throw ConfigError("no_pinhole variant applies to one-photon scenarios");
      e.source = SourceModel::incoherent_thermal();
      break;
    case ScenarioVariant::BucketSwap:
      if (c.mode != ScenarioMode::TwoPhoton)
        throw ConfigError("bucket_swap variant applies to two-photon scenarios");
      e.regime = DetectionRegime::bucket();
      break;
  }
  return e;
}

Real imaged_period_hint(const ScenarioConfig& c, const EffectiveSetup& e) {
  if (c.mask.kind() != ObjectMask::Kind::Grating) return c.grid.window / 16.0;
  Real magnification = 1.0;
  if (c.mode == ScenarioMode::OnePhoton) {
    if (e.source.kind == SourceModel::Kind::Pinhole)
      magnification = 1.0 + e.geometry.z_o2 / e.geometry.z_o1;
  } else if (e.regime.kind == DetectionRegime::Kind::Point) {
    magnification = 1.0 + (e.geometry.z_i + e.geometry.z_so2) / e.geometry.z_so1;
  }
  return magnification * c.mask.period();
}

std::optional<Real> oracle_match(const ScenarioConfig& c,
                                 const EffectiveSetup& e,
                                 const HologramProfiles& profiles) {
  if (e.reference_blocked || !profiles.interference) return std::nullopt;
  try {
    CorrelationProfile cf{c.grid, {}};
    if (c.mode == ScenarioMode::OnePhoton) {
      switch (e.source.kind) {
        case SourceModel::Kind::PlaneCoherent:
          cf = closed_form_coherent(e.geometry, c.mask, c.grid);
          break;
        case SourceModel::Kind::Pinhole:
          cf = closed_form_pinhole(e.geometry, c.mask, c.grid);
          break;
        case SourceModel::Kind::IncoherentThermal:
          cf = closed_form_incoherent(e.geometry, c.mask, c.grid);
          break;
        default:
          return std::nullopt;
      }
    } else {
      const EquivalentGeometry eq = equivalent_geometry(e.geometry, e.regime.kind);
      switch (e.regime.kind) {
        case DetectionRegime::Kind::Point:
          cf = closed_form_pinhole(eq.geometry, c.mask, c.grid);
          break;
        case DetectionRegime::Kind::Coherent:
          cf = closed_form_coherent(eq.geometry, c.mask, c.grid);
          break;
        case DetectionRegime::Kind::Bucket:
          cf = closed_form_incoherent(eq.geometry, c.mask, c.grid);
          break;
      }
    }
    RealProfile cf_interference{cf.grid, 2.0 * cf.values.real()};
    return pattern_distance(*profiles.interference, cf_interference);
  } catch (const NumericalGuardError&) {
    // Divergent or unsupported equivalent geometry: no oracle applies.
    return std::nullopt;
  }
}

HologramProfiles profiles_from_classical(const ClassicalHologram& h) {
  HologramProfiles p;
  p.total = h.total;
  p.intensity_object = h.intensity_object;
  p.intensity_reference = h.intensity_reference;
  p.interference = h.interference;
  const Real peak = p.total.values.cwiseAbs().maxCoeff();
  if (peak > 0.0) {
    p.total.values /= peak;
    p.intensity_object->values /= peak;
    p.intensity_reference->values /= peak;
    p.interference->values /= peak;
    p.normalization = peak;
  }
  return p;
}

ScenarioResult run_resolved(const ScenarioConfig& config,
                            const EffectiveSetup& e,
                            const TwoPhotonArms* shared_arms) {
  ScenarioResult result;
  result.config = config;

  if (config.mode == ScenarioMode::OnePhoton) {
    result.profiles = profiles_from_classical(classical_hologram(
        e.geometry, config.mask, e.source, config.grid, e.reference_blocked));
    if (std::abs(e.geometry.z_r - e.geometry.z_o()) > kCoherenceLength) {
      std::ostringstream w;
      w << "temporal coherence: |z_r - z_o| = "
        << std::abs(e.geometry.z_r - e.geometry.z_o())
        << " m exceeds the source coherence length " << kCoherenceLength
        << " m; the phase knob assumes the equal-path condition";
      result.warnings.push_back(w.str());
    }
  } else {
    // Shared amplitudes are copied so the sweep cache stays untouched.
    TwoPhotonArms working =
        shared_arms ? *shared_arms
                    : two_photon_arms(e.geometry, config.mask, config.grid);
    working.geometry = e.geometry;
    if (e.reference_blocked) working.reference_arm.values.setZero();
    result.profiles = detect_profiles(working, e.regime);
    if (std::abs(e.geometry.z_sr - e.geometry.z_so()) > kCoherenceLength) {
      std::ostringstream w;
      w << "temporal coherence: |z_sr - z_so| = "
        << std::abs(e.geometry.z_sr - e.geometry.z_so())
        << " m exceeds the pump coherence length " << kCoherenceLength
        << " m; the phase knob assumes the equal-path condition";
      result.warnings.push_back(w.str());
    }
  }

  const Real hint = imaged_period_hint(config, e);
  result.metrics.visibility = visibility(result.profiles.total, hint);
  if (result.profiles.interference) {
    result.metrics.interference_ratio = interference_energy_ratio(
        *result.profiles.interference, result.profiles.total);
  }
  result.metrics.imaged_period = estimate_period(result.profiles.total);
  result.metrics.oracle_match = oracle_match(config, e, result.profiles);
  if (config.mask.kind() == ObjectMask::Kind::Grating) {
    result.metrics.talbot_length = 2.0 * config.mask.period() *
                                   config.mask.period() /
                                   config.grid.wavelength;
  }

  if (config.noise) {
    result = apply_shot_noise(result, config.noise->total_counts,
                              config.noise->seed);
  }
  return result;
}

} // namespace

ScenarioResult run(const ScenarioConfig& config) {
  return run_resolved(config, resolve_variant(config), nullptr);
}

CoincidenceMap scenario_coincidence_map(const ScenarioConfig& config) {
  if (config.mode != ScenarioMode::TwoPhoton)
    throw ConfigError("scenario '" + config.name +
                      "' is one-photon and has no coincidence map");
  const EffectiveSetup e = resolve_variant(config);
  TwoPhotonArms arms = two_photon_arms(e.geometry, config.mask, config.grid);
  if (e.reference_blocked) arms.reference_arm.values.setZero();
  return build_coincidence_map(arms);
}

std::vector<ScenarioResult> run_sweep(const SweepDefinition& sweep) {
  std::vector<ScenarioResult> results;
  results.reserve(sweep.points.size());

  // Arm amplitudes depend only on the four propagation distances, the mask
  // and the grid; theta/eta/regime variations reuse them.
  std::optional<TwoPhotonArms> cache;
  auto same_arms = [](const HologramGeometry& a, const HologramGeometry& b) {
    return a.z_so1 == b.z_so1 && a.z_so2 == b.z_so2 && a.z_sr == b.z_sr &&
           a.z_i == b.z_i;
  };

  for (const SweepPoint& point : sweep.points) {
    const EffectiveSetup e = resolve_variant(point.config);
    if (point.config.mode != ScenarioMode::TwoPhoton) {
      results.push_back(run_resolved(point.config, e, nullptr));
      continue;
    }
    if (!cache || !same_arms(cache->geometry, e.geometry)) {
      cache = two_photon_arms(e.geometry, point.config.mask, point.config.grid);
    }
    results.push_back(run_resolved(point.config, e, &*cache));
  }
  return results;
}

ScenarioResult apply_shot_noise(const ScenarioResult& result,
                                long long total_counts,
                                unsigned long long seed) {
  if (total_counts <= 0)
    throw ConfigError("apply_shot_noise: total_counts must be positive");
  const RealVector& profile = result.profiles.total.values;
  if (profile.minCoeff() < 0.0)
    throw NumericalGuardError("apply_shot_noise: profile must be nonnegative");
  const Real sum = profile.sum();
  if (sum <= 0.0)
    throw NumericalGuardError("apply_shot_noise: profile sums to zero");

  std::mt19937_64 rng(seed);
  RealVector counts(profile.size());
  for (Index i = 0; i < profile.size(); ++i) {
    const Real mean = static_cast<Real>(total_counts) * profile[i] / sum;
    std::poisson_distribution<long long> poisson(mean > 0.0 ? mean : 0.0);
    counts[i] = mean > 0.0 ? static_cast<Real>(poisson(rng)) : 0.0;
  }

  ScenarioResult noisy;
  noisy.config = result.config;
  noisy.warnings = result.warnings;
  noisy.profiles.total = RealProfile{result.profiles.total.grid, counts};
  noisy.profiles.normalization = 1.0;

  const EffectiveSetup e = resolve_variant(result.config);
  const Real hint = imaged_period_hint(result.config, e);
  noisy.metrics.visibility = visibility(noisy.profiles.total, hint);
  noisy.metrics.imaged_period = estimate_period(noisy.profiles.total);
  noisy.metrics.talbot_length = result.metrics.talbot_length;
  return noisy;
}

// ---------------------------------------------------------------------------

namespace {

template <typename Vec>
Real pattern_distance_impl(const Vec& a, const Vec& b, const IndexRange& r) {
  const auto sa = a.segment(r.begin, r.size());
  const auto sb = b.segment(r.begin, r.size());
  const Real peak_a = sa.cwiseAbs().maxCoeff();
  const Real peak_b = sb.cwiseAbs().maxCoeff();
  if (peak_a == 0.0 || peak_b == 0.0)
    throw NumericalGuardError("pattern_distance: profile vanishes on region");
  return (sa / peak_a - sb / peak_b).norm() / (sb / peak_b).norm();
}

} // namespace

Real pattern_distance(const RealProfile& a, const RealProfile& b) {
  if (!(a.grid == b.grid))
    throw NumericalGuardError("pattern_distance: grid mismatch");
  return pattern_distance_impl(a.values, b.values, central_range(a.grid));
}

Real pattern_distance(const CorrelationProfile& a, const CorrelationProfile& b) {
  if (!(a.grid == b.grid))
    throw NumericalGuardError("pattern_distance: grid mismatch");
  return pattern_distance_impl(a.values, b.values, central_range(a.grid));
}

} // namespace holosim
