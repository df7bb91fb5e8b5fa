#pragma once

#include "holosim/holography.hpp"

#include <optional>
#include <string>
#include <vector>

namespace holosim {

enum class ScenarioMode { OnePhoton, TwoPhoton };

/// Structural variations of the base interferometer runs. The in/out-of
/// phase variants force theta to 0 or pi; blocked_reference removes the
/// reference wave (plain Talbot / ghost-Talbot imaging); no_pinhole swaps
/// the one-photon source for the extended incoherent model; bucket_swap
/// replaces the point detector by a bucket detector.
enum class ScenarioVariant {
  BlockedReference,
  OpenInPhase,
  OpenOutOfPhase,
  NoPinhole,
  BucketSwap,
};

struct NoiseSpec {
  long long total_counts = 0;
  unsigned long long seed = 0;
  bool operator==(const NoiseSpec&) const = default;
};

struct ScenarioConfig {
  std::string name;
  ScenarioMode mode = ScenarioMode::OnePhoton;
  HologramGeometry geometry;
  SourceModel source;
  ObjectMask mask = ObjectMask::unity();
  DetectionRegime regime;  // two-photon only
  ScenarioVariant variant = ScenarioVariant::OpenInPhase;
  SamplingGrid grid;
  std::optional<NoiseSpec> noise;

  bool operator==(const ScenarioConfig&) const = default;
};

struct ScenarioMetrics {
  Real visibility = 0.0;
  Real interference_ratio = 0.0;     // fringe content of the interference part
  Real imaged_period = 0.0;          // autocorrelation estimate [m], 0 if none
  std::optional<Real> oracle_match;  // peak-normalized rel. L2 vs closed form
  Real talbot_length = 0.0;          // 2 d^2 / lambda for grating objects
};

struct ScenarioResult {
  ScenarioConfig config;
  HologramProfiles profiles;
  ScenarioMetrics metrics;
  std::vector<std::string> warnings;
};

std::vector<ScenarioConfig> builtin_scenarios();
ScenarioConfig find_scenario(const std::string& name);

struct SweepPoint {
  std::string label;
  ScenarioConfig config;
};

struct SweepDefinition {
  std::string name;
  std::vector<SweepPoint> points;
};

std::vector<SweepDefinition> builtin_sweeps();
SweepDefinition find_sweep(const std::string& name);

ScenarioResult run(const ScenarioConfig& config);

/// Full coincidence map of a two-photon scenario (variant resolved), for
/// 2-D export. One-photon scenarios have no map and are rejected.
CoincidenceMap scenario_coincidence_map(const ScenarioConfig& config);

/// Runs every point of a sweep; two-photon arm amplitudes are reused across
/// points that share the same propagation geometry and object.
std::vector<ScenarioResult> run_sweep(const SweepDefinition& sweep);

/// Finite-count measurement: per-bin Poisson counts with means proportional
/// to the profile and total expectation `total_counts`. Deterministic for a
/// fixed seed; decomposition parts do not survive counting noise, so the
/// noisy result keeps only the total and recomputed metrics.
ScenarioResult apply_shot_noise(const ScenarioResult& result,
                                long long total_counts,
                                unsigned long long seed);

/// Peak-normalized relative L2 distance over the central 60%, the standard
/// pattern comparison used by the oracle checks.
Real pattern_distance(const RealProfile& a, const RealProfile& b);
Real pattern_distance(const CorrelationProfile& a, const CorrelationProfile& b);

} // namespace holosim
