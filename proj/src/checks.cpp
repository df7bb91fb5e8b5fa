#include "holosim/checks.hpp"

#include "holosim/errors.hpp"
#include "holosim/holography.hpp"
#include "holosim/scenarios.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

namespace holosim {

namespace {

constexpr Real kPi = std::numbers::pi;

class Suite {
public:
  explicit Suite(OracleReport& report) : report_(report) {}

  void check(const std::string& name, double threshold,
             const std::function<double()>& measure,
             const std::string& note = "") {
    CheckResult r;
    r.name = name;
    r.threshold = threshold;
    r.note = note;
    try {
      r.measured = measure();
      r.passed = r.measured < threshold;
    } catch (const NumericalGuardError& e) {
      r.measured = std::numeric_limits<double>::quiet_NaN();
      r.passed = false;
      r.note = std::string("guard: ") + e.what();
    }
    report_.checks.push_back(r);
  }

  void check_above(const std::string& name, double threshold,
                   const std::function<double()>& measure,
                   const std::string& note = "") {
    CheckResult r;
    r.name = name;
    r.threshold = threshold;
    r.note = note.empty() ? "must exceed threshold" : note;
    try {
      r.measured = measure();
      r.passed = r.measured > threshold;
    } catch (const NumericalGuardError& e) {
      r.measured = std::numeric_limits<double>::quiet_NaN();
      r.passed = false;
      r.note = std::string("guard: ") + e.what();
    }
    report_.checks.push_back(r);
  }

  void expect_divergence(const std::string& name,
                         const std::function<void()>& action) {
    CheckResult r;
    r.name = name;
    r.threshold = 0.0;
    try {
      action();
      r.passed = false;
      r.note = "expected DivergentEffectiveLength, none raised";
    } catch (const DivergentEffectiveLength&) {
      r.passed = true;
      r.note = "expected error raised";
    } catch (const NumericalGuardError& e) {
      r.passed = false;
      r.note = std::string("wrong guard: ") + e.what();
    }
    report_.checks.push_back(r);
  }

private:
  OracleReport& report_;
};

} // namespace

bool OracleReport::all_passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

OracleReport oracle_check() { return oracle_check(default_grid()); }

OracleReport oracle_check(const SamplingGrid& grid) {
  OracleReport report;
  Suite suite(report);
  const ObjectMask grating = ObjectMask::grating(400e-6, 200e-6);
  const Real eta = kDefaultAmplitudeRatio;

  // Shared two-photon engine state (built lazily so a degraded grid reports
  // one guard failure per dependent check instead of aborting the suite).
  std::optional<TwoPhotonArms> arms;
  auto fig4_arms = [&]() -> const TwoPhotonArms& {
    if (!arms)
      arms = two_photon_arms(quantum_geometry(0.40, 0.15, 0.55, 0.25), grating,
                             grid);
    return *arms;
  };

  suite.check("decomposition-identity", 1e-12, [&] {
    const CoincidenceMap map = build_coincidence_map(fig4_arms());
    return (map.total - (map.intensity_object + map.intensity_reference +
                         map.interference))
        .cwiseAbs()
        .maxCoeff();
  });

  suite.check("phase-complementarity", 1e-10, [&] {
    TwoPhotonArms a = fig4_arms();
    const DetectionRegime point = DetectionRegime::point(0.0);
    a.geometry.theta = 0.0;
    HologramProfiles p0 = detect_profiles(a, point);
    a.geometry.theta = kPi;
    HologramProfiles p1 = detect_profiles(a, point);
    const RealVector sum = p0.total.values * p0.normalization +
                           p1.total.values * p1.normalization;
    const RealVector intensities =
        2.0 * (p0.intensity_object->values + p0.intensity_reference->values) *
        p0.normalization;
    return (sum - intensities).cwiseAbs().maxCoeff() /
           intensities.cwiseAbs().maxCoeff();
  });

  suite.check("point-quantum-classical-equivalence", 2e-2, [&] {
    const HologramProfiles q =
        detect_profiles(fig4_arms(), DetectionRegime::point(0.0));
    const EquivalentGeometry eq = equivalent_geometry(
        fig4_arms().geometry, DetectionRegime::Kind::Point);
    const ClassicalHologram c =
        classical_hologram(eq.geometry, grating,
                           SourceModel::pinhole(0.0, 100e-6), grid);
    return pattern_distance(*q.interference, c.interference);
  });

  suite.check("bucket-washout-ratio", 0.05, [&] {
    const HologramProfiles b =
        detect_profiles(fig4_arms(), DetectionRegime::bucket());
    return interference_energy_ratio(*b.interference, b.total);
  });

  suite.check_above("point-interference-ratio", 0.3, [&] {
    const HologramProfiles p =
        detect_profiles(fig4_arms(), DetectionRegime::point(0.0));
    return interference_energy_ratio(*p.interference, p.total);
  });

  suite.check(
      "bucket-revival-vs-incoherent-oracle", 5e-2,
      [&] {
        HologramGeometry g = quantum_geometry(0.40, 0.15, 0.65, 0.25);
        const TwoPhotonArms a = two_photon_arms(g, grating, grid);
        const HologramProfiles b = detect_profiles(a, DetectionRegime::bucket());
        const EquivalentGeometry eq =
            equivalent_geometry(g, DetectionRegime::Kind::Bucket);
        const CorrelationProfile cf =
            closed_form_incoherent(eq.geometry, grating, grid);
        const RealProfile oracle{cf.grid, 2.0 * cf.values.real()};
        return pattern_distance(*b.interference, oracle);
      },
      "finite signal window cannot reproduce the infinite-source limit");

  suite.check("eta-scaling-interference-linear", 1e-12, [&] {
    TwoPhotonArms a = fig4_arms();
    a.geometry.eta = 0.3;
    const CoincidenceMap m1 = build_coincidence_map(a);
    a.geometry.eta = 0.6;
    const CoincidenceMap m2 = build_coincidence_map(a);
    const RealMatrix raw1 = m1.interference * m1.normalization;
    const RealMatrix raw2 = m2.interference * m2.normalization;
    return (raw2 - 2.0 * raw1).cwiseAbs().maxCoeff() /
           raw2.cwiseAbs().maxCoeff();
  });

  suite.check("eta-scaling-object-intensity-quadratic", 1e-12, [&] {
    TwoPhotonArms a = fig4_arms();
    a.geometry.eta = 0.3;
    const CoincidenceMap m1 = build_coincidence_map(a);
    a.geometry.eta = 0.6;
    const CoincidenceMap m2 = build_coincidence_map(a);
    const RealMatrix raw1 = m1.intensity_object * m1.normalization;
    const RealMatrix raw2 = m2.intensity_object * m2.normalization;
    return (raw2 - 4.0 * raw1).cwiseAbs().maxCoeff() /
           raw2.cwiseAbs().maxCoeff();
  });

  suite.check("plane-coherent-engine-vs-oracle", 1e-2, [&] {
    const HologramGeometry g = classical_geometry(0.04, 0.08, 0.04, 0.0, eta);
    const ClassicalHologram h = classical_hologram(
        g, grating, SourceModel::plane_coherent(), grid);
    return pattern_distance(h.cross, closed_form_coherent(g, grating, grid));
  });

  suite.check("pinhole-engine-vs-oracle", 1e-2, [&] {
    const HologramGeometry g = classical_geometry(0.40, 0.40, 0.80, 0.0, eta);
    const ClassicalHologram h = classical_hologram(
        g, grating, SourceModel::pinhole(0.0, 100e-6), grid);
    return pattern_distance(h.cross, closed_form_pinhole(g, grating, grid));
  });

  suite.check(
      "incoherent-engine-vs-oracle", 2e-2,
      [&] {
        const HologramGeometry g =
            classical_geometry(0.04, 0.04, 0.18, 0.0, eta);
        const ClassicalHologram h = classical_hologram(
            g, grating, SourceModel::incoherent_thermal(1.0, grid.window),
            grid);
        return pattern_distance(h.cross,
                                closed_form_incoherent(g, grating, grid));
      },
      "backprojected source span exceeds the emitting window");

  suite.check("coherent-regime-vs-oracle", 2e-2, [&] {
    const HologramGeometry g = quantum_geometry(0.04, 0.15, 0.19, 0.25);
    const TwoPhotonArms a = two_photon_arms(g, grating, grid);
    const HologramProfiles p = detect_profiles(a, DetectionRegime::coherent());
    const EquivalentGeometry eq =
        equivalent_geometry(g, DetectionRegime::Kind::Coherent);
    const CorrelationProfile cf = closed_form_coherent(eq.geometry, grating, grid);
    const RealProfile oracle{cf.grid, 2.0 * cf.values.real()};
    return pattern_distance(*p.interference, oracle);
  });

  suite.expect_divergence("incoherent-equal-path-divergence", [&] {
    closed_form_incoherent(classical_geometry(0.40, 0.40, 0.80), grating, grid);
  });

  suite.expect_divergence("bucket-equal-path-divergence", [&] {
    equivalent_geometry(quantum_geometry(0.40, 0.15, 0.55, 0.25),
                        DetectionRegime::Kind::Bucket);
  });

  return report;
}

std::string format_report(const OracleReport& report) {
  std::ostringstream out;
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS" : "FAIL") << " " << c.name;
    if (!std::isnan(c.measured)) {
      out << " measured=" << c.measured << " threshold=" << c.threshold;
    }
    if (!c.note.empty()) out << " (" << c.note << ")";
    out << "\n";
  }
  return out.str();
}

} // namespace holosim
