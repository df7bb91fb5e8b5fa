#pragma once

#include "holosim/grid.hpp"
#include "holosim/kernels.hpp"
#include "holosim/mask.hpp"
#include "holosim/sources.hpp"

#include <optional>

namespace holosim {

/// Default object-to-reference amplitude ratio. Keeps the interference term
/// first-order dominant while the fringe contrast of the hologram stays
/// comfortably above the washout discrimination threshold.
inline constexpr Real kDefaultAmplitudeRatio = 0.6;

/// In-line interferometer geometry for both the one-photon and two-photon
/// experiments. Classical arm: source -> (z_o1) -> object -> (z_o2) ->
/// recording plane, reference path z_r. Quantum arm: source -> (z_so2) ->
/// object -> (z_so1) -> signal detector, free signal reference path z_sr,
/// idler path z_i.
///
/// The phase knob theta replaces the constant e^{ik(z_o - z_r)} path factor
/// of the interference term: the experiment tunes the path difference at
/// sub-wavelength scale, far below any sane grid resolution, so the knob is
/// explicit while all quadratic-phase geometry uses the nominal distances.
struct HologramGeometry {
  Real z_o1 = 0.0, z_o2 = 0.0, z_r = 0.0;            // one-photon arm [m]
  Real z_so1 = 0.0, z_so2 = 0.0, z_sr = 0.0, z_i = 0.0;  // two-photon arm [m]
  Real theta = 0.0;                 // reference phase knob, stored mod 2*pi
  Real eta = kDefaultAmplitudeRatio;  // object/reference amplitude ratio

  Real z_o() const { return z_o1 + z_o2; }
  Real z_so() const { return z_so1 + z_so2; }
  bool equal_path_classical() const { return z_r == z_o(); }
  bool equal_path_quantum() const { return z_sr == z_so(); }

  bool operator==(const HologramGeometry&) const = default;
};

HologramGeometry classical_geometry(Real z_o1, Real z_o2, Real z_r,
                                    Real theta = 0.0,
                                    Real eta = kDefaultAmplitudeRatio);
HologramGeometry quantum_geometry(Real z_so1, Real z_so2, Real z_sr, Real z_i,
                                  Real theta = 0.0,
                                  Real eta = kDefaultAmplitudeRatio);

Real normalize_angle(Real theta);  // into [0, 2*pi)

/// How the signal photon is detected while the idler plane is scanned.
struct DetectionRegime {
  enum class Kind { Point, Coherent, Bucket };
  Kind kind = Kind::Point;
  Real point_position = 0.0;  // fixed signal detector position x1* [m]

  static DetectionRegime point(Real x1 = 0.0) { return {Kind::Point, x1}; }
  static DetectionRegime coherent() { return {Kind::Coherent, 0.0}; }
  static DetectionRegime bucket() { return {Kind::Bucket, 0.0}; }

  bool operator==(const DetectionRegime&) const = default;
};

/// Closed-form holographic interference terms, evaluated by direct
/// quadrature against the same input aperture the kernels use. Overall
/// source amplitudes are unit scale; comparisons are peak-normalized.
CorrelationProfile closed_form_coherent(const HologramGeometry& g,
                                        const ObjectMask& mask,
                                        const SamplingGrid& grid);
CorrelationProfile closed_form_pinhole(const HologramGeometry& g,
                                       const ObjectMask& mask,
                                       const SamplingGrid& grid);
/// Requires z_r > z_o1 and z_r != z_o; the equal-path case diverges
/// (effective length Z' -> infinity) and throws DivergentEffectiveLength.
CorrelationProfile closed_form_incoherent(const HologramGeometry& g,
                                          const ObjectMask& mask,
                                          const SamplingGrid& grid);

/// Z' = z_o2 (z_r - z_o1) / (z_r - z_o), the single Fresnel distance
/// governing the extended-incoherent-source hologram. Throws on the
/// divergent (equal path) and unsupported (z_r <= z_o1) geometries.
Real incoherent_effective_length(const HologramGeometry& g);

/// One-photon hologram produced by the numerical engine: the interference
/// cross term with the theta knob applied, the two intensity parts and the
/// total recorded pattern. Values are unnormalized.
struct ClassicalHologram {
  CorrelationProfile cross;        // eta * e^{i theta} * <E_r* E_o>, path phases stripped
  RealProfile intensity_object;    // eta^2 |E_o|^2
  RealProfile intensity_reference;
  RealProfile interference;        // 2 Re(cross)
  RealProfile total;
};

ClassicalHologram classical_hologram(const HologramGeometry& g,
                                     const ObjectMask& mask,
                                     const SourceModel& source,
                                     const SamplingGrid& grid,
                                     bool reference_blocked = false);

/// Unscaled per-arm two-photon amplitudes, reusable across theta/eta values.
struct TwoPhotonArms {
  TwoPhotonAmplitude object_arm;
  TwoPhotonAmplitude reference_arm;
  HologramGeometry geometry;
};

TwoPhotonArms two_photon_arms(const HologramGeometry& g, const ObjectMask& mask,
                              const SamplingGrid& grid);

/// Coincidence-rate map R(x1, x2) = |A_object + A_reference|^2 and its
/// decomposition. All four maps are peak-normalized together by the maximum
/// of the total; the divided-out scale is recorded in `normalization`.
struct CoincidenceMap {
  SamplingGrid grid1, grid2;
  RealMatrix total;
  RealMatrix intensity_object;
  RealMatrix intensity_reference;
  RealMatrix interference;
  Real normalization = 1.0;
};

CoincidenceMap build_coincidence_map(const TwoPhotonArms& arms);
CoincidenceMap build_coincidence_map(const HologramGeometry& g,
                                     const ObjectMask& mask,
                                     const SamplingGrid& grid);

/// Detector-plane profiles after applying a detection regime: the total and
/// the matching decomposition, all over the scanned idler coordinate,
/// jointly normalized (scale recorded).
struct HologramProfiles {
  RealProfile total;
  std::optional<RealProfile> intensity_object;
  std::optional<RealProfile> intensity_reference;
  std::optional<RealProfile> interference;
  Real normalization = 1.0;
};

/// Point: row slice at the fixed signal position. Bucket: intensity-level
/// integral over the whole signal window. The coherent regime needs
/// amplitudes and rejects map-only input.
RealProfile detect(const CoincidenceMap& map, const DetectionRegime& regime);
HologramProfiles detect_profiles(const CoincidenceMap& map,
                                 const DetectionRegime& regime);
/// All three regimes. Coherent detection integrates the amplitudes over the
/// signal window through the shared soft edge window (zero-transverse-
/// momentum projection realizing the lens plus focal-point detector).
HologramProfiles detect_profiles(const TwoPhotonArms& arms,
                                 const DetectionRegime& regime);

/// Classical one-photon geometry equivalent to a two-photon scheme when the
/// signal detector acts as the source of the equivalent diagram.
struct EquivalentGeometry {
  HologramGeometry geometry;      // classical distances filled in
  Real effective_length = 0.0;    // Z (point/coherent) or Z' (bucket)
  Real magnification = 1.0;
  SourceModel::Kind source_kind = SourceModel::Kind::Pinhole;
};

EquivalentGeometry equivalent_geometry(const HologramGeometry& quantum,
                                       DetectionRegime::Kind regime);

/// Fringe contrast (max-min)/(max+min) over the central 60% after smoothing
/// with a window of period/8. A flat-zero profile reports 0.
Real visibility(const RealProfile& profile, Real period_hint);

/// Fringe content of the interference part relative to the total:
/// L1 norm of (interference - mean) over L1 norm of the total, central 60%.
/// The mean is removed because a washed-out hologram retains a structureless
/// interference offset; only the modulated part carries an image.
Real interference_energy_ratio(const RealProfile& interference,
                               const RealProfile& total);

/// Dominant period via the first autocorrelation side peak (parabolic
/// refinement), over the central 60%. Returns 0 if no peak is found.
Real estimate_period(const RealProfile& profile);

RealProfile smoothed(const RealProfile& profile, Real window_length);

} // namespace holosim
