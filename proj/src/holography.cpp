#include "holosim/holography.hpp"

#include "holosim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace holosim {

namespace {
constexpr Real kTwoPi = 2.0 * std::numbers::pi;
const Complex kInverseSqrtI = std::polar(1.0, -std::numbers::pi / 4.0);

void require_positive(Real z, const char* name) {
  if (!(z > 0.0)) {
    std::ostringstream msg;
    msg << "geometry: " << name << " must be positive, got " << z;
    throw NumericalGuardError(msg.str());
  }
}
} // namespace

Real normalize_angle(Real theta) {
  Real t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t;
}

HologramGeometry classical_geometry(Real z_o1, Real z_o2, Real z_r, Real theta,
                                    Real eta) {
  require_positive(z_o1, "z_o1");
  require_positive(z_o2, "z_o2");
  require_positive(z_r, "z_r");
  HologramGeometry g;
  g.z_o1 = z_o1;
  g.z_o2 = z_o2;
  g.z_r = z_r;
  g.theta = normalize_angle(theta);
  g.eta = eta;
  return g;
}

HologramGeometry quantum_geometry(Real z_so1, Real z_so2, Real z_sr, Real z_i,
                                  Real theta, Real eta) {
  require_positive(z_so1, "z_so1");
  require_positive(z_so2, "z_so2");
  require_positive(z_sr, "z_sr");
  require_positive(z_i, "z_i");
  HologramGeometry g;
  g.z_so1 = z_so1;
  g.z_so2 = z_so2;
  g.z_sr = z_sr;
  g.z_i = z_i;
  g.theta = normalize_angle(theta);
  g.eta = eta;
  return g;
}

// ---------------------------------------------------------------------------
// Closed forms (Fresnel quadrature of the T-integral against the shared
// input aperture; independent of the kernel-matrix machinery).

namespace {

/// sum_j aperture_j T_j exp(i k (x_i * out_scale - x_j)^2 / (2 length)) dx
ComplexVector mask_fresnel_quadrature(const SamplingGrid& grid,
                                      const ObjectMask& mask, Real length,
                                      Real out_scale) {
  const Real k = grid.wave_number();
  const Real dx = grid.dx();
  const RealVector x = grid.coords();
  const RealVector aperture = edge_taper(grid);
  const ComplexVector t = mask.sample(grid);

  ComplexVector out = ComplexVector::Zero(grid.n_points);
  for (Index i = 0; i < grid.n_points; ++i) {
    const Real xi = x[i] * out_scale;
    Complex acc{0.0, 0.0};
    for (Index j = 0; j < grid.n_points; ++j) {
      if (aperture[j] == 0.0) continue;
      const Real u = x[j] - xi;
      acc += aperture[j] * t[j] * std::polar(1.0, k * u * u / (2.0 * length));
    }
    out[i] = acc * dx;
  }
  return out;
}

} // namespace

CorrelationProfile closed_form_coherent(const HologramGeometry& g,
                                        const ObjectMask& mask,
                                        const SamplingGrid& grid) {
  require_positive(g.z_o2, "z_o2");
  const Real k = grid.wave_number();
  const Complex pref = std::sqrt(k / (kTwoPi * g.z_o2)) * kInverseSqrtI *
                       std::polar(1.0, g.theta);
  ComplexVector values = mask_fresnel_quadrature(grid, mask, g.z_o2, 1.0);
  return {grid, pref * values};
}

CorrelationProfile closed_form_pinhole(const HologramGeometry& g,
                                       const ObjectMask& mask,
                                       const SamplingGrid& grid) {
  require_positive(g.z_o1, "z_o1");
  require_positive(g.z_o2, "z_o2");
  require_positive(g.z_r, "z_r");
  const Real k = grid.wave_number();
  const Real z_o = g.z_o();
  const Real effective_length = g.z_o1 * g.z_o2 / z_o;
  const Real magnification = 1.0 + g.z_o2 / g.z_o1;

  const Complex pref = std::pow(k / kTwoPi, 1.5) * kInverseSqrtI /
                       std::sqrt(g.z_r * g.z_o1 * g.z_o2) *
                       std::polar(1.0, g.theta);
  ComplexVector values = mask_fresnel_quadrature(
      grid, mask, effective_length, 1.0 / magnification);
  // Quadratic phase outside the integral; vanishes at equal path.
  const RealVector x = grid.coords();
  for (Index i = 0; i < grid.n_points; ++i) {
    values[i] *= pref * std::polar(1.0, k * (g.z_r - z_o) * x[i] * x[i] /
                                            (2.0 * g.z_r * z_o));
  }
  return {grid, std::move(values)};
}

Real incoherent_effective_length(const HologramGeometry& g) {
  require_positive(g.z_o1, "z_o1");
  require_positive(g.z_o2, "z_o2");
  const Real z_o = g.z_o();
  if (g.z_r == z_o) {
    throw DivergentEffectiveLength(
        "incoherent hologram: equal path z_r = z_o makes the effective "
        "diffraction length Z' -> infinity");
  }
  if (g.z_r <= g.z_o1) {
    std::ostringstream msg;
    msg << "incoherent hologram: unsupported geometry z_r=" << g.z_r
        << " <= z_o1=" << g.z_o1 << " (Z' changes sign)";
    throw NumericalGuardError(msg.str());
  }
  return g.z_o2 * (g.z_r - g.z_o1) / (g.z_r - z_o);
}

CorrelationProfile closed_form_incoherent(const HologramGeometry& g,
                                          const ObjectMask& mask,
                                          const SamplingGrid& grid) {
  const Real z_prime = incoherent_effective_length(g);
  const Real k = grid.wave_number();
  const Complex pref = k /
                       (kTwoPi * std::sqrt(g.z_o2 * (g.z_r - g.z_o1))) *
                       std::polar(1.0, g.theta);
  ComplexVector values = mask_fresnel_quadrature(grid, mask, z_prime, 1.0);
  return {grid, pref * values};
}

// ---------------------------------------------------------------------------
// Numerical engines.

namespace {

/// eta * e^{i theta} with the kernels' constant path phase e^{ik(zo - zr)}
/// divided out, so the interference term carries exactly e^{i theta}.
Complex object_arm_scale(Real k, Real object_path, Real reference_path,
                         Real eta, Real theta) {
  return eta * std::polar(1.0, theta - k * (object_path - reference_path));
}

} // namespace

ClassicalHologram classical_hologram(const HologramGeometry& g,
                                     const ObjectMask& mask,
                                     const SourceModel& source,
                                     const SamplingGrid& grid,
                                     bool reference_blocked) {
  if (!source.is_classical())
    throw NumericalGuardError(
        "classical_hologram: entangled source requires the two-photon engine");

  const KernelMatrix h_o = object_kernel(grid, mask, g.z_o1, g.z_o2);
  const KernelMatrix h_r = fresnel_kernel(grid, g.z_r);
  const Complex scale = object_arm_scale(grid.wave_number(), g.z_o(), g.z_r,
                                         g.eta, g.theta);

  ClassicalHologram h;
  h.cross.grid = grid;
  h.intensity_object.grid = grid;
  h.intensity_reference.grid = grid;
  h.interference.grid = grid;
  h.total.grid = grid;

  if (source.kind == SourceModel::Kind::IncoherentThermal) {
    const RealVector w = emission_window(grid, source.emitting_width);
    h.intensity_object.values =
        g.eta * g.eta * source.intensity *
        (h_o.entries.cwiseAbs2() * w);
    h.intensity_reference.values =
        source.intensity * (h_r.entries.cwiseAbs2() * w);
    h.cross.values =
        scale * classical_interference_term(source, h_o, h_r).values;
  } else {
    const ComplexField in = make_constant_field(grid, source.amplitude);
    ComplexVector e_o, e_r;
    if (source.kind == SourceModel::Kind::Pinhole) {
      if (source.width < grid.dx())
        throw NumericalGuardError("pinhole width is below the grid step");
      const Index j = grid.nearest_index(source.position);
      e_o = h_o.entries.col(j) * source.amplitude;
      e_r = h_r.entries.col(j) * source.amplitude;
    } else {
      e_o = apply(h_o, in).values;
      e_r = apply(h_r, in).values;
    }
    h.intensity_object.values = g.eta * g.eta * e_o.cwiseAbs2();
    h.intensity_reference.values = e_r.cwiseAbs2();
    h.cross.values = scale * e_r.conjugate().cwiseProduct(e_o);
  }

  if (reference_blocked) {
    h.intensity_reference.values.setZero();
    h.cross.values.setZero();
  }
  h.interference.values = 2.0 * h.cross.values.real();
  h.total.values = h.intensity_reference.values + h.intensity_object.values +
                   h.interference.values;
  return h;
}

TwoPhotonArms two_photon_arms(const HologramGeometry& g, const ObjectMask& mask,
                              const SamplingGrid& grid) {
  // Signal object arm: source -> (z_so2) -> object -> (z_so1) -> detector D1.
  const KernelMatrix h_so = object_kernel(grid, mask, g.z_so2, g.z_so1);
  const KernelMatrix h_sr = fresnel_kernel(grid, g.z_sr);
  const KernelMatrix h_i = fresnel_kernel(grid, g.z_i);
  TwoPhotonArms arms;
  arms.object_arm = two_photon_amplitude(h_so, h_i);
  arms.reference_arm = two_photon_amplitude(h_sr, h_i);
  arms.geometry = g;
  return arms;
}

CoincidenceMap build_coincidence_map(const TwoPhotonArms& arms) {
  const HologramGeometry& g = arms.geometry;
  const Real k = arms.object_arm.grid1.wave_number();
  const Complex scale =
      object_arm_scale(k, g.z_so(), g.z_sr, g.eta, g.theta);

  CoincidenceMap map;
  map.grid1 = arms.object_arm.grid1;
  map.grid2 = arms.object_arm.grid2;
  const ComplexMatrix a_so = scale * arms.object_arm.values;
  const ComplexMatrix& a_sr = arms.reference_arm.values;
  map.intensity_object = a_so.cwiseAbs2();
  map.intensity_reference = a_sr.cwiseAbs2();
  map.interference =
      2.0 * a_sr.conjugate().cwiseProduct(a_so).real();
  map.total = (a_so + a_sr).cwiseAbs2();

  const Real peak = map.total.maxCoeff();
  if (peak > 0.0) {
    map.total /= peak;
    map.intensity_object /= peak;
    map.intensity_reference /= peak;
    map.interference /= peak;
    map.normalization = peak;
  }
  return map;
}

CoincidenceMap build_coincidence_map(const HologramGeometry& g,
                                     const ObjectMask& mask,
                                     const SamplingGrid& grid) {
  return build_coincidence_map(two_photon_arms(g, mask, grid));
}

// ---------------------------------------------------------------------------
// Detection.

namespace {

HologramProfiles normalize_profiles(HologramProfiles p) {
  const Real peak = p.total.values.cwiseAbs().maxCoeff();
  if (peak > 0.0) {
    p.total.values /= peak;
    if (p.intensity_object) p.intensity_object->values /= peak;
    if (p.intensity_reference) p.intensity_reference->values /= peak;
    if (p.interference) p.interference->values /= peak;
    p.normalization = peak;
  }
  return p;
}

} // namespace

RealProfile detect(const CoincidenceMap& map, const DetectionRegime& regime) {
  return detect_profiles(map, regime).total;
}

HologramProfiles detect_profiles(const CoincidenceMap& map,
                                 const DetectionRegime& regime) {
  HologramProfiles p;
  p.total.grid = map.grid2;
  p.intensity_object = RealProfile{map.grid2, {}};
  p.intensity_reference = RealProfile{map.grid2, {}};
  p.interference = RealProfile{map.grid2, {}};

  switch (regime.kind) {
    case DetectionRegime::Kind::Point: {
      const Index row = map.grid1.nearest_index(regime.point_position);
      p.total.values = map.total.row(row).transpose();
      p.intensity_object->values = map.intensity_object.row(row).transpose();
      p.intensity_reference->values =
          map.intensity_reference.row(row).transpose();
      p.interference->values = map.interference.row(row).transpose();
      break;
    }
    case DetectionRegime::Kind::Bucket: {
      const Real dx1 = map.grid1.dx();
      p.total.values = map.total.colwise().sum().transpose() * dx1;
      p.intensity_object->values =
          map.intensity_object.colwise().sum().transpose() * dx1;
      p.intensity_reference->values =
          map.intensity_reference.colwise().sum().transpose() * dx1;
      p.interference->values =
          map.interference.colwise().sum().transpose() * dx1;
      break;
    }
    case DetectionRegime::Kind::Coherent:
      throw NumericalGuardError(
          "detect: the coherent regime integrates amplitudes; a rate map is "
          "not enough");
  }
  p = normalize_profiles(std::move(p));
  // Compose with the map's own peak scale so values * normalization always
  // restores the unnormalized rate.
  p.normalization *= map.normalization;
  return p;
}

HologramProfiles detect_profiles(const TwoPhotonArms& arms,
                                 const DetectionRegime& regime) {
  if (regime.kind != DetectionRegime::Kind::Coherent)
    return detect_profiles(build_coincidence_map(arms), regime);

  const HologramGeometry& g = arms.geometry;
  const SamplingGrid& grid1 = arms.object_arm.grid1;
  const Real k = grid1.wave_number();
  const Complex scale =
      object_arm_scale(k, g.z_so(), g.z_sr, g.eta, g.theta);

  // Zero-transverse-momentum projection: amplitude-level integration over
  // the signal window through the shared soft edge (the lens aperture).
  const ComplexVector w =
      (edge_taper(grid1) * grid1.dx()).cast<Complex>();
  const ComplexVector b_o =
      scale * (arms.object_arm.values.transpose() * w);
  const ComplexVector b_r = arms.reference_arm.values.transpose() * w;

  HologramProfiles p;
  p.total = RealProfile{arms.object_arm.grid2, (b_o + b_r).cwiseAbs2()};
  p.intensity_object = RealProfile{arms.object_arm.grid2, b_o.cwiseAbs2()};
  p.intensity_reference = RealProfile{arms.object_arm.grid2, b_r.cwiseAbs2()};
  p.interference = RealProfile{
      arms.object_arm.grid2,
      2.0 * b_r.conjugate().cwiseProduct(b_o).real()};
  return normalize_profiles(std::move(p));
}

// ---------------------------------------------------------------------------
// Equivalent diagram.

EquivalentGeometry equivalent_geometry(const HologramGeometry& quantum,
                                       DetectionRegime::Kind regime) {
  require_positive(quantum.z_so1, "z_so1");
  require_positive(quantum.z_so2, "z_so2");
  require_positive(quantum.z_sr, "z_sr");
  require_positive(quantum.z_i, "z_i");

  EquivalentGeometry eq;
  eq.geometry = quantum;
  eq.geometry.z_o1 = quantum.z_so1;
  eq.geometry.z_o2 = quantum.z_i + quantum.z_so2;
  eq.geometry.z_r = quantum.z_i + quantum.z_sr;

  switch (regime) {
    case DetectionRegime::Kind::Point:
      eq.effective_length = eq.geometry.z_o1 * eq.geometry.z_o2 /
                            (eq.geometry.z_o1 + eq.geometry.z_o2);
      eq.magnification = 1.0 + eq.geometry.z_o2 / eq.geometry.z_o1;
      eq.source_kind = SourceModel::Kind::Pinhole;
      break;
    case DetectionRegime::Kind::Coherent:
      eq.effective_length = eq.geometry.z_o2;
      eq.magnification = 1.0;
      eq.source_kind = SourceModel::Kind::PlaneCoherent;
      break;
    case DetectionRegime::Kind::Bucket: {
      if (quantum.z_sr == quantum.z_so()) {
        throw DivergentEffectiveLength(
            "equivalent_geometry: bucket regime at equal path, Z' -> "
            "infinity (the scheme requires a path difference)");
      }
      eq.effective_length = (quantum.z_i + quantum.z_so2) *
                            (quantum.z_i + quantum.z_sr - quantum.z_so1) /
                            (quantum.z_sr - quantum.z_so());
      eq.magnification = 1.0;
      eq.source_kind = SourceModel::Kind::IncoherentThermal;
      break;
    }
  }
  return eq;
}

// ---------------------------------------------------------------------------
// Metrics.

RealProfile smoothed(const RealProfile& profile, Real window_length) {
  const Index n = profile.values.size();
  Index half = static_cast<Index>(
      std::llround(window_length / profile.grid.dx() / 2.0));
  half = std::max<Index>(half, 0);
  RealProfile out{profile.grid, RealVector(n)};
  for (Index i = 0; i < n; ++i) {
    const Index lo = std::max<Index>(0, i - half);
    const Index hi = std::min<Index>(n - 1, i + half);
    out.values[i] = profile.values.segment(lo, hi - lo + 1).mean();
  }
  return out;
}

Real visibility(const RealProfile& profile, Real period_hint) {
  if (!(period_hint > 2.0 * profile.grid.dx()))
    throw NumericalGuardError("visibility: period hint must exceed 2*dx");
  const RealProfile s = smoothed(profile, period_hint / 8.0);
  const IndexRange r = central_range(profile.grid);
  const auto seg = s.values.segment(r.begin, r.size());
  const Real hi = seg.maxCoeff();
  const Real lo = seg.minCoeff();
  if (hi + lo <= 0.0) return 0.0;
  return (hi - lo) / (hi + lo);
}

Real interference_energy_ratio(const RealProfile& interference,
                               const RealProfile& total) {
  const IndexRange r = central_range(total.grid);
  const auto f = interference.values.segment(r.begin, r.size());
  const Real denom = total.values.segment(r.begin, r.size()).cwiseAbs().sum();
  if (denom == 0.0) return 0.0;
  return (f.array() - f.mean()).abs().sum() / denom;
}

Real estimate_period(const RealProfile& profile) {
  const IndexRange r = central_range(profile.grid);
  RealVector v = profile.values.segment(r.begin, r.size());
  v.array() -= v.mean();
  const Index n = v.size();

  RealVector ac = RealVector::Zero(n);
  for (Index lag = 0; lag < n; ++lag) {
    ac[lag] = v.head(n - lag).dot(v.tail(n - lag));
  }
  if (ac[0] <= 0.0) return 0.0;

  for (Index i = 1; i + 1 < n; ++i) {
    if (ac[i] > ac[i - 1] && ac[i] >= ac[i + 1] && ac[i] > 0.2 * ac[0]) {
      // Parabolic refinement around the integer-lag peak.
      const Real y0 = ac[i - 1], y1 = ac[i], y2 = ac[i + 1];
      const Real denom = y0 - 2.0 * y1 + y2;
      const Real delta = denom != 0.0 ? 0.5 * (y0 - y2) / denom : 0.0;
      return (static_cast<Real>(i) + delta) * profile.grid.dx();
    }
  }
  return 0.0;
}

} // namespace holosim
