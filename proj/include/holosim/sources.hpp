#pragma once

#include "holosim/grid.hpp"
#include "holosim/kernels.hpp"

namespace holosim {

/// Transverse correlation model of the illumination.
///
///  - plane_coherent:    <E*(x0') E(x0)> = |alpha|^2, position independent.
///  - pinhole:           source reduced to one effective point of strength
///                        beta = E(x0) * width (Gabor-style spatial filter).
///  - incoherent_thermal: <E*(x0') E(x0)> = I0 * delta(x0' - x0) over a
///                        finite emitting width.
///  - entangled_pair:    ideal two-photon wavepacket C(x1,x2) = s*delta(x1-x2).
struct SourceModel {
  enum class Kind { PlaneCoherent, Pinhole, IncoherentThermal, EntangledPair };

  Kind kind = Kind::PlaneCoherent;
  Complex amplitude{1.0, 0.0};  // alpha (plane) or beta (pinhole)
  Real position = 0.0;          // pinhole centre [m]
  Real width = 0.0;             // pinhole width [m]
  Real intensity = 1.0;         // I0
  Real emitting_width = 0.0;    // incoherent source extent [m]; 0 = default
  Real strength = 1.0;          // entangled-pair scale

  static SourceModel plane_coherent(Complex alpha = {1.0, 0.0});
  static SourceModel pinhole(Real position, Real width,
                             Complex beta = {1.0, 0.0});
  static SourceModel incoherent_thermal(Real intensity = 1.0,
                                        Real emitting_width = 0.0);
  static SourceModel entangled_pair(Real strength = 1.0);

  bool is_classical() const { return kind != Kind::EntangledPair; }

  bool operator==(const SourceModel&) const = default;
};

/// Emission intensity profile of the extended incoherent source: flat over
/// the requested width minus the taper, raised-cosine fall-off at the sides.
/// width = 0 selects the default of 90% of the grid window.
RealVector emission_window(const SamplingGrid& grid, Real width = 0.0);

/// First-order field correlation <E_r*(x) E_o(x)> across the recording
/// plane, before any phase-knob substitution.
struct CorrelationProfile {
  SamplingGrid grid;
  ComplexVector values;
};

/// Two-photon detection amplitude A(x1, x2) for one interferometer arm.
struct TwoPhotonAmplitude {
  enum class Arm { Object, Reference };
  SamplingGrid grid1;  // signal detector plane (rows)
  SamplingGrid grid2;  // idler detector plane (columns)
  ComplexMatrix values;
  Arm arm = Arm::Reference;
};

/// Propagates the source correlation through the object/reference kernel
/// pair. Rejects entangled sources (use two_photon_amplitude) and pinholes
/// narrower than one grid step.
CorrelationProfile classical_interference_term(const SourceModel& source,
                                               const KernelMatrix& h_object,
                                               const KernelMatrix& h_reference);

/// Joint amplitude of the ideal delta-correlated pair,
///   A(x1, x2) = sum_x0 h_signal(x1, x0) * h_idler(x2, x0),
/// i.e. one photon propagating sequentially through both kernels. The arm
/// label follows the signal kernel (object if it embeds a mask).
TwoPhotonAmplitude two_photon_amplitude(const KernelMatrix& h_signal,
                                        const KernelMatrix& h_idler);

} // namespace holosim
