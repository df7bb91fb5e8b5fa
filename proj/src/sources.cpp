#include "holosim/sources.hpp"

#include "holosim/errors.hpp"

#include <algorithm>
#include <sstream>

namespace holosim {

SourceModel SourceModel::plane_coherent(Complex alpha) {
  SourceModel s;
  s.kind = Kind::PlaneCoherent;
  s.amplitude = alpha;
  return s;
}

SourceModel SourceModel::pinhole(Real position, Real width, Complex beta) {
  if (!(width > 0.0))
    throw NumericalGuardError("pinhole source requires width > 0");
  SourceModel s;
  s.kind = Kind::Pinhole;
  s.position = position;
  s.width = width;
  s.amplitude = beta;
  return s;
}

SourceModel SourceModel::incoherent_thermal(Real intensity,
                                            Real emitting_width) {
  if (!(intensity > 0.0))
    throw NumericalGuardError("incoherent source requires intensity > 0");
  SourceModel s;
  s.kind = Kind::IncoherentThermal;
  s.intensity = intensity;
  s.emitting_width = emitting_width;
  return s;
}

SourceModel SourceModel::entangled_pair(Real strength) {
  if (!(strength > 0.0))
    throw NumericalGuardError("entangled source requires strength > 0");
  SourceModel s;
  s.kind = Kind::EntangledPair;
  s.strength = strength;
  return s;
}

RealVector emission_window(const SamplingGrid& grid, Real width) {
  Real w = width > 0.0 ? width : 0.9 * grid.window;
  w = std::min(w, grid.window);
  const Real taper = std::min(0.05 * grid.window, w / 4.0);
  return tapered_support(grid, w, taper);
}

namespace {

void check_kernel_pair(const KernelMatrix& h_o, const KernelMatrix& h_r) {
  if (!(h_o.grid_in == h_r.grid_in) || !(h_o.grid_out == h_r.grid_out))
    throw NumericalGuardError(
        "classical_interference_term: kernels live on different grids");
}

} // namespace

CorrelationProfile classical_interference_term(const SourceModel& source,
                                               const KernelMatrix& h_object,
                                               const KernelMatrix& h_reference) {
  check_kernel_pair(h_object, h_reference);
  const SamplingGrid& grid = h_object.grid_in;

  switch (source.kind) {
    case SourceModel::Kind::PlaneCoherent: {
      const ComplexField in = make_constant_field(grid, source.amplitude);
      const ComplexVector e_o = apply(h_object, in).values;
      const ComplexVector e_r = apply(h_reference, in).values;
      return {h_object.grid_out, e_r.conjugate().cwiseProduct(e_o)};
    }
    case SourceModel::Kind::Pinhole: {
      if (source.width < grid.dx()) {
        std::ostringstream msg;
        msg << "pinhole width " << source.width
            << " m is below the grid step " << grid.dx() << " m";
        throw NumericalGuardError(msg.str());
      }
      const Index j = grid.nearest_index(source.position);
      const ComplexVector e_o = h_object.entries.col(j) * source.amplitude;
      const ComplexVector e_r = h_reference.entries.col(j) * source.amplitude;
      return {h_object.grid_out, e_r.conjugate().cwiseProduct(e_o)};
    }
    case SourceModel::Kind::IncoherentThermal: {
      // Diagonal contraction over the source coordinate: the discrete
      // delta absorbs 1/dx into the arbitrary overall scale.
      const RealVector w = emission_window(grid, source.emitting_width);
      ComplexVector values =
          source.intensity *
          (h_reference.entries.conjugate().cwiseProduct(h_object.entries) *
           w.cast<Complex>());
      return {h_object.grid_out, std::move(values)};
    }
    case SourceModel::Kind::EntangledPair:
      throw NumericalGuardError(
          "classical_interference_term: entangled source requires "
          "two_photon_amplitude");
  }
  throw NumericalGuardError("classical_interference_term: unknown source kind");
}

TwoPhotonAmplitude two_photon_amplitude(const KernelMatrix& h_signal,
                                        const KernelMatrix& h_idler) {
  if (!(h_signal.grid_in == h_idler.grid_in))
    throw NumericalGuardError(
        "two_photon_amplitude: kernels are not anchored at the same source plane");
  TwoPhotonAmplitude a;
  a.grid1 = h_signal.grid_out;
  a.grid2 = h_idler.grid_out;
  a.values = h_signal.entries * h_idler.entries.transpose();
  a.arm = h_signal.embeds_object() ? TwoPhotonAmplitude::Arm::Object
                                   : TwoPhotonAmplitude::Arm::Reference;
  return a;
}

} // namespace holosim
