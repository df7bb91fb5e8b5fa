#pragma once

#include "holosim/grid.hpp"
#include "holosim/mask.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace holosim {

/// Raised-cosine window applied to the input (column) side of every
/// propagation kernel: flat over the central 90% of the window, falling to
/// zero over the outer 5% on each side. Hard truncation of the quadrature
/// aperture rings at the percent level across the central region even at
/// moderate distances; the soft edge restores the infinite-aperture
/// behaviour there. Sources and detectors use the same profile.
RealVector edge_taper(const SamplingGrid& grid);

/// Raised-cosine support of a given full width: flat inside, cosine fall-off
/// over `taper_length` at each side, zero beyond width/2.
RealVector tapered_support(const SamplingGrid& grid, Real width,
                           Real taper_length);

/// Discretised impulse response h(x_out, x_in) between two planes.
///
/// Entries carry the input quadrature weight dx and the edge taper, so
/// applying a kernel is a plain matrix-vector product and chaining kernels
/// is a plain matrix product.
struct KernelMeta {
  Real path_length = 0.0;                         // total z [m]
  std::vector<ObjectMask> masks;                  // embedded objects, source side first
  std::optional<std::pair<Real, Real>> object_legs;  // (source->object, object->output)
};

struct KernelMatrix {
  SamplingGrid grid_in;
  SamplingGrid grid_out;
  ComplexMatrix entries;  // grid_out.n_points x grid_in.n_points
  KernelMeta meta;

  bool embeds_object() const { return !meta.masks.empty(); }
};

/// Smallest propagation distance the grid can represent without aliasing
/// the quadratic kernel phase: dx <= lambda * z / window.
Real min_propagation_distance(const SamplingGrid& grid);

/// Free-space paraxial propagator over distance z:
///   h(x, x0) = sqrt(k/(i 2 pi z)) * exp(i k z) * exp(i k (x-x0)^2 / (2 z))
/// discretised with the dx weight and edge taper folded into the entries.
/// Rejects z <= 0 and undersampled configurations.
KernelMatrix fresnel_kernel(const SamplingGrid& grid, Real z);

/// Kernel-side mask application: scales column j by T(x_j). Equivalent to
/// kernel * diag(T sampled on grid_in).
KernelMatrix with_input_mask(KernelMatrix kernel, const ObjectMask& mask);

/// Propagation through a transmissive object: free flight z1 from the input
/// plane to the object, transmission T, free flight z2 to the output plane.
/// Built exactly as fresnel_kernel(z2) * diag(T) * fresnel_kernel(z1).
KernelMatrix object_kernel(const SamplingGrid& grid, const ObjectMask& mask,
                           Real z1, Real z2);

ComplexField apply(const KernelMatrix& kernel, const ComplexField& field);

/// Sequential propagation outer∘inner as a matrix product. Path lengths add
/// and embedded-object metadata concatenates.
KernelMatrix compose(const KernelMatrix& outer, const KernelMatrix& inner);

} // namespace holosim
