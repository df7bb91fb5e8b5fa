#include "holosim/kernels.hpp"

#include "holosim/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace holosim {

namespace {
constexpr Real kEdgeTaperFraction = 0.05;
}

RealVector tapered_support(const SamplingGrid& grid, Real width,
                           Real taper_length) {
  RealVector w(grid.n_points);
  const Real half = width / 2.0;
  const Real flat = half - taper_length;
  for (Index i = 0; i < grid.n_points; ++i) {
    const Real ax = std::abs(grid.coord(i));
    if (ax > half) {
      w[i] = 0.0;
    } else if (ax <= flat || taper_length <= 0.0) {
      w[i] = 1.0;
    } else {
      const Real t = (ax - flat) / taper_length;
      w[i] = 0.5 * (1.0 + std::cos(std::numbers::pi * t));
    }
  }
  return w;
}

RealVector edge_taper(const SamplingGrid& grid) {
  return tapered_support(grid, grid.window, kEdgeTaperFraction * grid.window);
}

Real min_propagation_distance(const SamplingGrid& grid) {
  return grid.dx() * grid.window / grid.wavelength;
}

KernelMatrix fresnel_kernel(const SamplingGrid& grid, Real z) {
  if (!(z > 0.0)) {
    std::ostringstream msg;
    msg << "fresnel_kernel: propagation distance must be positive, got z="
        << z;
    throw NumericalGuardError(msg.str());
  }
  const Real dx = grid.dx();
  const Real guard = grid.wavelength * z / grid.window;
  if (dx > guard) {
    std::ostringstream msg;
    msg << "fresnel_kernel: undersampled quadratic phase (dx=" << dx
        << " m > lambda*z/window=" << guard << " m); need z >= "
        << min_propagation_distance(grid) << " m or window <= "
        << grid.wavelength * z / dx << " m";
    throw NumericalGuardError(msg.str());
  }

  const Real k = grid.wave_number();
  // sqrt(k/(i 2 pi z)) = sqrt(k/(2 pi z)) * exp(-i pi/4), principal branch.
  const Complex prefactor = std::sqrt(k / (2.0 * std::numbers::pi * z)) *
                            std::polar(1.0, -std::numbers::pi / 4.0) *
                            std::polar(1.0, k * z) * dx;

  const RealVector x = grid.coords();
  const RealVector w = edge_taper(grid);
  ComplexMatrix entries(grid.n_points, grid.n_points);
  for (Index j = 0; j < grid.n_points; ++j) {
    const Complex col_scale = prefactor * w[j];
    for (Index i = 0; i < grid.n_points; ++i) {
      const Real u = x[i] - x[j];
      entries(i, j) = col_scale * std::polar(1.0, k * u * u / (2.0 * z));
    }
  }

  KernelMatrix kernel;
  kernel.grid_in = grid;
  kernel.grid_out = grid;
  kernel.entries = std::move(entries);
  kernel.meta.path_length = z;
  return kernel;
}

KernelMatrix with_input_mask(KernelMatrix kernel, const ObjectMask& mask) {
  const ComplexVector t = mask.sample(kernel.grid_in);
  kernel.entries = kernel.entries * t.asDiagonal();
  kernel.meta.masks.insert(kernel.meta.masks.begin(), mask);
  return kernel;
}

KernelMatrix object_kernel(const SamplingGrid& grid, const ObjectMask& mask,
                           Real z1, Real z2) {
  KernelMatrix kernel =
      compose(with_input_mask(fresnel_kernel(grid, z2), mask),
              fresnel_kernel(grid, z1));
  kernel.meta.object_legs = std::make_pair(z1, z2);
  return kernel;
}

ComplexField apply(const KernelMatrix& kernel, const ComplexField& field) {
  if (!(field.grid == kernel.grid_in))
    throw NumericalGuardError("apply: field grid != kernel input grid");
  return ComplexField{kernel.grid_out, kernel.entries * field.values};
}

KernelMatrix compose(const KernelMatrix& outer, const KernelMatrix& inner) {
  if (!(inner.grid_out == outer.grid_in))
    throw NumericalGuardError("compose: inner output grid != outer input grid");
  KernelMatrix kernel;
  kernel.grid_in = inner.grid_in;
  kernel.grid_out = outer.grid_out;
  kernel.entries = outer.entries * inner.entries;
  kernel.meta.path_length = outer.meta.path_length + inner.meta.path_length;
  kernel.meta.masks = inner.meta.masks;
  kernel.meta.masks.insert(kernel.meta.masks.end(), outer.meta.masks.begin(),
                           outer.meta.masks.end());
  return kernel;
}

} // namespace holosim
