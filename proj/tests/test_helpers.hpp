#pragma once

#include "holosim/grid.hpp"
#include "holosim/kernels.hpp"

#include <cmath>
#include <numbers>

namespace holosim::testing {

/// Direct-sum Fresnel propagation, written independently of the kernel
/// matrix machinery (plain loops over the same quadrature nodes), used as
/// the brute-force oracle for the propagation tests.
inline ComplexVector brute_force_fresnel(const SamplingGrid& grid,
                                         const ComplexVector& input, Real z) {
  const Real k = grid.wave_number();
  const Real dx = grid.dx();
  const RealVector aperture = edge_taper(grid);
  const Complex pref = std::sqrt(k / (2.0 * std::numbers::pi * z)) *
                       std::polar(1.0, k * z - std::numbers::pi / 4.0) * dx;
  ComplexVector out(grid.n_points);
  for (Index i = 0; i < grid.n_points; ++i) {
    const Real x = grid.coord(i);
    Complex acc{0.0, 0.0};
    for (Index j = 0; j < grid.n_points; ++j) {
      const Real u = x - grid.coord(j);
      acc += aperture[j] * input[j] *
             std::polar(1.0, k * u * u / (2.0 * z));
    }
    out[i] = pref * acc;
  }
  return out;
}

/// Relative L2 over the central fraction of the grid after peak
/// normalization of both operands.
template <typename VecA, typename VecB>
Real central_pattern_distance(const SamplingGrid& grid, const VecA& a,
                              const VecB& b, Real fraction = 0.6) {
  const IndexRange r = central_range(grid, fraction);
  const auto sa = a.segment(r.begin, r.size());
  const auto sb = b.segment(r.begin, r.size());
  const Real pa = sa.cwiseAbs().maxCoeff();
  const Real pb = sb.cwiseAbs().maxCoeff();
  return (sa / pa - sb / pb).matrix().norm() / (sb / pb).matrix().norm();
}

inline ComplexVector gaussian_field(const SamplingGrid& grid, Real sigma) {
  ComplexVector v(grid.n_points);
  for (Index i = 0; i < grid.n_points; ++i) {
    const Real x = grid.coord(i);
    v[i] = std::exp(-x * x / (2.0 * sigma * sigma));
  }
  return v;
}

} // namespace holosim::testing
