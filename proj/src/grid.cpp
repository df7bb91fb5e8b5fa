#include "holosim/grid.hpp"

#include "holosim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace holosim {

Real SamplingGrid::wave_number() const {
  return 2.0 * std::numbers::pi / wavelength;
}

RealVector SamplingGrid::coords() const {
  RealVector x(n_points);
  for (Index i = 0; i < n_points; ++i) x[i] = coord(i);
  return x;
}

Index SamplingGrid::nearest_index(Real x) const {
  const Index i = static_cast<Index>(
      std::llround(x / dx() + static_cast<Real>(n_points / 2)));
  return std::clamp(i, Index{0}, n_points - 1);
}

IndexRange central_range(const SamplingGrid& grid, Real fraction) {
  const Index half = static_cast<Index>(
      std::llround(fraction * static_cast<Real>(grid.n_points) / 2.0));
  return {grid.n_points / 2 - half, grid.n_points / 2 + half};
}

SamplingGrid make_grid(Index n_points, Real window, Real wavelength) {
  if (n_points < 16 || n_points % 2 != 0) {
    std::ostringstream msg;
    msg << "make_grid: n_points must be even and >= 16, got " << n_points;
    throw NumericalGuardError(msg.str());
  }
  if (!(window > 0.0) || !(wavelength > 0.0)) {
    std::ostringstream msg;
    msg << "make_grid: window and wavelength must be positive, got window="
        << window << " wavelength=" << wavelength;
    throw NumericalGuardError(msg.str());
  }
  return SamplingGrid{n_points, window, wavelength};
}

SamplingGrid default_grid() { return make_grid(2048, 8e-3, 800e-9); }

ComplexField make_constant_field(const SamplingGrid& grid, Complex value) {
  return ComplexField{grid, ComplexVector::Constant(grid.n_points, value)};
}

Real energy(const ComplexField& field) {
  return field.values.squaredNorm() * field.grid.dx();
}

namespace {

void check_region(const SamplingGrid& a, const SamplingGrid& b,
                  const IndexRange& region) {
  if (!(a == b))
    throw NumericalGuardError("relative_l2_distance: grid mismatch");
  if (region.begin < 0 || region.end > a.n_points || region.size() <= 0)
    throw NumericalGuardError("relative_l2_distance: empty or out-of-range region");
}

template <typename Vec>
Real segment_distance(const Vec& a, const Vec& b, const IndexRange& r) {
  const Real ref = b.segment(r.begin, r.size()).norm();
  if (ref == 0.0)
    throw NumericalGuardError(
        "relative_l2_distance: reference is identically zero on the region");
  return (a.segment(r.begin, r.size()) - b.segment(r.begin, r.size())).norm() / ref;
}

} // namespace

Real relative_l2_distance(const ComplexField& a, const ComplexField& b,
                          const IndexRange& region) {
  check_region(a.grid, b.grid, region);
  return segment_distance(a.values, b.values, region);
}

Real relative_l2_distance(const RealProfile& a, const RealProfile& b,
                          const IndexRange& region) {
  check_region(a.grid, b.grid, region);
  return segment_distance(a.values, b.values, region);
}

} // namespace holosim
