#pragma once

#include <Eigen/Core>

#include <complex>

namespace holosim {

using Real = double;
using Complex = std::complex<double>;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

/// Uniform 1-D transverse sampling lattice plus the illumination wavelength.
///
/// Coordinates are x[i] = (i - n_points/2) * dx with dx = window / n_points,
/// so the lattice is symmetric about zero up to one sample.
struct SamplingGrid {
  Index n_points = 0;
  Real window = 0.0;      // physical width [m]
  Real wavelength = 0.0;  // [m]

  Real dx() const { return window / static_cast<Real>(n_points); }
  Real wave_number() const;  // k = 2*pi/wavelength [rad/m]
  Real coord(Index i) const {
    return (static_cast<Real>(i) - static_cast<Real>(n_points / 2)) * dx();
  }
  RealVector coords() const;

  /// Index of the sample nearest to physical position x.
  Index nearest_index(Real x) const;

  bool operator==(const SamplingGrid& other) const = default;
};

/// Contiguous index range [begin, end) used to restrict norms and
/// comparisons to a sub-window.
struct IndexRange {
  Index begin = 0;
  Index end = 0;
  Index size() const { return end - begin; }
};

/// Central fraction of the grid, e.g. fraction = 0.6 keeps |x| <= 0.3*window.
IndexRange central_range(const SamplingGrid& grid, Real fraction = 0.6);

/// Sampled complex amplitude over one transverse plane.
struct ComplexField {
  SamplingGrid grid;
  ComplexVector values;
};

/// Sampled nonnegative real readout (intensity, coincidence-rate slice).
struct RealProfile {
  SamplingGrid grid;
  RealVector values;
};

SamplingGrid make_grid(Index n_points, Real window, Real wavelength);

/// Default lattice: 2048 samples over 8 mm at 800 nm. Resolves the
/// quadratic Fresnel phase for every propagation distance used by the
/// built-in scenarios while keeping kernel matrices around 64 MB.
SamplingGrid default_grid();

ComplexField make_constant_field(const SamplingGrid& grid, Complex value);

/// Discrete L2 energy sum(|values|^2) * dx.
Real energy(const ComplexField& field);

/// ||a - b||_2 / ||b||_2 restricted to an index range. Throws on grid
/// mismatch or an identically-zero reference on the range.
Real relative_l2_distance(const ComplexField& a, const ComplexField& b,
                          const IndexRange& region);
Real relative_l2_distance(const RealProfile& a, const RealProfile& b,
                          const IndexRange& region);

/// Expression-level counterpart used by the engines and tests directly.
template <typename DerivedA, typename DerivedB>
Real relative_l2_distance(const Eigen::MatrixBase<DerivedA>& a,
                          const Eigen::MatrixBase<DerivedB>& b) {
  const Real ref = b.norm();
  return (a - b).norm() / ref;
}

} // namespace holosim
