#pragma once

#include "holosim/grid.hpp"

#include <optional>
#include <string>

namespace holosim {

/// Transmissive object T(x) with |T| <= 1.
///
/// The grating follows the convention T(x) = sum_n rect[(x - n*d - d/2)/b]
/// with rect(u) = 1 for |u| <= 1/2 (closed interval): slits of width b are
/// centred at n*d + d/2. A lateral offset shifts the whole pattern; it is
/// stored reduced modulo the period, so translating by a whole number of
/// periods reproduces the identical mask.
class ObjectMask {
public:
  enum class Kind { Unity, Grating, SingleSlit, PhaseMask };

  static ObjectMask unity();
  static ObjectMask grating(Real period, Real slit_width, Real offset = 0.0);
  static ObjectMask single_slit(Real width, Real center = 0.0);
  /// Tabulated complex transmission tied to a specific grid.
  static ObjectMask phase_mask(const SamplingGrid& grid, ComplexVector values);

  Kind kind() const { return kind_; }
  Real period() const { return period_; }
  Real slit_width() const { return slit_width_; }
  Real offset() const { return offset_; }

  /// Same pattern translated by `shift`.
  ObjectMask translated(Real shift) const;

  Complex operator()(Real x) const;

  /// T sampled on the grid points.
  ComplexVector sample(const SamplingGrid& grid) const;

  std::string describe() const;

  bool operator==(const ObjectMask& other) const;

private:
  ObjectMask() = default;

  Kind kind_ = Kind::Unity;
  Real period_ = 0.0;      // grating
  Real slit_width_ = 0.0;  // grating slit width or single-slit width
  Real offset_ = 0.0;      // grating lateral offset or slit centre
  std::optional<SamplingGrid> table_grid_;
  ComplexVector table_;
};

} // namespace holosim
