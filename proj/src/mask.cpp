#include "holosim/mask.hpp"

#include "holosim/errors.hpp"

#include <cmath>
#include <sstream>

namespace holosim {

ObjectMask ObjectMask::unity() { return ObjectMask{}; }

ObjectMask ObjectMask::grating(Real period, Real slit_width, Real offset) {
  if (!(period > 0.0) || !(slit_width > 0.0) || slit_width > period) {
    std::ostringstream msg;
    msg << "grating mask requires 0 < slit width <= period, got b="
        << slit_width << " d=" << period;
    throw NumericalGuardError(msg.str());
  }
  ObjectMask m;
  m.kind_ = Kind::Grating;
  m.period_ = period;
  m.slit_width_ = slit_width;
  // IEEE remainder keeps whole-period translations bit-identical.
  m.offset_ = std::remainder(offset, period);
  return m;
}

ObjectMask ObjectMask::single_slit(Real width, Real center) {
  if (!(width > 0.0))
    throw NumericalGuardError("single_slit mask requires width > 0");
  ObjectMask m;
  m.kind_ = Kind::SingleSlit;
  m.slit_width_ = width;
  m.offset_ = center;
  return m;
}

ObjectMask ObjectMask::phase_mask(const SamplingGrid& grid,
                                  ComplexVector values) {
  if (values.size() != grid.n_points)
    throw NumericalGuardError("phase_mask: table length != grid.n_points");
  for (Index i = 0; i < values.size(); ++i) {
    if (std::abs(values[i]) > 1.0 + 1e-12)
      throw NumericalGuardError("phase_mask: |T| must not exceed 1");
  }
  ObjectMask m;
  m.kind_ = Kind::PhaseMask;
  m.table_grid_ = grid;
  m.table_ = std::move(values);
  return m;
}

ObjectMask ObjectMask::translated(Real shift) const {
  switch (kind_) {
    case Kind::Grating:
      return grating(period_, slit_width_, offset_ + shift);
    case Kind::SingleSlit:
      return single_slit(slit_width_, offset_ + shift);
    default:
      throw NumericalGuardError("translated: mask kind is not translatable");
  }
}

Complex ObjectMask::operator()(Real x) const {
  switch (kind_) {
    case Kind::Unity:
      return Complex{1.0, 0.0};
    case Kind::Grating: {
      // Distance to the nearest slit centre n*d + d/2 + offset.
      const Real r = std::remainder(x - offset_ - period_ / 2.0, period_);
      return std::abs(r) <= slit_width_ / 2.0 ? Complex{1.0, 0.0}
                                              : Complex{0.0, 0.0};
    }
    case Kind::SingleSlit:
      return std::abs(x - offset_) <= slit_width_ / 2.0 ? Complex{1.0, 0.0}
                                                        : Complex{0.0, 0.0};
    case Kind::PhaseMask: {
      const Index i = table_grid_->nearest_index(x);
      return table_[i];
    }
  }
  return Complex{0.0, 0.0};
}

ComplexVector ObjectMask::sample(const SamplingGrid& grid) const {
  if (kind_ == Kind::PhaseMask && !(grid == *table_grid_))
    throw NumericalGuardError("phase_mask sampled on a different grid");
  ComplexVector t(grid.n_points);
  for (Index i = 0; i < grid.n_points; ++i) t[i] = (*this)(grid.coord(i));
  return t;
}

bool ObjectMask::operator==(const ObjectMask& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case Kind::Unity:
      return true;
    case Kind::Grating:
      return period_ == other.period_ && slit_width_ == other.slit_width_ &&
             offset_ == other.offset_;
    case Kind::SingleSlit:
      return slit_width_ == other.slit_width_ && offset_ == other.offset_;
    case Kind::PhaseMask:
      return *table_grid_ == *other.table_grid_ &&
             table_.size() == other.table_.size() &&
             (table_ - other.table_).squaredNorm() == 0.0;
  }
  return false;
}

std::string ObjectMask::describe() const {
  std::ostringstream s;
  switch (kind_) {
    case Kind::Unity:
      s << "unity";
      break;
    case Kind::Grating:
      s << "grating(d=" << period_ * 1e6 << "um, b=" << slit_width_ * 1e6
        << "um)";
      break;
    case Kind::SingleSlit:
      s << "single_slit(w=" << slit_width_ * 1e6 << "um)";
      break;
    case Kind::PhaseMask:
      s << "phase_mask(" << table_.size() << " samples)";
      break;
  }
  return s.str();
}

} // namespace holosim
