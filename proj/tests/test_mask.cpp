#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "holosim/errors.hpp"
#include "holosim/mask.hpp"

using namespace holosim;

namespace {
const Real d = 400e-6;
const Real b = 200e-6;
}

TEST_CASE("grating slits sit at n*d + d/2") {
  const ObjectMask t = ObjectMask::grating(d, b);
  CHECK(t(200e-6).real() == 1.0);   // slit centre
  CHECK(t(-200e-6).real() == 1.0);  // n = -1
  CHECK(t(600e-6).real() == 1.0);   // n = +1
  CHECK(t(0.0).real() == 0.0);      // between slits
  CHECK(t(400e-6).real() == 0.0);
}

TEST_CASE("rect boundary is closed") {
  const ObjectMask t = ObjectMask::grating(d, b);
  // Slit centred at 200 um with width 200 um: edges at 100 and 300 um.
  CHECK(t(100e-6).real() == 1.0);
  CHECK(t(300e-6).real() == 1.0);
  CHECK(t(100e-6 - 1e-9).real() == 0.0);
  CHECK(t(300e-6 + 1e-9).real() == 0.0);
}

TEST_CASE("grating parameter validation") {
  CHECK_THROWS_AS(ObjectMask::grating(d, 0.0), NumericalGuardError);
  CHECK_THROWS_AS(ObjectMask::grating(d, d * 1.5), NumericalGuardError);
  CHECK_THROWS_AS(ObjectMask::grating(-d, b), NumericalGuardError);
  // b = d degenerates to a fully open mask.
  const ObjectMask open = ObjectMask::grating(d, d);
  const SamplingGrid g = make_grid(256, 4e-3, 800e-9);
  CHECK(open.sample(g).real().minCoeff() == 1.0);
}

TEST_CASE("translation by a whole period is bit-identical") {
  const SamplingGrid g = make_grid(2048, 8e-3, 800e-9);
  const ObjectMask base = ObjectMask::grating(d, b);
  for (int periods : {1, -1, 3}) {
    const ObjectMask shifted = base.translated(periods * d);
    const ComplexVector a = base.sample(g);
    const ComplexVector c = shifted.sample(g);
    CHECK((a - c).squaredNorm() == 0.0);
  }
}

TEST_CASE("half-period translation flips bright and dark") {
  const ObjectMask base = ObjectMask::grating(d, b);
  const ObjectMask shifted = base.translated(d / 2);
  CHECK(base(200e-6).real() == 1.0);
  CHECK(shifted(200e-6).real() == 0.0);
  CHECK(shifted(0.0).real() == 1.0);
}

TEST_CASE("unity and single slit masks") {
  const ObjectMask one = ObjectMask::unity();
  CHECK(one(1.234e-3) == Complex{1.0, 0.0});

  const ObjectMask slit = ObjectMask::single_slit(100e-6, 50e-6);
  CHECK(slit(50e-6).real() == 1.0);
  CHECK(slit(0.0).real() == 1.0);      // closed edge at centre-width/2
  CHECK(slit(100e-6).real() == 1.0);
  CHECK(slit(101e-6).real() == 0.0);
  CHECK(slit(-1e-6).real() == 0.0);
}

TEST_CASE("phase mask validation") {
  const SamplingGrid g = make_grid(64, 1e-3, 800e-9);
  ComplexVector values = ComplexVector::Constant(64, Complex{0.0, 1.0});
  const ObjectMask mask = ObjectMask::phase_mask(g, values);
  CHECK(mask(0.0) == Complex{0.0, 1.0});

  ComplexVector overdriven = values;
  overdriven[3] = Complex{1.5, 0.0};
  CHECK_THROWS_AS(ObjectMask::phase_mask(g, overdriven), NumericalGuardError);
  CHECK_THROWS_AS(ObjectMask::phase_mask(g, ComplexVector::Ones(32)),
                  NumericalGuardError);

  const SamplingGrid other = make_grid(128, 1e-3, 800e-9);
  CHECK_THROWS_AS(mask.sample(other), NumericalGuardError);
}
