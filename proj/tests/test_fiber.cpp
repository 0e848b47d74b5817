#include <doctest.h>

#include <limits>
#include <numbers>

#include "vpl/errors.hpp"
#include "vpl/fiber.hpp"

using namespace vpl;

TEST_CASE("reference fiber drive") {
  const DriveParams d = derive_drive(FiberParams{});
  CHECK(d.amplitude == doctest::Approx(3.5e-12).epsilon(1e-12));
  CHECK(d.nu == doctest::Approx(4.39823e-5).epsilon(1e-5));
  CHECK(d.gamma == doctest::Approx(2.99792458e6).epsilon(1e-12));
  CHECK(d.omega0 == doctest::Approx(3.76730e15).epsilon(1e-5));
  CHECK(d.omega0_over_gamma() == doctest::Approx(2.0 * std::numbers::pi * 100.0 / 0.5e-6));
}

TEST_CASE("zero intensity gives zero drive") {
  FiberParams p;
  p.intensity = 0.0;
  CHECK_NOTHROW(p.validate());
  CHECK(derive_drive(p).nu == 0.0);
  CHECK(pump_quanta(p) == 0.0);
}

TEST_CASE("optimal intensity drives nu = pi") {
  FiberParams p;
  p.intensity = design_pulse(p).optimal_intensity;
  const DriveParams d = derive_drive(p);
  CHECK(d.amplitude == doctest::Approx(0.25e-6).epsilon(1e-12));
  CHECK(d.nu == doctest::Approx(std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("pulse design for the reference fiber") {
  const PulseDesign d = design_pulse(FiberParams{});
  CHECK(d.optimal_intensity == doctest::Approx(7.142857142857e10).epsilon(1e-12));
  CHECK(d.optimal_energy == doctest::Approx(2.38260068e-6).epsilon(1e-8));
  CHECK(d.optimal_power == doctest::Approx(7.142857142857).epsilon(1e-12));
  CHECK(d.duration == doctest::Approx(3.33564095e-7).epsilon(1e-8));
  CHECK(d.pump_quanta == doctest::Approx(8.396e7).epsilon(1e-3));
  CHECK(std::abs(d.nu_at_optimum - std::numbers::pi) < 1e-12);
}

TEST_CASE("design scaling") {
  const FiberParams base;
  const PulseDesign ref = design_pulse(base);

  FiberParams wide = base;
  wide.area *= 2.0;
  const PulseDesign w = design_pulse(wide);
  CHECK(w.optimal_intensity == doctest::Approx(ref.optimal_intensity));
  CHECK(w.optimal_energy == doctest::Approx(2.0 * ref.optimal_energy));
  CHECK(w.optimal_power == doctest::Approx(2.0 * ref.optimal_power));

  FiberParams longer = base;
  longer.length *= 2.0;
  const PulseDesign l = design_pulse(longer);
  CHECK(l.optimal_intensity == doctest::Approx(0.5 * ref.optimal_intensity));
  CHECK(l.optimal_energy == doctest::Approx(ref.optimal_energy));

  // lambda0 S = 1e-17 m^3 by the same formula.
  FiberParams quoted = base;
  quoted.area = 1e-17 / quoted.lambda0;
  CHECK(design_pulse(quoted).optimal_energy == doctest::Approx(4.765e-7).epsilon(1e-3));
}

TEST_CASE("drive scales linearly in n2, I, L and inversely in lambda0") {
  const FiberParams base;
  const double nu = derive_drive(base).nu;
  FiberParams p = base;
  p.n2 *= 2.0;
  CHECK(derive_drive(p).nu == doctest::Approx(2.0 * nu));
  p = base;
  p.intensity *= 2.0;
  CHECK(derive_drive(p).nu == doctest::Approx(2.0 * nu));
  p = base;
  p.length *= 2.0;
  CHECK(derive_drive(p).nu == doctest::Approx(2.0 * nu));
  p = base;
  p.lambda0 *= 2.0;
  CHECK(derive_drive(p).nu == doctest::Approx(0.5 * nu));
}

TEST_CASE("fiber validation") {
  auto rejects = [](auto mutate) {
    FiberParams p;
    mutate(p);
    CHECK_THROWS_AS(p.validate(), ValidationError);
    CHECK_THROWS_AS(derive_drive(p), ValidationError);
  };
  rejects([](FiberParams& p) { p.n2 = 0.0; });
  rejects([](FiberParams& p) { p.length = -1.0; });
  rejects([](FiberParams& p) { p.area = 0.0; });
  rejects([](FiberParams& p) { p.lambda0 = 0.0; });
  rejects([](FiberParams& p) { p.intensity = -1.0; });
  rejects([](FiberParams& p) { p.intensity = 1e17; });  // n2 I = 3.5e-3
  rejects([](FiberParams& p) { p.n2 = std::numeric_limits<double>::quiet_NaN(); });
}

TEST_CASE("unit consistency") {
  const FiberParams p;
  const PulseDesign d = design_pulse(p);
  CHECK(d.optimal_intensity * d.duration * p.area ==
        doctest::Approx(d.optimal_energy).epsilon(1e-12));
  CHECK(derive_drive(p).gamma * p.length / 2.99792458e8 == doctest::Approx(1.0).epsilon(1e-15));
}
