#include "vpl/fiber.hpp"

#include <cmath>
#include <string>

#include "vpl/constants.hpp"
#include "vpl/errors.hpp"

namespace vpl {

namespace {

void require_positive(double value, const char* name) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw ValidationError(std::string(name) + " must be positive and finite, got " +
                          std::to_string(value));
  }
}

}  // namespace

void FiberParams::validate() const {
  require_positive(n2, "n2");
  require_positive(length, "L");
  require_positive(area, "S");
  require_positive(lambda0, "lambda0");
  if (!std::isfinite(intensity) || intensity < 0.0) {
    throw ValidationError("I must be non-negative and finite, got " + std::to_string(intensity));
  }
  if (index_change() > kMaxIndexChange) {
    throw ValidationError("index change n2*I = " + std::to_string(index_change()) +
                          " exceeds the small-modulation bound " +
                          std::to_string(kMaxIndexChange));
  }
}

DriveParams derive_drive(const FiberParams& fiber) {
  fiber.validate();
  using constants::pi;
  using constants::speed_of_light;
  DriveParams drive{};
  drive.amplitude = fiber.n2 * fiber.intensity * fiber.length;
  drive.nu = 2.0 * pi * drive.amplitude / fiber.lambda0;
  drive.omega0 = 2.0 * pi * speed_of_light / fiber.lambda0;
  drive.gamma = speed_of_light / fiber.length;
  return drive;
}

double pump_quanta(const FiberParams& fiber) {
  fiber.validate();
  using constants::pi;
  using constants::reduced_planck;
  using constants::speed_of_light;
  const double duration = fiber.length / speed_of_light;
  const double photon_energy = 2.0 * pi * reduced_planck * speed_of_light / fiber.lambda0;
  return fiber.area * fiber.intensity * duration / photon_energy;
}

PulseDesign design_pulse(const FiberParams& fiber) {
  fiber.validate();
  using constants::speed_of_light;
  PulseDesign design{};
  design.optimal_intensity = fiber.lambda0 / (2.0 * fiber.n2 * fiber.length);
  design.optimal_energy = fiber.lambda0 * fiber.area / (2.0 * fiber.n2 * speed_of_light);
  design.optimal_power = design.optimal_intensity * fiber.area;
  design.duration = fiber.length / speed_of_light;
  design.pump_quanta = pump_quanta(fiber);

  // Evaluated directly: I_opt may exceed the small-modulation bound for very short fibers.
  design.nu_at_optimum =
      2.0 * constants::pi * fiber.n2 * design.optimal_intensity * fiber.length / fiber.lambda0;
  return design;
}

}  // namespace vpl
