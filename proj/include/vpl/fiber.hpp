#pragma once

// Laboratory description of the fiber and the standing-wave pump, and its
// reduction to the dimensionless drive of the pair-emission theory.

namespace vpl {

/// Largest admissible Kerr index change n2 * I; the theory assumes |dn| << 1.
inline constexpr double kMaxIndexChange = 1e-3;

struct FiberParams {
  double n2 = 3.5e-20;       // nonlinear refractive index, m^2/W
  double length = 100.0;     // L, m
  double area = 1e-10;       // S, m^2
  double lambda0 = 0.5e-6;   // vacuum pump wavelength, m
  double intensity = 1e6;    // I, W/m^2

  double index_change() const { return n2 * intensity; }

  /// Throws ValidationError unless n2, L, S, lambda0 > 0, I >= 0 and n2 I <= kMaxIndexChange.
  void validate() const;
};

struct DriveParams {
  double amplitude;  // a = n2 I L, m
  double nu;         // omega0 a / c
  double omega0;     // rad/s
  double gamma;      // c / L, 1/s

  double omega0_over_gamma() const { return omega0 / gamma; }
};

struct PulseDesign {
  double optimal_intensity;  // lambda0 / (2 n2 L), W/m^2
  double optimal_energy;     // lambda0 S / (2 n2 c), J
  double optimal_power;      // I_opt S, W
  double duration;           // L / c, s
  double pump_quanta;        // S I / (Gamma hbar omega0) at the configured intensity
  double nu_at_optimum;      // drive amplitude at I_opt
};

DriveParams derive_drive(const FiberParams& fiber);
PulseDesign design_pulse(const FiberParams& fiber);

/// Number of pump quanta S I / (Gamma hbar omega0) in one pulse of duration L / c.
double pump_quanta(const FiberParams& fiber);

}  // namespace vpl
