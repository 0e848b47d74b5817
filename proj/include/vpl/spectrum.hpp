#pragma once

// Photon-pair spectra: the weak-drive rate, the resummed (nonperturbative)
// rate, their integrals, the resonance drive and parameter sweeps.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "vpl/fiber.hpp"
#include "vpl/kernel.hpp"

namespace vpl {

enum class EmissionMode { weak, full };
enum class FloorPolicy { saturate, reject };

std::string_view to_string(EmissionMode mode);
EmissionMode parse_emission_mode(std::string_view name);

struct SpectrumOptions {
  KernelVariant variant = KernelVariant::pv;
  /// |1 - nu^2 R| is clamped from below at this value before squaring.
  double denominator_floor = 1e-12;
  FloorPolicy floor_policy = FloorPolicy::saturate;
  /// Count both reflecting ends (x2); default is a single reflecting end.
  bool two_ends = false;

  double end_factor() const { return two_ends ? 2.0 : 1.0; }
};

inline constexpr int kDefaultGridPoints = 2001;

/// pi nu^2 x (2 - x) / 2.
double rate_weak(NormalizedFrequency x, double nu);

struct FullRate {
  double value;
  bool saturated;  // denominator hit the floor
};

/// rate_weak / |1 - nu^2 R(x)|^2. Throws DomainError near the band edges, NumericalError
/// when the floor is hit under FloorPolicy::reject.
FullRate evaluate_full_rate(NormalizedFrequency x, double nu, const SpectrumOptions& options = {});
double rate_full(NormalizedFrequency x, double nu, const SpectrumOptions& options = {});

/// Odd-sized grid on [kDomainGuard, 2 - kDomainGuard], mirror symmetric with x = 1 at the centre.
Eigen::ArrayXd symmetric_grid(int points = kDefaultGridPoints);

struct SpectralCurve {
  Eigen::ArrayXd grid;
  Eigen::ArrayXd weak;  // rate_weak on the grid (end factor applied)
  Eigen::ArrayXd full;  // rate_full on the grid (end factor applied)
  double nu = 0.0;
  KernelVariant variant = KernelVariant::pv;
  bool saturated = false;

  Eigen::ArrayXd enhancement() const { return full / weak; }
  const Eigen::ArrayXd& values(EmissionMode mode) const {
    return mode == EmissionMode::weak ? weak : full;
  }
};

SpectralCurve sample_spectrum(double nu, const SpectrumOptions& options = {},
                              int points = kDefaultGridPoints);

struct PeakShape {
  double peak_frequency;
  double fwhm;  // in units of omega0; 0 if the half-maximum is not crossed inside the grid
};

/// Peak location and full width at half maximum by linear interpolation on the samples.
PeakShape measure_peak(const Eigen::ArrayXd& grid, const Eigen::ArrayXd& values);

struct EmissionSummary {
  double total_rate = 0.0;     // int rate dx; photons per second in units of omega0
  double total_photons = 0.0;  // total_rate * omega0 / Gamma
  std::optional<double> yield;
  double peak_frequency = 1.0;
  double fwhm = 0.0;
  bool saturated = false;
  double quadrature_error = 0.0;  // absolute error estimate of total_rate
};

/// Integrates the selected spectrum over [kDomainGuard, 2 - kDomainGuard] (relative tolerance 1e-8)
/// and scales by omega0 / Gamma. Peak and width come from a sampled curve of `grid_points`.
EmissionSummary total_photons(double nu, double gamma_over_omega0, EmissionMode mode,
                              const SpectrumOptions& options = {},
                              int grid_points = kDefaultGridPoints);

/// Analytic integral of the weak spectrum: 2 pi nu^2 / 3 * omega0 / Gamma.
double weak_photons_closed_form(double nu, double omega0_over_gamma);

/// Weak-drive photon number with the coefficient as printed, pi^3 (4L/lambda0)^2 n2^2 I^2 omega0 / 3 Gamma.
double weak_photons_printed(const FiberParams& fiber);

struct YieldReport {
  double nu;
  double photons;         // first-principles N
  double pump_quanta;     // N0
  double yield;           // N / N0
  double yield_printed;   // pi^3 (4L/lambda0)^2 n2^2 I hbar omega0^2 / 3S
  EmissionSummary emission;
};

YieldReport photon_yield(const FiberParams& fiber, EmissionMode mode,
                         const SpectrumOptions& options = {});

/// Drive amplitude where 1 - nu^2 R(1) vanishes (R(1) is real), by bracketed root finding.
double find_resonance(KernelVariant variant);

/// Peak photon number estimate 9 pi^4 (omega0/Gamma)^2 / (4 nu0^2), quoted without derivation.
double peak_photon_estimate(double omega0_over_gamma, double nu0);

// ---- sweeps ----

enum class SweepParameter { nu, intensity, length, wavelength };

std::string_view to_string(SweepParameter parameter);
SweepParameter parse_sweep_parameter(std::string_view name);

struct SweepAxis {
  SweepParameter parameter;
  double from;
  double to;
  std::size_t steps;

  double value(std::size_t i) const;
};

inline constexpr std::size_t kMaxSweepPoints = 1'000'000;

struct SweepSpec {
  std::vector<SweepAxis> axes;  // one or two
  FiberParams base;
  EmissionMode mode = EmissionMode::full;
  SpectrumOptions options;
  int grid_points = kDefaultGridPoints;

  void validate() const;
  std::size_t point_count() const;
};

struct SweepRow {
  std::vector<double> parameters;
  double nu;
  double photons;
  double yield;
  double peak_frequency;
  double fwhm;
  bool saturated;
};

struct SweepTable {
  std::vector<std::string> parameter_names;
  std::vector<SweepRow> rows;

  std::size_t argmax_photons() const;
};

/// Row-major over the axes (last axis fastest). Rows are evaluated independently and may run
/// concurrently; the result does not depend on the worker count.
SweepTable sweep(const SweepSpec& spec);

}  // namespace vpl
