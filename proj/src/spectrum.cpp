#include "vpl/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "vpl/constants.hpp"
#include "vpl/errors.hpp"
#include "vpl/parallel.hpp"

namespace vpl {

namespace {

void require_drive(double nu) {
  if (!std::isfinite(nu) || nu < 0.0) {
    throw DomainError("drive amplitude nu must be non-negative and finite, got " +
                      std::to_string(nu));
  }
}

constexpr double kQuadratureRelTolerance = 1e-8;

}  // namespace

std::string_view to_string(EmissionMode mode) { return mode == EmissionMode::weak ? "weak" : "full"; }

EmissionMode parse_emission_mode(std::string_view name) {
  if (name == "weak") return EmissionMode::weak;
  if (name == "full") return EmissionMode::full;
  throw ValidationError("unknown emission mode '" + std::string(name) + "' (expected weak or full)");
}

double rate_weak(NormalizedFrequency x, double nu) {
  require_drive(nu);
  return nu * nu * weak_band_shape(x);
}

FullRate evaluate_full_rate(NormalizedFrequency x, double nu, const SpectrumOptions& options) {
  require_drive(nu);
  const std::complex<double> r = response_r(x, options.variant);
  double denominator = std::abs(1.0 - nu * nu * r);
  bool saturated = false;
  if (denominator < options.denominator_floor) {
    if (options.floor_policy == FloorPolicy::reject) {
      throw NumericalError("degenerate resonance denominator |1 - nu^2 R| = " +
                           std::to_string(denominator) + " at x = " + std::to_string(x.value()));
    }
    denominator = options.denominator_floor;
    saturated = true;
  }
  return {rate_weak(x, nu) / (denominator * denominator), saturated};
}

double rate_full(NormalizedFrequency x, double nu, const SpectrumOptions& options) {
  return evaluate_full_rate(x, nu, options).value;
}

Eigen::ArrayXd symmetric_grid(int points) {
  if (points < 3 || points % 2 == 0) {
    throw ValidationError("grid_points must be odd and >= 3, got " + std::to_string(points));
  }
  Eigen::ArrayXd grid(points);
  const int mid = points / 2;
  // The upper half is laid out first; 2 - u is exact for u in [1, 2], so every lower point is
  // the exact mirror of its partner and x (2 - x) evaluates identically on both.
  double top = 2.0 - kDomainGuard;
  if (2.0 - top < kDomainGuard) top = std::nextafter(top, 1.0);
  const double step = (top - 1.0) / mid;
  for (int i = 0; i < mid; ++i) {
    grid[points - 1 - i] = top - i * step;
    grid[i] = 2.0 - grid[points - 1 - i];
  }
  grid[mid] = 1.0;
  return grid;
}

SpectralCurve sample_spectrum(double nu, const SpectrumOptions& options, int points) {
  require_drive(nu);
  SpectralCurve curve;
  curve.grid = symmetric_grid(points);
  curve.nu = nu;
  curve.variant = options.variant;
  curve.weak.resize(points);
  curve.full.resize(points);
  const double factor = options.end_factor();
  for (int i = 0; i < points; ++i) {
    const NormalizedFrequency x(curve.grid[i]);
    const FullRate full = evaluate_full_rate(x, nu, options);
    curve.weak[i] = factor * rate_weak(x, nu);
    curve.full[i] = factor * full.value;
    curve.saturated = curve.saturated || full.saturated;
  }
  return curve;
}

PeakShape measure_peak(const Eigen::ArrayXd& grid, const Eigen::ArrayXd& values) {
  if (grid.size() != values.size() || grid.size() < 2) {
    throw ValidationError("peak measurement needs matching grid and values of size >= 2");
  }
  Eigen::Index top = 0;
  const double peak = values.maxCoeff(&top);
  if (!(peak > 0.0)) return {grid[top], 0.0};
  const double half = 0.5 * peak;

  Eigen::Index left = top;
  while (left > 0 && values[left] > half) --left;
  Eigen::Index right = top;
  while (right < values.size() - 1 && values[right] > half) ++right;
  if (values[left] > half || values[right] > half) return {grid[top], 0.0};

  const auto cross = [&](Eigen::Index below, Eigen::Index above) {
    return grid[below] + (half - values[below]) * (grid[above] - grid[below]) /
                             (values[above] - values[below]);
  };
  return {grid[top], cross(right, right - 1) - cross(left, left + 1)};
}

EmissionSummary total_photons(double nu, double gamma_over_omega0, EmissionMode mode,
                              const SpectrumOptions& options, int grid_points) {
  require_drive(nu);
  if (!std::isfinite(gamma_over_omega0) || gamma_over_omega0 <= 0.0) {
    throw ValidationError("Gamma / omega0 must be positive");
  }
  bool saturated = false;
  const auto density = [&](double x) {
    const NormalizedFrequency f(x);
    if (mode == EmissionMode::weak) return rate_weak(f, nu);
    const FullRate r = evaluate_full_rate(f, nu, options);
    saturated = saturated || r.saturated;
    return r.value;
  };

  using Rule = boost::math::quadrature::gauss_kronrod<double, 61>;
  double integral = 0.0;
  double error_sum = 0.0;
  // The resonance sits at x = 1; splitting there keeps it on a panel boundary.
  for (const auto& [a, b] : {std::pair{kDomainGuard, 1.0}, std::pair{1.0, 2.0 - kDomainGuard}}) {
    double error = 0.0;
    double l1 = 0.0;
    integral += Rule::integrate(density, a, b, 60, kQuadratureRelTolerance * 0.1, &error, &l1);
    error_sum += error;
  }
  if (!std::isfinite(integral) || error_sum > kQuadratureRelTolerance * std::abs(integral)) {
    if (!(integral == 0.0 && error_sum == 0.0)) {
      throw NumericalError("spectral quadrature did not reach relative tolerance 1e-8 (nu = " +
                           std::to_string(nu) + ", error estimate " + std::to_string(error_sum) +
                           ")");
    }
  }

  EmissionSummary summary;
  const double factor = options.end_factor();
  summary.total_rate = factor * integral;
  summary.total_photons = summary.total_rate / gamma_over_omega0;
  summary.quadrature_error = factor * error_sum;

  if (mode == EmissionMode::weak) {
    const double closed = factor * weak_photons_closed_form(nu, 1.0);
    if (std::abs(summary.total_rate - closed) > 1e-6 * closed) {
      throw NumericalError("weak-drive quadrature disagrees with the analytic integral");
    }
  }

  const SpectralCurve curve = sample_spectrum(nu, options, grid_points);
  const PeakShape shape = measure_peak(curve.grid, curve.values(mode));
  summary.peak_frequency = shape.peak_frequency;
  summary.fwhm = shape.fwhm;
  summary.saturated = saturated || (mode == EmissionMode::full && curve.saturated);
  return summary;
}

double weak_photons_closed_form(double nu, double omega0_over_gamma) {
  return 2.0 * constants::pi * nu * nu / 3.0 * omega0_over_gamma;
}

double weak_photons_printed(const FiberParams& fiber) {
  const DriveParams drive = derive_drive(fiber);
  const double pi3 = std::pow(constants::pi, 3);
  const double ratio = 4.0 * fiber.length / fiber.lambda0;
  const double index = fiber.n2 * fiber.intensity;
  return pi3 * ratio * ratio * index * index * drive.omega0 / (3.0 * drive.gamma);
}

YieldReport photon_yield(const FiberParams& fiber, EmissionMode mode,
                         const SpectrumOptions& options) {
  const DriveParams drive = derive_drive(fiber);
  YieldReport report{};
  report.nu = drive.nu;
  report.emission = total_photons(drive.nu, 1.0 / drive.omega0_over_gamma(), mode, options);
  report.photons = report.emission.total_photons;
  report.pump_quanta = pump_quanta(fiber);
  report.yield = report.pump_quanta > 0.0 ? report.photons / report.pump_quanta : 0.0;
  report.emission.yield = report.yield;

  const double ratio = 4.0 * fiber.length / fiber.lambda0;
  report.yield_printed = std::pow(constants::pi, 3) * ratio * ratio * fiber.n2 * fiber.n2 *
                         fiber.intensity * constants::reduced_planck * drive.omega0 *
                         drive.omega0 / (3.0 * fiber.area);
  return report;
}

double find_resonance(KernelVariant variant) {
  const double r1 = response_r(NormalizedFrequency(1.0), variant).real();
  const auto mismatch = [r1](double nu) { return 1.0 - nu * nu * r1; };
  boost::math::tools::eps_tolerance<double> tolerance(52);
  std::uintmax_t iterations = 200;
  const auto [lo, hi] = boost::math::tools::toms748_solve(mismatch, 0.1, 100.0, tolerance, iterations);
  const double nu0 = 0.5 * (lo + hi);
  if (std::abs(mismatch(nu0)) > 1e-10) {
    throw NumericalError("resonance root finding did not converge");
  }
  return nu0;
}

double peak_photon_estimate(double omega0_over_gamma, double nu0) {
  const double pi4 = std::pow(constants::pi, 4);
  return 9.0 * pi4 * omega0_over_gamma * omega0_over_gamma / (4.0 * nu0 * nu0);
}

// ---- sweeps ----

std::string_view to_string(SweepParameter parameter) {
  switch (parameter) {
    case SweepParameter::nu: return "nu";
    case SweepParameter::intensity: return "I";
    case SweepParameter::length: return "L";
    case SweepParameter::wavelength: return "lambda0";
  }
  return "?";
}

SweepParameter parse_sweep_parameter(std::string_view name) {
  if (name == "nu") return SweepParameter::nu;
  if (name == "I") return SweepParameter::intensity;
  if (name == "L") return SweepParameter::length;
  if (name == "lambda0") return SweepParameter::wavelength;
  throw ValidationError("unknown sweep parameter '" + std::string(name) +
                        "' (expected nu, I, L or lambda0)");
}

double SweepAxis::value(std::size_t i) const {
  if (steps <= 1) return from;
  return from + (to - from) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

std::size_t SweepSpec::point_count() const {
  std::size_t n = 1;
  for (const SweepAxis& axis : axes) n *= axis.steps;
  return n;
}

void SweepSpec::validate() const {
  if (axes.empty() || axes.size() > 2) {
    throw ValidationError("a sweep needs one or two axes");
  }
  if (axes.size() == 2 && axes[0].parameter == axes[1].parameter) {
    throw ValidationError("sweep axes must name different parameters");
  }
  std::size_t total = 1;
  for (const SweepAxis& axis : axes) {
    const std::string name(to_string(axis.parameter));
    if (axis.steps == 0) throw ValidationError("empty sweep range for " + name);
    if (!std::isfinite(axis.from) || !std::isfinite(axis.to) || axis.from > axis.to) {
      throw ValidationError("invalid sweep range for " + name);
    }
    const bool zero_allowed =
        axis.parameter == SweepParameter::nu || axis.parameter == SweepParameter::intensity;
    if (axis.from < 0.0 || (!zero_allowed && axis.from <= 0.0)) {
      throw ValidationError("sweep range for " + name + " must be positive");
    }
    if (axis.steps > kMaxSweepPoints / total) {
      throw ValidationError("sweep grid exceeds " + std::to_string(kMaxSweepPoints) + " points");
    }
    total *= axis.steps;
  }
  base.validate();
  symmetric_grid(grid_points);
}

std::size_t SweepTable::argmax_photons() const {
  if (rows.empty()) throw ValidationError("empty sweep table");
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].photons > rows[best].photons) best = i;
  }
  return best;
}

SweepTable sweep(const SweepSpec& spec) {
  spec.validate();
  SweepTable table;
  for (const SweepAxis& axis : spec.axes) table.parameter_names.emplace_back(to_string(axis.parameter));

  const std::size_t n = spec.point_count();
  table.rows.resize(n);
  parallel_for(n, [&](std::size_t index) {
    std::vector<std::size_t> coordinates(spec.axes.size());
    std::size_t rest = index;
    for (std::size_t a = spec.axes.size(); a-- > 0;) {
      coordinates[a] = rest % spec.axes[a].steps;
      rest /= spec.axes[a].steps;
    }

    FiberParams fiber = spec.base;
    std::optional<double> nu_override;
    SweepRow row{};
    for (std::size_t a = 0; a < spec.axes.size(); ++a) {
      const double v = spec.axes[a].value(coordinates[a]);
      row.parameters.push_back(v);
      switch (spec.axes[a].parameter) {
        case SweepParameter::nu: nu_override = v; break;
        case SweepParameter::intensity: fiber.intensity = v; break;
        case SweepParameter::length: fiber.length = v; break;
        case SweepParameter::wavelength: fiber.lambda0 = v; break;
      }
    }
    const DriveParams drive = derive_drive(fiber);
    row.nu = nu_override.value_or(drive.nu);
    const EmissionSummary summary =
        total_photons(row.nu, 1.0 / drive.omega0_over_gamma(), spec.mode, spec.options, spec.grid_points);
    const double quanta = pump_quanta(fiber);
    row.photons = summary.total_photons;
    row.yield = quanta > 0.0 ? summary.total_photons / quanta : 0.0;
    row.peak_frequency = summary.peak_frequency;
    row.fwhm = summary.fwhm;
    row.saturated = summary.saturated;
    table.rows[index] = std::move(row);
  });
  return table;
}

}  // namespace vpl
