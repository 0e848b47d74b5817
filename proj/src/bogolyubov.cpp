#include "vpl/bogolyubov.hpp"

#include <cmath>
#include <string>

#include "vpl/constants.hpp"
#include "vpl/errors.hpp"
#include "vpl/parallel.hpp"
#include "vpl/spectrum.hpp"

namespace vpl {

namespace {

using RealPair = Eigen::Array<double, Eigen::Dynamic, 2>;  // columns: real, imaginary part

constexpr double kRunawayAmplitude = 1e100;
constexpr std::size_t kRunawayCheckInterval = 256;

// Fourth-order triple-jump weights for a symmetric second-order step.
const double kJumpOuter = 1.0 / (2.0 - std::cbrt(2.0));
const double kJumpInner = -std::cbrt(2.0) * kJumpOuter;

struct Rotation {
  Eigen::ArrayXd cos_wt;
  Eigen::ArrayXd sin_wt_over_w;
  Eigen::ArrayXd w_sin_wt;

  Rotation(const Eigen::ArrayXd& w, double tau)
      : cos_wt((w * tau).cos()), sin_wt_over_w((w * tau).sin() / w), w_sin_wt(w * (w * tau).sin()) {}

  void apply(RealPair& x, RealPair& v) const {
    const RealPair x_new = x.colwise() * cos_wt + v.colwise() * sin_wt_over_w;
    v = v.colwise() * cos_wt - x.colwise() * w_sin_wt;
    x = x_new;
  }
};

RealPair split(const Eigen::ArrayXcd& z) {
  RealPair out(z.size(), 2);
  out.col(0) = z.real();
  out.col(1) = z.imag();
  return out;
}

Eigen::ArrayXcd join(const RealPair& p) {
  Eigen::ArrayXcd z(p.rows());
  z.real() = p.col(0);
  z.imag() = p.col(1);
  return z;
}

}  // namespace

ModeSystem ModeSystem::for_drive(double nu, std::size_t modes, double cutoff, double transits,
                                 double ramp_periods) {
  ModeSystem system;
  system.mode_count = modes;
  system.cutoff = cutoff;
  system.coupling = 2.0 * nu * system.spacing();
  system.total_time = transits * system.transit_time();
  system.ramp_time = ramp_periods * constants::pi;
  return system;
}

double ModeSystem::transit_time() const { return constants::pi / spacing(); }

double ModeSystem::time_step() const {
  return (2.0 * constants::pi / cutoff) / static_cast<double>(step_divisions);
}

std::size_t ModeSystem::step_count() const {
  return static_cast<std::size_t>(std::ceil(total_time / time_step()));
}

Eigen::ArrayXd ModeSystem::frequencies() const {
  return Eigen::ArrayXd::LinSpaced(static_cast<Eigen::Index>(mode_count), 1.0,
                                   static_cast<double>(mode_count)) *
         spacing();
}

double ModeSystem::envelope(double t) const {
  if (t >= ramp_time) return 1.0;
  if (t <= 0.0) return 0.0;
  return 0.5 * (1.0 - std::cos(constants::pi * t / ramp_time));
}

void ModeSystem::validate() const {
  if (mode_count < 2) throw ValidationError("mode system needs at least two modes");
  if (!std::isfinite(cutoff) || cutoff < 2.0) {
    throw ValidationError("mode cutoff must cover the pair band (cutoff >= 2 omega0)");
  }
  if (!std::isfinite(coupling)) throw ValidationError("coupling must be finite");
  if (!(coupling_band > 0.0)) throw ValidationError("coupling band must be positive");
  if (!std::isfinite(drive_frequency) || drive_frequency <= 0.0) {
    throw ValidationError("drive frequency must be positive");
  }
  if (!std::isfinite(total_time) || total_time < 10.0 * 2.0 * constants::pi) {
    throw ValidationError("total_time must be at least ten optical periods");
  }
  if (!std::isfinite(ramp_time) || ramp_time < 0.0 || ramp_time >= total_time) {
    throw ValidationError("ramp_time must lie in [0, total_time)");
  }
  if (step_divisions < 40) {
    throw ValidationError("step_divisions must be >= 40 (step <= (2 pi / cutoff) / 40)");
  }
  if (flipped_feedback_mode && *flipped_feedback_mode >= mode_count) {
    throw ValidationError("flipped_feedback_mode out of range");
  }
}

ModeState seed_state(const ModeSystem& system, std::size_t mode) {
  if (mode >= system.mode_count) throw ValidationError("seed mode out of range");
  const Eigen::ArrayXd w = system.frequencies();
  ModeState state{Eigen::ArrayXcd::Zero(w.size()), Eigen::ArrayXcd::Zero(w.size())};
  state.position[mode] = 1.0;
  state.velocity[mode] = std::complex<double>(0.0, -w[mode]);
  return state;
}

ModeState propagate(const ModeSystem& system, ModeState state, double t_begin, double t_end) {
  system.validate();
  const Eigen::ArrayXd w = system.frequencies();
  if (state.position.size() != w.size() || state.velocity.size() != w.size()) {
    throw ValidationError("mode state size does not match the mode system");
  }
  const double span = t_end - t_begin;
  if (span == 0.0) return state;
  const auto steps = static_cast<std::size_t>(std::ceil(std::abs(span) / system.time_step()));
  const double h = span / static_cast<double>(steps);

  // Modes above the coupling band oscillate freely.
  const Eigen::ArrayXd coupled = (w <= system.coupling_band * (1.0 + 1e-12)).select(w, 0.0);
  Eigen::ArrayXd feedback = coupled;
  if (system.flipped_feedback_mode) feedback[*system.flipped_feedback_mode] *= -1.0;

  const Rotation edge(w, 0.5 * kJumpOuter * h);
  const Rotation inner(w, 0.5 * (kJumpOuter + kJumpInner) * h);
  const Rotation join_steps(w, kJumpOuter * h);

  RealPair x = split(state.position);
  RealPair v = split(state.velocity);

  const auto kick = [&](double t, double weight) {
    const double strength =
        weight * system.coupling * system.envelope(t) * std::cos(system.drive_frequency * t);
    if (strength == 0.0) return;
    const Eigen::Array2d lambda = (feedback.matrix().transpose() * x.matrix()).transpose().array();
    v.col(0) += (strength * lambda[0]) * coupled;
    v.col(1) += (strength * lambda[1]) * coupled;
  };

  edge.apply(x, v);
  for (std::size_t step = 0; step < steps; ++step) {
    const double t = t_begin + static_cast<double>(step) * h;
    kick(t + 0.5 * kJumpOuter * h, kJumpOuter * h);
    inner.apply(x, v);
    kick(t + 0.5 * h, kJumpInner * h);
    inner.apply(x, v);
    kick(t + h - 0.5 * kJumpOuter * h, kJumpOuter * h);
    if (step + 1 < steps) {
      join_steps.apply(x, v);
    } else {
      edge.apply(x, v);
    }
    if ((step + 1) % kRunawayCheckInterval == 0 || step + 1 == steps) {
      const double largest = x.abs().maxCoeff();
      if (!std::isfinite(largest) || largest > kRunawayAmplitude) {
        throw NumericalError("mode amplitudes ran away at t = " + std::to_string(t + h) +
                             " (parametric instability or step-size failure)");
      }
    }
  }
  return {join(x), join(v)};
}

ModeState evolve(const ModeSystem& system, std::size_t initial_mode) {
  return propagate(system, seed_state(system, initial_mode), 0.0, system.total_time);
}

double free_energy(const ModeSystem& system, const ModeState& state) {
  const Eigen::ArrayXd w = system.frequencies();
  return 0.5 * (state.velocity.abs2() + w.square() * state.position.abs2()).sum();
}

Eigen::ArrayXd BogolyubovCoefficients::canonical_residuals() const {
  return (mu.cwiseAbs2().rowwise().sum() - nu.cwiseAbs2().rowwise().sum()).array() - 1.0;
}

double BogolyubovCoefficients::max_canonical_residual() const {
  return canonical_residuals().abs().maxCoeff();
}

Eigen::ArrayXd BogolyubovCoefficients::photon_numbers() const {
  return nu.cwiseAbs2().rowwise().sum().array();
}

BogolyubovCoefficients decompose(const ModeSystem& system, const std::vector<ModeState>& finals) {
  const Eigen::ArrayXd w = system.frequencies();
  const auto k = static_cast<Eigen::Index>(system.mode_count);
  if (static_cast<Eigen::Index>(finals.size()) != k) {
    throw ValidationError("one final state per seed mode is required");
  }
  const std::complex<double> i(0.0, 1.0);
  const Eigen::ArrayXcd forward = (i * w * system.total_time).exp();

  BogolyubovCoefficients c{Eigen::MatrixXcd(k, k), Eigen::MatrixXcd(k, k)};
  for (Eigen::Index seed = 0; seed < k; ++seed) {
    const ModeState& s = finals[static_cast<std::size_t>(seed)];
    const Eigen::ArrayXcd ratio = i * s.velocity / w;
    const Eigen::ArrayXcd positive = 0.5 * (s.position + ratio) * forward;
    const Eigen::ArrayXcd negative = 0.5 * (s.position - ratio) * forward.conjugate();
    const Eigen::ArrayXd norm = (w / w[seed]).sqrt();
    c.mu.col(seed) = (positive * norm).matrix();
    c.nu.col(seed) = (negative.conjugate() * norm).matrix();
  }
  return c;
}

BogolyubovCoefficients extract_coefficients(const ModeSystem& system) {
  system.validate();
  std::vector<ModeState> finals(system.mode_count);
  parallel_for(system.mode_count, [&](std::size_t seed) { finals[seed] = evolve(system, seed); });
  return decompose(system, finals);
}

OracleSpectrum oracle_spectrum(const ModeSystem& system, const BogolyubovCoefficients& coefficients) {
  OracleSpectrum spectrum;
  spectrum.frequencies = system.frequencies();
  spectrum.photon_numbers = coefficients.photon_numbers();
  spectrum.effective_time = system.effective_time();
  spectrum.spacing = system.spacing();
  spectrum.rates = spectrum.photon_numbers / spectrum.effective_time;
  return spectrum;
}

OracleSpectrum oracle_spectrum(const ModeSystem& system) {
  return oracle_spectrum(system, extract_coefficients(system));
}

double pair_concentration(const ModeSystem& system, const BogolyubovCoefficients& coefficients,
                          double window) {
  const Eigen::ArrayXd w = system.frequencies();
  const Eigen::MatrixXd weight = coefficients.nu.cwiseAbs2();
  double inside = 0.0;
  for (Eigen::Index seed = 0; seed < weight.cols(); ++seed) {
    for (Eigen::Index out = 0; out < weight.rows(); ++out) {
      if (std::abs(w[out] + w[seed] - system.drive_frequency) <= window) inside += weight(out, seed);
    }
  }
  const double total = weight.sum();
  return total > 0.0 ? inside / total : 1.0;
}

AnalyticComparison compare_to_analytic(const ModeSystem& system,
                                       const BogolyubovCoefficients& coefficients,
                                       const ComparisonOptions& options) {
  AnalyticComparison report;
  report.canonical_residual = coefficients.max_canonical_residual();
  report.canonical_ok = report.canonical_residual <= options.canonical_tolerance;

  const OracleSpectrum oracle = oracle_spectrum(system, coefficients);
  const Eigen::ArrayXd density = oracle.density();
  const double nu = system.drive_nu();

  const auto analytic = [&](double x) {
    const NormalizedFrequency f(x);
    if (options.loop_scale == 1.0) {
      SpectrumOptions spectrum_options;
      spectrum_options.variant = options.variant;
      return rate_full(f, nu, spectrum_options);
    }
    const std::complex<double> r = response_r(f, options.variant);
    return rate_weak(f, nu) / std::norm(1.0 - options.loop_scale * nu * nu * r);
  };

  if (nu == 0.0) {
    // No drive: the oracle must produce no photons at all.
    report.max_abs_deviation = oracle.photon_numbers.abs().maxCoeff();
    report.spectrum_ok = report.max_abs_deviation <= options.canonical_tolerance;
    report.note = "zero drive: photon numbers compared against zero";
    return report;
  }

  bool any = false;
  for (double lo = options.window_lo; lo < options.window_hi - 1e-12; lo += options.band_width) {
    const double hi = std::min(lo + options.band_width, options.window_hi);
    BandDeviation band{lo, hi, 0.0, 0.0};
    int count = 0;
    for (Eigen::Index k = 0; k < density.size(); ++k) {
      const double x = oracle.frequencies[k];
      const bool last_band = hi >= options.window_hi - 1e-12;
      if (x < lo - 1e-12 || x > hi + 1e-12 || (!last_band && x >= hi - 1e-12)) continue;
      const double deviation = density[k] / analytic(x) - 1.0;
      band.max_abs_deviation = std::max(band.max_abs_deviation, std::abs(deviation));
      band.mean_deviation += deviation;
      ++count;
    }
    if (count == 0) continue;
    any = true;
    band.mean_deviation /= count;
    report.max_abs_deviation = std::max(report.max_abs_deviation, band.max_abs_deviation);
    report.bands.push_back(band);
  }
  report.spectrum_ok = any && report.max_abs_deviation <= options.tolerance;
  if (!any) report.note = "no oracle modes inside the comparison window";
  return report;
}

AnalyticComparison compare_to_analytic(const ModeSystem& system, const ComparisonOptions& options) {
  try {
    return compare_to_analytic(system, extract_coefficients(system), options);
  } catch (const NumericalError& e) {
    AnalyticComparison report;
    report.stable = false;
    report.note = e.what();
    return report;
  }
}

}  // namespace vpl
