#pragma once

// Time-domain oracle: a truncated set of fiber modes driven by the oscillating
// optical length, integrated as classical complex amplitudes. Final amplitudes
// are split into positive- and negative-frequency parts to give the Bogolyubov
// matrices (mu, nu), from which per-mode photon numbers follow.
//
// Units: c = 1, omega0 = 1. Mode k (1-based) has frequency k * spacing. The drive
// enters as  A_k'' + w_k^2 A_k = w_k env(t) cos(2t) g sum_k' w_k' A_k'  with
// g = 2 nu * spacing, i.e. 2a/L for a mode spacing c/L. The sum and the response run over
// modes inside the pair band [0, 2] only; modes above it are free.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "vpl/kernel.hpp"

namespace vpl {

struct ModeSystem {
  std::size_t mode_count = 200;
  double cutoff = 2.0;            // highest mode frequency, units of omega0
  double coupling = 0.0;          // g
  double drive_frequency = 2.0;   // 2 omega0
  double coupling_band = 2.0;     // only modes with frequency <= this enter the coupling
  double ramp_time = 0.0;         // raised-cosine turn-on of the drive
  double total_time = 0.0;        // T
  int step_divisions = 40;        // time step = (2 pi / cutoff) / step_divisions
  /// Negative control only: flips the sign of this mode's contribution to the feedback sum,
  /// which makes the coupling non-symmetric and breaks the canonical structure.
  std::optional<std::size_t> flipped_feedback_mode;

  /// System for drive amplitude nu over `transits` single-pass times L/c = pi / spacing,
  /// with a `ramp_periods`-period raised-cosine ramp (one drive period is pi / omega0).
  static ModeSystem for_drive(double nu, std::size_t modes, double cutoff, double transits,
                              double ramp_periods = 5.0);

  double spacing() const { return cutoff / static_cast<double>(mode_count); }
  /// Single-pass time L/c for the boundary-consistent spacing pi c / L.
  double transit_time() const;
  double effective_time() const { return total_time - ramp_time; }
  double drive_nu() const { return coupling / (2.0 * spacing()); }
  double time_step() const;
  std::size_t step_count() const;
  Eigen::ArrayXd frequencies() const;
  double envelope(double t) const;

  void validate() const;
};

/// Complex amplitudes A_k and their time derivatives.
struct ModeState {
  Eigen::ArrayXcd position;
  Eigen::ArrayXcd velocity;
};

/// Positive-frequency seed of one mode: A = 1, A' = -i w.
ModeState seed_state(const ModeSystem& system, std::size_t mode);

/// Integrates from t_begin to t_end (either direction) with a fourth-order symmetric
/// splitting: exact free rotation of every mode alternated with coupling kicks.
/// Throws NumericalError when the amplitudes run away (parametric instability).
ModeState propagate(const ModeSystem& system, ModeState state, double t_begin, double t_end);

/// State at total_time after seeding `initial_mode` at t = 0.
ModeState evolve(const ModeSystem& system, std::size_t initial_mode);

/// Undriven quadratic energy sum (|A'|^2 + w^2 |A|^2) / 2.
double free_energy(const ModeSystem& system, const ModeState& state);

struct BogolyubovCoefficients {
  Eigen::MatrixXcd mu;  // row k: output mode, column k': seed mode
  Eigen::MatrixXcd nu;

  /// sum_k' (|mu_kk'|^2 - |nu_kk'|^2) - 1 per output mode k.
  Eigen::ArrayXd canonical_residuals() const;
  double max_canonical_residual() const;
  /// n_k = sum_k' |nu_kk'|^2.
  Eigen::ArrayXd photon_numbers() const;
};

/// Decomposes final states (one per seed, ordered by seed) into Bogolyubov matrices,
/// normalized so that the canonical condition reads sum (|mu|^2 - |nu|^2) = 1.
BogolyubovCoefficients decompose(const ModeSystem& system, const std::vector<ModeState>& finals);

/// Evolves every seed (concurrently, see VPL_THREADS) and decomposes.
BogolyubovCoefficients extract_coefficients(const ModeSystem& system);

struct OracleSpectrum {
  Eigen::ArrayXd frequencies;
  Eigen::ArrayXd photon_numbers;
  Eigen::ArrayXd rates;  // n_k / T_eff
  double spacing = 0.0;
  double effective_time = 0.0;

  /// rates / spacing: comparable with the analytic spectral densities.
  Eigen::ArrayXd density() const { return rates / spacing; }
};

OracleSpectrum oracle_spectrum(const ModeSystem& system, const BogolyubovCoefficients& coefficients);
OracleSpectrum oracle_spectrum(const ModeSystem& system);

/// Fraction of sum |nu_kk'|^2 on pairs with |w_k + w_k' - 2| <= window.
double pair_concentration(const ModeSystem& system, const BogolyubovCoefficients& coefficients,
                          double window);

struct ComparisonOptions {
  KernelVariant variant = KernelVariant::pv;
  double window_lo = 0.3;
  double window_hi = 1.7;
  double band_width = 0.2;
  double tolerance = 0.10;             // max |oracle / analytic - 1| inside the window
  double canonical_tolerance = 1e-6;
  /// Analytic reference: rate_weak / |1 - s nu^2 R|^2 with s = loop_scale.
  /// 1 is the resummed rate as written, 0 the weak rate.
  double loop_scale = 1.0;
};

struct BandDeviation {
  double x_lo;
  double x_hi;
  double max_abs_deviation;
  double mean_deviation;
};

struct AnalyticComparison {
  bool stable = true;
  std::string note;
  std::vector<BandDeviation> bands;
  double max_abs_deviation = 0.0;
  double canonical_residual = 0.0;
  bool spectrum_ok = false;
  bool canonical_ok = false;

  bool passed() const { return stable && spectrum_ok && canonical_ok; }
};

AnalyticComparison compare_to_analytic(const ModeSystem& system,
                                       const BogolyubovCoefficients& coefficients,
                                       const ComparisonOptions& options);
/// Runs the oracle itself; an unstable run is reported, not thrown.
AnalyticComparison compare_to_analytic(const ModeSystem& system, const ComparisonOptions& options);

}  // namespace vpl
