#include "vpl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "vpl/bogolyubov.hpp"
#include "vpl/constants.hpp"
#include "vpl/errors.hpp"
#include "vpl/spectrum.hpp"

namespace vpl {

namespace {

constexpr double kQuotedResonance = 2.944;
constexpr double kResonanceLo = 2.914;
constexpr double kResonanceHi = 2.973;
constexpr double kKernelOracleTolerance = 1e-8;
constexpr double kWeakIntegralTolerance = 1e-6;
constexpr double kSymmetryTolerance = 1e-12;
constexpr double kWeakLimitTolerance = 1e-3;
constexpr double kTailLo = 4.0 * 0.95;
constexpr double kTailHi = 4.0 * 1.05;
constexpr double kOracleWeakTolerance = 0.10;
constexpr double kOracleModerateTolerance = 0.20;
constexpr double kCanonicalTolerance = 1e-6;
constexpr double kPairFraction = 0.95;
constexpr double kDesignTolerance = 1e-12;
constexpr double kQuotedOptimalEnergy = 2.381e-6;
constexpr double kOptimalEnergyTolerance = 1e-3;
constexpr double kWidthLo = 0.05;
constexpr double kWidthHi = 0.30;

template <typename... Parts>
std::string cat(const Parts&... parts) {
  std::ostringstream s;
  s << std::setprecision(6);
  (s << ... << parts);
  return s.str();
}

std::string sci(double v, int digits = 4) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(digits) << v;
  return s.str();
}

double max_asymmetry(const Eigen::ArrayXd& values) {
  double worst = 0.0;
  const Eigen::Index n = values.size();
  for (Eigen::Index i = 0; i < n / 2; ++i) {
    const double a = values[i];
    const double b = values[n - 1 - i];
    const double scale = std::max(std::abs(a), std::abs(b));
    if (scale > 0.0) worst = std::max(worst, std::abs(a - b) / scale);
  }
  return worst;
}

std::string band_summary(const AnalyticComparison& c) {
  if (!c.stable) return "oracle unstable: " + c.note;
  std::ostringstream s;
  s << std::setprecision(3);
  s << "max |dev| " << c.max_abs_deviation << " [";
  for (std::size_t i = 0; i < c.bands.size(); ++i) {
    s << (i ? " " : "") << c.bands[i].x_lo << "-" << c.bands[i].x_hi << ":"
      << c.bands[i].mean_deviation;
  }
  s << "], canonical residual " << sci(c.canonical_residual, 2);
  return s.str();
}

class Runner {
 public:
  Runner(VerificationReport& report, std::ostream* progress) : report_(report), progress_(progress) {}

  void add(CheckResult check) {
    if (progress_) {
      *progress_ << (check.gated ? (check.passed ? "[PASS] " : "[FAIL] ")
                                 : (check.passed ? "[info] " : "[note] "))
                 << check.id << " " << check.title << ": " << check.detail << std::endl;
    }
    report_.checks.push_back(std::move(check));
  }

  template <typename Body>
  void run(const std::string& id, const std::string& title, bool gated, Body&& body) {
    CheckResult check{id, title, gated, false, ""};
    try {
      body(check);
    } catch (const std::exception& e) {
      check.passed = false;
      check.detail = std::string("error: ") + e.what();
    }
    add(std::move(check));
  }

 private:
  VerificationReport& report_;
  std::ostream* progress_;
};

}  // namespace

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return !c.gated || c.passed; });
}

VerificationReport run_verification(const RunConfig& config, std::ostream* progress) {
  config.validate();
  VerificationReport report;
  Runner runner(report, progress);
  const KernelVariant variant = config.kernel;
  const double pi = constants::pi;

  double nu0_selected = 0.0;
  runner.run("resonance", "resonance drive nu0", true, [&](CheckResult& c) {
    nu0_selected = find_resonance(variant);
    c.passed = nu0_selected >= kResonanceLo && nu0_selected <= kResonanceHi;
    c.detail = cat("nu0(", to_string(variant), ") = ", nu0_selected, ", accepted [", kResonanceLo,
                   ", ", kResonanceHi, "] around ", kQuotedResonance);
    if (!c.passed && variant == KernelVariant::paper) {
      c.detail += "; the kernel with log coefficient x does not reproduce the quoted value, "
                  "only the principal-value kernel (coefficient x/2) does";
    }
  });

  runner.run("kernel-oracle", "principal-value quadrature vs closed form", true, [&](CheckResult& c) {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double x = 0.01 + 1.98 * i / 199.0;
      const auto quad = g_pv(NormalizedFrequency(x));
      const auto closed = kernel_closed_form(x, KernelVariant::pv);
      worst = std::max(worst, std::abs(quad - closed));
    }
    c.passed = worst <= kKernelOracleTolerance;
    c.detail = cat("max |G_quad - G_closed| = ", sci(worst, 2), " over 200 points (tol ",
                   sci(kKernelOracleTolerance, 0), ")");
  });

  runner.run("weak-integral", "weak spectrum integral = 2 pi nu^2 / 3", true, [&](CheckResult& c) {
    double worst = 0.0;
    for (const double nu : {0.01, 0.1, 1.0}) {
      const EmissionSummary s = total_photons(nu, 1.0, EmissionMode::weak);
      const double exact = weak_photons_closed_form(nu, 1.0);
      worst = std::max(worst, std::abs(s.total_photons - exact) / exact);
    }
    c.passed = worst <= kWeakIntegralTolerance;
    c.detail = cat("max relative error ", sci(worst, 2), " for nu in {0.01, 0.1, 1}");
  });

  runner.run("symmetry", "spectra symmetric about x = 1", true, [&](CheckResult& c) {
    double worst = 0.0;
    for (const KernelVariant v : {KernelVariant::pv, KernelVariant::paper}) {
      for (const double nu : {0.1, 1.0, 2.9}) {
        SpectrumOptions options;
        options.variant = v;
        const SpectralCurve curve = sample_spectrum(nu, options, kDefaultGridPoints);
        worst = std::max({worst, max_asymmetry(curve.weak), max_asymmetry(curve.full)});
      }
    }
    c.passed = worst <= kSymmetryTolerance;
    c.detail = cat("max relative asymmetry ", sci(worst, 2), " (2001 points, both kernels)");
  });

  runner.run("weak-limit", "resummed rate reduces to weak rate at nu = 0.05", true,
             [&](CheckResult& c) {
               SpectrumOptions options = config.spectrum_options();
               options.two_ends = false;
               const SpectralCurve curve = sample_spectrum(0.05, options, kDefaultGridPoints);
               double worst = 0.0;
               for (Eigen::Index i = 0; i < curve.grid.size(); ++i) {
                 if (curve.grid[i] < 0.1 || curve.grid[i] > 1.9) continue;
                 worst = std::max(worst, std::abs(curve.full[i] / curve.weak[i] - 1.0));
               }
               c.passed = worst <= kWeakLimitTolerance;
               c.detail = cat("max |full/weak - 1| = ", sci(worst, 2), " on [0.1, 1.9]");
             });

  runner.run("tail", "inverse-square tail far above resonance", true, [&](CheckResult& c) {
    const double nu0 = find_resonance(variant);
    SpectrumOptions options;
    options.variant = variant;
    const NormalizedFrequency x(1.0);
    const double ratio = rate_full(x, 10.0 * nu0, options) / rate_full(x, 20.0 * nu0, options);
    c.passed = ratio >= kTailLo && ratio <= kTailHi;
    c.detail = cat("rate(10 nu0) / rate(20 nu0) = ", ratio, ", accepted [", kTailLo, ", ", kTailHi, "]");
  });

  BogolyubovCoefficients weak_coefficients;
  ModeSystem weak_system = config.oracle.system(config.oracle.weak_nu);
  bool have_weak = false;
  runner.run("oracle-weak", "time-domain oracle vs weak rate", true, [&](CheckResult& c) {
    weak_coefficients = extract_coefficients(weak_system);
    have_weak = true;
    ComparisonOptions options;
    options.variant = KernelVariant::pv;
    options.loop_scale = 0.0;
    options.window_lo = 0.3;
    options.window_hi = 1.7;
    options.tolerance = kOracleWeakTolerance;
    options.canonical_tolerance = kCanonicalTolerance;
    const AnalyticComparison cmp = compare_to_analytic(weak_system, weak_coefficients, options);
    c.passed = cmp.passed();
    c.detail = cat("K = ", weak_system.mode_count, ", nu = ", config.oracle.weak_nu, ", T = ",
                   config.oracle.transits, " L/c: ", band_summary(cmp));
    if (!cmp.spectrum_ok && config.oracle.transits > 2.0) {
      c.detail += "; T exceeds the mode round-trip time 2L/c, so paired modes keep amplifying "
                  "and n_k no longer grows linearly in T";
    }
  });

  runner.run("oracle-moderate", "time-domain oracle vs resummed rate", true, [&](CheckResult& c) {
    const ModeSystem system = config.oracle.system(config.oracle.moderate_nu);
    ComparisonOptions options;
    options.variant = KernelVariant::pv;
    options.loop_scale = 1.0;
    options.window_lo = 0.5;
    options.window_hi = 1.5;
    options.tolerance = kOracleModerateTolerance;
    options.canonical_tolerance = kCanonicalTolerance;
    const AnalyticComparison cmp = compare_to_analytic(system, options);
    c.passed = cmp.passed();
    c.detail = cat("nu = ", config.oracle.moderate_nu, ": ", band_summary(cmp));
    const double time_domain_resonance = find_resonance(KernelVariant::pv) / (2.0 * pi);
    if (!cmp.passed() && config.oracle.moderate_nu > time_domain_resonance) {
      c.detail += "; the mode equations resum as 1 - 4 pi^2 nu^2 R, whose resonance lies at nu = " +
                  cat(time_domain_resonance) + ", so this drive is beyond it";
    }
  });

  runner.run("pair-concentration", "pair mass on w + w' = 2 w0", true, [&](CheckResult& c) {
    if (!have_weak) throw NumericalError("weak oracle run unavailable");
    const double window = 4.0 * pi / weak_system.effective_time();
    const double fraction = pair_concentration(weak_system, weak_coefficients, window);
    c.passed = fraction >= kPairFraction;
    c.detail = cat("fraction ", fraction, " within |w + w' - 2| <= ", sci(window, 3));
  });

  runner.run("design", "drive at the optimal pulse", true, [&](CheckResult& c) {
    const PulseDesign design = design_pulse(config.fiber);
    const double nu_error = std::abs(design.nu_at_optimum - pi) / pi;
    FiberParams reference;  // defaults are the worked fiber example
    const double energy = design_pulse(reference).optimal_energy;
    const double energy_error = std::abs(energy - kQuotedOptimalEnergy) / kQuotedOptimalEnergy;
    c.passed = nu_error <= kDesignTolerance && energy_error <= kOptimalEnergyTolerance;
    c.detail = cat("nu(I_opt) = ", std::setprecision(15), design.nu_at_optimum,
                   std::setprecision(6), " (rel. error ", sci(nu_error, 1), "), E_opt = ",
                   sci(energy, 5), " J for the reference fiber");
  });

  runner.run("width", "spectral width at 0.9 nu0", true, [&](CheckResult& c) {
    const double nu = 0.9 * find_resonance(KernelVariant::pv);
    const SpectralCurve curve = sample_spectrum(nu, SpectrumOptions{}, config.grid_points);
    const PeakShape shape = measure_peak(curve.grid, curve.full);
    c.passed = shape.fwhm >= kWidthLo && shape.fwhm <= kWidthHi;
    c.detail = cat("FWHM = ", shape.fwhm, " omega0 at nu = ", nu, ", accepted [", kWidthLo, ", ",
                   kWidthHi, "]");
  });

  // Ungated diagnostics: the oracle inside one transit, where n_k grows linearly.
  runner.run("oracle-single-pass", "oracle vs weak rate within one transit (T = L/c)", false,
             [&](CheckResult& c) {
               OracleSettings single = config.oracle;
               single.transits = 1.0;
               ComparisonOptions options;
               options.loop_scale = 0.0;
               const AnalyticComparison cmp =
                   compare_to_analytic(single.system(config.oracle.weak_nu), options);
               c.passed = cmp.passed();
               c.detail = band_summary(cmp);
             });
  runner.run("oracle-rescaled", "oracle vs 1/|1 - 4 pi^2 nu^2 R|^2 at nu = 0.1, T = L/c", false,
             [&](CheckResult& c) {
               OracleSettings single = config.oracle;
               single.transits = 1.0;
               ComparisonOptions options;
               options.loop_scale = 4.0 * pi * pi;
               options.window_lo = 0.5;
               options.window_hi = 1.5;
               options.tolerance = 0.05;
               const AnalyticComparison cmp = compare_to_analytic(single.system(0.1), options);
               c.passed = cmp.passed();
               c.detail = band_summary(cmp);
             });

  // Discrepancy ledger.
  const auto g_pv1 = kernel_closed_form(1.0, KernelVariant::pv);
  const auto g_paper1 = kernel_closed_form(1.0, KernelVariant::paper);
  report.ledger.push_back({"log coefficient in G(x)", "x", "x/2 (principal-value mode integral)",
                           cat("G(1) = ", g_paper1.real(), " + ", g_paper1.imag(),
                               "i with x; ", g_pv1.real(), " + ", g_pv1.imag(), "i with x/2")});
  report.ledger.push_back({"resonance nu0", "2.944",
                           cat(find_resonance(KernelVariant::pv), " (pv), ",
                               find_resonance(KernelVariant::paper), " (printed kernel)"),
                           "only the x/2 kernel lands within 1%"});

  FiberParams reference;
  const DriveParams reference_drive = derive_drive(reference);
  const double printed = weak_photons_printed(reference);
  const double integrated =
      weak_photons_closed_form(reference_drive.nu, reference_drive.omega0_over_gamma());
  report.ledger.push_back({"weak photon number coefficient", "16 pi^3 / 3", "8 pi^3 / 3",
                           cat("reference fiber: printed ", sci(printed), ", integrated ",
                               sci(integrated), " (ratio ", printed / integrated, ")")});
  report.ledger.push_back({"nu for L = 100 m, I = 1e6 W/m^2, lambda0 = 0.5 um", "~0.01",
                           sci(reference_drive.nu), "nu = omega0 n2 I L / c"});
  try {
    const YieldReport y = photon_yield(reference, EmissionMode::weak);
    report.ledger.push_back({"yield eta (reference fiber, weak)", "~1e-8", sci(y.yield),
                             cat("closed-form yield expression gives ", sci(y.yield_printed),
                                 "; N = ", sci(y.photons), ", N0 = ", sci(y.pump_quanta))});
  } catch (const std::exception& e) {
    report.ledger.push_back({"yield eta (reference fiber, weak)", "~1e-8", "error", e.what()});
  }
  const double small_energy = 1e-17 / (2.0 * reference.n2 * constants::speed_of_light);
  report.ledger.push_back({"optimal pulse energy for lambda0 S = 1e-17 m^3", "~10 uJ",
                           sci(small_energy), cat("reference fiber E_opt = ",
                                                  sci(design_pulse(reference).optimal_energy), " J")});
  try {
    const double nu = 0.9 * find_resonance(KernelVariant::pv);
    const SpectralCurve curve = sample_spectrum(nu, SpectrumOptions{}, kDefaultGridPoints);
    report.ledger.push_back({"spectral width near resonance", "~0.11 omega0",
                             cat(measure_peak(curve.grid, curve.full).fwhm, " omega0"),
                             "evaluated at nu = 0.9 nu0; the quoted figure assumes 10% intensity control"});
  } catch (const std::exception& e) {
    report.ledger.push_back({"spectral width near resonance", "~0.11 omega0", "error", e.what()});
  }
  report.ledger.push_back({"peak photon number N_max", "9 pi^4 w0^2 / 4 nu0^2 Gamma^2",
                           sci(peak_photon_estimate(reference_drive.omega0_over_gamma(),
                                                    find_resonance(KernelVariant::pv))),
                           "reference fiber; formula quoted without an independent check"});
  report.ledger.push_back({"drive scale of the resummation", "1 - nu^2 R",
                           "1 - 4 pi^2 nu^2 R from the mode equations",
                           cat("with the coupling that reproduces the weak rate, the time-domain "
                               "resonance sits at nu0 / 2 pi = ",
                               find_resonance(KernelVariant::pv) / (2.0 * pi))});
  return report;
}

void print_report(const VerificationReport& report, std::ostream& out, bool include_checks) {
  if (include_checks) {
    out << "checks\n";
    for (const CheckResult& c : report.checks) {
      out << "  " << (c.gated ? (c.passed ? "PASS " : "FAIL ") : (c.passed ? "info " : "note "))
          << std::left << std::setw(20) << c.id << c.detail << '\n';
    }
  }
  out << "discrepancy ledger (quoted vs computed, not gated)\n";
  for (const LedgerEntry& e : report.ledger) {
    out << "  " << e.quantity << ": quoted " << e.quoted << ", computed " << e.computed;
    if (!e.note.empty()) out << " -- " << e.note;
    out << '\n';
  }
  out << (report.passed() ? "verification PASSED" : "verification FAILED") << '\n';
}

nlohmann::json report_to_json(const VerificationReport& report) {
  nlohmann::json j;
  j["passed"] = report.passed();
  for (const CheckResult& c : report.checks) {
    j["checks"].push_back(
        {{"id", c.id}, {"title", c.title}, {"gated", c.gated}, {"passed", c.passed}, {"detail", c.detail}});
  }
  for (const LedgerEntry& e : report.ledger) {
    j["ledger"].push_back(
        {{"quantity", e.quantity}, {"quoted", e.quoted}, {"computed", e.computed}, {"note", e.note}});
  }
  return j;
}

}  // namespace vpl
