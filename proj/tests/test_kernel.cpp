#include <doctest.h>

#include <cmath>
#include <complex>

#include "vpl/errors.hpp"
#include "vpl/kernel.hpp"
#include "vpl/spectrum.hpp"

using namespace vpl;

namespace {
// Independent high-precision evaluations (mpmath, 30 digits) of the closed forms.
constexpr double kGPaperRe1 = 0.143460309900760774;
constexpr double kGPvRe1 = 0.230885098042275723;
constexpr double kGPvRe05 = 0.297984780413701124;
constexpr double kAbsGPv1 = 0.340305639826893;
constexpr double kRPv1 = 0.115807928497991273;
constexpr double kRPaper1 = 0.083080860516822320;
const std::complex<double> kRPv07{0.100707320454583754, -0.062586408380424986};
const std::complex<double> kRPaper07{0.056280203873415587, -0.077426333833281371};
}  // namespace

TEST_CASE("closed-form kernel at reference points") {
  const NormalizedFrequency one(1.0);
  CHECK(g_paper(one).real() == doctest::Approx(kGPaperRe1).epsilon(1e-14));
  CHECK(g_paper(one).imag() == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(kernel(one, KernelVariant::pv).real() == doctest::Approx(kGPvRe1).epsilon(1e-14));
  CHECK(std::abs(kernel(one, KernelVariant::pv)) == doctest::Approx(kAbsGPv1).epsilon(1e-13));
  const auto half = kernel(NormalizedFrequency(0.5), KernelVariant::pv);
  CHECK(half.real() == doctest::Approx(kGPvRe05).epsilon(1e-14));
  CHECK(half.imag() == doctest::Approx(0.125).epsilon(1e-14));
}

TEST_CASE("response at reference points") {
  const NormalizedFrequency one(1.0);
  CHECK(response_r(one, KernelVariant::pv).real() == doctest::Approx(kRPv1).epsilon(1e-13));
  CHECK(std::abs(response_r(one, KernelVariant::pv).imag()) < 1e-16);
  CHECK(response_r(one, KernelVariant::paper).real() == doctest::Approx(kRPaper1).epsilon(1e-13));

  const auto pv = response_r(NormalizedFrequency(0.7), KernelVariant::pv);
  const auto paper = response_r(NormalizedFrequency(0.7), KernelVariant::paper);
  CHECK(std::abs(pv - kRPv07) < 1e-14);
  CHECK(std::abs(paper - kRPaper07) < 1e-14);
}

TEST_CASE("pv quadrature agrees with the x/2 closed form") {
  for (double x : {kDomainGuard, 0.01, 0.3, 0.999, 1.0, 1.5, 1.99, 2.0 - kDomainGuard}) {
    const NormalizedFrequency f(x);
    CAPTURE(x);
    CHECK(std::abs(g_pv(f) - kernel(f, KernelVariant::pv)) < 1e-8);
  }
  // The printed variant differs from the quadrature by a factor 2 on the log term.
  const NormalizedFrequency f(1.0);
  const double log_term = std::log(1.0 / 3.0) / (2.0 * std::numbers::pi);
  CHECK((g_paper(f) - g_pv(f)).real() == doctest::Approx(0.5 * log_term).epsilon(1e-8));
}

TEST_CASE("response invariants") {
  for (auto variant : {KernelVariant::pv, KernelVariant::paper}) {
    for (double x : {0.05, 0.4, 0.9, 1.3, 1.95}) {
      const NormalizedFrequency f(x);
      const auto r = response_r(f, variant);
      const auto mirrored = response_r(f.partner(), variant);
      CAPTURE(x);
      CHECK(std::abs(r - std::conj(mirrored)) < 1e-15);
      CHECK(std::abs(r) == doctest::Approx(std::abs(kernel(f, variant)) *
                                           std::abs(kernel(f.partner(), variant))));
    }
  }
}

TEST_CASE("grid overloads match scalar evaluation") {
  const Eigen::ArrayXd grid = symmetric_grid(21);
  const Eigen::ArrayXcd r = response_r(grid, KernelVariant::pv);
  const Eigen::ArrayXd w = weak_band_shape(grid);
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    CHECK(r[i] == response_r(NormalizedFrequency(grid[i]), KernelVariant::pv));
    CHECK(w[i] == weak_band_shape(NormalizedFrequency(grid[i])));
  }
}

TEST_CASE("domain checks") {
  CHECK_THROWS_AS(NormalizedFrequency(-0.1), DomainError);
  CHECK_THROWS_AS(NormalizedFrequency(2.1), DomainError);
  CHECK_THROWS_AS(NormalizedFrequency(std::nan("")), DomainError);
  CHECK_THROWS_AS(kernel(NormalizedFrequency(0.0), KernelVariant::pv), DomainError);
  CHECK_THROWS_AS(g_pv(NormalizedFrequency(2.0)), DomainError);
  CHECK_NOTHROW(kernel(NormalizedFrequency(kDomainGuard), KernelVariant::paper));
  CHECK(weak_band_shape(NormalizedFrequency(0.0)) == 0.0);
  CHECK(weak_band_shape(NormalizedFrequency(2.0)) == 0.0);
}

TEST_CASE("variant names") {
  CHECK(parse_kernel_variant("pv") == KernelVariant::pv);
  CHECK(parse_kernel_variant("paper") == KernelVariant::paper);
  CHECK(to_string(KernelVariant::paper) == "paper");
  CHECK_THROWS_AS(parse_kernel_variant("exact"), ValidationError);
}

TEST_CASE("principal value integral of a known case") {
  // PV int_0^2 dy / (y - 1) = 0 and PV int_0^3 y dy / (y - 1) = 3 + ln 2.
  CHECK(std::abs(principal_value_integral([](double) { return 1.0; }, 1.0, 0.0, 2.0)) < 1e-12);
  CHECK(principal_value_integral([](double y) { return y; }, 1.0, 0.0, 3.0) ==
        doctest::Approx(3.0 + std::log(2.0)).epsilon(1e-12));
}
