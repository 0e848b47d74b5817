#include "vpl/kernel.hpp"

#include <algorithm>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "vpl/constants.hpp"
#include "vpl/errors.hpp"

namespace vpl {

namespace {

void require_guarded(double x) {
  if (x < kDomainGuard || x > 2.0 - kDomainGuard) {
    throw DomainError("kernel argument x = " + std::to_string(x) +
                      " lies within the domain guard of the band edges 0 and 2");
  }
}

double integrate_segment(const std::function<double(double)>& f, double a, double b,
                         double abs_tolerance) {
  if (b <= a) return 0.0;
  using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
  // Integrate over the unit interval: the rule's error estimate is not scaled by the
  // sub-interval width, so narrow segments near a band edge would otherwise never converge.
  const double width = b - a;
  double error = 0.0;
  const double value =
      width * Rule::integrate([&](double t) { return f(a + width * t); }, 0.0, 1.0, 20, 1e-12, &error);
  error *= width;
  if (!std::isfinite(value) || error > abs_tolerance) {
    throw NumericalError("principal-value quadrature did not converge on [" + std::to_string(a) +
                         ", " + std::to_string(b) + "], error estimate " +
                         std::to_string(error));
  }
  return value;
}

}  // namespace

std::string_view to_string(KernelVariant variant) {
  return variant == KernelVariant::paper ? "paper" : "pv";
}

KernelVariant parse_kernel_variant(std::string_view name) {
  if (name == "pv") return KernelVariant::pv;
  if (name == "paper") return KernelVariant::paper;
  throw ValidationError("unknown kernel variant '" + std::string(name) +
                        "' (expected pv or paper)");
}

NormalizedFrequency::NormalizedFrequency(double x) : x_(x) {
  if (!std::isfinite(x) || x < 0.0 || x > 2.0) {
    throw DomainError("normalized frequency " + std::to_string(x) + " outside [0, 2]");
  }
}

double principal_value_integral(const std::function<double(double)>& h, double pole, double a,
                                double b, double abs_tolerance) {
  if (!(a < pole && pole < b)) {
    throw DomainError("principal-value pole must lie strictly inside the integration interval");
  }
  // Subtracting h(pole) leaves a bounded integrand on either side of the pole; the subtracted
  // term integrates to h(pole) ln((b - pole) / (pole - a)).
  const double h_pole = h(pole);
  const auto smooth = [&](double y) { return (h(y) - h_pole) / (y - pole); };
  const double tol = abs_tolerance / 2.0;
  return integrate_segment(smooth, a, pole, tol) + integrate_segment(smooth, pole, b, tol) +
         h_pole * std::log((b - pole) / (pole - a));
}

std::complex<double> g_paper(NormalizedFrequency x) {
  require_guarded(x.value());
  return kernel_closed_form(x.value(), KernelVariant::paper);
}

std::complex<double> g_pv(NormalizedFrequency x) {
  const double p = x.value();
  require_guarded(p);
  // y^2 / (y^2 - p^2) = h(y) / (y - p) with h(y) = y^2 / (y + p).
  const auto h = [p](double y) { return y * y / (y + p); };
  const double pv = principal_value_integral(h, p, 0.0, 2.0);
  const double two_pi = 2.0 * constants::pi;
  return {pv / two_pi, (constants::pi * p / 2.0) / two_pi};
}

std::complex<double> kernel(NormalizedFrequency x, KernelVariant variant) {
  require_guarded(x.value());
  return kernel_closed_form(x.value(), variant);
}

std::complex<double> response_r(NormalizedFrequency x, KernelVariant variant) {
  require_guarded(x.value());
  return kernel_closed_form(x.value(), variant) *
         std::conj(kernel_closed_form(2.0 - x.value(), variant));
}

double weak_band_shape(NormalizedFrequency x) {
  const double v = x.value();
  return constants::pi * v * (2.0 - v) / 2.0;
}

Eigen::ArrayXcd response_r(const Eigen::ArrayXd& x, KernelVariant variant) {
  Eigen::ArrayXcd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = response_r(NormalizedFrequency(x[i]), variant);
  return out;
}

Eigen::ArrayXd weak_band_shape(const Eigen::ArrayXd& x) {
  Eigen::ArrayXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = weak_band_shape(NormalizedFrequency(x[i]));
  return out;
}

}  // namespace vpl
