#pragma once

// Dimensionless spectral kernel G(x), the pair response R(x) = G(x) G*(2 - x)
// and the weak-drive band shape, all on normalized frequency x = omega / omega0.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string_view>

#include <Eigen/Core>

namespace vpl {

/// Distance kept from the band edges x = 0 and x = 2, where the log term of G diverges.
inline constexpr double kDomainGuard = 1e-6;

/// Two readings of the kernel: `paper` carries a log coefficient x, `pv` the
/// coefficient x/2 obtained from the principal-value mode integral.
enum class KernelVariant { pv, paper };

std::string_view to_string(KernelVariant variant);
KernelVariant parse_kernel_variant(std::string_view name);

/// Coefficient multiplying x ln((2-x)/(2+x)) in the numerator of G.
constexpr double log_coefficient(KernelVariant variant) {
  return variant == KernelVariant::paper ? 1.0 : 0.5;
}

/// Pair frequency omega / omega0; pairs share 2 omega0 so the physical band is [0, 2].
class NormalizedFrequency {
 public:
  explicit NormalizedFrequency(double x);

  double value() const { return x_; }
  NormalizedFrequency partner() const { return NormalizedFrequency(2.0 - x_); }

 private:
  double x_;
};

/// Closed form (2 + c x ln((2-x)/(2+x)) + i pi x / 2) / 2 pi with c = log_coefficient(variant).
/// No domain guard; valid for 0 <= x < 2.
template <typename Scalar>
std::complex<Scalar> kernel_closed_form(Scalar x, KernelVariant variant) {
  using std::log;
  const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  const Scalar c = Scalar(log_coefficient(variant));
  const Scalar re = Scalar(2) + c * x * log((Scalar(2) - x) / (Scalar(2) + x));
  const Scalar im = std::numbers::pi_v<Scalar> * x / Scalar(2);
  return {re / two_pi, im / two_pi};
}

/// G(x) exactly as printed (log coefficient x). Requires kDomainGuard <= x <= 2 - kDomainGuard.
std::complex<double> g_paper(NormalizedFrequency x);

/// G(x) from numerical principal-value quadrature of the band-limited mode sum,
/// (1/2pi) [PV int_0^2 y^2 / (y^2 - x^2) dy + i pi x / 2]. Independent of the closed form.
std::complex<double> g_pv(NormalizedFrequency x);

/// Closed-form kernel for either variant, with the domain guard applied.
std::complex<double> kernel(NormalizedFrequency x, KernelVariant variant);

/// R(x) = G(x) conj(G(2 - x)) using the closed-form kernel of `variant`.
std::complex<double> response_r(NormalizedFrequency x, KernelVariant variant);

/// pi x (2 - x) / 2.
double weak_band_shape(NormalizedFrequency x);

// Element-wise versions over a grid of normalized frequencies.
Eigen::ArrayXcd response_r(const Eigen::ArrayXd& x, KernelVariant variant);
Eigen::ArrayXd weak_band_shape(const Eigen::ArrayXd& x);

/// PV int_a^b h(y) / (y - pole) dy for smooth h and a < pole < b, by adaptive
/// Gauss-Kronrod on (h(y) - h(pole)) / (y - pole) plus the analytic log term.
/// Throws NumericalError if the error estimate exceeds `abs_tolerance`.
double principal_value_integral(const std::function<double(double)>& h, double pole, double a,
                                double b, double abs_tolerance = 2e-9);

}  // namespace vpl
