#include "homfinsler/volume.hpp"

#include "homfinsler/error.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>

namespace homfinsler {

std::string_view to_string(VolumeForm form) noexcept {
  return form == VolumeForm::busemann_hausdorff ? "bh" : "ht";
}

VolumeForm volume_form_from_string(std::string_view name) {
  if (name == "bh" || name == "busemann_hausdorff") return VolumeForm::busemann_hausdorff;
  if (name == "ht" || name == "holmes_thompson") return VolumeForm::holmes_thompson;
  fail(ErrorKind::config, fmt::format("unknown volume form '{}' (expected bh or ht)", name));
}

double t_function(const PhiFamily& phi, double s, double b, int n) {
  const PhiJet j = phi.jet(s);
  const double D = j.phi - s * j.d1;
  const double value = j.phi * std::pow(D, n - 2) * (D + (b * b - s * s) * j.d2);
  if (!std::isfinite(value)) {
    fail(ErrorKind::singularity, fmt::format("T(s) is singular at s = {} for {}", s, phi.name()));
  }
  return value;
}

double sin_power(double t, int k) {
  if (k == 0) return 1.0;
  const double s = std::sin(t);
  if (s <= 0.0) return 0.0;
  return std::exp(k * std::log(s));
}

double volume_coefficient(const PhiFamily& phi, double b, int n, VolumeForm form,
                          const QuadratureOptions& options) {
  if (n < 2) fail(ErrorKind::domain, fmt::format("volume coefficient needs n >= 2, got {}", n));
  const double pi = std::numbers::pi;
  const int k = n - 2;
  const double base = integrate([k](double t) { return sin_power(t, k); }, 0.0, pi, options).value;

  if (form == VolumeForm::busemann_hausdorff) {
    const double weighted =
        integrate([&](double t) { return sin_power(t, k) / std::pow(phi.phi(b * std::cos(t)), n); },
                  0.0, pi, options)
            .value;
    return base / weighted;
  }
  const double weighted =
      integrate([&](double t) { return sin_power(t, k) * t_function(phi, b * std::cos(t), b, n); },
                0.0, pi, options)
          .value;
  return weighted / base;
}

VolumeCoefficients volume_coefficients(const PhiFamily& phi, double b, int n,
                                       const QuadratureOptions& options) {
  return {b, n, volume_coefficient(phi, b, n, VolumeForm::busemann_hausdorff, options),
          volume_coefficient(phi, b, n, VolumeForm::holmes_thompson, options), options.order};
}

}  // namespace homfinsler
