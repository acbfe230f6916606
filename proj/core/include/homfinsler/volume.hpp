#pragma once

// Volume coefficient f(b) with dV = f(b) dV_alpha for the Busemann-Hausdorff
// and Holmes-Thompson volume forms of an (alpha, beta)-metric.

#include "homfinsler/metrics.hpp"
#include "homfinsler/quadrature.hpp"

#include <string_view>

namespace homfinsler {

enum class VolumeForm { busemann_hausdorff, holmes_thompson };

std::string_view to_string(VolumeForm form) noexcept;
/// Accepts "bh" / "ht" and the long names.
VolumeForm volume_form_from_string(std::string_view name);

struct VolumeCoefficients {
  double b = 0.0;
  int n = 0;
  double f_bh = 0.0;
  double f_ht = 0.0;
  int nodes = 0;  // Gauss-Legendre nodes per panel
};

/// T(s) = phi (phi - s phi')^(n-2) ((phi - s phi') + (b^2 - s^2) phi'').
double t_function(const PhiFamily& phi, double s, double b, int n);

/// sin^k t, through exp(k log sin t) so large k does not underflow early.
double sin_power(double t, int k);

double volume_coefficient(const PhiFamily& phi, double b, int n, VolumeForm form,
                          const QuadratureOptions& options = {});

VolumeCoefficients volume_coefficients(const PhiFamily& phi, double b, int n,
                                       const QuadratureOptions& options = {});

}  // namespace homfinsler
