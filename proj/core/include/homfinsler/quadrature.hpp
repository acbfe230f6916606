#pragma once

#include <functional>
#include <vector>

namespace homfinsler {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  /// Newton iteration on P_order; nodes are returned in increasing order.
  static GaussLegendreRule make(int order);

  int order() const noexcept { return static_cast<int>(nodes.size()); }
};

struct QuadratureOptions {
  int order = 64;          // nodes per panel
  double abs_tol = 1e-10;  // target absolute error over the whole interval
  int max_depth = 40;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels = 0;
  int evaluations = 0;
};

/// Adaptive bisection of fixed-order Gauss-Legendre panels. A panel is
/// accepted when its two halves agree with it to its share of abs_tol, or to
/// the rounding level of the panel sums when that is larger.
/// Throws ErrorKind::quadrature on non-finite integrand values or when
/// max_depth is reached, naming the offending panel.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options = {});

}  // namespace homfinsler
