#include "homfinsler/quadrature.hpp"

#include "homfinsler/error.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

namespace homfinsler {

GaussLegendreRule GaussLegendreRule::make(int order) {
  if (order < 1) fail(ErrorKind::domain, "Gauss-Legendre order must be positive");
  GaussLegendreRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int k = 1; k <= order; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
      }
      dp = order * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  return rule;
}

namespace {

constexpr double kRoundoffFactor = 64.0;

const GaussLegendreRule& cached_rule(int order) {
  static std::mutex mutex;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, GaussLegendreRule::make(order)).first;
  return it->second;
}

struct Estimate {
  double value = 0.0;
  double magnitude = 0.0;  // sum of |w f|, the scale of rounding errors
};

struct Panel {
  const GaussLegendreRule& rule;
  const std::function<double(double)>& f;
  int evaluations = 0;

  Estimate operator()(double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    double magnitude = 0.0;
    for (int i = 0; i < rule.order(); ++i) {
      const double t = mid + half * rule.nodes[i];
      const double value = f(t);
      if (!std::isfinite(value)) {
        fail(ErrorKind::quadrature,
             fmt::format("integrand is not finite at t = {} (panel [{}, {}])", t, a, b));
      }
      sum += rule.weights[i] * value;
      magnitude += rule.weights[i] * std::abs(value);
    }
    evaluations += rule.order();
    return {half * sum, std::abs(half) * magnitude};
  }
};

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options) {
  Panel panel{cached_rule(options.order), f};
  QuadratureResult result;
  const double width = b - a;
  if (width == 0.0) return result;

  struct Pending {
    double lo, hi, estimate;
    int depth;
  };
  std::vector<Pending> stack{{a, b, panel(a, b).value, 0}};
  // Depth-first; the right half is pushed first so panels finish left to right.
  while (!stack.empty()) {
    const Pending p = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (p.lo + p.hi);
    const Estimate left = panel(p.lo, mid);
    const Estimate right = panel(mid, p.hi);
    const double err = std::abs(left.value + right.value - p.estimate);
    const double share = options.abs_tol * std::abs((p.hi - p.lo) / width);
    // Below the rounding level of the panel sums no refinement can help.
    const double floor = kRoundoffFactor * std::numeric_limits<double>::epsilon() *
                         (left.magnitude + right.magnitude);
    if (err <= std::max(share, floor)) {
      result.value += left.value + right.value;
      result.error_estimate += err;
      result.panels += 2;
      continue;
    }
    if (p.depth + 1 >= options.max_depth) {
      fail(ErrorKind::quadrature,
           fmt::format("quadrature did not converge; worst panel [{}, {}] with error {:.3e}",
                       p.lo, p.hi, err));
    }
    stack.push_back({mid, p.hi, right.value, p.depth + 1});
    stack.push_back({p.lo, mid, left.value, p.depth + 1});
  }
  result.evaluations = panel.evaluations;
  return result;
}

}  // namespace homfinsler
