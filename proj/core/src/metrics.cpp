#include "homfinsler/metrics.hpp"

#include "homfinsler/error.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>

namespace homfinsler {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::randers: return "randers";
    case Family::matsumoto: return "matsumoto";
    case Family::kropina: return "kropina";
    case Family::infinite_series: return "infinite_series";
    case Family::exponential: return "exponential";
    case Family::custom: return "custom";
  }
  return "custom";
}

Family family_from_string(std::string_view name) {
  for (Family f : {Family::randers, Family::matsumoto, Family::kropina, Family::infinite_series,
                   Family::exponential, Family::custom}) {
    if (to_string(f) == name) return f;
  }
  fail(ErrorKind::config,
       fmt::format("unknown metric family '{}' (expected randers, matsumoto, kropina, "
                   "infinite_series, exponential or custom)",
                   name));
}

PhiFamily PhiFamily::randers() {
  return {Family::randers, "randers", [](double s) { return PhiJet{1.0 + s, 1.0, 0.0, 0.0}; },
          {{-1.0, kInf}}};
}

PhiFamily PhiFamily::matsumoto() {
  return {Family::matsumoto, "matsumoto",
          [](double s) {
            const double u = 1.0 / (1.0 - s);
            return PhiJet{u, u * u, 2.0 * u * u * u, 6.0 * u * u * u * u};
          },
          {{-kInf, 0.5}, {0.5, 1.0}}};
}

PhiFamily PhiFamily::kropina() {
  return {Family::kropina, "kropina",
          [](double s) {
            const double u = 1.0 / s;
            return PhiJet{u, -u * u, 2.0 * u * u * u, -6.0 * u * u * u * u};
          },
          {{0.0, kInf}}};
}

PhiFamily PhiFamily::infinite_series() {
  // s^2 / (s - 1) = s + 1 + 1 / (s - 1)
  return {Family::infinite_series, "infinite_series",
          [](double s) {
            const double u = 1.0 / (s - 1.0);
            return PhiJet{s * s * u, 1.0 - u * u, 2.0 * u * u * u, -6.0 * u * u * u * u};
          },
          {{1.0, kInf}}};
}

PhiFamily PhiFamily::exponential() {
  return {Family::exponential, "exponential",
          [](double s) {
            const double e = std::exp(s);
            return PhiJet{e, e, e, e};
          },
          {{-kInf, 1.0}, {1.0, kInf}}};
}

PhiFamily PhiFamily::riemannian() {
  return {Family::custom, "riemannian", [](double) { return PhiJet{1.0, 0.0, 0.0, 0.0}; },
          {{-kInf, kInf}}};
}

PhiFamily PhiFamily::polynomial(std::vector<double> coefficients) {
  if (coefficients.empty()) fail(ErrorKind::config, "polynomial phi needs at least one coefficient");
  auto jet = [c = coefficients](double s) {
    // Horner for the value and the first three derivatives at once.
    PhiJet j;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      j.d3 = j.d3 * s + 3.0 * j.d2;
      j.d2 = j.d2 * s + 2.0 * j.d1;
      j.d1 = j.d1 * s + j.phi;
      j.phi = j.phi * s + *it;
    }
    return j;
  };
  PhiFamily out(Family::custom, "polynomial", std::move(jet), {{-kInf, kInf}});
  out.coefficients_ = std::move(coefficients);
  return out;
}

PhiFamily PhiFamily::custom(std::string name, JetFn jet, std::vector<Interval> domain) {
  return {Family::custom, std::move(name), std::move(jet), std::move(domain)};
}

PhiFamily PhiFamily::from_family(Family family) {
  switch (family) {
    case Family::randers: return randers();
    case Family::matsumoto: return matsumoto();
    case Family::kropina: return kropina();
    case Family::infinite_series: return infinite_series();
    case Family::exponential: return exponential();
    case Family::custom: break;
  }
  fail(ErrorKind::config, "custom metric families need explicit phi data");
}

bool PhiFamily::in_domain(double s) const noexcept {
  bool inside = false;
  for (const auto& interval : domain_) inside = inside || interval.contains(s);
  if (!inside) return false;
  const PhiJet j = jet_(s);
  const double denom = j.phi - s * j.d1;
  return std::isfinite(j.phi) && std::isfinite(j.d1) && j.phi > 0.0 && denom != 0.0;
}

double finsler_norm(const MetricSpec& spec, double alpha, double beta) {
  if (!(alpha > 0.0)) fail(ErrorKind::domain, "alpha must be positive");
  const double s = beta / alpha;
  if (!spec.phi.in_domain(s)) {
    fail(ErrorKind::domain,
         fmt::format("s = {} is outside the domain of phi for {}", s, spec.phi.name()));
  }
  return alpha * spec.phi.phi(s);
}

double formal_norm(const MetricSpec& spec, double alpha, double beta) {
  if (!(alpha > 0.0)) fail(ErrorKind::domain, "alpha must be positive");
  const double s = beta / alpha;
  const double value = alpha * spec.phi.phi(s);
  if (!std::isfinite(value)) {
    fail(ErrorKind::singularity, fmt::format("phi is singular at s = {} for {}", s, spec.phi.name()));
  }
  return value;
}

double shen_expression(const PhiFamily& phi, double s, double b) {
  const PhiJet j = phi.jet(s);
  return j.phi - s * j.d1 + (b * b - s * s) * j.d2;
}

ShenReport shen_check(const MetricSpec& spec, int samples) {
  if (samples < 3) fail(ErrorKind::domain, "shen_check needs at least 3 samples");
  const double b = spec.b;
  ShenReport report;
  report.holds = true;
  report.min_value = std::numeric_limits<double>::infinity();

  auto record_failure = [&](double s, std::string reason) {
    report.holds = false;
    if (!report.first_failure_s) {
      report.first_failure_s = s;
      report.failure_reason = std::move(reason);
    }
  };

  auto visit = [&](double s) {
    const PhiJet j = spec.phi.jet(s);
    const double value = j.phi - s * j.d1 + (b * b - s * s) * j.d2;
    if (!std::isfinite(value) || !std::isfinite(j.phi)) {
      record_failure(s, "phi is singular");
      return;
    }
    if (value < report.min_value) {
      report.min_value = value;
      report.argmin_s = s;
    }
    if (!(j.phi > 0.0)) {
      report.phi_positive = false;
      record_failure(s, "phi <= 0");
    }
    if (!(value > 0.0)) record_failure(s, "phi - s phi' + (b^2 - s^2) phi'' <= 0");
  };

  for (int k = 0; k < samples; ++k) {
    // Endpoints exactly; interior points by linear interpolation.
    const double s = (k == samples - 1) ? b : -b + 2.0 * b * k / (samples - 1);
    visit(s);
  }
  visit(0.0);
  report.value_at_zero = shen_expression(spec.phi, 0.0, b);
  return report;
}

}  // namespace homfinsler
