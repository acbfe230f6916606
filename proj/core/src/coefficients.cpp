#include "homfinsler/curvature.hpp"
#include "homfinsler/error.hpp"
#include "polynomial.hpp"

#include <fmt/format.h>

#include <cmath>
#include <ostream>

namespace homfinsler {

using detail::Polynomial;

namespace {

void finish_bundle(CoefficientBundle& c) {
  c.Delta = 1.0 + c.s * c.Q + (c.b * c.b - c.s * c.s) * c.Qp;
  if (std::abs(c.Delta) < kSingularTolerance) {
    fail(ErrorKind::singularity,
         fmt::format("Delta = 0 at s = {}, b = {} (1 + sQ + (b^2 - s^2)Q' vanishes)", c.s, c.b));
  }
  c.psi = c.Qp / (2.0 * c.Delta);
}

}  // namespace

CoefficientBundle coefficients_generic(const PhiFamily& phi, double s, double b, int n) {
  const PhiJet j = phi.jet(s);
  // D = phi - s phi', D' = -s phi'', D'' = -phi'' - s phi'''
  const double D = j.phi - s * j.d1;
  const double Dp = -s * j.d2;
  const double Dpp = -j.d2 - s * j.d3;
  if (!std::isfinite(D) || std::abs(D) < kSingularTolerance) {
    fail(ErrorKind::singularity,
         fmt::format("phi - s phi' = 0 at s = {} ({} Q)", s, phi.name()));
  }
  const double num1 = j.d2 * D - j.d1 * Dp;

  CoefficientBundle c;
  c.s = s;
  c.b = b;
  c.n = n;
  c.Q = j.d1 / D;
  c.Qp = num1 / (D * D);
  c.Qpp = (j.d3 * D - j.d1 * Dpp) / (D * D) - 2.0 * Dp * num1 / (D * D * D);
  const double one_sq = 1.0 + s * c.Q;
  finish_bundle(c);
  c.Phi = -(c.Q - s * c.Qp) * (n * c.Delta + one_sq) - (b * b - s * s) * one_sq * c.Qpp;
  return c;
}

CoefficientBundle coefficients_infinite_series(double s, double b, int n) {
  if (std::abs(s) < kSingularTolerance) {
    fail(ErrorKind::singularity, "s = 0 (infinite series Q)");
  }
  const double b2 = b * b;
  const double s2 = s * s;
  const double s3 = s2 * s;
  CoefficientBundle c;
  c.s = s;
  c.b = b;
  c.n = n;
  c.Q = 1.0 - 2.0 / s;
  c.Qp = 2.0 / s2;
  c.Qpp = -4.0 / s3;
  const double delta = (s3 - 3.0 * s2 + 2.0 * b2) / s2;
  if (std::abs(delta) < kSingularTolerance) {
    fail(ErrorKind::singularity,
         fmt::format("Delta = 0 at s = {}, b = {} (s^3 - 3s^2 + 2b^2 vanishes)", s, b));
  }
  c.Delta = delta;
  c.Phi = (-(n + 1.0) * s2 * s2 + (7.0 * n + 1.0) * s3 - 12.0 * n * s2 +
           2.0 * (2.0 - n) * b2 * s + 4.0 * (2.0 * n - 1.0) * b2) /
          s3;
  c.psi = c.Qp / (2.0 * c.Delta);
  return c;
}

CoefficientBundle coefficients_exponential(double s, double b, int n) {
  const double u = 1.0 - s;
  if (std::abs(u) < kSingularTolerance) {
    fail(ErrorKind::singularity, "s = 1 (exponential Q)");
  }
  const double b2 = b * b;
  const double u2 = u * u;
  CoefficientBundle c;
  c.s = s;
  c.b = b;
  c.n = n;
  c.Q = 1.0 / u;
  c.Qp = 1.0 / u2;
  c.Qpp = 2.0 / (u2 * u);
  const double delta = (1.0 + b2 - s * s - s) / u2;
  if (std::abs(delta) < kSingularTolerance) {
    fail(ErrorKind::singularity,
         fmt::format("Delta = 0 at s = {}, b = {} (1 + b^2 - s^2 - s vanishes)", s, b));
  }
  c.Delta = delta;
  c.Phi = -(2.0 * n * s * s * s + n * s * s - (3.0 + 3.0 * n + 2.0 * n * b2) * s +
            (2.0 + n) * b2 + n + 1.0) /
          (u2 * u2);
  c.psi = c.Qp / (2.0 * c.Delta);
  return c;
}

bool has_closed_form(Family family) noexcept {
  return family == Family::infinite_series || family == Family::exponential;
}

CoefficientBundle coefficients_closed_form(Family family, double s, double b, int n) {
  switch (family) {
    case Family::infinite_series: return coefficients_infinite_series(s, b, n);
    case Family::exponential: return coefficients_exponential(s, b, n);
    default: break;
  }
  fail(ErrorKind::domain,
       fmt::format("no closed-form specialisation for the {} family", to_string(family)));
}

// ---------------------------------------------------------------------------
// A(s) and B(s)

namespace {

// A = N / (2 D^2) for the infinite series metric, B = N / (2 D^2) for the
// exponential metric with its own N and D.
struct RationalCoefficient {
  Polynomial numerator;
  Polynomial denominator;
};

RationalCoefficient rational_coefficient(Family family, double b, int n) {
  const double b2 = b * b;
  const double nn = n;
  if (family == Family::infinite_series) {
    return {Polynomial{0.0, 4.0 * (2.0 * nn - 1.0) * b2, 2.0 * (2.0 - nn) * b2, -12.0 * nn,
                       7.0 * nn + 1.0, -(nn + 1.0)},
            Polynomial{2.0 * b2, 0.0, -3.0, 1.0}};
  }
  if (family == Family::exponential) {
    return {Polynomial{(2.0 + nn) * b2 + nn + 1.0, -(3.0 + 3.0 * nn + 2.0 * nn * b2), nn,
                       2.0 * nn},
            Polynomial{1.0 + b2, -1.0, -1.0}};
  }
  fail(ErrorKind::domain,
       fmt::format("no mean Berwald closed form for the {} family", to_string(family)));
}

void check_berwald_locus(Family family, double s, double denominator) {
  if (family == Family::infinite_series && std::abs(s) < kSingularTolerance) {
    fail(ErrorKind::singularity, "s = 0 (infinite series Q)");
  }
  if (family == Family::exponential && std::abs(1.0 - s) < kSingularTolerance) {
    fail(ErrorKind::singularity, "s = 1 (exponential Q)");
  }
  if (std::abs(denominator) < kSingularTolerance) {
    fail(ErrorKind::singularity, fmt::format("Delta = 0 at s = {} (Berwald coefficient)", s));
  }
}

}  // namespace

ScalarJet berwald_coefficient(Family family, double s, double b, int n) {
  const auto [N, D] = rational_coefficient(family, b, n);
  const double d = D(s);
  check_berwald_locus(family, s, d);

  // A = N / (2 D^2), A' = U / (2 D^3) with U = N' D - 2 N D',
  // A'' = (U' D - 3 U D') / (2 D^4).
  const Polynomial Dp = D.derivative();
  const Polynomial U = N.derivative() * D - 2.0 * (N * Dp);
  const Polynomial W = U.derivative() * D - 3.0 * (U * Dp);
  const double d2 = d * d;
  return {N(s) / (2.0 * d2), U(s) / (2.0 * d2 * d), W(s) / (2.0 * d2 * d2)};
}

ScalarJet berwald_coefficient_transcribed(Family family, double s, double b, int n) {
  const double b2 = b * b;
  const double b4 = b2 * b2;
  const double nn = n;
  if (family == Family::infinite_series) {
    const Polynomial D{2.0 * b2, 0.0, -3.0, 1.0};
    const Polynomial N1{8.0 * (2.0 * nn - 1.0) * b4,
                        8.0 * (2.0 - nn) * b4,
                        -36.0 * b2,
                        4.0 * (nn + 13.0) * b2,
                        -2.0 * ((nn + 13.0) * b2 + 18.0 * nn),
                        36.0 * nn,
                        -11.0 * nn + 1.0,
                        nn + 1.0};
    const Polynomial N2{16.0 * (2.0 - nn) * b4 * b2,
                        288.0 * (nn - 1.0) * b4,
                        48.0 * (13.0 - 5.0 * nn) * b4,
                        48.0 * ((nn - 7.0) * b4 - (nn + 9.0) * b2),
                        36.0 * (20.0 + 11.0 * nn) * b2,
                        -4.0 * ((37.0 * nn + 114.0) * b2 + 54.0 * nn),
                        24.0 * ((nn + 6.0) * b2 + 12.0 * nn),
                        -144.0 * nn,
                        -6.0 * (-5.0 * nn + 1.0),
                        -2.0 * (nn + 1.0)};
    const double d = D(s);
    check_berwald_locus(family, s, d);
    const ScalarJet base = berwald_coefficient(family, s, b, n);
    return {base.value, N1(s) / (2.0 * d * d * d), N2(s) / (2.0 * d * d * d * d)};
  }
  if (family == Family::exponential) {
    const Polynomial M{1.0 + b2, -1.0, -1.0};
    const Polynomial N1{-(1.0 + nn + 3.0 * nn * b2 - b2 + 2.0 * nn * b4),
                        4.0 * (nn + 2.0) * b2 + 3.0 * nn + 1.0, -3.0 * (nn + 3.0), 0.0,
                        2.0 * nn};
    const Polynomial N2{2.0 * ((-nn + 6.0) * b2 + (-nn + 4.0) * b4 - 1.0),
                        2.0 * (-6.0 * nn * b4 - 8.0 * nn * b2 + 2.0 * b2 - 3.0 * nn - 11.0),
                        20.0 * (nn + 2.0) * b2 + 6.0 * (2.0 * nn - 1.0),
                        -4.0 * (nn - 2.0 * nn * b2 + 8.0),
                        -2.0 * nn,
                        4.0 * nn};
    const double m = M(s);
    check_berwald_locus(family, s, m);
    const ScalarJet base = berwald_coefficient(family, s, b, n);
    return {base.value, N1(s) / (2.0 * m * m * m), N2(s) / (2.0 * m * m * m * m)};
  }
  fail(ErrorKind::domain,
       fmt::format("no transcribed derivatives for the {} family", to_string(family)));
}

DerivativeAudit audit_berwald_derivatives(Family family, double b, int n,
                                          std::span<const double> s_values, double tolerance) {
  DerivativeAudit audit;
  audit.family = family;
  audit.b = b;
  audit.n = n;
  audit.tolerance = tolerance;
  auto rel = [](double a, double ref) { return std::abs(a - ref) / std::max(1.0, std::abs(ref)); };
  for (double s : s_values) {
    const ScalarJet derived = berwald_coefficient(family, s, b, n);
    const ScalarJet printed = berwald_coefficient_transcribed(family, s, b, n);
    audit.rows.push_back({s, derived.d1, printed.d1, derived.d2, printed.d2});
    audit.max_rel_d1 = std::max(audit.max_rel_d1, rel(printed.d1, derived.d1));
    audit.max_rel_d2 = std::max(audit.max_rel_d2, rel(printed.d2, derived.d2));
  }
  return audit;
}

void write_audit_log(std::ostream& out, std::span<const DerivativeAudit> audits) {
  out << "# Mean Berwald coefficient derivative audit\n\n"
      << "Derived derivatives come from exact polynomial differentiation of the\n"
      << "rational coefficient; the transcribed ones are the hand-expanded\n"
      << "polynomials. The library always uses the derived form.\n\n"
      << "| family | b | n | max rel. err d1 | max rel. err d2 | status |\n"
      << "|---|---|---|---|---|---|\n";
  for (const auto& a : audits) {
    std::string status = a.agrees() ? "agree" : "MISMATCH (derived form used)";
    if (!a.agrees()) {
      status += a.d1_agrees() ? "; d1 ok" : "; d1 differs";
      status += a.d2_agrees() ? "; d2 ok" : "; d2 differs";
    }
    out << fmt::format("| {} | {} | {} | {:.3e} | {:.3e} | {} |\n", to_string(a.family), a.b,
                       a.n, a.max_rel_d1, a.max_rel_d2, status);
  }
  for (const auto& a : audits) {
    if (a.agrees()) continue;
    out << fmt::format("\n## {} (b = {}, n = {})\n\n", to_string(a.family), a.b, a.n)
        << "| s | derived d1 | transcribed d1 | derived d2 | transcribed d2 |\n"
        << "|---|---|---|---|---|\n";
    for (const auto& r : a.rows) {
      out << fmt::format("| {:.6g} | {:.12g} | {:.12g} | {:.12g} | {:.12g} |\n", r.s,
                         r.derived_d1, r.transcribed_d1, r.derived_d2, r.transcribed_d2);
    }
  }
}

}  // namespace homfinsler
