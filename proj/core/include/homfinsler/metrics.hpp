#pragma once

// (alpha, beta)-metrics F = alpha * phi(beta / alpha).

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace homfinsler {

enum class Family { randers, matsumoto, kropina, infinite_series, exponential, custom };

std::string_view to_string(Family family) noexcept;
/// Parses the names accepted by `to_string`; throws ErrorKind::config otherwise.
Family family_from_string(std::string_view name);

/// phi and its first three derivatives at one point.
struct PhiJet {
  double phi = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
};

/// Open interval (lo, hi); infinite ends are allowed.
struct Interval {
  double lo;
  double hi;

  bool contains(double s) const noexcept { return s > lo && s < hi; }
};

class PhiFamily {
 public:
  using JetFn = std::function<PhiJet(double)>;

  static PhiFamily randers();          // 1 + s
  static PhiFamily matsumoto();        // 1 / (1 - s)
  static PhiFamily kropina();          // 1 / s
  static PhiFamily infinite_series();  // s^2 / (s - 1)
  static PhiFamily exponential();      // e^s
  /// phi == 1, the Riemannian case. Tagged custom.
  static PhiFamily riemannian();
  /// phi(s) = sum_k coefficients[k] s^k with exact derivatives.
  static PhiFamily polynomial(std::vector<double> coefficients);
  /// User-supplied phi with derivatives; `domain` lists where phi > 0 and
  /// phi - s phi' != 0.
  static PhiFamily custom(std::string name, JetFn jet, std::vector<Interval> domain);

  static PhiFamily from_family(Family family);

  Family family() const noexcept { return family_; }
  const std::string& name() const noexcept { return name_; }

  PhiJet jet(double s) const { return jet_(s); }
  double phi(double s) const { return jet_(s).phi; }

  /// Intervals where phi > 0 and phi - s phi' != 0.
  const std::vector<Interval>& domain() const noexcept { return domain_; }
  bool in_domain(double s) const noexcept;

  /// Polynomial coefficients when built by `polynomial`, empty otherwise.
  const std::vector<double>& coefficients() const noexcept { return coefficients_; }

 private:
  PhiFamily(Family family, std::string name, JetFn jet, std::vector<Interval> domain)
      : family_(family), name_(std::move(name)), jet_(std::move(jet)), domain_(std::move(domain)) {}

  Family family_;
  std::string name_;
  JetFn jet_;
  std::vector<Interval> domain_;
  std::vector<double> coefficients_;
};

struct MetricSpec {
  PhiFamily phi;
  double b = 0.0;  // ||beta||_alpha, constant on a homogeneous space
};

/// alpha * phi(beta / alpha). Throws ErrorKind::domain for alpha <= 0 or
/// s outside phi's domain.
double finsler_norm(const MetricSpec& spec, double alpha, double beta);

/// alpha * phi(beta / alpha) without the positivity domain check; only a
/// non-finite result is rejected. Used by formal-mode computations.
double formal_norm(const MetricSpec& spec, double alpha, double beta);

/// phi(s) - s phi'(s) + (b^2 - s^2) phi''(s).
double shen_expression(const PhiFamily& phi, double s, double b);

struct ShenReport {
  bool holds = false;
  double min_value = 0.0;  // smallest Shen expression over the grid
  double argmin_s = 0.0;
  bool phi_positive = true;
  double value_at_zero = 0.0;  // Shen expression at s = 0
  /// First grid point where the check failed and why, if any.
  std::optional<double> first_failure_s;
  std::string failure_reason;
};

/// Evaluates the Shen positivity condition on `samples` uniform points of
/// [-b, b] (endpoints included) plus s = 0. Singular points are recorded as
/// failures. Requires samples >= 3.
ShenReport shen_check(const MetricSpec& spec, int samples);

}  // namespace homfinsler
