#pragma once

// S-curvature and mean Berwald curvature at the origin of a reductive
// homogeneous space carrying an invariant (alpha, beta)-metric.
//
// Public entry points take tangent vectors y in m-coordinates and return
// E in m-coordinates; frame components are used internally.

#include "homfinsler/algebra.hpp"
#include "homfinsler/metrics.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace homfinsler {

enum class Mode {
  formal,     // evaluate every formula regardless of metric validity
  validated,  // refuse models or metrics that fail validation
};

std::string_view to_string(Mode mode) noexcept;
Mode mode_from_string(std::string_view name);

enum class Path { closed_form, generic, tensors, finite_difference };

std::string_view to_string(Path path) noexcept;

/// Coefficients of the (alpha, beta) S-curvature formula at one (s, b, n).
struct CoefficientBundle {
  double s = 0.0;
  double b = 0.0;
  int n = 0;
  double Q = 0.0;
  double Qp = 0.0;
  double Qpp = 0.0;
  double Delta = 0.0;
  double Phi = 0.0;
  double psi = 0.0;
};

inline constexpr double kSingularTolerance = 1e-12;

/// Q = phi' / (phi - s phi'), Delta, Phi and psi from phi and its derivatives.
/// Throws ErrorKind::singularity when phi - s phi' or Delta vanishes.
CoefficientBundle coefficients_generic(const PhiFamily& phi, double s, double b, int n);

/// Specialised closed forms for phi = s^2 / (s - 1).
CoefficientBundle coefficients_infinite_series(double s, double b, int n);

/// Specialised closed forms for phi = e^s.
CoefficientBundle coefficients_exponential(double s, double b, int n);

bool has_closed_form(Family family) noexcept;

/// Dispatches to the specialised coefficients; throws ErrorKind::domain for
/// families without one.
CoefficientBundle coefficients_closed_form(Family family, double s, double b, int n);

/// A homogeneous Finsler space at the origin: model, invariant vector,
/// metric, frame and origin tensors. Immutable after construction.
class FinslerSpace {
 public:
  static constexpr int kShenSamples = 201;

  /// In validated mode throws ErrorKind::validation if the model fails
  /// validate_model, the metric fails shen_check, or b >= 1.
  FinslerSpace(ReductiveModel model, InvariantVector v, PhiFamily phi, Mode mode = Mode::formal);

  const ReductiveModel& model() const noexcept { return model_; }
  const InvariantVector& v() const noexcept { return v_; }
  const MetricSpec& spec() const noexcept { return spec_; }
  const OriginTensors& tensors() const noexcept { return tensors_; }
  const Frame& frame() const noexcept { return tensors_.frame; }
  const ValidationReport& validation() const noexcept { return validation_; }
  const ShenReport& shen() const noexcept { return shen_; }
  Mode mode() const noexcept { return mode_; }
  int n() const noexcept { return model_.m_dim(); }

  /// alpha(y) and s = beta / alpha for y in m-coordinates.
  double alpha(const Vector& y) const { return model_.norm(y); }
  double s_of(const Vector& y) const;

 private:
  ReductiveModel model_;
  InvariantVector v_;
  MetricSpec spec_;
  Mode mode_;
  OriginTensors tensors_;
  ValidationReport validation_;
  ShenReport shen_;
};

/// S(H, y) assembled from the coefficients and the brackets <[v,y]_m, y>,
/// <[v,y]_m, v>. `path` is closed_form (family-specific coefficients) or
/// generic (coefficients from phi). Throws ErrorKind::domain for y = 0.
double s_curvature(const FinslerSpace& space, const Vector& y, Path path);

/// S(H, y) = -Phi / (2 alpha Delta^2) (r_00 - 2 alpha Q s_0) using the origin
/// tensors and the generic coefficients.
double s_curvature_via_tensors(const FinslerSpace& space, const Vector& y);

/// Scalar coefficient of the mean Berwald formulas (A for the infinite series
/// metric, B for the exponential one) and its s-derivatives.
struct ScalarJet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// A(s) or B(s) with derivatives obtained by exact polynomial differentiation
/// of the rational function.
ScalarJet berwald_coefficient(Family family, double s, double b, int n);

/// The first and second s-derivatives as hand-expanded polynomials in the
/// literature. Used only by the transcription audit; see
/// docs/berwald_derivative_audit.md for the known discrepancies.
ScalarJet berwald_coefficient_transcribed(Family family, double s, double b, int n);

struct BerwaldWorkspace {
  Family family = Family::custom;
  double alpha = 0.0;
  double s = 0.0;
  double coefficient = 0.0;  // A or B
  double dA_ds = 0.0;
  double d2A_ds2 = 0.0;
  Vector y_frame;    // y^i in the origin frame
  Vector y_lowered;  // y_i = y^i since a_ij = delta_ij in the frame
  Vector b_lowered;  // b_i = c delta_in
  Vector s_yi;       // ds / dy^i
  Matrix s_yiyj;     // d^2 s / dy^i dy^j
};

BerwaldWorkspace berwald_workspace(const FinslerSpace& space, const Vector& y);

/// E_ij(H, y) in m-coordinates. closed_form assembles the infinite-series or
/// exponential formula from the workspace; finite_difference returns half the
/// central-difference Hessian of the generic S with one Richardson step.
Matrix mean_berwald(const FinslerSpace& space, const Vector& y, Path path);

struct CurvatureSample {
  Vector y;
  double S = 0.0;
  Matrix E;
  Path path = Path::generic;
};

struct IsotropyReport {
  bool isotropic = false;
  double c_H = 0.0;
  bool vanishing = false;
  double residual = 0.0;
  double max_abs_S = 0.0;
  int samples_used = 0;
};

/// Least-squares fit of S(H, y) = (n + 1) c F(y) over `sample_count` seeded
/// unit directions plus y = v. Directions on a singular locus are skipped.
IsotropyReport isotropy_test(const FinslerSpace& space, int sample_count,
                             std::uint64_t seed = 20240607);

/// Uniform unit directions (normalised Gaussian draws) in m-coordinates,
/// unit with respect to the inner product on m.
std::vector<Vector> sample_directions(const ReductiveModel& model, int count, std::uint64_t seed);

struct DerivativeAuditRow {
  double s = 0.0;
  double derived_d1 = 0.0;
  double transcribed_d1 = 0.0;
  double derived_d2 = 0.0;
  double transcribed_d2 = 0.0;
};

struct DerivativeAudit {
  Family family = Family::custom;
  double b = 0.0;
  int n = 0;
  double tolerance = 1e-6;
  std::vector<DerivativeAuditRow> rows;
  double max_rel_d1 = 0.0;
  double max_rel_d2 = 0.0;

  bool d1_agrees() const noexcept { return max_rel_d1 <= tolerance; }
  bool d2_agrees() const noexcept { return max_rel_d2 <= tolerance; }
  bool agrees() const noexcept { return d1_agrees() && d2_agrees(); }
};

/// Compares derived and transcribed s-derivatives of A or B.
DerivativeAudit audit_berwald_derivatives(Family family, double b, int n,
                                          std::span<const double> s_values,
                                          double tolerance = 1e-6);

/// Markdown log of an audit; the derived form is the one the library uses.
void write_audit_log(std::ostream& out, std::span<const DerivativeAudit> audits);

}  // namespace homfinsler
