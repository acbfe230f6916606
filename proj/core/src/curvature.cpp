#include "homfinsler/curvature.hpp"

#include "homfinsler/error.hpp"

#include <fmt/format.h>

#include <cmath>
#include <random>

namespace homfinsler {

std::string_view to_string(Mode mode) noexcept {
  return mode == Mode::formal ? "formal" : "validated";
}

Mode mode_from_string(std::string_view name) {
  if (name == "formal") return Mode::formal;
  if (name == "validated") return Mode::validated;
  fail(ErrorKind::config, fmt::format("unknown mode '{}' (expected formal or validated)", name));
}

std::string_view to_string(Path path) noexcept {
  switch (path) {
    case Path::closed_form: return "closed_form";
    case Path::generic: return "generic";
    case Path::tensors: return "tensors";
    case Path::finite_difference: return "finite_difference";
  }
  return "generic";
}

// ---------------------------------------------------------------------------
// FinslerSpace

FinslerSpace::FinslerSpace(ReductiveModel model, InvariantVector v, PhiFamily phi, Mode mode)
    : model_(std::move(model)),
      v_(std::move(v)),
      spec_{std::move(phi), 0.0},
      mode_(mode),
      tensors_(origin_tensors(model_, v_)),
      validation_(validate_model(model_, v_)) {
  spec_.b = v_.b;
  shen_ = shen_check(spec_, kShenSamples);

  if (mode_ != Mode::validated) return;
  if (!validation_.ok()) {
    std::string names;
    for (const auto& name : validation_.failed()) names += (names.empty() ? "" : ", ") + name;
    fail(ErrorKind::validation, fmt::format("model failed validation checks: {}", names));
  }
  if (!(v_.b < 1.0)) {
    fail(ErrorKind::validation, fmt::format("||beta|| = {} but validated mode needs b < 1", v_.b));
  }
  if (!shen_.holds) {
    fail(ErrorKind::validation,
         fmt::format("{} metric fails the Shen condition on |s| <= b = {}: {} at s = {}",
                     spec_.phi.name(), v_.b, shen_.failure_reason, shen_.first_failure_s.value_or(0.0)));
  }
}

double FinslerSpace::s_of(const Vector& y) const {
  return model_.inner(v_.coords, y) / model_.norm(y);
}

// ---------------------------------------------------------------------------
// S-curvature

namespace {

double checked_alpha(const FinslerSpace& space, const Vector& y) {
  if (y.size() != space.n()) {
    fail(ErrorKind::structural,
         fmt::format("y has {} components but m has dimension {}", y.size(), space.n()));
  }
  const double alpha = space.alpha(y);
  if (!(alpha > 0.0)) fail(ErrorKind::domain, "S-curvature is undefined at y = 0");
  return alpha;
}

}  // namespace

double s_curvature(const FinslerSpace& space, const Vector& y, Path path) {
  if (path == Path::tensors) return s_curvature_via_tensors(space, y);
  if (path == Path::finite_difference) {
    fail(ErrorKind::domain, "finite_difference is a mean Berwald path, not an S-curvature path");
  }
  const double alpha = checked_alpha(space, y);
  const auto& v = space.v();
  if (v.is_zero()) return 0.0;

  const double s = space.model().inner(v.coords, y) / alpha;
  const CoefficientBundle c =
      path == Path::closed_form
          ? coefficients_closed_form(space.spec().phi.family(), s, v.b, space.n())
          : coefficients_generic(space.spec().phi, s, v.b, space.n());

  const Vector vy = space.model().bracket_m(v.coords, y);
  const double p = space.model().inner(vy, y);
  const double q = space.model().inner(vy, v.coords);
  return c.Phi / (2.0 * alpha * c.Delta * c.Delta) * (p + alpha * c.Q * q);
}

double s_curvature_via_tensors(const FinslerSpace& space, const Vector& y) {
  const double alpha = checked_alpha(space, y);
  const auto& v = space.v();
  if (v.is_zero()) return 0.0;

  const double s = space.model().inner(v.coords, y) / alpha;
  const CoefficientBundle c = coefficients_generic(space.spec().phi, s, v.b, space.n());
  const Vector y_frame = space.frame().to_frame(y);
  const double r00 = space.tensors().r00(y_frame);
  const double s0 = space.tensors().s0(y_frame);
  return -c.Phi / (2.0 * alpha * c.Delta * c.Delta) * (r00 - 2.0 * alpha * c.Q * s0);
}

// ---------------------------------------------------------------------------
// Mean Berwald curvature

BerwaldWorkspace berwald_workspace(const FinslerSpace& space, const Vector& y) {
  const double alpha = checked_alpha(space, y);
  const int n = space.n();
  const Family family = space.spec().phi.family();
  if (!has_closed_form(family)) {
    fail(ErrorKind::domain,
         fmt::format("no mean Berwald closed form for the {} family", space.spec().phi.name()));
  }

  BerwaldWorkspace ws;
  ws.family = family;
  ws.alpha = alpha;
  ws.y_frame = space.frame().to_frame(y);
  ws.y_lowered = ws.y_frame;
  ws.b_lowered = Vector::Zero(n);
  ws.b_lowered[n - 1] = space.v().c;
  ws.s = ws.b_lowered.dot(ws.y_frame) / alpha;

  const ScalarJet coefficient = berwald_coefficient(family, ws.s, space.v().b, n);
  ws.coefficient = coefficient.value;
  ws.dA_ds = coefficient.d1;
  ws.d2A_ds2 = coefficient.d2;

  const Vector& yl = ws.y_lowered;
  const Vector& bl = ws.b_lowered;
  const double a2 = alpha * alpha;
  ws.s_yi = (bl * alpha - ws.s * yl) / a2;
  ws.s_yiyj = (-(bl * yl.transpose() + yl * bl.transpose()) * alpha +
               3.0 * ws.s * yl * yl.transpose() - a2 * ws.s * Matrix::Identity(n, n)) /
              (a2 * a2);
  return ws;
}

namespace {

Matrix mean_berwald_closed_form(const FinslerSpace& space, const Vector& y) {
  const int n = space.n();
  if (space.v().is_zero()) return Matrix::Zero(n, n);

  const BerwaldWorkspace ws = berwald_workspace(space, y);
  const auto& model = space.model();
  const auto& frame = space.frame();
  const Vector& v = space.v().coords;

  const Vector vy = model.bracket_m(v, y);
  const double P = model.inner(vy, y);
  const double q = model.inner(vy, v);
  Vector g(n);
  Vector h(n);
  std::vector<Vector> bv(n);
  for (int i = 0; i < n; ++i) {
    bv[i] = model.bracket_m(v, frame.vector(i));
    g[i] = model.inner(bv[i], y) + model.inner(vy, frame.vector(i));
    h[i] = model.inner(bv[i], v);
  }

  const double A = ws.coefficient;
  const double alpha = ws.alpha;
  const double a3 = alpha * alpha * alpha;
  const double a5 = a3 * alpha * alpha;
  const double s = ws.s;
  const Vector& si = ws.s_yi;
  const Vector& yl = ws.y_lowered;
  const Vector dA = ws.dA_ds * si;
  const Matrix d2A = ws.d2A_ds2 * si * si.transpose() + ws.dA_ds * ws.s_yiyj;

  Matrix E(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double K = model.inner(bv[j], frame.vector(i)) + model.inner(bv[i], frame.vector(j));
      const double delta = i == j ? 1.0 : 0.0;
      // Derivatives of A/alpha * <[v,y]_m, y>, shared by both metrics.
      const double first = (d2A(i, j) / alpha - yl[i] * dA[j] / a3 - yl[j] * dA[i] / a3 -
                            A * delta / a3 + 3.0 * A * yl[i] * yl[j] / a5) *
                               P +
                           (dA[j] / alpha - A * yl[j] / a3) * g[i] +
                           (dA[i] / alpha - A * yl[i] / a3) * g[j] + A / alpha * K;
      double second = 0.0;
      if (ws.family == Family::infinite_series) {
        // Derivatives of A (1 - 2/s) <[v,y]_m, v>.
        const double w = 1.0 - 2.0 / s;
        const double s2 = s * s;
        second = (w * d2A(i, j) + 2.0 * si[i] * dA[j] / s2 + 2.0 * si[j] * dA[i] / s2 -
                  4.0 * A * si[i] * si[j] / (s2 * s) + 2.0 * A * ws.s_yiyj(i, j) / s2) *
                     q +
                 (w * dA[j] + 2.0 * A * si[j] / s2) * h[i] +
                 (w * dA[i] + 2.0 * A * si[i] / s2) * h[j];
        E(i, j) = 0.5 * (first + second);
      } else {
        // Derivatives of B / (1 - s) <[v,y]_m, v>.
        const double u = 1.0 - s;
        const double u2 = u * u;
        second = (si[i] * dA[j] / u2 + d2A(i, j) / u + 2.0 * A * si[i] * si[j] / (u2 * u) +
                  si[j] * dA[i] / u2 + A * ws.s_yiyj(i, j) / u2) *
                     q +
                 (dA[j] / u + A * si[j] / u2) * h[i] + (dA[i] / u + A * si[i] / u2) * h[j];
        E(i, j) = -0.5 * (first + second);
      }
    }
  }
  Matrix basis = frame.form_to_basis(E);
  return 0.5 * (basis + basis.transpose());
}

Matrix mean_berwald_finite_difference(const FinslerSpace& space, const Vector& y) {
  const int n = space.n();
  checked_alpha(space, y);
  auto S = [&](const Vector& x) {
    try {
      return s_curvature(space, x, Path::generic);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::singularity) throw;
      fail(ErrorKind::singularity,
           fmt::format("finite-difference stencil crosses a singular locus: {}", e.what()));
    }
  };

  auto hessian = [&](double h) {
    Matrix H(n, n);
    const double s_center = S(y);
    for (int i = 0; i < n; ++i) {
      const Vector ei = Vector::Unit(n, i) * h;
      H(i, i) = (S(y + ei) - 2.0 * s_center + S(y - ei)) / (h * h);
      for (int j = 0; j < i; ++j) {
        const Vector ej = Vector::Unit(n, j) * h;
        const double value =
            (S(y + ei + ej) - S(y + ei - ej) - S(y - ei + ej) + S(y - ei - ej)) / (4.0 * h * h);
        H(i, j) = value;
        H(j, i) = value;
      }
    }
    return H;
  };

  const double h = std::max(1e-4, 1e-4 * y.norm());
  if (!(h * h > 0.0) || !std::isfinite(h)) {
    fail(ErrorKind::domain, "finite-difference step underflow");
  }
  const Matrix coarse = hessian(h);
  const Matrix fine = hessian(0.5 * h);
  return 0.5 * (4.0 * fine - coarse) / 3.0;
}

}  // namespace

Matrix mean_berwald(const FinslerSpace& space, const Vector& y, Path path) {
  switch (path) {
    case Path::closed_form: return mean_berwald_closed_form(space, y);
    case Path::finite_difference: return mean_berwald_finite_difference(space, y);
    default: break;
  }
  fail(ErrorKind::domain,
       fmt::format("mean Berwald path must be closed_form or finite_difference, got {}",
                   to_string(path)));
}

// ---------------------------------------------------------------------------
// Isotropy

std::vector<Vector> sample_directions(const ReductiveModel& model, int count, std::uint64_t seed) {
  const int n = model.m_dim();
  const Frame basis = Frame::build(model, InvariantVector::make(model, Vector::Zero(n)));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Vector> out;
  out.reserve(count);
  while (static_cast<int>(out.size()) < count) {
    Vector z(n);
    for (int i = 0; i < n; ++i) z[i] = normal(rng);
    const double norm = z.norm();
    if (norm < 1e-12) continue;
    out.push_back(basis.from_frame(z / norm));
  }
  return out;
}

IsotropyReport isotropy_test(const FinslerSpace& space, int sample_count, std::uint64_t seed) {
  const int n = space.n();
  if (sample_count < n + 1) {
    fail(ErrorKind::domain,
         fmt::format("isotropy_test needs at least n + 1 = {} samples, got {}", n + 1, sample_count));
  }
  std::vector<Vector> directions;
  if (!space.v().is_zero()) directions.push_back(space.v().coords / space.v().c);
  for (auto& d : sample_directions(space.model(), sample_count, seed)) directions.push_back(std::move(d));

  const Path path = has_closed_form(space.spec().phi.family()) ? Path::closed_form : Path::generic;
  std::vector<double> S_values;
  std::vector<double> F_values;
  for (const auto& y : directions) {
    try {
      const double S = s_curvature(space, y, path);
      const double F = formal_norm(space.spec(), space.alpha(y), space.model().inner(space.v().coords, y));
      S_values.push_back(S);
      F_values.push_back(F);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::singularity) throw;
    }
  }

  IsotropyReport report;
  report.samples_used = static_cast<int>(S_values.size());
  double sff = 0.0;
  double ssf = 0.0;
  for (std::size_t k = 0; k < S_values.size(); ++k) {
    sff += F_values[k] * F_values[k];
    ssf += S_values[k] * F_values[k];
    report.max_abs_S = std::max(report.max_abs_S, std::abs(S_values[k]));
  }
  if (report.samples_used < n + 1 || !(sff > 0.0)) {
    fail(ErrorKind::domain, "degenerate sample set for the isotropy fit");
  }
  const double k = ssf / sff;
  for (std::size_t i = 0; i < S_values.size(); ++i) {
    report.residual = std::max(report.residual, std::abs(S_values[i] - k * F_values[i]));
  }
  const double scale = 1.0 + report.max_abs_S;
  report.c_H = k / (n + 1);
  report.isotropic = report.residual <= 1e-8 * scale;
  report.vanishing = report.max_abs_S <= 1e-10 * scale;
  return report;
}

}  // namespace homfinsler
