#include "homfinsler/algebra.hpp"

#include "homfinsler/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace homfinsler {

// ---------------------------------------------------------------------------
// StructureConstants

StructureConstants::StructureConstants(int dim) : dim_(dim) {
  if (dim < 0) fail(ErrorKind::structural, "negative Lie algebra dimension");
  c_.assign(static_cast<std::size_t>(dim) * dim * dim, 0.0);
}

StructureConstants StructureConstants::from_entries(
    int dim, std::span<const StructureEntry> entries, Completion completion) {
  StructureConstants out(dim);
  std::map<std::tuple<int, int, int>, double> given;

  for (const auto& e : entries) {
    if (e.i < 0 || e.j < 0 || e.k < 0 || e.i >= dim || e.j >= dim || e.k >= dim) {
      fail(ErrorKind::structural,
           fmt::format("structure constant index ({}, {}, {}) outside dim_g = {}",
                       e.i, e.j, e.k, dim));
    }
    auto key = std::make_tuple(e.i, e.j, e.k);
    if (auto it = given.find(key); it != given.end() && it->second != e.value) {
      fail(ErrorKind::structural,
           fmt::format("structure constant c^{}_{}{} given twice with different values",
                       e.k, e.i, e.j));
    }
    given[key] = e.value;
  }

  for (const auto& [key, value] : given) {
    const auto [i, j, k] = key;
    if (completion == Completion::none) {
      out.c_[out.index(i, j, k)] = value;
      continue;
    }
    if (i == j && value != 0.0) {
      fail(ErrorKind::structural,
           fmt::format("c^{}_{}{} is non-zero but must vanish by antisymmetry", k, i, j));
    }
    if (auto it = given.find(std::make_tuple(j, i, k));
        it != given.end() && it->second != -value) {
      fail(ErrorKind::structural,
           fmt::format("c^{}_{}{} = {} conflicts with c^{}_{}{} = {}", k, i, j, value, k, j,
                       i, it->second));
    }
    out.c_[out.index(i, j, k)] = value;
    out.c_[out.index(j, i, k)] = -value;
  }
  return out;
}

Vector StructureConstants::bracket(const Vector& x, const Vector& y) const {
  Vector out = Vector::Zero(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (x[i] == 0.0) continue;
    for (int j = 0; j < dim_; ++j) {
      const double w = x[i] * y[j];
      if (w == 0.0) continue;
      for (int k = 0; k < dim_; ++k) out[k] += w * (*this)(i, j, k);
    }
  }
  return out;
}

std::vector<StructureEntry> StructureConstants::entries(bool upper_only) const {
  std::vector<StructureEntry> out;
  for (int i = 0; i < dim_; ++i)
    for (int j = upper_only ? i + 1 : 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        if (const double c = (*this)(i, j, k); c != 0.0) out.push_back({i, j, k, c});
  return out;
}

bool StructureConstants::is_abelian() const noexcept {
  return std::all_of(c_.begin(), c_.end(), [](double c) { return c == 0.0; });
}

// ---------------------------------------------------------------------------
// ReductiveModel

ReductiveModel::ReductiveModel(StructureConstants structure, int h_dim, Matrix inner_product)
    : structure_(std::move(structure)), h_dim_(h_dim), inner_(std::move(inner_product)) {
  const int dim = structure_.dim();
  if (h_dim < 0 || h_dim > dim) {
    fail(ErrorKind::structural, fmt::format("h_dim = {} incompatible with dim_g = {}", h_dim, dim));
  }
  const int n = dim - h_dim;
  if (inner_.rows() != n || inner_.cols() != n) {
    fail(ErrorKind::structural,
         fmt::format("inner product is {}x{} but m has dimension {}", inner_.rows(),
                     inner_.cols(), n));
  }
  if (n == 0) fail(ErrorKind::structural, "m must be non-trivial");
  if ((inner_ - inner_.transpose()).cwiseAbs().maxCoeff() > kAlgebraTolerance) {
    fail(ErrorKind::domain, "inner product on m is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(inner_, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() <= kAlgebraTolerance) {
    fail(ErrorKind::domain,
         fmt::format("inner product on m is not positive-definite (min eigenvalue {})",
                     eig.eigenvalues().minCoeff()));
  }

  m_brackets_.assign(n, Matrix::Zero(n, n));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        m_brackets_[k](i, j) = structure_(h_dim + i, h_dim + j, h_dim + k);
}

Vector ReductiveModel::bracket_m(const Vector& x, const Vector& y) const {
  const int n = m_dim();
  Vector out(n);
  for (int k = 0; k < n; ++k) out[k] = x.dot(m_brackets_[k] * y);
  return out;
}

double ReductiveModel::norm(const Vector& x) const { return std::sqrt(inner(x, x)); }

Vector ReductiveModel::embed_m(const Vector& x) const {
  Vector out = Vector::Zero(dim_g());
  out.tail(m_dim()) = x;
  return out;
}

Vector ReductiveModel::project_m(const Vector& x) const { return x.tail(m_dim()); }

// ---------------------------------------------------------------------------
// InvariantVector, Frame

InvariantVector InvariantVector::make(const ReductiveModel& model, Vector coords) {
  if (coords.size() != model.m_dim()) {
    fail(ErrorKind::structural,
         fmt::format("invariant vector has {} components but m has dimension {}",
                     coords.size(), model.m_dim()));
  }
  InvariantVector v;
  v.c = model.norm(coords);
  v.b = v.c;
  v.coords = std::move(coords);
  return v;
}

namespace {

// Remove the components of w along the columns of basis[:, 0..count), twice.
void orthogonalise(const Matrix& basis, int count, const Matrix& gram, Vector& w) {
  for (int pass = 0; pass < 2; ++pass)
    for (int a = 0; a < count; ++a) w -= basis.col(a).dot(gram * w) * basis.col(a);
}

}  // namespace

Frame Frame::build(const ReductiveModel& model, const InvariantVector& v) {
  const int n = model.m_dim();
  const Matrix& gram = model.inner_product();

  // Accepted vectors in pick order; v/c (if any) goes first here and is moved
  // to the last column at the end.
  Matrix picked(n, n);
  int count = 0;
  if (!v.is_zero()) {
    picked.col(count++) = v.coords / v.c;
  }

  std::vector<bool> used(n, false);
  while (count < n) {
    int best = -1;
    double best_norm = 0.0;
    Vector best_vec;
    for (int e = 0; e < n; ++e) {
      if (used[e]) continue;
      Vector w = Vector::Unit(n, e);
      orthogonalise(picked, count, gram, w);
      const double norm = std::sqrt(w.dot(gram * w));
      if (norm > best_norm + kDependenceTolerance) {
        best = e;
        best_norm = norm;
        best_vec = std::move(w);
      }
    }
    if (best < 0 || best_norm < kDependenceTolerance) {
      fail(ErrorKind::structural, "could not complete an orthonormal frame of m");
    }
    used[best] = true;
    picked.col(count++) = best_vec / best_norm;
  }

  Matrix vectors(n, n);
  if (!v.is_zero()) {
    vectors.leftCols(n - 1) = picked.rightCols(n - 1);
    vectors.col(n - 1) = picked.col(0);
  } else {
    vectors = picked;
  }
  Matrix dual = vectors.transpose() * gram;
  return Frame(std::move(vectors), std::move(dual));
}

double Frame::orthonormality_residual(const ReductiveModel& model) const {
  const Matrix g = vectors_.transpose() * model.inner_product() * vectors_;
  return (g - Matrix::Identity(size(), size())).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Origin tensors

double OriginTensors::s0(const Vector& y_frame) const {
  const int n = static_cast<int>(s.rows());
  return c * s.row(n - 1).dot(y_frame);
}

double OriginTensors::r00(const Vector& y_frame) const { return y_frame.dot(r * y_frame); }

namespace {

// brackets[i][j] = [v_i, v_j]_m in m-coordinates.
std::vector<std::vector<Vector>> frame_brackets(const ReductiveModel& model, const Frame& frame) {
  const int n = frame.size();
  std::vector<std::vector<Vector>> out(n, std::vector<Vector>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i][j] = model.bracket_m(frame.vector(i), frame.vector(j));
  return out;
}

}  // namespace

Christoffel christoffel_origin(const ReductiveModel& model, const Frame& frame) {
  const int n = frame.size();
  const auto br = frame_brackets(model, frame);
  auto ip = [&](int i, int j, int l) { return model.inner(br[i][j], frame.vector(l)); };

  Christoffel gamma(n);
  for (int l = 0; l < n; ++l) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j <= i; ++j) {
        const double value = 0.5 * (-ip(i, j, l) + ip(l, i, j) + ip(l, j, i));
        gamma(l, i, j) = value;
        gamma(l, j, i) = value;
      }
    }
  }
  return gamma;
}

OriginTensors origin_tensors(const ReductiveModel& model, const InvariantVector& v) {
  Frame frame = Frame::build(model, v);
  Christoffel gamma = christoffel_origin(model, frame);
  const int n = frame.size();
  Matrix r = Matrix::Zero(n, n);
  Matrix s = Matrix::Zero(n, n);

  // beta = 0: every beta-derived tensor vanishes.
  if (!v.is_zero()) {
    const auto br = frame_brackets(model, frame);
    const int last = n - 1;
    const Vector vn = frame.vector(last);
    const double half_c = 0.5 * v.c;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < i; ++j) {
        const double sij = half_c * model.inner(br[i][j], vn);
        s(i, j) = sij;
        s(j, i) = -sij;
      }
      for (int j = 0; j <= i; ++j) {
        const double rij = -half_c * (model.inner(br[last][i], frame.vector(j)) +
                                      model.inner(br[last][j], frame.vector(i)));
        r(i, j) = rij;
        r(j, i) = rij;
      }
    }
  }
  return OriginTensors{std::move(frame), std::move(gamma), std::move(r), std::move(s), v.c};
}

S0R00 s0_r00(const ReductiveModel& model, const InvariantVector& v, const Vector& y) {
  if (y.size() != model.m_dim()) {
    fail(ErrorKind::structural, "tangent vector dimension does not match m");
  }
  const Vector vy = model.bracket_m(v.coords, y);
  return {0.5 * model.inner(vy, v.coords), -model.inner(vy, y)};
}

// ---------------------------------------------------------------------------
// Validation

bool ValidationReport::ok() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* ValidationReport::find(std::string_view name) const noexcept {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::vector<std::string> ValidationReport::failed() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.passed) out.push_back(c.name);
  return out;
}

ValidationReport validate_model(const ReductiveModel& model, const InvariantVector& v) {
  if (v.coords.size() != model.m_dim()) {
    fail(ErrorKind::structural,
         fmt::format("invariant vector has {} components but m has dimension {}",
                     v.coords.size(), model.m_dim()));
  }
  const auto& c = model.structure();
  const int dim = c.dim();
  const int h = model.h_dim();
  const int n = model.m_dim();
  ValidationReport report;
  auto add = [&](std::string name, double residual, double tol) {
    report.checks.push_back({std::move(name), residual <= tol, residual});
  };

  double anti = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) anti = std::max(anti, std::abs(c(i, j, k) + c(j, i, k)));
  add("antisymmetry", anti, kAlgebraTolerance);

  double jacobi = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int k = j + 1; k < dim; ++k)
        for (int l = 0; l < dim; ++l) {
          double sum = 0.0;
          for (int m = 0; m < dim; ++m)
            sum += c(i, j, m) * c(m, k, l) + c(j, k, m) * c(m, i, l) + c(k, i, m) * c(m, j, l);
          jacobi = std::max(jacobi, std::abs(sum));
        }
  add("jacobi", jacobi, kJacobiTolerance);

  // [h, m] has no h-component.
  double reductive = 0.0;
  for (int a = 0; a < h; ++a)
    for (int p = h; p < dim; ++p)
      for (int k = 0; k < h; ++k) reductive = std::max(reductive, std::abs(c(a, p, k)));
  add("reductivity", reductive, kAlgebraTolerance);

  // <[w,x]_m, y> + <x, [w,y]_m> = 0 for w in h.
  const Matrix& gram = model.inner_product();
  double invariance = 0.0;
  double v_invariance = 0.0;
  for (int a = 0; a < h; ++a) {
    Matrix ad(n, n);  // column p: [e_a, e_{h+p}]_m
    for (int p = 0; p < n; ++p)
      for (int k = 0; k < n; ++k) ad(k, p) = c(a, h + p, h + k);
    const Matrix sym = ad.transpose() * gram + gram * ad;
    invariance = std::max(invariance, sym.cwiseAbs().maxCoeff());
    const Vector wv = ad * v.coords;
    v_invariance = std::max(v_invariance, wv.size() ? wv.cwiseAbs().maxCoeff() : 0.0);
  }
  add("inner_product_invariance", invariance, kAlgebraTolerance);
  add("v_invariance", v_invariance, kAlgebraTolerance);

  add("frame_orthonormality", Frame::build(model, v).orthonormality_residual(model),
      kAlgebraTolerance);
  return report;
}

}  // namespace homfinsler
