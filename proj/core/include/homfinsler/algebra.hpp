#pragma once

// Lie-algebra level description of a reductive homogeneous space G/H with
// g = h + m, plus the origin tensors derived from brackets.
//
// Coordinates: vectors of g use the basis e_0..e_{dim_g-1}; the first h_dim
// basis vectors span h, the rest span m. "m-coordinates" are components in
// e_{h_dim}..e_{dim_g-1}. "Frame coordinates" are components in the
// orthonormal frame v_1..v_n built by Frame, with v_n = v/|v|.

#include <Eigen/Dense>

#include <span>
#include <string>
#include <vector>

namespace homfinsler {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// One stored structure constant: [e_i, e_j] contains value * e_k.
struct StructureEntry {
  int i = 0;
  int j = 0;
  int k = 0;
  double value = 0.0;

  friend bool operator==(const StructureEntry&, const StructureEntry&) = default;
};

enum class Completion {
  antisymmetric,  // c^k_ji is implied as -c^k_ij; conflicting input throws
  none,           // entries stored exactly as given (for auditing raw tables)
};

/// Dense table of c^k_ij, [e_i, e_j] = sum_k c^k_ij e_k.
class StructureConstants {
 public:
  explicit StructureConstants(int dim);

  static StructureConstants from_entries(
      int dim, std::span<const StructureEntry> entries,
      Completion completion = Completion::antisymmetric);

  int dim() const noexcept { return dim_; }

  double operator()(int i, int j, int k) const noexcept {
    return c_[index(i, j, k)];
  }

  /// Bracket of two vectors of g.
  Vector bracket(const Vector& x, const Vector& y) const;

  /// Non-zero entries. With antisymmetric storage only i < j is listed.
  std::vector<StructureEntry> entries(bool upper_only = true) const;

  bool is_abelian() const noexcept;

 private:
  std::size_t index(int i, int j, int k) const noexcept {
    return (static_cast<std::size_t>(i) * dim_ + j) * dim_ + k;
  }

  int dim_;
  std::vector<double> c_;
};

class ReductiveModel {
 public:
  /// Throws ErrorKind::structural on dimension mismatch and ErrorKind::domain
  /// when the inner product is not symmetric positive-definite.
  ReductiveModel(StructureConstants structure, int h_dim, Matrix inner_product);

  const StructureConstants& structure() const noexcept { return structure_; }
  int dim_g() const noexcept { return structure_.dim(); }
  int h_dim() const noexcept { return h_dim_; }
  int m_dim() const noexcept { return structure_.dim() - h_dim_; }
  const Matrix& inner_product() const noexcept { return inner_; }

  /// [x, y]_m for x, y in m-coordinates.
  Vector bracket_m(const Vector& x, const Vector& y) const;

  double inner(const Vector& x, const Vector& y) const { return x.dot(inner_ * y); }
  double norm(const Vector& x) const;

  /// m-coordinates -> g-coordinates.
  Vector embed_m(const Vector& x) const;
  /// g-coordinates -> m-coordinates (drops the h part).
  Vector project_m(const Vector& x) const;

 private:
  StructureConstants structure_;
  int h_dim_;
  Matrix inner_;
  // m_brackets_[k](i, j) = c^{h+k}_{h+i, h+j}
  std::vector<Matrix> m_brackets_;
};

/// The vector v in m dual to the invariant 1-form beta.
struct InvariantVector {
  Vector coords;    // m-coordinates
  double c = 0.0;   // |v|
  double b = 0.0;   // ||beta||, equal to c in the orthonormal frame

  static InvariantVector make(const ReductiveModel& model, Vector coords);

  bool is_zero() const noexcept { return c == 0.0; }
};

/// Orthonormal frame of m with v/c as the last vector.
class Frame {
 public:
  static constexpr double kDependenceTolerance = 1e-12;

  /// Modified Gram-Schmidt seeded with v/c, completed with pivoted identity
  /// columns. With v = 0 the frame is the orthonormalised identity basis.
  static Frame build(const ReductiveModel& model, const InvariantVector& v);

  int size() const noexcept { return static_cast<int>(vectors_.cols()); }

  /// Column a holds v_{a+1} in m-coordinates.
  const Matrix& vectors() const noexcept { return vectors_; }
  Vector vector(int a) const { return vectors_.col(a); }

  /// y^a = <v_a, y>, i.e. frame components of an m-vector.
  Vector to_frame(const Vector& y) const { return dual_ * y; }
  Vector from_frame(const Vector& y) const { return vectors_ * y; }

  /// Pull a bilinear form given in frame components back to m-coordinates.
  Matrix form_to_basis(const Matrix& form) const {
    return dual_.transpose() * form * dual_;
  }

  double orthonormality_residual(const ReductiveModel& model) const;

 private:
  Frame(Matrix vectors, Matrix dual)
      : vectors_(std::move(vectors)), dual_(std::move(dual)) {}

  Matrix vectors_;
  Matrix dual_;  // V^T G
};

/// Gamma^l_ij stored with l as the outer index.
class Christoffel {
 public:
  explicit Christoffel(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n, 0.0) {}

  int size() const noexcept { return n_; }
  double& operator()(int l, int i, int j) { return data_[(static_cast<std::size_t>(l) * n_ + i) * n_ + j]; }
  double operator()(int l, int i, int j) const { return data_[(static_cast<std::size_t>(l) * n_ + i) * n_ + j]; }

 private:
  int n_;
  std::vector<double> data_;
};

struct OriginTensors {
  Frame frame;
  Christoffel gamma;
  Matrix r;  // symmetric
  Matrix s;  // antisymmetric
  double c = 0.0;

  /// s_0 = c s_{n i} y^i with y in frame components.
  double s0(const Vector& y_frame) const;
  /// r_00 = r_ij y^i y^j with y in frame components.
  double r00(const Vector& y_frame) const;
};

struct Check {
  std::string name;
  bool passed = true;
  double residual = 0.0;
};

struct ValidationReport {
  std::vector<Check> checks;

  bool ok() const noexcept;
  const Check* find(std::string_view name) const noexcept;
  std::vector<std::string> failed() const;
};

inline constexpr double kJacobiTolerance = 1e-12;
inline constexpr double kAlgebraTolerance = 1e-12;

/// Antisymmetry, Jacobi, reductivity, h-invariance of <,>, Ad(h)v = v and
/// frame orthonormality. Dimension mismatch throws instead of failing a check.
ValidationReport validate_model(const ReductiveModel& model, const InvariantVector& v);

/// Gamma^l_ij(H) from brackets of frame vectors; the three-term formula is
/// applied for i >= j and mirrored to i < j.
Christoffel christoffel_origin(const ReductiveModel& model, const Frame& frame);

OriginTensors origin_tensors(const ReductiveModel& model, const InvariantVector& v);

struct S0R00 {
  double s0 = 0.0;
  double r00 = 0.0;
};

/// s_0 = 1/2 <[v,y]_m, v> and r_00 = -<[v,y]_m, y>, y in m-coordinates.
S0R00 s0_r00(const ReductiveModel& model, const InvariantVector& v, const Vector& y);

}  // namespace homfinsler
