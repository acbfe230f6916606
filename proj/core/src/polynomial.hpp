#pragma once

#include <algorithm>
#include <initializer_list>
#include <vector>

namespace homfinsler::detail {

/// Dense polynomial in one variable, coefficients in increasing degree.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<double> coefficients) : c_(coefficients) {}
  explicit Polynomial(std::vector<double> coefficients) : c_(std::move(coefficients)) {}

  double operator()(double x) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return Polynomial{0.0};
    std::vector<double> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
    return Polynomial(std::move(d));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.c_.empty() || b.c_.empty()) return {};
    std::vector<double> out(a.c_.size() + b.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(out));
  }

  friend Polynomial operator*(double k, Polynomial p) {
    for (double& c : p.c_) c *= k;
    return p;
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<double> out(std::max(a.c_.size(), b.c_.size()), 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] -= b.c_[i];
    return Polynomial(std::move(out));
  }

  const std::vector<double>& coefficients() const noexcept { return c_; }

 private:
  std::vector<double> c_;
};

}  // namespace homfinsler::detail
