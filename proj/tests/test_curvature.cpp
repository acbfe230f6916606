#include "fixtures.hpp"

#include <homfinsler/catalog.hpp>
#include <homfinsler/curvature.hpp>
#include <homfinsler/error.hpp>

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace homfinsler;

namespace {

FinslerSpace space(const std::string& name, PhiFamily phi, Mode mode = Mode::formal) {
  auto entry = catalog::get(name);
  return FinslerSpace(entry.model, entry.v, std::move(phi), mode);
}

Vector vec(std::initializer_list<double> xs) {
  Vector out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) out[i++] = x;
  return out;
}

template <std::size_t N>
Vector vec(const std::array<double, N>& xs) {
  Vector out(static_cast<Eigen::Index>(N));
  for (std::size_t i = 0; i < N; ++i) out[static_cast<Eigen::Index>(i)] = xs[i];
  return out;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::structural;
}

template <std::size_t N>
void check_berwald_fixture(const fixtures::BerwaldCase<N>& fx) {
  auto sp = space(fx.space, fx.exponential ? PhiFamily::exponential() : PhiFamily::infinite_series());
  const Vector y = vec(fx.y);
  CHECK(s_curvature(sp, y, Path::closed_form) == doctest::Approx(fx.S).epsilon(1e-12));
  CHECK(s_curvature(sp, y, Path::generic) == doctest::Approx(fx.S).epsilon(1e-12));
  const Matrix closed = mean_berwald(sp, y, Path::closed_form);
  const Matrix fd = mean_berwald(sp, y, Path::finite_difference);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      const double expected = fx.E[i][j];
      CHECK(std::abs(closed(i, j) - expected) <= 1e-12 * (1.0 + std::abs(expected)));
      CHECK(std::abs(fd(i, j) - expected) <= 1e-6);
    }
}

}  // namespace

TEST_CASE("generic coefficients: exponential at s = 0") {
  auto c = coefficients_generic(PhiFamily::exponential(), 0.0, 0.6, 3);
  CHECK(c.Q == doctest::Approx(1.0));
  CHECK(c.Qp == doctest::Approx(1.0));
  CHECK(c.Qpp == doctest::Approx(2.0));
  CHECK(c.Delta == doctest::Approx(1.36));
  CHECK(c.Phi == doctest::Approx(-5.8));
  CHECK(c.psi == doctest::Approx(1.0 / (2 * 1.36)));
}

TEST_CASE("generic coefficients: randers") {
  for (double s : {-0.5, 0.0, 0.3}) {
    for (int n : {2, 3, 7}) {
      auto c = coefficients_generic(PhiFamily::randers(), s, 0.5, n);
      CHECK(c.Q == doctest::Approx(1.0));
      CHECK(c.Qp == doctest::Approx(0.0));
      CHECK(c.Qpp == doctest::Approx(0.0));
      CHECK(c.Delta == doctest::Approx(1.0 + s));
      CHECK(c.Phi == doctest::Approx(-(n + 1) * (1.0 + s)));
    }
  }
}

TEST_CASE("infinite series coefficients at s = 2") {
  auto g = coefficients_generic(PhiFamily::infinite_series(), 2.0, 0.5, 2);
  auto c = coefficients_infinite_series(2.0, 0.5, 2);
  for (const auto& x : {g, c}) {
    CHECK(x.Q == doctest::Approx(0.0));
    CHECK(x.Qp == doctest::Approx(0.5));
    CHECK(x.Qpp == doctest::Approx(-0.5));
    CHECK(x.Delta == doctest::Approx(-0.875));
    CHECK(x.Phi == doctest::Approx(-2.625));
  }
  for (int n = 2; n < 6; ++n) CHECK(coefficients_infinite_series(2.0, 0.3 * n / 6, n).Q == 0.0);
}

TEST_CASE("exponential coefficients at s = 0") {
  auto c = coefficients_exponential(0.0, 0.6, 3);
  CHECK(c.Delta == doctest::Approx(1.36));
  CHECK(c.Phi == doctest::Approx(-5.8));
  for (int n = 2; n < 8; ++n) {
    auto z = coefficients_exponential(0.0, 0.0, n);
    CHECK(z.Q == 1.0);
    CHECK(z.Delta == 1.0);
    CHECK(z.Phi == -(n + 1.0));
  }
}

TEST_CASE("closed-form coefficients agree with the generic path") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const double b = unit(rng);
    const int n = 2 + static_cast<int>(unit(rng) * 9);
    const double s_inf = unit(rng) < 0.5 ? 1.1 + 3.9 * unit(rng) : -2.0 + 1.9 * unit(rng);
    const double s_exp = -0.9 + 1.8 * unit(rng);
    const auto pairs = {
        std::pair{coefficients_infinite_series(s_inf, b, n),
                  coefficients_generic(PhiFamily::infinite_series(), s_inf, b, n)},
        std::pair{coefficients_exponential(s_exp, b, n),
                  coefficients_generic(PhiFamily::exponential(), s_exp, b, n)}};
    for (const auto& [closed, generic] : pairs) {
      CHECK(rel(closed.Q, generic.Q) <= 1e-10);
      CHECK(rel(closed.Qp, generic.Qp) <= 1e-10);
      CHECK(rel(closed.Qpp, generic.Qpp) <= 1e-10);
      CHECK(rel(closed.Delta, generic.Delta) <= 1e-10);
      CHECK(rel(closed.Phi, generic.Phi) <= 1e-10);
    }
  }
}

TEST_CASE("coefficient bundle identities") {
  for (double s : {-1.5, -0.2, 1.4, 3.0}) {
    auto c = coefficients_infinite_series(s, 0.5, 4);
    CHECK(c.Delta == doctest::Approx(1 + s * c.Q + (0.25 - s * s) * c.Qp).epsilon(1e-12));
    CHECK(c.psi == doctest::Approx(c.Qp / (2 * c.Delta)));
    const double phi = -(c.Q - s * c.Qp) * (4 * c.Delta + 1 + s * c.Q) -
                       (0.25 - s * s) * (1 + s * c.Q) * c.Qpp;
    CHECK(rel(phi, c.Phi) <= 1e-10);
  }
}

TEST_CASE("coefficient singularities name their locus") {
  try {
    coefficients_infinite_series(0.0, 0.5, 2);
    FAIL("expected singularity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::singularity);
    CHECK(std::string(e.what()).find("s = 0 (infinite series Q)") != std::string::npos);
  }
  try {
    coefficients_exponential(1.0, 0.5, 2);
    FAIL("expected singularity");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("s = 1 (exponential Q)") != std::string::npos);
  }
  CHECK(kind_of([] { coefficients_generic(PhiFamily::exponential(), 1.0, 0.5, 3); }) ==
        ErrorKind::singularity);
  // Delta = 0: s^2 + s - 1 - b^2 = 0 for the exponential metric.
  const double b = 0.5;
  const double s = 0.5 * (-1.0 + std::sqrt(5.0 + 4 * b * b));
  CHECK(kind_of([&] { coefficients_exponential(s, b, 3); }) == ErrorKind::singularity);
  CHECK(kind_of([] { coefficients_closed_form(Family::randers, 0.1, 0.5, 3); }) ==
        ErrorKind::domain);
}

TEST_CASE("S-curvature trivial cases") {
  auto abelian = space("abelian3", PhiFamily::exponential());
  auto heis = space("heisenberg3", PhiFamily::exponential());
  for (Path path : {Path::closed_form, Path::generic, Path::tensors}) {
    CHECK(s_curvature(abelian, vec({1, 1, 1}), path) == 0.0);
    CHECK(s_curvature(heis, heis.v().coords, path) == 0.0);
  }
  CHECK(kind_of([&] { s_curvature(heis, vec({0, 0, 0}), Path::generic); }) == ErrorKind::domain);
  CHECK(kind_of([&] { s_curvature(heis, vec({1, 0}), Path::generic); }) == ErrorKind::structural);
}

TEST_CASE("S-curvature of heisenberg3 with the exponential metric") {
  auto heis = space("heisenberg3", PhiFamily::exponential());
  const Vector y = vec({1, 1, 1});
  const double alpha = std::sqrt(3.0);
  const double s = 0.5 / alpha;
  auto c = coefficients_exponential(s, 0.5, 3);
  const double hand = c.Phi / (2 * alpha * c.Delta * c.Delta) * 0.5;
  for (Path path : {Path::closed_form, Path::generic, Path::tensors}) {
    const double S = s_curvature(heis, y, path);
    CHECK(S == doctest::Approx(fixtures::kHeisenbergExpS111).epsilon(1e-13));
    CHECK(S == doctest::Approx(hand).epsilon(1e-13));
  }
}

TEST_CASE("S-curvature of su2_like vanishes") {
  auto su2 = space("su2_like", PhiFamily::infinite_series());
  CHECK(std::abs(s_curvature(su2, vec({0.3, -1, 0.7}), Path::closed_form)) <= 1e-15);
}

TEST_CASE("S-curvature paths agree on random directions") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss;
  for (const auto& name : catalog::names()) {
    for (auto phi : {PhiFamily::infinite_series(), PhiFamily::exponential()}) {
      auto sp = space(name, phi);
      for (int k = 0; k < 100; ++k) {
        Vector y(sp.n());
        for (int i = 0; i < sp.n(); ++i) y[i] = gauss(rng);
        const double a = s_curvature(sp, y, Path::closed_form);
        const double b = s_curvature(sp, y, Path::generic);
        const double c = s_curvature_via_tensors(sp, y);
        CHECK(std::abs(a - b) <= 1e-10 * (1 + std::abs(a)));
        CHECK(std::abs(c - b) <= 1e-10 * (1 + std::abs(b)));
      }
    }
  }
}

TEST_CASE("generic path covers families without closed forms") {
  auto sp = space("solvable2", PhiFamily::randers());
  const Vector y = vec({1, 0.3});
  CHECK(kind_of([&] { s_curvature(sp, y, Path::closed_form); }) == ErrorKind::domain);
  CHECK(s_curvature(sp, y, Path::generic) ==
        doctest::Approx(s_curvature_via_tensors(sp, y)).epsilon(1e-12));
}

TEST_CASE("mean Berwald fixtures") {
  check_berwald_fixture(fixtures::kSolvableExp);
  check_berwald_fixture(fixtures::kSolvableInf);
  check_berwald_fixture(fixtures::kHeisenbergExp);
}

TEST_CASE("mean Berwald closed form near the Delta = 0 locus") {
  const auto& fx = fixtures::kHeisenbergInfNearPole;
  auto sp = space(fx.space, PhiFamily::infinite_series());
  const Matrix E = mean_berwald(sp, vec(fx.y), Path::closed_form);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(rel(E(i, j), fx.E[i][j]) <= 1e-9);
}

TEST_CASE("mean Berwald trivial cases and symmetry") {
  auto abelian = space("abelian3", PhiFamily::exponential());
  CHECK(mean_berwald(abelian, vec({1, 2, 3}), Path::closed_form).norm() == 0.0);
  CHECK(mean_berwald(abelian, vec({1, 2, 3}), Path::finite_difference).norm() == 0.0);

  auto heis = space("heisenberg3", PhiFamily::infinite_series());
  const Vector y = vec({0.2, 1.0, -0.4});
  const Matrix closed = mean_berwald(heis, y, Path::closed_form);
  const Matrix fd = mean_berwald(heis, y, Path::finite_difference);
  CHECK((closed - closed.transpose()).norm() == 0.0);
  CHECK((fd - fd.transpose()).cwiseAbs().maxCoeff() <= 1e-9);
  CHECK(kind_of([&] { mean_berwald(heis, y, Path::generic); }) == ErrorKind::domain);
  auto randers = space("heisenberg3", PhiFamily::randers());
  CHECK(kind_of([&] { mean_berwald(randers, y, Path::closed_form); }) == ErrorKind::domain);
}

TEST_CASE("homogeneity of S and E") {
  auto sp = space("heisenberg3", PhiFamily::exponential());
  const Vector y = vec({0.2, 1.0, -0.4});
  const double S = s_curvature(sp, y, Path::closed_form);
  const Matrix E = mean_berwald(sp, y, Path::closed_form);
  const Matrix Efd = mean_berwald(sp, y, Path::finite_difference);
  for (double lambda : {0.5, 2.0, 10.0}) {
    CHECK(s_curvature(sp, lambda * y, Path::closed_form) == doctest::Approx(lambda * S).epsilon(1e-10));
    const Matrix El = mean_berwald(sp, lambda * y, Path::closed_form);
    CHECK((El - E / lambda).cwiseAbs().maxCoeff() <= 1e-8 * E.cwiseAbs().maxCoeff() / lambda);
    const Matrix Efl = mean_berwald(sp, lambda * y, Path::finite_difference);
    CHECK((Efl - Efd / lambda).cwiseAbs().maxCoeff() <= 1e-5 * (1 + Efd.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("berwald workspace identities") {
  auto sp = space("heisenberg3", PhiFamily::exponential());
  const Vector y = vec({0.2, 1.0, -0.4});
  const auto ws = berwald_workspace(sp, y);
  CHECK(std::abs(ws.s_yi.dot(ws.y_frame)) <= 1e-14);
  CHECK((ws.s_yiyj - ws.s_yiyj.transpose()).norm() == 0.0);
  CHECK(ws.b_lowered[2] == doctest::Approx(0.5));
  const auto at_v = berwald_workspace(sp, sp.v().coords);
  CHECK(at_v.s == doctest::Approx(0.5));
  CHECK(at_v.s_yi.norm() <= 1e-15);
}

TEST_CASE("derived A and B derivatives match finite differences") {
  for (Family family : {Family::infinite_series, Family::exponential}) {
    for (int k = 0; k < 50; ++k) {
      const double s = family == Family::infinite_series ? 3.2 + 0.05 * k : -0.9 + 0.026 * k;
      const double h = 1e-3;
      auto A = [&](double t) { return berwald_coefficient(family, t, 0.5, 3).value; };
      auto d = [&](double step) { return (A(s + step) - 2 * A(s) + A(s - step)) / (step * step); };
      const double fd2 = (4 * d(h / 2) - d(h)) / 3;
      const auto jet = berwald_coefficient(family, s, 0.5, 3);
      CHECK(std::abs(fd2 - jet.d2) <= 1e-6 * std::max(1.0, std::abs(jet.d2)));
      auto c = [&](double step) { return (A(s + step) - A(s - step)) / (2 * step); };
      const double fd1 = (4 * c(h / 2) - c(h)) / 3;
      CHECK(std::abs(fd1 - jet.d1) <= 1e-7 * std::max(1.0, std::abs(jet.d1)));
    }
  }
}

TEST_CASE("transcribed first derivatives agree, second derivatives do not") {
  std::vector<double> s_inf;
  std::vector<double> s_exp;
  for (int k = 0; k < 50; ++k) {
    s_inf.push_back(3.2 + 0.05 * k);
    s_exp.push_back(-0.9 + 0.026 * k);
  }
  auto a = audit_berwald_derivatives(Family::infinite_series, 0.5, 3, s_inf);
  auto b = audit_berwald_derivatives(Family::exponential, 0.5, 3, s_exp);
  CHECK(a.d1_agrees());
  CHECK(b.d1_agrees());
  CHECK_FALSE(a.d2_agrees());
  CHECK_FALSE(b.d2_agrees());
  std::ostringstream log;
  const std::vector<DerivativeAudit> audits = {a, b};
  write_audit_log(log, audits);
  CHECK(log.str().find("infinite_series") != std::string::npos);
}

TEST_CASE("isotropy examples") {
  for (const char* name : {"abelian3", "heisenberg_central_v"}) {
    auto report = isotropy_test(space(name, PhiFamily::exponential()), 64);
    CHECK(report.isotropic);
    CHECK(report.vanishing);
    CHECK(std::abs(report.c_H) <= 1e-10);
  }
  auto solv = isotropy_test(space("solvable2", PhiFamily::exponential()), 64);
  CHECK_FALSE(solv.isotropic);
  CHECK(solv.max_abs_S > 0.1);
  CHECK(kind_of([] { isotropy_test(space("heisenberg3", PhiFamily::exponential()), 2); }) ==
        ErrorKind::domain);
}

TEST_CASE("sample directions are unit and seeded") {
  auto entry = catalog::get("heisenberg3");
  auto a = sample_directions(entry.model, 20, 42);
  auto b = sample_directions(entry.model, 20, 42);
  auto c = sample_directions(entry.model, 20, 43);
  REQUIRE(a.size() == 20);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(entry.model.norm(a[k]) == doctest::Approx(1.0));
    CHECK(a[k] == b[k]);
  }
  CHECK(a[0] != c[0]);
}

TEST_CASE("validated mode refuses bad metrics and keeps good ones") {
  CHECK(kind_of([] { space("heisenberg3", PhiFamily::infinite_series(), Mode::validated); }) ==
        ErrorKind::validation);
  auto ok = space("heisenberg3", PhiFamily::exponential(), Mode::validated);
  CHECK(ok.mode() == Mode::validated);
  auto entry = catalog::get("heisenberg3");
  auto big = InvariantVector::make(entry.model, vec({1.5, 0, 0}));
  CHECK(kind_of([&] { FinslerSpace(entry.model, big, PhiFamily::randers(), Mode::validated); }) ==
        ErrorKind::validation);
  CHECK(mode_from_string("formal") == Mode::formal);
  CHECK(kind_of([] { mode_from_string("strict"); }) == ErrorKind::config);
}
