#include "homfinsler/catalog.hpp"

#include "homfinsler/error.hpp"

#include <fmt/format.h>

namespace homfinsler::catalog {

namespace {

CatalogEntry make(std::string name, int dim, std::vector<StructureEntry> brackets,
                  Vector v, std::string notes) {
  ReductiveModel model(StructureConstants::from_entries(dim, brackets), 0,
                       Matrix::Identity(dim, dim));
  InvariantVector iv = InvariantVector::make(model, std::move(v));
  return {std::move(name), std::move(model), std::move(iv), std::move(notes)};
}

Vector vec(std::initializer_list<double> xs) {
  Vector out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) out[i++] = x;
  return out;
}

}  // namespace

const std::vector<std::string>& names() {
  static const std::vector<std::string> kNames = {"abelian3", "heisenberg3", "solvable2",
                                                  "su2_like", "heisenberg_central_v"};
  return kNames;
}

CatalogEntry get(std::string_view name) {
  if (name == "abelian3") {
    return make("abelian3", 3, {}, vec({0.5, 0.0, 0.0}),
                "R^3 with the flat metric; every bracket vanishes so S = 0");
  }
  if (name == "heisenberg3") {
    return make("heisenberg3", 3, {{0, 1, 2, 1.0}}, vec({0.5, 0.0, 0.0}),
                "Heisenberg algebra [e1,e2] = e3, v = e1/2");
  }
  if (name == "solvable2") {
    return make("solvable2", 2, {{0, 1, 1, 1.0}}, vec({0.0, 0.5}),
                "2-dim non-abelian algebra [e1,e2] = e2, v = e2/2");
  }
  if (name == "su2_like") {
    return make("su2_like", 3, {{0, 1, 2, 1.0}, {1, 2, 0, 1.0}, {2, 0, 1, 1.0}},
                vec({0.5, 0.0, 0.0}), "su(2) with cyclic brackets [e1,e2] = e3, v = e1/2");
  }
  if (name == "heisenberg_central_v") {
    return make("heisenberg_central_v", 3, {{0, 1, 2, 1.0}}, vec({0.0, 0.0, 0.5}),
                "Heisenberg algebra with central v = e3/2; [v, y] = 0 so S = 0");
  }
  std::string known;
  for (const auto& n : names()) known += (known.empty() ? "" : ", ") + n;
  fail(ErrorKind::config, fmt::format("unknown catalog entry '{}' (available: {})", name, known));
}

}  // namespace homfinsler::catalog
