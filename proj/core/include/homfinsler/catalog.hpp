#pragma once

// Named reductive models used by the tests, the docs and the CLI.

#include "homfinsler/algebra.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace homfinsler::catalog {

struct CatalogEntry {
  std::string name;
  ReductiveModel model;
  InvariantVector v;
  std::string notes;
};

/// abelian3, heisenberg3, solvable2, su2_like, heisenberg_central_v.
const std::vector<std::string>& names();

/// Throws ErrorKind::config for an unknown name, listing the known ones.
CatalogEntry get(std::string_view name);

}  // namespace homfinsler::catalog
