#include "config.hpp"

#include <homfinsler/catalog.hpp>
#include <homfinsler/error.hpp>

#include <fmt/format.h>

#include <fstream>
#include <sstream>

namespace finsler_cli {

using homfinsler::ErrorKind;
using homfinsler::fail;
using nlohmann::json;

namespace {

template <class T>
T field(const json& doc, const char* key) {
  if (!doc.contains(key)) fail(ErrorKind::config, fmt::format("config: missing field '{}'", key));
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    fail(ErrorKind::config, fmt::format("config: field '{}' has the wrong type", key));
  }
}

template <class T>
T field_or(const json& doc, const char* key, T fallback) {
  return doc.contains(key) ? field<T>(doc, key) : fallback;
}

}  // namespace

bool operator==(const MetricConfig& a, const MetricConfig& b) {
  return a.family == b.family && a.coefficients == b.coefficients;
}

json to_json(const SpaceConfig& config) {
  json doc;
  if (!config.name.empty()) doc["name"] = config.name;
  doc["dim_g"] = config.dim_g;
  doc["h_dim"] = config.h_dim;
  json sc = json::array();
  for (const auto& e : config.structure_constants) sc.push_back({e.i, e.j, e.k, e.value});
  doc["structure_constants"] = sc;
  doc["completion"] =
      config.completion == homfinsler::Completion::antisymmetric ? "antisymmetric" : "none";
  if (!config.inner_product.empty()) doc["inner_product"] = config.inner_product;
  doc["v"] = config.v;
  if (config.metric) {
    json m;
    m["family"] = config.metric->family;
    if (!config.metric->coefficients.empty()) m["coefficients"] = config.metric->coefficients;
    doc["metric"] = m;
  }
  if (config.mode) doc["mode"] = std::string(homfinsler::to_string(*config.mode));
  return doc;
}

SpaceConfig from_json(const json& doc) {
  if (!doc.is_object()) fail(ErrorKind::config, "config: top level must be an object");
  SpaceConfig c;
  c.name = field_or<std::string>(doc, "name", "");
  c.dim_g = field<int>(doc, "dim_g");
  c.h_dim = field_or<int>(doc, "h_dim", 0);
  if (c.dim_g <= 0 || c.h_dim < 0 || c.h_dim >= c.dim_g) {
    fail(ErrorKind::config,
         fmt::format("config: need 0 <= h_dim < dim_g, got dim_g = {}, h_dim = {}", c.dim_g, c.h_dim));
  }
  const int n = c.dim_g - c.h_dim;

  for (const auto& row : field_or<std::vector<json>>(doc, "structure_constants", {})) {
    if (!row.is_array() || row.size() != 4) {
      fail(ErrorKind::config, "config: structure_constants rows are [i, j, k, value]");
    }
    homfinsler::StructureEntry e;
    try {
      e = {row[0].get<int>(), row[1].get<int>(), row[2].get<int>(), row[3].get<double>()};
    } catch (const json::exception&) {
      fail(ErrorKind::config, "config: structure_constants rows are [int, int, int, number]");
    }
    for (int idx : {e.i, e.j, e.k}) {
      if (idx < 0 || idx >= c.dim_g) {
        fail(ErrorKind::config, fmt::format("config: structure constant index {} out of range", idx));
      }
    }
    c.structure_constants.push_back(e);
  }

  const auto completion = field_or<std::string>(doc, "completion", "antisymmetric");
  if (completion == "antisymmetric") {
    c.completion = homfinsler::Completion::antisymmetric;
  } else if (completion == "none") {
    c.completion = homfinsler::Completion::none;
  } else {
    fail(ErrorKind::config, fmt::format("config: unknown completion '{}'", completion));
  }

  c.inner_product = field_or<std::vector<double>>(doc, "inner_product", {});
  if (!c.inner_product.empty() && c.inner_product.size() != static_cast<std::size_t>(n * n)) {
    fail(ErrorKind::config, fmt::format("config: inner_product needs {} entries (m_dim = {}), got {}",
                                        n * n, n, c.inner_product.size()));
  }
  c.v = field<std::vector<double>>(doc, "v");
  if (c.v.size() != static_cast<std::size_t>(n)) {
    fail(ErrorKind::config, fmt::format("config: v needs {} entries, got {}", n, c.v.size()));
  }

  if (doc.contains("metric")) {
    const json& m = doc.at("metric");
    if (!m.is_object()) fail(ErrorKind::config, "config: metric must be an object");
    MetricConfig metric{field<std::string>(m, "family"),
                        field_or<std::vector<double>>(m, "coefficients", {})};
    homfinsler::family_from_string(metric.family);
    c.metric = metric;
  }
  if (doc.contains("mode")) c.mode = homfinsler::mode_from_string(field<std::string>(doc, "mode"));
  return c;
}

SpaceConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::config, fmt::format("config: {}", e.what()));
  }
  return from_json(doc);
}

SpaceConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::config, fmt::format("cannot open config file '{}'", path));
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

SpaceConfig resolve_space(const std::string& spec) {
  constexpr std::string_view prefix = "catalog:";
  if (spec.starts_with(prefix)) return from_catalog(spec.substr(prefix.size()));
  return load_config(spec);
}

SpaceConfig from_catalog(const std::string& name) {
  const auto entry = homfinsler::catalog::get(name);
  SpaceConfig c;
  c.name = entry.name;
  c.dim_g = entry.model.dim_g();
  c.h_dim = entry.model.h_dim();
  c.structure_constants = entry.model.structure().entries();
  const auto& g = entry.model.inner_product();
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) c.inner_product.push_back(g(i, j));
  c.v.assign(entry.v.coords.data(), entry.v.coords.data() + entry.v.coords.size());
  return c;
}

homfinsler::ReductiveModel build_model(const SpaceConfig& config) {
  const int n = config.dim_g - config.h_dim;
  homfinsler::Matrix g = homfinsler::Matrix::Identity(n, n);
  if (!config.inner_product.empty()) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = config.inner_product[static_cast<std::size_t>(i * n + j)];
  }
  auto structure = homfinsler::StructureConstants::from_entries(config.dim_g, config.structure_constants,
                                                                config.completion);
  return homfinsler::ReductiveModel(std::move(structure), config.h_dim, std::move(g));
}

homfinsler::InvariantVector build_v(const SpaceConfig& config, const homfinsler::ReductiveModel& model) {
  homfinsler::Vector v = Eigen::Map<const homfinsler::Vector>(config.v.data(),
                                                              static_cast<Eigen::Index>(config.v.size()));
  return homfinsler::InvariantVector::make(model, std::move(v));
}

homfinsler::PhiFamily build_phi(const MetricConfig& metric) {
  const auto family = homfinsler::family_from_string(metric.family);
  if (family == homfinsler::Family::custom) {
    if (metric.coefficients.empty()) {
      fail(ErrorKind::config, "custom metric needs polynomial coefficients");
    }
    return homfinsler::PhiFamily::polynomial(metric.coefficients);
  }
  return homfinsler::PhiFamily::from_family(family);
}

}  // namespace finsler_cli
