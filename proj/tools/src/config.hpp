#pragma once

// Space description files: a JSON document with the fields of SpaceConfig.
// The schema is documented in docs/config_format.md.

#include <homfinsler/algebra.hpp>
#include <homfinsler/curvature.hpp>
#include <homfinsler/metrics.hpp>

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace finsler_cli {

struct MetricConfig {
  std::string family;                // randers, ..., custom
  std::vector<double> coefficients;  // custom: phi(s) = sum_k c_k s^k
};

struct SpaceConfig {
  std::string name;
  int dim_g = 0;
  int h_dim = 0;
  std::vector<homfinsler::StructureEntry> structure_constants;  // 0-based
  homfinsler::Completion completion = homfinsler::Completion::antisymmetric;
  std::vector<double> inner_product;  // row-major m_dim x m_dim; empty = identity
  std::vector<double> v;              // m-coordinates
  std::optional<MetricConfig> metric;
  std::optional<homfinsler::Mode> mode;

  friend bool operator==(const SpaceConfig&, const SpaceConfig&) = default;
};

bool operator==(const MetricConfig& a, const MetricConfig& b);

nlohmann::json to_json(const SpaceConfig& config);
/// Throws homfinsler::Error(config) on missing fields, wrong types or
/// inconsistent dimensions.
SpaceConfig from_json(const nlohmann::json& doc);

SpaceConfig parse_config(const std::string& text);
SpaceConfig load_config(const std::string& path);

/// "catalog:<name>" or a path to a config file.
SpaceConfig resolve_space(const std::string& spec);

SpaceConfig from_catalog(const std::string& name);

homfinsler::ReductiveModel build_model(const SpaceConfig& config);
homfinsler::InvariantVector build_v(const SpaceConfig& config,
                                    const homfinsler::ReductiveModel& model);
homfinsler::PhiFamily build_phi(const MetricConfig& metric);

}  // namespace finsler_cli
