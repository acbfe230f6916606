#include "cli.hpp"

#include "config.hpp"
#include "records.hpp"

#include <homfinsler/catalog.hpp>
#include <homfinsler/curvature.hpp>
#include <homfinsler/volume.hpp>

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <ostream>

namespace finsler_cli {

using namespace homfinsler;
using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::uint64_t kDefaultSeed = 20240607;

struct Common {
  std::string space;
  std::string metric;
  std::string coefficients;
  std::string format = "table";
  std::string mode;
};

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view token(text.data() + pos, end - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
      fail(ErrorKind::config, fmt::format("cannot parse {} '{}' as comma-separated numbers", what, text));
    }
    out.push_back(value);
    pos = end + 1;
  }
  return out;
}

Mode resolve_mode(const Common& common, const std::optional<std::string>& env_mode,
                  const SpaceConfig& config) {
  if (!common.mode.empty()) return mode_from_string(common.mode);
  if (env_mode && !env_mode->empty()) return mode_from_string(*env_mode);
  return config.mode.value_or(Mode::formal);
}

struct Context {
  SpaceConfig config;
  Format format = Format::table;
  Mode mode = Mode::formal;
};

Context load_context(const Common& common, const std::optional<std::string>& env_mode) {
  Context ctx;
  ctx.format = format_from_string(common.format);
  ctx.config = resolve_space(common.space);
  if (!common.metric.empty()) {
    MetricConfig metric{common.metric, {}};
    if (!common.coefficients.empty()) metric.coefficients = parse_list(common.coefficients, "--coefficients");
    family_from_string(metric.family);
    ctx.config.metric = metric;
  }
  if (!ctx.config.metric) {
    fail(ErrorKind::config, "no metric given: pass --metric or set metric.family in the config");
  }
  ctx.mode = resolve_mode(common, env_mode, ctx.config);
  return ctx;
}

FinslerSpace make_space(const Context& ctx) {
  auto model = build_model(ctx.config);
  auto v = build_v(ctx.config, model);
  return FinslerSpace(std::move(model), std::move(v), build_phi(*ctx.config.metric), ctx.mode);
}

Vector parse_y(const std::string& text, int n) {
  const auto values = parse_list(text, "--y");
  if (static_cast<int>(values.size()) != n) {
    fail(ErrorKind::config, fmt::format("--y has {} components but m has dimension {}", values.size(), n));
  }
  return Eigen::Map<const Vector>(values.data(), n);
}

std::string join(const Vector& y) {
  std::string out;
  for (Eigen::Index i = 0; i < y.size(); ++i) out += (i ? ", " : "") + format_number(y[i]);
  return out;
}

std::string space_label(const Context& ctx) {
  return ctx.config.name.empty() ? std::string("config") : ctx.config.name;
}

// --------------------------------------------------------------------------

int cmd_catalog(const Common& common, std::ostream& out) {
  Records r;
  r.columns = {"name", "dim_g", "n", "b", "notes"};
  for (const auto& name : catalog::names()) {
    const auto entry = catalog::get(name);
    r.add({entry.name, entry.model.dim_g(), entry.model.m_dim(), entry.v.b, entry.notes});
  }
  render(out, r, format_from_string(common.format));
  return 0;
}

int cmd_validate(const Common& common, const std::optional<std::string>& env_mode, std::ostream& out,
                 std::ostream& err) {
  const Context ctx = load_context(common, env_mode);
  const auto model = build_model(ctx.config);
  const auto v = build_v(ctx.config, model);
  const auto report = validate_model(model, v);
  const MetricSpec spec{build_phi(*ctx.config.metric), v.b};
  const auto shen = shen_check(spec, FinslerSpace::kShenSamples);

  Records r;
  r.columns = {"section", "check", "passed", "value"};
  for (const auto& check : report.checks) r.add({"model", check.name, check.passed, check.residual});
  r.add({"metric", "b_below_one", v.b < 1.0, v.b});
  r.add({"shen", "min_value", shen.holds, shen.min_value});
  r.add({"shen", "argmin_s", shen.holds, shen.argmin_s});
  r.add({"shen", "value_at_zero", shen.value_at_zero > 0.0, shen.value_at_zero});
  r.notes.push_back(fmt::format("space {}, metric {}, mode {}", space_label(ctx), spec.phi.name(),
                                to_string(ctx.mode)));
  if (shen.first_failure_s) {
    r.notes.push_back(fmt::format("shen condition fails at s = {}: {}", format_number(*shen.first_failure_s),
                                  shen.failure_reason));
  }
  render(out, r, ctx.format);

  std::vector<std::string> failed = report.failed();
  if (!(v.b < 1.0)) failed.push_back("b_below_one");
  if (!shen.holds) failed.push_back("shen_condition");
  if (ctx.mode == Mode::validated && !failed.empty()) {
    std::string names;
    for (const auto& f : failed) names += (names.empty() ? "" : ", ") + f;
    err << "error: validation: failed checks: " << names << '\n';
    return exit_code(ErrorKind::validation);
  }
  return 0;
}

int cmd_s_curv(const Common& common, const std::string& y_text,
               const std::optional<std::string>& env_mode, std::ostream& out) {
  const Context ctx = load_context(common, env_mode);
  const FinslerSpace space = make_space(ctx);
  const Vector y = parse_y(y_text, space.n());
  const double s = space.v().is_zero() ? 0.0 : space.s_of(y);

  Records r;
  r.columns = {"path", "s", "S", "status"};
  std::vector<double> values;
  if (has_closed_form(space.spec().phi.family())) {
    values.push_back(s_curvature(space, y, Path::closed_form));
    r.add({"closed_form", s, values.back(), "ok"});
  } else {
    r.add({"closed_form", s, kNaN, "n/a"});
  }
  values.push_back(s_curvature(space, y, Path::generic));
  r.add({"generic", s, values.back(), "ok"});
  values.push_back(s_curvature_via_tensors(space, y));
  r.add({"tensors", s, values.back(), "ok"});

  double diff = 0.0;
  for (double a : values)
    for (double b : values) diff = std::max(diff, std::abs(a - b));
  r.notes.push_back(fmt::format("space {}, metric {}, y = ({})", space_label(ctx), space.spec().phi.name(),
                                join(y)));
  r.notes.push_back("max |diff| = " + format_number(diff));
  render(out, r, ctx.format);
  return 0;
}

int cmd_berwald(const Common& common, const std::string& y_text,
                const std::optional<std::string>& env_mode, std::ostream& out) {
  const Context ctx = load_context(common, env_mode);
  const FinslerSpace space = make_space(ctx);
  const Vector y = parse_y(y_text, space.n());
  const int n = space.n();

  Records r;
  r.columns = {"path", "i", "j", "E"};
  auto add_matrix = [&](const char* path, const Matrix& E) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r.add({path, i, j, E(i, j)});
  };
  const Matrix fd = mean_berwald(space, y, Path::finite_difference);
  if (has_closed_form(space.spec().phi.family())) {
    const Matrix closed = mean_berwald(space, y, Path::closed_form);
    const Matrix diff = (closed - fd).cwiseAbs();
    add_matrix("closed_form", closed);
    add_matrix("finite_difference", fd);
    add_matrix("abs_diff", diff);
    r.notes.push_back("max |E_closed - E_fd| = " + format_number(diff.maxCoeff()));
  } else {
    add_matrix("finite_difference", fd);
    r.notes.push_back(fmt::format("closed_form: n/a for the {} family", space.spec().phi.name()));
  }
  render(out, r, ctx.format);
  return 0;
}

struct VolumeArgs {
  std::string form;
  std::optional<double> b;
  std::optional<int> n;
};

int cmd_volume(const Common& common, const VolumeArgs& args, const std::optional<std::string>& env_mode,
               std::ostream& out) {
  const Context ctx = load_context(common, env_mode);
  const FinslerSpace space = make_space(ctx);
  const double b = args.b.value_or(space.v().b);
  const int n = args.n.value_or(space.n());

  std::vector<VolumeForm> forms;
  if (args.form.empty()) {
    forms = {VolumeForm::busemann_hausdorff, VolumeForm::holmes_thompson};
  } else {
    forms = {volume_form_from_string(args.form)};
  }
  Records r;
  r.columns = {"form", "b", "n", "f"};
  const QuadratureOptions options;
  for (VolumeForm form : forms) {
    r.add({std::string(to_string(form)), b, n, volume_coefficient(space.spec().phi, b, n, form, options)});
  }
  r.notes.push_back(fmt::format("{}-node Gauss-Legendre panels, abs_tol {}", options.order,
                                format_number(options.abs_tol)));
  render(out, r, ctx.format);
  return 0;
}

int cmd_scan(const Common& common, int grid, std::uint64_t seed,
             const std::optional<std::string>& env_mode, std::ostream& out) {
  if (grid < 1) fail(ErrorKind::config, "--grid must be positive");
  const Context ctx = load_context(common, env_mode);
  const FinslerSpace space = make_space(ctx);
  const int n = space.n();
  const bool closed = has_closed_form(space.spec().phi.family());

  Records r;
  r.columns.push_back("index");
  for (int i = 0; i < n; ++i) r.columns.push_back(fmt::format("y{}", i));
  for (const char* c : {"s", "S_closed", "S_generic", "abs_diff", "status"}) r.columns.push_back(c);

  int singular = 0;
  const auto directions = sample_directions(space.model(), grid, seed);
  for (std::size_t k = 0; k < directions.size(); ++k) {
    const Vector& y = directions[k];
    std::vector<json> row{static_cast<int>(k)};
    for (int i = 0; i < n; ++i) row.push_back(y[i]);
    const double s = space.v().is_zero() ? 0.0 : space.s_of(y);
    double S_closed = kNaN;
    double S_generic = kNaN;
    std::string status = closed ? "ok" : "no_closed_form";
    try {
      if (closed) S_closed = s_curvature(space, y, Path::closed_form);
      S_generic = s_curvature(space, y, Path::generic);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::singularity) throw;
      status = "singular";
      ++singular;
    }
    row.insert(row.end(), {s, S_closed, S_generic, std::abs(S_closed - S_generic), status});
    r.add(std::move(row));
  }
  r.notes.push_back(fmt::format("{} directions, seed {}, {} singular", grid, seed, singular));
  render(out, r, ctx.format);
  return 0;
}

void add_common(CLI::App* cmd, Common& common, bool needs_space) {
  auto* space = cmd->add_option("--space", common.space, "catalog:<name> or a config file");
  if (needs_space) space->required();
  cmd->add_option("--metric", common.metric,
                  "randers, matsumoto, kropina, infinite_series, exponential or custom");
  cmd->add_option("--coefficients", common.coefficients, "custom metric: phi(s) polynomial coefficients");
  cmd->add_option("--format", common.format, "table, csv or jsonl")->capture_default_str();
  cmd->add_option("--mode", common.mode, "formal or validated (overrides FINSLER_MODE)");
}

}  // namespace

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain:
    case ErrorKind::singularity:
    case ErrorKind::quadrature: return 1;
    case ErrorKind::structural:
    case ErrorKind::config: return 2;
    case ErrorKind::validation: return 3;
  }
  return 1;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& env_mode) {
  CLI::App app{"S-curvature and mean Berwald curvature of homogeneous (alpha, beta)-spaces", "finsler"};
  app.require_subcommand(1);

  Common common;
  std::string y_text;
  int grid = 100;
  std::uint64_t seed = kDefaultSeed;
  VolumeArgs volume;

  auto* validate = app.add_subcommand("validate", "model checks and the Shen condition");
  add_common(validate, common, true);
  auto* s_curv = app.add_subcommand("s-curv", "S-curvature at y by every path");
  add_common(s_curv, common, true);
  s_curv->add_option("--y", y_text, "direction in m-coordinates, e.g. 1,0,1")->required();
  auto* berwald = app.add_subcommand("berwald", "mean Berwald curvature at y");
  add_common(berwald, common, true);
  berwald->add_option("--y", y_text, "direction in m-coordinates")->required();
  auto* vol = app.add_subcommand("volume", "volume coefficient f(b)");
  add_common(vol, common, true);
  vol->add_option("--form", volume.form, "bh or ht (default: both)");
  vol->add_option("--b", volume.b, "override b");
  vol->add_option("--n", volume.n, "override the dimension of m");
  auto* scan = app.add_subcommand("scan", "S over seeded random unit directions");
  add_common(scan, common, true);
  scan->add_option("--grid", grid, "number of directions")->capture_default_str();
  scan->add_option("--seed", seed, "sampling seed")->capture_default_str();
  auto* cat = app.add_subcommand("catalog", "list the built-in spaces");
  cat->add_option("--format", common.format, "table, csv or jsonl")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cat) return cmd_catalog(common, out);
    if (*validate) return cmd_validate(common, env_mode, out, err);
    if (*s_curv) return cmd_s_curv(common, y_text, env_mode, out);
    if (*berwald) return cmd_berwald(common, y_text, env_mode, out);
    if (*vol) return cmd_volume(common, volume, env_mode, out);
    if (*scan) return cmd_scan(common, grid, seed, env_mode, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code(e.kind());
  }
  return 2;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const char* env = std::getenv("FINSLER_MODE");
  return run(args, out, err, env ? std::optional<std::string>(env) : std::nullopt);
}

}  // namespace finsler_cli
