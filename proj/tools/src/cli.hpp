#pragma once

#include <homfinsler/error.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace finsler_cli {

/// 1 for domain, singularity and quadrature failures, 2 for configuration
/// and parse problems, 3 for validation failures in validated mode.
int exit_code(homfinsler::ErrorKind kind) noexcept;

/// Runs one subcommand. `args` excludes the program name. `env_mode` stands
/// in for the FINSLER_MODE environment variable.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& env_mode);

/// As above, reading FINSLER_MODE from the environment.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace finsler_cli
