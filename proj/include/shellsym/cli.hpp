#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "shellsym/config.hpp"

namespace shellsym::cli {

/// Stable process exit codes.
enum ExitCode : int {
  exit_ok = 0,
  exit_config_error = 2,
  exit_not_converged = 3,
  exit_verification_failed = 4,
};

/// Each command prints a short summary to `log` and writes its report (and
/// field files) into `out_dir`, which is created if needed.
int cmd_classify(const CaseConfig& config, const std::filesystem::path& out_dir, std::ostream& log);
int cmd_transform(const CaseConfig& config, const std::filesystem::path& out_dir, std::ostream& log);
int cmd_solve(const CaseConfig& config, System system, bool manufactured,
              const std::filesystem::path& out_dir, std::ostream& log);
/// `check` is "equivalence", "reduction" or "orbit"; empty runs all three.
int cmd_verify(const CaseConfig& config, const std::string& check,
               const std::filesystem::path& out_dir, std::ostream& log);

/// Entry point of the shellsym executable. `seed_env` is the value of
/// SHELLSYM_SEED (nullptr when unset).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
        const char* seed_env);

}  // namespace shellsym::cli
