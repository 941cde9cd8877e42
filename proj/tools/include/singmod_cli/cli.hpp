#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace singmod::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 1,
  kImproperIntersection = 2,
  kPrecision = 3,
};

struct RunConfig {
  std::optional<long> prec_bits;  // unset: precision policy
  std::optional<std::int64_t> trunc;
  std::string cache_dir;
  std::string format = "json";
};

/// Values given on the command line; unset fields fall through to the environment, then the
/// config file, then defaults.
struct ConfigSources {
  std::optional<long> prec_bits;
  std::optional<std::int64_t> trunc;
  std::optional<std::string> cache_dir;
  std::optional<std::string> format;
  std::optional<std::string> config_path;
  std::optional<std::string> env_cache_dir;
};

/// Cache directory: flag, SINGMOD_CACHE_DIR, config file, then $XDG_CACHE_HOME/singmod or
/// $HOME/.cache/singmod. Other settings: flag, config file, default.
RunConfig resolve_config(const ConfigSources& src);

/// Full command line including argv[0]. Output goes to `out` only on success or for a
/// complete verification report; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace singmod::cli
