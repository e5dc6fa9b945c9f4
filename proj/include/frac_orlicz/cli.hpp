#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace frac_orlicz::cli {

enum ExitCode : int { kPass = 0, kUsage = 1, kViolation = 2 };

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& key, const std::string& message)
      : std::runtime_error("config key '" + key + "': " + message), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Flat key -> value experiment configuration.
using Config = std::map<std::string, std::string>;

/// Built-in values for every known key.
Config default_config();

/// "key = value" lines; '#' starts a comment. Throws ConfigError on unknown
/// keys, malformed lines, an unreadable file or a file with no keys.
Config read_config_file(const std::string& path);

/// Type and range checks for every key; family names are parsed. Throws ConfigError.
void validate_config(const Config& cfg);

/// "# config: k1=v1 k2=v2 ..." with sorted keys.
std::string config_comment(const Config& cfg);

/// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace frac_orlicz::cli
