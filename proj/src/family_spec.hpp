#pragma once

#include <initializer_list>
#include <map>
#include <string>

namespace frac_orlicz::detail {

/// "family:key=value,key=value" split into parts; `what` prefixes error messages.
struct FamilySpec {
  std::string what;
  std::string spec;
  std::string family;
  std::string rest;
  std::map<std::string, double> params;

  double need(const std::string& key) const;
  /// Throws std::invalid_argument on any parameter not listed.
  void allow(std::initializer_list<const char*> keys) const;
};

/// Numeric parameters are parsed only when parse_params is true.
FamilySpec parse_family_spec(const std::string& spec, const std::string& what, bool parse_params = true);

}  // namespace frac_orlicz::detail
