#include "family_spec.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace frac_orlicz::detail {

double FamilySpec::need(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) {
    throw std::invalid_argument(what + " '" + spec + "': missing parameter '" + key + "'");
  }
  return it->second;
}

void FamilySpec::allow(std::initializer_list<const char*> keys) const {
  for (const auto& kv : params) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return kv.first == a; })) {
      throw std::invalid_argument(what + " '" + spec + "': unknown parameter '" + kv.first + "'");
    }
  }
}

FamilySpec parse_family_spec(const std::string& spec, const std::string& what, bool parse_params) {
  FamilySpec out;
  out.what = what;
  out.spec = spec;
  const auto colon = spec.find(':');
  out.family = spec.substr(0, colon);
  out.rest = colon == std::string::npos ? std::string{} : spec.substr(colon + 1);
  if (!parse_params) return out;
  std::stringstream ss(out.rest);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(what + " '" + spec + "': expected key=value, got '" + item + "'");
    }
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(val, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (val.empty() || used != val.size()) {
      throw std::invalid_argument(what + " '" + spec + "': parameter '" + key + "' is not a number");
    }
    out.params[key] = v;
  }
  return out;
}

}  // namespace frac_orlicz::detail
