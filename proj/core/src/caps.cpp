#include "smlab/caps.hpp"

#include <cstdlib>

#include "smlab/errors.hpp"

namespace smlab {

Caps parse_caps(const std::string& text, Caps base) {
  Caps caps = base;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    std::string item = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (item.empty()) continue;
    size_t eq = item.find('=');
    if (eq == std::string::npos) fail(errc::parse, "caps entry missing '=': " + item);
    std::string key = item.substr(0, eq);
    std::string val = item.substr(eq + 1);
    int v = 0;
    try {
      size_t used = 0;
      v = std::stoi(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
    } catch (const std::exception&) {
      fail(errc::parse, "caps value not an integer: " + item);
    }
    if (v <= 0) fail(errc::parse, "caps value must be positive: " + item);
    if (key == "ring") caps.ring = v;
    else if (key == "module") caps.module = v;
    else if (key == "lattice") caps.lattice = v;
    else fail(errc::parse, "unknown caps key: " + key);
  }
  return caps;
}

Caps caps_from_env() {
  const char* env = std::getenv("SMLAB_CAPS");
  if (!env) return Caps{};
  return parse_caps(env);
}

} // namespace smlab
