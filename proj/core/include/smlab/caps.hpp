#pragma once

#include <string>

namespace smlab {

// Size caps. `ring` and `module` bound corpus construction sizes; `lattice`
// bounds both the module size eligible for full enumeration and the number
// of submodules an enumeration may produce. Overridable via the SMLAB_CAPS
// environment variable, format "ring=64,module=200,lattice=512".
struct Caps {
  int ring = 64;
  int module = 200;
  int lattice = 512;
};

// Hard construction bounds, independent of configurable caps.
inline constexpr int kRingConstructCap = 4096;   // largest ring table ever built
inline constexpr int kRingFullLatticeCap = 256;  // largest ring eligible for ideal enumeration
inline constexpr int kValidateExhaustive = 64;   // full triple loops up to here, sampling above
inline constexpr int kValidateSamples = 100000;  // sampled triples for larger tables

// Parses "ring=64,module=200,lattice=512"; unknown keys are a parse error.
Caps parse_caps(const std::string& text, Caps base = Caps{});

// Caps from SMLAB_CAPS if set, defaults otherwise.
Caps caps_from_env();

} // namespace smlab
