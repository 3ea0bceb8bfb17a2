#pragma once

#include <json.hpp>

#include <vector>

#include "smlab/caps.hpp"
#include "smlab/finmod.hpp"
#include "smlab/zlattice.hpp"

namespace smlab {

using ordered_json = nlohmann::ordered_json;

// A work item built from a JSON instance file. Finite instances carry a ring
// and a module plus an optional designated submodule; integer instances carry
// a ZModule and optional designated generators. Exactly one of the two
// backends is populated.
struct BuiltInstance {
  bool finite = true;

  RingPtr ring;
  ModulePtr module;
  bool has_sub = false;
  std::vector<int> sub_gens;
  Bitvec sub_members;

  ZModulePtr zmodule;
  bool has_zsub = false;
  ZMat zsub_gens;
};

// Descriptor formats (see README for examples):
//   ring:   {"kind":"zmod","n":12}
//           {"kind":"gfpoly","p":2,"modulus":[1,1,1]}      (ascending coefficients, monic)
//           {"kind":"product","factors":[ring, ring, ...]}
//           {"kind":"quotient","base":ring,"ideal_gens":[...]}
//           {"kind":"idealization","base":ring,"rank":2}
//   module: {"kind":"regular"}
//           {"kind":"cyclic","ideal_gens":[...]}
//           {"kind":"dsum","parts":[module, module, ...]}
//           {"kind":"quotient","base":module,"sub_gens":[...]}
//   file:   {"ring":..., "module":..., "submodule":{"gens":[...]}}   (submodule optional)
//        or {"zmodule":{"rank":2,"relations":[[0,3]]}, "zsub":{"gens":[[4,0]]}}
//           (matrices are lists of integer columns; zsub optional)
// Malformed shapes raise errc::parse; configured size caps raise errc::cap.
RingPtr build_ring(const ordered_json& desc, const Caps& caps);
ModulePtr build_module(const RingPtr& ring, const ordered_json& desc, const Caps& caps);
BuiltInstance build_instance(const ordered_json& file, const Caps& caps);

} // namespace smlab
