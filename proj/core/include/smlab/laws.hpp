#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smlab/instance.hpp"

namespace smlab {

// Registry of executable laws. Ids are opaque keys; each law states a
// quantified implication over the submodules of an instance and is checked
// tuple by tuple. Tuples whose hypotheses fail are skipped, never failed;
// a law fails only when every hypothesis holds and a conclusion does not.
const std::vector<std::string>& law_ids();
bool is_law_id(const std::string& id);

// Named selections: "core" (finite-backend laws), "z" (integer-backend laws),
// "all". Unknown names raise errc::parse.
std::vector<std::string> suite_selection(const std::string& suite);

struct Instance {
  std::string name;
  ordered_json descriptor;  // rebuilds the instance via build_instance
  BuiltInstance built;
};

struct CorpusOptions {
  uint64_t seed = 42;
  Caps caps;
  int max_ring = 0;    // 0 = caps.ring; smaller values drop larger instances
  int max_module = 0;  // 0 = caps.module
};

// Curated instances plus seeded random quotient constructions. Deterministic
// in (seed, caps, bounds); every descriptor rebuilds to the same instance.
std::vector<Instance> generate_corpus(const CorpusOptions& opt);

enum class LawVerdict { pass, fail, skipped };
const char* law_verdict_name(LawVerdict v);

struct LawResult {
  std::string law;
  std::string instance;
  bool finite_backend = true;
  LawVerdict verdict = LawVerdict::skipped;
  long long quantified = 0;  // tuples with all hypotheses satisfied
  std::string reason;        // why nothing was quantified, on skipped
  ordered_json payload;      // counterexample or probe data, when present
  std::vector<ordered_json> anomalies;
};

struct SuiteOptions {
  uint64_t seed = 42;
  Caps caps;
  int jobs = 1;
  // Self-test switch: deliberately corrupts the dual strong-irreducibility
  // check so the harness can demonstrate that it reports failures.
  bool break_dual_agreement = false;
};

LawResult check_law(const std::string& law, const Instance& inst, const SuiteOptions& opt);

struct SuiteReport {
  ordered_json json;
  bool any_fail = false;
};

// Runs selection x corpus. Results are ordered law-major in registry order,
// then by corpus index; the report is byte-identical for any jobs value.
SuiteReport run_suite(const std::vector<std::string>& selection,
                      const std::vector<Instance>& corpus, const SuiteOptions& opt);

std::string report_markdown(const ordered_json& report);

} // namespace smlab
