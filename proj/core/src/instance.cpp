#include "smlab/instance.hpp"

#include <string>

#include "smlab/errors.hpp"

namespace smlab {

namespace {

const ordered_json& require_object(const ordered_json& j, const std::string& ctx) {
  if (!j.is_object()) fail(errc::parse, ctx + ": expected a JSON object");
  return j;
}

void expect_keys(const ordered_json& obj, std::initializer_list<const char*> allowed,
                 const std::string& ctx) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok) fail(errc::parse, ctx + ": unknown key \"" + it.key() + "\"");
  }
}

const ordered_json& require_field(const ordered_json& obj, const char* key,
                                  const std::string& ctx) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(errc::parse, ctx + ": missing \"" + std::string(key) + "\"");
  return *it;
}

long long require_int(const ordered_json& j, const std::string& ctx) {
  if (!j.is_number_integer() && !j.is_number_unsigned())
    fail(errc::parse, ctx + ": expected an integer");
  return j.get<long long>();
}

std::vector<int> require_small_ints(const ordered_json& j, const std::string& ctx) {
  if (!j.is_array()) fail(errc::parse, ctx + ": expected an array of integers");
  std::vector<int> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    long long v = require_int(j[i], ctx + "[" + std::to_string(i) + "]");
    if (v < -(1ll << 30) || v > (1ll << 30))
      fail(errc::parse, ctx + "[" + std::to_string(i) + "]: value out of range");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

mpz_class require_bigint(const ordered_json& j, const std::string& ctx) {
  if (j.is_number_integer() || j.is_number_unsigned()) {
    long long v = j.get<long long>();
    return mpz_class(static_cast<long>(v));  // LP64: long is 64-bit
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    mpz_class out;
    if (s.empty() || mpz_set_str(out.get_mpz_t(), s.c_str(), 10) != 0)
      fail(errc::parse, ctx + ": not a decimal integer string");
    return out;
  }
  fail(errc::parse, ctx + ": expected an integer or a decimal string");
}

// Matrices are lists of columns, each of length rank.
ZMat require_columns(const ordered_json& j, int rank, const std::string& ctx) {
  if (!j.is_array()) fail(errc::parse, ctx + ": expected an array of columns");
  ZMat out;
  out.reserve(j.size());
  for (size_t c = 0; c < j.size(); ++c) {
    const std::string cctx = ctx + "[" + std::to_string(c) + "]";
    const ordered_json& col = j[c];
    if (!col.is_array()) fail(errc::parse, cctx + ": expected a column (array)");
    if (static_cast<int>(col.size()) != rank)
      fail(errc::parse, cctx + ": column length " + std::to_string(col.size()) +
                            " does not match rank " + std::to_string(rank));
    ZVec v(rank);
    for (int r = 0; r < rank; ++r)
      v[r] = require_bigint(col[r], cctx + "[" + std::to_string(r) + "]");
    out.push_back(std::move(v));
  }
  return out;
}

void check_ring_size(long long predicted, const Caps& caps, const std::string& ctx) {
  if (predicted > caps.ring)
    fail(errc::cap, ctx + ": ring of size " + std::to_string(predicted) +
                        " exceeds the ring cap " + std::to_string(caps.ring));
}

} // namespace

RingPtr build_ring(const ordered_json& desc, const Caps& caps) {
  require_object(desc, "ring");
  const std::string kind = [&] {
    const ordered_json& k = require_field(desc, "kind", "ring");
    if (!k.is_string()) fail(errc::parse, "ring.kind: expected a string");
    return k.get<std::string>();
  }();

  if (kind == "zmod") {
    expect_keys(desc, {"kind", "n"}, "ring(zmod)");
    long long n = require_int(require_field(desc, "n", "ring(zmod)"), "ring(zmod).n");
    if (n < 2) fail(errc::parse, "ring(zmod).n: need n >= 2");
    check_ring_size(n, caps, "ring(zmod)");
    return ring_zmod(static_cast<int>(n));
  }

  if (kind == "gfpoly") {
    expect_keys(desc, {"kind", "p", "modulus"}, "ring(gfpoly)");
    long long p = require_int(require_field(desc, "p", "ring(gfpoly)"), "ring(gfpoly).p");
    std::vector<int> modulus =
        require_small_ints(require_field(desc, "modulus", "ring(gfpoly)"), "ring(gfpoly).modulus");
    if (p < 2 || p > 64) fail(errc::parse, "ring(gfpoly).p: out of range");
    if (modulus.size() < 2) fail(errc::parse, "ring(gfpoly).modulus: need degree >= 1");
    long long predicted = 1;
    for (size_t i = 0; i + 1 < modulus.size(); ++i) {
      predicted *= p;
      if (predicted > caps.ring) break;
    }
    check_ring_size(predicted, caps, "ring(gfpoly)");
    return ring_polyquot(static_cast<int>(p), modulus);
  }

  if (kind == "product") {
    expect_keys(desc, {"kind", "factors"}, "ring(product)");
    const ordered_json& factors = require_field(desc, "factors", "ring(product)");
    if (!factors.is_array() || factors.size() < 2)
      fail(errc::parse, "ring(product).factors: need at least two factors");
    RingPtr acc = build_ring(factors[0], caps);
    for (size_t i = 1; i < factors.size(); ++i) {
      RingPtr next = build_ring(factors[i], caps);
      check_ring_size(static_cast<long long>(acc->size) * next->size, caps, "ring(product)");
      acc = ring_product(acc, next);
    }
    return acc;
  }

  if (kind == "quotient") {
    expect_keys(desc, {"kind", "base", "ideal_gens"}, "ring(quotient)");
    RingPtr base = build_ring(require_field(desc, "base", "ring(quotient)"), caps);
    std::vector<int> gens = require_small_ints(
        require_field(desc, "ideal_gens", "ring(quotient)"), "ring(quotient).ideal_gens");
    for (int g : gens)
      if (g < 0 || g >= base->size)
        fail(errc::parse, "ring(quotient).ideal_gens: element index out of range");
    IdealSet ideal = ideal_generated(base, gens);
    if (ideal.members.count() == base->size)
      fail(errc::precondition, "ring(quotient): the ideal is the whole ring");
    return ring_quotient(base, ideal).ring;
  }

  if (kind == "idealization") {
    expect_keys(desc, {"kind", "base", "rank"}, "ring(idealization)");
    RingPtr base = build_ring(require_field(desc, "base", "ring(idealization)"), caps);
    long long rank =
        require_int(require_field(desc, "rank", "ring(idealization)"), "ring(idealization).rank");
    if (rank < 1 || rank > 16) fail(errc::parse, "ring(idealization).rank: out of range");
    long long predicted = base->size;
    for (long long i = 0; i < rank; ++i) {
      predicted *= base->size;
      if (predicted > caps.ring) break;
    }
    check_ring_size(predicted, caps, "ring(idealization)");
    return ring_idealization(base, static_cast<int>(rank));
  }

  fail(errc::parse, "ring.kind: unknown kind \"" + kind + "\"");
}

ModulePtr build_module(const RingPtr& ring, const ordered_json& desc, const Caps& caps) {
  require_object(desc, "module");
  const std::string kind = [&] {
    const ordered_json& k = require_field(desc, "kind", "module");
    if (!k.is_string()) fail(errc::parse, "module.kind: expected a string");
    return k.get<std::string>();
  }();

  ModulePtr built;
  if (kind == "regular") {
    expect_keys(desc, {"kind"}, "module(regular)");
    built = mod_regular(ring);
  } else if (kind == "cyclic") {
    expect_keys(desc, {"kind", "ideal_gens"}, "module(cyclic)");
    std::vector<int> gens = require_small_ints(
        require_field(desc, "ideal_gens", "module(cyclic)"), "module(cyclic).ideal_gens");
    for (int g : gens)
      if (g < 0 || g >= ring->size)
        fail(errc::parse, "module(cyclic).ideal_gens: element index out of range");
    IdealSet ann = ideal_generated(ring, gens);
    if (ann.members.count() == ring->size)
      fail(errc::precondition, "module(cyclic): the annihilator is the whole ring");
    built = mod_cyclic(ring, ann);
  } else if (kind == "dsum") {
    expect_keys(desc, {"kind", "parts"}, "module(dsum)");
    const ordered_json& parts = require_field(desc, "parts", "module(dsum)");
    if (!parts.is_array() || parts.empty())
      fail(errc::parse, "module(dsum).parts: need at least one part");
    ModulePtr acc = build_module(ring, parts[0], caps);
    for (size_t i = 1; i < parts.size(); ++i) {
      ModulePtr next = build_module(ring, parts[i], caps);
      if (static_cast<long long>(acc->size) * next->size > caps.module)
        fail(errc::cap, "module(dsum): module of size " +
                            std::to_string(static_cast<long long>(acc->size) * next->size) +
                            " exceeds the module cap " + std::to_string(caps.module));
      acc = mod_direct_sum(acc, next);
    }
    built = acc;
  } else if (kind == "quotient") {
    expect_keys(desc, {"kind", "base", "sub_gens"}, "module(quotient)");
    ModulePtr base = build_module(ring, require_field(desc, "base", "module(quotient)"), caps);
    std::vector<int> gens = require_small_ints(
        require_field(desc, "sub_gens", "module(quotient)"), "module(quotient).sub_gens");
    for (int g : gens)
      if (g < 0 || g >= base->size)
        fail(errc::parse, "module(quotient).sub_gens: element index out of range");
    built = mod_quotient(base, submodule_generated(base, gens)).module;
  } else {
    fail(errc::parse, "module.kind: unknown kind \"" + kind + "\"");
  }

  if (built->size > caps.module)
    fail(errc::cap, "module: module of size " + std::to_string(built->size) +
                        " exceeds the module cap " + std::to_string(caps.module));
  return built;
}

BuiltInstance build_instance(const ordered_json& file, const Caps& caps) {
  require_object(file, "instance");
  BuiltInstance out;

  if (file.contains("zmodule")) {
    expect_keys(file, {"zmodule", "zsub"}, "instance");
    const ordered_json& zm = require_object(require_field(file, "zmodule", "instance"), "zmodule");
    expect_keys(zm, {"rank", "relations", "label"}, "zmodule");
    long long rank = require_int(require_field(zm, "rank", "zmodule"), "zmodule.rank");
    if (rank < 0 || rank > 1024) fail(errc::parse, "zmodule.rank: out of range");
    ZMat relations;
    if (zm.contains("relations"))
      relations = require_columns(zm["relations"], static_cast<int>(rank), "zmodule.relations");
    std::string label;
    if (zm.contains("label")) {
      if (!zm["label"].is_string()) fail(errc::parse, "zmodule.label: expected a string");
      label = zm["label"].get<std::string>();
    }
    out.finite = false;
    out.zmodule = z_module(static_cast<int>(rank), relations, label);
    if (file.contains("zsub")) {
      const ordered_json& zs = require_object(file["zsub"], "zsub");
      expect_keys(zs, {"gens"}, "zsub");
      out.has_zsub = true;
      out.zsub_gens =
          require_columns(require_field(zs, "gens", "zsub"), static_cast<int>(rank), "zsub.gens");
    }
    return out;
  }

  expect_keys(file, {"ring", "module", "submodule"}, "instance");
  out.finite = true;
  out.ring = build_ring(require_field(file, "ring", "instance"), caps);
  out.module = build_module(out.ring, require_field(file, "module", "instance"), caps);
  if (file.contains("submodule")) {
    const ordered_json& sub = require_object(file["submodule"], "submodule");
    expect_keys(sub, {"gens"}, "submodule");
    std::vector<int> gens =
        require_small_ints(require_field(sub, "gens", "submodule"), "submodule.gens");
    for (int g : gens)
      if (g < 0 || g >= out.module->size)
        fail(errc::parse, "submodule.gens: element index out of range");
    out.has_sub = true;
    out.sub_gens = gens;
    out.sub_members = submodule_generated(out.module, gens).members;
  }
  return out;
}

} // namespace smlab
