// smlab: property queries, lattice dumps, law suites, and the integer-module
// decision procedure over instance definition files.
//
// Exit codes: 0 success (for `laws`: no law failed), 1 law failure,
// 2 parse error, 3 precondition violation, 4 size cap exceeded,
// 5 internal invariant violation.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "smlab/caps.hpp"
#include "smlab/errors.hpp"
#include "smlab/instance.hpp"
#include "smlab/laws.hpp"
#include "smlab/predicates.hpp"
#include "smlab/zlattice.hpp"

namespace smlab {
namespace {

ordered_json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::parse, "cannot open \"" + path + "\"");
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(errc::parse, "invalid JSON in \"" + path + "\": " + e.what());
  }
  return j;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(errc::parse, "cannot write \"" + path + "\"");
  out << text;
}

// stdout carries the report; --out mirrors it to a file.
void emit(const ordered_json& report, bool pretty, const std::string& out_path) {
  std::string text = pretty ? report.dump(2) : report.dump();
  std::cout << text << "\n";
  if (!out_path.empty()) write_file(out_path, text + "\n");
}

ordered_json labels_json(const std::vector<std::string>& names, const Bitvec& members) {
  ordered_json out = ordered_json::array();
  for (int e : members.members()) out.push_back(names[static_cast<size_t>(e)]);
  return out;
}

ordered_json zvec_json(const ZVec& v) {
  ordered_json a = ordered_json::array();
  for (const auto& e : v) a.push_back(e.get_str());
  return a;
}

const std::vector<std::string> kSubmoduleProps = {
    "strongly_irreducible", "irreducible", "prime", "primary",
    "primal", "sheltered", "distributive"};
const std::vector<std::string> kModuleProps = {
    "uniserial", "arithmetical", "multiplication", "distributive_module",
    "colon_identities"};

bool is_submodule_prop(const std::string& p) {
  for (const auto& s : kSubmoduleProps)
    if (s == p) return true;
  return false;
}

bool is_module_prop(const std::string& p) {
  for (const auto& s : kModuleProps)
    if (s == p) return true;
  return false;
}

std::vector<std::string> parse_props(const std::string& list) {
  if (list == "all") {
    std::vector<std::string> all = kSubmoduleProps;
    all.insert(all.end(), kModuleProps.begin(), kModuleProps.end());
    return all;
  }
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (!is_submodule_prop(item) && !is_module_prop(item))
      fail(errc::parse, "unknown property \"" + item + "\"");
    out.push_back(item);
  }
  if (out.empty()) fail(errc::parse, "empty property list");
  return out;
}

// The finite module an analysis runs on, with its distinguished submodule.
struct AnalysisTarget {
  ModulePtr module;
  Bitvec sub_members;
  bool bridged = false;  // torsion integer module converted to tables
};

AnalysisTarget resolve_target(const BuiltInstance& b, const Caps& caps) {
  AnalysisTarget t;
  if (b.finite) {
    t.module = b.module;
    if (b.has_sub) {
      t.sub_members = b.sub_members;
    } else {
      t.sub_members = Bitvec(b.module->size);
      t.sub_members.set(b.module->zero);
    }
    return t;
  }
  if (z_ann(b.zmodule) == 0)
    fail(errc::precondition,
         "the module has a free part; exhaustive analysis does not apply, use decide-z");
  ZToFinite bridge = z_to_finite(b.zmodule, caps.module);
  t.module = bridge.module;
  t.bridged = true;
  std::vector<int> gens;
  if (b.has_zsub)
    for (const ZVec& col : b.zsub_gens)
      gens.push_back(z_finite_index(bridge, b.zmodule, col));
  if (gens.empty()) {
    t.sub_members = Bitvec(t.module->size);
    t.sub_members.set(t.module->zero);
  } else {
    t.sub_members = submodule_generated(t.module, gens).members;
  }
  return t;
}

ordered_json verdict_json(const PropertyVerdict& v) {
  ordered_json out = {{"verdict", v.value}};
  if (!v.detail.is_null() && !(v.detail.is_object() && v.detail.empty()))
    out["detail"] = v.detail;
  return out;
}

int cmd_analyze(const std::string& file, const std::string& props, bool pretty,
                const std::string& out_path, const Caps& caps) {
  ordered_json desc = load_json(file);
  BuiltInstance b = build_instance(desc, caps);
  std::vector<std::string> selected = parse_props(props);
  AnalysisTarget t = resolve_target(b, caps);

  bool wants_sub = false;
  for (const auto& p : selected) wants_sub |= is_submodule_prop(p);
  if (wants_sub && t.sub_members.count() == t.module->size)
    fail(errc::precondition, "the submodule is the whole module");

  SubmoduleLattice lat = enumerate_submodules(t.module, caps.lattice);
  int nid = lat.id_of(t.sub_members);

  ordered_json properties = ordered_json::object();
  for (const std::string& p : selected) {
    PropertyVerdict v;
    if (p == "strongly_irreducible") {
      v = is_strongly_irreducible_exhaustive(lat, nid);
      PropertyVerdict dual = is_strongly_irreducible_cyclic(lat.at(nid));
      if (dual.value != v.value)
        fail(errc::internal, "pair-scan and cyclic-pair criteria disagree");
    } else if (p == "irreducible") {
      v = is_irreducible(lat, nid);
    } else if (p == "prime") {
      v = is_prime_submodule(lat.at(nid));
    } else if (p == "primary") {
      v = is_primary_submodule(lat.at(nid));
    } else if (p == "primal") {
      v = is_primal(lat.at(nid));
    } else if (p == "sheltered") {
      v = is_sheltered(lat, nid);
    } else if (p == "distributive") {
      v = is_distributive_submodule(lat, nid);
    } else if (p == "uniserial") {
      v = is_uniserial(lat);
    } else if (p == "arithmetical") {
      v = is_arithmetical(t.module, caps.lattice);
    } else if (p == "multiplication") {
      v = is_multiplication_module(lat);
    } else if (p == "distributive_module") {
      v = is_distributive_module(lat);
    } else {  // colon_identities
      v = colon_identities(lat);
    }
    properties[p] = verdict_json(v);
  }

  ordered_json report = {{"instance", desc},
                         {"backend", b.finite ? "finite" : "integer"},
                         {"module", {{"size", t.module->size}, {"label", t.module->label}}},
                         {"submodule", {{"members", members_json(t.sub_members)}}}};
  if (t.bridged) report["bridged"] = true;
  if (pretty) {
    report["module"]["names"] = t.module->names;
    report["submodule"]["labels"] = labels_json(t.module->names, t.sub_members);
  }
  report["properties"] = properties;
  emit(report, pretty, out_path);
  return 0;
}

int cmd_lattice(const std::string& file, bool pretty, const std::string& out_path,
                const Caps& caps) {
  ordered_json desc = load_json(file);
  BuiltInstance b = build_instance(desc, caps);
  if (!b.finite)
    fail(errc::precondition, "lattice dumps require the finite backend");
  SubmoduleLattice lat = enumerate_submodules(b.module, caps.lattice);
  ordered_json nodes = ordered_json::array();
  ordered_json covers = ordered_json::array();
  for (int i = 0; i < lat.count(); ++i) {
    ordered_json node = {{"id", i},
                         {"members", members_json(lat.subs[static_cast<size_t>(i)])},
                         {"cyclic", lat.cyclic[static_cast<size_t>(i)] != 0}};
    if (pretty)
      node["labels"] = labels_json(b.module->names, lat.subs[static_cast<size_t>(i)]);
    nodes.push_back(std::move(node));
    for (int j : lat.upper_covers(i)) covers.push_back(ordered_json::array({i, j}));
  }
  ordered_json report = {{"instance", desc},
                         {"module", {{"size", b.module->size}, {"label", b.module->label}}},
                         {"count", lat.count()},
                         {"nodes", nodes},
                         {"covers", covers}};
  emit(report, pretty, out_path);
  return 0;
}

int cmd_laws(const std::string& suite, uint64_t seed, int max_ring, int max_module, int jobs,
             bool pretty, const std::string& out_path, const std::string& md_path,
             const Caps& caps) {
  std::vector<std::string> selection = suite_selection(suite);
  CorpusOptions copt;
  copt.seed = seed;
  copt.caps = caps;
  copt.max_ring = max_ring;
  copt.max_module = max_module;
  std::vector<Instance> corpus = generate_corpus(copt);
  SuiteOptions sopt;
  sopt.seed = seed;
  sopt.caps = caps;
  sopt.jobs = jobs;
  SuiteReport rep = run_suite(selection, corpus, sopt);
  emit(rep.json, pretty, out_path);
  if (!md_path.empty()) write_file(md_path, report_markdown(rep.json));
  const ordered_json& s = rep.json.at("summary");
  std::cerr << "laws: " << s.at("pass") << " pass, " << s.at("fail") << " fail, "
            << s.at("skipped") << " skipped\n";
  return rep.any_fail ? 1 : 0;
}

ZSubmodule distinguished_zsub(const BuiltInstance& b) {
  return b.has_zsub ? z_submodule(b.zmodule, b.zsub_gens) : z_zero(b.zmodule);
}

// An optional second file overrides the instance's own "zsub".
BuiltInstance build_z_instance(const std::string& file, const std::string& sub_file,
                               const Caps& caps) {
  ordered_json desc = load_json(file);
  if (!sub_file.empty()) {
    ordered_json sub = load_json(sub_file);
    if (sub.is_object() && sub.contains("zsub")) sub = sub.at("zsub");
    if (!desc.is_object()) fail(errc::parse, "instance file must hold a JSON object");
    desc["zsub"] = sub;
  }
  BuiltInstance b = build_instance(desc, caps);
  if (b.finite)
    fail(errc::precondition, "this command requires an integer-backend instance");
  return b;
}

int cmd_decide_z(const std::string& file, const std::string& sub_file, int bound, bool pretty,
                 const std::string& out_path, const Caps& caps) {
  BuiltInstance b = build_z_instance(file, sub_file, caps);
  ZVerdict v = z_decide_strongly_irreducible(distinguished_zsub(b), bound, caps);
  ordered_json report = {{"answer", z_answer_name(v.answer)},
                         {"path", z_path_name(v.path)},
                         {"colon", v.colon.get_str()}};
  if (v.prime != 0) {
    report["prime"] = v.prime.get_str();
    report["power"] = v.power;
    report["arithmetical_at_p"] = v.arithmetical_at_p;
    report["symbolic_match"] = v.symbolic_match;
  }
  if (v.has_witness) {
    report["witness"] = {{"x", zvec_json(v.witness_x)},
                         {"y", zvec_json(v.witness_y)},
                         {"constructed", v.witness_constructed}};
  }
  if (v.search_bound > 0) {
    report["search_bound"] = v.search_bound;
    report["search_found"] = v.search_found;
  }
  if (!v.reason.empty()) report["reason"] = v.reason;
  emit(report, pretty, out_path);
  return 0;
}

int cmd_witness(const std::string& file, int bound, bool pretty, const std::string& out_path,
                const Caps& caps) {
  ordered_json desc = load_json(file);
  BuiltInstance b = build_instance(desc, caps);
  ordered_json report;
  if (b.finite) {
    AnalysisTarget t = resolve_target(b, caps);
    if (t.sub_members.count() == t.module->size)
      fail(errc::precondition, "the submodule is the whole module");
    SubmoduleLattice lat = enumerate_submodules(t.module, caps.lattice);
    PropertyVerdict v = is_strongly_irreducible_exhaustive(lat, lat.id_of(t.sub_members));
    report = {{"backend", "finite"}, {"found", !v.value}};
    if (!v.value) report["witness"] = v.detail.at("witness");
  } else {
    ZSubmodule n = distinguished_zsub(b);
    auto w = z_witness_search(n, bound);
    report = {{"backend", "integer"}, {"bound", bound}, {"found", w.has_value()}};
    if (w)
      report["witness"] = {{"x", zvec_json(w->first)}, {"y", zvec_json(w->second)}};
  }
  emit(report, pretty, out_path);
  return 0;
}

} // namespace
} // namespace smlab

int main(int argc, char** argv) {
  using namespace smlab;
  CLI::App app{"submodule-lattice property laboratory"};
  app.require_subcommand(1);

  bool pretty = false;
  app.add_flag("--pretty", pretty, "indent output and render element labels");

  std::string an_file, an_props = "all", an_out;
  CLI::App* analyze = app.add_subcommand("analyze", "evaluate properties of (M, N)");
  analyze->add_option("file", an_file, "instance definition file")->required();
  analyze->add_option("--props", an_props, "comma-separated property list or \"all\"");
  analyze->add_option("--out", an_out, "also write the report to this file");

  std::string lat_file, lat_out;
  CLI::App* lattice = app.add_subcommand("lattice", "dump the submodule lattice");
  lattice->add_option("file", lat_file, "instance definition file")->required();
  lattice->add_option("--out", lat_out, "also write the report to this file");

  std::string laws_suite = "core", laws_out, laws_md;
  uint64_t laws_seed = 42;
  int laws_max_ring = 0, laws_max_module = 0, laws_jobs = 1;
  CLI::App* laws = app.add_subcommand("laws", "run a law suite over the generated corpus");
  laws->add_option("--suite", laws_suite, "core, z, or all");
  laws->add_option("--seed", laws_seed, "corpus seed");
  laws->add_option("--max-ring", laws_max_ring, "drop corpus rings larger than this");
  laws->add_option("--max-module", laws_max_module, "drop corpus modules larger than this");
  laws->add_option("--jobs", laws_jobs, "worker threads across instances");
  laws->add_option("--out", laws_out, "also write the JSON report to this file");
  laws->add_option("--md", laws_md, "write a markdown summary to this file");

  std::string dz_file, dz_sub, dz_out;
  int dz_bound = 8;
  CLI::App* decide = app.add_subcommand("decide-z", "decide strong irreducibility over Z");
  decide->add_option("file", dz_file, "integer instance file")->required();
  decide->add_option("subfile", dz_sub, "optional file overriding the zsub generators");
  decide->add_option("--witness-bound", dz_bound, "search height bound");
  decide->add_option("--out", dz_out, "also write the report to this file");

  std::string w_file, w_out;
  int w_bound = 8;
  CLI::App* witness = app.add_subcommand("witness", "search for a refuting submodule pair");
  witness->add_option("file", w_file, "instance definition file")->required();
  witness->add_option("--witness-bound", w_bound, "search height bound (integer backend)");
  witness->add_option("--out", w_out, "also write the report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Caps caps = caps_from_env();
    if (analyze->parsed()) return cmd_analyze(an_file, an_props, pretty, an_out, caps);
    if (lattice->parsed()) return cmd_lattice(lat_file, pretty, lat_out, caps);
    if (laws->parsed())
      return cmd_laws(laws_suite, laws_seed, laws_max_ring, laws_max_module, laws_jobs, pretty,
                      laws_out, laws_md, caps);
    if (decide->parsed()) return cmd_decide_z(dz_file, dz_sub, dz_bound, pretty, dz_out, caps);
    if (witness->parsed()) return cmd_witness(w_file, w_bound, pretty, w_out, caps);
    return 2;
  } catch (const error& e) {
    std::cerr << "smlab: " << e.what() << "\n";
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "smlab: unexpected: " << e.what() << "\n";
    return static_cast<int>(errc::internal);
  }
}
