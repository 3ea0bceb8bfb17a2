#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "smlab/bitvec.hpp"
#include "smlab/caps.hpp"
#include "smlab/errors.hpp"
#include "smlab/finring.hpp"

namespace smlab {

// A finite module over a RingTable ring, as explicit tables.
struct ModuleTable {
  RingPtr ring;
  int size = 0;
  std::vector<int> add;  // size*size, row-major
  std::vector<int> act;  // ring.size*size, row-major: act[r*size+x] = r·x
  int zero = 0;
  std::string label;
  std::vector<std::string> names;
  std::vector<int> neg;

  int addv(int x, int y) const { return add[static_cast<size_t>(x) * size + y]; }
  int actv(int r, int x) const { return act[static_cast<size_t>(r) * size + x]; }
  int subv(int x, int y) const { return addv(x, neg[y]); }
};

using ModulePtr = std::shared_ptr<const ModuleTable>;

struct Submodule {
  ModulePtr module;
  Bitvec members;
};

struct QuotientModule {
  ModulePtr module;
  std::vector<int> proj;  // base element -> coset index
};

// M localized at a prime ideal p. For a finite module inverting R∖p is the
// quotient by S-torsion: every s∈S acts injectively on M/tors, hence
// bijectively, so no new elements appear. ring/module are the quotients,
// proj maps carry elements down.
struct Localization {
  RingPtr ring;      // R_p as a quotient of R
  ModulePtr module;  // M_p as a quotient of M
  std::vector<int> ring_proj;
  std::vector<int> mod_proj;
};

// All submodules of a module, with order/meet/join acceleration tables.
// subs is in canonical order (cardinality, then lexicographic membership),
// so subs.front() = {0} and subs.back() = M.
struct SubmoduleLattice {
  ModulePtr module;
  std::vector<Bitvec> subs;
  std::vector<std::pair<int, int>> cover_edges;  // (lower, upper), upper covers lower
  std::vector<char> cyclic;                       // per submodule id
  std::vector<int> cyclic_ids;
  std::vector<int> cyc_of_elem;                   // element x -> id of Rx
  std::vector<char> leq;                          // n*n: subs[i] ⊆ subs[j]
  std::vector<int> meet_tab;                      // n*n ids
  std::vector<int> join_tab;                      // n*n ids
  std::unordered_map<Bitvec, int, BitvecHash> index;

  int count() const { return static_cast<int>(subs.size()); }
  bool leq_at(int i, int j) const { return leq[static_cast<size_t>(i) * subs.size() + j] != 0; }
  int meet(int i, int j) const { return meet_tab[static_cast<size_t>(i) * subs.size() + j]; }
  int join(int i, int j) const { return join_tab[static_cast<size_t>(i) * subs.size() + j]; }
  int id_of(const Bitvec& b) const;  // errc::internal if absent
  Submodule at(int id) const { return Submodule{module, subs[id]}; }
  // ids of submodules strictly above / strictly below id
  std::vector<int> strictly_above(int id) const;
  std::vector<int> upper_covers(int id) const;
};

void validate_module(const ModuleTable& m);

// Constructors.
ModulePtr mod_regular(const RingPtr& r);                       // R over itself
ModulePtr mod_cyclic(const RingPtr& r, const IdealSet& ann);   // R/ann
ModulePtr mod_direct_sum(const ModulePtr& a, const ModulePtr& b);
QuotientModule mod_quotient(const ModulePtr& m, const Submodule& n);
// A submodule as a standalone module (element indices renumbered, ascending).
ModulePtr submodule_as_module(const Submodule& n, std::vector<int>* elems = nullptr);

// Submodule arithmetic.
Submodule submodule_generated(const ModulePtr& m, const std::vector<int>& gens);
Submodule sub_sum(const Submodule& a, const Submodule& b);
Submodule sub_intersect(const Submodule& a, const Submodule& b);
bool is_submodule_set(const ModulePtr& m, const Bitvec& members);

// (N :_R K) = {r ∈ R : r·K ⊆ N}
IdealSet colon_ideal(const Submodule& n, const Submodule& k);
// (N :_M a) = {x ∈ M : a·x ⊆ N}
Submodule colon_into_module(const Submodule& n, const IdealSet& a);
// a·N, the submodule generated by {r·x : r ∈ a, x ∈ N}
Submodule ideal_times_submodule(const IdealSet& a, const Submodule& n);

// Ann_R(M) = (0 :_R M)
IdealSet annihilator(const ModulePtr& m);

// Full lattice, worklist closure over cyclic generators. Throws errc::cap if
// more than cap submodules exist (cap <= 0 means kDefaultCaps.lattice).
SubmoduleLattice enumerate_submodules(const ModulePtr& m, int cap = 0);
// Just the cyclic submodules Rx, deduplicated, canonical order.
std::vector<Bitvec> cyclic_submodules(const ModulePtr& m);

// Associated primes: the primes among {Ann(x) : x ∈ M, x ≠ 0}, canonical
// order. mass_module keeps the minimal ones.
std::vector<IdealSet> ass_module(const ModulePtr& m);
std::vector<IdealSet> mass_module(const ModulePtr& m);

// Saturation S(N) = ∪_{s∈S} (N :_M s) with S = R ∖ ∪ primes. An empty primes
// list leaves 0 ∈ S, so the saturation is all of M. Throws errc::precondition
// if S ends up empty.
Submodule saturate(const Submodule& n, const std::vector<IdealSet>& primes);

// (aM)^(n) = S(a^n M) with S = R ∖ ∪ mAss(M/aM). Requires aM ≠ M.
Submodule symbolic_power(const ModulePtr& m, const IdealSet& a, int n);

Localization localize(const ModulePtr& m, const IdealSet& p);

// Γ_a(M) = {x : a^t x = 0 for some t}
Submodule gamma_torsion(const ModulePtr& m, const IdealSet& a);

// Image of N under an element projection map (quotient or localization).
Bitvec push_members(const Bitvec& members, const std::vector<int>& proj, int target_size);

} // namespace smlab
