#pragma once

#include <json.hpp>

#include "smlab/finmod.hpp"

namespace smlab {

using ordered_json = nlohmann::ordered_json;

// When true (default), every predicate with both a fast path and a
// definitional path runs the two and asserts agreement; disagreements are
// errc::internal. Benchmarks switch this off to time the fast paths alone.
void set_cross_check(bool on);
bool cross_check_enabled();

struct PropertyVerdict {
  bool value = false;
  ordered_json detail;  // witnesses and derived data; structure per predicate
};

// All submodule predicates require N proper in M (errc::precondition).

// No K, L strictly above N meet exactly in N. Computed two ways, asserted
// equal: pair scan over the lattice, and the unique-upper-cover criterion.
// detail: {"witness":{"k":[..],"l":[..]}} on false, {"unique_cover":[..]} on true.
PropertyVerdict is_irreducible(const SubmoduleLattice& lat, int nid);

// K ∩ L ⊆ N forces K ⊆ N or L ⊆ N. Exhaustive scan over all submodule pairs.
// detail: {"witness":{"k":[..],"l":[..]}} on false.
PropertyVerdict is_strongly_irreducible_exhaustive(const SubmoduleLattice& lat, int nid);

// Same property decided from cyclic submodules only (Rx ∩ Ry ⊆ N forces one
// in). Lattice-free, the production path. detail as exhaustive.
PropertyVerdict is_strongly_irreducible_cyclic(const Submodule& n);

// r·x ∈ N, x ∉ N forces r ∈ (N : M).
// detail: {"colon":[..]} plus {"witness":{"r":r,"x":x}} on false.
PropertyVerdict is_prime_submodule(const Submodule& n);

// r·x ∈ N, x ∉ N forces r ∈ Rad(N : M). On true the radical is prime and is
// reported: {"radical":[..]}. On false: {"witness":{"r":r,"x":x}}.
PropertyVerdict is_primary_submodule(const Submodule& n);

// The zero divisors on M/N form an ideal (then automatically prime, the
// adjoint). detail: {"adjoint":[..]} on true, {"witness":{"r":r,"s":s}} on
// false (r, s zero divisors with r+s not one).
PropertyVerdict is_primal(const Submodule& n);

// The intersection of all submodules strictly above N is itself strictly
// above N. detail: {"shelter":[..]} on true.
PropertyVerdict is_sheltered(const SubmoduleLattice& lat, int nid);

// (K ∩ L) + N = (K + N) ∩ (L + N) for all K, L; the dual form
// (K + L) ∩ N = (K ∩ N) + (L ∩ N) is computed too and asserted equivalent.
// detail: {"witness":{"k":[..],"l":[..]}} on false.
PropertyVerdict is_distributive_submodule(const SubmoduleLattice& lat, int nid);

// The whole lattice satisfies K ∩ (L + N) = (K ∩ L) + (K ∩ N).
// detail: {"witness":{"k":[..],"l":[..],"n":[..]}} on false.
PropertyVerdict is_distributive_module(const SubmoduleLattice& lat);

// Submodules are totally ordered. detail: {"witness":{"k":[..],"l":[..]}}.
PropertyVerdict is_uniserial(const SubmoduleLattice& lat);

// M_m is uniserial for every maximal ideal m.
// detail: {"maximals":[{"ideal":[..],"uniserial":bool}, ..]} and on false
// additionally {"witness":{"maximal":[..],"k":[..],"l":[..]}} (members in M_m).
PropertyVerdict is_arithmetical(const ModulePtr& m, int lattice_cap = 0);

// Every submodule K satisfies K = (K : M)·M.
// detail: {"witness":{"k":[..],"colon_times_m":[..]}} on false.
PropertyVerdict is_multiplication_module(const SubmoduleLattice& lat);

// rad_M(N) = intersection of the prime submodules containing N (M if none).
Submodule radical_submodule(const SubmoduleLattice& lat, int nid);

// Checks two colon identities over all triples (K, L, N):
//   sum_form:  (K + L) : N  =  (K : N) + (L : N)
//   meet_form: K : (L ∩ N)  =  (K : L) + (K : N)
// detail: {"sum_form":bool, "meet_form":bool,
//          "sum_witness"/"meet_witness":{"k":[..],"l":[..],"n":[..]} on fail}.
// value = both hold.
PropertyVerdict colon_identities(const SubmoduleLattice& lat);

// JSON helpers shared by the CLI and the law harness.
ordered_json members_json(const Bitvec& b);

} // namespace smlab
