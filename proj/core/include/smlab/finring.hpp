#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "smlab/bitvec.hpp"
#include "smlab/caps.hpp"
#include "smlab/errors.hpp"

namespace smlab {

// A finite commutative ring with non-zero identity, as explicit operation
// tables. Element encodings are fixed per constructor so indices are stable:
//   zmod:         element i encodes residue i
//   gfpoly:       little-endian base-p encoding of the coefficient vector
//   product:      index of (x, y) = x * |b| + y
//   quotient:     cosets indexed by sorted minimal representatives
//   idealization: index of (a, v) = a + q * (v_0 + q*v_1 + ...), mixed radix
struct RingTable {
  int size = 0;
  std::vector<int> add;   // size*size, row-major
  std::vector<int> mul;   // size*size, row-major
  int zero = 0;
  int one = 0;
  std::string label;
  std::vector<std::string> names;  // element rendering, length size
  std::vector<int> neg;            // additive inverse per element

  int addv(int a, int b) const { return add[static_cast<size_t>(a) * size + b]; }
  int mulv(int a, int b) const { return mul[static_cast<size_t>(a) * size + b]; }
  int subv(int a, int b) const { return addv(a, neg[b]); }
};

using RingPtr = std::shared_ptr<const RingTable>;

struct IdealSet {
  RingPtr ring;
  Bitvec members;
};

struct PrimeWitness {
  IdealSet ideal;
  bool is_maximal = false;
};

struct QuotientRing {
  RingPtr ring;
  std::vector<int> proj;  // base element index -> coset index
};

// Checks the ring axioms; full triple loops for size <= kValidateExhaustive,
// seeded sampling above. Throws errc::internal on a violated axiom.
void validate_ring(const RingTable& r);

// Constructors. All validate their output and reject size-1 rings.
RingPtr ring_zmod(int n);
RingPtr ring_polyquot(int p, const std::vector<int>& modulus);  // F_p[x]/(modulus), monic
RingPtr ring_product(const RingPtr& a, const RingPtr& b);
QuotientRing ring_quotient(const RingPtr& r, const IdealSet& i);
// Square-zero extension R ⋉ R^rank: (a,u)(b,v) = (ab, av+bu). For a field F
// this is F[x_1..x_rank]/(x_1..x_rank)^2, the smallest non-principal-ideal ring.
RingPtr ring_idealization(const RingPtr& base, int rank);

// Ideal arithmetic. Binary ops require the same ring.
IdealSet ideal_generated(const RingPtr& r, const std::vector<int>& gens);
IdealSet ideal_sum(const IdealSet& i, const IdealSet& j);
IdealSet ideal_product(const IdealSet& i, const IdealSet& j);
IdealSet ideal_intersection(const IdealSet& i, const IdealSet& j);
IdealSet ideal_colon(const IdealSet& i, const IdealSet& j);  // (i : j) = {r : r*j ⊆ i}
IdealSet radical_ideal(const RingPtr& r, const IdealSet& i);

bool is_ideal_set(const RingPtr& r, const Bitvec& members);

// Primality by full pair scan. i must be proper.
bool is_prime_ideal(const IdealSet& i);

// All ideals in canonical order (cardinality, then lexicographic membership),
// found by submodule enumeration of R over itself. Ring size capped at
// kRingFullLatticeCap.
std::vector<IdealSet> enumerate_ideals(const RingPtr& r);

std::vector<PrimeWitness> maximal_ideals(const RingPtr& r);

// True iff exactly one maximal ideal; returns it.
std::pair<bool, IdealSet> is_local(const RingPtr& r);

} // namespace smlab
