#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "smlab/finmod.hpp"
#include "smlab/finring.hpp"

using namespace smlab;

namespace {

Bitvec set_of(int n, const std::vector<int>& elems) {
  Bitvec b(n);
  for (int e : elems) b.set(e);
  return b;
}

std::vector<int> sorted_members(const Bitvec& b) { return b.members(); }

// Independent oracle: enumerate submodules by filtering every subset.
// Only usable for module size <= ~16; the closure-based enumeration must
// agree with it exactly.
std::vector<Bitvec> brute_submodules(const ModulePtr& m) {
  std::vector<Bitvec> out;
  REQUIRE(m->size <= 16);
  for (unsigned mask = 0; mask < (1u << m->size); ++mask) {
    Bitvec b(m->size);
    for (int i = 0; i < m->size; ++i)
      if (mask & (1u << i)) b.set(i);
    if (is_submodule_set(m, b)) out.push_back(b);
  }
  std::sort(out.begin(), out.end(), [](const Bitvec& a, const Bitvec& b) { return a.canon_less(b); });
  return out;
}

std::vector<Bitvec> brute_ideals(const RingPtr& r) { return brute_submodules(mod_regular(r)); }

} // namespace

TEST_CASE("caps parsing") {
  Caps c = parse_caps("ring=32,module=100");
  CHECK(c.ring == 32);
  CHECK(c.module == 100);
  CHECK(c.lattice == 512);
  CHECK_THROWS_AS(parse_caps("ring=abc"), error);
  CHECK_THROWS_AS(parse_caps("rings=3"), error);
  CHECK_THROWS_AS(parse_caps("ring=-1"), error);
  CHECK_THROWS_AS(parse_caps("ring"), error);
  try {
    parse_caps("bogus=1");
  } catch (const error& e) {
    CHECK(e.kind() == errc::parse);
  }
}

TEST_CASE("zmod construction and rejection") {
  auto r = ring_zmod(12);
  CHECK(r->size == 12);
  CHECK(r->addv(7, 8) == 3);
  CHECK(r->mulv(7, 8) == 8);
  CHECK(r->neg[5] == 7);
  CHECK(r->names[11] == "11");
  CHECK_THROWS_AS(ring_zmod(1), error);
  try {
    ring_zmod(0);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.kind() == errc::precondition);
  }
  try {
    ring_zmod(100000);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.kind() == errc::cap);
  }
}

TEST_CASE("gfpoly fields and non-fields") {
  // F_4 = F_2[x]/(x^2+x+1); modulus little-endian (1,1,1).
  auto f4 = ring_polyquot(2, {1, 1, 1});
  CHECK(f4->size == 4);
  // Elements: 0, 1, x(=2), x+1(=3). x*(x+1) = x^2+x = 1.
  CHECK(f4->mulv(2, 3) == 1);
  CHECK(f4->names[3] == "x+1");
  auto ideals = enumerate_ideals(f4);
  CHECK(ideals.size() == 2);  // fields have only {0} and R

  // F_2[x]/(x^2) has the nilpotent ideal (x).
  auto dual = ring_polyquot(2, {0, 0, 1});
  auto di = enumerate_ideals(dual);
  REQUIRE(di.size() == 3);
  CHECK(sorted_members(di[1].members) == std::vector<int>{0, 2});

  CHECK_THROWS_AS(ring_polyquot(4, {1, 1, 1}), error);   // 4 not prime
  CHECK_THROWS_AS(ring_polyquot(2, {1, 2, 1}), error);   // coefficient out of range
  CHECK_THROWS_AS(ring_polyquot(2, {1, 1, 0}), error);   // not monic
  CHECK_THROWS_AS(ring_polyquot(2, {1}), error);         // degree 0
}

TEST_CASE("product ring is componentwise") {
  auto z2 = ring_zmod(2);
  auto z3 = ring_zmod(3);
  auto r = ring_product(z2, z3);
  CHECK(r->size == 6);
  // (x,y) encoded as x*3+y.
  CHECK(r->one == 1 * 3 + 1);
  CHECK(r->mulv(1 * 3 + 2, 1 * 3 + 2) == 1 * 3 + 1);
  CHECK(r->names[5] == "(1,2)");
  // Z/2 x Z/3 is Z/6: four ideals.
  CHECK(enumerate_ideals(r).size() == 4);
  CHECK_FALSE(is_local(r).first);
}

TEST_CASE("ideal enumeration matches brute-force subset filter") {
  for (int n : {4, 8, 12}) {
    auto r = ring_zmod(n);
    auto fast = enumerate_ideals(r);
    auto brute = brute_ideals(r);
    REQUIRE(fast.size() == brute.size());
    for (size_t i = 0; i < fast.size(); ++i) CHECK(fast[i].members == brute[i]);
  }
  auto ideal8 = ring_idealization(ring_zmod(2), 2);
  auto fast = enumerate_ideals(ideal8);
  auto brute = brute_ideals(ideal8);
  REQUIRE(fast.size() == brute.size());
  for (size_t i = 0; i < fast.size(); ++i) CHECK(fast[i].members == brute[i]);
}

TEST_CASE("Z/12 ideal lattice in canonical order") {
  auto r = ring_zmod(12);
  auto ideals = enumerate_ideals(r);
  REQUIRE(ideals.size() == 6);
  CHECK(sorted_members(ideals[0].members) == std::vector<int>{0});
  CHECK(sorted_members(ideals[1].members) == std::vector<int>{0, 6});
  CHECK(sorted_members(ideals[2].members) == std::vector<int>{0, 4, 8});
  CHECK(sorted_members(ideals[3].members) == std::vector<int>{0, 3, 6, 9});
  CHECK(sorted_members(ideals[4].members) == std::vector<int>{0, 2, 4, 6, 8, 10});
  CHECK(ideals[5].members.count() == 12);
}

TEST_CASE("ideal arithmetic on Z/12") {
  auto r = ring_zmod(12);
  auto i4 = ideal_generated(r, {4});
  auto i6 = ideal_generated(r, {6});
  auto i2 = ideal_generated(r, {2});
  CHECK(sorted_members(ideal_sum(i4, i6).members) == std::vector<int>{0, 2, 4, 6, 8, 10});
  CHECK(sorted_members(ideal_intersection(i4, i6).members) == std::vector<int>{0});
  CHECK(sorted_members(ideal_product(i4, i6).members) == std::vector<int>{0});
  CHECK(sorted_members(ideal_colon(i4, i2).members) == std::vector<int>{0, 2, 4, 6, 8, 10});
  CHECK(sorted_members(radical_ideal(r, i4).members) == std::vector<int>{0, 2, 4, 6, 8, 10});
  auto i3 = ideal_generated(r, {3});
  CHECK(is_prime_ideal(i2));
  CHECK(is_prime_ideal(i3));
  CHECK_FALSE(is_prime_ideal(i4));
  CHECK_FALSE(is_prime_ideal(i6));
  CHECK_FALSE(is_prime_ideal(ideal_generated(r, {0})));
  CHECK_FALSE(is_prime_ideal(ideal_generated(r, {1})));  // not proper
}

TEST_CASE("maximal ideals and locality") {
  auto z12 = ring_zmod(12);
  auto mx = maximal_ideals(z12);
  REQUIRE(mx.size() == 2);
  CHECK(sorted_members(mx[0].ideal.members) == std::vector<int>{0, 3, 6, 9});
  CHECK(sorted_members(mx[1].ideal.members) == std::vector<int>{0, 2, 4, 6, 8, 10});
  for (const auto& w : mx) CHECK(is_prime_ideal(w.ideal));
  CHECK_FALSE(is_local(z12).first);

  auto z8 = ring_zmod(8);
  auto loc = is_local(z8);
  CHECK(loc.first);
  CHECK(sorted_members(loc.second.members) == std::vector<int>{0, 2, 4, 6});
}

TEST_CASE("quotient ring Z/12 by (4) is Z/4") {
  auto r = ring_zmod(12);
  auto q = ring_quotient(r, ideal_generated(r, {4}));
  CHECK(q.ring->size == 4);
  CHECK(q.proj[4] == 0);
  CHECK(q.proj[5] == 1);
  CHECK(q.proj[11] == 3);
  CHECK(q.ring->addv(3, 2) == 1);
  CHECK(q.ring->mulv(2, 2) == 0);
  CHECK(q.ring->names[2] == "[2]");
  CHECK_THROWS_AS(ring_quotient(r, ideal_generated(r, {1})), error);
  // Quotient by a non-ideal subset is rejected.
  IdealSet bogus{r, set_of(12, {0, 1})};
  CHECK_THROWS_AS(ring_quotient(r, bogus), error);
}

TEST_CASE("idealization of F_2 with two generators") {
  auto f2 = ring_zmod(2);
  auto r = ring_idealization(f2, 2);
  CHECK(r->size == 8);
  CHECK(r->label == "F_2[x,y]/(x,y)^2");
  // Index a + 2*(u + 2*v): x = (0,(1,0)) -> 2, y = (0,(0,1)) -> 4, x+y -> 6.
  CHECK(r->names[2] == "x");
  CHECK(r->names[4] == "y");
  CHECK(r->names[6] == "x+y");
  CHECK(r->mulv(2, 4) == 0);   // xy = 0
  CHECK(r->mulv(2, 2) == 0);   // x^2 = 0
  CHECK(r->mulv(3, 5) == 7);   // (1+x)(1+y) = 1+x+y
  auto ideals = enumerate_ideals(r);
  REQUIRE(ideals.size() == 6);
  CHECK(sorted_members(ideals[1].members) == std::vector<int>{0, 2});  // (x)
  CHECK(sorted_members(ideals[2].members) == std::vector<int>{0, 4});  // (y)
  CHECK(sorted_members(ideals[3].members) == std::vector<int>{0, 6});  // (x+y)
  CHECK(sorted_members(ideals[4].members) == std::vector<int>{0, 2, 4, 6});
  auto loc = is_local(r);
  CHECK(loc.first);
  CHECK(sorted_members(loc.second.members) == std::vector<int>{0, 2, 4, 6});
  CHECK(is_prime_ideal(ideals[4]));
  CHECK_FALSE(is_prime_ideal(ideals[3]));  // xy = 0 lands in (x+y)
}

TEST_CASE("submodule enumeration matches brute-force subset filter") {
  auto z2 = ring_zmod(2);
  auto m1 = mod_direct_sum(mod_regular(z2), mod_regular(z2));
  auto z12 = ring_zmod(12);
  auto m2 = mod_regular(z12);
  auto z6 = ring_zmod(6);
  auto m3 = mod_direct_sum(mod_regular(z6), mod_cyclic(z6, ideal_generated(z6, {2})));
  for (const ModulePtr& m : {m1, m2, m3}) {
    auto lat = enumerate_submodules(m);
    auto brute = brute_submodules(m);
    REQUIRE(lat.subs.size() == brute.size());
    for (size_t i = 0; i < brute.size(); ++i) CHECK(lat.subs[i] == brute[i]);
  }
}

TEST_CASE("lattice structure of (Z/2)^2") {
  auto z2 = ring_zmod(2);
  auto m = mod_direct_sum(mod_regular(z2), mod_regular(z2));
  auto lat = enumerate_submodules(m);
  REQUIRE(lat.count() == 5);
  CHECK(lat.subs[0].count() == 1);
  CHECK(lat.subs[4].count() == 4);
  CHECK(lat.cover_edges.size() == 6);
  // Meet of two distinct lines is {0}; join is everything.
  CHECK(lat.meet(1, 2) == 0);
  CHECK(lat.join(1, 2) == 4);
  CHECK(lat.leq_at(0, 3));
  CHECK_FALSE(lat.leq_at(1, 2));
  // Every proper submodule here is cyclic; M itself is not.
  CHECK(lat.cyclic_ids == std::vector<int>{0, 1, 2, 3});
  CHECK(lat.cyc_of_elem[0] == 0);
  CHECK(lat.cyclic[4] == 0);
  auto above = lat.strictly_above(1);
  CHECK(above == std::vector<int>{4});
  CHECK(lat.upper_covers(0) == std::vector<int>{1, 2, 3});
}

TEST_CASE("(Z/2)^3 has sixteen submodules") {
  auto z2 = ring_zmod(2);
  auto m = mod_direct_sum(mod_direct_sum(mod_regular(z2), mod_regular(z2)), mod_regular(z2));
  CHECK(enumerate_submodules(m).count() == 16);
  try {
    enumerate_submodules(m, 10);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.kind() == errc::cap);
  }
}

TEST_CASE("submodule generation and arithmetic") {
  auto z12 = ring_zmod(12);
  auto m = mod_regular(z12);
  auto n6 = submodule_generated(m, {6});
  auto n4 = submodule_generated(m, {4});
  CHECK(sorted_members(n6.members) == std::vector<int>{0, 6});
  CHECK(sorted_members(sub_sum(n6, n4).members) == std::vector<int>{0, 2, 4, 6, 8, 10});
  CHECK(sorted_members(sub_intersect(n6, n4).members) == std::vector<int>{0});
  auto n2 = submodule_generated(m, {2});
  CHECK(sorted_members(colon_ideal(n6, n2).members) == std::vector<int>{0, 3, 6, 9});
  auto zero = submodule_generated(m, {});
  auto i2 = ideal_generated(z12, {2});
  CHECK(sorted_members(colon_into_module(zero, i2).members) == std::vector<int>{0, 6});
  CHECK(sorted_members(ideal_times_submodule(i2, n6).members) == std::vector<int>{0});
  auto i3 = ideal_generated(z12, {3});
  CHECK(sorted_members(ideal_times_submodule(i3, n2).members) == std::vector<int>{0, 6});
}

TEST_CASE("cyclic modules carry the quotient action") {
  auto z12 = ring_zmod(12);
  auto m = mod_cyclic(z12, ideal_generated(z12, {4}));  // Z/4 as a Z/12-module
  CHECK(m->size == 4);
  CHECK(sorted_members(annihilator(m).members) == std::vector<int>{0, 4, 8});
  CHECK(m->actv(7, 2) == 2);  // 7*2 = 14 = 2 mod 4
  CHECK_THROWS_AS(mod_cyclic(z12, ideal_generated(z12, {1})), error);
}

TEST_CASE("associated primes of Z/12") {
  auto z12 = ring_zmod(12);
  auto m = mod_regular(z12);
  auto ass = ass_module(m);
  REQUIRE(ass.size() == 2);
  CHECK(sorted_members(ass[0].members) == std::vector<int>{0, 3, 6, 9});
  CHECK(sorted_members(ass[1].members) == std::vector<int>{0, 2, 4, 6, 8, 10});
  auto mass = mass_module(m);
  CHECK(mass.size() == 2);
}

TEST_CASE("saturation of zero in Z/12 away from (2)") {
  auto z12 = ring_zmod(12);
  auto m = mod_regular(z12);
  auto zero = submodule_generated(m, {});
  auto p2 = ideal_generated(z12, {2});
  auto sat = saturate(zero, {p2});
  CHECK(sorted_members(sat.members) == std::vector<int>{0, 4, 8});
  // With no excluded primes S contains 0, so everything saturates to M.
  auto sat_all = saturate(zero, {});
  CHECK(sat_all.members.count() == 12);
  // Excluding all primes of a local ring empties S.
  auto z8 = ring_zmod(8);
  auto m8 = mod_regular(z8);
  auto zero8 = submodule_generated(m8, {});
  auto p28 = ideal_generated(z8, {2});
  auto nonprime = ideal_generated(z8, {4});
  CHECK_THROWS_AS(saturate(zero8, {IdealSet{z8, set_of(8, {0, 1, 2, 3, 4, 5, 6, 7})}}), error);
  CHECK_THROWS_AS(saturate(zero8, {nonprime}), error);
  CHECK(sorted_members(saturate(zero8, {p28}).members) == std::vector<int>{0});
}

TEST_CASE("gamma torsion in Z/12") {
  auto z12 = ring_zmod(12);
  auto m = mod_regular(z12);
  auto g2 = gamma_torsion(m, ideal_generated(z12, {2}));
  CHECK(sorted_members(g2.members) == std::vector<int>{0, 3, 6, 9});
  auto g3 = gamma_torsion(m, ideal_generated(z12, {3}));
  CHECK(sorted_members(g3.members) == std::vector<int>{0, 4, 8});
}

TEST_CASE("localization of Z/12") {
  auto z12 = ring_zmod(12);
  auto m = mod_regular(z12);
  auto at2 = localize(m, ideal_generated(z12, {2}));
  CHECK(at2.ring->size == 4);
  CHECK(at2.module->size == 4);
  auto at3 = localize(m, ideal_generated(z12, {3}));
  CHECK(at3.ring->size == 3);
  CHECK(at3.module->size == 3);
  CHECK_THROWS_AS(localize(m, ideal_generated(z12, {4})), error);
  // Pushing the submodule (6) into M_(2): 6 maps to the residue of 6 mod 4.
  auto n6 = submodule_generated(m, {6});
  auto img = push_members(n6.members, at2.mod_proj, at2.module->size);
  CHECK(img.count() == 2);
}

TEST_CASE("quotient module of Z/12 by (4)") {
  auto z12 = ring_zmod(12);
  auto m = mod_regular(z12);
  auto q = mod_quotient(m, submodule_generated(m, {4}));
  CHECK(q.module->size == 4);
  CHECK(q.proj[8] == 0);
  CHECK(q.proj[7] == 3);
  auto ass = ass_module(q.module);  // Z/4 over Z/12 is 2-torsion: Ass = {(2)}
  REQUIRE(ass.size() == 1);
  CHECK(sorted_members(ass[0].members) == std::vector<int>{0, 2, 4, 6, 8, 10});
}

TEST_CASE("symbolic power of the maximal ideal in Z/8") {
  auto z8 = ring_zmod(8);
  auto m = mod_regular(z8);
  auto m2 = ideal_generated(z8, {2});
  auto sp2 = symbolic_power(m, m2, 2);
  CHECK(sorted_members(sp2.members) == std::vector<int>{0, 4});
  auto sp1 = symbolic_power(m, m2, 1);
  CHECK(sorted_members(sp1.members) == std::vector<int>{0, 2, 4, 6});
  // aM = M is rejected.
  CHECK_THROWS_AS(symbolic_power(m, ideal_generated(z8, {1}), 2), error);
  try {
    symbolic_power(m, ideal_generated(z8, {1}), 2);
  } catch (const error& e) {
    CHECK(e.kind() == errc::precondition);
  }
}

TEST_CASE("submodule_as_module renumbers faithfully") {
  auto z12 = ring_zmod(12);
  auto m = mod_regular(z12);
  std::vector<int> elems;
  auto sub = submodule_generated(m, {4});
  auto sm = submodule_as_module(sub, &elems);
  CHECK(sm->size == 3);
  CHECK(elems == std::vector<int>{0, 4, 8});
  CHECK(sm->addv(1, 1) == 2);             // 4+4 = 8
  CHECK(sm->actv(2, 1) == 2);             // 2*4 = 8
  CHECK(sorted_members(annihilator(sm).members) == std::vector<int>{0, 3, 6, 9});
}

TEST_CASE("cross-module operations are rejected") {
  auto z12 = ring_zmod(12);
  auto z8 = ring_zmod(8);
  auto m1 = mod_regular(z12);
  auto m2 = mod_regular(z8);
  auto a = submodule_generated(m1, {4});
  auto b = submodule_generated(m2, {4});
  CHECK_THROWS_AS(sub_sum(a, b), error);
  CHECK_THROWS_AS(sub_intersect(a, b), error);
  CHECK_THROWS_AS(colon_ideal(a, b), error);
  CHECK_THROWS_AS(ideal_sum(ideal_generated(z12, {2}), ideal_generated(z8, {2})), error);
}
