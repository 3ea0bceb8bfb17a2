#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "smlab/predicates.hpp"

using namespace smlab;

namespace {

struct Fixture {
  RingPtr ring;
  ModulePtr mod;
  SubmoduleLattice lat;
  Fixture(RingPtr r, ModulePtr m) : ring(std::move(r)), mod(std::move(m)), lat(enumerate_submodules(mod)) {}
};

Fixture zmod_regular(int n) {
  auto r = ring_zmod(n);
  return Fixture(r, mod_regular(r));
}

Fixture klein_square() {
  auto r = ring_zmod(2);
  return Fixture(r, mod_direct_sum(mod_regular(r), mod_regular(r)));
}

Fixture idealization_plane() {
  auto f2 = ring_zmod(2);
  auto r = ring_idealization(f2, 2);
  return Fixture(r, mod_regular(r));
}

std::vector<int> ints(const ordered_json& arr) { return arr.get<std::vector<int>>(); }

} // namespace

TEST_CASE("irreducibility in Z/12") {
  auto f = zmod_regular(12);
  // Canonical ids: 0={0}, 1=(6), 2=(4), 3=(3), 4=(2), 5=R.
  auto red = is_irreducible(f.lat, 1);
  CHECK_FALSE(red.value);
  CHECK(ints(red.detail["witness"]["k"]) == std::vector<int>{0, 3, 6, 9});
  CHECK(ints(red.detail["witness"]["l"]) == std::vector<int>{0, 2, 4, 6, 8, 10});
  auto irr = is_irreducible(f.lat, 2);
  CHECK(irr.value);
  CHECK(ints(irr.detail["unique_cover"]) == std::vector<int>{0, 2, 4, 6, 8, 10});
  // The zero ideal of Z/12 is reducible: (4) meet (3) = 0.
  CHECK_FALSE(is_irreducible(f.lat, 0).value);
  CHECK_THROWS_AS(is_irreducible(f.lat, 5), error);  // N = M rejected
}

TEST_CASE("strong irreducibility scans agree on Z/12") {
  auto f = zmod_regular(12);
  auto si6 = is_strongly_irreducible_exhaustive(f.lat, 1);
  CHECK_FALSE(si6.value);
  CHECK(ints(si6.detail["witness"]["k"]) == std::vector<int>{0, 4, 8});
  CHECK(ints(si6.detail["witness"]["l"]) == std::vector<int>{0, 3, 6, 9});
  CHECK(is_strongly_irreducible_exhaustive(f.lat, 2).value);
  CHECK(is_strongly_irreducible_exhaustive(f.lat, 3).value);
  CHECK(is_strongly_irreducible_exhaustive(f.lat, 4).value);
  for (int id = 0; id < 5; ++id) {
    auto ex = is_strongly_irreducible_exhaustive(f.lat, id);
    auto cy = is_strongly_irreducible_cyclic(f.lat.at(id));
    CHECK(ex.value == cy.value);
  }
}

TEST_CASE("zero is not strongly irreducible in the Klein square") {
  auto f = klein_square();
  REQUIRE(f.lat.count() == 5);
  auto si = is_strongly_irreducible_exhaustive(f.lat, 0);
  CHECK_FALSE(si.value);
  CHECK(ints(si.detail["witness"]["k"]) == std::vector<int>{0, 1});
  CHECK(ints(si.detail["witness"]["l"]) == std::vector<int>{0, 2});
  auto cy = is_strongly_irreducible_cyclic(f.lat.at(0));
  CHECK_FALSE(cy.value);
  CHECK(ints(cy.detail["witness"]["k"]) == std::vector<int>{0, 1});
  // A line is irreducible (unique cover M) yet not strongly irreducible:
  // the other two lines meet in {0}.
  CHECK(is_irreducible(f.lat, 1).value);
  CHECK_FALSE(is_strongly_irreducible_exhaustive(f.lat, 1).value);
  CHECK_FALSE(is_strongly_irreducible_cyclic(f.lat.at(1)).value);
}

TEST_CASE("irreducible but not strongly irreducible over F_2[x,y]/(x,y)^2") {
  auto f = idealization_plane();
  REQUIRE(f.lat.count() == 6);
  // ids: 0={0}, 1=(x), 2=(y), 3=(x+y), 4=m, 5=R.
  auto irr = is_irreducible(f.lat, 1);
  CHECK(irr.value);
  CHECK(ints(irr.detail["unique_cover"]) == std::vector<int>{0, 2, 4, 6});
  auto si = is_strongly_irreducible_exhaustive(f.lat, 1);
  CHECK_FALSE(si.value);
  CHECK(ints(si.detail["witness"]["k"]) == std::vector<int>{0, 4});
  CHECK(ints(si.detail["witness"]["l"]) == std::vector<int>{0, 6});
  CHECK(is_strongly_irreducible_cyclic(f.lat.at(1)).value ==
        is_strongly_irreducible_exhaustive(f.lat, 1).value);
  // The maximal ideal is strongly irreducible (it is the unique maximal).
  CHECK(is_strongly_irreducible_exhaustive(f.lat, 4).value);
}

TEST_CASE("prime and primary submodules of Z/12") {
  auto f = zmod_regular(12);
  auto n3 = f.lat.at(3);
  auto n2 = f.lat.at(4);
  auto n4 = f.lat.at(2);
  auto n6 = f.lat.at(1);
  CHECK(is_prime_submodule(n3).value);
  CHECK(is_prime_submodule(n2).value);
  CHECK_FALSE(is_prime_submodule(n4).value);
  CHECK_FALSE(is_prime_submodule(n6).value);

  auto p4 = is_primary_submodule(n4);
  CHECK(p4.value);
  CHECK(ints(p4.detail["radical"]) == std::vector<int>{0, 2, 4, 6, 8, 10});
  auto p6 = is_primary_submodule(n6);
  CHECK_FALSE(p6.value);
  CHECK(p6.detail["witness"]["r"] == 2);
  CHECK(p6.detail["witness"]["x"] == 3);
  CHECK(is_primary_submodule(n3).value);  // prime implies primary
}

TEST_CASE("primal submodules and adjoints in Z/12") {
  auto f = zmod_regular(12);
  auto pr = is_primal(f.lat.at(2));  // (4)
  CHECK(pr.value);
  CHECK(ints(pr.detail["adjoint"]) == std::vector<int>{0, 2, 4, 6, 8, 10});
  auto npr = is_primal(f.lat.at(1));  // (6): 2 and 3 are zero divisors, 5 is not
  CHECK_FALSE(npr.value);
  CHECK(npr.detail["witness"]["r"] == 2);
  CHECK(npr.detail["witness"]["s"] == 3);
  // Zero submodule of the Klein square is primal with adjoint {0}.
  auto k = klein_square();
  auto z = is_primal(k.lat.at(0));
  CHECK(z.value);
  CHECK(ints(z.detail["adjoint"]) == std::vector<int>{0});
}

TEST_CASE("shelters in Z/12 and Z/8") {
  auto f = zmod_regular(12);
  auto sh4 = is_sheltered(f.lat, 2);
  CHECK(sh4.value);
  CHECK(ints(sh4.detail["shelter"]) == std::vector<int>{0, 2, 4, 6, 8, 10});
  CHECK_FALSE(is_sheltered(f.lat, 1).value);
  CHECK_FALSE(is_sheltered(f.lat, 0).value);

  auto z8 = zmod_regular(8);
  // Z/8 is uniserial: ids 0={0}, 1=(4), 2=(2), 3=R; every proper is sheltered.
  auto sh = is_sheltered(z8.lat, 1);
  CHECK(sh.value);
  CHECK(ints(sh.detail["shelter"]) == std::vector<int>{0, 2, 4, 6});
}

TEST_CASE("distributivity of submodules and modules") {
  auto f = zmod_regular(12);
  for (int id = 0; id < 5; ++id) CHECK(is_distributive_submodule(f.lat, id).value);
  CHECK(is_distributive_module(f.lat).value);

  auto k = klein_square();
  auto d = is_distributive_submodule(k.lat, 1);
  CHECK_FALSE(d.value);
  CHECK(ints(d.detail["witness"]["k"]) == std::vector<int>{0, 2});
  CHECK(ints(d.detail["witness"]["l"]) == std::vector<int>{0, 3});
  auto dm = is_distributive_module(k.lat);
  CHECK_FALSE(dm.value);
  CHECK(ints(dm.detail["witness"]["k"]) == std::vector<int>{0, 1});
  CHECK(ints(dm.detail["witness"]["l"]) == std::vector<int>{0, 2});
  CHECK(ints(dm.detail["witness"]["n"]) == std::vector<int>{0, 3});
}

TEST_CASE("uniserial and arithmetical checks") {
  auto z8 = zmod_regular(8);
  CHECK(is_uniserial(z8.lat).value);
  auto z12 = zmod_regular(12);
  auto u = is_uniserial(z12.lat);
  CHECK_FALSE(u.value);
  CHECK(ints(u.detail["witness"]["k"]) == std::vector<int>{0, 6});
  CHECK(ints(u.detail["witness"]["l"]) == std::vector<int>{0, 4, 8});
  // Z/12 localizes to Z/4 and Z/3, both uniserial.
  CHECK(is_arithmetical(z12.mod).value);
  auto k = klein_square();
  auto a = is_arithmetical(k.mod);
  CHECK_FALSE(a.value);
  CHECK(a.detail["maximals"].size() == 1);
  CHECK(a.detail["maximals"][0]["uniserial"] == false);
  auto ideal = idealization_plane();
  CHECK_FALSE(is_arithmetical(ideal.mod).value);
  CHECK(is_arithmetical(mod_regular(ring_zmod(30))).value);
}

TEST_CASE("multiplication modules") {
  auto z12 = zmod_regular(12);
  CHECK(is_multiplication_module(z12.lat).value);
  auto k = klein_square();
  auto mm = is_multiplication_module(k.lat);
  CHECK_FALSE(mm.value);
  CHECK(ints(mm.detail["witness"]["k"]) == std::vector<int>{0, 1});
  CHECK(ints(mm.detail["witness"]["colon_times_m"]) == std::vector<int>{0});
  // A cyclic module over any ring is a multiplication module.
  auto z12r = ring_zmod(12);
  auto cyc = mod_cyclic(z12r, ideal_generated(z12r, {4}));
  CHECK(is_multiplication_module(enumerate_submodules(cyc)).value);
}

TEST_CASE("radical submodule intersects primes above") {
  auto f = zmod_regular(12);
  auto r4 = radical_submodule(f.lat, 2);
  CHECK(r4.members.members() == std::vector<int>{0, 2, 4, 6, 8, 10});
  auto r6 = radical_submodule(f.lat, 1);
  CHECK(r6.members.members() == std::vector<int>{0, 6});
  auto r0 = radical_submodule(f.lat, 0);
  CHECK(r0.members.members() == std::vector<int>{0, 6});
  // No prime submodule above a line in the Klein square except... the lines
  // themselves are prime (quotient is simple), so the radical is the line.
  auto k = klein_square();
  CHECK(radical_submodule(k.lat, 1).members.members() == std::vector<int>{0, 1});
}

TEST_CASE("colon identities hold exactly on arithmetical instances") {
  auto z12 = zmod_regular(12);
  auto ok = colon_identities(z12.lat);
  CHECK(ok.value);
  CHECK(ok.detail["sum_form"] == true);
  CHECK(ok.detail["meet_form"] == true);

  auto ideal = idealization_plane();
  auto bad = colon_identities(ideal.lat);
  CHECK_FALSE(bad.value);
  CHECK(bad.detail["sum_form"] == false);
  CHECK(bad.detail["meet_form"] == false);
  CHECK(bad.detail.contains("sum_witness"));
  CHECK(bad.detail.contains("meet_witness"));

  auto k = klein_square();
  auto kc = colon_identities(k.lat);
  CHECK_FALSE(kc.value);
}

TEST_CASE("colon identity failure on the named triple") {
  // K=(x), L=(y), N=(x+y) over F_2[x,y]/(x,y)^2: (K+L):N = R but
  // (K:N)+(L:N) = m, and K:(L cap N) = R but (K:L)+(K:N) = m.
  auto f = idealization_plane();
  auto m = f.mod;
  auto kx = submodule_generated(m, {2});
  auto ly = submodule_generated(m, {4});
  auto nxy = submodule_generated(m, {6});
  auto lhs_sum = colon_ideal(sub_sum(kx, ly), nxy);
  auto rhs_sum = ideal_sum(colon_ideal(kx, nxy), colon_ideal(ly, nxy));
  CHECK(lhs_sum.members.count() == 8);
  CHECK(rhs_sum.members.members() == std::vector<int>{0, 2, 4, 6});
  auto lhs_meet = colon_ideal(kx, sub_intersect(ly, nxy));
  auto rhs_meet = ideal_sum(colon_ideal(kx, ly), colon_ideal(kx, nxy));
  CHECK(lhs_meet.members.count() == 8);
  CHECK(rhs_meet.members.members() == std::vector<int>{0, 2, 4, 6});
}

TEST_CASE("sheltered requires proper submodule") {
  auto f = zmod_regular(12);
  CHECK_THROWS_AS(is_sheltered(f.lat, 5), error);
  CHECK_THROWS_AS(is_strongly_irreducible_exhaustive(f.lat, 5), error);
  CHECK_THROWS_AS(is_strongly_irreducible_cyclic(f.lat.at(5)), error);
  CHECK_THROWS_AS(is_prime_submodule(f.lat.at(5)), error);
  CHECK_THROWS_AS(is_primary_submodule(f.lat.at(5)), error);
  CHECK_THROWS_AS(is_primal(f.lat.at(5)), error);
  try {
    is_prime_submodule(f.lat.at(5));
  } catch (const error& e) {
    CHECK(e.kind() == errc::precondition);
  }
}
