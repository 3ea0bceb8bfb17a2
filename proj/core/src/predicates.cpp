#include "smlab/predicates.hpp"

#include <algorithm>
#include <atomic>
#include <unordered_map>

#include "smlab/finring.hpp"

namespace smlab {

namespace {

std::atomic<bool> g_cross_check{true};

void require_proper(const SubmoduleLattice& lat, int nid) {
  if (nid < 0 || nid >= lat.count()) fail(errc::internal, "submodule id out of range");
  if (nid == lat.count() - 1) fail(errc::precondition, "predicate requires a proper submodule");
}

void require_proper(const Submodule& n) {
  if (n.members.count() >= n.module->size) fail(errc::precondition, "predicate requires a proper submodule");
}

Submodule whole_submodule(const ModulePtr& m) {
  Bitvec full(m->size);
  for (int x = 0; x < m->size; ++x) full.set(x);
  return Submodule{m, full};
}

ordered_json pair_witness(const Bitvec& k, const Bitvec& l) {
  return ordered_json{{"k", members_json(k)}, {"l", members_json(l)}};
}

} // namespace

void set_cross_check(bool on) { g_cross_check.store(on); }
bool cross_check_enabled() { return g_cross_check.load(); }

ordered_json members_json(const Bitvec& b) {
  ordered_json arr = ordered_json::array();
  for (int e : b.members()) arr.push_back(e);
  return arr;
}

PropertyVerdict is_irreducible(const SubmoduleLattice& lat, int nid) {
  require_proper(lat, nid);
  const int n = lat.count();

  // Definitional: no pair strictly above N meets exactly in N.
  int wa = -1, wb = -1;
  for (int i = 0; i < n && wa < 0; ++i) {
    if (i == nid || !lat.leq_at(nid, i)) continue;
    for (int j = i + 1; j < n; ++j) {
      if (j == nid || !lat.leq_at(nid, j)) continue;
      if (lat.meet(i, j) == nid) {
        wa = i;
        wb = j;
        break;
      }
    }
  }
  bool by_pairs = (wa < 0);

  // Fast: exactly one upper cover.
  auto covers = lat.upper_covers(nid);
  bool by_covers = (covers.size() == 1);

  if (by_pairs != by_covers)
    fail(errc::internal, "irreducibility criteria disagree in " + lat.module->label);

  PropertyVerdict v;
  v.value = by_pairs;
  if (v.value) v.detail = ordered_json{{"unique_cover", members_json(lat.subs[covers[0]])}};
  else v.detail = ordered_json{{"witness", pair_witness(lat.subs[wa], lat.subs[wb])}};
  return v;
}

PropertyVerdict is_strongly_irreducible_exhaustive(const SubmoduleLattice& lat, int nid) {
  require_proper(lat, nid);
  const int n = lat.count();
  for (int i = 0; i < n; ++i) {
    if (lat.leq_at(i, nid)) continue;
    for (int j = i; j < n; ++j) {
      if (lat.leq_at(j, nid)) continue;
      if (lat.leq_at(lat.meet(i, j), nid)) {
        PropertyVerdict v;
        v.value = false;
        v.detail = ordered_json{{"witness", pair_witness(lat.subs[i], lat.subs[j])}};
        return v;
      }
    }
  }
  return PropertyVerdict{true, ordered_json()};
}

PropertyVerdict is_strongly_irreducible_cyclic(const Submodule& n) {
  require_proper(n);
  auto cycs = cyclic_submodules(n.module);
  const int c = static_cast<int>(cycs.size());
  for (int i = 0; i < c; ++i) {
    if (cycs[i].subset_of(n.members)) continue;
    for (int j = i; j < c; ++j) {
      if (cycs[j].subset_of(n.members)) continue;
      if ((cycs[i] & cycs[j]).subset_of(n.members)) {
        PropertyVerdict v;
        v.value = false;
        v.detail = ordered_json{{"witness", pair_witness(cycs[i], cycs[j])}};
        return v;
      }
    }
  }
  return PropertyVerdict{true, ordered_json()};
}

PropertyVerdict is_prime_submodule(const Submodule& n) {
  require_proper(n);
  const ModuleTable& m = *n.module;
  IdealSet colon = colon_ideal(n, whole_submodule(n.module));
  PropertyVerdict v;
  v.value = true;
  v.detail = ordered_json{{"colon", members_json(colon.members)}};
  for (int r = 0; r < m.ring->size && v.value; ++r) {
    if (colon.members.test(r)) continue;
    for (int x = 0; x < m.size; ++x) {
      if (n.members.test(x)) continue;
      if (n.members.test(m.actv(r, x))) {
        v.value = false;
        v.detail["witness"] = ordered_json{{"r", r}, {"x", x}};
        break;
      }
    }
  }
  if (v.value && cross_check_enabled() && !is_prime_ideal(colon))
    fail(errc::internal, "colon of a prime submodule failed to be a prime ideal");
  return v;
}

PropertyVerdict is_primary_submodule(const Submodule& n) {
  require_proper(n);
  const ModuleTable& m = *n.module;
  IdealSet colon = colon_ideal(n, whole_submodule(n.module));
  IdealSet rad = radical_ideal(m.ring, colon);
  PropertyVerdict v;
  v.value = true;
  v.detail = ordered_json{{"radical", members_json(rad.members)}};
  for (int r = 0; r < m.ring->size && v.value; ++r) {
    if (rad.members.test(r)) continue;
    for (int x = 0; x < m.size; ++x) {
      if (n.members.test(x)) continue;
      if (n.members.test(m.actv(r, x))) {
        v.value = false;
        v.detail["witness"] = ordered_json{{"r", r}, {"x", x}};
        break;
      }
    }
  }
  if (v.value && !is_prime_ideal(rad))
    fail(errc::internal, "radical of a primary submodule failed to be prime");
  return v;
}

PropertyVerdict is_primal(const Submodule& n) {
  require_proper(n);
  const ModuleTable& m = *n.module;
  const RingTable& ring = *m.ring;
  // Zero divisors on M/N: r with r·x in N for some x outside N.
  Bitvec z(ring.size);
  for (int r = 0; r < ring.size; ++r) {
    for (int x = 0; x < m.size; ++x) {
      if (n.members.test(x)) continue;
      if (n.members.test(m.actv(r, x))) {
        z.set(r);
        break;
      }
    }
  }
  PropertyVerdict v;
  v.value = true;
  auto zs = z.members();
  for (size_t a = 0; a < zs.size() && v.value; ++a)
    for (size_t b = a; b < zs.size(); ++b) {
      if (!z.test(ring.addv(zs[a], zs[b]))) {
        v.value = false;
        v.detail = ordered_json{{"witness", ordered_json{{"r", zs[a]}, {"s", zs[b]}}}};
        break;
      }
    }
  if (v.value) {
    IdealSet adjoint{m.ring, z};
    if (!is_prime_ideal(adjoint))
      fail(errc::internal, "adjoint of a primal submodule failed to be prime");
    v.detail = ordered_json{{"adjoint", members_json(z)}};
  }
  return v;
}

PropertyVerdict is_sheltered(const SubmoduleLattice& lat, int nid) {
  require_proper(lat, nid);
  const int top = lat.count() - 1;
  int acc = top;
  for (int i = 0; i < lat.count(); ++i)
    if (i != nid && lat.leq_at(nid, i)) acc = lat.meet(acc, i);
  if (cross_check_enabled()) {
    int fast = top;
    for (int c : lat.upper_covers(nid)) fast = lat.meet(fast, c);
    if (fast != acc) fail(errc::internal, "shelter criteria disagree in " + lat.module->label);
  }
  PropertyVerdict v;
  v.value = (acc != nid);
  if (v.value) v.detail = ordered_json{{"shelter", members_json(lat.subs[acc])}};
  return v;
}

PropertyVerdict is_distributive_submodule(const SubmoduleLattice& lat, int nid) {
  require_proper(lat, nid);
  const int n = lat.count();
  int ja = -1, jb = -1;  // join-form witness
  int ma = -1, mb = -1;  // meet-form witness
  for (int i = 0; i < n && (ja < 0 || ma < 0); ++i)
    for (int j = i; j < n; ++j) {
      if (ja < 0 && lat.join(lat.meet(i, j), nid) != lat.meet(lat.join(i, nid), lat.join(j, nid))) {
        ja = i;
        jb = j;
      }
      if (ma < 0 && lat.meet(lat.join(i, j), nid) != lat.join(lat.meet(i, nid), lat.meet(j, nid))) {
        ma = i;
        mb = j;
      }
      if (ja >= 0 && ma >= 0) break;
    }
  // In a modular lattice the two distributivity forms agree element-wise.
  if ((ja < 0) != (ma < 0))
    fail(errc::internal, "distributivity forms disagree in " + lat.module->label);
  PropertyVerdict v;
  v.value = (ja < 0);
  if (!v.value) v.detail = ordered_json{{"witness", pair_witness(lat.subs[ja], lat.subs[jb])}};
  return v;
}

PropertyVerdict is_distributive_module(const SubmoduleLattice& lat) {
  const int n = lat.count();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k)
        if (lat.meet(i, lat.join(j, k)) != lat.join(lat.meet(i, j), lat.meet(i, k))) {
          PropertyVerdict v;
          v.value = false;
          v.detail = ordered_json{{"witness", ordered_json{{"k", members_json(lat.subs[i])},
                                                           {"l", members_json(lat.subs[j])},
                                                           {"n", members_json(lat.subs[k])}}}};
          return v;
        }
  return PropertyVerdict{true, ordered_json()};
}

PropertyVerdict is_uniserial(const SubmoduleLattice& lat) {
  const int n = lat.count();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!lat.leq_at(i, j) && !lat.leq_at(j, i)) {
        PropertyVerdict v;
        v.value = false;
        v.detail = ordered_json{{"witness", pair_witness(lat.subs[i], lat.subs[j])}};
        return v;
      }
  return PropertyVerdict{true, ordered_json()};
}

PropertyVerdict is_arithmetical(const ModulePtr& m, int lattice_cap) {
  auto maximals = maximal_ideals(m->ring);
  PropertyVerdict v;
  v.value = true;
  ordered_json per = ordered_json::array();
  for (const auto& w : maximals) {
    Localization loc = localize(m, w.ideal);
    auto lat_p = enumerate_submodules(loc.module, lattice_cap);
    PropertyVerdict u = is_uniserial(lat_p);
    per.push_back(ordered_json{{"ideal", members_json(w.ideal.members)}, {"uniserial", u.value}});
    if (!u.value && v.value) {
      v.value = false;
      v.detail["witness"] =
          ordered_json{{"maximal", members_json(w.ideal.members)},
                       {"k", u.detail["witness"]["k"]},
                       {"l", u.detail["witness"]["l"]}};
    }
  }
  v.detail["maximals"] = per;
  return v;
}

PropertyVerdict is_multiplication_module(const SubmoduleLattice& lat) {
  Submodule whole = whole_submodule(lat.module);
  for (int i = 0; i < lat.count(); ++i) {
    Submodule k = lat.at(i);
    Submodule prod = ideal_times_submodule(colon_ideal(k, whole), whole);
    if (prod.members != k.members) {
      PropertyVerdict v;
      v.value = false;
      v.detail = ordered_json{{"witness", ordered_json{{"k", members_json(k.members)},
                                                       {"colon_times_m", members_json(prod.members)}}}};
      return v;
    }
  }
  return PropertyVerdict{true, ordered_json()};
}

Submodule radical_submodule(const SubmoduleLattice& lat, int nid) {
  const int top = lat.count() - 1;
  Bitvec acc = lat.subs[top];
  for (int i = 0; i < top; ++i) {
    if (!lat.leq_at(nid, i)) continue;
    if (is_prime_submodule(lat.at(i)).value) acc = acc & lat.subs[i];
  }
  return Submodule{lat.module, acc};
}

PropertyVerdict colon_identities(const SubmoduleLattice& lat) {
  const ModulePtr& m = lat.module;
  const RingTable& ring = *m->ring;
  const int n = lat.count();

  // Ideal universe of the ring, for id-based memoization.
  auto ideals = enumerate_ideals(m->ring);
  std::unordered_map<Bitvec, int, BitvecHash> ideal_id;
  for (size_t i = 0; i < ideals.size(); ++i) ideal_id.emplace(ideals[i].members, static_cast<int>(i));
  const int ni = static_cast<int>(ideals.size());
  auto id_of_ideal = [&](const Bitvec& b) {
    auto it = ideal_id.find(b);
    if (it == ideal_id.end()) fail(errc::internal, "colon result is not an ideal");
    return it->second;
  };

  // colon_tab[i*n+j] = ideal id of (subs[i] : subs[j]).
  std::vector<std::vector<int>> sub_members(n);
  for (int i = 0; i < n; ++i) sub_members[i] = lat.subs[i].members();
  std::vector<int> colon_tab(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Bitvec c(ring.size);
      for (int r = 0; r < ring.size; ++r) {
        bool ok = true;
        for (int x : sub_members[j])
          if (!lat.subs[i].test(m->actv(r, x))) {
            ok = false;
            break;
          }
        if (ok) c.set(r);
      }
      colon_tab[static_cast<size_t>(i) * n + j] = id_of_ideal(c);
    }
  auto colon_at = [&](int i, int j) { return colon_tab[static_cast<size_t>(i) * n + j]; };

  // Lazy ideal-sum table.
  std::vector<int> sum_tab(static_cast<size_t>(ni) * ni, -1);
  auto isum = [&](int a, int b) {
    int& slot = sum_tab[static_cast<size_t>(a) * ni + b];
    if (slot < 0) {
      slot = id_of_ideal(ideal_sum(ideals[a], ideals[b]).members);
      sum_tab[static_cast<size_t>(b) * ni + a] = slot;
    }
    return slot;
  };

  bool sum_ok = true, meet_ok = true;
  ordered_json sum_wit, meet_wit;
  for (int i = 0; i < n && (sum_ok || meet_ok); ++i)
    for (int j = 0; j < n && (sum_ok || meet_ok); ++j)
      for (int k = 0; k < n; ++k) {
        if (sum_ok && colon_at(lat.join(i, j), k) != isum(colon_at(i, k), colon_at(j, k))) {
          sum_ok = false;
          sum_wit = ordered_json{{"k", members_json(lat.subs[i])},
                                 {"l", members_json(lat.subs[j])},
                                 {"n", members_json(lat.subs[k])}};
        }
        if (meet_ok && colon_at(i, lat.meet(j, k)) != isum(colon_at(i, j), colon_at(i, k))) {
          meet_ok = false;
          meet_wit = ordered_json{{"k", members_json(lat.subs[i])},
                                  {"l", members_json(lat.subs[j])},
                                  {"n", members_json(lat.subs[k])}};
        }
        if (!sum_ok && !meet_ok) break;
      }

  PropertyVerdict v;
  v.value = sum_ok && meet_ok;
  v.detail = ordered_json{{"sum_form", sum_ok}, {"meet_form", meet_ok}};
  if (!sum_ok) v.detail["sum_witness"] = sum_wit;
  if (!meet_ok) v.detail["meet_witness"] = meet_wit;
  return v;
}

} // namespace smlab
