#include "smlab/finmod.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <unordered_set>

namespace smlab {

namespace {

uint64_t splitmix64(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void check_axiom(bool ok, const char* what, const std::string& label) {
  if (!ok) fail(errc::internal, std::string("module axiom violated (") + what + ") in " + label);
}

void require_same_module(const Submodule& a, const Submodule& b) {
  if (a.module.get() != b.module.get()) fail(errc::precondition, "submodules belong to different modules");
}

// Pointwise sumset. For submodules A, B this is A + B.
Bitvec sumset(const ModuleTable& m, const Bitvec& a, const Bitvec& b) {
  Bitvec out(m.size);
  for (int x : a.members())
    for (int y : b.members()) out.set(m.addv(x, y));
  return out;
}

// Rg = {r·g : r in R}, closed under addition and the action.
Bitvec cyclic_of(const ModuleTable& m, int g) {
  Bitvec out(m.size);
  for (int r = 0; r < m.ring->size; ++r) out.set(m.actv(r, g));
  return out;
}

} // namespace

void validate_module(const ModuleTable& m) {
  const std::string& L = m.label;
  const RingTable& r = *m.ring;
  check_axiom(m.size >= 1, "size >= 1", L);
  check_axiom(static_cast<int>(m.names.size()) == m.size, "names sized", L);
  check_axiom(static_cast<int>(m.neg.size()) == m.size, "neg sized", L);
  check_axiom(m.add.size() == static_cast<size_t>(m.size) * m.size, "add table sized", L);
  check_axiom(m.act.size() == static_cast<size_t>(r.size) * m.size, "act table sized", L);
  for (int v : m.add) check_axiom(0 <= v && v < m.size, "add closure", L);
  for (int v : m.act) check_axiom(0 <= v && v < m.size, "act closure", L);
  for (int x = 0; x < m.size; ++x) {
    check_axiom(m.addv(m.zero, x) == x, "additive identity", L);
    check_axiom(m.addv(x, m.neg[x]) == m.zero, "additive inverse", L);
    check_axiom(m.actv(r.one, x) == x, "unital action", L);
  }
  auto triple_rrx = [&](int s, int t, int x) {
    check_axiom(m.actv(r.addv(s, t), x) == m.addv(m.actv(s, x), m.actv(t, x)), "(r+s)x = rx+sx", L);
    check_axiom(m.actv(r.mulv(s, t), x) == m.actv(s, m.actv(t, x)), "(rs)x = r(sx)", L);
  };
  auto triple_rxy = [&](int s, int x, int y) {
    check_axiom(m.addv(x, y) == m.addv(y, x), "add commutativity", L);
    check_axiom(m.actv(s, m.addv(x, y)) == m.addv(m.actv(s, x), m.actv(s, y)), "r(x+y) = rx+ry", L);
  };
  auto triple_xyz = [&](int x, int y, int z) {
    check_axiom(m.addv(m.addv(x, y), z) == m.addv(x, m.addv(y, z)), "add associativity", L);
  };
  long long work = static_cast<long long>(r.size) * r.size * m.size +
                   static_cast<long long>(r.size) * m.size * m.size +
                   static_cast<long long>(m.size) * m.size * m.size;
  if (work <= 3LL * kValidateExhaustive * kValidateExhaustive * kValidateExhaustive) {
    for (int s = 0; s < r.size; ++s)
      for (int t = 0; t < r.size; ++t)
        for (int x = 0; x < m.size; ++x) triple_rrx(s, t, x);
    for (int s = 0; s < r.size; ++s)
      for (int x = 0; x < m.size; ++x)
        for (int y = 0; y < m.size; ++y) triple_rxy(s, x, y);
    for (int x = 0; x < m.size; ++x)
      for (int y = 0; y < m.size; ++y)
        for (int z = 0; z < m.size; ++z) triple_xyz(x, y, z);
  } else {
    uint64_t st = 0x10ca1ec5ULL ^ (static_cast<uint64_t>(m.size) << 24) ^ r.size;
    for (int k = 0; k < kValidateSamples; ++k) {
      int s = static_cast<int>(splitmix64(st) % r.size);
      int t = static_cast<int>(splitmix64(st) % r.size);
      int x = static_cast<int>(splitmix64(st) % m.size);
      int y = static_cast<int>(splitmix64(st) % m.size);
      int z = static_cast<int>(splitmix64(st) % m.size);
      triple_rrx(s, t, x);
      triple_rxy(s, x, y);
      triple_xyz(x, y, z);
    }
  }
}

ModulePtr mod_regular(const RingPtr& r) {
  auto m = std::make_shared<ModuleTable>();
  m->ring = r;
  m->size = r->size;
  m->add = r->add;
  m->act = r->mul;
  m->zero = r->zero;
  m->label = r->label + " (regular)";
  m->names = r->names;
  m->neg = r->neg;
  validate_module(*m);
  return m;
}

ModulePtr mod_cyclic(const RingPtr& r, const IdealSet& ann) {
  if (ann.ring.get() != r.get()) fail(errc::precondition, "annihilator belongs to a different ring");
  if (ann.members.test(r->one)) fail(errc::precondition, "cyclic module annihilator must be proper");
  QuotientRing qr = ring_quotient(r, ann);
  const int q = qr.ring->size;
  auto m = std::make_shared<ModuleTable>();
  m->ring = r;
  m->size = q;
  m->add = qr.ring->add;
  m->zero = qr.ring->zero;
  m->label = r->label + "/a (cyclic, " + std::to_string(q) + " elts)";
  m->names = qr.ring->names;
  m->neg = qr.ring->neg;
  m->act.resize(static_cast<size_t>(r->size) * q);
  for (int s = 0; s < r->size; ++s)
    for (int x = 0; x < q; ++x)
      m->act[static_cast<size_t>(s) * q + x] = qr.ring->mulv(qr.proj[s], x);
  validate_module(*m);
  return m;
}

ModulePtr mod_direct_sum(const ModulePtr& a, const ModulePtr& b) {
  if (a->ring.get() != b->ring.get()) fail(errc::precondition, "direct sum requires a common ring");
  long long sz = static_cast<long long>(a->size) * b->size;
  if (sz > kRingConstructCap) fail(errc::cap, "module size exceeds construction cap");
  const int n = static_cast<int>(sz);
  const int nb = b->size;
  auto m = std::make_shared<ModuleTable>();
  m->ring = a->ring;
  m->size = n;
  m->zero = a->zero * nb + b->zero;
  m->label = a->label + " (+) " + b->label;
  m->add.resize(static_cast<size_t>(n) * n);
  m->act.resize(static_cast<size_t>(a->ring->size) * n);
  m->neg.resize(n);
  m->names.resize(n);
  for (int x = 0; x < n; ++x) {
    int xa = x / nb, xb = x % nb;
    m->neg[x] = a->neg[xa] * nb + b->neg[xb];
    m->names[x] = "(" + a->names[xa] + "," + b->names[xb] + ")";
    for (int y = 0; y < n; ++y) {
      int ya = y / nb, yb = y % nb;
      m->add[static_cast<size_t>(x) * n + y] = a->addv(xa, ya) * nb + b->addv(xb, yb);
    }
    for (int s = 0; s < a->ring->size; ++s)
      m->act[static_cast<size_t>(s) * n + x] = a->actv(s, xa) * nb + b->actv(s, xb);
  }
  validate_module(*m);
  return m;
}

QuotientModule mod_quotient(const ModulePtr& m, const Submodule& n) {
  if (n.module.get() != m.get()) fail(errc::precondition, "submodule belongs to a different module");
  if (!is_submodule_set(m, n.members)) fail(errc::precondition, "quotient requires a submodule");
  const int sz = m->size;
  std::vector<int> rep(sz, -1);
  auto sub_elems = n.members.members();
  for (int x = 0; x < sz; ++x) {
    if (rep[x] >= 0) continue;
    int mn = x;
    std::vector<int> coset;
    for (int t : sub_elems) {
      int e = m->addv(x, t);
      coset.push_back(e);
      mn = std::min(mn, e);
    }
    for (int e : coset) rep[e] = mn;
  }
  std::vector<int> reps;
  for (int x = 0; x < sz; ++x)
    if (rep[x] == x) reps.push_back(x);
  std::sort(reps.begin(), reps.end());
  const int q = static_cast<int>(reps.size());
  std::vector<int> idx_of_rep(sz, -1);
  for (int k = 0; k < q; ++k) idx_of_rep[reps[k]] = k;
  std::vector<int> proj(sz);
  for (int x = 0; x < sz; ++x) proj[x] = idx_of_rep[rep[x]];

  auto out = std::make_shared<ModuleTable>();
  out->ring = m->ring;
  out->size = q;
  out->zero = proj[m->zero];
  out->label = m->label + " / (" + std::to_string(sub_elems.size()) + " elts)";
  out->add.resize(static_cast<size_t>(q) * q);
  out->act.resize(static_cast<size_t>(m->ring->size) * q);
  out->neg.resize(q);
  out->names.resize(q);
  for (int x = 0; x < q; ++x) {
    out->neg[x] = proj[m->neg[reps[x]]];
    out->names[x] = "[" + m->names[reps[x]] + "]";
    for (int y = 0; y < q; ++y)
      out->add[static_cast<size_t>(x) * q + y] = proj[m->addv(reps[x], reps[y])];
    for (int s = 0; s < m->ring->size; ++s)
      out->act[static_cast<size_t>(s) * q + x] = proj[m->actv(s, reps[x])];
  }
  validate_module(*out);
  return QuotientModule{out, proj};
}

ModulePtr submodule_as_module(const Submodule& n, std::vector<int>* elems) {
  const ModuleTable& m = *n.module;
  if (!is_submodule_set(n.module, n.members)) fail(errc::precondition, "not a submodule");
  auto mem = n.members.members();  // ascending
  const int q = static_cast<int>(mem.size());
  std::vector<int> idx(m.size, -1);
  for (int k = 0; k < q; ++k) idx[mem[k]] = k;
  auto out = std::make_shared<ModuleTable>();
  out->ring = m.ring;
  out->size = q;
  out->zero = idx[m.zero];
  out->label = m.label + " (submodule, " + std::to_string(q) + " elts)";
  out->add.resize(static_cast<size_t>(q) * q);
  out->act.resize(static_cast<size_t>(m.ring->size) * q);
  out->neg.resize(q);
  out->names.resize(q);
  for (int x = 0; x < q; ++x) {
    out->neg[x] = idx[m.neg[mem[x]]];
    out->names[x] = m.names[mem[x]];
    for (int y = 0; y < q; ++y)
      out->add[static_cast<size_t>(x) * q + y] = idx[m.addv(mem[x], mem[y])];
    for (int s = 0; s < m.ring->size; ++s)
      out->act[static_cast<size_t>(s) * q + x] = idx[m.actv(s, mem[x])];
  }
  validate_module(*out);
  if (elems) *elems = mem;
  return out;
}

bool is_submodule_set(const ModulePtr& m, const Bitvec& members) {
  if (members.size() != m->size || !members.test(m->zero)) return false;
  auto elems = members.members();
  for (int x : elems) {
    for (int y : elems)
      if (!members.test(m->addv(x, y))) return false;
    for (int s = 0; s < m->ring->size; ++s)
      if (!members.test(m->actv(s, x))) return false;
  }
  return true;
}

Submodule submodule_generated(const ModulePtr& m, const std::vector<int>& gens) {
  Bitvec acc(m->size);
  acc.set(m->zero);
  for (int g : gens) {
    if (g < 0 || g >= m->size) fail(errc::precondition, "generator out of range");
    acc = sumset(*m, acc, cyclic_of(*m, g));
  }
  return Submodule{m, acc};
}

Submodule sub_sum(const Submodule& a, const Submodule& b) {
  require_same_module(a, b);
  return Submodule{a.module, sumset(*a.module, a.members, b.members)};
}

Submodule sub_intersect(const Submodule& a, const Submodule& b) {
  require_same_module(a, b);
  return Submodule{a.module, a.members & b.members};
}

IdealSet colon_ideal(const Submodule& n, const Submodule& k) {
  require_same_module(n, k);
  const ModuleTable& m = *n.module;
  Bitvec out(m.ring->size);
  auto ks = k.members.members();
  for (int r = 0; r < m.ring->size; ++r) {
    bool ok = true;
    for (int x : ks)
      if (!n.members.test(m.actv(r, x))) {
        ok = false;
        break;
      }
    if (ok) out.set(r);
  }
  return IdealSet{m.ring, out};
}

Submodule colon_into_module(const Submodule& n, const IdealSet& a) {
  const ModuleTable& m = *n.module;
  if (a.ring.get() != m.ring.get()) fail(errc::precondition, "ideal belongs to a different ring");
  Bitvec out(m.size);
  auto as = a.members.members();
  for (int x = 0; x < m.size; ++x) {
    bool ok = true;
    for (int r : as)
      if (!n.members.test(m.actv(r, x))) {
        ok = false;
        break;
      }
    if (ok) out.set(x);
  }
  return Submodule{n.module, out};
}

Submodule ideal_times_submodule(const IdealSet& a, const Submodule& n) {
  const ModuleTable& m = *n.module;
  if (a.ring.get() != m.ring.get()) fail(errc::precondition, "ideal belongs to a different ring");
  Bitvec acc(m.size);
  acc.set(m.zero);
  // {r·x : r in a, x in N} is action-stable; close it under addition.
  for (int r : a.members.members())
    for (int x : n.members.members()) {
      int p = m.actv(r, x);
      if (!acc.test(p)) acc = sumset(m, acc, cyclic_of(m, p));
    }
  return Submodule{n.module, acc};
}

IdealSet annihilator(const ModulePtr& m) {
  Bitvec out(m->ring->size);
  for (int r = 0; r < m->ring->size; ++r) {
    bool ok = true;
    for (int x = 0; x < m->size; ++x)
      if (m->actv(r, x) != m->zero) {
        ok = false;
        break;
      }
    if (ok) out.set(r);
  }
  return IdealSet{m->ring, out};
}

std::vector<Bitvec> cyclic_submodules(const ModulePtr& m) {
  std::unordered_set<Bitvec, BitvecHash> seen;
  std::vector<Bitvec> out;
  for (int x = 0; x < m->size; ++x) {
    Bitvec c = cyclic_of(*m, x);
    if (seen.insert(c).second) out.push_back(c);
  }
  std::sort(out.begin(), out.end(), [](const Bitvec& a, const Bitvec& b) { return a.canon_less(b); });
  return out;
}

int SubmoduleLattice::id_of(const Bitvec& b) const {
  auto it = index.find(b);
  if (it == index.end()) fail(errc::internal, "set is not a submodule of the enumerated lattice");
  return it->second;
}

std::vector<int> SubmoduleLattice::strictly_above(int id) const {
  std::vector<int> out;
  for (int j = 0; j < count(); ++j)
    if (j != id && leq_at(id, j)) out.push_back(j);
  return out;
}

std::vector<int> SubmoduleLattice::upper_covers(int id) const {
  std::vector<int> out;
  for (const auto& [lo, hi] : cover_edges)
    if (lo == id) out.push_back(hi);
  return out;
}

SubmoduleLattice enumerate_submodules(const ModulePtr& m, int cap) {
  if (cap <= 0) cap = Caps{}.lattice;
  SubmoduleLattice lat;
  lat.module = m;

  // Distinct cyclic submodules seed the closure; every submodule is a join
  // of the cyclics it contains, so closing the seeds under pairwise join
  // with cyclics reaches everything.
  std::vector<Bitvec> cyc(m->size, Bitvec(0));
  for (int x = 0; x < m->size; ++x) cyc[x] = cyclic_of(*m, x);

  std::unordered_set<Bitvec, BitvecHash> seen;
  std::deque<Bitvec> queue;
  Bitvec zero(m->size);
  zero.set(m->zero);
  seen.insert(zero);
  queue.push_back(zero);
  std::vector<Bitvec> distinct_cyc = cyclic_submodules(m);
  for (const auto& c : distinct_cyc)
    if (seen.insert(c).second) queue.push_back(c);
  if (static_cast<int>(seen.size()) > cap)
    fail(errc::cap, "submodule count exceeds lattice cap in " + m->label);

  while (!queue.empty()) {
    Bitvec s = queue.front();
    queue.pop_front();
    for (const auto& c : distinct_cyc) {
      if (c.subset_of(s)) continue;
      Bitvec t = sumset(*m, s, c);
      if (seen.insert(t).second) {
        if (static_cast<int>(seen.size()) > cap)
          fail(errc::cap, "submodule count exceeds lattice cap in " + m->label);
        queue.push_back(t);
      }
    }
  }

  lat.subs.assign(seen.begin(), seen.end());
  std::sort(lat.subs.begin(), lat.subs.end(),
            [](const Bitvec& a, const Bitvec& b) { return a.canon_less(b); });
  const int n = static_cast<int>(lat.subs.size());
  for (int i = 0; i < n; ++i) lat.index.emplace(lat.subs[i], i);

  lat.leq.assign(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (lat.subs[i].count() <= lat.subs[j].count() && lat.subs[i].subset_of(lat.subs[j]))
        lat.leq[static_cast<size_t>(i) * n + j] = 1;

  lat.meet_tab.assign(static_cast<size_t>(n) * n, -1);
  lat.join_tab.assign(static_cast<size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      int mt, jt;
      if (lat.leq_at(i, j)) {
        mt = i;
        jt = j;
      } else if (lat.leq_at(j, i)) {
        mt = j;
        jt = i;
      } else {
        mt = lat.id_of(lat.subs[i] & lat.subs[j]);
        Bitvec un = lat.subs[i] | lat.subs[j];
        jt = -1;
        // subs are sorted by cardinality, so the first superset is the join.
        for (int k = j + 1; k < n; ++k)
          if (un.subset_of(lat.subs[k])) {
            jt = k;
            break;
          }
        if (jt < 0) fail(errc::internal, "join not found in lattice");
      }
      lat.meet_tab[static_cast<size_t>(i) * n + j] = mt;
      lat.meet_tab[static_cast<size_t>(j) * n + i] = mt;
      lat.join_tab[static_cast<size_t>(i) * n + j] = jt;
      lat.join_tab[static_cast<size_t>(j) * n + i] = jt;
    }
  }

  lat.cover_edges.clear();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || !lat.leq_at(i, j)) continue;
      bool cover = true;
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (lat.leq_at(i, k) && lat.leq_at(k, j)) {
          cover = false;
          break;
        }
      }
      if (cover) lat.cover_edges.emplace_back(i, j);
    }

  lat.cyclic.assign(n, 0);
  lat.cyc_of_elem.assign(m->size, -1);
  for (int x = 0; x < m->size; ++x) {
    int id = lat.id_of(cyc[x]);
    lat.cyc_of_elem[x] = id;
    lat.cyclic[id] = 1;
  }
  for (int i = 0; i < n; ++i)
    if (lat.cyclic[i]) lat.cyclic_ids.push_back(i);

  return lat;
}

std::vector<IdealSet> ass_module(const ModulePtr& m) {
  std::unordered_set<Bitvec, BitvecHash> seen;
  std::vector<IdealSet> out;
  const RingTable& r = *m->ring;
  for (int x = 0; x < m->size; ++x) {
    if (x == m->zero) continue;
    Bitvec ann(r.size);
    for (int s = 0; s < r.size; ++s)
      if (m->actv(s, x) == m->zero) ann.set(s);
    if (!seen.insert(ann).second) continue;
    IdealSet i{m->ring, ann};
    if (is_prime_ideal(i)) out.push_back(i);
  }
  std::sort(out.begin(), out.end(),
            [](const IdealSet& a, const IdealSet& b) { return a.members.canon_less(b.members); });
  return out;
}

std::vector<IdealSet> mass_module(const ModulePtr& m) {
  auto ass = ass_module(m);
  std::vector<IdealSet> out;
  for (size_t i = 0; i < ass.size(); ++i) {
    bool minimal = true;
    for (size_t j = 0; j < ass.size(); ++j) {
      if (i == j) continue;
      if (ass[j].members != ass[i].members && ass[j].members.subset_of(ass[i].members)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(ass[i]);
  }
  return out;
}

Submodule saturate(const Submodule& n, const std::vector<IdealSet>& primes) {
  const ModuleTable& m = *n.module;
  const RingTable& r = *m.ring;
  Bitvec excluded(r.size);
  for (const auto& p : primes) {
    if (p.ring.get() != m.ring.get()) fail(errc::precondition, "prime belongs to a different ring");
    if (!is_prime_ideal(p)) fail(errc::precondition, "saturation requires prime ideals");
    excluded = excluded | p.members;
  }
  std::vector<int> s_elems;
  for (int s = 0; s < r.size; ++s)
    if (!excluded.test(s)) s_elems.push_back(s);
  if (s_elems.empty()) fail(errc::precondition, "saturation multiplicative set is empty");
  Bitvec out(m.size);
  for (int x = 0; x < m.size; ++x)
    for (int s : s_elems)
      if (n.members.test(m.actv(s, x))) {
        out.set(x);
        break;
      }
  return Submodule{n.module, out};
}

Submodule symbolic_power(const ModulePtr& m, const IdealSet& a, int n) {
  if (a.ring.get() != m->ring.get()) fail(errc::precondition, "ideal belongs to a different ring");
  if (n < 1) fail(errc::precondition, "symbolic power exponent must be >= 1");
  Bitvec full(m->size);
  for (int x = 0; x < m->size; ++x) full.set(x);
  Submodule whole{m, full};
  Submodule am = ideal_times_submodule(a, whole);
  if (am.members.count() == m->size) fail(errc::precondition, "aM = M has no symbolic powers");
  IdealSet an = a;
  for (int k = 1; k < n; ++k) an = ideal_product(an, a);
  Submodule anm = ideal_times_submodule(an, whole);
  auto quot = mod_quotient(m, am);
  auto primes = mass_module(quot.module);
  return saturate(anm, primes);
}

Localization localize(const ModulePtr& m, const IdealSet& p) {
  if (p.ring.get() != m->ring.get()) fail(errc::precondition, "prime belongs to a different ring");
  if (!is_prime_ideal(p)) fail(errc::precondition, "localization requires a prime ideal");
  const RingTable& r = *m->ring;

  // S = R \ p. S-torsion of M and of R; quotients by them give M_p and R_p,
  // because inverting S on a finite module only collapses, never extends.
  std::vector<int> s_elems;
  for (int s = 0; s < r.size; ++s)
    if (!p.members.test(s)) s_elems.push_back(s);

  Bitvec mtors(m->size);
  for (int x = 0; x < m->size; ++x)
    for (int s : s_elems)
      if (m->actv(s, x) == m->zero) {
        mtors.set(x);
        break;
      }
  Bitvec rtors(r.size);
  for (int a = 0; a < r.size; ++a)
    for (int s : s_elems)
      if (r.mulv(s, a) == r.zero) {
        rtors.set(a);
        break;
      }

  QuotientRing qr = ring_quotient(m->ring, IdealSet{m->ring, rtors});
  QuotientModule qm = mod_quotient(m, Submodule{m, mtors});

  // The localized module over the localized ring: action factors through both
  // projections.
  const int q = qm.module->size;
  auto out = std::make_shared<ModuleTable>();
  out->ring = qr.ring;
  out->size = q;
  out->add = qm.module->add;
  out->zero = qm.module->zero;
  out->label = m->label + " localized";
  out->names = qm.module->names;
  out->neg = qm.module->neg;
  out->act.resize(static_cast<size_t>(qr.ring->size) * q);
  std::vector<int> ring_rep(qr.ring->size, -1);
  for (int a = 0; a < r.size; ++a)
    if (ring_rep[qr.proj[a]] < 0) ring_rep[qr.proj[a]] = a;
  std::vector<int> mod_rep(q, -1);
  for (int x = 0; x < m->size; ++x)
    if (mod_rep[qm.proj[x]] < 0) mod_rep[qm.proj[x]] = x;
  for (int a = 0; a < qr.ring->size; ++a)
    for (int x = 0; x < q; ++x)
      out->act[static_cast<size_t>(a) * q + x] = qm.proj[m->actv(ring_rep[a], mod_rep[x])];
  validate_module(*out);

  // Every s in S must now act bijectively; injectivity suffices on a finite set.
  for (int s : s_elems) {
    Bitvec hit(q);
    for (int x = 0; x < q; ++x) {
      int y = out->actv(qr.proj[s], x);
      if (hit.test(y)) fail(errc::internal, "localization failed to invert the multiplicative set");
      hit.set(y);
    }
  }

  return Localization{qr.ring, out, qr.proj, qm.proj};
}

Submodule gamma_torsion(const ModulePtr& m, const IdealSet& a) {
  if (a.ring.get() != m->ring.get()) fail(errc::precondition, "ideal belongs to a different ring");
  // Powers of a descend and stabilize; Gamma_a(M) = (0 : a^stable).
  IdealSet pw = a;
  for (;;) {
    IdealSet nx = ideal_product(pw, a);
    if (nx.members == pw.members) break;
    pw = nx;
  }
  Bitvec zero(m->size);
  zero.set(m->zero);
  return colon_into_module(Submodule{m, zero}, pw);
}

Bitvec push_members(const Bitvec& members, const std::vector<int>& proj, int target_size) {
  Bitvec out(target_size);
  for (int x : members.members()) out.set(proj[x]);
  return out;
}

} // namespace smlab
