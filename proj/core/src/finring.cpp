#include "smlab/finring.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>

#include "smlab/finmod.hpp"

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
  if (!ok) fail(errc::internal, std::string("ring axiom violated (") + what + ") in " + label);
}

void validate_triple(const RingTable& r, int a, int b, int c) {
  const std::string& L = r.label;
  check_axiom(r.addv(a, b) == r.addv(b, a), "add commutativity", L);
  check_axiom(r.mulv(a, b) == r.mulv(b, a), "mul commutativity", L);
  check_axiom(r.addv(r.addv(a, b), c) == r.addv(a, r.addv(b, c)), "add associativity", L);
  check_axiom(r.mulv(r.mulv(a, b), c) == r.mulv(a, r.mulv(b, c)), "mul associativity", L);
  check_axiom(r.mulv(a, r.addv(b, c)) == r.addv(r.mulv(a, b), r.mulv(a, c)), "distributivity", L);
}

std::string paren(const std::string& s) {
  if (s.find('+') != std::string::npos || s.find('-') != std::string::npos) return "(" + s + ")";
  return s;
}

} // namespace

void validate_ring(const RingTable& r) {
  const std::string& L = r.label;
  check_axiom(r.size >= 2, "size >= 2", L);
  check_axiom(static_cast<int>(r.names.size()) == r.size, "names sized", L);
  check_axiom(static_cast<int>(r.neg.size()) == r.size, "neg sized", L);
  check_axiom(r.add.size() == static_cast<size_t>(r.size) * r.size, "add table sized", L);
  check_axiom(r.mul.size() == static_cast<size_t>(r.size) * r.size, "mul table sized", L);
  for (int v : r.add) check_axiom(0 <= v && v < r.size, "add closure", L);
  for (int v : r.mul) check_axiom(0 <= v && v < r.size, "mul closure", L);
  check_axiom(r.zero != r.one, "0 != 1", L);
  for (int a = 0; a < r.size; ++a) {
    check_axiom(r.addv(r.zero, a) == a, "additive identity", L);
    check_axiom(r.mulv(r.one, a) == a, "multiplicative identity", L);
    check_axiom(r.addv(a, r.neg[a]) == r.zero, "additive inverse", L);
  }
  if (r.size <= kValidateExhaustive) {
    for (int a = 0; a < r.size; ++a)
      for (int b = 0; b < r.size; ++b)
        for (int c = 0; c < r.size; ++c) validate_triple(r, a, b, c);
  } else {
    uint64_t st = 0x5ee0f11e5ULL ^ (static_cast<uint64_t>(r.size) << 20);
    for (int k = 0; k < kValidateSamples; ++k) {
      int a = static_cast<int>(splitmix64(st) % r.size);
      int b = static_cast<int>(splitmix64(st) % r.size);
      int c = static_cast<int>(splitmix64(st) % r.size);
      validate_triple(r, a, b, c);
    }
  }
}

RingPtr ring_zmod(int n) {
  if (n < 2) fail(errc::precondition, "zmod modulus must be >= 2");
  if (n > kRingConstructCap) fail(errc::cap, "ring size exceeds construction cap");
  auto r = std::make_shared<RingTable>();
  r->size = n;
  r->zero = 0;
  r->one = 1;
  r->label = "Z/" + std::to_string(n);
  r->add.resize(static_cast<size_t>(n) * n);
  r->mul.resize(static_cast<size_t>(n) * n);
  r->neg.resize(n);
  r->names.resize(n);
  for (int a = 0; a < n; ++a) {
    r->neg[a] = (n - a) % n;
    r->names[a] = std::to_string(a);
    for (int b = 0; b < n; ++b) {
      r->add[static_cast<size_t>(a) * n + b] = (a + b) % n;
      r->mul[static_cast<size_t>(a) * n + b] = (a * b) % n;
    }
  }
  validate_ring(*r);
  return r;
}

namespace {

bool small_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<int> index_to_poly(int idx, int p, int deg) {
  std::vector<int> c(deg);
  for (int i = 0; i < deg; ++i) {
    c[i] = idx % p;
    idx /= p;
  }
  return c;
}

int poly_to_index(const std::vector<int>& c, int p) {
  int idx = 0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) idx = idx * p + c[i];
  return idx;
}

std::string poly_name(const std::vector<int>& c) {
  std::string s;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
    if (c[i] == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0) {
      s += std::to_string(c[i]);
    } else {
      if (c[i] != 1) s += std::to_string(c[i]);
      s += (i == 1) ? "x" : "x^" + std::to_string(i);
    }
  }
  return s.empty() ? "0" : s;
}

} // namespace

RingPtr ring_polyquot(int p, const std::vector<int>& modulus) {
  if (!small_prime(p)) fail(errc::precondition, "gfpoly characteristic must be prime");
  if (modulus.size() < 2) fail(errc::precondition, "gfpoly modulus must have degree >= 1");
  if (modulus.back() != 1) fail(errc::precondition, "gfpoly modulus must be monic");
  for (int c : modulus)
    if (c < 0 || c >= p) fail(errc::precondition, "gfpoly modulus coefficients must lie in [0,p)");
  const int deg = static_cast<int>(modulus.size()) - 1;
  long long sz = 1;
  for (int i = 0; i < deg; ++i) {
    sz *= p;
    if (sz > kRingConstructCap) fail(errc::cap, "ring size exceeds construction cap");
  }
  const int n = static_cast<int>(sz);

  auto mul_poly = [&](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> prod(2 * deg - 1, 0);
    for (int i = 0; i < deg; ++i)
      for (int j = 0; j < deg; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    for (int i = 2 * deg - 2; i >= deg; --i) {
      int c = prod[i];
      if (c == 0) continue;
      prod[i] = 0;
      // x^deg = -(modulus[0] + ... + modulus[deg-1] x^{deg-1})
      for (int j = 0; j < deg; ++j) {
        int t = prod[i - deg + j] - c * modulus[j];
        prod[i - deg + j] = ((t % p) + p) % p;
      }
    }
    prod.resize(deg);
    return prod;
  };

  auto r = std::make_shared<RingTable>();
  r->size = n;
  r->zero = 0;
  r->one = poly_to_index(std::vector<int>{1}, p) /* = 1 */;
  std::string mname = poly_name(modulus);
  r->label = "F_" + std::to_string(p) + "[x]/(" + mname + ")";
  r->add.resize(static_cast<size_t>(n) * n);
  r->mul.resize(static_cast<size_t>(n) * n);
  r->neg.resize(n);
  r->names.resize(n);
  for (int a = 0; a < n; ++a) {
    auto pa = index_to_poly(a, p, deg);
    r->names[a] = poly_name(pa);
    std::vector<int> na(deg);
    for (int i = 0; i < deg; ++i) na[i] = (p - pa[i]) % p;
    r->neg[a] = poly_to_index(na, p);
    for (int b = 0; b < n; ++b) {
      auto pb = index_to_poly(b, p, deg);
      std::vector<int> s(deg);
      for (int i = 0; i < deg; ++i) s[i] = (pa[i] + pb[i]) % p;
      r->add[static_cast<size_t>(a) * n + b] = poly_to_index(s, p);
      r->mul[static_cast<size_t>(a) * n + b] = poly_to_index(mul_poly(pa, pb), p);
    }
  }
  validate_ring(*r);
  return r;
}

RingPtr ring_product(const RingPtr& a, const RingPtr& b) {
  long long sz = static_cast<long long>(a->size) * b->size;
  if (sz > kRingConstructCap) fail(errc::cap, "ring size exceeds construction cap");
  const int n = static_cast<int>(sz);
  const int nb = b->size;
  auto r = std::make_shared<RingTable>();
  r->size = n;
  r->zero = a->zero * nb + b->zero;
  r->one = a->one * nb + b->one;
  r->label = a->label + " x " + b->label;
  r->add.resize(static_cast<size_t>(n) * n);
  r->mul.resize(static_cast<size_t>(n) * n);
  r->neg.resize(n);
  r->names.resize(n);
  for (int x = 0; x < n; ++x) {
    int xa = x / nb, xb = x % nb;
    r->neg[x] = a->neg[xa] * nb + b->neg[xb];
    r->names[x] = "(" + a->names[xa] + "," + b->names[xb] + ")";
    for (int y = 0; y < n; ++y) {
      int ya = y / nb, yb = y % nb;
      r->add[static_cast<size_t>(x) * n + y] = a->addv(xa, ya) * nb + b->addv(xb, yb);
      r->mul[static_cast<size_t>(x) * n + y] = a->mulv(xa, ya) * nb + b->mulv(xb, yb);
    }
  }
  validate_ring(*r);
  return r;
}

QuotientRing ring_quotient(const RingPtr& r, const IdealSet& i) {
  if (i.ring.get() != r.get()) fail(errc::precondition, "ideal belongs to a different ring");
  if (!is_ideal_set(r, i.members)) fail(errc::precondition, "quotient requires an ideal");
  if (i.members.test(r->one)) fail(errc::precondition, "quotient by the whole ring is the zero ring");

  // Coset of a = {a + t : t in I}; representative = minimal element.
  const int n = r->size;
  std::vector<int> rep(n, -1);
  std::vector<int> ideal_elems = i.members.members();
  for (int a = 0; a < n; ++a) {
    if (rep[a] >= 0) continue;
    int mn = a;
    std::vector<int> coset;
    for (int t : ideal_elems) {
      int e = r->addv(a, t);
      coset.push_back(e);
      mn = std::min(mn, e);
    }
    for (int e : coset) rep[e] = mn;
  }
  std::vector<int> reps;
  for (int a = 0; a < n; ++a)
    if (rep[a] == a) reps.push_back(a);
  std::sort(reps.begin(), reps.end());
  const int q = static_cast<int>(reps.size());
  std::vector<int> idx_of_rep(n, -1);
  for (int k = 0; k < q; ++k) idx_of_rep[reps[k]] = k;
  std::vector<int> proj(n);
  for (int a = 0; a < n; ++a) proj[a] = idx_of_rep[rep[a]];

  auto out = std::make_shared<RingTable>();
  out->size = q;
  out->zero = proj[r->zero];
  out->one = proj[r->one];
  out->label = r->label + "/(" + std::to_string(ideal_elems.size()) + " elts)";
  out->add.resize(static_cast<size_t>(q) * q);
  out->mul.resize(static_cast<size_t>(q) * q);
  out->neg.resize(q);
  out->names.resize(q);
  for (int x = 0; x < q; ++x) {
    out->neg[x] = proj[r->neg[reps[x]]];
    out->names[x] = "[" + r->names[reps[x]] + "]";
    for (int y = 0; y < q; ++y) {
      out->add[static_cast<size_t>(x) * q + y] = proj[r->addv(reps[x], reps[y])];
      out->mul[static_cast<size_t>(x) * q + y] = proj[r->mulv(reps[x], reps[y])];
    }
  }
  validate_ring(*out);
  return QuotientRing{out, proj};
}

RingPtr ring_idealization(const RingPtr& base, int rank) {
  if (rank < 1) fail(errc::precondition, "idealization rank must be >= 1");
  const int q = base->size;
  long long sz = q;
  for (int i = 0; i < rank; ++i) {
    sz *= q;
    if (sz > kRingConstructCap) fail(errc::cap, "ring size exceeds construction cap");
  }
  const int n = static_cast<int>(sz);
  static const char* kVars[] = {"x", "y", "z"};

  // Element index a + q*(v_0 + q*v_1 + ...), mixed radix over the base ring.
  auto decode = [&](int idx) {
    std::vector<int> parts(rank + 1);
    for (int i = 0; i <= rank; ++i) {
      parts[i] = idx % q;
      idx /= q;
    }
    return parts;  // parts[0] = a, parts[1..rank] = v
  };
  auto encode = [&](const std::vector<int>& parts) {
    int idx = 0;
    for (int i = rank; i >= 0; --i) idx = idx * q + parts[i];
    return idx;
  };

  auto r = std::make_shared<RingTable>();
  r->size = n;
  r->zero = 0;
  r->one = base->one;  // (1, 0,...,0)
  r->label = base->label + "[v^2=0, rank " + std::to_string(rank) + "]";
  if (q == 2 && rank == 2) r->label = "F_2[x,y]/(x,y)^2";
  if (q == 3 && rank == 2) r->label = "F_3[x,y]/(x,y)^2";
  if (q == 2 && rank == 3) r->label = "F_2[x,y,z]/(x,y,z)^2";
  r->add.resize(static_cast<size_t>(n) * n);
  r->mul.resize(static_cast<size_t>(n) * n);
  r->neg.resize(n);
  r->names.resize(n);
  for (int xi = 0; xi < n; ++xi) {
    auto xs = decode(xi);
    std::vector<int> nx(rank + 1);
    for (int i = 0; i <= rank; ++i) nx[i] = base->neg[xs[i]];
    r->neg[xi] = encode(nx);
    {
      std::string s;
      if (xs[0] != base->zero) s = base->names[xs[0]];
      for (int i = 1; i <= rank; ++i) {
        if (xs[i] == base->zero) continue;
        if (!s.empty()) s += "+";
        std::string var = (rank <= 3) ? kVars[i - 1] : "x" + std::to_string(i);
        if (xs[i] != base->one) s += paren(base->names[xs[i]]) + var;
        else s += var;
      }
      r->names[xi] = s.empty() ? "0" : s;
    }
    for (int yi = 0; yi < n; ++yi) {
      auto ys = decode(yi);
      std::vector<int> sum(rank + 1), prod(rank + 1);
      for (int i = 0; i <= rank; ++i) sum[i] = base->addv(xs[i], ys[i]);
      prod[0] = base->mulv(xs[0], ys[0]);
      for (int i = 1; i <= rank; ++i)
        prod[i] = base->addv(base->mulv(xs[0], ys[i]), base->mulv(ys[0], xs[i]));
      r->add[static_cast<size_t>(xi) * n + yi] = encode(sum);
      r->mul[static_cast<size_t>(xi) * n + yi] = encode(prod);
    }
  }
  validate_ring(*r);
  return r;
}

namespace {

// Pointwise sumset; for subgroups A, B of (R,+) this is A + B.
Bitvec sumset(const RingTable& r, const Bitvec& a, const Bitvec& b) {
  Bitvec out(r.size);
  for (int x : a.members())
    for (int y : b.members()) out.set(r.addv(x, y));
  return out;
}

Bitvec cyclic_ideal(const RingTable& r, int g) {
  Bitvec out(r.size);
  for (int s = 0; s < r.size; ++s) out.set(r.mulv(s, g));
  return out;
}

void require_same_ring(const IdealSet& i, const IdealSet& j) {
  if (i.ring.get() != j.ring.get()) fail(errc::precondition, "ideals belong to different rings");
}

} // namespace

bool is_ideal_set(const RingPtr& r, const Bitvec& members) {
  if (members.size() != r->size || !members.test(r->zero)) return false;
  auto elems = members.members();
  for (int x : elems) {
    for (int y : elems)
      if (!members.test(r->addv(x, y))) return false;
    for (int s = 0; s < r->size; ++s)
      if (!members.test(r->mulv(s, x))) return false;
  }
  return true;
}

IdealSet ideal_generated(const RingPtr& r, const std::vector<int>& gens) {
  Bitvec acc(r->size);
  acc.set(r->zero);
  for (int g : gens) {
    if (g < 0 || g >= r->size) fail(errc::precondition, "generator out of range");
    acc = sumset(*r, acc, cyclic_ideal(*r, g));
  }
  return IdealSet{r, acc};
}

IdealSet ideal_sum(const IdealSet& i, const IdealSet& j) {
  require_same_ring(i, j);
  return IdealSet{i.ring, sumset(*i.ring, i.members, j.members)};
}

IdealSet ideal_product(const IdealSet& i, const IdealSet& j) {
  require_same_ring(i, j);
  const RingTable& r = *i.ring;
  Bitvec acc(r.size);
  acc.set(r.zero);
  // {ab : a in I, b in J} is R-stable; close it under addition.
  for (int a : i.members.members())
    for (int b : j.members.members()) {
      int p = r.mulv(a, b);
      if (!acc.test(p)) acc = sumset(r, acc, cyclic_ideal(r, p));
    }
  return IdealSet{i.ring, acc};
}

IdealSet ideal_intersection(const IdealSet& i, const IdealSet& j) {
  require_same_ring(i, j);
  return IdealSet{i.ring, i.members & j.members};
}

IdealSet ideal_colon(const IdealSet& i, const IdealSet& j) {
  require_same_ring(i, j);
  const RingTable& r = *i.ring;
  Bitvec out(r.size);
  auto js = j.members.members();
  for (int s = 0; s < r.size; ++s) {
    bool ok = true;
    for (int b : js)
      if (!i.members.test(r.mulv(s, b))) {
        ok = false;
        break;
      }
    if (ok) out.set(s);
  }
  return IdealSet{i.ring, out};
}

IdealSet radical_ideal(const RingPtr& r, const IdealSet& i) {
  if (i.ring.get() != r.get()) fail(errc::precondition, "ideal belongs to a different ring");
  Bitvec out(r->size);
  for (int a = 0; a < r->size; ++a) {
    // Walk powers of a until membership or a repeat.
    Bitvec seen(r->size);
    int p = a;
    while (!seen.test(p)) {
      if (i.members.test(p)) {
        out.set(a);
        break;
      }
      seen.set(p);
      p = r->mulv(p, a);
    }
  }
  return IdealSet{r, out};
}

bool is_prime_ideal(const IdealSet& i) {
  const RingTable& r = *i.ring;
  if (i.members.count() == r.size) return false;  // not proper
  for (int a = 0; a < r.size; ++a) {
    if (i.members.test(a)) continue;
    for (int b = a; b < r.size; ++b) {
      if (i.members.test(b)) continue;
      if (i.members.test(r.mulv(a, b))) return false;
    }
  }
  return true;
}

std::vector<IdealSet> enumerate_ideals(const RingPtr& r) {
  if (r->size > kRingFullLatticeCap) fail(errc::cap, "ring too large for full ideal enumeration");
  auto m = mod_regular(r);
  auto lat = enumerate_submodules(m, r->size + 1024);
  std::vector<IdealSet> out;
  out.reserve(lat.subs.size());
  for (const auto& b : lat.subs) out.push_back(IdealSet{r, b});
  return out;
}

std::vector<PrimeWitness> maximal_ideals(const RingPtr& r) {
  auto ideals = enumerate_ideals(r);
  std::vector<PrimeWitness> out;
  for (size_t i = 0; i < ideals.size(); ++i) {
    if (ideals[i].members.count() == r->size) continue;  // R itself
    bool maximal = true;
    for (size_t j = 0; j < ideals.size(); ++j) {
      if (j == i || ideals[j].members.count() == r->size) continue;
      if (ideals[i].members != ideals[j].members && ideals[i].members.subset_of(ideals[j].members)) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(PrimeWitness{ideals[i], true});
  }
  return out;
}

std::pair<bool, IdealSet> is_local(const RingPtr& r) {
  auto mx = maximal_ideals(r);
  if (mx.size() == 1) return {true, mx[0].ideal};
  return {false, IdealSet{r, Bitvec(r->size)}};
}

} // namespace smlab
