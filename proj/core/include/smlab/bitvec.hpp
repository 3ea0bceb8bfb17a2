#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace smlab {

// Dense membership vector over element indices 0..n-1.
// Used for ideals and submodules; meet is AND, dedup is hashing.
class Bitvec {
public:
  Bitvec() : n_(0) {}
  explicit Bitvec(int n) : n_(n), w_((static_cast<size_t>(n) + 63) / 64, 0) {}

  int size() const { return n_; }
  bool test(int i) const { return (w_[static_cast<size_t>(i) >> 6] >> (i & 63)) & 1; }
  void set(int i) { w_[static_cast<size_t>(i) >> 6] |= uint64_t{1} << (i & 63); }
  void reset(int i) { w_[static_cast<size_t>(i) >> 6] &= ~(uint64_t{1} << (i & 63)); }

  int count() const {
    int c = 0;
    for (uint64_t w : w_) c += __builtin_popcountll(w);
    return c;
  }

  bool subset_of(const Bitvec& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  Bitvec operator&(const Bitvec& o) const {
    Bitvec r(n_);
    for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i];
    return r;
  }

  Bitvec operator|(const Bitvec& o) const {
    Bitvec r(n_);
    for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] | o.w_[i];
    return r;
  }

  bool operator==(const Bitvec& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const Bitvec& o) const { return !(*this == o); }

  // Order: membership vector (b_0, ..., b_{n-1}) compared lexicographically.
  // A set with element 0 present sorts before one without it.
  bool lex_less(const Bitvec& o) const {
    for (int i = 0; i < n_; ++i) {
      bool a = test(i), b = o.test(i);
      if (a != b) return a > b;
    }
    return false;
  }

  // Canonical order for lattices: cardinality, then lexicographic membership.
  bool canon_less(const Bitvec& o) const {
    int ca = count(), cb = o.count();
    if (ca != cb) return ca < cb;
    return lex_less(o);
  }

  size_t hash() const {
    size_t h = static_cast<size_t>(n_) * 0x9e3779b97f4a7c15ull;
    for (uint64_t w : w_) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }

  std::vector<int> members() const {
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

private:
  int n_;
  std::vector<uint64_t> w_;
};

struct BitvecHash {
  size_t operator()(const Bitvec& b) const { return b.hash(); }
};

} // namespace smlab
