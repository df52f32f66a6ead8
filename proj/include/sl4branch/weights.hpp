#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace sl4branch {

/// Integer weight x*e1 + y*e2 on the compact torus of SO(4).
struct Weight {
  long long x = 0;
  long long y = 0;

  friend Weight operator+(const Weight& a, const Weight& b) {
    return {a.x + b.x, a.y + b.y};
  }
  friend Weight operator-(const Weight& a, const Weight& b) {
    return {a.x - b.x, a.y - b.y};
  }
  Weight operator-() const { return {-x, -y}; }

  /// The sign change of e2.
  Weight flipped() const { return {x, -y}; }

  /// Box norm max(|x|, |y|); subadditive, preserved by the flip.
  long long norm() const { return std::max(std::llabs(x), std::llabs(y)); }

  friend bool operator==(const Weight& a, const Weight& b) {
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }
  friend bool operator<(const Weight& a, const Weight& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  }

  std::string str() const {
    return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
  }
};

/// Highest weight a*e1 + b*e2 of an irreducible SO(4) representation.
/// Dominance means a >= |b|; b may be negative.  The two spin factors are
/// tracked through their doubled values so everything stays integral.
struct SO4Irrep {
  long long a;
  long long b;

  SO4Irrep(long long a_, long long b_) : a(a_), b(b_) {
    if (a < std::llabs(b))
      throw std::invalid_argument("SO4Irrep: not dominant: " + Weight{a_, b_}.str());
  }

  long long j_plus_twice() const { return a + b; }
  long long j_minus_twice() const { return a - b; }

  long long dim() const { return (a + b + 1) * (a - b + 1); }

  SO4Irrep flipped() const { return SO4Irrep(a, -b); }

  Weight hw() const { return {a, b}; }

  friend bool operator==(const SO4Irrep& l, const SO4Irrep& r) {
    return l.a == r.a && l.b == r.b;
  }
  friend bool operator<(const SO4Irrep& l, const SO4Irrep& r) {
    return l.a != r.a ? l.a < r.a : l.b < r.b;
  }
};

/// The two U(2) subgroups of SO(4) that matter here.  V1 is the common
/// maximal compact of the symplectic subgroup Sp(2,R) and of GL(2,C)
/// (simple root e1+e2, center along e1-e2); V2 is its flip conjugate
/// (simple root e1-e2, center along e1+e2).
enum class U2Variant { V1, V2 };

inline U2Variant flipped(U2Variant v) {
  return v == U2Variant::V1 ? U2Variant::V2 : U2Variant::V1;
}

inline std::string variant_name(U2Variant v) {
  return v == U2Variant::V1 ? "V1" : "V2";
}

/// Irreducible U(2) representation labelled by its highest weight in the
/// (e1, e2) coordinates, tagged by the subgroup variant.
struct U2Irrep {
  U2Variant variant;
  Weight hw;

  U2Irrep(U2Variant v, Weight w) : variant(v), hw(w) {
    if (spin_twice() < 0)
      throw std::invalid_argument("U2Irrep: not dominant for " +
                                  variant_name(v) + ": " + w.str());
  }

  /// Doubled su(2) spin: x+y for V1, x-y for V2.
  long long spin_twice() const {
    return variant == U2Variant::V1 ? hw.x + hw.y : hw.x - hw.y;
  }

  /// Central character value, constant along the weight string.
  long long center() const {
    return variant == U2Variant::V1 ? hw.x - hw.y : hw.x + hw.y;
  }

  long long dim() const { return spin_twice() + 1; }

  U2Irrep flipped() const { return U2Irrep(sl4branch::flipped(variant), hw.flipped()); }

  friend bool operator==(const U2Irrep& l, const U2Irrep& r) {
    return l.variant == r.variant && l.hw == r.hw;
  }
  friend bool operator!=(const U2Irrep& l, const U2Irrep& r) { return !(l == r); }
  friend bool operator<(const U2Irrep& l, const U2Irrep& r) {
    if (l.variant != r.variant) return l.variant < r.variant;
    return l.hw < r.hw;
  }

  std::string str() const { return variant_name(variant) + hw.str(); }
};

inline long long key_norm(const Weight& w) { return w.norm(); }
inline long long key_norm(const U2Irrep& r) { return r.hw.norm(); }
inline Weight key_flip(const Weight& w) { return w.flipped(); }
inline U2Irrep key_flip(const U2Irrep& r) { return r.flipped(); }

/// Exact multiplicity function on the box of keys with norm <= region.
/// Entries outside the region are rejected, zero entries are never stored,
/// and a lookup outside the region is an error rather than a silent zero:
/// the table promises exactness only inside its region.
template <class Key>
class MultTable {
public:
  explicit MultTable(long long region = 0) : region_(region) {
    if (region < 0) throw std::invalid_argument("MultTable: negative region");
  }

  long long region() const { return region_; }

  void add(const Key& k, long long m) {
    if (key_norm(k) > region_) {
      if (m != 0)
        throw std::invalid_argument("MultTable: key outside region");
      return;
    }
    long long& slot = entries_[k];
    slot += m;
    if (slot < 0) throw std::invalid_argument("MultTable: negative multiplicity");
    if (slot == 0) entries_.erase(k);
  }

  void set(const Key& k, long long m) {
    if (m < 0) throw std::invalid_argument("MultTable: negative multiplicity");
    if (key_norm(k) > region_) {
      if (m != 0) throw std::invalid_argument("MultTable: key outside region");
      return;
    }
    if (m == 0)
      entries_.erase(k);
    else
      entries_[k] = m;
  }

  long long at(const Key& k) const {
    if (key_norm(k) > region_)
      throw std::out_of_range("MultTable: key outside exact region");
    auto it = entries_.find(k);
    return it == entries_.end() ? 0 : it->second;
  }

  bool contains(const Key& k) const { return at(k) > 0; }

  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  long long total_mass() const {
    long long s = 0;
    for (const auto& [k, m] : entries_) s += m;
    return s;
  }

  MultTable flipped() const {
    MultTable out(region_);
    for (const auto& [k, m] : entries_) out.add(key_flip(k), m);
    return out;
  }

  const std::map<Key, long long>& entries() const { return entries_; }

  friend bool operator==(const MultTable& a, const MultTable& b) {
    return a.region_ == b.region_ && a.entries_ == b.entries_;
  }

private:
  long long region_;
  std::map<Key, long long> entries_;
};

inline long long so4_dim(const SO4Irrep& r) { return r.dim(); }

/// Character of an SO(4) irrep as a weight multiplicity table: the
/// convolution of the two spin strings along (1,1) and (1,-1).
inline MultTable<Weight> so4_weight_table(const SO4Irrep& r) {
  MultTable<Weight> t(r.a);
  for (long long m = 0; m <= r.j_plus_twice(); ++m)
    for (long long n = 0; n <= r.j_minus_twice(); ++n)
      t.add({r.a - m - n, r.b - m + n}, 1);
  return t;
}

/// Weight string of a U(2) irrep, highest weight first.  Length is the
/// dimension; the center value is constant along the string.
inline std::vector<Weight> u2_weight_string(const U2Irrep& r) {
  std::vector<Weight> out;
  long long len = r.spin_twice();
  out.reserve(static_cast<size_t>(len) + 1);
  Weight step = r.variant == U2Variant::V1 ? Weight{1, 1} : Weight{1, -1};
  for (long long m = 0; m <= len; ++m)
    out.push_back({r.hw.x - m * step.x, r.hw.y - m * step.y});
  return out;
}

/// Sign change of e2 on a whole table; U(2) keys switch variant.
template <class Key>
MultTable<Key> e2_flip(const MultTable<Key>& t) {
  return t.flipped();
}

}  // namespace sl4branch
