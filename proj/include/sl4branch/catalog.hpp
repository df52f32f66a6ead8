#pragma once

#include <array>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sl4branch/weights.hpp"

namespace sl4branch {

/// Symbolic label for each infinite-dimensional module the library knows.
///
///   aq:<m>      module with K-types (3+m+m1+2m2, 3+m+m1), m1,m2 >= 0
///   aqprime:<m> its image under the sign change of e2
///   ladder      K-types (2k, 0), k >= 0
///   sp:<n>      Sp(2,R) summand; K^H-types {x+y even, min(x,y) >= 3+n}
///   glray:<x>,<y>  GL(2,C) summand; K^H-types {min + j*(1,1), j >= 0}
///
/// The first three are described by SO(4) K-types, the last two by types of
/// the common maximal compact U(2) (variant V1).  A finite formal sum of
/// descriptors is also a descriptor.
class ModuleDescriptor {
public:
  enum class Kind { Aq, AqPrime, Ladder, SpSummand, GlRay, FiniteSum };

  static ModuleDescriptor aq(long long m) {
    check_aq_param(m);
    ModuleDescriptor d(Kind::Aq);
    d.param_ = m;
    return d;
  }

  static ModuleDescriptor aq_prime(long long m) {
    check_aq_param(m);
    ModuleDescriptor d(Kind::AqPrime);
    d.param_ = m;
    return d;
  }

  static ModuleDescriptor ladder() { return ModuleDescriptor(Kind::Ladder); }

  static ModuleDescriptor sp_summand(long long n) {
    if (n < 0) throw std::invalid_argument("sp summand index must be >= 0");
    ModuleDescriptor d(Kind::SpSummand);
    d.param_ = n;
    return d;
  }

  static ModuleDescriptor gl_ray(const U2Irrep& min) {
    if (min.variant != U2Variant::V1)
      throw std::invalid_argument("gl ray minimal type must be a V1 irrep");
    ModuleDescriptor d(Kind::GlRay);
    d.ray_min_ = min.hw;
    return d;
  }

  static ModuleDescriptor finite_sum(
      std::vector<std::pair<ModuleDescriptor, long long>> terms) {
    for (const auto& [d, m] : terms)
      if (m <= 0) throw std::invalid_argument("finite sum needs positive multiplicities");
    ModuleDescriptor d(Kind::FiniteSum);
    d.terms_ = std::make_shared<std::vector<std::pair<ModuleDescriptor, long long>>>(
        std::move(terms));
    return d;
  }

  Kind kind() const { return kind_; }
  long long param() const { return param_; }
  Weight ray_min() const { return ray_min_; }
  const std::vector<std::pair<ModuleDescriptor, long long>>& terms() const {
    return *terms_;
  }

  /// True for the one reducible member of the aq family (parameter -3).
  bool reducible() const {
    return (kind_ == Kind::Aq || kind_ == Kind::AqPrime) && param_ == -3;
  }

  /// True when the module is described by SO(4) K-types (as opposed to the
  /// U(2)-type families sp:<n> and glray:...).
  bool has_so4_ktypes() const {
    switch (kind_) {
      case Kind::Aq:
      case Kind::AqPrime:
      case Kind::Ladder:
        return true;
      case Kind::FiniteSum: {
        for (const auto& [d, m] : *terms_)
          if (!d.has_so4_ktypes()) return false;
        return true;
      }
      default:
        return false;
    }
  }

  std::string text() const {
    switch (kind_) {
      case Kind::Aq:
        return "aq:" + std::to_string(param_);
      case Kind::AqPrime:
        return "aqprime:" + std::to_string(param_);
      case Kind::Ladder:
        return "ladder";
      case Kind::SpSummand:
        return "sp:" + std::to_string(param_);
      case Kind::GlRay:
        return "glray:" + std::to_string(ray_min_.x) + "," +
               std::to_string(ray_min_.y);
      case Kind::FiniteSum: {
        std::string s = "sum(";
        bool first = true;
        for (const auto& [d, m] : *terms_) {
          if (!first) s += "+";
          first = false;
          if (m != 1) s += std::to_string(m) + "*";
          s += d.text();
        }
        return s + ")";
      }
    }
    return "?";
  }

  /// Parse the canonical text form.  Unknown or malformed descriptors are
  /// rejected with the offending token in the message.
  static ModuleDescriptor parse(const std::string& s) {
    auto integer = [&](const std::string& tok) -> long long {
      if (tok.empty()) throw std::invalid_argument("descriptor: missing integer in '" + s + "'");
      size_t pos = 0;
      long long v = 0;
      try {
        v = std::stoll(tok, &pos);
      } catch (const std::exception&) {
        throw std::invalid_argument("descriptor: bad integer '" + tok + "'");
      }
      if (pos != tok.size())
        throw std::invalid_argument("descriptor: bad integer '" + tok + "'");
      return v;
    };
    if (s == "ladder") return ladder();
    auto colon = s.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("descriptor: unknown module '" + s + "'");
    std::string head = s.substr(0, colon);
    std::string rest = s.substr(colon + 1);
    if (head == "aq") return aq(integer(rest));
    if (head == "aqprime") return aq_prime(integer(rest));
    if (head == "sp") return sp_summand(integer(rest));
    if (head == "glray") {
      auto comma = rest.find(',');
      if (comma == std::string::npos)
        throw std::invalid_argument("descriptor: glray needs '<x>,<y>', got '" + rest + "'");
      Weight w{integer(rest.substr(0, comma)), integer(rest.substr(comma + 1))};
      return gl_ray(U2Irrep(U2Variant::V1, w));
    }
    throw std::invalid_argument("descriptor: unknown module '" + head + "'");
  }

  friend bool operator==(const ModuleDescriptor& a, const ModuleDescriptor& b) {
    return a.text() == b.text();
  }

private:
  explicit ModuleDescriptor(Kind k) : kind_(k) {}

  static void check_aq_param(long long m) {
    if (m < -3)
      throw std::invalid_argument(
          "aq parameter below -3 leaves the unitary family (m >= -3 required)");
  }

  Kind kind_;
  long long param_ = 0;
  Weight ray_min_{};
  std::shared_ptr<std::vector<std::pair<ModuleDescriptor, long long>>> terms_;
};

/// Exact K-type multiplicity table of a module with SO(4) K-types,
/// restricted to the box norm <= N.  Keys are highest weights; atomic
/// families are multiplicity free.
inline MultTable<Weight> ktypes(const ModuleDescriptor& d, long long N) {
  if (N < 0) throw std::invalid_argument("ktypes: negative region");
  using Kind = ModuleDescriptor::Kind;
  MultTable<Weight> t(N);
  switch (d.kind()) {
    case Kind::Aq: {
      long long c = 3 + d.param();
      for (long long m1 = 0; c + m1 <= N; ++m1)
        for (long long m2 = 0; c + m1 + 2 * m2 <= N; ++m2)
          t.add({c + m1 + 2 * m2, c + m1}, 1);
      return t;
    }
    case Kind::AqPrime:
      return ktypes(ModuleDescriptor::aq(d.param()), N).flipped();
    case Kind::Ladder: {
      for (long long k = 0; 2 * k <= N; ++k) t.add({2 * k, 0}, 1);
      return t;
    }
    case Kind::FiniteSum: {
      for (const auto& [child, mult] : d.terms()) {
        MultTable<Weight> ct = ktypes(child, N);
        for (const auto& [k, m] : ct.entries()) t.add(k, m * mult);
      }
      return t;
    }
    default:
      throw std::invalid_argument(
          "ktypes: descriptor '" + d.text() +
          "' is a U(2)-type family; use h_summand_table");
  }
}

/// The two composition factors of the reducible family member aq:-3.
/// Their K-type tables partition the parent's table pointwise.
inline std::array<ModuleDescriptor, 2> composition_factors(const ModuleDescriptor& d) {
  if (d.kind() != ModuleDescriptor::Kind::Aq || d.param() != -3)
    throw std::invalid_argument("composition_factors: only aq:-3 is reducible here");
  return {ModuleDescriptor::aq(-2), ModuleDescriptor::ladder()};
}

/// U(2)-type table of an Sp or GL summand on the box norm <= N.
/// Multiplicity free and exact on the region.
inline MultTable<U2Irrep> h_summand_table(const ModuleDescriptor& d, long long N) {
  if (N < 0) throw std::invalid_argument("h_summand_table: negative region");
  using Kind = ModuleDescriptor::Kind;
  MultTable<U2Irrep> t(N);
  if (d.kind() == Kind::SpSummand) {
    long long floor = 3 + d.param();
    for (long long x = floor; x <= N; ++x)
      for (long long y = floor; y <= N; ++y)
        if ((x + y) % 2 == 0) t.add(U2Irrep(U2Variant::V1, {x, y}), 1);
    return t;
  }
  if (d.kind() == Kind::GlRay) {
    for (Weight w = d.ray_min(); w.norm() <= N; w = w + Weight{1, 1})
      t.add(U2Irrep(U2Variant::V1, w), 1);
    return t;
  }
  throw std::invalid_argument("h_summand_table: descriptor '" + d.text() +
                              "' is not an sp/glray summand");
}

/// Highest weight of the minimal U(2)-type of an Sp or GL summand.
inline U2Irrep minimal_h_type(const ModuleDescriptor& d) {
  using Kind = ModuleDescriptor::Kind;
  if (d.kind() == Kind::SpSummand)
    return U2Irrep(U2Variant::V1, {3 + d.param(), 3 + d.param()});
  if (d.kind() == Kind::GlRay) return U2Irrep(U2Variant::V1, d.ray_min());
  throw std::invalid_argument("minimal_h_type: descriptor '" + d.text() +
                              "' is not an sp/glray summand");
}

}  // namespace sl4branch
