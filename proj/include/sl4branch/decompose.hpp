#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sl4branch/branching.hpp"
#include "sl4branch/catalog.hpp"
#include "sl4branch/report.hpp"

namespace sl4branch {

/// Restriction targets: the symplectic subgroup (Sp cones) and the complex
/// linear subgroup (GL rays).  Both act through the same maximal compact,
/// so both peel V1 tables.
enum class Subgroup { H1, H1p };

inline std::string subgroup_name(Subgroup sg) {
  return sg == Subgroup::H1 ? "sp" : "gl";
}

enum class PeelFamily { SpCones, GlRays };

/// The proposed family cannot express the table (a subtraction went
/// negative during peeling).
class FamilyMismatchError : public std::runtime_error {
public:
  explicit FamilyMismatchError(const std::string& what) : std::runtime_error(what) {}
};

/// Identity of one family member in a peeling decomposition.
///
/// Sp cones are indexed by their floor: the member with minimal type
/// (f, f) and support {x+y even, min(x,y) >= f}.  Floors >= 3 are the
/// catalog summands sp:<f-3>; smaller floors occur in the decompositions
/// of the reducible family member and its factors (floor 0 is the
/// spherical one).  GL rays are indexed by their minimal type.
struct SummandId {
  PeelFamily family;
  long long floor = 0;  // SpCones only
  Weight ray_min{};     // GlRays only

  static SummandId sp_cone(long long f) {
    if (f < 0) throw std::invalid_argument("SummandId: negative cone floor");
    return {PeelFamily::SpCones, f, {}};
  }
  static SummandId gl_ray(Weight min) {
    if (min.x + min.y < 0)
      throw std::invalid_argument("SummandId: ray minimal type not dominant");
    return {PeelFamily::GlRays, 0, min};
  }

  U2Irrep minimal_type() const {
    return U2Irrep(U2Variant::V1,
                   family == PeelFamily::SpCones ? Weight{floor, floor} : ray_min);
  }

  /// Catalog descriptor, when the member is a catalog summand.
  std::optional<ModuleDescriptor> descriptor() const {
    if (family == PeelFamily::GlRays)
      return ModuleDescriptor::gl_ray(U2Irrep(U2Variant::V1, ray_min));
    if (floor >= 3) return ModuleDescriptor::sp_summand(floor - 3);
    return std::nullopt;
  }

  std::string text() const {
    if (family == PeelFamily::GlRays)
      return "glray:" + std::to_string(ray_min.x) + "," + std::to_string(ray_min.y);
    if (floor >= 3) return "sp:" + std::to_string(floor - 3);
    return "spcone:" + std::to_string(floor);
  }

  friend bool operator==(const SummandId& a, const SummandId& b) {
    return a.family == b.family && a.floor == b.floor && a.ray_min == b.ray_min;
  }
  friend bool operator<(const SummandId& a, const SummandId& b) {
    Weight wa = a.minimal_type().hw, wb = b.minimal_type().hw;
    if (wa.norm() != wb.norm()) return wa.norm() < wb.norm();
    return wa < wb;
  }
};

/// Exact support of a family member on the box norm <= N.
inline MultTable<U2Irrep> summand_support(const SummandId& id, long long N) {
  MultTable<U2Irrep> t(N);
  if (id.family == PeelFamily::SpCones) {
    for (long long x = id.floor; x <= N; ++x)
      for (long long y = id.floor; y <= N; ++y)
        if ((x + y) % 2 == 0) t.add(U2Irrep(U2Variant::V1, {x, y}), 1);
  } else {
    for (Weight w = id.ray_min; w.norm() <= N; w = w + Weight{1, 1})
      t.add(U2Irrep(U2Variant::V1, w), 1);
  }
  return t;
}

/// Certified result of peeling a multiplicity table into family members:
/// the summand list, the leftover residual, and whether the residual
/// vanishes identically on the region.  Every support lies componentwise
/// above its minimal type, so keys inside the region receive contributions
/// only from minimal types inside the region; exactness on the region is
/// therefore a complete verification, with no boundary slack.
struct DecompositionCertificate {
  PeelFamily family;
  long long region;
  bool exact;
  std::vector<std::pair<SummandId, long long>> summands;
  MultTable<U2Irrep> residual;

  long long multiplicity_of(const SummandId& id) const {
    for (const auto& [s, m] : summands)
      if (s == id) return m;
    return 0;
  }

  bool multiplicity_free() const {
    for (const auto& [s, m] : summands)
      if (m != 1) return false;
    return true;
  }
};

/// Linear extensions of the componentwise order used for peeling.  The
/// first is the documented default (cone floors appear in index order);
/// the second exists to check order independence.
enum class PeelOrder { MinThenX, SumThenX };

namespace detail {

inline std::vector<Weight> dominant_keys_in_order(long long N, PeelOrder order) {
  std::vector<Weight> keys;
  for (long long x = -N; x <= N; ++x)
    for (long long y = -N; y <= N; ++y)
      if (x + y >= 0) keys.push_back({x, y});
  auto min_then_x = [](const Weight& a, const Weight& b) {
    long long ma = std::min(a.x, a.y), mb = std::min(b.x, b.y);
    if (ma != mb) return ma < mb;
    return a < b;
  };
  auto sum_then_x = [](const Weight& a, const Weight& b) {
    if (a.x + a.y != b.x + b.y) return a.x + a.y < b.x + b.y;
    return a < b;
  };
  if (order == PeelOrder::MinThenX)
    std::sort(keys.begin(), keys.end(), min_then_x);
  else
    std::sort(keys.begin(), keys.end(), sum_then_x);
  return keys;
}

inline void require_v1_table(const MultTable<U2Irrep>& t) {
  for (const auto& [k, m] : t.entries()) {
    (void)m;
    if (k.variant != U2Variant::V1)
      throw std::invalid_argument("decompose: table must be keyed by V1 types");
  }
}

}  // namespace detail

/// Greedy peeling: walk dominant keys in a linear extension of the
/// componentwise order; whenever the residual at a key is positive and the
/// key heads a family member, emit that member and subtract its support.
/// A negative residual cannot be repaired and raises FamilyMismatchError;
/// positive leftovers are reported in the certificate instead.
inline DecompositionCertificate decompose(const MultTable<U2Irrep>& t,
                                          PeelFamily family, long long N,
                                          PeelOrder order = PeelOrder::MinThenX) {
  if (N < 0) throw std::invalid_argument("decompose: negative region");
  if (t.region() < N)
    throw std::invalid_argument("decompose: table region smaller than requested");
  detail::require_v1_table(t);

  std::map<Weight, long long> residual;
  for (const auto& [k, m] : t.entries())
    if (k.hw.norm() <= N) residual[k.hw] = m;

  std::vector<std::pair<SummandId, long long>> summands;
  for (const Weight& w : detail::dominant_keys_in_order(N, order)) {
    auto it = residual.find(w);
    long long r = it == residual.end() ? 0 : it->second;
    if (r <= 0) continue;
    bool heads_member =
        family == PeelFamily::SpCones ? (w.x == w.y && w.x >= 0) : true;
    if (!heads_member) continue;  // leftover; reported via the residual
    SummandId id = family == PeelFamily::SpCones ? SummandId::sp_cone(w.x)
                                                 : SummandId::gl_ray(w);
    summands.push_back({id, r});
    MultTable<U2Irrep> support = summand_support(id, N);
    for (const auto& [k, m] : support.entries()) {
      long long& slot = residual[k.hw];
      slot -= r * m;
      if (slot < 0)
        throw FamilyMismatchError("decompose: residual went negative at " +
                                  k.hw.str() + " while peeling " + id.text());
      if (slot == 0) residual.erase(k.hw);
    }
  }

  DecompositionCertificate cert{family, N, residual.empty(), std::move(summands),
                                MultTable<U2Irrep>(N)};
  for (const auto& [w, m] : residual) cert.residual.add(U2Irrep(U2Variant::V1, w), m);
  std::sort(cert.summands.begin(), cert.summands.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return cert;
}

/// Result of cone peeling that never consults the closed-form cone
/// supports: memberships are inferred from the table itself.  At each key
/// the eligible members (floor <= min of the key) can contribute at most
/// one each; a total equal to the eligible count forces every membership,
/// a total of zero forbids them all, and anything strictly between leaves
/// the key undetermined.
struct InferredCones {
  DecompositionCertificate certificate;
  std::vector<U2Irrep> undetermined;
  std::map<long long, std::set<Weight>> forced_support;  // floor -> keys forced in
};

inline InferredCones infer_sp_cones(const MultTable<U2Irrep>& t, long long N) {
  if (N < 0) throw std::invalid_argument("infer_sp_cones: negative region");
  if (t.region() < N)
    throw std::invalid_argument("infer_sp_cones: table region smaller than requested");
  detail::require_v1_table(t);

  InferredCones out;
  std::vector<std::pair<long long, long long>> emitted;  // (floor, multiplicity)
  for (const Weight& w : detail::dominant_keys_in_order(N, PeelOrder::MinThenX)) {
    long long total = t.at(U2Irrep(U2Variant::V1, w));
    long long eligible = 0;
    long long m = std::min(w.x, w.y);
    for (const auto& [f, k] : emitted)
      if (f <= m) eligible += k;
    if (total > eligible) {
      if (w.x != w.y)
        throw FamilyMismatchError(
            "infer_sp_cones: excess multiplicity at off-diagonal key " + w.str());
      emitted.push_back({w.x, total - eligible});
      eligible = total;
    }
    if (total == 0) continue;  // membership forced out for every eligible cone
    if (total < eligible) {
      out.undetermined.push_back(U2Irrep(U2Variant::V1, w));
      continue;
    }
    // total == eligible: every eligible cone must contain this key
    for (const auto& [f, k] : emitted) {
      (void)k;
      if (f <= m) out.forced_support[f].insert(w);
    }
  }

  out.certificate.family = PeelFamily::SpCones;
  out.certificate.region = N;
  out.certificate.residual = MultTable<U2Irrep>(N);
  for (const auto& [f, k] : emitted)
    out.certificate.summands.push_back({SummandId::sp_cone(f), k});
  std::sort(out.certificate.summands.begin(), out.certificate.summands.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  // exact when the forced memberships account for the whole table
  long long forced_mass = 0;
  for (const auto& [f, keys] : out.forced_support) {
    (void)f;
    forced_mass += static_cast<long long>(keys.size());
  }
  out.certificate.exact = out.undetermined.empty() && forced_mass == t.total_mass();
  return out;
}

/// Cross-check of the inferred cone supports against the closed-form cone
/// tables.  True when every membership was determined and matches.
inline bool inferred_supports_match(const InferredCones& inf, long long N) {
  if (!inf.undetermined.empty()) return false;
  for (const auto& [s, m] : inf.certificate.summands) {
    (void)m;
    std::set<Weight> closed;
    MultTable<U2Irrep> support = summand_support(s, N);
    for (const auto& [k, mult] : support.entries()) {
      (void)mult;
      closed.insert(k.hw);
    }
    auto it = inf.forced_support.find(s.floor);
    if (it == inf.forced_support.end() || it->second != closed) return false;
  }
  return true;
}

/// Multiplicity of an Sp summand or GL ray inside the admissible-branching
/// decomposition of the basic module; never exceeds one.
inline int hom_dimension(const ModuleDescriptor& v, const ModuleDescriptor& big,
                         Subgroup sg) {
  if (!(big.kind() == ModuleDescriptor::Kind::Aq && big.param() == 0))
    throw std::invalid_argument("hom_dimension: unsupported pair (big must be aq:0)");
  SummandId id{};
  if (sg == Subgroup::H1) {
    if (v.kind() != ModuleDescriptor::Kind::SpSummand)
      throw std::invalid_argument("hom_dimension: the symplectic side takes sp:<n>");
    id = SummandId::sp_cone(3 + v.param());
  } else {
    if (v.kind() != ModuleDescriptor::Kind::GlRay)
      throw std::invalid_argument("hom_dimension: the complex linear side takes glray:<x>,<y>");
    id = SummandId::gl_ray(v.ray_min());
  }
  long long N = std::max<long long>(6, id.minimal_type().hw.norm() + 2);
  RestrictionResult res = restrict_module(big, U2Variant::V1, N);
  DecompositionCertificate cert = decompose(
      res.table, sg == Subgroup::H1 ? PeelFamily::SpCones : PeelFamily::GlRays, N);
  long long mult = cert.multiplicity_of(id);
  if (mult > 1)
    throw std::logic_error("hom_dimension: multiplicity exceeded one");
  return static_cast<int>(mult);
}

/// The two mirror statements tying the symplectic and complex linear
/// decompositions of the basic module together: the minimal GL summand's
/// type set enumerates the Sp summands, and the minimal Sp summand's type
/// set enumerates the GL summands.  Returns the verified bijections.
struct GridReport {
  VerificationReport report;
  std::vector<std::pair<U2Irrep, SummandId>> diagonal_to_cone;
  std::vector<std::pair<U2Irrep, SummandId>> cone_key_to_ray;
};

inline GridReport pseudo_dual_grid(long long N) {
  if (N < 6) throw std::invalid_argument("pseudo_dual_grid: region must be >= 6");
  GridReport grid;
  grid.report.target = "grid";
  auto clause = [&grid](const std::string& name, bool pass, const std::string& expected,
                        const std::string& actual) {
    grid.report.clauses.push_back({name, pass, expected, actual});
  };

  RestrictionResult res = restrict_module(ModuleDescriptor::aq(0), U2Variant::V1, N);
  DecompositionCertificate sp_cert = decompose(res.table, PeelFamily::SpCones, N);
  DecompositionCertificate gl_cert = decompose(res.table, PeelFamily::GlRays, N);

  auto key_set = [](const MultTable<U2Irrep>& t) {
    std::set<Weight> s;
    for (const auto& [k, m] : t.entries()) {
      (void)m;
      s.insert(k.hw);
    }
    return s;
  };
  auto first_difference = [](const std::set<Weight>& a, const std::set<Weight>& b) {
    for (const Weight& w : a)
      if (!b.count(w)) return w.str() + " only on one side";
    for (const Weight& w : b)
      if (!a.count(w)) return w.str() + " only on one side";
    return std::string("none");
  };

  // side one: K-types of the minimal GL summand vs minimal types of the
  // Sp summands
  {
    std::set<Weight> ray_keys = key_set(h_summand_table(
        ModuleDescriptor::gl_ray(U2Irrep(U2Variant::V1, {3, 3})), N));
    std::set<Weight> sp_minimals;
    for (const auto& [s, m] : sp_cert.summands) {
      (void)m;
      sp_minimals.insert(s.minimal_type().hw);
    }
    bool equal = ray_keys == sp_minimals;
    clause("minimal-gl-ktypes-enumerate-sp-summands", equal, "equal sets",
           equal ? "equal" : first_difference(ray_keys, sp_minimals));
    if (equal)
      for (const Weight& w : ray_keys)
        grid.diagonal_to_cone.push_back(
            {U2Irrep(U2Variant::V1, w), SummandId::sp_cone(w.x)});
    bool floors_match = true;
    for (const auto& [key, id] : grid.diagonal_to_cone)
      if (id.floor != key.hw.x || key.hw.x != key.hw.y) floors_match = false;
    clause("diagonal-key-heads-matching-cone", floors_match,
           "(3+j,3+j) heads the floor 3+j cone", floors_match ? "ok" : "mismatch");
  }

  // side two: K-types of the minimal Sp summand vs minimal types of the
  // GL rays
  {
    std::set<Weight> cone_keys =
        key_set(h_summand_table(ModuleDescriptor::sp_summand(0), N));
    std::set<Weight> ray_minimals;
    for (const auto& [s, m] : gl_cert.summands) {
      (void)m;
      ray_minimals.insert(s.minimal_type().hw);
    }
    bool equal = cone_keys == ray_minimals;
    clause("minimal-sp-ktypes-enumerate-gl-summands", equal, "equal sets",
           equal ? "equal" : first_difference(cone_keys, ray_minimals));
    if (equal)
      for (const Weight& w : cone_keys)
        grid.cone_key_to_ray.push_back(
            {U2Irrep(U2Variant::V1, w), SummandId::gl_ray(w)});

    long long lattice_count = 0;
    for (long long x = 3; x <= N; ++x)
      for (long long y = 3; y <= N; ++y)
        if ((x + y) % 2 == 0) ++lattice_count;
    bool counts = static_cast<long long>(cone_keys.size()) == lattice_count &&
                  static_cast<long long>(ray_minimals.size()) == lattice_count;
    clause("counts-agree", counts, std::to_string(lattice_count),
           std::to_string(cone_keys.size()) + " keys, " +
               std::to_string(ray_minimals.size()) + " minimal types");
  }

  return grid;
}

/// Full branching verification: restrict, peel, and check every clause the
/// decomposition is supposed to satisfy for the given module and subgroup.
struct BranchingReport {
  VerificationReport report;
  DecompositionCertificate certificate;
};

inline BranchingReport verify_branching(const ModuleDescriptor& big, Subgroup sg,
                                        long long N) {
  using Kind = ModuleDescriptor::Kind;
  bool supported = (big.kind() == Kind::Aq &&
                    (big.param() == 0 || big.param() == -2 || big.param() == -3)) ||
                   big.kind() == Kind::Ladder;
  if (!supported)
    throw std::invalid_argument("verify_branching: unsupported module '" +
                                big.text() + "'");
  if (N < 6) throw std::invalid_argument("verify_branching: region must be >= 6");

  BranchingReport out;
  out.report.target = "branching " + big.text() + " | " + subgroup_name(sg);
  auto clause = [&out](const std::string& name, bool pass, const std::string& expected,
                       const std::string& actual) {
    out.report.clauses.push_back({name, pass, expected, actual});
  };

  RestrictionResult res = restrict_module(big, U2Variant::V1, N);
  clause("restriction-multiplicities-finite", res.all_finite(), "no infinite keys",
         res.all_finite() ? "all finite"
                          : res.infinite.front().key.hw.str() + " infinite");

  PeelFamily family = sg == Subgroup::H1 ? PeelFamily::SpCones : PeelFamily::GlRays;
  out.certificate = decompose(res.table, family, N);
  const DecompositionCertificate& cert = out.certificate;

  clause("residual-zero", cert.exact, "residual vanishes on region",
         cert.exact ? "exact" : "leftover at " +
                                    cert.residual.entries().begin()->first.hw.str());
  clause("multiplicity-one", cert.multiplicity_free(), "every summand once",
         cert.multiplicity_free() ? "multiplicity free" : "repeated summand");

  // re-expanding the certificate must reproduce the table
  {
    MultTable<U2Irrep> rebuilt(N);
    for (const auto& [s, m] : cert.summands) {
      MultTable<U2Irrep> support = summand_support(s, N);
      for (const auto& [k, mult] : support.entries()) rebuilt.add(k, m * mult);
    }
    for (const auto& [k, m] : cert.residual.entries()) rebuilt.add(k, m);
    bool same = rebuilt == res.table;
    clause("certificate-reexpands-to-table", same, "equal tables",
           same ? "equal" : "different");
  }

  auto floor_list = [&cert]() {
    std::vector<long long> fs;
    for (const auto& [s, m] : cert.summands) {
      (void)m;
      fs.push_back(s.floor);
    }
    std::sort(fs.begin(), fs.end());
    return fs;
  };
  auto contiguous = [](const std::vector<long long>& fs, long long from, long long to) {
    if (static_cast<long long>(fs.size()) != to - from + 1) return false;
    for (size_t i = 0; i < fs.size(); ++i)
      if (fs[i] != from + static_cast<long long>(i)) return false;
    return true;
  };
  auto minimal_type_set = [&cert]() {
    std::set<Weight> s;
    for (const auto& [id, m] : cert.summands) {
      (void)m;
      s.insert(id.minimal_type().hw);
    }
    return s;
  };

  if (big.kind() == Kind::Aq && big.param() == 0 && sg == Subgroup::H1) {
    std::vector<long long> fs = floor_list();
    bool ok = contiguous(fs, 3, N);
    clause("cone-floors-contiguous", ok,
           "floors 3.." + std::to_string(N) + " (summands sp:0..sp:" +
               std::to_string(N - 3) + ")",
           ok ? std::to_string(fs.size()) + " cones" : "gap or extra");
    bool diag = true;
    for (long long n = 3; n <= N; ++n)
      if (res.table.at(U2Irrep(U2Variant::V1, {n, n})) != n - 2) diag = false;
    clause("diagonal-multiplicity-n-minus-2", diag, "mult(n,n) = n-2 for 3<=n",
           diag ? "ok" : "mismatch");
  }

  if (big.kind() == Kind::Aq && sg == Subgroup::H1p) {
    long long low = big.param() == 0 ? 3 : (big.param() == -2 ? 1 : 0);
    std::set<Weight> expect;
    for (long long x = low; x <= N; ++x)
      for (long long y = low; y <= N; ++y)
        if ((x + y) % 2 == 0) expect.insert({x, y});
    bool ok = minimal_type_set() == expect;
    clause("ray-minimal-types", ok,
           "{(x,y): x,y >= " + std::to_string(low) + ", x+y even}",
           ok ? "equal" : "different");
  }

  if (big.kind() == Kind::Aq && big.param() == 0 && sg == Subgroup::H1p) {
    // the same set enumerated the way the tensor-product restriction
    // produces it: (3+m1+m2+i, 3+m1+m2-i) with -m2 <= i <= m2
    std::set<Weight> tensor_list;
    for (long long m1 = 0; 3 + m1 <= N; ++m1)
      for (long long m2 = 0; 3 + m1 + m2 <= N; ++m2)
        for (long long i = -m2; i <= m2; ++i) {
          Weight w{3 + m1 + m2 + i, 3 + m1 + m2 - i};
          if (w.norm() <= N) tensor_list.insert(w);
        }
    bool ok = minimal_type_set() == tensor_list;
    clause("minimal-types-match-tensor-list", ok, "equal sets",
           ok ? "equal" : "different");
  }

  if (big.kind() == Kind::Ladder && sg == Subgroup::H1) {
    bool ok = cert.summands.size() == 1 &&
              cert.summands.front().first == SummandId::sp_cone(0) &&
              cert.summands.front().second == 1;
    clause("single-spherical-cone", ok, "one cone with floor 0",
           ok ? "ok" : "different");
  }

  if (big.kind() == Kind::Ladder && sg == Subgroup::H1p) {
    std::set<Weight> expect;
    for (long long t = 0; 2 * t <= N; ++t) {
      expect.insert({2 * t, 0});
      expect.insert({0, 2 * t});
    }
    bool ok = minimal_type_set() == expect;
    clause("axis-ray-minimal-types", ok, "{(2t,0)} and {(0,2t)}",
           ok ? "equal" : "different");
  }

  if (big.kind() == Kind::Aq && big.param() == -2 && sg == Subgroup::H1) {
    bool ok = contiguous(floor_list(), 1, N);
    clause("cone-floors-from-one", ok, "floors 1.." + std::to_string(N),
           ok ? "ok" : "gap or extra");
  }

  if (big.kind() == Kind::Aq && big.param() == -3 && sg == Subgroup::H1) {
    bool ok = contiguous(floor_list(), 0, N);
    clause("cone-floors-from-zero", ok, "floors 0.." + std::to_string(N),
           ok ? "ok" : "gap or extra");

    // factorwise consistency: the reducible member's cones are exactly the
    // factors' cones side by side
    auto factors = composition_factors(big);
    MultTable<Weight> parent = ktypes(big, N);
    MultTable<Weight> f0 = ktypes(factors[0], N);
    MultTable<Weight> f1 = ktypes(factors[1], N);
    bool partition = true;
    for (long long x = -N; x <= N; ++x)
      for (long long y = -N; y <= N; ++y)
        if (parent.at({x, y}) != f0.at({x, y}) + f1.at({x, y})) partition = false;
    clause("factor-ktype-partition", partition, "parent = factor sum pointwise",
           partition ? "ok" : "mismatch");

    DecompositionCertificate c0 = decompose(
        restrict_module(factors[0], U2Variant::V1, N).table, PeelFamily::SpCones, N);
    DecompositionCertificate c1 = decompose(
        restrict_module(factors[1], U2Variant::V1, N).table, PeelFamily::SpCones, N);
    std::vector<std::pair<SummandId, long long>> merged = c0.summands;
    merged.insert(merged.end(), c1.summands.begin(), c1.summands.end());
    std::sort(merged.begin(), merged.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    bool same = merged == cert.summands && c0.exact && c1.exact;
    clause("factorwise-cones-merge", same, "factor cones = parent cones",
           same ? "ok" : "different");
  }

  return out;
}

}  // namespace sl4branch
