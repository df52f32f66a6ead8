#include <doctest.h>

#include <map>

#include "sl4branch/branching.hpp"

using namespace sl4branch;

namespace {

MultTable<Weight> expand_constituents(
    const std::vector<std::pair<U2Irrep, long long>>& parts, long long region) {
  MultTable<Weight> t(region);
  for (const auto& [r, m] : parts)
    for (const Weight& w : u2_weight_string(r)) t.add(w, m);
  return t;
}

}  // namespace

TEST_CASE("restriction of single so4 irreps") {
  // the diagonal type (3,3) stays irreducible under V1 ...
  auto v1 = restrict_so4(SO4Irrep(3, 3), U2Variant::V1);
  REQUIRE(v1.size() == 1);
  CHECK(v1[0].first == U2Irrep(U2Variant::V1, {3, 3}));
  CHECK(v1[0].second == 1);

  // ... and splits into seven characters under V2
  auto v2 = restrict_so4(SO4Irrep(3, 3), U2Variant::V2);
  REQUIRE(v2.size() == 7);
  for (long long d = -3; d <= 3; ++d)
    CHECK(std::count(v2.begin(), v2.end(),
                     std::make_pair(U2Irrep(U2Variant::V2, {d, d}), 1LL)) == 1);

  auto v1b = restrict_so4(SO4Irrep(5, 3), U2Variant::V1);
  REQUIRE(v1b.size() == 3);
  CHECK(v1b[0].first.hw == Weight{3, 5});
  CHECK(v1b[1].first.hw == Weight{4, 4});
  CHECK(v1b[2].first.hw == Weight{5, 3});

  for (U2Variant v : {U2Variant::V1, U2Variant::V2}) {
    auto t = restrict_so4(SO4Irrep(0, 0), v);
    REQUIRE(t.size() == 1);
    CHECK(t[0].first.dim() == 1);
    CHECK(t[0].first.center() == 0);
  }
}

TEST_CASE("restriction agrees with the peeling oracle on the full sweep") {
  for (long long a = 0; a <= 12; ++a)
    for (long long b = -a; b <= a; ++b)
      for (U2Variant v : {U2Variant::V1, U2Variant::V2}) {
        SO4Irrep r(a, b);
        auto fast = restrict_so4(r, v);
        auto slow = restrict_so4_oracle(r, v);
        CHECK(fast == slow);

        // dimension conservation
        long long total = 0;
        for (const auto& [c, m] : fast) total += m * c.dim();
        CHECK(total == r.dim());

        // the constituents' weight strings reassemble the character
        CHECK(expand_constituents(fast, a) == so4_weight_table(r));
      }
}

TEST_CASE("oracle guard") {
  CHECK_THROWS_AS(restrict_so4_oracle(SO4Irrep(17, 0), U2Variant::V1),
                  std::invalid_argument);
}

TEST_CASE("flip equivariance of restriction") {
  for (long long a = 0; a <= 12; ++a)
    for (long long b = -a; b <= a; ++b) {
      auto lhs = restrict_so4(SO4Irrep(a, b).flipped(), U2Variant::V2);
      auto rhs = restrict_so4(SO4Irrep(a, b), U2Variant::V1);
      for (auto& [r, m] : rhs) r = r.flipped();
      std::sort(rhs.begin(), rhs.end());
      CHECK(lhs == rhs);
    }
}

TEST_CASE("module restriction to V1 matches the k-type-by-k-type route") {
  long long N = 14;
  for (const ModuleDescriptor& d :
       {ModuleDescriptor::aq(0), ModuleDescriptor::aq(-2), ModuleDescriptor::aq(-3),
        ModuleDescriptor::ladder()}) {
    RestrictionResult res = restrict_module(d, U2Variant::V1, N);
    CHECK(res.all_finite());

    // independent route: restrict every K-type in a larger box and clip.
    // Constituent spins are bounded by the K-type norm, so K-types of norm
    // <= 2N + 6 cover every key of norm <= N.
    MultTable<U2Irrep> direct(N);
    MultTable<Weight> kt = ktypes(d, 2 * N + 6);
    for (const auto& [w, m] : kt.entries()) {
      SO4Irrep r(w.x, w.y);
      for (const auto& [c, mult] : restrict_so4(r, U2Variant::V1))
        if (c.hw.norm() <= N) direct.add(c, m * mult);
    }
    CHECK(res.table == direct);
  }
}

TEST_CASE("restriction multiplicities of the aq module under V1") {
  RestrictionResult res = restrict_module(ModuleDescriptor::aq(0), U2Variant::V1, 12);
  CHECK(res.table.at(U2Irrep(U2Variant::V1, {5, 5})) == 3);
  CHECK(res.table.at(U2Irrep(U2Variant::V1, {7, 3})) == 1);
  CHECK(res.table.at(U2Irrep(U2Variant::V1, {3, 3})) == 1);
  CHECK(res.table.at(U2Irrep(U2Variant::V1, {4, 4})) == 2);
  // closed form: 0 on odd coordinate sums, min(x,y)-2 on even ones
  for (long long x = -12; x <= 12; ++x)
    for (long long y = -12; y <= 12; ++y) {
      if (x + y < 0) continue;
      U2Irrep key(U2Variant::V1, {x, y});
      long long expect =
          (x + y) % 2 == 0 ? std::max<long long>(0, std::min(x, y) - 2) : 0;
      CHECK(res.table.at(key) == expect);
    }
}

TEST_CASE("restriction of the aq module under V2 has infinite keys") {
  RestrictionResult res = restrict_module(ModuleDescriptor::aq(0), U2Variant::V2, 6);
  CHECK_FALSE(res.all_finite());
  bool trivial_listed = false;
  for (const InfiniteKey& k : res.infinite) {
    CHECK(k.direction == "m1");
    if (k.key == U2Irrep(U2Variant::V2, {0, 0})) trivial_listed = true;
    // infinite keys carry no table entry
    CHECK(res.table.at(k.key) == 0);
  }
  CHECK(trivial_listed);
}

TEST_CASE("admissibility dichotomy") {
  auto aq = ModuleDescriptor::aq(0);
  auto aqp = ModuleDescriptor::aq_prime(0);

  AdmissibilityVerdict v = admissibility(aq, U2Variant::V1);
  CHECK(v.admissible);

  v = admissibility(aq, U2Variant::V2);
  CHECK_FALSE(v.admissible);
  REQUIRE(v.witness.has_value());
  CHECK(*v.witness == U2Irrep(U2Variant::V2, {0, 0}));  // trivial character
  CHECK(v.direction == "m1");

  v = admissibility(aqp, U2Variant::V1);
  CHECK_FALSE(v.admissible);
  REQUIRE(v.witness.has_value());
  CHECK(*v.witness == U2Irrep(U2Variant::V1, {0, 0}));

  CHECK(admissibility(aqp, U2Variant::V2).admissible);

  // the whole aq family behaves the same way
  for (long long m : {-3LL, -1LL, 4LL}) {
    CHECK(admissibility(ModuleDescriptor::aq(m), U2Variant::V1).admissible);
    CHECK_FALSE(admissibility(ModuleDescriptor::aq(m), U2Variant::V2).admissible);
  }

  CHECK(admissibility(ModuleDescriptor::ladder(), U2Variant::V1).admissible);
  CHECK(admissibility(ModuleDescriptor::ladder(), U2Variant::V2).admissible);

  CHECK_THROWS_AS(admissibility(ModuleDescriptor::sp_summand(0), U2Variant::V1),
                  std::invalid_argument);
}

TEST_CASE("prime restriction is the flip of the base restriction") {
  long long N = 10;
  RestrictionResult base = restrict_module(ModuleDescriptor::aq(-2), U2Variant::V2, N);
  RestrictionResult prime = restrict_module(ModuleDescriptor::aq_prime(-2), U2Variant::V1, N);
  CHECK(prime.table == base.table.flipped());
  CHECK(prime.infinite.size() == base.infinite.size());
}

TEST_CASE("module restriction rejects summand descriptors") {
  CHECK_THROWS_AS(restrict_module(ModuleDescriptor::sp_summand(1), U2Variant::V1, 5),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      restrict_module(ModuleDescriptor::gl_ray(U2Irrep(U2Variant::V1, {3, 3})),
                      U2Variant::V1, 5),
      std::invalid_argument);
}
