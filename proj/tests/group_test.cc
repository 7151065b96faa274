#include "symcore/group.h"

#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"

namespace symcore {
namespace {

BlockGroup Blocks(int n, std::vector<Block> blocks) { return BlockGroup(n, std::move(blocks)); }

TEST_CASE("parsing normalizes and validates blocks") {
  BlockGroup two_s5 = Blocks(10, {{BlockKind::kSym, {0, 1, 2, 3, 4}}, {BlockKind::kSym, {5, 6, 7, 8, 9}}});
  CHECK(two_s5.d() == 2);
  CHECK(two_s5.n() == 10);

  BlockGroup a2 = Blocks(2, {{BlockKind::kAlt, {0, 1}}});
  REQUIRE(a2.d() == 2);
  CHECK(a2.block(0) == Block{BlockKind::kId, {0}});
  CHECK(a2.block(1) == Block{BlockKind::kId, {1}});
  CHECK(a2.BlockGenerators().empty());

  CHECK_THROWS_AS(Blocks(3, {{BlockKind::kSym, {0, 1}}, {BlockKind::kSym, {0, 2}}}), Error);
  CHECK_THROWS_AS(Blocks(3, {{BlockKind::kSym, {0, 3}}, {BlockKind::kId, {1}}}), Error);
  CHECK_THROWS_AS(Blocks(3, {{BlockKind::kSym, {0, 1}}}), Error);
  CHECK_THROWS_AS(BlockGroup(3, {{BlockKind::kSym, {0, 1, 2}}}, {{0, 0, 1}}), Error);
}

TEST_CASE("block generators generate the block product") {
  auto group_order = [](const BlockGroup& g) {
    IntVector z(g.n());
    for (int i = 0; i < g.n(); ++i) z[i] = i;  // distinct entries: orbit size = |G|
    return OrbitOfVector(g.BlockGenerators(), z).size();
  };
  CHECK(group_order(BlockGroup::SymmetricBlocks({3, 2})) == 12);
  CHECK(group_order(BlockGroup::SymmetricBlocks({4})) == 24);
  CHECK(group_order(Blocks(4, {{BlockKind::kAlt, {0, 1, 2, 3}}})) == 12);
  CHECK(group_order(Blocks(5, {{BlockKind::kAlt, {0, 1, 2, 3, 4}}})) == 60);
  CHECK(group_order(Blocks(3, {{BlockKind::kAlt, {0, 1, 2}}})) == 3);
  CHECK(group_order(BlockGroup::Trivial(3)) == 1);
}

TEST_CASE("projection onto the fixed space") {
  const BlockGroup g = BlockGroup::SymmetricBlocks({2, 2});
  FixedProjection p = ProjectToFixed(g, IntVector{1, 3, 2, 2});
  CHECK(p.fixed_point == RatVector{2, 2, 2, 2});
  CHECK(p.sums == RatVector{4, 4});

  FixedProjection zero = ProjectToFixed(g, IntVector{0, 0, 0, 0});
  CHECK(zero.fixed_point == RatVector{0, 0, 0, 0});
  CHECK(zero.sums == RatVector{0, 0});

  const BlockGroup h = BlockGroup::SymmetricBlocks({3, 1});
  FixedProjection q = ProjectToFixed(h, IntVector{1, 0, 0, 5});
  CHECK(q.fixed_point == RatVector{Rational(1, 3), Rational(1, 3), Rational(1, 3), 5});
  CHECK(q.sums == RatVector{1, 5});

  CHECK_THROWS_AS(ProjectToFixed(g, IntVector{1, 2}), Error);
}

TEST_CASE("projection properties on random points") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> coord(-9, 9);
  const BlockGroup g = BlockGroup::SymmetricBlocks({3, 1, 2});
  const auto gens = g.BlockGenerators();
  for (int iter = 0; iter < 300; ++iter) {
    IntVector x(g.n());
    for (auto& v : x) v = coord(rng);
    const FixedProjection p = ProjectToFixed(g, x);
    // Idempotence.
    CHECK(ProjectToFixed(g, p.fixed_point).fixed_point == p.fixed_point);
    // Squared norm of the projection equals Σ s_i^2 / k_i.
    Rational lhs = Dot(p.fixed_point, p.fixed_point);
    Rational rhs;
    for (int i = 0; i < g.d(); ++i) {
      rhs += p.sums[i] * p.sums[i] / Rational(static_cast<std::int64_t>(g.block(i).size()));
    }
    CHECK(lhs == rhs);
    // Orbit invariance.
    for (const Permutation& gen : gens) {
      CHECK(ProjectToFixed(g, ApplyPermutation(gen, x)).fixed_point == p.fixed_point);
    }
  }
}

TEST_CASE("orbits of vectors") {
  const auto s3 = BlockGroup::SymmetricBlocks({3}).BlockGenerators();
  auto orbit = OrbitOfVector(s3, {1, 0, 0});
  std::set<IntVector> got(orbit.begin(), orbit.end());
  CHECK(got == std::set<IntVector>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(orbit.size() == 3);

  CHECK(OrbitOfVector({}, {4, 5}) == std::vector<IntVector>{{4, 5}});

  const Permutation four_cycle{3, 0, 1, 2};
  auto cyc = OrbitOfVector({four_cycle}, {1, 7, 0, -7});
  std::set<IntVector> shifts(cyc.begin(), cyc.end());
  CHECK(shifts == std::set<IntVector>{{1, 7, 0, -7}, {7, 0, -7, 1}, {0, -7, 1, 7}, {-7, 1, 7, 0}});

  const auto s6 = BlockGroup::SymmetricBlocks({6}).BlockGenerators();
  CHECK_THROWS_WITH_AS(OrbitOfVector(s6, {1, 2, 3, 4, 5, 6}, 100),
                       doctest::Contains("orbit cap of 100"), Error);
}

TEST_CASE("fiber objective") {
  CHECK(FiberObjective(BlockGroup::SymmetricBlocks({2}), RatVector{1, 1}, FiberIndex{{3}}) ==
        Rational(3));
  CHECK(FiberObjective(BlockGroup::SymmetricBlocks({3, 1}), RatVector{2, 2, 2, 5},
                       FiberIndex{{4, 1}}) == Rational(13));
  CHECK(FiberObjective(BlockGroup::SymmetricBlocks({3, 1}), RatVector{0, 0, 0, 0},
                       FiberIndex{{4, 1}}) == Rational(0));
  CHECK_THROWS_AS(FiberObjective(BlockGroup::SymmetricBlocks({2}), RatVector{1, 2},
                                 FiberIndex{{3}}),
                  Error);
}

}  // namespace
}  // namespace symcore
