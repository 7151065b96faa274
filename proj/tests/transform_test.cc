#include "symcore/transform.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "symcore/core.h"
#include "symcore/gen.h"
#include "test_instances.h"

namespace symcore {
namespace {

RatVector Values(std::initializer_list<std::int64_t> v) { return ToRational(IntVector(v)); }

// All block-feasible assignments with t in [lo, hi]: s binary with at most one 1.
void ForEachAssignment(const TransformedInstance& ti, std::int64_t lo, std::int64_t hi,
                       const std::function<void(const RatVector&)>& visit) {
  RatVector values(ti.num_vars());
  std::function<void(int)> rec = [&](int block) {
    if (block == static_cast<int>(ti.blocks.size())) {
      visit(values);
      return;
    }
    const TransformedBlock& b = ti.blocks[block];
    for (std::int64_t t = lo; t <= hi; ++t) {
      values[b.t] = t;
      for (int one = -1; one < static_cast<int>(b.s.size()); ++one) {
        for (std::size_t j = 0; j < b.s.size(); ++j) values[b.s[j]] = static_cast<int>(j) == one;
        rec(block + 1);
      }
    }
  };
  rec(0);
}

bool Feasible(const std::vector<Row>& rows, std::span<const Rational> x) {
  for (const Row& row : rows) {
    if (Dot(row.a, x) > row.b) return false;
  }
  return true;
}

TEST_CASE("block sorting") {
  const BlockGroup s3 = BlockGroup::SymmetricBlocks({3});
  CHECK(SortBlockDescending(Values({2, 5, 3}), s3) == Values({5, 3, 2}));
  CHECK(SortBlockDescending(Values({0, 0, -1}), s3) == Values({0, 0, -1}));
  CHECK(SortBlockDescending(Values({1, 4, 2, 9}), BlockGroup::SymmetricBlocks({2, 2})) ==
        Values({4, 1, 9, 2}));
  CHECK(SortBlockDescending(Values({1, 4, 2}), BlockGroup::Trivial(3)) == Values({1, 4, 2}));
}

TEST_CASE("running example transform") {
  const TransformedInstance ti = TransformInstance(testing::RunningExample());
  CHECK(ti.names == std::vector<std::string>{"t0", "s0_1"});
  const std::vector<Row> expected = {Row{{-2, -1}, -3}, Row{{3, 2}, 5}, Row{{0, 1}, 1},
                                     Row{{0, -1}, 0}};
  CHECK(std::set<Row>(ti.rows.begin(), ti.rows.end()) ==
        std::set<Row>(expected.begin(), expected.end()));
  CHECK(ti.rows.size() == 4);
  CHECK(std::is_sorted(ti.rows.begin(), ti.rows.end()));
  CHECK(ti.model_rows == 2);
  CHECK(ti.structural_rows == 2);
  CHECK(ti.objective == Values({2, 1}));

  const Solution sol = SolveTransformed(testing::RunningExample());
  REQUIRE(sol.status == SolveStatus::kOptimal);
  CHECK(sol.objective == 3);
  CHECK(sol.point == Values({2, 1}));

  Instance asym = testing::RunningExample();
  asym.rows.pop_back();
  CHECK_THROWS_AS(TransformInstance(asym), Error);
}

TEST_CASE("single-coordinate bounds and constant rows") {
  Instance inst = testing::ZeroBox(BlockGroup::SymmetricBlocks({4}));
  const TransformedInstance ti = TransformInstance(inst);
  // x_j <= 0 sorts to (1,0,0,0) and -x_j <= 0 to (0,0,0,-1).
  CHECK(std::find(ti.rows.begin(), ti.rows.end(), Row{Values({-1, 0, 0, 0}), 0}) != ti.rows.end());
  CHECK(std::find(ti.rows.begin(), ti.rows.end(), Row{Values({1, 1, 1, 1}), 0}) != ti.rows.end());
  CHECK(ti.model_rows == 2);
  CHECK(ti.objective == Values({4, 1, 2, 3}));

  Instance constant;
  constant.n = 3;
  constant.group = BlockGroup::SymmetricBlocks({3});
  constant.rows = {Row{{2, 2, 2}, 7}};
  constant.objective = Values({0, 0, 0});
  const std::vector<Row> rows = TransformInstance(constant).rows;
  CHECK(std::find(rows.begin(), rows.end(), Row{Values({6, 2, 4}), 7}) != rows.end());
}

TEST_CASE("lifting") {
  const TransformedInstance s2 = TransformInstance(testing::RunningExample());
  CHECK(LiftSolution(s2, Values({1, 1})) == IntVector{2, 1});
  CHECK(LiftSolution(s2, Values({0, 0})) == IntVector{0, 0});

  const TransformedInstance s3 = TransformInstance(testing::ZeroBox(BlockGroup::SymmetricBlocks({3})));
  CHECK(LiftSolution(s3, Values({0, 0, 1})) == IntVector{1, 1, 0});
  CHECK(LiftSolution(s3, Values({-2, 1, 0})) == IntVector{-1, -2, -2});
  CHECK_THROWS_AS(LiftSolution(s3, Values({0, 1, 1})), Error);
  CHECK_THROWS_AS(LiftSolution(s3, Values({0, 2, 0})), Error);
  CHECK_THROWS_AS(LiftSolution(s3, RatVector{Rational(1, 2), 0, 0}), Error);
  CHECK_THROWS_AS(LiftSolution(s3, Values({0, 0})), Error);

  // Lifts are exactly the fiber representatives.
  const BlockGroup g = BlockGroup::SymmetricBlocks({3, 2});
  const TransformedInstance ti = TransformInstance(testing::ZeroBox(g));
  ForEachAssignment(ti, -2, 2, [&](const RatVector& v) {
    const IntVector z = LiftSolution(ti, v);
    CHECK(FiberRep(g, FiberOf(g, z)).z == z);
  });
}

TEST_CASE("sorted rows dominate on lifted points") {
  std::mt19937_64 rng(17);
  const BlockGroup g = BlockGroup::SymmetricBlocks({3, 2, 1});
  const TransformedInstance ti = TransformInstance(testing::ZeroBox(g));
  for (int iter = 0; iter < 400; ++iter) {
    RatVector a(g.n());
    for (auto& v : a) v = UniformInt(rng, -9, 9);
    RatVector values(ti.num_vars());
    for (const TransformedBlock& b : ti.blocks) {
      values[b.t] = UniformInt(rng, -3, 3);
      const std::int64_t one = UniformInt(rng, -1, static_cast<std::int64_t>(b.s.size()) - 1);
      if (one >= 0) values[b.s[one]] = 1;
    }
    const RatVector z = ToRational(LiftSolution(ti, values));
    CHECK(Dot(a, z) <= Dot(SortBlockDescending(a, g), z));
  }
}

TEST_CASE("transformed feasible set equals the feasible representatives") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const std::vector<int> shape = seed % 2 == 0 ? std::vector<int>{2, 2} : std::vector<int>{3, 1};
    const Instance inst = GenerateInstance(GenParams{shape, seed});
    const TransformedInstance ti = TransformInstance(inst);
    const ConstraintMatrix m(inst.rows, inst.n);
    std::set<IntVector> lifted;
    ForEachAssignment(ti, 0, 6, [&](const RatVector& v) {
      if (Feasible(ti.rows, v)) lifted.insert(LiftSolution(ti, v));
    });
    std::set<IntVector> representatives;
    for (const FiberIndex& s : EnumerateLatticePoints(ProjectPolyhedron(inst))) {
      if (auto z = FiberFeasible(inst.group, m, s)) representatives.insert(*z);
    }
    CHECK(lifted == representatives);
    CHECK(SolveTransformed(inst).objective == SolveFiber(inst).objective);
  }
}

TEST_CASE("LP export") {
  std::ostringstream out;
  WriteLp(TransformInstance(testing::RunningExample()), out);
  const std::string text = out.str();
  CHECK(text.find("Maximize\n obj: 2 t0 + s0_1\n") != std::string::npos);
  CHECK(text.find(" r1: - 2 t0 - s0_1 <= -3\n") != std::string::npos);
  CHECK(text.find("Bounds\n t0 free\n") != std::string::npos);
  CHECK(text.find("Generals\n t0\n") != std::string::npos);
  CHECK(text.find("Binaries\n s0_1\n") != std::string::npos);
  CHECK(text.find(" r4:") != std::string::npos);
  CHECK(text.find(" r5:") == std::string::npos);
  CHECK(text.substr(text.size() - 4) == "End\n");

  Instance half = testing::ZeroBox(BlockGroup::Trivial(2));
  half.rows = {Row{{Rational(1, 2), Rational(1, 3)}, Rational(5, 6)}};
  half.objective = {Rational(1, 4), 1};
  std::ostringstream h;
  WriteLp(half, h);
  CHECK(h.str().find(" r1: 3 x0 + 2 x1 <= 5\n") != std::string::npos);
  CHECK(h.str().find("\\ objective scaled by 4\n") != std::string::npos);
  CHECK(h.str().find(" obj: x0 + 4 x1\n") != std::string::npos);

  half.rows.clear();
  std::ostringstream empty;
  WriteLp(half, empty);
  CHECK(empty.str().find("Subject To") == std::string::npos);
  CHECK(empty.str().find("Maximize") != std::string::npos);

  const auto path = std::filesystem::temp_directory_path() / "symcore_transform_test.lp";
  ExportLp(TransformInstance(testing::RunningExample()), path);
  std::ifstream in(path);
  std::stringstream file;
  file << in.rdbuf();
  CHECK(file.str() == text);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(ExportLp(half, "/nonexistent-dir/x.lp"), Error);
}

}  // namespace
}  // namespace symcore
