#include "symcore/lp.h"

#include <algorithm>
#include <functional>
#include <optional>
#include <random>

#include "doctest.h"

namespace symcore {
namespace {

// Solves a square system exactly by Gaussian elimination; nullopt if singular.
std::optional<RatVector> SolveSquare(std::vector<RatVector> m, RatVector rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col].IsZero()) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(m[pivot], m[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col].IsZero()) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[r][k] -= f * m[col][k];
      rhs[r] -= f * rhs[col];
    }
  }
  RatVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
  return x;
}

// Best objective over all basic feasible solutions (vertices); the feasible
// region must be pointed and bounded. nullopt when no vertex is feasible.
std::optional<Rational> VertexEnumerationMax(const std::vector<Row>& rows, const RatVector& c) {
  const std::size_t n = c.size();
  std::optional<Rational> best;
  std::vector<std::size_t> pick(n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t from) {
    if (depth == n) {
      std::vector<RatVector> m;
      RatVector rhs;
      for (std::size_t i : pick) {
        m.push_back(rows[i].a);
        rhs.push_back(rows[i].b);
      }
      auto x = SolveSquare(m, rhs);
      if (!x) return;
      for (const Row& row : rows) {
        if (Dot(row.a, *x) > row.b) return;
      }
      const Rational value = Dot(c, *x);
      if (!best || value > *best) best = value;
      return;
    }
    for (std::size_t i = from; i < rows.size(); ++i) {
      pick[depth] = i;
      rec(depth + 1, i + 1);
    }
  };
  rec(0, 0);
  return best;
}

std::vector<Row> RandomBoxedRows(std::mt19937_64& rng, int n, int extra) {
  std::uniform_int_distribution<std::int64_t> coef(-5, 5);
  std::uniform_int_distribution<std::int64_t> rhs(-3, 12);
  std::vector<Row> rows;
  for (int k = 0; k < n; ++k) {
    RatVector e(n);
    e[k] = 1;
    rows.push_back(Row{e, 6});
    e[k] = -1;
    rows.push_back(Row{e, 6});
  }
  for (int r = 0; r < extra; ++r) {
    Row row{RatVector(n), Rational(rhs(rng), 2)};
    for (auto& v : row.a) v = Rational(coef(rng), 1 + (r % 3));
    rows.push_back(row);
  }
  return rows;
}

TEST_CASE("documented LP outcomes") {
  const LpResult interval =
      LpSolve(std::vector<Row>{Row{{-1}, -3}, Row{{Rational(3, 2)}, 5}}, RatVector{1}, Sense::kMaximize);
  REQUIRE(interval.status == LpStatus::kOptimal);
  CHECK(interval.optimum == Rational(10, 3));
  CHECK(interval.point == RatVector{Rational(10, 3)});

  CHECK(LpSolve(std::vector<Row>{Row{{1}, 1}, Row{{-1}, -2}}, RatVector{1}, Sense::kMaximize)
            .status == LpStatus::kInfeasible);

  const LpResult unbounded = LpSolve(std::vector<Row>{Row{{-1}, 0}}, RatVector{1}, Sense::kMaximize);
  CHECK(unbounded.status == LpStatus::kUnbounded);
  REQUIRE(unbounded.ray.size() == 1);
  CHECK(unbounded.ray[0].Sign() > 0);

  const LpResult min_interval =
      LpSolve(std::vector<Row>{Row{{-1}, -3}, Row{{Rational(3, 2)}, 5}}, RatVector{1}, Sense::kMinimize);
  CHECK(min_interval.optimum == Rational(3));
}

TEST_CASE("no rows") {
  CHECK(LpSolve(std::vector<Row>{}, RatVector{0, 0}, Sense::kMaximize).status == LpStatus::kOptimal);
  CHECK(LpSolve(std::vector<Row>{}, RatVector{0, 1}, Sense::kMaximize).status ==
        LpStatus::kUnbounded);
}

TEST_CASE("degenerate cycling example terminates at the optimum") {
  // Beale's example, a classic cycle for the largest-coefficient rule.
  const std::vector<Row> rows = {
      Row{{Rational(1, 4), -8, -1, 9}, 0},
      Row{{Rational(1, 2), -12, Rational(-1, 2), 3}, 0},
      Row{{0, 0, 1, 0}, 1},
      Row{{-1, 0, 0, 0}, 0},
      Row{{0, -1, 0, 0}, 0},
      Row{{0, 0, -1, 0}, 0},
      Row{{0, 0, 0, -1}, 0},
  };
  const LpResult r = LpSolve(rows, RatVector{Rational(-3, 4), 20, Rational(-1, 2), 6},
                             Sense::kMinimize);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.optimum == Rational(-5, 4));
}

TEST_CASE("random LPs: exact feasibility, vertex-enumeration optimum and duality") {
  std::mt19937_64 rng(424242);
  std::uniform_int_distribution<std::int64_t> cdist(-4, 4);
  int optimal = 0;
  int infeasible = 0;
  for (int iter = 0; iter < 120; ++iter) {
    const int n = 1 + iter % 3;
    const std::vector<Row> rows = RandomBoxedRows(rng, n, 3 + iter % 4);
    RatVector c(n);
    for (auto& v : c) v = cdist(rng);
    const LpResult r = LpSolve(rows, c, Sense::kMaximize);
    const auto oracle = VertexEnumerationMax(rows, c);
    if (!oracle) {
      CHECK(r.status == LpStatus::kInfeasible);
      ++infeasible;
      continue;
    }
    REQUIRE(r.status == LpStatus::kOptimal);
    ++optimal;
    CHECK(r.optimum == *oracle);
    CHECK(r.optimum == Dot(c, r.point));
    for (const Row& row : rows) CHECK((row.b - Dot(row.a, r.point)).Sign() >= 0);

    // Dual: min ⟨b, y⟩ s.t. Aᵀy = c, y >= 0.
    StandardFormProblem dual;
    dual.matrix.assign(n, RatVector(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (int k = 0; k < n; ++k) dual.matrix[k][i] = rows[i].a[k];
      dual.objective.push_back(rows[i].b);
    }
    dual.rhs = c;
    dual.sense = Sense::kMinimize;
    const LpResult d = SolveStandardForm(dual);
    REQUIRE(d.status == LpStatus::kOptimal);
    CHECK(d.optimum == r.optimum);
  }
  CHECK(optimal > 50);
  CHECK(infeasible > 0);
}

TEST_CASE("row generation agrees with the direct tableau") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> cdist(-6, 6);
  for (int iter = 0; iter < 12; ++iter) {
    const int n = 2 + iter % 3;
    const std::vector<Row> rows = RandomBoxedRows(rng, n, 300);
    RatVector c(n);
    for (auto& v : c) v = cdist(rng);
    const LpResult direct = SolveInequalityForm(rows, c, Sense::kMaximize);
    LpSolver solver(rows, n, LpOptions{.direct_row_limit = 20});
    const LpResult generated = solver.Solve(c, Sense::kMaximize);
    REQUIRE(direct.status == generated.status);
    if (direct.status == LpStatus::kOptimal) CHECK(direct.optimum == generated.optimum);
    CHECK(solver.stats().rows_generated < rows.size());
  }
  // Unbounded detection through rays: only the lower box rows exist.
  std::vector<Row> rows;
  for (int r = 0; r < 200; ++r) rows.push_back(Row{{-1, Rational(-r, 7)}, Rational(r)});
  LpSolver solver(rows, 2, LpOptions{.direct_row_limit = 10});
  const LpResult r = solver.Solve(RatVector{1, 0}, Sense::kMaximize);
  REQUIRE(r.status == LpStatus::kUnbounded);
  for (const Row& row : rows) CHECK(Dot(row.a, r.ray).Sign() <= 0);
  CHECK(r.ray[0].Sign() > 0);
}

TEST_CASE("floating start agrees with the exact tableau") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<std::int64_t> cdist(-6, 6);
  int optimal = 0;
  for (int iter = 0; iter < 400; ++iter) {
    const int n = 2 + iter % 4;
    const std::vector<Row> rows = RandomBoxedRows(rng, n, 2 + iter % 17);
    RatVector c(n);
    for (auto& v : c) v = cdist(rng);
    const Sense sense = iter % 3 == 0 ? Sense::kMinimize : Sense::kMaximize;
    const LpResult fast = SolveInequalityForm(rows, c, sense);
    const LpResult exact = SolveInequalityForm(rows, c, sense, nullptr, false);
    REQUIRE(fast.status == exact.status);
    if (exact.status != LpStatus::kOptimal) continue;
    ++optimal;
    CHECK(fast.optimum == exact.optimum);
    CHECK(Dot(c, fast.point) == fast.optimum);
    for (const Row& row : rows) CHECK(Dot(row.a, fast.point) <= row.b);
  }
  CHECK(optimal > 250);

  // Differences far below double resolution must still come out exactly.
  const Rational tiny(1, 1'000'000'000'000'000);
  const std::vector<Row> box = {Row{{1, 0}, 1}, Row{{0, 1}, 1}, Row{{1, 1}, 2 - tiny},
                                Row{{-1, 0}, 0}, Row{{0, -1}, 0}};
  CHECK(SolveInequalityForm(box, RatVector{1, 1}, Sense::kMaximize).optimum == 2 - tiny);
  const std::vector<Row> simplex = {Row{{1, 1}, 1}, Row{{-1, 0}, 0}, Row{{0, -1}, 0}};
  const LpResult tilt = SolveInequalityForm(simplex, RatVector{1, 1 + tiny}, Sense::kMaximize);
  CHECK(tilt.optimum == 1 + tiny);
  CHECK(tilt.point == RatVector{0, 1});
}

// Closure of rows under all permutations inside the blocks {0,1,2} and {3,4}.
std::vector<Row> PermutationClosure(const std::vector<Row>& rows) {
  std::vector<Row> out;
  std::vector<int> p = {0, 1, 2};
  std::vector<int> q = {3, 4};
  for (const Row& row : rows) {
    std::sort(p.begin(), p.end());
    do {
      std::sort(q.begin(), q.end());
      do {
        Row image{RatVector(5), row.b};
        for (int k = 0; k < 3; ++k) image.a[p[k]] = row.a[k];
        for (int k = 0; k < 2; ++k) image.a[q[k]] = row.a[3 + k];
        if (std::find(out.begin(), out.end(), image) == out.end()) out.push_back(image);
      } while (std::next_permutation(q.begin(), q.end()));
    } while (std::next_permutation(p.begin(), p.end()));
  }
  return out;
}

TEST_CASE("partitioned separation reports a violated row exactly when one exists") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::int64_t> coef(-4, 4);
  std::uniform_int_distribution<std::int64_t> rhs(-2, 10);
  std::uniform_int_distribution<std::int64_t> point(-6, 6);
  const std::vector<std::vector<int>> parts = {{0, 1, 2}, {3, 4}};
  int reported = 0;
  for (int iter = 0; iter < 300; ++iter) {
    std::vector<Row> base;
    for (int r = 0; r < 4; ++r) {
      Row row{RatVector(5), rhs(rng)};
      for (auto& v : row.a) v = Rational(coef(rng), 1 + r % 2);
      base.push_back(row);
    }
    // Closed sets use the class maximizer; open ones also need the member scan.
    const std::vector<Row> rows = iter % 2 == 0 ? PermutationClosure(base) : base;
    ConstraintMatrix plain(rows, 5);
    ConstraintMatrix grouped(rows, 5);
    grouped.SetPartition(parts);
    RatVector x(5);
    for (auto& v : x) v = Rational(point(rng), 1 + iter % 3);
    for (bool homogeneous : {false, true}) {
      const std::vector<std::size_t> all = homogeneous ? plain.Ascending(x) : plain.Violated(x);
      std::vector<double> amounts;
      const std::vector<std::size_t> some =
          homogeneous ? grouped.Ascending(x, &amounts) : grouped.Violated(x, &amounts);
      CHECK(all.empty() == some.empty());
      CHECK(amounts.size() == some.size());
      CHECK(std::is_sorted(some.begin(), some.end()));
      for (std::size_t i : some) CHECK(std::find(all.begin(), all.end(), i) != all.end());
      reported += !some.empty();
    }
  }
  CHECK(reported > 100);

  ConstraintMatrix m(std::vector<Row>{}, 3);
  CHECK_THROWS_AS(m.SetPartition({{0, 1}, {1, 2}}), Error);
  CHECK_THROWS_AS(m.SetPartition({{0, 3}}), Error);
}

TEST_CASE("constraint matrix evaluates exactly, including huge rows") {
  std::vector<Row> rows = {Row{{Rational(1, 3), 2}, Rational(7, 2)},
                           Row{{Rational::Parse("100000000000000000000001"), 0},
                               Rational::Parse("100000000000000000000001")}};
  ConstraintMatrix m(rows, 2);
  CHECK(m.Satisfies(IntVector{1, 1}));
  CHECK(m.FirstViolated(IntVector{2, 2}) == 0);
  CHECK(m.FirstViolated(IntVector{2, 0}) == 1);
  CHECK(m.Violated(RatVector{1, Rational(1, 2)}).empty());
  CHECK(m.Violated(RatVector{Rational(3, 2), 2}) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("hull membership") {
  const std::vector<IntVector> seg = {{2, 0}, {0, 2}};
  CHECK(HullMembership(IntVector{1, 1}, seg));
  CHECK_FALSE(HullMembership(IntVector{1, 0}, seg));
  CHECK_THROWS_AS(HullMembership(IntVector{1, 0}, std::vector<IntVector>{}), Error);
  CHECK_THROWS_AS(HullMembership(IntVector{1, 0}, std::vector<IntVector>{{1, 2, 3}}), Error);

  // Cyclic shifts of (1,7,0,-7): the unique affine combination giving
  // (1,0,0,0) has a negative weight, so it is outside the hull.
  const std::vector<IntVector> shifts = {{1, 7, 0, -7}, {7, 0, -7, 1}, {0, -7, 1, 7}, {-7, 1, 7, 0}};
  std::vector<RatVector> system(4, RatVector(4));
  for (int k = 0; k < 4; ++k) {
    for (int g = 0; g < 4; ++g) system[k][g] = shifts[g][k];
  }
  const auto lambda = SolveSquare(system, RatVector{1, 0, 0, 0});
  REQUIRE(lambda.has_value());
  bool nonnegative = true;
  for (const Rational& l : *lambda) nonnegative = nonnegative && l.Sign() >= 0;
  CHECK_FALSE(nonnegative);
  CHECK_FALSE(HullMembership(IntVector{1, 0, 0, 0}, shifts));
  CHECK(HullMembership(IntVector{0, -7, 1, 7}, shifts));
}

}  // namespace
}  // namespace symcore
