#include "symcore/solve.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <queue>
#include <thread>
#include <utility>

#include "symcore/core.h"

namespace symcore {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Candidate {
  Rational value;
  FiberIndex s;
};

RatVector ToRationalVector(const IntVector& x) {
  RatVector out;
  out.reserve(x.size());
  for (std::int64_t v : x) out.emplace_back(v);
  return out;
}

// Index of the first candidate whose representative is feasible, or
// candidates.size(). Workers claim indices in order and stop once a feasible
// index below their next claim is known, so every index before the answer is
// tested exactly once.
std::size_t FirstFeasible(const std::vector<Candidate>& candidates, const BlockGroup& group,
                          const ConstraintMatrix& rows, int threads, std::size_t* tested) {
  const std::size_t none = candidates.size();
  if (threads <= 1) {
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      ++*tested;
      if (FiberFeasible(group, rows, candidates[i].s)) return i;
    }
    return none;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{none};
  std::atomic<std::size_t> count{0};
  auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= none || i > best.load()) return;
      count.fetch_add(1);
      if (!FiberFeasible(group, rows, candidates[i].s)) continue;
      std::size_t current = best.load();
      while (i < current && !best.compare_exchange_weak(current, i)) {
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  *tested += count.load();
  return best.load();
}

Rational Floor(const Rational& v) {
  if (v.IsInteger()) return v;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v.Numerator().get_mpz_t(), v.Denominator().get_mpz_t());
  return Rational(mpq_class(q));
}

struct Node {
  Rational bound;
  std::size_t seq = 0;
  std::vector<Row> bounds;
  RatVector point;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.seq > b.seq;
  }
};

// Adds x_j <= value (upper) or -x_j <= -value, replacing a looser bound of the
// same direction.
std::vector<Row> WithBound(const std::vector<Row>& bounds, int n, int j, bool upper,
                           const Rational& value) {
  RatVector a(n);
  a[j] = upper ? 1 : -1;
  std::vector<Row> out;
  out.reserve(bounds.size() + 1);
  for (const Row& row : bounds) {
    if (row.a != a) out.push_back(row);
  }
  out.push_back(Row{std::move(a), upper ? value : -value});
  return out;
}

}  // namespace

std::string ToString(SolveStatus status) {
  return status == SolveStatus::kOptimal ? "optimal" : "infeasible";
}

Solution SolveFiber(const Instance& inst, const FiberSolveOptions& options) {
  const auto start = Clock::now();
  CheckDimensions(inst);
  const ProjectedPolyhedron proj = ProjectPolyhedron(inst);
  const RatVector c = BlockCoefficients(inst.group, inst.objective);

  Solution sol;
  EnumerationStats enum_stats;
  std::vector<Candidate> candidates;
  ForEachLatticePoint(
      proj,
      [&](const FiberIndex& s) {
        Rational value;
        for (int i = 0; i < proj.d; ++i) {
          if (s.sums[i] != 0 && !c[i].IsZero()) value += c[i] * Rational(s.sums[i]);
        }
        candidates.push_back(Candidate{std::move(value), s});
      },
      EnumerationOptions{.fiber_cap = options.fiber_cap}, &enum_stats);
  // Enumeration order is lexicographic, so a stable sort keeps ties ordered by s.
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
  sol.stats.fibers_enumerated = candidates.size();
  sol.stats.enumeration_lp_solves = enum_stats.lp_solves;
  sol.stats.enumeration_seconds = SecondsSince(start);

  const auto test_start = Clock::now();
  const ConstraintMatrix rows(inst.rows, inst.n);
  const std::size_t hit =
      FirstFeasible(candidates, inst.group, rows, options.threads, &sol.stats.fibers_tested);
  sol.stats.testing_seconds = SecondsSince(test_start);
  if (hit < candidates.size()) {
    sol.status = SolveStatus::kOptimal;
    sol.point = ToRationalVector(FiberRep(inst.group, candidates[hit].s).z);
    sol.objective = Dot(inst.objective, sol.point);
    sol.fiber = candidates[hit].s;
  }
  sol.stats.total_seconds = SecondsSince(start);
  return sol;
}

Solution SolveBB(const std::vector<Row>& rows, const RatVector& objective,
                 const std::vector<bool>& integer_vars, const BbOptions& options) {
  const auto start = Clock::now();
  const int n = static_cast<int>(objective.size());
  if (static_cast<int>(integer_vars.size()) != n) throw Error("integer_vars length mismatch");
  for (const Row& row : rows) {
    if (static_cast<int>(row.a.size()) != n) throw Error("row length mismatch");
  }
  // With an integral objective over integral variables, bounds can be floored.
  bool integral_objective = true;
  for (int j = 0; j < n; ++j) {
    if (!objective[j].IsZero() && (!integer_vars[j] || !objective[j].IsInteger())) {
      integral_objective = false;
    }
  }

  LpSolver solver(rows, n, options.lp);
  Solution sol;
  std::optional<Rational> incumbent;
  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  std::size_t seq = 0;

  auto evaluate = [&](std::vector<Row> bounds) {
    if (options.node_limit != 0 && sol.stats.nodes >= options.node_limit) {
      throw Error("branch and bound exceeds the node limit of " +
                  std::to_string(options.node_limit));
    }
    ++sol.stats.nodes;
    LpResult r = solver.Solve(objective, Sense::kMaximize, bounds);
    if (r.status == LpStatus::kInfeasible) return;
    if (r.status == LpStatus::kUnbounded) throw Error("LP relaxation is unbounded");
    const Rational bound = integral_objective ? Floor(r.optimum) : r.optimum;
    if (incumbent && bound <= *incumbent) return;
    bool integral = true;
    for (int j = 0; j < n && integral; ++j) integral = !integer_vars[j] || r.point[j].IsInteger();
    if (integral) {
      incumbent = r.optimum;
      sol.point = std::move(r.point);
      return;
    }
    open.push(Node{bound, seq++, std::move(bounds), std::move(r.point)});
  };

  evaluate({});
  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (incumbent && node.bound <= *incumbent) continue;
    int branch = -1;
    Rational best_distance;
    for (int j = 0; j < n; ++j) {
      if (!integer_vars[j] || node.point[j].IsInteger()) continue;
      const Rational frac = node.point[j] - Floor(node.point[j]);
      const Rational other = Rational(1) - frac;
      const Rational distance = frac < other ? frac : other;
      if (branch < 0 || distance > best_distance) {
        branch = j;
        best_distance = distance;
      }
    }
    const Rational down = Floor(node.point[branch]);
    evaluate(WithBound(node.bounds, n, branch, true, down));
    evaluate(WithBound(node.bounds, n, branch, false, down + Rational(1)));
  }

  if (incumbent) {
    sol.status = SolveStatus::kOptimal;
    sol.objective = *incumbent;
  }
  const LpStats& lp = solver.stats();
  sol.stats.lp_solves = lp.solves;
  sol.stats.lp_pivots = lp.pivots;
  sol.stats.rows_generated = lp.rows_generated;
  sol.stats.total_seconds = SecondsSince(start);
  return sol;
}

Solution SolveBB(const Instance& inst, const BbOptions& options) {
  CheckDimensions(inst);
  BbOptions opts = options;
  if (opts.lp.coordinate_partition.empty()) {
    for (const Block& block : inst.group.blocks()) opts.lp.coordinate_partition.push_back(block.coords);
  }
  return SolveBB(inst.rows, inst.objective, std::vector<bool>(inst.n, true), opts);
}

}  // namespace symcore
