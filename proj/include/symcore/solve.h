#ifndef SYMCORE_SOLVE_H_
#define SYMCORE_SOLVE_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "symcore/lp.h"
#include "symcore/model.h"
#include "symcore/project_enum.h"

namespace symcore {

enum class SolveStatus { kOptimal, kInfeasible };

std::string ToString(SolveStatus status);

struct SolveStats {
  // Fiber solver.
  std::size_t fibers_enumerated = 0;
  std::size_t fibers_tested = 0;
  std::size_t enumeration_lp_solves = 0;
  double enumeration_seconds = 0;
  double testing_seconds = 0;
  // Branch and bound.
  std::size_t nodes = 0;
  std::size_t lp_solves = 0;
  std::size_t lp_pivots = 0;
  std::size_t rows_generated = 0;

  double total_seconds = 0;
};

struct Solution {
  SolveStatus status = SolveStatus::kInfeasible;
  RatVector point;          // when optimal
  Rational objective;       // when optimal
  std::optional<FiberIndex> fiber;  // fiber of the optimum (fiber solver)
  SolveStats stats;
};

struct FiberSolveOptions {
  int threads = 1;
  std::size_t fiber_cap = EnumerationOptions{}.fiber_cap;
};

// Enumerates every fiber of the projection, sorts by objective descending with
// ties to the lexicographically smallest s, and returns the first fiber whose
// representative is feasible. Throws Error on asymmetric instances and
// unbounded projections. The answer does not depend on options.threads.
Solution SolveFiber(const Instance& inst, const FiberSolveOptions& options = {});

struct BbOptions {
  LpOptions lp;
  // 0 means unlimited; exceeding the limit throws Error.
  std::size_t node_limit = 0;
};

// Exact best-first branch and bound for max ⟨c, x⟩ s.t. Ax <= b with
// x_j integral where integer_vars[j]. Branches on a most fractional variable,
// ties to the lowest index; open nodes with equal bound are processed FIFO.
// Throws Error when the LP relaxation is unbounded.
Solution SolveBB(const std::vector<Row>& rows, const RatVector& objective,
                 const std::vector<bool>& integer_vars, const BbOptions& options = {});

// All variables integral. Rows are grouped by the group blocks for faster row
// generation unless options.lp.coordinate_partition is already set.
Solution SolveBB(const Instance& inst, const BbOptions& options = {});

}  // namespace symcore

#endif  // SYMCORE_SOLVE_H_
