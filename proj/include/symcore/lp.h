#ifndef SYMCORE_LP_H_
#define SYMCORE_LP_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "symcore/model.h"
#include "symcore/rational.h"

namespace symcore {

enum class Sense { kMaximize, kMinimize };
enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string ToString(LpStatus status);

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  Rational optimum;  // when optimal
  RatVector point;   // when optimal
  RatVector ray;     // when unbounded: improving direction with A·ray <= 0
};

// Rows scaled to int64 coefficients where that is possible, for fast exact
// evaluation of many rows at integral (or common-denominator) points. Rows that
// do not fit fall back to rational arithmetic.
class ConstraintMatrix {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  explicit ConstraintMatrix(std::span<const Row> rows, int n);

  std::size_t size() const { return rows_.size(); }
  int n() const { return n_; }
  const Row& row(std::size_t i) const { return rows_[i]; }

  // Index of the first row violated by x, or npos.
  std::size_t FirstViolated(std::span<const std::int64_t> x) const;
  bool Satisfies(std::span<const std::int64_t> x) const { return FirstViolated(x) == npos; }

  // Indices of the rows with ⟨a, x⟩ > b (a subset after SetPartition, see
  // there), ascending. When amounts is given it receives
  // ⟨a, x⟩ - b per returned row, rounded to double for ranking only.
  std::vector<std::size_t> Violated(std::span<const Rational> x,
                                    std::vector<double>* amounts = nullptr) const;
  // Indices of all rows with ⟨a, d⟩ > 0, amounts as above.
  std::vector<std::size_t> Ascending(std::span<const Rational> d,
                                     std::vector<double>* amounts = nullptr) const;

  // Groups rows whose coefficients agree after sorting inside each part. From
  // then on Violated and Ascending report, per group, only the member with the
  // largest ⟨a, x⟩ (or every positive member when that one is not among the
  // rows), so their result is empty exactly when no row is positive. Pays off
  // when the rows are closed under permutations within the parts. Throws Error
  // unless the parts are disjoint coordinate sets.
  void SetPartition(const std::vector<std::vector<int>>& parts);

 private:
  template <typename T>
  void SortParts(std::span<T> v) const;
  static std::size_t RowHash(const Row& row);
  std::size_t FindRow(const Row& row) const;  // npos when absent

  template <bool kHomogeneous>
  std::vector<std::size_t> Positive(std::span<const Rational> x, std::vector<double>* amounts) const;

  std::span<const Row> rows_;
  int n_;
  std::vector<std::int64_t> coeffs_;  // row-major n_ per row, valid when fast_[i]
  std::vector<std::int64_t> rhs_;
  std::vector<std::int64_t> scale_;  // the integer factor applied to row i
  std::vector<char> fast_;
  // Floating-point copies used only to skip clearly satisfied rows; finite
  // and moderate in magnitude where approx_[i].
  std::vector<double> approx_coeffs_;
  std::vector<double> approx_rhs_;
  std::vector<char> approx_;
  std::vector<std::vector<int>> parts_;
  std::vector<std::vector<std::size_t>> class_members_;
  std::vector<double> class_coeffs_;  // part-sorted, n_ per class
  std::vector<double> class_rhs_;
  std::vector<char> class_approx_;
  std::vector<Row> class_keys_;
  std::unordered_multimap<std::size_t, std::size_t> row_lookup_;
  std::size_t coeff_bits_ = 0;  // over the fast rows
  std::size_t point_bits_ = 0;  // admissible size of scaled points
};

struct LpOptions {
  // Above this many rows the solver switches to row generation.
  std::size_t direct_row_limit = 120;
  // Rows added per row-generation round (0 picks max(8, n)).
  std::size_t rows_per_round = 4;
  // When a solve starts with more working rows than this, rows slack at the
  // previous optimum are dropped (0 picks 4n + 16).
  std::size_t working_set_limit = 0;
  // Passed to ConstraintMatrix::SetPartition when nonempty.
  std::vector<std::vector<int>> coordinate_partition;
};

struct LpStats {
  std::size_t solves = 0;
  std::size_t tableau_solves = 0;
  std::size_t pivots = 0;
  std::size_t rows_generated = 0;
  std::size_t rows_dropped = 0;
};

// max/min ⟨c, x⟩ s.t. Ax <= b over free x. Keeps its row-generation working
// set between calls, so repeated solves over the same base rows (e.g. from a
// branch-and-bound tree) stay cheap. Not thread-safe.
class LpSolver {
 public:
  LpSolver(std::span<const Row> rows, int n, LpOptions options = {});

  LpResult Solve(std::span<const Rational> objective, Sense sense,
                 std::span<const Row> extra_rows = {});

  const LpStats& stats() const { return stats_; }
  const ConstraintMatrix& matrix() const { return matrix_; }

 private:
  LpResult SolveSubset(std::span<const Rational> objective, Sense sense,
                       std::span<const Row> extra_rows);
  void AddToWorkingSet(const std::vector<std::size_t>& candidates,
                       const std::vector<double>& amounts);
  void TrimWorkingSet();

  std::span<const Row> rows_;
  int n_;
  LpOptions options_;
  ConstraintMatrix matrix_;
  std::vector<std::size_t> working_;
  std::vector<char> in_working_;
  RatVector last_optimum_;
  LpStats stats_;
};

// One-shot convenience wrapper around LpSolver.
LpResult LpSolve(std::span<const Row> rows, std::span<const Rational> objective, Sense sense);

// Inequality form solved directly by the two-phase tableau (no row
// generation). With floating_start, a floating-point solve proposes an optimal
// basis first; it is used only when its point and multipliers verify exactly,
// otherwise the exact tableau runs. Exposed for tests.
LpResult SolveInequalityForm(std::span<const Row> rows, std::span<const Rational> objective,
                             Sense sense, std::size_t* pivots = nullptr,
                             bool floating_start = true);

// optimize ⟨c, y⟩ s.t. M y = r, y >= 0.
struct StandardFormProblem {
  std::vector<RatVector> matrix;
  RatVector rhs;
  RatVector objective;  // may be empty for a pure feasibility problem
  Sense sense = Sense::kMaximize;
};

LpResult SolveStandardForm(const StandardFormProblem& problem, std::size_t* pivots = nullptr);

// True iff candidate is a convex combination of the generators, decided by
// LP feasibility in the convex multipliers. Throws Error on an empty
// generator list or a dimension mismatch.
bool HullMembership(std::span<const Rational> candidate, const std::vector<RatVector>& generators);
bool HullMembership(std::span<const std::int64_t> candidate,
                    const std::vector<IntVector>& generators);

}  // namespace symcore

#endif  // SYMCORE_LP_H_
