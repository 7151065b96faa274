#ifndef SYMCORE_PROJECT_ENUM_H_
#define SYMCORE_PROJECT_ENUM_H_

#include <cstddef>
#include <functional>
#include <vector>

#include "symcore/group.h"
#include "symcore/model.h"

namespace symcore {

// Σ_i ā_i s_i <= b in block-sum coordinates, ā_i the average of the original
// coefficients over block i.
struct ProjectedPolyhedron {
  int d = 0;
  std::vector<Row> rows;
};

// Projects rows without checking symmetry; the result describes the
// projection only when the row set is closed under the group.
ProjectedPolyhedron ProjectRows(const std::vector<Row>& rows, const BlockGroup& group);

// Throws Error when the instance is not symmetric.
ProjectedPolyhedron ProjectPolyhedron(const Instance& inst);

struct EnumerationOptions {
  std::size_t fiber_cap = 10'000'000;
};

struct EnumerationStats {
  std::size_t lp_solves = 0;
  std::size_t nodes = 0;
  std::size_t fibers = 0;
};

// Visits Φ(P) ∩ ℤ^d in lexicographic order, each point once, by depth-first
// search with exact per-level bounds. Throws Error("unbounded ...") when the
// projection is unbounded and when the fiber cap is exceeded.
void ForEachLatticePoint(const ProjectedPolyhedron& proj,
                         const std::function<void(const FiberIndex&)>& visit,
                         const EnumerationOptions& options = {},
                         EnumerationStats* stats = nullptr);

std::vector<FiberIndex> EnumerateLatticePoints(const ProjectedPolyhedron& proj,
                                               const EnumerationOptions& options = {},
                                               EnumerationStats* stats = nullptr);

}  // namespace symcore

#endif  // SYMCORE_PROJECT_ENUM_H_
