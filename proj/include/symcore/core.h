#ifndef SYMCORE_CORE_H_
#define SYMCORE_CORE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "symcore/group.h"
#include "symcore/lp.h"
#include "symcore/model.h"

namespace symcore {

struct CoreRep {
  IntVector z;
  FiberIndex fiber;
};

// Per block with s_i = q_i k_i + r_i, 0 <= r_i < k_i: q_i + 1 on the first r_i
// block coordinates and q_i on the rest. Alt blocks use the same pattern.
CoreRep FiberRep(const BlockGroup& group, const FiberIndex& s);

// The representative of fiber s when it satisfies every row, else nullopt.
// Assumes the rows are closed under the block product.
std::optional<IntVector> FiberFeasible(const Instance& inst, const FiberIndex& s);
std::optional<IntVector> FiberFeasible(const BlockGroup& group, const ConstraintMatrix& rows,
                                       const FiberIndex& s);

struct CoreOracleOptions {
  std::size_t orbit_cap = kDefaultOrbitCap;
  // Limit on the number of scanned lattice points.
  std::size_t box_cap = 50'000'000;
  // Scan the whole bounding box and decide every non-vertex point by an LP
  // hull test, skipping the affine-hull reduction and simplex pruning.
  bool exhaustive = false;
};

// An integer point of conv(vertices) that is not one of the vertices, or
// nullopt when the hull holds no other lattice points.
std::optional<IntVector> FindNonVertexLatticePoint(const std::vector<IntVector>& vertices,
                                                   const CoreOracleOptions& options = {});

// conv(Γz) ∩ ℤⁿ = Γz for the group generated by gens. Throws Error naming the
// orbit or box cap when exceeded.
bool IsCorePoint(const std::vector<Permutation>& gens, const IntVector& z,
                 const CoreOracleOptions& options = {});

// Core points z with lo <= z <= hi, and ⟨z, 1⟩ = k when k is set, sorted
// lexicographically. The box volume is bounded by options.box_cap.
std::vector<IntVector> EnumerateCorePointsInBox(const std::vector<Permutation>& gens,
                                                const IntVector& lo, const IntVector& hi,
                                                std::optional<std::int64_t> k = std::nullopt,
                                                const CoreOracleOptions& options = {});

// (1, a_2, ..., a_m, 0, -a_2, ..., -a_m) with m = n / 2.
IntVector CyclicExamplePoint(int n, const IntVector& a);

// The cyclic shift i -> i + 1 mod n.
Permutation CyclicShift(int n);

}  // namespace symcore

#endif  // SYMCORE_CORE_H_
