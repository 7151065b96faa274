#ifndef SYMCORE_TRANSFORM_H_
#define SYMCORE_TRANSFORM_H_

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "symcore/model.h"
#include "symcore/solve.h"

namespace symcore {

// Coefficients sorted non-increasingly inside every block.
RatVector SortBlockDescending(std::span<const Rational> a, const BlockGroup& group);

// Variables of one block: t (integer) and s_1..s_{k-1} (binary). Block
// position l evaluates to t + Σ_{j >= l} s_j.
struct TransformedBlock {
  int t = 0;
  std::vector<int> s;
};

struct TransformedInstance {
  std::vector<std::string> names;
  std::vector<bool> binary;
  std::vector<Row> rows;  // lexicographically sorted
  RatVector objective;
  std::vector<TransformedBlock> blocks;
  BlockGroup group;  // of the original instance
  std::size_t model_rows = 0;
  std::size_t structural_rows = 0;

  int num_vars() const { return static_cast<int>(names.size()); }
};

// Requires a symmetric instance. Each row is block-sorted, duplicates are
// dropped, and the result is rewritten in (t, s); per block with k >= 2 the
// rows Σ_j s_j <= 1 and -s_j <= 0 are added.
TransformedInstance TransformInstance(const Instance& inst);

// The original-space point of a transformed assignment. Throws Error unless
// every t is integral and the s of each block are 0/1 with at most one 1.
IntVector LiftSolution(const TransformedInstance& ti, std::span<const Rational> values);

// Branch and bound on the transformed model, lifted back.
Solution SolveTransformed(const Instance& inst, const BbOptions& options = {});

nlohmann::json TransformedToJson(const TransformedInstance& ti);

// LP text: Maximize / Subject To / Bounds / Generals / Binaries / End. Rows
// and the objective are scaled to integers by the LCM of their denominators.
void WriteLp(const TransformedInstance& ti, std::ostream& out);
void WriteLp(const Instance& inst, std::ostream& out);
void ExportLp(const TransformedInstance& ti, const std::filesystem::path& path);
void ExportLp(const Instance& inst, const std::filesystem::path& path);

}  // namespace symcore

#endif  // SYMCORE_TRANSFORM_H_
