#ifndef SYMCORE_GEN_H_
#define SYMCORE_GEN_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "symcore/model.h"

namespace symcore {

struct GenParams {
  std::vector<int> block_sizes;
  std::uint64_t seed = 0;
  std::size_t row_cap = kDefaultRowCap;
};

// Uniform integer in [lo, hi] by rejection on the raw 64-bit stream, so the
// sequence does not depend on the standard library's distributions.
std::int64_t UniformInt(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);

// Random block-symmetric instance over S_{k_1} × ... × S_{k_d}, drawn from
// mt19937_64 seeded with params.seed. For each of 3n base rows: one scale
// factor f_i in [1, 20] per block, then per coordinate (row-major) a draw in
// [0, 9] where 0 means a zero coefficient and otherwise a value in [5, 15];
// the coordinate coefficient is f_i times that value and b = ⌊0.95 ⟨a, 1⟩⌋.
// Then one objective value in [1, 10] per block. The base rows are closed
// under the block product and deduplicated; -x_i <= 0 and -Σ x_i <= -1 are
// appended. Throws Error when the closure exceeds params.row_cap.
Instance GenerateInstance(const GenParams& params);

}  // namespace symcore

#endif  // SYMCORE_GEN_H_
