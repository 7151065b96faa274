#include "symcore/gen.h"

#include <limits>
#include <string>

namespace symcore {

std::int64_t UniformInt(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw Error("empty draw range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(rng());
  // Largest multiple of span that fits; draws above it are rejected.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return lo + static_cast<std::int64_t>(v % span);
}

Instance GenerateInstance(const GenParams& params) {
  if (params.block_sizes.empty()) throw Error("no blocks given");
  for (int k : params.block_sizes) {
    if (k < 1) throw Error("block size " + std::to_string(k) + " is not positive");
  }
  Instance inst;
  inst.group = BlockGroup::SymmetricBlocks(params.block_sizes);
  inst.n = inst.group.n();
  const int n = inst.n;
  std::mt19937_64 rng(params.seed);

  for (int r = 0; r < 3 * n; ++r) {
    std::vector<std::int64_t> scale;
    for (int i = 0; i < inst.group.d(); ++i) scale.push_back(UniformInt(rng, 1, 20));
    Row row{RatVector(n), 0};
    std::int64_t sum = 0;
    for (int i = 0; i < inst.group.d(); ++i) {
      for (int c : inst.group.block(i).coords) {
        const std::int64_t v = UniformInt(rng, 0, 9) == 0 ? 0 : UniformInt(rng, 5, 15);
        row.a[c] = scale[i] * v;
        sum += scale[i] * v;
      }
    }
    // ⌊0.95 s⌋ for s >= 0.
    row.b = (95 * sum) / 100;
    inst.rows.push_back(std::move(row));
  }
  inst.objective.assign(n, Rational(0));
  for (int i = 0; i < inst.group.d(); ++i) {
    const Rational ci = UniformInt(rng, 1, 10);
    for (int c : inst.group.block(i).coords) inst.objective[c] = ci;
  }

  inst = OrbitClosureRows(inst, params.row_cap);
  RowIndex index(&inst.rows);
  for (int j = 0; j < n; ++j) {
    Row bound{RatVector(n), 0};
    bound.a[j] = -1;
    index.Insert(inst.rows, std::move(bound));
  }
  index.Insert(inst.rows, Row{RatVector(n, Rational(-1)), -1});
  return inst;
}

}  // namespace symcore
