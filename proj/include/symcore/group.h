#ifndef SYMCORE_GROUP_H_
#define SYMCORE_GROUP_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "symcore/rational.h"

namespace symcore {

enum class BlockKind { kSym, kAlt, kId };

std::string ToString(BlockKind kind);
BlockKind ParseBlockKind(const std::string& text);

struct Block {
  BlockKind kind = BlockKind::kId;
  std::vector<int> coords;

  std::size_t size() const { return coords.size(); }
  bool operator==(const Block&) const = default;
};

// One-line notation: image of i at position i, 0-based. Acting on a vector x
// the permutation p produces y with y[p[i]] = x[i].
using Permutation = std::vector<int>;

// Integer block sums naming a fiber of the block product.
struct FiberIndex {
  IntVector sums;

  std::size_t size() const { return sums.size(); }
  auto operator<=>(const FiberIndex&) const = default;
};

// Direct product of S_k / A_k / trivial factors acting on disjoint coordinate
// blocks that partition {0, ..., n-1}, plus optional extra permutations that
// only the core-point oracle looks at.
class BlockGroup {
 public:
  BlockGroup() = default;

  // Validates the partition and normalizes A_k with k <= 2 (and S_1) into
  // trivial blocks. Throws Error on overlapping, out-of-range or missing
  // coordinates, and on malformed extra generators.
  BlockGroup(int n, std::vector<Block> blocks, std::vector<Permutation> extra_generators = {});

  // All coordinates in trivial blocks.
  static BlockGroup Trivial(int n);
  // Consecutive blocks of the given sizes; size-1 blocks are trivial.
  static BlockGroup SymmetricBlocks(const std::vector<int>& sizes);

  int n() const { return n_; }
  // Number of blocks; the dimension of the fixed space of the block product.
  int d() const { return static_cast<int>(blocks_.size()); }
  const std::vector<Block>& blocks() const { return blocks_; }
  const Block& block(int i) const { return blocks_[i]; }
  const std::vector<Permutation>& extra_generators() const { return extra_generators_; }
  int block_of(int coord) const { return block_of_[coord]; }

  // Generators of the block product: per S_k block the transposition of its
  // first two coordinates and the k-cycle; per A_k block the standard pair of
  // A_k generators. Empty for a trivial group.
  std::vector<Permutation> BlockGenerators() const;

  // Block generators followed by the extra generators.
  std::vector<Permutation> AllGenerators() const;

  bool operator==(const BlockGroup&) const = default;

 private:
  int n_ = 0;
  std::vector<Block> blocks_;
  std::vector<Permutation> extra_generators_;
  std::vector<int> block_of_;
};

// y[p[i]] = x[i].
template <typename T>
std::vector<T> ApplyPermutation(const Permutation& p, const std::vector<T>& x) {
  std::vector<T> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[p[i]] = x[i];
  return y;
}

void ValidatePermutation(const Permutation& p, int n);

struct FixedProjection {
  RatVector fixed_point;  // block averages spread over each block
  RatVector sums;         // per-block sums
};

// Orthogonal projection onto the fixed space of the block product.
FixedProjection ProjectToFixed(const BlockGroup& group, std::span<const Rational> x);
FixedProjection ProjectToFixed(const BlockGroup& group, std::span<const std::int64_t> x);

// Block sums of an integer point.
FiberIndex FiberOf(const BlockGroup& group, std::span<const std::int64_t> x);

constexpr std::size_t kDefaultOrbitCap = 1'000'000;

// Breadth-first closure of {z} under the generators, in discovery order.
// Throws Error naming the cap when the orbit grows past it.
std::vector<IntVector> OrbitOfVector(const std::vector<Permutation>& generators,
                                     const IntVector& z, std::size_t cap = kDefaultOrbitCap);

// Checks that c is constant on every block; throws Error otherwise.
RatVector BlockCoefficients(const BlockGroup& group, std::span<const Rational> c);

// Σ_i c_i s_i with c_i the common coefficient of block i.
Rational FiberObjective(const BlockGroup& group, std::span<const Rational> c,
                        const FiberIndex& s);

}  // namespace symcore

#endif  // SYMCORE_GROUP_H_
