#include "symcore/group.h"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace symcore {
namespace {

struct IntVectorHash {
  std::size_t operator()(const IntVector& v) const {
    std::size_t h = v.size();
    for (std::int64_t x : v) {
      h ^= std::hash<std::int64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

Permutation Identity(int n) {
  Permutation p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

// Cyclic permutation sending cycle[j] to cycle[j+1].
Permutation Cycle(int n, const std::vector<int>& cycle) {
  Permutation p = Identity(n);
  for (std::size_t j = 0; j < cycle.size(); ++j) p[cycle[j]] = cycle[(j + 1) % cycle.size()];
  return p;
}

}  // namespace

std::string ToString(BlockKind kind) {
  switch (kind) {
    case BlockKind::kSym:
      return "S";
    case BlockKind::kAlt:
      return "A";
    case BlockKind::kId:
      return "Id";
  }
  return "?";
}

BlockKind ParseBlockKind(const std::string& text) {
  if (text == "S") return BlockKind::kSym;
  if (text == "A") return BlockKind::kAlt;
  if (text == "Id") return BlockKind::kId;
  throw Error("unknown block kind '" + text + "' (expected S, A or Id)");
}

void ValidatePermutation(const Permutation& p, int n) {
  if (static_cast<int>(p.size()) != n) {
    throw Error("permutation of length " + std::to_string(p.size()) + " on " + std::to_string(n) +
                " coordinates");
  }
  std::vector<bool> seen(n, false);
  for (int image : p) {
    if (image < 0 || image >= n || seen[image]) {
      throw Error("not a permutation of 0.." + std::to_string(n - 1));
    }
    seen[image] = true;
  }
}

BlockGroup::BlockGroup(int n, std::vector<Block> blocks, std::vector<Permutation> extra_generators)
    : n_(n), extra_generators_(std::move(extra_generators)), block_of_(n, -1) {
  if (n < 0) throw Error("negative dimension");
  for (const Block& block : blocks) {
    if (block.coords.empty()) throw Error("empty block");
    for (int c : block.coords) {
      if (c < 0 || c >= n) {
        throw Error("block coordinate " + std::to_string(c) + " out of range 0.." +
                    std::to_string(n - 1));
      }
      if (block_of_[c] != -1) throw Error("coordinate " + std::to_string(c) + " in two blocks");
      block_of_[c] = 0;
    }
    const bool trivial = block.kind == BlockKind::kId || block.size() == 1 ||
                         (block.kind == BlockKind::kAlt && block.size() <= 2);
    if (trivial) {
      for (int c : block.coords) blocks_.push_back(Block{BlockKind::kId, {c}});
    } else {
      blocks_.push_back(block);
    }
  }
  for (int c = 0; c < n; ++c) {
    if (block_of_[c] == -1) throw Error("coordinate " + std::to_string(c) + " not in any block");
  }
  for (int i = 0; i < d(); ++i) {
    for (int c : blocks_[i].coords) block_of_[c] = i;
  }
  for (const Permutation& p : extra_generators_) ValidatePermutation(p, n);
}

BlockGroup BlockGroup::Trivial(int n) {
  std::vector<Block> blocks;
  for (int c = 0; c < n; ++c) blocks.push_back(Block{BlockKind::kId, {c}});
  return BlockGroup(n, std::move(blocks));
}

BlockGroup BlockGroup::SymmetricBlocks(const std::vector<int>& sizes) {
  std::vector<Block> blocks;
  int next = 0;
  for (int k : sizes) {
    if (k < 1) throw Error("block size must be at least 1");
    Block block{BlockKind::kSym, {}};
    for (int j = 0; j < k; ++j) block.coords.push_back(next++);
    blocks.push_back(std::move(block));
  }
  return BlockGroup(next, std::move(blocks));
}

std::vector<Permutation> BlockGroup::BlockGenerators() const {
  std::vector<Permutation> gens;
  for (const Block& block : blocks_) {
    const auto& c = block.coords;
    const int k = static_cast<int>(c.size());
    if (block.kind == BlockKind::kSym) {
      gens.push_back(Cycle(n_, {c[0], c[1]}));
      if (k > 2) gens.push_back(Cycle(n_, c));
    } else if (block.kind == BlockKind::kAlt) {
      gens.push_back(Cycle(n_, {c[0], c[1], c[2]}));
      if (k > 3) {
        if (k % 2 == 1) {
          gens.push_back(Cycle(n_, c));
        } else {
          gens.push_back(Cycle(n_, std::vector<int>(c.begin() + 1, c.end())));
        }
      }
    }
  }
  return gens;
}

std::vector<Permutation> BlockGroup::AllGenerators() const {
  std::vector<Permutation> gens = BlockGenerators();
  gens.insert(gens.end(), extra_generators_.begin(), extra_generators_.end());
  return gens;
}

FixedProjection ProjectToFixed(const BlockGroup& group, std::span<const Rational> x) {
  if (static_cast<int>(x.size()) != group.n()) {
    throw Error("projection of a vector of length " + std::to_string(x.size()) +
                " in dimension " + std::to_string(group.n()));
  }
  FixedProjection out{RatVector(x.size()), RatVector(group.d())};
  for (int i = 0; i < group.d(); ++i) {
    const Block& block = group.block(i);
    Rational sum;
    for (int c : block.coords) sum += x[c];
    const Rational avg = sum / Rational(static_cast<std::int64_t>(block.size()));
    for (int c : block.coords) out.fixed_point[c] = avg;
    out.sums[i] = sum;
  }
  return out;
}

FixedProjection ProjectToFixed(const BlockGroup& group, std::span<const std::int64_t> x) {
  const RatVector rx = ToRational(x);
  return ProjectToFixed(group, rx);
}

FiberIndex FiberOf(const BlockGroup& group, std::span<const std::int64_t> x) {
  if (static_cast<int>(x.size()) != group.n()) throw Error("fiber of a vector of wrong length");
  FiberIndex s{IntVector(group.d(), 0)};
  for (int i = 0; i < group.d(); ++i) {
    for (int c : group.block(i).coords) s.sums[i] += x[c];
  }
  return s;
}

std::vector<IntVector> OrbitOfVector(const std::vector<Permutation>& generators,
                                     const IntVector& z, std::size_t cap) {
  for (const Permutation& p : generators) ValidatePermutation(p, static_cast<int>(z.size()));
  std::vector<IntVector> orbit{z};
  std::unordered_set<IntVector, IntVectorHash> seen{z};
  for (std::size_t head = 0; head < orbit.size(); ++head) {
    for (const Permutation& p : generators) {
      IntVector image = ApplyPermutation(p, orbit[head]);
      if (seen.insert(image).second) {
        if (orbit.size() >= cap) {
          throw Error("orbit exceeds the orbit cap of " + std::to_string(cap) + " points");
        }
        orbit.push_back(std::move(image));
      }
    }
  }
  return orbit;
}

RatVector BlockCoefficients(const BlockGroup& group, std::span<const Rational> c) {
  if (static_cast<int>(c.size()) != group.n()) throw Error("objective length mismatch");
  RatVector out(group.d());
  for (int i = 0; i < group.d(); ++i) {
    const Block& block = group.block(i);
    out[i] = c[block.coords[0]];
    for (int coord : block.coords) {
      if (c[coord] != out[i]) {
        throw Error("objective is not constant on block " + std::to_string(i));
      }
    }
  }
  return out;
}

Rational FiberObjective(const BlockGroup& group, std::span<const Rational> c,
                        const FiberIndex& s) {
  if (static_cast<int>(s.size()) != group.d()) throw Error("fiber index length mismatch");
  const RatVector coeffs = BlockCoefficients(group, c);
  Rational value;
  for (int i = 0; i < group.d(); ++i) {
    if (s.sums[i] != 0) value += coeffs[i] * Rational(s.sums[i]);
  }
  return value;
}

}  // namespace symcore
