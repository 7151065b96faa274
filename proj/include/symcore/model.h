#ifndef SYMCORE_MODEL_H_
#define SYMCORE_MODEL_H_

#include <compare>
#include <cstddef>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "symcore/group.h"
#include "symcore/rational.h"

namespace symcore {

// ⟨a, x⟩ <= b.
struct Row {
  RatVector a;
  Rational b;

  bool operator==(const Row&) const = default;
  std::strong_ordering operator<=>(const Row& other) const;
  std::size_t Hash() const;
  std::string ToString() const;
};

struct RowHash {
  std::size_t operator()(const Row& row) const { return row.Hash(); }
};

// Exact-membership index over a row vector owned elsewhere. The vector must
// outlive the index and may only grow through Insert.
class RowIndex {
 public:
  explicit RowIndex(const std::vector<Row>* rows);
  bool Contains(const Row& row) const;
  // Appends row to the underlying vector unless present; returns true if added.
  bool Insert(std::vector<Row>& rows, Row row);

 private:
  const std::vector<Row>* rows_;
  std::unordered_multimap<std::size_t, std::size_t> buckets_;
};

// Removes duplicate rows keeping the first occurrence.
std::vector<Row> DeduplicateRows(std::vector<Row> rows);

// max ⟨c, x⟩ s.t. Ax <= b, x integral, with an attached symmetry group.
struct Instance {
  int n = 0;
  std::vector<Row> rows;
  RatVector objective;
  BlockGroup group;

  bool operator==(const Instance&) const = default;
};

// Throws Error on dimension mismatches between rows, objective and group.
void CheckDimensions(const Instance& inst);

nlohmann::json RationalToJson(const Rational& value);
Rational RationalFromJson(const nlohmann::json& value, const std::string& where);

nlohmann::json GroupToJson(const BlockGroup& group);
BlockGroup GroupFromJson(const nlohmann::json& value, int n);

// Standalone group file: {"n", "blocks", "extra_generators"}. Missing blocks
// mean all-trivial; a missing n is taken from the generators or blocks.
BlockGroup LoadGroup(const std::filesystem::path& path);

nlohmann::json InstanceToJson(const Instance& inst);
// Validates, normalizes the group and removes duplicate rows.
Instance InstanceFromJson(const nlohmann::json& value);

Instance LoadInstance(const std::filesystem::path& path);
void SaveInstance(const Instance& inst, const std::filesystem::path& path);

struct SymmetryViolation {
  enum class Kind { kRow, kObjective };
  Kind kind = Kind::kRow;
  Permutation generator;
  int row = -1;      // index of the offending row when kind == kRow
  Row missing_row;   // the permuted row that is absent

  std::string Describe() const;
};

struct SymmetryReport {
  bool is_symmetric = true;
  std::vector<SymmetryViolation> witnesses;
};

// Checks that each block generator maps the row set onto itself and fixes the
// objective exactly.
SymmetryReport ValidateSymmetry(const Instance& inst);

// Throws Error with the first witness unless the instance is symmetric.
void RequireSymmetric(const Instance& inst);

constexpr std::size_t kDefaultRowCap = 5'000'000;

// Orbit of a single row under the block product (extra generators ignored),
// every distinct image once.
std::vector<Row> RowOrbit(const Row& row, const BlockGroup& group,
                          std::size_t cap = kDefaultRowCap);

// Row set closed under the block product, duplicates removed, first
// occurrences kept in order. Throws Error when the closure exceeds the cap.
Instance OrbitClosureRows(const Instance& inst, std::size_t cap = kDefaultRowCap);

}  // namespace symcore

#endif  // SYMCORE_MODEL_H_
