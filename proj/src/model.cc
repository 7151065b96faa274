#include "symcore/model.h"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace symcore {
namespace {

using nlohmann::json;

// Distinct arrangements of the block values, restricted to even permutations
// of the original arrangement for alternating blocks with distinct values.
std::vector<RatVector> BlockArrangements(const Block& block, const RatVector& values) {
  std::vector<RatVector> out;
  if (block.kind == BlockKind::kId) {
    out.push_back(values);
    return out;
  }
  RatVector sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const bool distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  const bool parity_restricted = block.kind == BlockKind::kAlt && distinct;
  do {
    if (parity_restricted) {
      // Permutation taking values to the arrangement; parity via cycle count.
      const std::size_t k = values.size();
      std::vector<std::size_t> target(k);
      for (std::size_t i = 0; i < k; ++i) {
        target[i] = static_cast<std::size_t>(std::find(sorted.begin(), sorted.end(), values[i]) -
                                             sorted.begin());
      }
      std::vector<bool> visited(k, false);
      std::size_t cycles = 0;
      for (std::size_t i = 0; i < k; ++i) {
        if (visited[i]) continue;
        ++cycles;
        for (std::size_t j = i; !visited[j]; j = target[j]) visited[j] = true;
      }
      if ((k - cycles) % 2 != 0) continue;
    }
    out.push_back(sorted);
  } while (std::next_permutation(sorted.begin(), sorted.end()));
  return out;
}

std::string JsonPath(const std::string& base, std::size_t index) {
  return base + "[" + std::to_string(index) + "]";
}

}  // namespace

std::strong_ordering Row::operator<=>(const Row& other) const {
  const std::size_t len = std::min(a.size(), other.a.size());
  for (std::size_t i = 0; i < len; ++i) {
    if (auto c = a[i] <=> other.a[i]; c != 0) return c;
  }
  if (auto c = a.size() <=> other.a.size(); c != 0) return c;
  return b <=> other.b;
}

std::size_t Row::Hash() const {
  return HashRange(a) * 1000003u ^ b.Hash();
}

std::string Row::ToString() const {
  return symcore::ToString(a) + " <= " + b.ToString();
}

RowIndex::RowIndex(const std::vector<Row>* rows) : rows_(rows) {
  buckets_.reserve(rows->size());
  for (std::size_t i = 0; i < rows->size(); ++i) buckets_.emplace((*rows)[i].Hash(), i);
}

bool RowIndex::Contains(const Row& row) const {
  auto [lo, hi] = buckets_.equal_range(row.Hash());
  for (auto it = lo; it != hi; ++it) {
    if ((*rows_)[it->second] == row) return true;
  }
  return false;
}

bool RowIndex::Insert(std::vector<Row>& rows, Row row) {
  const std::size_t h = row.Hash();
  auto [lo, hi] = buckets_.equal_range(h);
  for (auto it = lo; it != hi; ++it) {
    if (rows[it->second] == row) return false;
  }
  rows.push_back(std::move(row));
  buckets_.emplace(h, rows.size() - 1);
  return true;
}

std::vector<Row> DeduplicateRows(std::vector<Row> rows) {
  std::vector<Row> out;
  out.reserve(rows.size());
  RowIndex index(&out);
  for (Row& row : rows) index.Insert(out, std::move(row));
  return out;
}

void CheckDimensions(const Instance& inst) {
  if (inst.n < 0) throw Error("negative dimension");
  if (static_cast<int>(inst.objective.size()) != inst.n) {
    throw Error("objective has length " + std::to_string(inst.objective.size()) + ", expected " +
                std::to_string(inst.n));
  }
  if (inst.group.n() != inst.n) throw Error("group acts on the wrong number of coordinates");
  for (std::size_t i = 0; i < inst.rows.size(); ++i) {
    if (static_cast<int>(inst.rows[i].a.size()) != inst.n) {
      throw Error("row " + std::to_string(i) + " has length " +
                  std::to_string(inst.rows[i].a.size()) + ", expected " + std::to_string(inst.n));
    }
  }
}

json RationalToJson(const Rational& value) { return value.ToString(); }

Rational RationalFromJson(const json& value, const std::string& where) {
  try {
    if (value.is_string()) return Rational::Parse(value.get<std::string>());
    if (value.is_number_integer()) {
      if (value.is_number_unsigned()) {
        return Rational::Parse(std::to_string(value.get<std::uint64_t>()));
      }
      return Rational(value.get<std::int64_t>());
    }
  } catch (const Error& e) {
    throw Error(where + ": " + e.what());
  }
  throw Error(where + ": expected a rational string \"p/q\" or an integer, got " + value.dump());
}

json GroupToJson(const BlockGroup& group) {
  json blocks = json::array();
  for (const Block& block : group.blocks()) {
    blocks.push_back({{"kind", ToString(block.kind)}, {"coords", block.coords}});
  }
  return {{"blocks", blocks}, {"extra_generators", group.extra_generators()}};
}

BlockGroup GroupFromJson(const json& value, int n) {
  if (!value.is_object()) throw Error("group: expected an object");
  std::vector<Block> blocks;
  if (value.contains("blocks")) {
    const json& jb = value.at("blocks");
    if (!jb.is_array()) throw Error("group.blocks: expected an array");
    for (std::size_t i = 0; i < jb.size(); ++i) {
      const std::string where = JsonPath("group.blocks", i);
      try {
        Block block;
        block.kind = ParseBlockKind(jb[i].at("kind").get<std::string>());
        block.coords = jb[i].at("coords").get<std::vector<int>>();
        blocks.push_back(std::move(block));
      } catch (const json::exception& e) {
        throw Error(where + ": " + e.what());
      } catch (const Error& e) {
        throw Error(where + ": " + e.what());
      }
    }
  } else {
    for (int c = 0; c < n; ++c) blocks.push_back(Block{BlockKind::kId, {c}});
  }
  std::vector<Permutation> extra;
  if (value.contains("extra_generators")) {
    try {
      extra = value.at("extra_generators").get<std::vector<Permutation>>();
    } catch (const json::exception& e) {
      throw Error(std::string("group.extra_generators: ") + e.what());
    }
  }
  try {
    return BlockGroup(n, std::move(blocks), std::move(extra));
  } catch (const Error& e) {
    throw Error(std::string("group: ") + e.what());
  }
}

BlockGroup LoadGroup(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open group file " + path.string());
  try {
    const json value = json::parse(in);
    if (!value.is_object()) throw Error("expected a JSON object");
    int n = -1;
    if (value.contains("n")) {
      n = value.at("n").get<int>();
    } else if (value.contains("extra_generators") && !value.at("extra_generators").empty()) {
      n = static_cast<int>(value.at("extra_generators").at(0).size());
    } else if (value.contains("blocks")) {
      n = 0;
      for (const json& block : value.at("blocks")) n += static_cast<int>(block.at("coords").size());
    }
    if (n < 0) throw Error("cannot determine the dimension (add \"n\")");
    return GroupFromJson(value, n);
  } catch (const json::exception& e) {
    throw Error(path.string() + ": " + e.what());
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

json InstanceToJson(const Instance& inst) {
  json rows = json::array();
  for (const Row& row : inst.rows) {
    json a = json::array();
    for (const Rational& v : row.a) a.push_back(RationalToJson(v));
    rows.push_back({{"a", std::move(a)}, {"b", RationalToJson(row.b)}});
  }
  json objective = json::array();
  for (const Rational& v : inst.objective) objective.push_back(RationalToJson(v));
  return {{"n", inst.n},
          {"rows", std::move(rows)},
          {"objective", std::move(objective)},
          {"sense", "max"},
          {"group", GroupToJson(inst.group)}};
}

Instance InstanceFromJson(const json& value) {
  if (!value.is_object()) throw Error("instance: expected a JSON object");
  Instance inst;
  try {
    inst.n = value.at("n").get<int>();
  } catch (const json::exception& e) {
    throw Error(std::string("n: ") + e.what());
  }
  if (inst.n < 0) throw Error("n: must be non-negative");
  if (value.contains("sense") && value.at("sense") != "max") {
    throw Error("sense: only \"max\" is supported");
  }
  if (!value.contains("objective") || !value.at("objective").is_array()) {
    throw Error("objective: expected an array");
  }
  const json& jobj = value.at("objective");
  if (static_cast<int>(jobj.size()) != inst.n) {
    throw Error("objective: length " + std::to_string(jobj.size()) + ", expected " +
                std::to_string(inst.n));
  }
  for (std::size_t j = 0; j < jobj.size(); ++j) {
    inst.objective.push_back(RationalFromJson(jobj[j], JsonPath("objective", j)));
  }
  const json rows = value.contains("rows") ? value.at("rows") : json::array();
  if (!rows.is_array()) throw Error("rows: expected an array");
  std::vector<Row> parsed;
  parsed.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string where = JsonPath("rows", i);
    if (!rows[i].is_object() || !rows[i].contains("a") || !rows[i].contains("b")) {
      throw Error(where + ": expected an object with fields a and b");
    }
    const json& ja = rows[i].at("a");
    if (!ja.is_array() || static_cast<int>(ja.size()) != inst.n) {
      throw Error(where + ".a: expected " + std::to_string(inst.n) + " coefficients");
    }
    Row row;
    row.a.reserve(ja.size());
    for (std::size_t j = 0; j < ja.size(); ++j) {
      row.a.push_back(RationalFromJson(ja[j], JsonPath(where + ".a", j)));
    }
    row.b = RationalFromJson(rows[i].at("b"), where + ".b");
    parsed.push_back(std::move(row));
  }
  inst.rows = DeduplicateRows(std::move(parsed));
  const json group = value.contains("group") ? value.at("group") : json::object();
  inst.group = GroupFromJson(group, inst.n);
  CheckDimensions(inst);
  return inst;
}

Instance LoadInstance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open instance file " + path.string());
  json value;
  try {
    value = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(path.string() + ": " + e.what());
  }
  try {
    return InstanceFromJson(value);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void SaveInstance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write instance file " + path.string());
  out << InstanceToJson(inst).dump() << '\n';
  if (!out) throw Error("write failed for " + path.string());
}

std::string SymmetryViolation::Describe() const {
  std::ostringstream os;
  os << "generator " << ToString(std::span<const std::int64_t>(
                            IntVector(generator.begin(), generator.end())));
  if (kind == Kind::kObjective) {
    os << " does not fix the objective";
  } else {
    os << " maps row " << row << " to the missing row " << missing_row.ToString();
  }
  return os.str();
}

SymmetryReport ValidateSymmetry(const Instance& inst) {
  CheckDimensions(inst);
  SymmetryReport report;
  const RowIndex index(&inst.rows);
  for (const Permutation& gen : inst.group.BlockGenerators()) {
    if (ApplyPermutation(gen, inst.objective) != inst.objective) {
      report.witnesses.push_back(
          SymmetryViolation{SymmetryViolation::Kind::kObjective, gen, -1, {}});
    }
    for (std::size_t i = 0; i < inst.rows.size(); ++i) {
      Row image{ApplyPermutation(gen, inst.rows[i].a), inst.rows[i].b};
      if (!index.Contains(image)) {
        report.witnesses.push_back(SymmetryViolation{SymmetryViolation::Kind::kRow, gen,
                                                     static_cast<int>(i), std::move(image)});
      }
    }
  }
  report.is_symmetric = report.witnesses.empty();
  return report;
}

void RequireSymmetric(const Instance& inst) {
  const SymmetryReport report = ValidateSymmetry(inst);
  if (!report.is_symmetric) {
    throw Error("instance is not symmetric under its group: " +
                report.witnesses.front().Describe());
  }
}

std::vector<Row> RowOrbit(const Row& row, const BlockGroup& group, std::size_t cap) {
  const int d = group.d();
  std::vector<std::vector<RatVector>> choices(d);
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) {
    const Block& block = group.block(i);
    RatVector values;
    for (int c : block.coords) values.push_back(row.a[c]);
    choices[i] = BlockArrangements(block, values);
    total *= choices[i].size();
    if (total > cap) {
      throw Error("row orbit exceeds the row cap of " + std::to_string(cap));
    }
  }
  std::vector<Row> out;
  out.reserve(total);
  std::vector<std::size_t> pick(d, 0);
  while (true) {
    Row image{RatVector(row.a.size()), row.b};
    for (int i = 0; i < d; ++i) {
      const auto& coords = group.block(i).coords;
      for (std::size_t j = 0; j < coords.size(); ++j) image.a[coords[j]] = choices[i][pick[i]][j];
    }
    out.push_back(std::move(image));
    int i = d - 1;
    while (i >= 0 && ++pick[i] == choices[i].size()) pick[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

Instance OrbitClosureRows(const Instance& inst, std::size_t cap) {
  CheckDimensions(inst);
  Instance out = inst;
  out.rows.clear();
  RowIndex index(&out.rows);
  for (const Row& row : inst.rows) {
    for (Row& image : RowOrbit(row, inst.group, cap)) {
      if (index.Insert(out.rows, std::move(image)) && out.rows.size() > cap) {
        throw Error("orbit closure exceeds the row cap of " + std::to_string(cap));
      }
    }
  }
  return out;
}

}  // namespace symcore
