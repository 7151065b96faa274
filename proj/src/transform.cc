#include "symcore/transform.h"

#include <algorithm>
#include <fstream>
#include <functional>

namespace symcore {
namespace {

using nlohmann::json;

// Substitutes position values t + Σ_{j >= l} s_j into a block-sorted row.
Row Substitute(const TransformedInstance& ti, const Row& sorted) {
  Row out{RatVector(ti.num_vars()), sorted.b};
  for (int i = 0; i < ti.group.d(); ++i) {
    const Block& block = ti.group.block(i);
    const TransformedBlock& vars = ti.blocks[i];
    Rational prefix;
    for (std::size_t l = 0; l < block.size(); ++l) {
      prefix += sorted.a[block.coords[l]];
      if (l + 1 < block.size()) out.a[vars.s[l]] = prefix;
    }
    out.a[vars.t] = prefix;
  }
  return out;
}

// LCM of the denominators of values and extra.
Rational Scale(std::span<const Rational> values, const Rational& extra) {
  RatVector all(values.begin(), values.end());
  all.push_back(extra);
  return Rational(mpq_class(DenominatorLcm(all)));
}

void WriteTerms(std::ostream& out, std::span<const Rational> coef, const Rational& scale,
                const std::vector<std::string>& names) {
  int written = 0;
  for (std::size_t j = 0; j < coef.size(); ++j) {
    if (coef[j].IsZero()) continue;
    const Rational v = coef[j] * scale;
    if (written > 0 && written % 8 == 0) out << "\n   ";
    out << (v.Sign() < 0 ? " - " : (written == 0 ? " " : " + "));
    const Rational mag = v.Abs();
    if (mag != 1) out << mag.ToString() << ' ';
    out << names[j];
    ++written;
  }
  if (written == 0) out << " 0 " << (names.empty() ? std::string("x") : names.front());
}

struct LpModel {
  const std::vector<Row>& rows;
  const RatVector& objective;
  const std::vector<std::string>& names;
  std::vector<int> generals;
  std::vector<int> binaries;
  std::vector<int> free;
};

void WriteModel(const LpModel& m, std::ostream& out) {
  const Rational obj_scale = Scale(m.objective, Rational(0));
  out << "\\ symcore model export\n";
  if (obj_scale != 1) out << "\\ objective scaled by " << obj_scale.ToString() << "\n";
  out << "Maximize\n obj:";
  WriteTerms(out, m.objective, obj_scale, m.names);
  out << "\n";
  if (!m.rows.empty()) {
    out << "Subject To\n";
    for (std::size_t r = 0; r < m.rows.size(); ++r) {
      const Row& row = m.rows[r];
      const Rational scale = Scale(row.a, row.b);
      out << " r" << r + 1 << ":";
      WriteTerms(out, row.a, scale, m.names);
      out << " <= " << (row.b * scale).ToString() << "\n";
    }
  }
  if (!m.free.empty()) {
    out << "Bounds\n";
    for (int j : m.free) out << " " << m.names[j] << " free\n";
  }
  auto list = [&](const char* title, const std::vector<int>& vars) {
    if (vars.empty()) return;
    out << title << "\n";
    for (int j : vars) out << " " << m.names[j] << "\n";
  };
  list("Generals", m.generals);
  list("Binaries", m.binaries);
  out << "End\n";
}

void WriteFile(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  body(out);
  out.flush();
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace

RatVector SortBlockDescending(std::span<const Rational> a, const BlockGroup& group) {
  if (static_cast<int>(a.size()) != group.n()) throw Error("row length mismatch");
  RatVector out(a.begin(), a.end());
  for (const Block& block : group.blocks()) {
    if (block.size() < 2) continue;
    RatVector values;
    for (int c : block.coords) values.push_back(a[c]);
    std::sort(values.begin(), values.end(), std::greater<>());
    for (std::size_t l = 0; l < block.size(); ++l) out[block.coords[l]] = values[l];
  }
  return out;
}

TransformedInstance TransformInstance(const Instance& inst) {
  CheckDimensions(inst);
  RequireSymmetric(inst);
  TransformedInstance ti;
  ti.group = inst.group;
  for (int i = 0; i < inst.group.d(); ++i) {
    TransformedBlock vars;
    vars.t = ti.num_vars();
    ti.names.push_back("t" + std::to_string(i));
    ti.binary.push_back(false);
    for (std::size_t j = 1; j < inst.group.block(i).size(); ++j) {
      vars.s.push_back(ti.num_vars());
      ti.names.push_back("s" + std::to_string(i) + "_" + std::to_string(j));
      ti.binary.push_back(true);
    }
    ti.blocks.push_back(std::move(vars));
  }

  std::vector<Row> sorted;
  RowIndex sorted_index(&sorted);
  for (const Row& row : inst.rows) {
    sorted_index.Insert(sorted, Row{SortBlockDescending(row.a, inst.group), row.b});
  }
  std::vector<Row> rows;
  RowIndex index(&rows);
  for (const Row& row : sorted) index.Insert(rows, Substitute(ti, row));
  ti.model_rows = rows.size();

  for (const TransformedBlock& vars : ti.blocks) {
    if (vars.s.empty()) continue;
    Row sum{RatVector(ti.num_vars()), 1};
    for (int j : vars.s) sum.a[j] = 1;
    if (index.Insert(rows, std::move(sum))) ++ti.structural_rows;
    for (int j : vars.s) {
      Row nonneg{RatVector(ti.num_vars()), 0};
      nonneg.a[j] = -1;
      if (index.Insert(rows, std::move(nonneg))) ++ti.structural_rows;
    }
  }
  std::sort(rows.begin(), rows.end());
  ti.rows = std::move(rows);
  ti.objective = Substitute(ti, Row{SortBlockDescending(inst.objective, inst.group), 0}).a;
  return ti;
}

IntVector LiftSolution(const TransformedInstance& ti, std::span<const Rational> values) {
  if (static_cast<int>(values.size()) != ti.num_vars()) {
    throw Error("assignment has " + std::to_string(values.size()) + " values, expected " +
                std::to_string(ti.num_vars()));
  }
  IntVector z(ti.group.n());
  for (int i = 0; i < ti.group.d(); ++i) {
    const TransformedBlock& vars = ti.blocks[i];
    const Rational& t = values[vars.t];
    if (!t.IsInteger()) throw Error(ti.names[vars.t] + " = " + t.ToString() + " is not integral");
    int ones = 0;
    for (int j : vars.s) {
      if (values[j] != 0 && values[j] != 1) {
        throw Error(ti.names[j] + " = " + values[j].ToString() + " is not binary");
      }
      ones += values[j] == 1;
    }
    if (ones > 1) throw Error("block " + std::to_string(i) + " has more than one s set");
    // Position l gets t + Σ_{j >= l} s_j.
    const Block& block = ti.group.block(i);
    std::int64_t tail = 0;
    for (std::size_t l = block.size(); l-- > 0;) {
      if (l < vars.s.size() && values[vars.s[l]] == 1) tail = 1;
      z[block.coords[l]] = t.ToInt64() + tail;
    }
  }
  return z;
}

Solution SolveTransformed(const Instance& inst, const BbOptions& options) {
  const TransformedInstance ti = TransformInstance(inst);
  Solution sol = SolveBB(ti.rows, ti.objective, std::vector<bool>(ti.num_vars(), true), options);
  if (sol.status == SolveStatus::kOptimal) {
    const IntVector z = LiftSolution(ti, sol.point);
    sol.point = ToRational(z);
  }
  return sol;
}

json TransformedToJson(const TransformedInstance& ti) {
  json variables = json::array();
  for (int j = 0; j < ti.num_vars(); ++j) {
    variables.push_back({{"name", ti.names[j]}, {"type", ti.binary[j] ? "binary" : "integer"}});
  }
  json rows = json::array();
  for (const Row& row : ti.rows) {
    json a = json::array();
    for (const Rational& v : row.a) a.push_back(RationalToJson(v));
    rows.push_back({{"a", std::move(a)}, {"b", RationalToJson(row.b)}});
  }
  json objective = json::array();
  for (const Rational& v : ti.objective) objective.push_back(RationalToJson(v));
  json blocks = json::array();
  for (const TransformedBlock& b : ti.blocks) blocks.push_back({{"t", b.t}, {"s", b.s}});
  return {{"variables", std::move(variables)},
          {"rows", std::move(rows)},
          {"sense", "max"},
          {"objective", std::move(objective)},
          {"blocks", std::move(blocks)},
          {"model_rows", ti.model_rows},
          {"structural_rows", ti.structural_rows},
          {"original_group", GroupToJson(ti.group)}};
}

void WriteLp(const TransformedInstance& ti, std::ostream& out) {
  LpModel m{ti.rows, ti.objective, ti.names, {}, {}, {}};
  for (int j = 0; j < ti.num_vars(); ++j) {
    if (ti.binary[j]) {
      m.binaries.push_back(j);
    } else {
      m.generals.push_back(j);
      m.free.push_back(j);
    }
  }
  WriteModel(m, out);
}

void WriteLp(const Instance& inst, std::ostream& out) {
  std::vector<std::string> names;
  LpModel m{inst.rows, inst.objective, names, {}, {}, {}};
  for (int j = 0; j < inst.n; ++j) {
    names.push_back("x" + std::to_string(j));
    m.generals.push_back(j);
    m.free.push_back(j);
  }
  WriteModel(m, out);
}

void ExportLp(const TransformedInstance& ti, const std::filesystem::path& path) {
  WriteFile(path, [&](std::ostream& out) { WriteLp(ti, out); });
}

void ExportLp(const Instance& inst, const std::filesystem::path& path) {
  WriteFile(path, [&](std::ostream& out) { WriteLp(inst, out); });
}

}  // namespace symcore
