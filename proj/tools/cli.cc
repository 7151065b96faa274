#include "cli.h"

#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "symcore/core.h"
#include "symcore/gen.h"
#include "symcore/project_enum.h"
#include "symcore/solve.h"
#include "symcore/transform.h"

namespace symcore::cli {
namespace {

using nlohmann::json;

// A report and its exit code; infeasibility and asymmetry are reports too.
struct Outcome {
  json report;
  int code = kOk;
};

std::int64_t ParseInt(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw Error(what + ": not an integer: '" + text + "'");
  return v;
}

std::vector<std::int64_t> ParseIntList(const std::string& text, const std::string& what) {
  std::vector<std::int64_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(ParseInt(item, what));
  if (out.empty()) throw Error(what + ": empty list");
  return out;
}

std::pair<std::int64_t, std::int64_t> ParseBox(const std::string& text) {
  const std::size_t dots = text.find("..");
  if (dots == std::string::npos) throw Error("--box: expected lo..hi, got '" + text + "'");
  const std::int64_t lo = ParseInt(text.substr(0, dots), "--box");
  const std::int64_t hi = ParseInt(text.substr(dots + 2), "--box");
  if (lo > hi) throw Error("--box: lower end exceeds upper end");
  return {lo, hi};
}

std::vector<int> ParseBlocks(const std::string& text) {
  std::vector<int> sizes;
  for (std::int64_t v : ParseIntList(text, "--blocks")) {
    if (v <= 0 || v > 1000) throw Error("--blocks: block sizes must lie in [1, 1000]");
    sizes.push_back(static_cast<int>(v));
  }
  return sizes;
}

json PointToJson(const RatVector& x) {
  json out = json::array();
  for (const Rational& v : x) {
    if (v.IsInteger() && v.is_small()) {
      out.push_back(v.ToInt64());
    } else {
      out.push_back(RationalToJson(v));
    }
  }
  return out;
}

json RowsToJson(const std::vector<Row>& rows) {
  json out = json::array();
  for (const Row& row : rows) {
    json a = json::array();
    for (const Rational& v : row.a) a.push_back(RationalToJson(v));
    out.push_back({{"a", std::move(a)}, {"b", RationalToJson(row.b)}});
  }
  return out;
}

json StatsToJson(const SolveStats& s, bool timings) {
  json out = {{"fibers_enumerated", s.fibers_enumerated},
              {"fibers_tested", s.fibers_tested},
              {"enumeration_lp_solves", s.enumeration_lp_solves},
              {"nodes", s.nodes},
              {"lp_solves", s.lp_solves},
              {"lp_pivots", s.lp_pivots},
              {"rows_generated", s.rows_generated}};
  if (timings) {
    out["enumeration_seconds"] = s.enumeration_seconds;
    out["testing_seconds"] = s.testing_seconds;
    out["total_seconds"] = s.total_seconds;
  }
  return out;
}

json WitnessToJson(const SymmetryViolation& v) {
  json out = {{"kind", v.kind == SymmetryViolation::Kind::kRow ? "row" : "objective"},
              {"generator", v.generator},
              {"message", v.Describe()}};
  if (v.kind == SymmetryViolation::Kind::kRow) {
    out["row"] = v.row;
    out["missing_row"] = RowsToJson({v.missing_row}).front();
  }
  return out;
}

// Flattens nested objects to dotted keys. Arrays of arrays or objects become
// one line per element under their key.
void Flatten(const json& value, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>* lines) {
  for (const auto& [key, v] : value.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (v.is_object()) {
      Flatten(v, name, lines);
    } else if (v.is_array() && !v.empty() && (v.front().is_array() || v.front().is_object())) {
      lines->emplace_back(name, "(" + std::to_string(v.size()) + ")");
      for (const json& item : v) lines->emplace_back("", item.dump());
    } else {
      lines->emplace_back(name, v.is_string() ? v.get<std::string>() : v.dump());
    }
  }
}

void PrintHuman(const json& report, std::ostream& out) {
  std::vector<std::pair<std::string, std::string>> lines;
  Flatten(report, "", &lines);
  std::size_t width = 0;
  for (const auto& [key, text] : lines) width = std::max(width, key.size());
  for (const auto& [key, text] : lines) {
    out << std::left << std::setw(static_cast<int>(width + 2)) << key << text << "\n";
  }
}

BlockGroup GroupFromFlags(const std::string& group_file, const std::string& blocks) {
  if (!group_file.empty() && !blocks.empty()) throw Error("give either --group-file or --blocks");
  if (!group_file.empty()) return LoadGroup(group_file);
  if (!blocks.empty()) return BlockGroup::SymmetricBlocks(ParseBlocks(blocks));
  throw Error("a group is required: --group-file or --blocks");
}

std::shared_ptr<spdlog::logger> MakeLogger(std::ostream& err) {
  auto logger = std::make_shared<spdlog::logger>(
      "symcore", std::make_shared<spdlog::sinks::ostream_sink_mt>(err));
  logger->set_pattern("[%l] %v");
  logger->set_level(spdlog::level::warn);
  if (const char* env = std::getenv("SYMCORE_LOG")) {
    const spdlog::level::level_enum level = spdlog::level::from_str(env);
    // from_str maps unknown names to off; only honor names it knows.
    if (level != spdlog::level::off || std::string(env) == "off") logger->set_level(level);
  }
  return logger;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto log = MakeLogger(err);

  CLI::App app{"Exact solvers for block-symmetric integer programs"};
  app.name("symcore");
  app.require_subcommand(1);
  app.fallthrough();
  bool human = false;
  app.add_flag("--human", human, "Aligned text instead of JSON")->configurable(false);
  app.set_help_all_flag("--help-all", "Help for all subcommands");

  std::string file;
  std::string out_path;
  std::string lp_path;
  std::string blocks;
  std::string group_file;
  std::string point;
  std::string box;
  std::string cyclic_a;
  std::uint64_t seed = 0;
  std::size_t row_cap = kDefaultRowCap;
  int threads = 1;
  std::size_t fiber_cap = EnumerationOptions{}.fiber_cap;
  std::size_t orbit_cap = kDefaultOrbitCap;
  std::size_t box_cap = CoreOracleOptions{}.box_cap;
  std::size_t node_limit = 0;
  std::optional<std::int64_t> k;
  int cyclic_n = 0;
  std::string method = "fiber";
  bool timings = false;
  bool list_points = false;

  CLI::App* gen = app.add_subcommand("gen", "Generate a seeded symmetric instance");
  gen->add_option("--blocks", blocks, "Block sizes k1,k2,...")->required();
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--row-cap", row_cap, "Limit on rows after orbit closure");
  gen->add_option("--out", out_path, "Instance file to write (default: print it)");

  CLI::App* validate = app.add_subcommand("validate", "Check that the rows and objective are symmetric");
  validate->add_option("instance", file, "Instance file")->required();

  CLI::App* project = app.add_subcommand("project", "Print the projected polyhedron");
  project->add_option("instance", file, "Instance file")->required();
  project->add_flag("--enumerate", list_points, "Also list its lattice points");
  project->add_option("--fiber-cap", fiber_cap, "Limit on enumerated lattice points");

  CLI::App* solve = app.add_subcommand("solve", "Solve an instance");
  solve->add_option("instance", file, "Instance file")->required();
  solve->add_option("--method", method, "fiber, bb or transform")
      ->check(CLI::IsMember({"fiber", "bb", "transform"}));
  solve->add_option("--threads", threads, "Fiber test workers")->check(CLI::Range(1, 256));
  solve->add_option("--fiber-cap", fiber_cap, "Limit on enumerated fibers");
  solve->add_option("--node-limit", node_limit, "Branch-and-bound node limit (0: none)");
  solve->add_flag("--timings", timings, "Include wall-clock times in the stats");

  CLI::App* transform = app.add_subcommand("transform", "Write the symmetry-free reformulation");
  transform->add_option("instance", file, "Instance file")->required();
  transform->add_option("--out", out_path, "Transformed model file (JSON)")->required();
  transform->add_option("--export-lp", lp_path, "Also write an LP text file");

  CLI::App* core = app.add_subcommand("core", "Core point oracle");
  core->require_subcommand(1);
  CLI::App* check = core->add_subcommand("check", "Decide whether a point is a core point");
  CLI::App* enumerate = core->add_subcommand("enum", "Core points in a box");
  for (CLI::App* sub : {check, enumerate}) {
    sub->add_option("--group-file", group_file, "Group file (blocks and extra generators)");
    sub->add_option("--blocks", blocks, "Symmetric blocks k1,k2,... instead of a group file");
    sub->add_option("--orbit-cap", orbit_cap, "Limit on orbit size");
    sub->add_option("--box-cap", box_cap, "Limit on scanned lattice points");
  }
  check->add_option("--point", point, "Comma-separated integer point")->required();
  enumerate->add_option("--box", box, "Coordinate range lo..hi")->required();
  enumerate->add_option("--k", k, "Only points with coordinate sum k");
  CLI::App* cyclic = core->add_subcommand("cyclic", "Cyclic example point and its oracle checks");
  cyclic->add_option("--n", cyclic_n, "Even dimension n >= 4")->required();
  cyclic->add_option("--a", cyclic_a, "a_2,...,a_m with m = n/2")->required();
  cyclic->add_option("--orbit-cap", orbit_cap, "Limit on orbit size");
  cyclic->add_option("--box-cap", box_cap, "Limit on scanned lattice points");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageOrDataError;
  }

  Outcome result;
  try {
    if (gen->parsed()) {
      const Instance inst = GenerateInstance(GenParams{ParseBlocks(blocks), seed, row_cap});
      log->info("generated n={} rows={}", inst.n, inst.rows.size());
      if (out_path.empty()) {
        result.report = InstanceToJson(inst);
      } else {
        SaveInstance(inst, out_path);
        result.report = {{"status", "ok"}, {"out", out_path}, {"n", inst.n}, {"rows", inst.rows.size()}};
      }
    } else if (validate->parsed()) {
      const Instance inst = LoadInstance(file);
      const SymmetryReport report = ValidateSymmetry(inst);
      json witnesses = json::array();
      for (const SymmetryViolation& v : report.witnesses) witnesses.push_back(WitnessToJson(v));
      result.report = {{"status", report.is_symmetric ? "symmetric" : "asymmetric"},
                       {"n", inst.n},
                       {"rows", inst.rows.size()},
                       {"group", GroupToJson(inst.group)},
                       {"witnesses", std::move(witnesses)}};
      if (!report.is_symmetric) {
        err << "error: " << report.witnesses.front().Describe() << "\n";
        result.code = kUsageOrDataError;
      }
    } else if (project->parsed()) {
      const Instance inst = LoadInstance(file);
      const ProjectedPolyhedron proj = ProjectPolyhedron(inst);
      result.report = {{"status", "ok"}, {"d", proj.d}, {"rows", RowsToJson(proj.rows)}};
      if (list_points) {
        json points = json::array();
        for (const FiberIndex& s : EnumerateLatticePoints(proj, EnumerationOptions{.fiber_cap = fiber_cap})) {
          points.push_back(s.sums);
        }
        result.report["lattice_points"] = std::move(points);
      }
    } else if (solve->parsed()) {
      const Instance inst = LoadInstance(file);
      log->info("loaded n={} rows={} blocks={}", inst.n, inst.rows.size(), inst.group.d());
      Solution sol;
      BbOptions bb;
      bb.node_limit = node_limit;
      if (method == "fiber") {
        sol = SolveFiber(inst, FiberSolveOptions{.threads = threads, .fiber_cap = fiber_cap});
      } else if (method == "bb") {
        sol = SolveBB(inst, bb);
      } else {
        sol = SolveTransformed(inst, bb);
      }
      log->debug("solved in {:.3f}s", sol.stats.total_seconds);
      result.report = {{"method", method}, {"status", ToString(sol.status)}};
      if (sol.status == SolveStatus::kOptimal) {
        result.report["objective"] = RationalToJson(sol.objective);
        result.report["point"] = PointToJson(sol.point);
      } else {
        result.report["objective"] = nullptr;
        result.report["point"] = nullptr;
        result.code = kInfeasible;
      }
      if (method == "fiber") {
        result.report["certificate"] = {{"fiber", sol.fiber ? json(sol.fiber->sums) : json(nullptr)},
                                        {"fibers_tested", sol.stats.fibers_tested}};
      } else {
        result.report["certificate"] = {{"nodes", sol.stats.nodes}};
      }
      result.report["stats"] = StatsToJson(sol.stats, timings);
    } else if (transform->parsed()) {
      const Instance inst = LoadInstance(file);
      const TransformedInstance ti = TransformInstance(inst);
      {
        std::ofstream f(out_path);
        if (!f) throw Error("cannot open " + out_path + " for writing");
        f << TransformedToJson(ti).dump(2) << "\n";
        if (!f) throw Error("failed writing " + out_path);
      }
      if (!lp_path.empty()) ExportLp(ti, lp_path);
      result.report = {{"status", "ok"},
                       {"out", out_path},
                       {"variables", ti.num_vars()},
                       {"rows", ti.rows.size()},
                       {"model_rows", ti.model_rows},
                       {"structural_rows", ti.structural_rows},
                       {"original_rows", inst.rows.size()}};
      if (!lp_path.empty()) result.report["lp"] = lp_path;
    } else if (check->parsed() || enumerate->parsed()) {
      const BlockGroup group = GroupFromFlags(group_file, blocks);
      const std::vector<Permutation> gens = group.AllGenerators();
      const CoreOracleOptions options{.orbit_cap = orbit_cap, .box_cap = box_cap};
      if (check->parsed()) {
        const IntVector z = ParseIntList(point, "--point");
        if (static_cast<int>(z.size()) != group.n()) {
          throw Error("--point has " + std::to_string(z.size()) + " coordinates, the group acts on " +
                      std::to_string(group.n()));
        }
        const std::vector<IntVector> orbit = OrbitOfVector(gens, z, orbit_cap);
        const std::optional<IntVector> inside = FindNonVertexLatticePoint(orbit, options);
        result.report = {{"point", z}, {"core", !inside.has_value()}, {"orbit_size", orbit.size()}};
        result.report["witness"] = inside ? json(*inside) : json(nullptr);
      } else {
        const auto [lo, hi] = ParseBox(box);
        const std::vector<IntVector> points = EnumerateCorePointsInBox(
            gens, IntVector(group.n(), lo), IntVector(group.n(), hi), k, options);
        result.report = {{"box", {lo, hi}}, {"count", points.size()}, {"points", points}};
        result.report["k"] = k ? json(*k) : json(nullptr);
      }
    } else if (cyclic->parsed()) {
      const IntVector z = CyclicExamplePoint(cyclic_n, ParseIntList(cyclic_a, "--a"));
      const std::vector<Permutation> gens = {CyclicShift(cyclic_n)};
      const CoreOracleOptions options{.orbit_cap = orbit_cap, .box_cap = box_cap};
      const std::vector<IntVector> orbit = OrbitOfVector(gens, z, orbit_cap);
      std::vector<IntVector> with_origin = orbit;
      with_origin.push_back(IntVector(cyclic_n, 0));
      const bool core_point = !FindNonVertexLatticePoint(orbit, options).has_value();
      const bool origin_free = !FindNonVertexLatticePoint(with_origin, options).has_value();
      result.report = {{"point", z},
                       {"orbit_size", orbit.size()},
                       {"core", core_point},
                       {"lattice_free_with_origin", origin_free}};
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageOrDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageOrDataError;
  }

  if (human) {
    PrintHuman(result.report, out);
  } else {
    out << result.report.dump(2) << "\n";
  }
  return result.code;
}

}  // namespace symcore::cli
