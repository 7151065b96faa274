#include "symcore/project_enum.h"

#include <optional>
#include <utility>

#include "symcore/lp.h"

namespace symcore {
namespace {

struct Interval {
  std::int64_t lo;
  std::int64_t hi;
};

class Enumerator {
 public:
  Enumerator(const ProjectedPolyhedron& proj, const std::function<void(const FiberIndex&)>& visit,
             const EnumerationOptions& options, EnumerationStats* stats)
      : proj_(proj), visit_(visit), options_(options), stats_(stats), point_{IntVector(proj.d)} {}

  void Run() {
    if (proj_.d == 0) {
      for (const Row& row : proj_.rows) {
        if (row.b.Sign() < 0) return;
      }
      Emit();
      return;
    }
    if (!CheckBounded()) return;
    Recurse(0, proj_.rows);
  }

 private:
  // Max and min of every coordinate over the whole projection. False when
  // the projection is empty.
  bool CheckBounded() {
    for (int j = 0; j < proj_.d; ++j) {
      RatVector e(proj_.d);
      e[j] = 1;
      for (Sense sense : {Sense::kMaximize, Sense::kMinimize}) {
        ++stats_->lp_solves;
        const LpResult r = SolveInequalityForm(proj_.rows, e, sense);
        if (r.status == LpStatus::kInfeasible) return false;
        if (r.status == LpStatus::kUnbounded) {
          throw Error("unbounded projection: coordinate " + std::to_string(j) + " has no " +
                      (sense == Sense::kMaximize ? "upper" : "lower") + " bound");
        }
      }
    }
    return true;
  }

  // Integer range of the first remaining coordinate over the reduced rows.
  std::optional<Interval> Range(const std::vector<Row>& rows) {
    const int dim = static_cast<int>(rows.empty() ? proj_.d : rows.front().a.size());
    if (dim == 1) {
      std::optional<Rational> lo;
      std::optional<Rational> hi;
      for (const Row& row : rows) {
        const int sign = row.a[0].Sign();
        if (sign == 0) {
          if (row.b.Sign() < 0) return std::nullopt;
          continue;
        }
        Rational bound = row.b / row.a[0];
        if (sign > 0) {
          if (!hi || bound < *hi) hi = std::move(bound);
        } else if (!lo || bound > *lo) {
          lo = std::move(bound);
        }
      }
      if (!lo || !hi) throw Error("unbounded projection");
      if (*lo > *hi) return std::nullopt;
      return Interval{lo->CeilToInt64(), hi->FloorToInt64()};
    }
    RatVector e(dim);
    e[0] = 1;
    stats_->lp_solves += 2;
    const LpResult top = SolveInequalityForm(rows, e, Sense::kMaximize);
    if (top.status == LpStatus::kInfeasible) return std::nullopt;
    const LpResult bottom = SolveInequalityForm(rows, e, Sense::kMinimize);
    if (top.status != LpStatus::kOptimal || bottom.status != LpStatus::kOptimal) {
      throw Error("unbounded projection");
    }
    return Interval{bottom.optimum.CeilToInt64(), top.optimum.FloorToInt64()};
  }

  void Recurse(int level, const std::vector<Row>& rows) {
    ++stats_->nodes;
    const std::optional<Interval> range = Range(rows);
    if (!range) return;
    const bool last = level + 1 == proj_.d;
    for (std::int64_t v = range->lo; v <= range->hi; ++v) {
      point_.sums[level] = v;
      if (last) {
        Emit();
        continue;
      }
      // Substitute s_level = v.
      std::vector<Row> reduced;
      reduced.reserve(rows.size());
      const Rational value(v);
      for (const Row& row : rows) {
        Row r{RatVector(row.a.begin() + 1, row.a.end()), row.b};
        if (!row.a[0].IsZero() && v != 0) r.b -= row.a[0] * value;
        reduced.push_back(std::move(r));
      }
      Recurse(level + 1, reduced);
    }
  }

  void Emit() {
    if (++stats_->fibers > options_.fiber_cap) {
      throw Error("lattice point enumeration exceeds the fiber cap of " +
                  std::to_string(options_.fiber_cap));
    }
    visit_(point_);
  }

  const ProjectedPolyhedron& proj_;
  const std::function<void(const FiberIndex&)>& visit_;
  const EnumerationOptions& options_;
  EnumerationStats* stats_;
  FiberIndex point_;
};

}  // namespace

ProjectedPolyhedron ProjectRows(const std::vector<Row>& rows, const BlockGroup& group) {
  ProjectedPolyhedron proj;
  proj.d = group.d();
  std::vector<Rational> inv_size(group.d());
  for (int i = 0; i < group.d(); ++i) {
    inv_size[i] = Rational(1, static_cast<std::int64_t>(group.block(i).size()));
  }
  RowIndex index(&proj.rows);
  for (const Row& row : rows) {
    if (static_cast<int>(row.a.size()) != group.n()) throw Error("row length mismatch");
    Row projected{RatVector(group.d()), row.b};
    for (int i = 0; i < group.d(); ++i) {
      Rational sum;
      for (int c : group.block(i).coords) {
        if (!row.a[c].IsZero()) sum += row.a[c];
      }
      projected.a[i] = sum * inv_size[i];
    }
    index.Insert(proj.rows, std::move(projected));
  }
  return proj;
}

ProjectedPolyhedron ProjectPolyhedron(const Instance& inst) {
  RequireSymmetric(inst);
  return ProjectRows(inst.rows, inst.group);
}

void ForEachLatticePoint(const ProjectedPolyhedron& proj,
                         const std::function<void(const FiberIndex&)>& visit,
                         const EnumerationOptions& options, EnumerationStats* stats) {
  EnumerationStats local;
  Enumerator(proj, visit, options, stats != nullptr ? stats : &local).Run();
}

std::vector<FiberIndex> EnumerateLatticePoints(const ProjectedPolyhedron& proj,
                                               const EnumerationOptions& options,
                                               EnumerationStats* stats) {
  std::vector<FiberIndex> out;
  ForEachLatticePoint(proj, [&](const FiberIndex& s) { out.push_back(s); }, options, stats);
  return out;
}

}  // namespace symcore
