#include "symcore/lp.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <utility>

namespace symcore {
namespace {

using i128 = __int128;

constexpr std::int64_t kPointLimit = std::int64_t{1} << 31;
// Consecutive degenerate pivots tolerated before switching to Bland's rule.
constexpr int kDegenerateStreakLimit = 8;

// Sign tests for the tableau entries. Doubles within kEps of zero count as
// zero; the floating-point tableau only proposes bases for exact checking.
constexpr double kEps = 1e-9;
int Sgn(const Rational& v) { return v.Sign(); }
int Sgn(double v) { return v > kEps ? 1 : (v < -kEps ? -1 : 0); }
bool Zero(const Rational& v) { return v.IsZero(); }
bool Zero(double v) { return Sgn(v) == 0; }
Rational Inv(const Rational& v) { return v.Inverse(); }
double Inv(double v) { return 1 / v; }

// Dense simplex tableau, maximizing, over exact rationals or doubles. Column
// `cols_` holds the right-hand side; `cost_` holds reduced costs and -z in its
// last entry.
template <typename T>
class Tableau {
 public:
  // unit_col[i] names a column that is +1 in row i and 0 elsewhere (usable as
  // an initial basic variable when rhs[i] >= 0), or -1.
  Tableau(std::vector<std::vector<T>> rows, std::vector<T> rhs, std::vector<int> unit_col, int cols)
      : m_(static_cast<int>(rows.size())), structural_cols_(cols) {
    int artificials = 0;
    for (int i = 0; i < m_; ++i) {
      if (Sgn(rhs[i]) < 0) {
        for (T& v : rows[i]) v = -v;
        rhs[i] = -rhs[i];
        unit_col[i] = -1;
      }
      if (unit_col[i] < 0) ++artificials;
    }
    cols_ = cols + artificials;
    t_.resize(m_);
    basis_.resize(m_);
    int next_art = cols;
    for (int i = 0; i < m_; ++i) {
      t_[i] = std::move(rows[i]);
      t_[i].resize(cols_ + 1);
      t_[i][cols_] = std::move(rhs[i]);
      if (unit_col[i] >= 0) {
        basis_[i] = unit_col[i];
      } else {
        t_[i][next_art] = T(1);
        basis_[i] = next_art++;
      }
    }
    allowed_.assign(cols_, 1);
  }

  // Returns the final status; y receives the structural values when optimal,
  // ray the improving direction when unbounded.
  LpStatus Solve(std::span<const T> objective, std::vector<T>* y, std::vector<T>* ray) {
    if (cols_ > structural_cols_) {
      // Phase 1: maximize -(sum of artificials).
      cost_.assign(cols_ + 1, T());
      for (int i = 0; i < m_; ++i) {
        if (!IsArtificial(basis_[i])) continue;
        for (int j = 0; j <= cols_; ++j) {
          if (!Zero(t_[i][j]) && (j == cols_ || !IsArtificial(j))) cost_[j] += t_[i][j];
        }
      }
      int unbounded_col = -1;
      Iterate(&unbounded_col);
      if (gave_up_ || Sgn(cost_[cols_]) != 0) return LpStatus::kInfeasible;
      DriveOutArtificials();
      for (int j = structural_cols_; j < cols_; ++j) allowed_[j] = 0;
    }
    cost_.assign(cols_ + 1, T());
    for (int j = 0; j < structural_cols_; ++j) {
      if (j < static_cast<int>(objective.size())) cost_[j] = objective[j];
    }
    for (int i = 0; i < m_; ++i) {
      const int b = basis_[i];
      if (b >= static_cast<int>(objective.size()) || Zero(objective[b])) continue;
      const T cb = objective[b];
      for (int j = 0; j <= cols_; ++j) {
        if (!Zero(t_[i][j])) cost_[j] -= cb * t_[i][j];
      }
    }
    int unbounded_col = -1;
    const bool bounded = Iterate(&unbounded_col);
    if (gave_up_) return LpStatus::kInfeasible;
    if (!bounded) {
      if (ray != nullptr) {
        ray->assign(structural_cols_, T());
        (*ray)[unbounded_col] = T(1);
        for (int i = 0; i < m_; ++i) {
          if (basis_[i] < structural_cols_) (*ray)[basis_[i]] = -t_[i][unbounded_col];
        }
      }
      return LpStatus::kUnbounded;
    }
    if (y != nullptr) {
      y->assign(structural_cols_, T());
      for (int i = 0; i < m_; ++i) {
        if (basis_[i] < structural_cols_) (*y)[basis_[i]] = t_[i][cols_];
      }
    }
    return LpStatus::kOptimal;
  }

  std::size_t pivots() const { return pivots_; }
  // Set before Solve; 0 means no limit. Solve then reports kInfeasible and
  // gave_up() turns true once the limit is hit.
  void set_pivot_limit(std::size_t limit) { pivot_limit_ = limit; }
  bool gave_up() const { return gave_up_; }
  bool IsBasic(int col) const { return std::find(basis_.begin(), basis_.end(), col) != basis_.end(); }
  const T& ReducedCost(int col) const { return cost_[col]; }
  // Value of the basic variable col, or 0 when col is nonbasic.
  T Value(int col) const {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] == col) return t_[i][cols_];
    }
    return T();
  }

 private:
  bool IsArtificial(int col) const { return col >= structural_cols_; }

  // Runs simplex iterations on the current cost row. Returns false when a
  // column with positive reduced cost has no positive entry (unbounded).
  bool Iterate(int* unbounded_col) {
    int degenerate_streak = 0;
    bool bland = false;
    while (true) {
      if (pivot_limit_ != 0 && pivots_ >= pivot_limit_) {
        gave_up_ = true;
        return true;
      }
      int enter = -1;
      for (int j = 0; j < cols_; ++j) {
        if (!allowed_[j] || Sgn(cost_[j]) <= 0) continue;
        if (enter < 0) {
          enter = j;
          if (bland) break;
        } else if (cost_[j] > cost_[enter]) {
          enter = j;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      T best_ratio;
      for (int i = 0; i < m_; ++i) {
        if (Sgn(t_[i][enter]) <= 0) continue;
        T ratio = t_[i][cols_] / t_[i][enter];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leave < 0) {
        *unbounded_col = enter;
        return false;
      }
      const bool degenerate = Zero(best_ratio);
      Pivot(leave, enter);
      if (degenerate) {
        if (++degenerate_streak >= kDegenerateStreakLimit) bland = true;
      } else {
        degenerate_streak = 0;
        bland = false;
      }
    }
  }

  void Pivot(int r, int c) {
    ++pivots_;
    std::vector<T>& pr = t_[r];
    const T inv = Inv(pr[c]);
    std::vector<int> nz;
    for (int j = 0; j <= cols_; ++j) {
      if (Zero(pr[j])) continue;
      pr[j] *= inv;
      nz.push_back(j);
    }
    auto eliminate = [&](std::vector<T>& row) {
      if (Zero(row[c])) return;
      const T f = row[c];
      for (int j : nz) row[j] -= f * pr[j];
    };
    for (int i = 0; i < m_; ++i) {
      if (i != r) eliminate(t_[i]);
    }
    if (!cost_.empty()) eliminate(cost_);
    basis_[r] = c;
  }

  void DriveOutArtificials() {
    for (int i = 0; i < m_;) {
      if (!IsArtificial(basis_[i])) {
        ++i;
        continue;
      }
      int col = -1;
      for (int j = 0; j < structural_cols_; ++j) {
        if (!Zero(t_[i][j])) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        Pivot(i, col);
        ++i;
      } else {
        // Redundant equality row.
        t_.erase(t_.begin() + i);
        basis_.erase(basis_.begin() + i);
        --m_;
      }
    }
  }

  int m_;
  int structural_cols_;
  int cols_ = 0;
  std::vector<std::vector<T>> t_;
  std::vector<int> basis_;
  std::vector<T> cost_;
  std::vector<char> allowed_;
  std::size_t pivots_ = 0;
  std::size_t pivot_limit_ = 0;
  bool gave_up_ = false;
};

// Solution of the square system a x = b, or nothing when a is singular.
std::optional<RatVector> SolveSquare(std::vector<RatVector> a, RatVector b) {
  const int n = static_cast<int>(b.size());
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && a[p][c].IsZero()) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    const Rational inv = a[c][c].Inverse();
    for (int j = c; j < n; ++j) a[c][j] *= inv;
    b[c] *= inv;
    for (int i = 0; i < n; ++i) {
      if (i == c || a[i][c].IsZero()) continue;
      const Rational f = a[i][c];
      for (int j = c; j < n; ++j) {
        if (!a[c][j].IsZero()) a[i][j] -= f * a[c][j];
      }
      b[i] -= f * b[c];
    }
  }
  return b;
}

// max ⟨c, x⟩ s.t. Ax <= b, solved in floating point and then certified
// exactly: n independent rows that are tight at the floating-point optimum,
// preferring those with the largest duals, must give a point satisfying every
// row and multipliers y >= 0 with Σ y_i a_i = c. Returns nothing when any step
// fails, including infeasible and unbounded problems.
std::optional<LpResult> CertifiedFloatingSolve(std::span<const Row> rows, std::span<const Rational> c,
                                               std::size_t* pivots) {
  const int n = static_cast<int>(c.size());
  const int m = static_cast<int>(rows.size());
  if (n == 0 || m < n) return std::nullopt;
  std::vector<std::vector<double>> matrix(m, std::vector<double>(2 * n + m));
  std::vector<double> rhs(m);
  std::vector<int> unit_col(m);
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < n; ++k) {
      const double v = rows[i].a[k].ToDouble();
      matrix[i][k] = v;
      matrix[i][n + k] = -v;
    }
    matrix[i][2 * n + i] = 1;
    rhs[i] = rows[i].b.ToDouble();
    unit_col[i] = 2 * n + i;
  }
  std::vector<double> cost(2 * n + m);
  for (int k = 0; k < n; ++k) {
    cost[k] = c[k].ToDouble();
    cost[n + k] = -cost[k];
  }
  Tableau<double> tableau(std::move(matrix), std::move(rhs), std::move(unit_col), 2 * n + m);
  tableau.set_pivot_limit(static_cast<std::size_t>(20 * (m + n) + 100));
  const LpStatus status = tableau.Solve(cost, nullptr, nullptr);
  if (pivots != nullptr) *pivots += tableau.pivots();
  if (tableau.gave_up() || status != LpStatus::kOptimal) return std::nullopt;

  // Nonbasic slacks by decreasing dual, then basic slacks that are nearly zero.
  std::vector<std::pair<double, int>> tight;
  std::vector<std::pair<double, int>> near;
  for (int i = 0; i < m; ++i) {
    const int col = 2 * n + i;
    if (!tableau.IsBasic(col)) {
      tight.emplace_back(-tableau.ReducedCost(col), i);
    } else {
      const double slack = tableau.Value(col);
      if (std::fabs(slack) <= 1e-7 * (1 + std::fabs(rows[i].b.ToDouble()))) near.emplace_back(slack, i);
    }
  }
  std::stable_sort(tight.begin(), tight.end(), [](const auto& u, const auto& v) { return u.first > v.first; });
  std::stable_sort(near.begin(), near.end());
  tight.insert(tight.end(), near.begin(), near.end());

  // Greedy choice of n independent rows, kept in echelon form.
  std::vector<int> chosen;
  std::vector<RatVector> echelon;
  std::vector<int> lead;
  for (const auto& [dual, i] : tight) {
    RatVector v = rows[i].a;
    for (std::size_t e = 0; e < echelon.size(); ++e) {
      if (v[lead[e]].IsZero()) continue;
      const Rational f = v[lead[e]] / echelon[e][lead[e]];
      for (int k = 0; k < n; ++k) {
        if (!echelon[e][k].IsZero()) v[k] -= f * echelon[e][k];
      }
    }
    int l = 0;
    while (l < n && v[l].IsZero()) ++l;
    if (l == n) continue;
    echelon.push_back(std::move(v));
    lead.push_back(l);
    chosen.push_back(i);
    if (static_cast<int>(chosen.size()) == n) break;
  }
  if (static_cast<int>(chosen.size()) < n) return std::nullopt;

  std::vector<RatVector> a(n);
  std::vector<RatVector> at(n, RatVector(n));
  RatVector b(n);
  for (int r = 0; r < n; ++r) {
    a[r] = rows[chosen[r]].a;
    b[r] = rows[chosen[r]].b;
    for (int k = 0; k < n; ++k) at[k][r] = a[r][k];
  }
  std::optional<RatVector> y = SolveSquare(std::move(at), RatVector(c.begin(), c.end()));
  if (!y) return std::nullopt;
  for (const Rational& v : *y) {
    if (v.Sign() < 0) return std::nullopt;
  }
  std::optional<RatVector> x = SolveSquare(std::move(a), std::move(b));
  if (!x) return std::nullopt;
  for (const Row& row : rows) {
    if (Dot(row.a, *x) > row.b) return std::nullopt;
  }
  LpResult result;
  result.status = LpStatus::kOptimal;
  result.point = std::move(*x);
  return result;
}

std::size_t BitLength(const mpz_class& v) {
  return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

i128 ToI128(const mpz_class& v) {
  mpz_class mag = abs(v);
  const mpz_class high = mag >> 64;
  const mpz_class low = mag - (high << 64);
  const auto u = (static_cast<unsigned __int128>(high.get_ui()) << 64) | low.get_ui();
  return v < 0 ? -static_cast<i128>(u) : static_cast<i128>(u);
}

// Common-denominator integer form p / q of x when every entry of p and q has
// at most max_bits bits.
bool ScalePoint(std::span<const Rational> x, std::size_t max_bits, std::vector<i128>* p, i128* q) {
  const mpz_class l = DenominatorLcm(x);
  if (BitLength(l) > max_bits) return false;
  p->resize(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const mpz_class v = x[k].Numerator() * (l / x[k].Denominator());
    if (BitLength(v) > max_bits) return false;
    (*p)[k] = ToI128(v);
  }
  *q = ToI128(l);
  return true;
}

}  // namespace

std::string ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "?";
}

ConstraintMatrix::ConstraintMatrix(std::span<const Row> rows, int n)
    : rows_(rows), n_(n), coeffs_(rows.size() * n), rhs_(rows.size()), scale_(rows.size(), 1),
      fast_(rows.size(), 0), approx_coeffs_(rows.size() * n), approx_rhs_(rows.size()),
      approx_(rows.size(), 0) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& row = rows[i];
    if (static_cast<int>(row.a.size()) != n) throw Error("constraint row length mismatch");
    mpz_class l = DenominatorLcm(row.a);
    if (!row.b.IsInteger()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), row.b.Denominator().get_mpz_t());
    bool ok = l.fits_slong_p();
    if (ok) scale_[i] = l.get_si();
    for (int k = 0; ok && k < n; ++k) {
      const mpz_class v = row.a[k].Numerator() * (l / row.a[k].Denominator());
      ok = v.fits_slong_p() && v.get_si() != std::numeric_limits<long>::min();
      if (ok) coeffs_[i * n + k] = v.get_si();
    }
    if (ok) {
      const mpz_class v = row.b.Numerator() * (l / row.b.Denominator());
      ok = v.fits_slong_p();
      if (ok) rhs_[i] = v.get_si();
    }
    fast_[i] = ok ? 1 : 0;
    bool approx = true;
    for (int k = 0; k < n; ++k) {
      approx_coeffs_[i * n + k] = row.a[k].ToDouble();
      approx = approx && std::fabs(approx_coeffs_[i * n + k]) < 1e150;
    }
    approx_rhs_[i] = row.b.ToDouble();
    approx_[i] = approx && std::fabs(approx_rhs_[i]) < 1e150 ? 1 : 0;
    if (ok) {
      for (int k = 0; k < n; ++k) {
        coeff_bits_ = std::max(coeff_bits_, BitLength(mpz_class(coeffs_[i * n + k])));
      }
      coeff_bits_ = std::max(coeff_bits_, BitLength(mpz_class(rhs_[i])));
    }
  }
  // |Σ a_k p_k - b q| < (n + 1) 2^(coeff_bits + point_bits) must stay below 2^127.
  const std::size_t budget = 126 - BitLength(mpz_class(n + 1));
  point_bits_ = coeff_bits_ < budget ? budget - coeff_bits_ : 0;
}

std::size_t ConstraintMatrix::FirstViolated(std::span<const std::int64_t> x) const {
  if (static_cast<int>(x.size()) != n_) throw Error("point length mismatch");
  bool small = true;
  for (std::int64_t v : x) small = small && v <= kPointLimit && v >= -kPointLimit;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (small && fast_[i]) {
      const std::int64_t* a = &coeffs_[i * n_];
      i128 sum = 0;
      for (int k = 0; k < n_; ++k) sum += static_cast<i128>(a[k]) * x[k];
      if (sum > rhs_[i]) return i;
    } else if (Dot(rows_[i].a, x) > rows_[i].b) {
      return i;
    }
  }
  return npos;
}

void ConstraintMatrix::SetPartition(const std::vector<std::vector<int>>& parts) {
  std::vector<char> seen(n_, 0);
  parts_.clear();
  for (const std::vector<int>& part : parts) {
    for (int k : part) {
      if (k < 0 || k >= n_ || seen[k]) throw Error("coordinate partition is not a partition");
      seen[k] = 1;
    }
    if (part.size() >= 2) parts_.push_back(part);
  }
  class_members_.clear();
  class_coeffs_.clear();
  class_rhs_.clear();
  class_approx_.clear();
  class_keys_.clear();
  row_lookup_.clear();
  if (parts_.empty()) return;
  for (std::size_t i = 0; i < rows_.size(); ++i) row_lookup_.emplace(RowHash(rows_[i]), i);
  std::map<Row, std::size_t> index;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Row key{rows_[i].a, rows_[i].b};
    SortParts(std::span<Rational>(key.a));
    auto [it, inserted] = index.emplace(std::move(key), class_members_.size());
    if (inserted) {
      class_members_.emplace_back();
      class_keys_.push_back(it->first);
      bool approx = true;
      for (const Rational& v : it->first.a) {
        class_coeffs_.push_back(v.ToDouble());
        approx = approx && std::fabs(class_coeffs_.back()) < 1e150;
      }
      class_rhs_.push_back(it->first.b.ToDouble());
      class_approx_.push_back(approx && std::fabs(class_rhs_.back()) < 1e150 ? 1 : 0);
    }
    class_members_[it->second].push_back(i);
  }
}

std::size_t ConstraintMatrix::RowHash(const Row& row) {
  return HashRange(row.a) * 31 + HashRange(std::span<const Rational>(&row.b, 1));
}

std::size_t ConstraintMatrix::FindRow(const Row& row) const {
  auto [lo, hi] = row_lookup_.equal_range(RowHash(row));
  for (auto it = lo; it != hi; ++it) {
    if (rows_[it->second] == row) return it->second;
  }
  return npos;
}

template <typename T>
void ConstraintMatrix::SortParts(std::span<T> v) const {
  std::vector<T> values;
  for (const std::vector<int>& part : parts_) {
    values.clear();
    for (int k : part) values.push_back(v[k]);
    std::sort(values.begin(), values.end(), std::greater<>());
    for (std::size_t l = 0; l < part.size(); ++l) v[part[l]] = values[l];
  }
}

namespace {

// ⟨a, x⟩ - b in floating point is clearly negative: beyond any rounding error
// of the inputs and the sum.
bool ClearlyNegative(const double* a, const double* x, int n, double b) {
  double sum = -b;
  double mag = std::fabs(b);
  for (int k = 0; k < n; ++k) {
    const double t = a[k] * x[k];
    sum += t;
    mag += std::fabs(t);
  }
  return mag > 1e-200 && sum < -1e-9 * mag;
}

}  // namespace

template <bool kHomogeneous>
std::vector<std::size_t> ConstraintMatrix::Positive(std::span<const Rational> x,
                                                    std::vector<double>* amounts) const {
  if (static_cast<int>(x.size()) != n_) throw Error("point length mismatch");
  std::vector<std::pair<std::size_t, double>> found;
  std::vector<i128> p;
  i128 q = 1;
  const bool small = point_bits_ > 0 && ScalePoint(x, point_bits_, &p, &q);
  const double qd = static_cast<double>(q);
  std::vector<double> xd(n_);
  bool filter = true;
  for (int k = 0; k < n_; ++k) {
    xd[k] = x[k].ToDouble();
    filter = filter && std::isfinite(xd[k]) && std::fabs(xd[k]) < 1e150;
  }
  auto check = [&](std::size_t i) {
    if (filter && approx_[i] &&
        ClearlyNegative(&approx_coeffs_[i * n_], xd.data(), n_, kHomogeneous ? 0.0 : approx_rhs_[i])) {
      return;
    }
    if (small && fast_[i]) {
      const std::int64_t* a = &coeffs_[i * n_];
      i128 sum = 0;
      for (int k = 0; k < n_; ++k) sum += a[k] * p[k];
      if (!kHomogeneous) sum -= rhs_[i] * q;
      if (sum > 0) found.emplace_back(i, static_cast<double>(sum) / (static_cast<double>(scale_[i]) * qd));
    } else {
      Rational v = Dot(rows_[i].a, x);
      if (!kHomogeneous) v -= rows_[i].b;
      if (v.Sign() > 0) found.emplace_back(i, v.ToDouble());
    }
  };
  if (class_members_.empty()) {
    for (std::size_t i = 0; i < rows_.size(); ++i) check(i);
  } else {
    // Inside a class the rows share their part-sorted coefficients. By the
    // rearrangement inequality the largest ⟨a, x⟩ over the class pairs the
    // sorted coefficients with the coordinates of x in descending order, so one
    // exact evaluation decides the class. Only that maximizer is reported.
    std::vector<double> sorted = xd;
    SortParts(std::span<double>(sorted));
    std::vector<std::vector<int>> order;
    for (std::size_t c = 0; c < class_members_.size(); ++c) {
      if (filter && class_approx_[c] &&
          ClearlyNegative(&class_coeffs_[c * n_], sorted.data(), n_, kHomogeneous ? 0.0 : class_rhs_[c])) {
        continue;
      }
      if (order.empty()) {
        for (const std::vector<int>& part : parts_) {
          std::vector<int> o = part;
          std::sort(o.begin(), o.end(), [&](int u, int v) { return x[u] != x[v] ? x[u] > x[v] : u < v; });
          order.push_back(std::move(o));
        }
      }
      const Row& key = class_keys_[c];
      Row best{key.a, key.b};
      for (std::size_t p = 0; p < parts_.size(); ++p) {
        for (std::size_t l = 0; l < parts_[p].size(); ++l) best.a[order[p][l]] = key.a[parts_[p][l]];
      }
      Rational v = Dot(best.a, x);
      if (!kHomogeneous) v -= best.b;
      if (v.Sign() <= 0) continue;
      const std::size_t i = FindRow(best);
      if (i != npos) {
        found.emplace_back(i, v.ToDouble());
      } else {
        for (std::size_t member : class_members_[c]) check(member);
      }
    }
    std::sort(found.begin(), found.end());
  }
  std::vector<std::size_t> out;
  if (amounts != nullptr) amounts->clear();
  for (const auto& [i, v] : found) {
    out.push_back(i);
    if (amounts != nullptr) amounts->push_back(v);
  }
  return out;
}

std::vector<std::size_t> ConstraintMatrix::Violated(std::span<const Rational> x,
                                                    std::vector<double>* amounts) const {
  return Positive<false>(x, amounts);
}

std::vector<std::size_t> ConstraintMatrix::Ascending(std::span<const Rational> d,
                                                     std::vector<double>* amounts) const {
  return Positive<true>(d, amounts);
}

LpResult SolveInequalityForm(std::span<const Row> rows, std::span<const Rational> objective,
                             Sense sense, std::size_t* pivots, bool floating_start) {
  const int n = static_cast<int>(objective.size());
  const int m = static_cast<int>(rows.size());
  for (const Row& row : rows) {
    if (static_cast<int>(row.a.size()) != n) throw Error("LP row length mismatch");
  }
  RatVector c(objective.begin(), objective.end());
  if (sense == Sense::kMinimize) {
    for (Rational& v : c) v = -v;
  }
  std::optional<LpResult> certified;
  if (floating_start) certified = CertifiedFloatingSolve(rows, c, pivots);
  if (certified) {
    certified->optimum = Dot(objective, certified->point);
    return *std::move(certified);
  }
  std::vector<RatVector> matrix(m, RatVector(2 * n + m));
  RatVector rhs(m);
  std::vector<int> unit_col(m);
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(rows[i].a.size()) != n) throw Error("LP row length mismatch");
    for (int k = 0; k < n; ++k) {
      if (rows[i].a[k].IsZero()) continue;
      matrix[i][k] = rows[i].a[k];
      matrix[i][n + k] = -rows[i].a[k];
    }
    matrix[i][2 * n + i] = Rational(1);
    rhs[i] = rows[i].b;
    unit_col[i] = 2 * n + i;
  }
  RatVector cost(2 * n + m);
  for (int k = 0; k < n; ++k) {
    const Rational c = sense == Sense::kMaximize ? objective[k] : -objective[k];
    cost[k] = c;
    cost[n + k] = -c;
  }
  Tableau<Rational> tableau(std::move(matrix), std::move(rhs), std::move(unit_col), 2 * n + m);
  RatVector y;
  RatVector ray_y;
  LpResult result;
  result.status = tableau.Solve(cost, &y, &ray_y);
  if (pivots != nullptr) *pivots += tableau.pivots();
  if (result.status == LpStatus::kOptimal) {
    result.point.resize(n);
    for (int k = 0; k < n; ++k) result.point[k] = y[k] - y[n + k];
    result.optimum = Dot(objective, result.point);
  } else if (result.status == LpStatus::kUnbounded) {
    result.ray.resize(n);
    for (int k = 0; k < n; ++k) result.ray[k] = ray_y[k] - ray_y[n + k];
  }
  return result;
}

LpResult SolveStandardForm(const StandardFormProblem& problem, std::size_t* pivots) {
  const int m = static_cast<int>(problem.matrix.size());
  if (static_cast<int>(problem.rhs.size()) != m) throw Error("standard form rhs length mismatch");
  const int cols = m == 0 ? static_cast<int>(problem.objective.size())
                          : static_cast<int>(problem.matrix.front().size());
  for (const RatVector& row : problem.matrix) {
    if (static_cast<int>(row.size()) != cols) throw Error("standard form row length mismatch");
  }
  RatVector cost(cols);
  for (int j = 0; j < cols && j < static_cast<int>(problem.objective.size()); ++j) {
    cost[j] = problem.sense == Sense::kMaximize ? problem.objective[j] : -problem.objective[j];
  }
  Tableau<Rational> tableau(problem.matrix, problem.rhs, std::vector<int>(m, -1), cols);
  LpResult result;
  result.status = tableau.Solve(cost, &result.point, &result.ray);
  if (pivots != nullptr) *pivots += tableau.pivots();
  if (result.status == LpStatus::kOptimal) {
    result.optimum = problem.objective.empty() ? Rational() : Dot(problem.objective, result.point);
  } else {
    result.point.clear();
  }
  return result;
}

LpSolver::LpSolver(std::span<const Row> rows, int n, LpOptions options)
    : rows_(rows), n_(n), options_(options), matrix_(rows, n), in_working_(rows.size(), 0) {
  if (!options_.coordinate_partition.empty()) matrix_.SetPartition(options_.coordinate_partition);
}

LpResult LpSolver::SolveSubset(std::span<const Rational> objective, Sense sense,
                               std::span<const Row> extra_rows) {
  std::vector<Row> subset;
  subset.reserve(working_.size() + extra_rows.size());
  for (std::size_t i : working_) subset.push_back(rows_[i]);
  subset.insert(subset.end(), extra_rows.begin(), extra_rows.end());
  ++stats_.tableau_solves;
  return SolveInequalityForm(subset, objective, sense, &stats_.pivots);
}

void LpSolver::AddToWorkingSet(const std::vector<std::size_t>& candidates,
                               const std::vector<double>& amounts) {
  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(candidates.size());
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (in_working_[candidates[k]] == 0) scored.emplace_back(amounts[k], candidates[k]);
  }
  const std::size_t limit = std::min(
      scored.size(), options_.rows_per_round != 0
                         ? options_.rows_per_round
                         : std::max<std::size_t>(8, static_cast<std::size_t>(n_)));
  // Largest amount first, ties to the lower index. The ranking only picks
  // which rows to add; it does not affect correctness.
  std::partial_sort(scored.begin(), scored.begin() + limit, scored.end(),
                    [](const auto& l, const auto& r) {
                      return l.first > r.first || (l.first == r.first && l.second < r.second);
                    });
  for (std::size_t k = 0; k < limit; ++k) {
    in_working_[scored[k].second] = 1;
    working_.push_back(scored[k].second);
  }
  stats_.rows_generated += limit;
}

void LpSolver::TrimWorkingSet() {
  const std::size_t limit = options_.working_set_limit != 0
                                ? options_.working_set_limit
                                : 4 * static_cast<std::size_t>(n_) + 16;
  if (working_.size() <= limit || last_optimum_.empty()) return;
  std::vector<std::size_t> kept;
  for (std::size_t i : working_) {
    if (Dot(rows_[i].a, last_optimum_) == rows_[i].b) {
      kept.push_back(i);
    } else {
      in_working_[i] = 0;
      ++stats_.rows_dropped;
    }
  }
  working_ = std::move(kept);
}

LpResult LpSolver::Solve(std::span<const Rational> objective, Sense sense,
                         std::span<const Row> extra_rows) {
  if (static_cast<int>(objective.size()) != n_) throw Error("LP objective length mismatch");
  for (const Row& row : extra_rows) {
    if (static_cast<int>(row.a.size()) != n_) throw Error("LP row length mismatch");
  }
  ++stats_.solves;
  if (rows_.size() <= options_.direct_row_limit) {
    if (working_.size() != rows_.size()) {
      working_.resize(rows_.size());
      std::iota(working_.begin(), working_.end(), std::size_t{0});
      std::fill(in_working_.begin(), in_working_.end(), 1);
    }
    return SolveSubset(objective, sense, extra_rows);
  }
  // Rows only leave the working set here, so the loop below terminates.
  TrimWorkingSet();
  while (true) {
    LpResult result = SolveSubset(objective, sense, extra_rows);
    if (result.status == LpStatus::kInfeasible) return result;
    std::vector<double> amounts;
    if (result.status == LpStatus::kUnbounded) {
      std::vector<std::size_t> ascending = matrix_.Ascending(result.ray, &amounts);
      // The ray descends on every working row, so any ascending row is new.
      if (ascending.empty()) return result;
      AddToWorkingSet(ascending, amounts);
      continue;
    }
    std::vector<std::size_t> violated = matrix_.Violated(result.point, &amounts);
    if (violated.empty()) {
      last_optimum_ = result.point;
      return result;
    }
    AddToWorkingSet(violated, amounts);
  }
}

LpResult LpSolve(std::span<const Row> rows, std::span<const Rational> objective, Sense sense) {
  LpSolver solver(rows, static_cast<int>(objective.size()));
  return solver.Solve(objective, sense);
}

bool HullMembership(std::span<const Rational> candidate, const std::vector<RatVector>& generators) {
  if (generators.empty()) throw Error("hull membership needs at least one generator");
  const std::size_t n = candidate.size();
  StandardFormProblem problem;
  problem.matrix.assign(n + 1, RatVector(generators.size()));
  problem.rhs.assign(n + 1, Rational());
  for (std::size_t g = 0; g < generators.size(); ++g) {
    if (generators[g].size() != n) throw Error("hull membership dimension mismatch");
    for (std::size_t k = 0; k < n; ++k) problem.matrix[k][g] = generators[g][k];
    problem.matrix[n][g] = Rational(1);
  }
  for (std::size_t k = 0; k < n; ++k) problem.rhs[k] = candidate[k];
  problem.rhs[n] = Rational(1);
  return SolveStandardForm(problem).status == LpStatus::kOptimal;
}

bool HullMembership(std::span<const std::int64_t> candidate,
                    const std::vector<IntVector>& generators) {
  std::vector<RatVector> gens;
  gens.reserve(generators.size());
  for (const IntVector& g : generators) gens.push_back(ToRational(g));
  return HullMembership(ToRational(candidate), gens);
}

}  // namespace symcore
