#include "symcore/core.h"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>

namespace symcore {
namespace {

using Int128 = __int128;

// Reduced row echelon form; rows holds the nonzero rows.
struct Echelon {
  std::vector<RatVector> rows;
  std::vector<int> pivots;
};

Echelon ReducedEchelon(std::vector<RatVector> m, int n) {
  Echelon e;
  std::size_t next = 0;
  for (int col = 0; col < n && next < m.size(); ++col) {
    std::size_t pivot = next;
    while (pivot < m.size() && m[pivot][col].IsZero()) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[next]);
    const Rational inv = m[next][col].Inverse();
    for (auto& v : m[next]) v *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == next || m[r][col].IsZero()) continue;
      const Rational f = m[r][col];
      for (int k = col; k < n; ++k) {
        if (!m[next][k].IsZero()) m[r][k] -= f * m[next][k];
      }
    }
    e.pivots.push_back(col);
    ++next;
  }
  m.resize(next);
  e.rows = std::move(m);
  return e;
}

// Inverse of a nonsingular square matrix by Gauss-Jordan elimination.
std::vector<RatVector> Inverse(std::vector<RatVector> m) {
  const std::size_t n = m.size();
  std::vector<RatVector> inv(n, RatVector(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (m[pivot][col].IsZero()) ++pivot;
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational p = m[col][col].Inverse();
    for (std::size_t k = 0; k < n; ++k) {
      m[col][k] *= p;
      inv[col][k] *= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col].IsZero()) continue;
      const Rational f = m[r][col];
      for (std::size_t k = 0; k < n; ++k) {
        m[r][k] -= f * m[col][k];
        inv[r][k] -= f * inv[col][k];
      }
    }
  }
  return inv;
}

std::size_t SaturatingVolume(const IntVector& lo, const IntVector& hi, std::size_t cap) {
  std::size_t volume = 1;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    const auto width = static_cast<std::uint64_t>(hi[i] - lo[i]) + 1;
    if (width > cap || volume > cap / width) return cap + 1;
    volume *= width;
  }
  return volume;
}

void RequireBoxCap(std::size_t volume, std::size_t cap) {
  if (volume > cap) {
    throw Error("box scan exceeds the box cap of " + std::to_string(cap) + " points");
  }
}

// (constant + Σ_k coef_k u_k) / den with the numerator required to lie in
// [lo, hi].
struct AffineForm {
  std::int64_t constant = 0;
  std::vector<std::int64_t> coef;
  std::int64_t den = 1;
  Int128 lo = 0;
  Int128 hi = 0;
};

std::optional<AffineForm> ScaleForm(const Rational& constant, const RatVector& coef) {
  mpz_class den = constant.Denominator();
  for (const Rational& c : coef) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.Denominator().get_mpz_t());
  }
  if (!den.fits_slong_p()) return std::nullopt;
  const Rational scale{mpq_class(den)};
  AffineForm f;
  f.den = den.get_si();
  try {
    f.constant = (constant * scale).ToInt64();
    for (const Rational& c : coef) f.coef.push_back((c * scale).ToInt64());
  } catch (const Error&) {
    return std::nullopt;
  }
  return f;
}

bool IsSphere(const std::vector<IntVector>& vertices, RatVector* center, Rational* radius2) {
  const std::size_t n = vertices.front().size();
  RatVector g(n);
  for (const IntVector& v : vertices) {
    for (std::size_t k = 0; k < n; ++k) g[k] += v[k];
  }
  const Rational inv(1, static_cast<std::int64_t>(vertices.size()));
  for (auto& x : g) x *= inv;
  auto dist2 = [&](const IntVector& v) {
    Rational d;
    for (std::size_t k = 0; k < n; ++k) {
      const Rational t = Rational(v[k]) - g[k];
      d += t * t;
    }
    return d;
  };
  const Rational r2 = dist2(vertices.front());
  for (const IntVector& v : vertices) {
    if (dist2(v) != r2) return false;
  }
  *center = std::move(g);
  *radius2 = r2;
  return true;
}

class HullScanner {
 public:
  HullScanner(std::vector<IntVector> vertices, const CoreOracleOptions& options)
      : vertices_(std::move(vertices)), options_(options),
        vertex_set_(vertices_.begin(), vertices_.end()) {
    n_ = static_cast<int>(vertices_.front().size());
    lo_ = hi_ = vertices_.front();
    for (const IntVector& v : vertices_) {
      if (static_cast<int>(v.size()) != n_) throw Error("hull vertices differ in length");
      for (int k = 0; k < n_; ++k) {
        lo_[k] = std::min(lo_[k], v[k]);
        hi_[k] = std::max(hi_[k], v[k]);
      }
    }
    sphere_ = IsSphere(vertices_, &center_, &radius2_);
  }

  std::optional<IntVector> Run() {
    if (!options_.exhaustive && BuildForms()) return ReducedScan();
    return ExhaustiveScan();
  }

 private:
  // Parametrizes the affine hull by the pivot coordinates of the difference
  // vectors. False when coefficients leave the 64-bit range.
  bool BuildForms() {
    const IntVector& p0 = vertices_.front();
    std::vector<RatVector> diff;
    for (std::size_t i = 1; i < vertices_.size(); ++i) {
      RatVector d(n_);
      for (int k = 0; k < n_; ++k) d[k] = vertices_[i][k] - p0[k];
      diff.push_back(std::move(d));
    }
    const Echelon e = ReducedEchelon(std::move(diff), n_);
    params_ = e.pivots;
    const std::size_t r = params_.size();
    std::vector<bool> is_param(n_, false);
    for (int p : params_) is_param[p] = true;

    // x_f = p0_f + Σ_row R[row][f] (u_row - p0_{P[row]}).
    for (int f = 0; f < n_; ++f) {
      if (is_param[f]) continue;
      Rational constant(p0[f]);
      RatVector coef(r);
      for (std::size_t row = 0; row < r; ++row) {
        coef[row] = e.rows[row][f];
        constant -= coef[row] * Rational(p0[params_[row]]);
      }
      auto form = ScaleForm(constant, coef);
      if (!form) return false;
      form->lo = static_cast<Int128>(lo_[f]) * form->den;
      form->hi = static_cast<Int128>(hi_[f]) * form->den;
      dependent_.push_back(f);
      forms_.push_back(std::move(*form));
    }

    // On a simplex the barycentric weights are affine in u.
    simplex_ = vertices_.size() == r + 1;
    if (simplex_ && r > 0) {
      std::vector<RatVector> m(r, RatVector(r));
      for (std::size_t row = 0; row < r; ++row) {
        for (std::size_t i = 1; i < vertices_.size(); ++i) {
          m[row][i - 1] = vertices_[i][params_[row]] - p0[params_[row]];
        }
      }
      const std::vector<RatVector> inv = Inverse(std::move(m));
      RatVector sum_coef(r);
      Rational sum_constant;
      auto add_weight = [&](const Rational& constant, const RatVector& coef) {
        auto form = ScaleForm(constant, coef);
        if (!form) return false;
        form->lo = 0;
        form->hi = form->den;
        forms_.push_back(std::move(*form));
        return true;
      };
      for (std::size_t i = 0; i < r; ++i) {
        Rational constant;
        for (std::size_t row = 0; row < r; ++row) {
          constant -= inv[i][row] * Rational(p0[params_[row]]);
          sum_coef[row] += inv[i][row];
        }
        sum_constant += constant;
        if (!add_weight(constant, inv[i])) return false;
      }
      RatVector neg(r);
      for (std::size_t row = 0; row < r; ++row) neg[row] = -sum_coef[row];
      if (!add_weight(Rational(1) - sum_constant, neg)) return false;
    }

    IntVector plo;
    IntVector phi;
    for (int p : params_) {
      plo.push_back(lo_[p]);
      phi.push_back(hi_[p]);
    }
    RequireBoxCap(SaturatingVolume(plo, phi, options_.box_cap), options_.box_cap);

    // Suffix ranges of Σ_{k >= level} coef_k u_k over the parameter box.
    for (AffineForm& f : forms_) {
      std::vector<Int128> smin(r + 1, 0);
      std::vector<Int128> smax(r + 1, 0);
      for (std::size_t k = r; k-- > 0;) {
        const Int128 a = static_cast<Int128>(f.coef[k]) * lo_[params_[k]];
        const Int128 b = static_cast<Int128>(f.coef[k]) * hi_[params_[k]];
        smin[k] = smin[k + 1] + std::min(a, b);
        smax[k] = smax[k + 1] + std::max(a, b);
      }
      suffix_min_.push_back(std::move(smin));
      suffix_max_.push_back(std::move(smax));
    }
    return true;
  }

  std::optional<IntVector> ReducedScan() {
    partial_.assign(forms_.size(), 0);
    for (std::size_t i = 0; i < forms_.size(); ++i) partial_[i] = forms_[i].constant;
    point_.assign(n_, 0);
    return Descend(0);
  }

  static Int128 FloorDiv(Int128 a, Int128 b) {
    Int128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  }
  static Int128 CeilDiv(Int128 a, Int128 b) { return -FloorDiv(-a, b); }

  std::optional<IntVector> Descend(std::size_t level) {
    const std::size_t r = params_.size();
    if (level == r) return Leaf();
    // Intersect the admissible ranges of u_level from every form.
    Int128 ulo = lo_[params_[level]];
    Int128 uhi = hi_[params_[level]];
    for (std::size_t i = 0; i < forms_.size(); ++i) {
      const Int128 c = forms_[i].coef[level];
      const Int128 low = forms_[i].lo - partial_[i] - suffix_max_[i][level + 1];
      const Int128 high = forms_[i].hi - partial_[i] - suffix_min_[i][level + 1];
      if (c == 0) {
        if (low > 0 || high < 0) return std::nullopt;
        continue;
      }
      // low <= c u <= high.
      if (c > 0) {
        ulo = std::max(ulo, CeilDiv(low, c));
        uhi = std::min(uhi, FloorDiv(high, c));
      } else {
        ulo = std::max(ulo, CeilDiv(high, c));
        uhi = std::min(uhi, FloorDiv(low, c));
      }
      if (ulo > uhi) return std::nullopt;
    }
    for (Int128 u = ulo; u <= uhi; ++u) {
      point_[params_[level]] = static_cast<std::int64_t>(u);
      for (std::size_t i = 0; i < forms_.size(); ++i) partial_[i] += forms_[i].coef[level] * u;
      std::optional<IntVector> found = Descend(level + 1);
      for (std::size_t i = 0; i < forms_.size(); ++i) partial_[i] -= forms_[i].coef[level] * u;
      if (found) return found;
    }
    return std::nullopt;
  }

  std::optional<IntVector> Leaf() {
    for (std::size_t j = 0; j < dependent_.size(); ++j) {
      const AffineForm& f = forms_[j];
      if (partial_[j] % f.den != 0) return std::nullopt;
      point_[dependent_[j]] = static_cast<std::int64_t>(partial_[j] / f.den);
    }
    if (vertex_set_.contains(point_)) return std::nullopt;
    // Barycentric weights are already within [0, 1] here.
    if (simplex_) return point_;
    return Decide(point_) ? std::optional<IntVector>(point_) : std::nullopt;
  }

  // Hull test for a non-vertex point.
  bool Decide(const IntVector& x) {
    if (sphere_) {
      Rational d;
      for (int k = 0; k < n_; ++k) {
        const Rational t = Rational(x[k]) - center_[k];
        d += t * t;
      }
      // Inside the ball only strictly; the sphere meets the hull in vertices.
      if (d >= radius2_) return false;
    }
    return HullMembership(std::span<const std::int64_t>(x), vertices_);
  }

  std::optional<IntVector> ExhaustiveScan() {
    RequireBoxCap(SaturatingVolume(lo_, hi_, options_.box_cap), options_.box_cap);
    IntVector x = lo_;
    while (true) {
      if (!vertex_set_.contains(x) && HullMembership(std::span<const std::int64_t>(x), vertices_)) {
        return x;
      }
      int k = n_ - 1;
      while (k >= 0 && x[k] == hi_[k]) {
        x[k] = lo_[k];
        --k;
      }
      if (k < 0) return std::nullopt;
      ++x[k];
    }
  }

  std::vector<IntVector> vertices_;
  const CoreOracleOptions& options_;
  std::set<IntVector> vertex_set_;
  int n_ = 0;
  IntVector lo_;
  IntVector hi_;
  bool sphere_ = false;
  RatVector center_;
  Rational radius2_;

  std::vector<int> params_;
  std::vector<int> dependent_;
  // Dependent-coordinate forms first, then barycentric weights.
  std::vector<AffineForm> forms_;
  std::vector<std::vector<Int128>> suffix_min_;
  std::vector<std::vector<Int128>> suffix_max_;
  bool simplex_ = false;

  std::vector<Int128> partial_;
  IntVector point_;
};

void ValidateGenerators(const std::vector<Permutation>& gens, int n) {
  for (const Permutation& p : gens) {
    if (static_cast<int>(p.size()) != n) {
      throw Error("generator length " + std::to_string(p.size()) + " does not match dimension " +
                  std::to_string(n));
    }
    ValidatePermutation(p, n);
  }
}

}  // namespace

CoreRep FiberRep(const BlockGroup& group, const FiberIndex& s) {
  if (static_cast<int>(s.size()) != group.d()) {
    throw Error("fiber index has length " + std::to_string(s.size()) + ", expected " +
                std::to_string(group.d()));
  }
  CoreRep rep{IntVector(group.n()), s};
  for (int i = 0; i < group.d(); ++i) {
    const Block& block = group.block(i);
    const auto k = static_cast<std::int64_t>(block.size());
    std::int64_t q = s.sums[i] / k;
    std::int64_t r = s.sums[i] % k;
    if (r < 0) {
      r += k;
      --q;
    }
    for (std::size_t pos = 0; pos < block.coords.size(); ++pos) {
      rep.z[block.coords[pos]] = static_cast<std::int64_t>(pos) < r ? q + 1 : q;
    }
  }
  return rep;
}

std::optional<IntVector> FiberFeasible(const BlockGroup& group, const ConstraintMatrix& rows,
                                       const FiberIndex& s) {
  IntVector z = FiberRep(group, s).z;
  if (!rows.Satisfies(z)) return std::nullopt;
  return z;
}

std::optional<IntVector> FiberFeasible(const Instance& inst, const FiberIndex& s) {
  return FiberFeasible(inst.group, ConstraintMatrix(inst.rows, inst.n), s);
}

std::optional<IntVector> FindNonVertexLatticePoint(const std::vector<IntVector>& vertices,
                                                   const CoreOracleOptions& options) {
  if (vertices.empty()) throw Error("hull of an empty point set");
  std::vector<IntVector> unique = vertices;
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  return HullScanner(std::move(unique), options).Run();
}

bool IsCorePoint(const std::vector<Permutation>& gens, const IntVector& z,
                 const CoreOracleOptions& options) {
  ValidateGenerators(gens, static_cast<int>(z.size()));
  return !FindNonVertexLatticePoint(OrbitOfVector(gens, z, options.orbit_cap), options);
}

std::vector<IntVector> EnumerateCorePointsInBox(const std::vector<Permutation>& gens,
                                                const IntVector& lo, const IntVector& hi,
                                                std::optional<std::int64_t> k,
                                                const CoreOracleOptions& options) {
  if (lo.size() != hi.size()) throw Error("box bounds differ in length");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (lo[i] > hi[i]) throw Error("empty box in coordinate " + std::to_string(i));
  }
  ValidateGenerators(gens, static_cast<int>(lo.size()));
  RequireBoxCap(SaturatingVolume(lo, hi, options.box_cap), options.box_cap);

  // Core membership is constant on orbits; key orbits by their least point.
  std::map<IntVector, bool> known;
  std::vector<IntVector> out;
  IntVector z = lo;
  const int n = static_cast<int>(lo.size());
  while (true) {
    std::int64_t sum = 0;
    for (std::int64_t v : z) sum += v;
    if (!k || sum == *k) {
      const std::vector<IntVector> orbit = OrbitOfVector(gens, z, options.orbit_cap);
      const IntVector key = *std::min_element(orbit.begin(), orbit.end());
      auto it = known.find(key);
      if (it == known.end()) {
        it = known.emplace(key, !FindNonVertexLatticePoint(orbit, options)).first;
      }
      if (it->second) out.push_back(z);
    }
    int pos = n - 1;
    while (pos >= 0 && z[pos] == hi[pos]) {
      z[pos] = lo[pos];
      --pos;
    }
    if (pos < 0) break;
    ++z[pos];
  }
  return out;
}

IntVector CyclicExamplePoint(int n, const IntVector& a) {
  if (n < 4 || n % 2 != 0) throw Error("cyclic example needs an even n >= 4, got " + std::to_string(n));
  const int m = n / 2;
  if (static_cast<int>(a.size()) != m - 1) {
    throw Error("cyclic example with n = " + std::to_string(n) + " needs " + std::to_string(m - 1) +
                " parameters, got " + std::to_string(a.size()));
  }
  IntVector z(n);
  z[0] = 1;
  for (int i = 0; i < m - 1; ++i) {
    z[1 + i] = a[i];
    z[m + 1 + i] = -a[i];
  }
  return z;
}

Permutation CyclicShift(int n) {
  Permutation p(n);
  for (int i = 0; i < n; ++i) p[i] = (i + 1) % n;
  return p;
}

}  // namespace symcore
