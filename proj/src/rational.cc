#include "symcore/rational.h"

#include <cctype>
#include <functional>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <utility>

namespace symcore {
namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

bool FitsSmall(i128 v) { return v <= kMax && v >= -kMax; }

u128 Abs128(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

u128 Gcd128(u128 a, u128 b) {
  while (b != 0) {
    if ((a >> 64) == 0 && (b >> 64) == 0) {
      return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    }
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class MpzFrom128(i128 v) {
  const bool negative = v < 0;
  u128 mag = Abs128(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(mag >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(mag)));
  mpz_class out = (hi << 64) + lo;
  return negative ? mpz_class(-out) : out;
}

std::size_t HashMpz(const mpz_class& z) {
  std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 7);
  const std::size_t limbs = mpz_size(z.get_mpz_t());
  for (std::size_t i = 0; i < limbs; ++i) {
    h ^= std::hash<mp_limb_t>{}(mpz_getlimbn(z.get_mpz_t(), i)) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
  }
  return h;
}

bool IsDecimalInteger(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class ParseInteger(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational::Rational(std::int64_t value) {
  if (value == std::numeric_limits<std::int64_t>::min()) {
    *this = FromMpq(mpq_class(mpz_class(static_cast<long>(value))));
  } else {
    num_ = value;
  }
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error("rational with zero denominator");
  i128 n = num;
  i128 d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const u128 g = Gcd128(Abs128(n), static_cast<u128>(d));
  n /= static_cast<i128>(g);
  d /= static_cast<i128>(g);
  if (FitsSmall(n) && FitsSmall(d)) {
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
  } else {
    mpq_class q(MpzFrom128(n), MpzFrom128(d));
    *this = FromMpq(std::move(q));
  }
}

Rational::Rational(const mpq_class& value) {
  mpq_class q(value);
  q.canonicalize();
  *this = FromMpq(std::move(q));
}

Rational::Rational(const Rational& other)
    : num_(other.num_),
      den_(other.den_),
      big_(other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr) {}

Rational& Rational::operator=(const Rational& other) {
  if (this != &other) {
    num_ = other.num_;
    den_ = other.den_;
    big_ = other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr;
  }
  return *this;
}

Rational::~Rational() = default;

Rational Rational::FromMpq(mpq_class value) {
  Rational out;
  const mpz_srcptr n = value.get_num_mpz_t();
  const mpz_srcptr d = value.get_den_mpz_t();
  if (mpz_fits_slong_p(n) && mpz_fits_slong_p(d)) {
    const long nv = mpz_get_si(n);
    if (nv != std::numeric_limits<long>::min()) {
      out.num_ = nv;
      out.den_ = mpz_get_si(d);
      return out;
    }
  }
  out.big_ = std::make_unique<mpq_class>(std::move(value));
  return out;
}

Rational Rational::Parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  const auto slash = text.find('/');
  std::string_view num_text = text.substr(0, slash);
  std::string_view den_text = slash == std::string_view::npos ? "1" : text.substr(slash + 1);
  if (!IsDecimalInteger(num_text) || !IsDecimalInteger(den_text)) {
    throw Error("malformed rational '" + std::string(text) + "'");
  }
  mpz_class den = ParseInteger(den_text);
  if (den == 0) throw Error("rational with zero denominator: '" + std::string(text) + "'");
  mpq_class q(ParseInteger(num_text), den);
  q.canonicalize();
  return FromMpq(std::move(q));
}

std::string Rational::ToString() const {
  if (big_) return big_->get_str(10);
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

int Rational::Sign() const {
  if (big_) return mpq_sgn(big_->get_mpq_t());
  return (num_ > 0) - (num_ < 0);
}

bool Rational::IsInteger() const {
  if (big_) return mpz_cmp_ui(big_->get_den_mpz_t(), 1) == 0;
  return den_ == 1;
}

mpz_class Rational::Numerator() const {
  if (big_) return big_->get_num();
  return mpz_class(static_cast<long>(num_));
}

mpz_class Rational::Denominator() const {
  if (big_) return big_->get_den();
  return mpz_class(static_cast<long>(den_));
}

mpq_class Rational::ToMpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

std::int64_t Rational::FloorToInt64() const {
  if (!big_) {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
  if (!q.fits_slong_p()) throw Error("floor of " + ToString() + " does not fit in int64");
  return q.get_si();
}

std::int64_t Rational::CeilToInt64() const {
  if (!big_) {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
  }
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
  if (!q.fits_slong_p()) throw Error("ceiling of " + ToString() + " does not fit in int64");
  return q.get_si();
}

std::int64_t Rational::ToInt64() const {
  if (!IsInteger()) throw Error(ToString() + " is not an integer");
  if (!big_) return num_;
  throw Error(ToString() + " does not fit in int64");
}

double Rational::ToDouble() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

Rational Rational::operator-() const {
  if (big_) return FromMpq(-*big_);
  Rational out;
  out.num_ = -num_;
  out.den_ = den_;
  return out;
}

Rational Rational::Abs() const { return Sign() < 0 ? -*this : *this; }

Rational Rational::Inverse() const {
  if (IsZero()) throw Error("division by zero");
  if (big_) return FromMpq(1 / *big_);
  Rational out;
  out.num_ = num_ < 0 ? -den_ : den_;
  out.den_ = num_ < 0 ? -num_ : num_;
  return out;
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (rhs.num_ == 0) return *this;
    if (den_ == 1 && rhs.den_ == 1) {
      const i128 s = static_cast<i128>(num_) + rhs.num_;
      if (FitsSmall(s)) {
        num_ = static_cast<std::int64_t>(s);
        return *this;
      }
    }
    const i128 n = static_cast<i128>(num_) * rhs.den_ + static_cast<i128>(rhs.num_) * den_;
    const i128 d = static_cast<i128>(den_) * rhs.den_;
    const u128 g = Gcd128(Abs128(n), static_cast<u128>(d));
    const i128 rn = n / static_cast<i128>(g);
    const i128 rd = d / static_cast<i128>(g);
    if (FitsSmall(rn) && FitsSmall(rd)) {
      num_ = static_cast<std::int64_t>(rn);
      den_ = static_cast<std::int64_t>(rd);
      return *this;
    }
    *this = FromMpq(mpq_class(MpzFrom128(rn), MpzFrom128(rd)));
    return *this;
  }
  *this = FromMpq(ToMpq() + rhs.ToMpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (num_ == 0) return *this;
    if (rhs.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    const std::int64_t g1 = std::gcd(num_, rhs.den_);
    const std::int64_t g2 = std::gcd(rhs.num_, den_);
    const i128 n = static_cast<i128>(num_ / g1) * (rhs.num_ / g2);
    const i128 d = static_cast<i128>(den_ / g2) * (rhs.den_ / g1);
    if (FitsSmall(n) && FitsSmall(d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      return *this;
    }
    *this = FromMpq(mpq_class(MpzFrom128(n), MpzFrom128(d)));
    return *this;
  }
  *this = FromMpq(ToMpq() * rhs.ToMpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) { return *this *= rhs.Inverse(); }

bool operator==(const Rational& lhs, const Rational& rhs) {
  if (lhs.big_ || rhs.big_) {
    if (!lhs.big_ || !rhs.big_) return false;
    return *lhs.big_ == *rhs.big_;
  }
  return lhs.num_ == rhs.num_ && lhs.den_ == rhs.den_;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
  if (lhs.big_ || rhs.big_) {
    const int c = cmp(lhs.ToMpq(), rhs.ToMpq());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  if (lhs.den_ == rhs.den_) return lhs.num_ <=> rhs.num_;
  const i128 l = static_cast<i128>(lhs.num_) * rhs.den_;
  const i128 r = static_cast<i128>(rhs.num_) * lhs.den_;
  return l < r ? std::strong_ordering::less
               : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::size_t Rational::Hash() const {
  if (big_) return HashMpz(big_->get_num()) * 31 + HashMpz(big_->get_den());
  std::size_t h = std::hash<std::int64_t>{}(num_);
  return h ^ (std::hash<std::int64_t>{}(den_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::ostream& operator<<(std::ostream& os, const Rational& value) {
  return os << value.ToString();
}

Rational Dot(std::span<const Rational> a, std::span<const Rational> x) {
  if (a.size() != x.size()) {
    throw Error("dot product length mismatch: " + std::to_string(a.size()) + " vs " +
                std::to_string(x.size()));
  }
  Rational sum;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].IsZero() || x[i].IsZero()) continue;
    sum += a[i] * x[i];
  }
  return sum;
}

Rational Dot(std::span<const Rational> a, std::span<const std::int64_t> x) {
  if (a.size() != x.size()) {
    throw Error("dot product length mismatch: " + std::to_string(a.size()) + " vs " +
                std::to_string(x.size()));
  }
  Rational sum;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (x[i] == 0 || a[i].IsZero()) continue;
    sum += a[i] * Rational(x[i]);
  }
  return sum;
}

RatVector ToRational(std::span<const std::int64_t> values) {
  return RatVector(values.begin(), values.end());
}

std::string ToString(std::span<const Rational> values) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << values[i];
  os << ')';
  return os.str();
}

std::string ToString(std::span<const std::int64_t> values) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << values[i];
  os << ')';
  return os.str();
}

std::size_t HashRange(std::span<const Rational> values) {
  std::size_t h = values.size();
  for (const Rational& v : values) {
    h ^= v.Hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

mpz_class DenominatorLcm(std::span<const Rational> values) {
  mpz_class l = 1;
  for (const Rational& v : values) {
    if (v.IsInteger()) continue;
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.Denominator().get_mpz_t());
  }
  return l;
}

}  // namespace symcore
