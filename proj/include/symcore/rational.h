#ifndef SYMCORE_RATIONAL_H_
#define SYMCORE_RATIONAL_H_

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace symcore {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact rational number in lowest terms with a positive denominator.
//
// Values whose numerator and denominator fit in 63 bits are stored inline and
// handled with 128-bit intermediate arithmetic; anything larger is promoted to
// a GMP rational. The two representations never overlap, so equality and
// hashing can work on the representation directly.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const mpq_class& value);

  Rational(const Rational& other);
  Rational(Rational&& other) noexcept = default;
  Rational& operator=(const Rational& other);
  Rational& operator=(Rational&& other) noexcept = default;
  ~Rational();

  // Accepts "p", "-p", "p/q" with arbitrary-length decimal integers.
  static Rational Parse(std::string_view text);

  // "p/q", or "p" when the denominator is 1.
  std::string ToString() const;

  bool is_small() const { return big_ == nullptr; }
  int Sign() const;
  bool IsZero() const { return is_small() && num_ == 0; }
  bool IsInteger() const;

  mpz_class Numerator() const;
  mpz_class Denominator() const;
  mpq_class ToMpq() const;

  // Checked conversions; throw Error when the result does not fit in int64.
  std::int64_t FloorToInt64() const;
  std::int64_t CeilToInt64() const;
  std::int64_t ToInt64() const;  // requires IsInteger()

  // For telemetry only.
  double ToDouble() const;

  Rational operator-() const;
  Rational Abs() const;
  Rational Inverse() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& lhs, const Rational& rhs);
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

  std::size_t Hash() const;

 private:
  static Rational FromMpq(mpq_class value);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& value);

struct RationalHash {
  std::size_t operator()(const Rational& value) const { return value.Hash(); }
};

using RatVector = std::vector<Rational>;
using IntVector = std::vector<std::int64_t>;

// ⟨a, x⟩; throws Error on a length mismatch.
Rational Dot(std::span<const Rational> a, std::span<const Rational> x);
Rational Dot(std::span<const Rational> a, std::span<const std::int64_t> x);

RatVector ToRational(std::span<const std::int64_t> values);

std::string ToString(std::span<const Rational> values);
std::string ToString(std::span<const std::int64_t> values);

// Hash of a whole vector, consistent with element-wise equality.
std::size_t HashRange(std::span<const Rational> values);

// Least common multiple of the denominators (1 for an empty range).
mpz_class DenominatorLcm(std::span<const Rational> values);

}  // namespace symcore

#endif  // SYMCORE_RATIONAL_H_
