#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <mpfr.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace dynspec {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Raised when a configured enumeration budget (cylinders, pairs, matrix
/// sizes) would be exceeded.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the hypothesis of a lemma-style check does not hold, so no
/// result is claimed.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

Rational parse_rational(std::string_view text);
Integer floor_rational(const Rational& x);
Integer ceil_rational(const Rational& x);
double to_double(const Rational& x);
Rational pow_rational(const Rational& base, unsigned exponent);

/// Decimal rendering with `digits` digits after the point. `round_up`
/// selects ceiling instead of floor at the last digit.
std::string to_decimal(const Rational& x, int digits, bool round_up = false);

/// Closed interval with exact rational endpoints.
struct Enclosure {
  Rational lo;
  Rational hi;

  Enclosure() = default;
  Enclosure(Rational lower, Rational upper);

  static Enclosure exact(const Rational& x) { return Enclosure(x, x); }

  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
  bool is_point() const { return lo == hi; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains(const Enclosure& other) const { return lo <= other.lo && other.hi <= hi; }
  bool overlaps(const Enclosure& other) const { return lo <= other.hi && other.lo <= hi; }

  friend bool operator==(const Enclosure&, const Enclosure&) = default;
};

Enclosure operator+(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a);
Enclosure operator*(const Rational& s, const Enclosure& a);
Enclosure hull(const Enclosure& a, const Enclosure& b);
/// Interval maximum: [max lo, max hi] encloses max(x, y) for x in a, y in b.
Enclosure enclosure_max(const Enclosure& a, const Enclosure& b);

/// "midpoint ± halfwidth" with enough digits to resolve the width.
std::string format_enclosure(const Enclosure& e, int max_digits = 40);

/// Decimal digits needed before the halfwidth is visible (capped).
int resolving_digits(const Rational& width, int max_digits = 40);

/// Owning wrapper over an MPFR float.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t precision = 256);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }

  void assign(const Rational& x, mpfr_rnd_t rounding);
  void assign(long double x);
  Rational to_rational() const;

 private:
  mpfr_t value_;
};

/// Rigorous enclosure of log(x); requires x.lo > 0.
Enclosure log_enclosure(const Enclosure& x, mpfr_prec_t precision = 256);

/// x -> (p x + q) / (r x + s)
template <class Scalar>
struct Mobius {
  Scalar p{1};
  Scalar q{0};
  Scalar r{0};
  Scalar s{1};

  static Mobius identity() { return {}; }

  Scalar determinant() const { return p * s - q * r; }

  /// (*this)(other(x))
  Mobius compose(const Mobius& other) const {
    return {p * other.p + q * other.r, p * other.q + q * other.s,
            r * other.p + s * other.r, r * other.q + s * other.s};
  }

  friend bool operator==(const Mobius&, const Mobius&) = default;
};

Rational apply(const Mobius<Rational>& m, const Rational& x);
/// Image of a closed interval that avoids the pole.
Enclosure apply(const Mobius<Rational>& m, const Enclosure& x);
/// |m'(x)| = |det| / (r x + s)^2
Rational derivative_abs(const Mobius<Rational>& m, const Rational& x);
bool pole_in(const Mobius<Rational>& m, const Enclosure& x);

/// Stateless 64-bit mixer used to derive independent seeds.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace dynspec
