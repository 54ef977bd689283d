#include "dynspec/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace dynspec {

namespace {

Integer pow10(unsigned k) {
  Integer r = 1;
  for (unsigned i = 0; i < k; ++i) r *= 10;
  return r;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string strip_zeros(std::string s) {
  const auto first = s.find_first_not_of('0');
  return first == std::string::npos ? std::string("0") : s.substr(first);
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

Integer parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
  Integer v(strip_zeros(std::string(s)));
  return negative ? Integer(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty number");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    Integer num = parse_integer(std::string_view(s).substr(0, slash));
    Integer den = parse_integer(std::string_view(s).substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    return Rational(num, den);
  }

  std::string_view body(s);
  long exponent = 0;
  if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = body.substr(e + 1);
    bool neg = false;
    if (!exp_part.empty() && (exp_part[0] == '-' || exp_part[0] == '+')) {
      neg = exp_part[0] == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6)
      throw std::invalid_argument("malformed exponent in '" + s + "'");
    exponent = std::stol(std::string(exp_part));
    if (neg) exponent = -exponent;
    body = body.substr(0, e);
  }

  bool negative = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    negative = body[0] == '-';
    body.remove_prefix(1);
  }
  std::string int_part(body), frac_part;
  if (auto dot = body.find('.'); dot != std::string_view::npos) {
    int_part = std::string(body.substr(0, dot));
    frac_part = std::string(body.substr(dot + 1));
  }
  if (int_part.empty() && frac_part.empty()) throw std::invalid_argument("malformed number '" + s + "'");
  if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
    throw std::invalid_argument("malformed number '" + s + "'");

  Integer digits(strip_zeros(int_part + frac_part));
  long scale = static_cast<long>(frac_part.size()) - exponent;
  Rational value = scale >= 0 ? Rational(digits, pow10(static_cast<unsigned>(scale)))
                              : Rational(digits * pow10(static_cast<unsigned>(-scale)));
  return negative ? Rational(-value) : value;
}

Integer floor_rational(const Rational& x) {
  Integer n = numerator(x), d = denominator(x);
  Integer q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

Integer ceil_rational(const Rational& x) {
  Integer f = floor_rational(x);
  return Rational(f) == x ? f : Integer(f + 1);
}

double to_double(const Rational& x) { return x.convert_to<double>(); }

Rational pow_rational(const Rational& base, unsigned exponent) {
  Rational result = 1, b = base;
  while (exponent) {
    if (exponent & 1u) result *= b;
    b *= b;
    exponent >>= 1u;
  }
  return result;
}

std::string to_decimal(const Rational& x, int digits, bool round_up) {
  digits = std::max(digits, 0);
  const Integer scale = pow10(static_cast<unsigned>(digits));
  const Rational scaled = x * scale;
  Integer n = round_up ? ceil_rational(scaled) : floor_rational(scaled);
  const bool negative = n < 0;
  if (negative) n = -n;
  std::string s = n.str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  if (negative) s.insert(0, "-");
  return s;
}

Enclosure::Enclosure(Rational lower, Rational upper) : lo(std::move(lower)), hi(std::move(upper)) {
  if (lo > hi) throw std::invalid_argument("enclosure with lo > hi");
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Enclosure operator-(const Enclosure& a, const Enclosure& b) { return {a.lo - b.hi, a.hi - b.lo}; }
Enclosure operator-(const Enclosure& a) { return {-a.hi, -a.lo}; }

Enclosure operator*(const Rational& s, const Enclosure& a) {
  if (s >= 0) return {s * a.lo, s * a.hi};
  return {s * a.hi, s * a.lo};
}

Enclosure hull(const Enclosure& a, const Enclosure& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Enclosure enclosure_max(const Enclosure& a, const Enclosure& b) {
  return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
}

int resolving_digits(const Rational& width, int max_digits) {
  if (width <= 0) return max_digits;
  int digits = 0;
  Rational w = width;
  while (w < 1 && digits < max_digits) {
    w *= 10;
    ++digits;
  }
  return std::min(digits + 2, max_digits);
}

std::string format_enclosure(const Enclosure& e, int max_digits) {
  const Rational half = e.width() / 2;
  const int digits = resolving_digits(e.width(), max_digits);
  std::ostringstream out;
  out << to_decimal(e.midpoint(), digits) << " ± " << to_decimal(half, digits, true);
  return out.str();
}

BigFloat::BigFloat(mpfr_prec_t precision) { mpfr_init2(value_, precision); }

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

void BigFloat::assign(const Rational& x, mpfr_rnd_t rounding) {
  mpfr_set_q(value_, x.backend().data(), rounding);
}

void BigFloat::assign(long double x) { mpfr_set_ld(value_, x, MPFR_RNDN); }

Rational BigFloat::to_rational() const {
  if (!mpfr_number_p(value_)) throw std::domain_error("non-finite MPFR value");
  if (mpfr_zero_p(value_)) return 0;
  Integer mantissa;
  const mpfr_exp_t e = mpfr_get_z_2exp(mantissa.backend().data(), value_);
  Rational r(mantissa);
  if (e >= 0) {
    r *= Rational(Integer(1) << static_cast<unsigned>(e));
  } else {
    r /= Rational(Integer(1) << static_cast<unsigned>(-e));
  }
  return r;
}

Enclosure log_enclosure(const Enclosure& x, mpfr_prec_t precision) {
  if (x.lo <= 0) throw std::domain_error("logarithm of a nonpositive enclosure");
  BigFloat lo(precision), hi(precision);
  lo.assign(x.lo, MPFR_RNDD);
  hi.assign(x.hi, MPFR_RNDU);
  mpfr_log(lo.get(), lo.get(), MPFR_RNDD);
  mpfr_log(hi.get(), hi.get(), MPFR_RNDU);
  return {lo.to_rational(), hi.to_rational()};
}

Rational apply(const Mobius<Rational>& m, const Rational& x) {
  const Rational den = m.r * x + m.s;
  if (den == 0) throw std::domain_error("Mobius map evaluated at its pole");
  return (m.p * x + m.q) / den;
}

bool pole_in(const Mobius<Rational>& m, const Enclosure& x) {
  const Rational a = m.r * x.lo + m.s, b = m.r * x.hi + m.s;
  return a == 0 || b == 0 || (a < 0) != (b < 0);
}

Enclosure apply(const Mobius<Rational>& m, const Enclosure& x) {
  if (pole_in(m, x)) throw std::domain_error("interval contains the pole of a Mobius map");
  Rational a = apply(m, x.lo), b = apply(m, x.hi);
  if (a > b) std::swap(a, b);
  return {a, b};
}

Rational derivative_abs(const Mobius<Rational>& m, const Rational& x) {
  const Rational den = m.r * x + m.s;
  if (den == 0) throw std::domain_error("Mobius derivative at its pole");
  return abs(m.determinant()) / (den * den);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace dynspec
