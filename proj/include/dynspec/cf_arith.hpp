#pragma once

#include "dynspec/numeric.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dynspec {

/// Exact real number (a + b·√d) / c with integers a, b, c and d ≥ 0.
///
/// Kept in lowest terms with c > 0; b = 0 and d = 0 whenever the value is
/// rational. Arithmetic between two irrational surds requires equal d.
class QuadraticSurd {
 public:
  QuadraticSurd() = default;
  QuadraticSurd(Integer a, Integer b, Integer d, Integer c);
  static QuadraticSurd rational(const Rational& x);

  const Integer& a() const { return a_; }
  const Integer& b() const { return b_; }
  const Integer& d() const { return d_; }
  const Integer& c() const { return c_; }
  bool is_rational() const { return b_ == 0; }

  /// Sign of the value: -1, 0 or 1.
  int sign() const;

  /// Enclosure of width ≤ tol on a dyadic grid, so a smaller tol always gives
  /// a nested enclosure.
  Enclosure enclosure(const Rational& tol) const;
  double approx() const;

  QuadraticSurd operator-() const;
  friend QuadraticSurd operator+(const QuadraticSurd& x, const QuadraticSurd& y);
  friend QuadraticSurd operator-(const QuadraticSurd& x, const QuadraticSurd& y);
  friend bool operator==(const QuadraticSurd&, const QuadraticSurd&) = default;

 private:
  void normalize();

  Integer a_{0};
  Integer b_{0};
  Integer d_{0};
  Integer c_{1};
};

/// Exact three-way comparison; both surds must share d unless one is rational.
int compare(const QuadraticSurd& x, const QuadraticSurd& y);
bool operator<(const QuadraticSurd& x, const QuadraticSurd& y);

/// Image of a surd under an integer Möbius map.
QuadraticSurd apply(const Mobius<Integer>& m, const QuadraticSurd& x);

/// [a0; preperiod..., (period...)], eventually periodic and normalized.
class ContinuedFraction {
 public:
  ContinuedFraction() = default;
  ContinuedFraction(Integer a0, std::vector<Integer> preperiod, std::vector<Integer> period);

  /// Grammar: `[a0;d1,d2,...,(p1,...,pk)]`, period optional.
  static ContinuedFraction parse(std::string_view text);
  static ContinuedFraction periodic(const std::vector<Integer>& word);

  const Integer& a0() const { return a0_; }
  const std::vector<Integer>& preperiod() const { return preperiod_; }
  const std::vector<Integer>& period() const { return period_; }
  bool is_finite() const { return period_.empty(); }

  /// a_i, i ≥ 0 (a_0 is the integer part). Finite expansions throw past the end.
  const Integer& digit(std::size_t i) const;
  std::size_t finite_length() const { return 1 + preperiod_.size(); }

  /// Tail [a_n; a_{n+1}, ...].
  ContinuedFraction tail(std::size_t n) const;

  std::string str() const;

  friend bool operator==(const ContinuedFraction&, const ContinuedFraction&) = default;

 private:
  void normalize();

  Integer a0_{0};
  std::vector<Integer> preperiod_;
  std::vector<Integer> period_;
};

/// Möbius map y ↦ [a_0; a_1, ..., a_{k-1}, y] for the given digits.
Mobius<Integer> digits_map(const std::vector<Integer>& digits);

/// Exact value of a continued fraction.
QuadraticSurd cf_surd(const ContinuedFraction& cf);
/// Purely periodic value [w0; w1, ..., w_{k-1}, w0, ...].
QuadraticSurd periodic_surd(const std::vector<Integer>& word);
Rational finite_cf_value(const std::vector<Integer>& digits);

/// Convergents p_k / q_k for k = 0..count-1.
std::vector<Rational> convergents(const ContinuedFraction& cf, std::size_t count);

Enclosure cf_value(const ContinuedFraction& cf, const Rational& tol);

/// (α_n, β_n) with α_n = [a_n; a_{n+1}, ...] and β_n = [0; a_{n-1}, ..., a_1].
std::pair<Enclosure, Enclosure> tail_and_reversal(const ContinuedFraction& cf, std::size_t n,
                                                  const Rational& tol);

/// α* + β* for each rotation of the bi-infinite periodic word, exact.
std::vector<QuadraticSurd> markov_candidates(const std::vector<Integer>& word);
QuadraticSurd markov_value_exact(const std::vector<Integer>& word);

Enclosure lagrange_value(const ContinuedFraction& cf, const Rational& tol);
Enclosure markov_value_word(const std::vector<Integer>& word, const Rational& tol);

/// f(x, y) = a x² + b x y + c y²
struct QuadraticForm {
  Rational a;
  Rational b;
  Rational c;

  Rational discriminant() const { return b * b - 4 * a * c; }
  Rational operator()(const Integer& x, const Integer& y) const;
};

/// √disc / min |f| over the box 0 < max(|x|,|y|) ≤ radius, as an exact surd.
QuadraticSurd form_markov_surd(const QuadraticForm& q, unsigned radius);
Enclosure form_markov_value(const QuadraticForm& q, unsigned radius, const Rational& tol);

/// (2221564096 + 283748·√462) / 491993569
QuadraticSurd freiman_surd();
Enclosure freiman_constant(const Rational& tol);

/// log(v / 2)
Enclosure height_map(const Enclosure& v);

}  // namespace dynspec
