#include "dynspec/cf_arith.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dynspec {

namespace {

Integer gcd_int(const Integer& x, const Integer& y) { return boost::multiprecision::gcd(x, y); }

Integer isqrt(const Integer& x) { return boost::multiprecision::sqrt(x); }

bool is_square(const Integer& x, Integer& root) {
  root = isqrt(x);
  return root * root == x;
}

}  // namespace

QuadraticSurd::QuadraticSurd(Integer a, Integer b, Integer d, Integer c)
    : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)), c_(std::move(c)) {
  normalize();
}

QuadraticSurd QuadraticSurd::rational(const Rational& x) {
  return QuadraticSurd(numerator(x), 0, 0, denominator(x));
}

void QuadraticSurd::normalize() {
  if (c_ == 0) throw std::domain_error("quadratic surd with zero denominator");
  if (d_ < 0) throw std::domain_error("quadratic surd with negative radicand");
  if (b_ != 0 && d_ != 0) {
    Integer root;
    if (is_square(d_, root)) {
      a_ += b_ * root;
      b_ = 0;
    }
  }
  if (b_ == 0 || d_ == 0) {
    b_ = 0;
    d_ = 0;
  }
  if (c_ < 0) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
  }
  Integer g = gcd_int(gcd_int(a_, b_), c_);
  if (g > 1) {
    a_ /= g;
    b_ /= g;
    c_ /= g;
  }
}

int QuadraticSurd::sign() const {
  auto sgn = [](const Integer& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); };
  const int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // opposite signs: compare a² with b²d (never equal for non-square d)
  const Integer lhs = a_ * a_, rhs = b_ * b_ * d_;
  return lhs > rhs ? sa : sb;
}

Enclosure QuadraticSurd::enclosure(const Rational& tol) const {
  if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
  if (is_rational()) return Enclosure::exact(Rational(a_, c_));
  Integer scale = 1;
  while (Rational(scale) * tol * Rational(c_) < 1) scale <<= 1;
  const Integer t = b_ * b_ * d_;
  const Integer r = isqrt(t * scale * scale);
  const Rational root_lo(r, scale), root_hi(Integer(r + 1), scale);
  const Rational base(a_);
  const Rational den(c_);
  if (b_ > 0) return {(base + root_lo) / den, (base + root_hi) / den};
  return {(base - root_hi) / den, (base - root_lo) / den};
}

double QuadraticSurd::approx() const {
  const Enclosure e = enclosure(Rational(1, Integer(1) << 64));
  return to_double(e.midpoint());
}

QuadraticSurd QuadraticSurd::operator-() const { return QuadraticSurd(-a_, -b_, d_, c_); }

QuadraticSurd operator+(const QuadraticSurd& x, const QuadraticSurd& y) {
  if (!x.is_rational() && !y.is_rational() && x.d_ != y.d_)
    throw std::domain_error("adding surds over different radicands");
  const Integer& d = x.is_rational() ? y.d_ : x.d_;
  return QuadraticSurd(x.a_ * y.c_ + y.a_ * x.c_, x.b_ * y.c_ + y.b_ * x.c_, d, x.c_ * y.c_);
}

QuadraticSurd operator-(const QuadraticSurd& x, const QuadraticSurd& y) { return x + (-y); }

int compare(const QuadraticSurd& x, const QuadraticSurd& y) { return (x - y).sign(); }

bool operator<(const QuadraticSurd& x, const QuadraticSurd& y) { return compare(x, y) < 0; }

QuadraticSurd apply(const Mobius<Integer>& m, const QuadraticSurd& x) {
  const Integer n0 = m.p * x.a() + m.q * x.c();
  const Integer n1 = m.p * x.b();
  const Integer d0 = m.r * x.a() + m.s * x.c();
  const Integer d1 = m.r * x.b();
  if (x.is_rational()) {
    if (d0 == 0) throw std::domain_error("Mobius map evaluated at its pole");
    return QuadraticSurd(n0, 0, 0, d0);
  }
  const Integer den = d0 * d0 - d1 * d1 * x.d();
  if (den == 0) throw std::domain_error("Mobius map evaluated at its pole");
  return QuadraticSurd(n0 * d0 - n1 * d1 * x.d(), n1 * d0 - n0 * d1, x.d(), den);
}

// ---------------------------------------------------------------------------

ContinuedFraction::ContinuedFraction(Integer a0, std::vector<Integer> preperiod, std::vector<Integer> period)
    : a0_(std::move(a0)), preperiod_(std::move(preperiod)), period_(std::move(period)) {
  normalize();
}

ContinuedFraction ContinuedFraction::periodic(const std::vector<Integer>& word) {
  if (word.empty()) throw std::invalid_argument("empty periodic word");
  std::vector<Integer> period(word.begin() + 1, word.end());
  period.push_back(word.front());
  return ContinuedFraction(word.front(), {}, std::move(period));
}

void ContinuedFraction::normalize() {
  auto positive = [](const Integer& v) { return v >= 1; };
  if (!std::all_of(preperiod_.begin(), preperiod_.end(), positive) ||
      !std::all_of(period_.begin(), period_.end(), positive))
    throw std::invalid_argument("continued fraction digits after a0 must be >= 1");

  if (!period_.empty()) {
    const std::size_t k = period_.size();
    for (std::size_t p = 1; p <= k; ++p) {
      if (k % p != 0) continue;
      bool repeats = true;
      for (std::size_t i = p; i < k && repeats; ++i) repeats = period_[i] == period_[i - p];
      if (repeats) {
        period_.resize(p);
        break;
      }
    }
    while (!preperiod_.empty() && preperiod_.back() == period_.back()) {
      preperiod_.pop_back();
      std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
    }
  } else if (!preperiod_.empty() && preperiod_.back() == 1) {
    preperiod_.pop_back();
    if (preperiod_.empty()) {
      a0_ += 1;
    } else {
      preperiod_.back() += 1;
    }
  }
}

ContinuedFraction ContinuedFraction::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  auto fail = [&]() { return std::invalid_argument("malformed continued fraction '" + std::string(text) + "'"); };
  if (s.size() < 3 || s.front() != '[' || s.back() != ']') throw fail();
  s = s.substr(1, s.size() - 2);

  auto parse_list = [&](const std::string& list) {
    std::vector<Integer> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      const Rational v = parse_rational(item);
      if (denominator(v) != 1) throw fail();
      out.push_back(numerator(v));
    }
    return out;
  };

  const auto semi = s.find(';');
  const std::string head = s.substr(0, semi);
  const Rational a0 = parse_rational(head);
  if (denominator(a0) != 1) throw fail();
  std::vector<Integer> pre, per;
  if (semi != std::string::npos) {
    std::string rest = s.substr(semi + 1);
    const auto open = rest.find('(');
    if (open != std::string::npos) {
      if (rest.back() != ')' || rest.find(')') != rest.size() - 1) throw fail();
      per = parse_list(rest.substr(open + 1, rest.size() - open - 2));
      if (per.empty()) throw fail();
      rest = rest.substr(0, open);
    }
    pre = parse_list(rest);
  }
  return ContinuedFraction(numerator(a0), std::move(pre), std::move(per));
}

const Integer& ContinuedFraction::digit(std::size_t i) const {
  if (i == 0) return a0_;
  if (i <= preperiod_.size()) return preperiod_[i - 1];
  if (period_.empty()) throw std::out_of_range("digit index past a finite continued fraction");
  return period_[(i - 1 - preperiod_.size()) % period_.size()];
}

ContinuedFraction ContinuedFraction::tail(std::size_t n) const {
  if (n == 0) return *this;
  if (n <= preperiod_.size()) {
    return ContinuedFraction(preperiod_[n - 1],
                             std::vector<Integer>(preperiod_.begin() + static_cast<std::ptrdiff_t>(n), preperiod_.end()),
                             period_);
  }
  if (period_.empty()) throw std::out_of_range("tail index past a finite continued fraction");
  const std::size_t j = (n - 1 - preperiod_.size()) % period_.size();
  std::vector<Integer> rotated(period_.size());
  for (std::size_t i = 0; i < period_.size(); ++i) rotated[i] = period_[(j + 1 + i) % period_.size()];
  return ContinuedFraction(period_[j], {}, std::move(rotated));
}

std::string ContinuedFraction::str() const {
  std::ostringstream out;
  out << '[' << a0_;
  if (!preperiod_.empty() || !period_.empty()) {
    out << ';';
    for (std::size_t i = 0; i < preperiod_.size(); ++i) out << (i ? "," : "") << preperiod_[i];
    if (!period_.empty()) {
      if (!preperiod_.empty()) out << ',';
      out << '(';
      for (std::size_t i = 0; i < period_.size(); ++i) out << (i ? "," : "") << period_[i];
      out << ')';
    }
  }
  out << ']';
  return out.str();
}

// ---------------------------------------------------------------------------

Mobius<Integer> digits_map(const std::vector<Integer>& digits) {
  Mobius<Integer> m;
  for (const Integer& a : digits) m = m.compose(Mobius<Integer>{a, 1, 1, 0});
  return m;
}

Rational finite_cf_value(const std::vector<Integer>& digits) {
  if (digits.empty()) throw std::invalid_argument("empty continued fraction");
  const Mobius<Integer> m = digits_map(digits);
  return Rational(m.p, m.r);
}

QuadraticSurd periodic_surd(const std::vector<Integer>& word) {
  if (word.empty()) throw std::invalid_argument("empty periodic word");
  const Mobius<Integer> m = digits_map(word);
  // fixed point of x = (p x + q) / (r x + s): r x² + (s - p) x - q = 0, positive root
  const Integer diff = m.p - m.s;
  return QuadraticSurd(diff, 1, diff * diff + 4 * m.r * m.q, 2 * m.r);
}

QuadraticSurd cf_surd(const ContinuedFraction& cf) {
  std::vector<Integer> head{cf.a0()};
  head.insert(head.end(), cf.preperiod().begin(), cf.preperiod().end());
  if (cf.is_finite()) return QuadraticSurd::rational(finite_cf_value(head));
  return apply(digits_map(head), periodic_surd(cf.period()));
}

std::vector<Rational> convergents(const ContinuedFraction& cf, std::size_t count) {
  std::vector<Rational> out;
  Integer p_prev = 1, p = cf.a0(), q_prev = 0, q = 1;
  out.emplace_back(p, q);
  for (std::size_t k = 1; k < count; ++k) {
    if (cf.is_finite() && k >= cf.finite_length()) break;
    const Integer& a = cf.digit(k);
    Integer p_next = a * p + p_prev, q_next = a * q + q_prev;
    p_prev = std::exchange(p, p_next);
    q_prev = std::exchange(q, q_next);
    out.emplace_back(p, q);
  }
  return out;
}

Enclosure cf_value(const ContinuedFraction& cf, const Rational& tol) { return cf_surd(cf).enclosure(tol); }

std::pair<Enclosure, Enclosure> tail_and_reversal(const ContinuedFraction& cf, std::size_t n,
                                                  const Rational& tol) {
  if (cf.is_finite()) throw std::invalid_argument("tail_and_reversal requires infinite expansion");
  if (n == 0) throw std::invalid_argument("beta_n needs n >= 1");
  std::vector<Integer> reversed{0};
  for (std::size_t i = n - 1; i >= 1; --i) reversed.push_back(cf.digit(i));
  return {cf_value(cf.tail(n), tol), Enclosure::exact(finite_cf_value(reversed))};
}

std::vector<QuadraticSurd> markov_candidates(const std::vector<Integer>& word) {
  if (word.empty()) throw std::invalid_argument("empty word");
  if (!std::all_of(word.begin(), word.end(), [](const Integer& v) { return v >= 1; }))
    throw std::invalid_argument("word digits must be >= 1");
  const std::size_t k = word.size();
  std::vector<QuadraticSurd> out;
  out.reserve(k);
  const Mobius<Integer> reciprocal{0, 1, 1, 0};
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<Integer> forward(k), backward(k);
    for (std::size_t i = 0; i < k; ++i) {
      forward[i] = word[(j + i) % k];
      backward[i] = word[(j + 2 * k - 1 - i) % k];
    }
    const QuadraticSurd alpha = periodic_surd(forward);
    const QuadraticSurd beta = apply(reciprocal, periodic_surd(backward));
    out.push_back(alpha + beta);
  }
  return out;
}

QuadraticSurd markov_value_exact(const std::vector<Integer>& word) {
  const std::vector<QuadraticSurd> candidates = markov_candidates(word);
  return *std::max_element(candidates.begin(), candidates.end(),
                           [](const QuadraticSurd& x, const QuadraticSurd& y) { return x < y; });
}

Enclosure lagrange_value(const ContinuedFraction& cf, const Rational& tol) {
  if (cf.is_finite()) throw std::invalid_argument("Lagrange value is undefined for rationals");
  return markov_value_exact(cf.period()).enclosure(tol);
}

Enclosure markov_value_word(const std::vector<Integer>& word, const Rational& tol) {
  return markov_value_exact(word).enclosure(tol);
}

// ---------------------------------------------------------------------------

Rational QuadraticForm::operator()(const Integer& x, const Integer& y) const {
  const Rational rx(x), ry(y);
  return a * rx * rx + b * rx * ry + c * ry * ry;
}

QuadraticSurd form_markov_surd(const QuadraticForm& q, unsigned radius) {
  if (radius == 0) throw std::invalid_argument("search radius must be positive");
  if (q.discriminant() <= 0) throw std::domain_error("form is definite or degenerate");
  const Integer l = boost::multiprecision::lcm(boost::multiprecision::lcm(denominator(q.a), denominator(q.b)),
                                               denominator(q.c));
  Integer a = numerator(q.a) * (l / denominator(q.a));
  Integer b = numerator(q.b) * (l / denominator(q.b));
  Integer c = numerator(q.c) * (l / denominator(q.c));
  // primitive form, so scaled forms give the identical surd
  const Integer g = gcd(gcd(abs(a), abs(b)), abs(c));
  a /= g, b /= g, c /= g;
  const Integer disc = b * b - 4 * a * c;

  const long r = static_cast<long>(radius);
  Integer best = -1;
  for (long y = 0; y <= r; ++y) {
    for (long x = (y == 0 ? 1 : -r); x <= r; ++x) {
      Integer v = a * x * x + b * x * y + c * y * y;
      if (v < 0) v = -v;
      if (best < 0 || v < best) best = v;
    }
  }
  if (best == 0) throw std::domain_error("form represents zero; its Markov value is infinite");
  // pull small square factors out of the radicand
  Integer root = 1, radicand = disc;
  for (Integer p = 2; p <= 1000 && p * p <= radicand; ++p)
    while (radicand % (p * p) == 0) radicand /= p * p, root *= p;
  return QuadraticSurd(0, root, radicand, best);
}

Enclosure form_markov_value(const QuadraticForm& q, unsigned radius, const Rational& tol) {
  return form_markov_surd(q, radius).enclosure(tol);
}

QuadraticSurd freiman_surd() { return QuadraticSurd(2221564096, 283748, 462, 491993569); }

Enclosure freiman_constant(const Rational& tol) { return freiman_surd().enclosure(tol); }

Enclosure height_map(const Enclosure& v) {
  if (v.lo <= 0) throw std::domain_error("height map needs a positive value");
  return log_enclosure(Enclosure(v.lo / 2, v.hi / 2));
}

}  // namespace dynspec
