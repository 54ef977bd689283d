#include "dynspec/cantor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dynspec {

namespace {

Rational max_derivative(const Mobius<Rational>& m, const Enclosure& x) {
  return std::max(derivative_abs(m, x.lo), derivative_abs(m, x.hi));
}

Rational min_derivative(const Mobius<Rational>& m, const Enclosure& x) {
  return std::min(derivative_abs(m, x.lo), derivative_abs(m, x.hi));
}

}  // namespace

RegularCantorSet::RegularCantorSet(Sft sft, std::vector<Enclosure> base,
                                   std::vector<std::vector<Mobius<Rational>>> branches, BranchKind kind,
                                   std::string name)
    : sft_(std::move(sft)), base_(std::move(base)), branches_(std::move(branches)), kind_(kind), name_(std::move(name)) {
  validate();
}

Enclosure RegularCantorSet::piece(std::size_t a, std::size_t b) const { return apply(branches_[a][b], base_[b]); }

Rational RegularCantorSet::dmin(std::size_t a, std::size_t b) const {
  return 1 / max_derivative(branches_[a][b], base_[b]);
}

Rational RegularCantorSet::dmax(std::size_t a, std::size_t b) const {
  return 1 / min_derivative(branches_[a][b], base_[b]);
}

void RegularCantorSet::validate() const {
  const std::size_t n = sft_.size();
  if (base_.size() != n || branches_.size() != n) throw std::invalid_argument("Cantor data size mismatch");
  for (const auto& row : branches_)
    if (row.size() != n) throw std::invalid_argument("Cantor branch table size mismatch");
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<Enclosure> pieces;
    for (std::size_t b = 0; b < n; ++b) {
      if (!sft_.allowed(a, b)) continue;
      const Mobius<Rational>& psi = branches_[a][b];
      if (psi.determinant() == 0) throw std::invalid_argument("degenerate branch");
      if (pole_in(psi, base_[b])) throw std::invalid_argument("branch pole inside a base interval");
      const Enclosure p = apply(psi, base_[b]);
      if (!base_[a].contains(p)) throw std::invalid_argument("piece I(a,b) not inside I(a)");
      if (max_derivative(psi, base_[b]) >= 1) throw std::invalid_argument("branch is not expanding");
      pieces.push_back(p);
    }
    std::sort(pieces.begin(), pieces.end(), [](const Enclosure& x, const Enclosure& y) { return x.lo < y.lo; });
    for (std::size_t i = 1; i < pieces.size(); ++i)
      if (!(pieces[i - 1].hi < pieces[i].lo)) throw std::invalid_argument("pieces inside I(a) overlap");
  }
}

RegularCantorSet affine_cantor(const Sft& sft, const std::vector<Rational>& ratios, std::string name) {
  const std::size_t k = sft.size();
  if (ratios.size() != k) throw std::invalid_argument("one ratio per symbol required");
  Rational total = 0;
  for (const Rational& r : ratios) {
    if (r <= 0 || r >= 1) throw std::invalid_argument("affine ratios must lie in (0,1)");
    total += r;
  }
  if (k >= 2 && total >= 1) throw std::invalid_argument("affine ratios must sum to less than 1");
  const Rational gap = k >= 2 ? Rational((1 - total) / (k - 1)) : Rational(0);
  std::vector<Enclosure> base;
  std::vector<Mobius<Rational>> maps;
  Rational t = 0;
  for (const Rational& r : ratios) {
    base.emplace_back(t, t + r);
    maps.push_back(Mobius<Rational>{r, t, 0, 1});
    t += r + gap;
  }
  std::vector<std::vector<Mobius<Rational>>> branches(k, std::vector<Mobius<Rational>>(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) branches[a][b] = maps[a];
  return RegularCantorSet(sft, std::move(base), std::move(branches), BranchKind::affine, std::move(name));
}

RegularCantorSet affine_cantor(const std::vector<Rational>& ratios) {
  if (ratios.empty()) throw std::invalid_argument("affine family needs at least one ratio");
  std::string name = "affine:";
  for (std::size_t i = 0; i < ratios.size(); ++i) name += (i ? "," : "") + ratios[i].str();
  return affine_cantor(Sft::full_range(1, static_cast<int>(ratios.size())), ratios, name);
}

RegularCantorSet middle_third() {
  return affine_cantor(Sft::full_range(1, 2), {Rational(1, 3), Rational(1, 3)}, "middle_third");
}

Enclosure gauss_hull(unsigned n, unsigned iterations) {
  if (n == 0) throw std::invalid_argument("gauss family needs N >= 1");
  Enclosure h(0, 1);
  for (unsigned i = 0; i < std::max(iterations, 1u); ++i)
    h = Enclosure(1 / (Rational(n) + h.hi), 1 / (1 + h.lo));
  return h;
}

RegularCantorSet gauss_cantor(unsigned n) {
  const Enclosure h = gauss_hull(n);
  const Sft sft = Sft::full_range(1, static_cast<int>(n));
  std::vector<Enclosure> base;
  std::vector<std::vector<Mobius<Rational>>> branches(n, std::vector<Mobius<Rational>>(n));
  for (unsigned a = 1; a <= n; ++a) {
    // y -> 1/(a + y), inverse of x -> 1/x - a
    const Mobius<Rational> psi{0, 1, 1, Rational(a)};
    base.push_back(apply(psi, h));
    for (unsigned b = 0; b < n; ++b) branches[a - 1][b] = psi;
  }
  return RegularCantorSet(sft, std::move(base), std::move(branches), BranchKind::gauss, "gauss:" + std::to_string(n));
}

RegularCantorSet point_cantor(const Rational& p) {
  std::vector<std::vector<Mobius<Rational>>> branches{{Mobius<Rational>{Rational(1, 2), p / 2, 0, 1}}};
  return RegularCantorSet(Sft::full({1}), {Enclosure::exact(p)}, std::move(branches), BranchKind::affine,
                          "point:" + p.str());
}

namespace {

Mobius<Rational> word_map(const RegularCantorSet& k, const std::vector<std::size_t>& idx) {
  Mobius<Rational> m;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    if (!k.sft().allowed(idx[i - 1], idx[i])) throw std::invalid_argument("word is not admissible");
    m = m.compose(k.branch(idx[i - 1], idx[i]));
  }
  return m;
}

}  // namespace

RegularCantorSet word_cantor(const RegularCantorSet& k, const std::vector<Word>& words, const Sft& over,
                             std::string name) {
  const std::size_t m = over.size();
  std::vector<std::vector<std::size_t>> idx(m);
  std::vector<Mobius<Rational>> maps(m);
  std::vector<Enclosure> base(m);
  for (std::size_t i = 0; i < m; ++i) {
    const int label = over.label(i);
    if (label < 0 || static_cast<std::size_t>(label) >= words.size())
      throw std::invalid_argument("word alphabet label out of range");
    const Word& w = words[static_cast<std::size_t>(label)];
    if (w.empty()) throw std::invalid_argument("empty word symbol");
    for (int a : w) idx[i].push_back(k.sft().index_of(a));
    maps[i] = word_map(k, idx[i]);
    base[i] = apply(maps[i], k.base(idx[i].back()));
  }
  std::vector<std::vector<Mobius<Rational>>> branches(m, std::vector<Mobius<Rational>>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (!over.allowed(i, j)) continue;
      const std::size_t last = idx[i].back(), first = idx[j].front();
      if (!k.sft().allowed(last, first)) throw std::invalid_argument("word transition not admissible in the base set");
      branches[i][j] = maps[i].compose(k.branch(last, first));
    }
  }
  return RegularCantorSet(over, std::move(base), std::move(branches), BranchKind::composite, std::move(name));
}

CylinderCover construction_level(const RegularCantorSet& k, unsigned n, const Budget& budget) {
  if (n == 0) throw std::invalid_argument("construction level must be positive");
  const Sft& s = k.sft();
  if (count_words(s, n) > budget.cylinders)
    throw BudgetError("level " + std::to_string(n) + " exceeds the cylinder budget of " +
                      std::to_string(budget.cylinders));
  CylinderCover cover;
  cover.level = n;
  Word word(n);
  std::vector<Mobius<Rational>> prefix(n);
  auto rec = [&](auto&& self, unsigned pos, std::size_t last) -> void {
    if (pos == n) {
      const Mobius<Rational>& m = prefix[n - 1];
      const Enclosure& tail = k.base(last);
      cover.cylinders.push_back(
          {word, apply(m, tail), 1 / max_derivative(m, tail), 1 / min_derivative(m, tail)});
      return;
    }
    for (std::size_t b = 0; b < s.size(); ++b) {
      if (pos > 0 && !s.allowed(last, b)) continue;
      word[pos] = s.label(b);
      prefix[pos] = pos == 0 ? Mobius<Rational>::identity() : prefix[pos - 1].compose(k.branch(last, b));
      self(self, pos + 1, b);
    }
  };
  rec(rec, 0, 0);
  return cover;
}

// ---------------------------------------------------------------------------
// Dimension bounds. Level-n words chain through their end letters, so K is
// the limit set of a graph-directed system on the symbols with one map per
// word. With r_w the extreme derivative of Ψ_w, the root of
// ρ(M(d)) = 1, M_ab(d) = Σ_{w: a..b} r_w^d, bounds the dimension: minimal
// derivatives give a lower bound, maximal ones an upper bound.

namespace {

constexpr mpfr_prec_t kPrecision = 128;

struct WordTerm {
  std::size_t first;
  std::size_t last;
  BigFloat log_lo{kPrecision};  // lower bound of log(min ratio)
  BigFloat log_hi{kPrecision};  // upper bound of log(max ratio)
};

using RationalMatrix = std::vector<std::vector<Rational>>;

class TransferBound {
 public:
  TransferBound(std::vector<WordTerm> terms, std::size_t n) : terms_(std::move(terms)), n_(n) {
    AdjacencyMatrix graph = AdjacencyMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (const WordTerm& t : terms_) graph(static_cast<Eigen::Index>(t.first), static_cast<Eigen::Index>(t.last)) = 1;
    for (auto& comp : strongly_connected_components(graph)) {
      const bool loop = graph(static_cast<Eigen::Index>(comp[0]), static_cast<Eigen::Index>(comp[0])) != 0;
      if (comp.size() > 1 || loop) components_.push_back(std::move(comp));
    }
  }

  bool empty() const { return components_.empty(); }

  // ρ(M_lower(d)) >= 1 is certified
  bool certify_at_least_one(const Rational& d) const {
    const RationalMatrix m = matrix(d, false);
    for (const auto& comp : components_) {
      const std::vector<Rational> x = perron_vector(m, comp);
      bool ok = true;
      for (std::size_t i = 0; i < comp.size() && ok; ++i) ok = row_product(m, comp, i, x) >= x[i];
      if (ok) return true;
    }
    return false;
  }

  // ρ(M_upper(d)) <= 1 is certified
  bool certify_at_most_one(const Rational& d) const {
    const RationalMatrix m = matrix(d, true);
    for (const auto& comp : components_) {
      const std::vector<Rational> x = perron_vector(m, comp);
      for (std::size_t i = 0; i < comp.size(); ++i)
        if (row_product(m, comp, i, x) > x[i]) return false;
    }
    return true;
  }

 private:
  RationalMatrix matrix(const Rational& d, bool upper) const {
    const mpfr_rnd_t rnd = upper ? MPFR_RNDU : MPFR_RNDD;
    std::vector<std::vector<BigFloat>> acc(n_, std::vector<BigFloat>(n_, BigFloat(kPrecision)));
    for (auto& row : acc)
      for (auto& v : row) mpfr_set_zero(v.get(), 1);
    BigFloat term(kPrecision);
    for (const WordTerm& t : terms_) {
      mpfr_mul_q(term.get(), (upper ? t.log_hi : t.log_lo).get(), d.backend().data(), rnd);
      mpfr_exp(term.get(), term.get(), rnd);
      mpfr_add(acc[t.first][t.last].get(), acc[t.first][t.last].get(), term.get(), rnd);
    }
    RationalMatrix out(n_, std::vector<Rational>(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out[i][j] = acc[i][j].to_rational();
    return out;
  }

  static Rational row_product(const RationalMatrix& m, const std::vector<std::size_t>& comp, std::size_t i,
                              const std::vector<Rational>& x) {
    Rational s = 0;
    for (std::size_t j = 0; j < comp.size(); ++j)
      if (m[comp[i]][comp[j]] != 0) s += m[comp[i]][comp[j]] * x[j];
    return s;
  }

  // Positive approximate Perron vector of the block, by power iteration on I + M.
  static std::vector<Rational> perron_vector(const RationalMatrix& m, const std::vector<std::size_t>& comp) {
    const auto k = static_cast<Eigen::Index>(comp.size());
    Eigen::MatrixXd block(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j)
        block(i, j) = to_double(m[comp[static_cast<std::size_t>(i)]][comp[static_cast<std::size_t>(j)]]);
    const double scale = std::max(block.maxCoeff(), 1e-300);
    block /= scale;
    block += Eigen::MatrixXd::Identity(k, k);
    Eigen::VectorXd x = Eigen::VectorXd::Ones(k);
    for (int it = 0; it < 2000; ++it) {
      Eigen::VectorXd next = block * x;
      next /= next.maxCoeff();
      const double change = (next - x).cwiseAbs().maxCoeff();
      x = next;
      if (change < 1e-16) break;
    }
    std::vector<Rational> out(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < k; ++i) out[static_cast<std::size_t>(i)] = Rational(std::max(x(i), 1e-300));
    return out;
  }

  std::vector<WordTerm> terms_;
  std::size_t n_;
  std::vector<std::vector<std::size_t>> components_;
};

bool zero_entropy(const Sft& s) {
  const AdjacencyMatrix& a = s.adjacency();
  for (const auto& comp : strongly_connected_components(a)) {
    for (std::size_t v : comp) {
      int out = 0;
      for (std::size_t w : comp) out += a(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(w)) ? 1 : 0;
      if (out > 1) return false;
    }
  }
  return true;
}

}  // namespace

DimBounds dim_bounds(const RegularCantorSet& k, unsigned n, const Rational& tol, const Budget& budget) {
  if (n < 2) throw std::invalid_argument("dimension bounds need level n >= 2");
  if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
  if (zero_entropy(k.sft())) return {0, 0};
  const CylinderCover cover = construction_level(k, n, budget);
  std::vector<WordTerm> terms;
  terms.reserve(cover.cylinders.size());
  for (const Cylinder& c : cover.cylinders) {
    WordTerm t;
    t.first = k.sft().index_of(c.word.front());
    t.last = k.sft().index_of(c.word.back());
    t.log_lo.assign(1 / c.dmax_product, MPFR_RNDD);
    mpfr_log(t.log_lo.get(), t.log_lo.get(), MPFR_RNDD);
    t.log_hi.assign(1 / c.dmin_product, MPFR_RNDU);
    mpfr_log(t.log_hi.get(), t.log_hi.get(), MPFR_RNDU);
    terms.push_back(std::move(t));
  }
  const TransferBound bound(std::move(terms), k.sft().size());
  if (bound.empty()) return {0, 0};

  DimBounds out{0, 0};
  if (bound.certify_at_least_one(0)) {
    Rational a = 0, b = 1;
    while (bound.certify_at_least_one(b)) {
      a = b;
      b *= 2;
    }
    while (b - a > tol) {
      const Rational mid = (a + b) / 2;
      (bound.certify_at_least_one(mid) ? a : b) = mid;
    }
    out.lower = a;
  }
  {
    Rational a = 0, b = 1;
    int doublings = 0;
    while (!bound.certify_at_most_one(b)) {
      a = b;
      b *= 2;
      if (++doublings > 8) throw std::domain_error("dimension upper bound failed to certify");
    }
    while (b - a > tol) {
      const Rational mid = (a + b) / 2;
      (bound.certify_at_most_one(mid) ? b : a) = mid;
    }
    out.upper = b;
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Enclosure> merge_intervals(std::vector<Enclosure> intervals) {
  std::sort(intervals.begin(), intervals.end(), [](const Enclosure& x, const Enclosure& y) {
    return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi);
  });
  std::vector<Enclosure> out;
  for (Enclosure& e : intervals) {
    if (!out.empty() && e.lo <= out.back().hi) {
      if (e.hi > out.back().hi) out.back().hi = std::move(e.hi);
    } else {
      out.push_back(std::move(e));
    }
  }
  return out;
}

std::vector<Enclosure> cantor_sum_cover(const RegularCantorSet& k1, const RegularCantorSet& k2, unsigned n,
                                        const Budget& budget) {
  const CylinderCover c1 = construction_level(k1, n, budget);
  const CylinderCover c2 = construction_level(k2, n, budget);
  const Integer pairs = Integer(c1.cylinders.size()) * c2.cylinders.size();
  if (pairs > budget.pairs)
    throw BudgetError("level " + std::to_string(n) + " needs " + pairs.str() + " pairs, over the budget of " +
                      std::to_string(budget.pairs));
  std::vector<Enclosure> right;
  right.reserve(c2.cylinders.size());
  for (const Cylinder& c : c2.cylinders) right.push_back(c.interval);
  right = merge_intervals(std::move(right));

  std::vector<Enclosure> all;
  for (const Cylinder& c : c1.cylinders) {
    // right is sorted and disjoint, so the row of sums is sorted by lo
    std::vector<Enclosure> row;
    for (const Enclosure& r : right) {
      Enclosure s(c.interval.lo + r.lo, c.interval.hi + r.hi);
      if (!row.empty() && s.lo <= row.back().hi) {
        if (s.hi > row.back().hi) row.back().hi = std::move(s.hi);
      } else {
        row.push_back(std::move(s));
      }
    }
    all.insert(all.end(), std::make_move_iterator(row.begin()), std::make_move_iterator(row.end()));
  }
  return merge_intervals(std::move(all));
}

SumCheck sum_interval_check(const std::vector<Enclosure>& cover, const Rational& lo, const Rational& hi,
                            const Rational& slack) {
  if (slack < 0) throw std::invalid_argument("slack must be nonnegative");
  if (lo + slack > hi - slack) throw std::invalid_argument("empty target: slack exceeds half the target width");
  for (std::size_t i = 1; i < cover.size(); ++i)
    if (!(cover[i - 1].hi < cover[i].lo)) throw std::invalid_argument("cover must be sorted and disjoint");
  SumCheck out;
  out.target = Enclosure(lo + slack, hi - slack);
  for (const Enclosure& c : cover)
    if (c.contains(out.target)) out.contained = true;
  if (out.contained) return out;

  auto consider = [&](const Rational& a, const Rational& b) {
    if (!out.largest_gap || b - a > out.largest_gap->width()) out.largest_gap = Enclosure(a, b);
  };
  const Enclosure& t = out.target;
  if (cover.empty()) {
    consider(t.lo, t.hi);
    return out;
  }
  if (t.lo < cover.front().lo) consider(t.lo, std::min(cover.front().lo, t.hi));
  for (std::size_t i = 1; i < cover.size(); ++i)
    if (cover[i - 1].hi < t.hi && cover[i].lo > t.lo) consider(cover[i - 1].hi, cover[i].lo);
  if (t.hi > cover.back().hi) consider(std::max(cover.back().hi, t.lo), t.hi);
  if (!out.largest_gap) out.largest_gap = Enclosure::exact(t.lo);
  return out;
}

}  // namespace dynspec
