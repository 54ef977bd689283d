#include "dynspec/symbolic.hpp"
#include "dynspec/cf_arith.hpp"

#include <boost/multiprecision/eigen.hpp>

#include <algorithm>
#include <stdexcept>

namespace dynspec {

Sft::Sft(std::vector<int> labels, AdjacencyMatrix allowed) : labels_(std::move(labels)), allowed_(std::move(allowed)) {
  if (labels_.empty()) throw std::invalid_argument("empty alphabet");
  const auto n = static_cast<Eigen::Index>(labels_.size());
  if (allowed_.rows() != n || allowed_.cols() != n) throw std::invalid_argument("adjacency size mismatch");
  std::vector<std::size_t> order(labels_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return labels_[x] < labels_[y]; });
  std::vector<int> sorted(labels_.size());
  AdjacencyMatrix permuted(n, n);
  for (std::size_t i = 0; i < order.size(); ++i) {
    sorted[i] = labels_[order[i]];
    for (std::size_t j = 0; j < order.size(); ++j)
      permuted(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          allowed_(static_cast<Eigen::Index>(order[i]), static_cast<Eigen::Index>(order[j])) ? 1 : 0;
  }
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("duplicate symbol label");
  labels_ = std::move(sorted);
  allowed_ = std::move(permuted);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (allowed_.row(i).cast<int>().sum() == 0 && allowed_.col(i).cast<int>().sum() == 0)
      throw std::invalid_argument("symbol " + std::to_string(labels_[static_cast<std::size_t>(i)]) +
                                  " occurs in no allowed transition");
  }
}

Sft Sft::full(std::vector<int> labels) {
  const auto n = static_cast<Eigen::Index>(labels.size());
  return Sft(std::move(labels), AdjacencyMatrix::Ones(n, n));
}

Sft Sft::full_range(int lo, int hi) {
  if (hi < lo) throw std::invalid_argument("empty label range");
  std::vector<int> labels;
  for (int a = lo; a <= hi; ++a) labels.push_back(a);
  return full(std::move(labels));
}

Sft Sft::from_pairs(std::vector<int> labels, const std::vector<std::pair<int, int>>& pairs) {
  std::sort(labels.begin(), labels.end());
  const auto n = static_cast<Eigen::Index>(labels.size());
  AdjacencyMatrix a = AdjacencyMatrix::Zero(n, n);
  auto pos = [&](int label) {
    auto it = std::lower_bound(labels.begin(), labels.end(), label);
    if (it == labels.end() || *it != label) throw std::invalid_argument("unknown symbol " + std::to_string(label));
    return static_cast<Eigen::Index>(it - labels.begin());
  };
  for (const auto& [x, y] : pairs) a(pos(x), pos(y)) = 1;
  return Sft(std::move(labels), std::move(a));
}

Sft Sft::from_forbidden(std::vector<int> labels, const std::vector<std::pair<int, int>>& forbidden) {
  Sft s = full(std::move(labels));
  AdjacencyMatrix a = s.allowed_;
  for (const auto& [x, y] : forbidden)
    a(static_cast<Eigen::Index>(s.index_of(x)), static_cast<Eigen::Index>(s.index_of(y))) = 0;
  return Sft(s.labels_, std::move(a));
}

std::size_t Sft::index_of(int label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) throw std::invalid_argument("unknown symbol " + std::to_string(label));
  return static_cast<std::size_t>(it - labels_.begin());
}

bool Sft::has_label(int label) const { return std::binary_search(labels_.begin(), labels_.end(), label); }

bool Sft::allowed_labels(int a, int b) const {
  if (!has_label(a) || !has_label(b)) return false;
  return allowed(index_of(a), index_of(b));
}

std::vector<std::pair<int, int>> Sft::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      if (allowed(i, j)) out.emplace_back(labels_[i], labels_[j]);
  return out;
}

bool Sft::admissible(const Word& w) const {
  for (int a : w)
    if (!has_label(a)) return false;
  for (std::size_t i = 1; i < w.size(); ++i)
    if (!allowed_labels(w[i - 1], w[i])) return false;
  return true;
}

bool Sft::cyclically_admissible(const Word& w) const {
  return !w.empty() && admissible(w) && allowed_labels(w.back(), w.front());
}

Sft Sft::transpose() const { return Sft(labels_, allowed_.transpose()); }

std::optional<unsigned> Sft::mixing_index() const {
  const auto n = static_cast<Eigen::Index>(size());
  const Eigen::MatrixXi a = allowed_.cast<int>();
  Eigen::MatrixXi power = a;
  // Wielandt: a primitive matrix has A^k > 0 for some k <= n² - 2n + 2
  const unsigned limit = static_cast<unsigned>(n * n - 2 * n + 2);
  for (unsigned k = 1; k <= std::max(limit, 1u); ++k) {
    if ((power.array() > 0).all()) return k;
    power = (power * a).unaryExpr([](int v) { return v > 0 ? 1 : 0; });
  }
  return std::nullopt;
}

Integer count_words(const Sft& s, unsigned len) {
  if (len == 0) throw std::invalid_argument("word length must be positive");
  using IntMatrix = Eigen::Matrix<Integer, Eigen::Dynamic, Eigen::Dynamic>;
  using IntVector = Eigen::Matrix<Integer, Eigen::Dynamic, 1>;
  const auto n = static_cast<Eigen::Index>(s.size());
  IntMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = s.adjacency()(i, j);
  IntVector v = IntVector::Constant(n, Integer(1));
  for (unsigned k = 1; k < len; ++k) v = a * v;
  return v.sum();
}

std::vector<Word> enumerate_words(const Sft& s, unsigned len) {
  if (len == 0) throw std::invalid_argument("word length must be positive");
  std::vector<Word> out;
  Word w(len);
  std::vector<std::size_t> idx(len);
  auto rec = [&](auto&& self, unsigned pos) -> void {
    if (pos == len) {
      out.push_back(w);
      return;
    }
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (pos > 0 && !s.allowed(idx[pos - 1], j)) continue;
      idx[pos] = j;
      w[pos] = s.label(j);
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<std::vector<std::size_t>> strongly_connected_components(const AdjacencyMatrix& adj) {
  const auto n = static_cast<std::size_t>(adj.rows());
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> out;
  int counter = 0;
  auto strong = [&](auto&& self, std::size_t v) -> void {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w = 0; w < n; ++w) {
      if (!adj(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(w))) continue;
      if (index[w] < 0) {
        self(self, w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> comp;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      out.push_back(std::move(comp));
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] < 0) strong(strong, v);
  std::sort(out.begin(), out.end());
  return out;
}

PeriodicPoint make_periodic(const Sft& s, Word word) {
  if (word.empty()) throw std::invalid_argument("periodic point needs a nonempty word");
  if (!s.cyclically_admissible(word)) throw std::invalid_argument("word is not cyclically admissible");
  return PeriodicPoint{std::move(word)};
}

Word canonical_rotation(const Word& w) {
  Word best = w;
  Word r = w;
  for (std::size_t i = 1; i < w.size(); ++i) {
    std::rotate(r.begin(), r.begin() + 1, r.end());
    if (r < best) best = r;
  }
  return best;
}

std::vector<PeriodicPoint> enumerate_periodic(const Sft& s, unsigned max_period) {
  if (max_period == 0) throw std::invalid_argument("max_period must be positive");
  std::vector<PeriodicPoint> out;
  const std::size_t k = s.size();
  for (unsigned len = 1; len <= max_period; ++len) {
    // FKM generation of Lyndon words, pruned on non-admissible prefixes
    std::vector<std::size_t> a(len + 1, 0);
    auto gen = [&](auto&& self, unsigned t, unsigned p) -> void {
      if (t > len) {
        if (p == len && s.allowed(a[len], a[1])) {
          Word w(len);
          for (unsigned i = 0; i < len; ++i) w[i] = s.label(a[i + 1]);
          out.push_back(PeriodicPoint{std::move(w)});
        }
        return;
      }
      a[t] = a[t - p];
      if (t == 1 || s.allowed(a[t - 1], a[t])) self(self, t + 1, p);
      for (std::size_t j = a[t - p] + 1; j < k; ++j) {
        a[t] = j;
        if (t == 1 || s.allowed(a[t - 1], a[t])) self(self, t + 1, t);
      }
    };
    gen(gen, 1, 1);
  }
  return out;
}

Potential constant_potential(const Rational& c) {
  return Potential{0, [c](const Word&, const Rational&) { return Enclosure::exact(c); }, "constant"};
}

Potential symbol_potential() {
  return Potential{0, [](const Word& w, const Rational&) { return Enclosure::exact(Rational(w[0])); }, "symbol"};
}

Potential indicator_potential(int label) {
  return Potential{0,
                   [label](const Word& w, const Rational&) { return Enclosure::exact(Rational(w[0] == label ? 1 : 0)); },
                   "indicator:" + std::to_string(label)};
}

namespace {

// Bracket [d0; d1, ..., dk, T] for T in [1, ∞).
Enclosure truncated_cf(const std::vector<Integer>& digits) {
  std::vector<Integer> longer = digits;
  longer.push_back(1);
  const Rational x = finite_cf_value(digits), y = finite_cf_value(longer);
  return x < y ? Enclosure(x, y) : Enclosure(y, x);
}

}  // namespace

Potential cf_sum_potential(unsigned m) {
  auto rule = [m](const Word& w, const Rational&) {
    std::vector<Integer> forward, backward{0};
    for (unsigned i = m; i <= 2 * m; ++i) {
      if (w[i] < 1) throw std::domain_error("continued fraction digits must be >= 1");
      forward.emplace_back(w[i]);
    }
    for (unsigned i = m; i-- > 0;) {
      if (w[i] < 1) throw std::domain_error("continued fraction digits must be >= 1");
      backward.emplace_back(w[i]);
    }
    return truncated_cf(forward) + truncated_cf(backward);
  };
  return Potential{m, rule, "cf_sum:" + std::to_string(m)};
}

std::vector<Enclosure> potential_candidates(const PeriodicPoint& p, const Potential& f, const Rational& tol) {
  const std::size_t k = p.word.size();
  const std::size_t m = f.locality;
  std::vector<Enclosure> out;
  out.reserve(k);
  Word window(2 * m + 1);
  for (std::size_t i = 0; i < k; ++i) {
    // periodic unrolling covers windows longer than the word
    for (std::size_t j = 0; j < window.size(); ++j) window[j] = p.word[(i + k * (m / k + 1) + j - m) % k];
    out.push_back(f(window, tol));
  }
  return out;
}

Enclosure dyn_markov_value(const Sft& s, const PeriodicPoint& p, const Potential& f, const Rational& tol) {
  if (!s.cyclically_admissible(p.word)) throw std::invalid_argument("periodic point is not admissible");
  const std::vector<Enclosure> c = potential_candidates(p, f, tol);
  Enclosure best = c.front();
  for (std::size_t i = 1; i < c.size(); ++i) best = enclosure_max(best, c[i]);
  return best;
}

void sort_sample(std::vector<SpectrumPoint>& values) {
  std::sort(values.begin(), values.end(), [](const SpectrumPoint& x, const SpectrumPoint& y) {
    const Rational mx = x.value.midpoint(), my = y.value.midpoint();
    if (mx != my) return mx < my;
    if (x.witness.size() != y.witness.size()) return x.witness.size() < y.witness.size();
    return x.witness < y.witness;
  });
}

SpectrumSample spectrum_sample(const Sft& s, const Potential& f, unsigned max_period, const Rational& tol) {
  SpectrumSample sample;
  sample.max_period = max_period;
  sample.tol = tol;
  for (const PeriodicPoint& p : enumerate_periodic(s, max_period))
    sample.values.push_back({dyn_markov_value(s, p, f, tol), p.word});
  sort_sample(sample.values);
  return sample;
}

std::vector<CandidateInterval> interval_detect(const SpectrumSample& sample, const Rational& gap_threshold) {
  if (sample.values.empty()) throw std::invalid_argument("interval detection on an empty sample");
  if (gap_threshold <= 0) throw std::invalid_argument("gap threshold must be positive");
  std::vector<CandidateInterval> out;
  CandidateInterval run{sample.values[0].value.midpoint(), sample.values[0].value.midpoint(), 1};
  auto flush = [&]() {
    if (run.run_length >= 2) out.push_back(run);
  };
  for (std::size_t i = 1; i < sample.values.size(); ++i) {
    const Rational m = sample.values[i].value.midpoint();
    if (m - run.hi <= gap_threshold) {
      run.hi = m;
      ++run.run_length;
    } else {
      flush();
      run = {m, m, 1};
    }
  }
  flush();
  return out;
}

}  // namespace dynspec
