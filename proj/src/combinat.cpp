#include "dynspec/combinat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace dynspec {

DenseMatrix::DenseMatrix(Storage entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) throw std::invalid_argument("matrix must be square");
  for (Eigen::Index i = 0; i < entries_.rows(); ++i)
    for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
      const std::uint8_t v = entries_(i, j);
      if (v > 1) throw std::invalid_argument("matrix entries must be 0 or 1");
      ones_ += v;
    }
}

DenseMatrix DenseMatrix::ones(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  return DenseMatrix(Storage::Ones(k, k));
}

Rational DenseMatrix::density() const { return Rational(Integer(ones_), Integer(n()) * n()); }

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("empty range");
  // reject the top partial block so every residue is equally likely
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

DenseMatrix random_dense_matrix(std::size_t n, std::size_t zeros, std::mt19937_64& rng) {
  if (zeros > n * n) throw std::invalid_argument("more zeros than entries");
  const auto k = static_cast<Eigen::Index>(n);
  DenseMatrix::Storage m = DenseMatrix::Storage::Ones(k, k);
  std::size_t placed = 0;
  while (placed < zeros) {
    const auto i = static_cast<Eigen::Index>(uniform_below(rng, n));
    const auto j = static_cast<Eigen::Index>(uniform_below(rng, n));
    if (m(i, j) == 0) continue;
    m(i, j) = 0;
    ++placed;
  }
  return DenseMatrix(std::move(m));
}

PowerMatrix matrix_power(const DenseMatrix& a, unsigned k) {
  if (k == 0) throw std::invalid_argument("power must be positive");
  if (a.n() > 512 || k > 8) throw BudgetError("exact matrix powers are limited to n <= 512 and k <= 8");
  const PowerMatrix base = a.entries().cast<std::uint64_t>();
  PowerMatrix p = base;
  for (unsigned i = 1; i < k; ++i) p = p * base;
  return p;
}

void require_dense(const DenseMatrix& a) {
  if (a.density() < Rational(99, 100))
    throw PreconditionError("matrix density " + a.density().str() + " is below 99/100");
}

TraceCheck trace_bound_check(const DenseMatrix& a, unsigned k) {
  if (k < 2) throw std::invalid_argument("trace bound needs k >= 2");
  require_dense(a);
  const PowerMatrix p = matrix_power(a, k);
  TraceCheck out;
  out.trace = 0;
  for (Eigen::Index i = 0; i < p.rows(); ++i) out.trace += Integer(p(i, i));
  out.bound = pow_rational(Rational(Integer(a.n()), 2), k);
  out.holds = Rational(out.trace) >= out.bound;
  return out;
}

std::vector<TraceCheck> trace_bound_checks(const DenseMatrix& a, unsigned k_max) {
  if (k_max < 2) throw std::invalid_argument("trace bound needs k >= 2");
  require_dense(a);
  if (a.n() > 512 || k_max > 8) throw BudgetError("exact matrix powers are limited to n <= 512 and k <= 8");
  const PowerMatrix base = a.entries().cast<std::uint64_t>();
  const PowerMatrix transposed = base.transpose();
  std::vector<TraceCheck> out;
  PowerMatrix p = base;
  for (unsigned k = 2; k <= k_max; ++k) {
    // tr(A^k) = sum of (A^{k-1} ∘ Aᵀ)
    TraceCheck c;
    c.trace = 0;
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
      std::uint64_t row = 0;
      for (Eigen::Index j = 0; j < p.cols(); ++j) row += p(i, j) * transposed(i, j);
      c.trace += Integer(row);
    }
    c.bound = pow_rational(Rational(Integer(a.n()), 2), k);
    c.holds = Rational(c.trace) >= c.bound;
    out.push_back(std::move(c));
    if (k < k_max) p = p * base;
  }
  return out;
}

bool CoreReport::passed() const {
  return size_ok && square_ok && std::all_of(power_ok.begin(), power_ok.end(), [](bool b) { return b; });
}

CoreReport dense_core(const DenseMatrix& a, unsigned k_max) {
  require_dense(a);
  if (k_max < 2) throw std::invalid_argument("k_max must be at least 2");
  const std::size_t n = a.n();
  const Eigen::VectorXi rows = a.entries().cast<int>().rowwise().sum();
  const Eigen::VectorXi cols = a.entries().cast<int>().colwise().sum().transpose();
  CoreReport out;
  out.n = n;
  out.density = a.density();
  out.k_max = k_max;
  for (std::size_t i = 0; i < n; ++i) {
    const auto e = static_cast<Eigen::Index>(i);
    if (10 * static_cast<std::size_t>(rows(e)) >= 9 * n && 10 * static_cast<std::size_t>(cols(e)) >= 9 * n)
      out.core.push_back(i);
  }
  out.size_ok = 5 * out.core.size() >= 4 * n;

  auto all_on_core = [&](const PowerMatrix& p, const Integer& threshold, const Integer& scale) {
    for (std::size_t i : out.core)
      for (std::size_t j : out.core)
        if (Integer(p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) * scale < threshold) return false;
    return true;
  };
  out.square_ok = all_on_core(matrix_power(a, 2), Integer(4 * n), Integer(5));
  for (unsigned k = 3; k <= k_max; ++k) {
    // (A^k)_ij >= 4·3^{k-2}·n^{k-1} / 5^{k-1}
    Integer lhs_scale = 1, rhs = 4;
    for (unsigned t = 0; t + 1 < k; ++t) lhs_scale *= 5;
    for (unsigned t = 0; t + 2 < k; ++t) rhs *= 3;
    for (unsigned t = 0; t + 1 < k; ++t) rhs *= n;
    out.power_ok.push_back(all_on_core(matrix_power(a, k), rhs, lhs_scale));
  }
  return out;
}

std::vector<std::vector<std::size_t>> random_disturb_sets(std::size_t n, std::size_t size, std::uint64_t seed) {
  if (size > n) throw std::invalid_argument("disturb set larger than the word list");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::size_t>> out(n);
  for (auto& p : out) {
    std::set<std::size_t> chosen;
    while (chosen.size() < size) chosen.insert(static_cast<std::size_t>(uniform_below(rng, n)));
    p.assign(chosen.begin(), chosen.end());
  }
  return out;
}

namespace {

bool has_factor(const Word& w, const Word& f) {
  return !f.empty() && std::search(w.begin(), w.end(), f.begin(), f.end()) != w.end();
}

Word concat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

}  // namespace

bool prohibits(const ProhibitionInstance& inst, std::size_t i, std::size_t j, std::size_t k) {
  const Word jk = concat(inst.words.at(j), inst.words.at(k));
  for (std::size_t r : inst.disturb.at(i))
    if (has_factor(jk, inst.words.at(r))) return true;
  return false;
}

PruneReport prune_to_core_cantor(const RegularCantorSet& k, const ProhibitionInstance& inst, unsigned block,
                                 unsigned level, const Rational& epsilon, const Rational& tol, const Budget& budget) {
  if (block == 0) throw std::invalid_argument("block size must be positive");
  const std::size_t n = inst.words.size();
  if (n == 0) throw std::invalid_argument("prohibition instance has no words");
  for (const Word& w : inst.words)
    if (w.empty() || !k.sft().admissible(w)) throw std::invalid_argument("instance word is not admissible");

  PruneReport out;
  out.block = block;
  out.level = level;
  out.epsilon = epsilon;
  std::size_t blocks = 1;
  for (unsigned t = 0; t < block; ++t) {
    blocks *= n;
    if (blocks > budget.cylinders) throw BudgetError("too many blocks");
  }
  if (Integer(blocks) * blocks > budget.pairs) throw BudgetError("block matrix exceeds the pair budget");
  out.blocks = blocks;

  std::vector<std::vector<std::size_t>> tuples(blocks, std::vector<std::size_t>(block));
  for (std::size_t b = 0; b < blocks; ++b) {
    std::size_t v = b;
    for (unsigned t = block; t-- > 0;) {
      tuples[b][t] = v % n;
      v /= n;
    }
    Word w;
    for (std::size_t i : tuples[b]) w.insert(w.end(), inst.words[i].begin(), inst.words[i].end());
    out.block_words.push_back(std::move(w));
  }

  std::set<std::vector<std::size_t>> explicit_tuples;
  for (const auto& t : inst.prohibited_tuples) {
    if (t.size() != 2 * block) throw std::invalid_argument("prohibited tuples must have length 2·block");
    for (std::size_t i : t)
      if (i >= n) throw std::invalid_argument("prohibited tuple index out of range");
    explicit_tuples.insert(t);
  }
  std::vector<Word> factors = inst.forbidden_factors;
  for (const auto& [u, v] : inst.prohibited_transitions) factors.push_back(concat(inst.words.at(u), inst.words.at(v)));

  const auto nb = static_cast<Eigen::Index>(blocks);
  DenseMatrix::Storage a = DenseMatrix::Storage::Zero(nb, nb);
  std::vector<std::size_t> tuple(2 * block);
  for (std::size_t u = 0; u < blocks; ++u) {
    for (std::size_t v = 0; v < blocks; ++v) {
      const Word uv = concat(out.block_words[u], out.block_words[v]);
      if (!k.sft().admissible(uv)) continue;
      std::copy(tuples[u].begin(), tuples[u].end(), tuple.begin());
      std::copy(tuples[v].begin(), tuples[v].end(), tuple.begin() + block);
      if (explicit_tuples.count(tuple)) continue;
      if (std::any_of(factors.begin(), factors.end(), [&](const Word& f) { return has_factor(uv, f); })) continue;
      a(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) = 1;
    }
  }
  const DenseMatrix matrix(std::move(a));
  out.ones = matrix.ones_count();
  out.density = matrix.density();
  if (out.density < Rational(99, 100)) return out;

  out.core_applied = true;
  out.core = dense_core(matrix, 2).core;
  if (out.core.empty()) return out;
  std::vector<int> labels;
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t u : out.core) {
    labels.push_back(static_cast<int>(u));
    for (std::size_t v : out.core)
      if (matrix(u, v)) pairs.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  out.pruned_sft = Sft::from_pairs(labels, pairs);

  std::size_t block_len = out.block_words.front().size();
  for (const Word& w : out.block_words) block_len = std::min(block_len, w.size());
  out.pruned_level = std::max<unsigned>(2, static_cast<unsigned>((level + block_len - 1) / block_len) + 1);
  const RegularCantorSet pruned = word_cantor(k, out.block_words, *out.pruned_sft, k.name() + ":pruned");
  out.original = dim_bounds(k, level, tol, budget);
  out.pruned = dim_bounds(pruned, out.pruned_level, tol, budget);
  out.within_epsilon = out.pruned->lower >= out.original->lower - epsilon;
  return out;
}

std::vector<int> interference_free_selection(const InterferenceRelation& rel, const std::vector<int>& protect) {
  const std::set<int> elements(rel.elements.begin(), rel.elements.end());
  const std::set<int> prot(protect.begin(), protect.end());
  for (int p : prot)
    if (!elements.count(p)) throw std::invalid_argument("protected element not in the relation");
  std::set<int> hit;
  for (const auto& [i, j] : rel.interferes) {
    if (i == j) throw std::invalid_argument("interference relation must be irreflexive");
    if (prot.count(i)) hit.insert(j);
  }
  std::vector<int> out;
  for (int e : rel.elements)
    if (!prot.count(e) && !hit.count(e)) out.push_back(e);
  return out;
}

std::uint64_t injection_domain(std::uint64_t n, const Rational& alpha) {
  if (alpha <= 0) throw std::invalid_argument("alpha must be positive");
  const Integer p = numerator(alpha), q = denominator(alpha);
  const unsigned pe = p.convert_to<unsigned>(), qe = q.convert_to<unsigned>();
  Integer target = 1;
  for (unsigned i = 0; i < pe; ++i) target *= n;
  // largest m with m^q <= n^p
  std::uint64_t lo = 0, hi = n;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo + 1) / 2;
    Integer power = 1;
    for (unsigned i = 0; i < qe && power <= target; ++i) power *= mid;
    if (power <= target) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

namespace {

void check_injection_args(std::uint64_t n, const Rational& alpha) {
  if (!(alpha > Rational(1, 4) && alpha < Rational(1, 2)))
    throw std::invalid_argument("alpha must lie in the open interval (1/4, 1/2)");
  if (n < 16) throw std::invalid_argument("N must be at least 16");
}

}  // namespace

InjectionRun random_injection(std::uint64_t n, const Rational& alpha, std::uint64_t seed) {
  check_injection_args(n, alpha);
  InjectionRun run;
  run.domain = injection_domain(n, alpha);
  if (run.domain == 0) throw std::invalid_argument("floor(N^alpha) must be at least 1");
  std::mt19937_64 rng(seed);
  run.image.resize(run.domain);
  for (auto& v : run.image) v = uniform_below(rng, n);
  std::vector<std::uint64_t> sorted = run.image;
  std::sort(sorted.begin(), sorted.end());
  run.injective = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  return run;
}

InjectionEstimate injection_trials(std::uint64_t n, const Rational& alpha, std::uint64_t trials, std::uint64_t seed) {
  check_injection_args(n, alpha);
  if (trials == 0) throw std::invalid_argument("need at least one trial");
  InjectionEstimate est;
  est.n = n;
  est.alpha = alpha;
  est.trials = trials;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const InjectionRun run = random_injection(n, alpha, splitmix64(seed + t));
    est.domain = run.domain;
    est.injective += run.injective ? 1 : 0;
  }
  est.rate = static_cast<double>(est.injective) / static_cast<double>(trials);
  est.sigma = std::sqrt(est.rate * (1 - est.rate) / static_cast<double>(trials));
  const double nd = static_cast<double>(n);
  est.bound = 1.0 - 1.0 / (2.0 * std::pow(nd, 1.0 - 2.0 * to_double(alpha)));
  double prob = 1;
  for (std::uint64_t j = 0; j < est.domain; ++j) prob *= 1.0 - static_cast<double>(j) / nd;
  est.exact_probability = prob;
  est.passed = est.rate >= est.bound - 3 * est.sigma;
  return est;
}

CensusReport prohibited_transition_census(const ProhibitionInstance& inst, std::uint64_t samples, std::uint64_t seed,
                                          double c) {
  const std::size_t n = inst.words.size();
  if (n < 2 || inst.disturb.size() != n) throw std::invalid_argument("degenerate prohibition instance");
  if (samples == 0) throw std::invalid_argument("census needs a positive sample size");
  std::mt19937_64 rng(seed);
  CensusReport out;
  out.n = n;
  out.samples = samples;
  out.c = c;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const auto i = static_cast<std::size_t>(uniform_below(rng, n));
    const auto j = static_cast<std::size_t>(uniform_below(rng, n));
    const auto k = static_cast<std::size_t>(uniform_below(rng, n));
    out.prohibited += prohibits(inst, i, j, k) ? 1 : 0;
  }
  out.estimate = static_cast<double>(out.prohibited) / static_cast<double>(samples);
  const double nd = static_cast<double>(n);
  out.comparator = std::log(nd) / std::sqrt(nd);
  out.below = out.estimate < c * out.comparator;
  return out;
}

}  // namespace dynspec
