#include "graphonlab/metrics.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <string>

#include "cut_engine.hpp"
#include "graphonlab/densities.hpp"
#include "graphonlab/error.hpp"
#include "mix.hpp"
#include "scaled_palette.hpp"

namespace graphonlab {

namespace {

std::vector<std::uint32_t> canonical_levels(std::vector<Rational>& palette, std::vector<std::uint32_t> levels) {
  std::vector<std::uint32_t> order(palette.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return palette[a] < palette[b]; });
  std::vector<std::uint32_t> remap(palette.size());
  std::vector<Rational> sorted;
  for (auto idx : order) {
    if (sorted.empty() || sorted.back() != palette[idx]) sorted.push_back(palette[idx]);
    remap[idx] = static_cast<std::uint32_t>(sorted.size() - 1);
  }
  for (auto& l : levels) l = remap[l];
  palette = std::move(sorted);
  return levels;
}

std::vector<std::uint32_t> intern_all(const std::vector<Rational>& values, std::vector<Rational>& palette) {
  std::map<Rational, std::uint32_t> index;
  std::vector<std::uint32_t> out;
  out.reserve(values.size());
  for (Rational v : values) {
    v.canonicalize();
    auto [it, inserted] = index.try_emplace(v, static_cast<std::uint32_t>(palette.size()));
    if (inserted) palette.push_back(v);
    out.push_back(it->second);
  }
  return out;
}

}  // namespace

SignedStepFunction::SignedStepFunction(std::size_t k, const std::vector<Rational>& row_major)
    : SignedStepFunction(std::vector<std::uint64_t>(k, 1), row_major) {}

SignedStepFunction::SignedStepFunction(std::vector<std::uint64_t> weights, const std::vector<Rational>& row_major)
    : weights_(std::move(weights)) {
  if (row_major.size() != weights_.size() * weights_.size()) {
    throw Error(ErrorCode::InvalidArgument, "signed step function matrix is not k x k");
  }
  cells_ = intern_all(row_major, palette_);
  cells_ = canonical_levels(palette_, std::move(cells_));
  validate();
}

SignedStepFunction::SignedStepFunction(std::vector<std::uint64_t> weights, std::vector<Rational> palette,
                                       std::vector<std::uint32_t> levels)
    : weights_(std::move(weights)), palette_(std::move(palette)) {
  for (auto& v : palette_) v.canonicalize();
  if (levels.size() != weights_.size() * weights_.size()) {
    throw Error(ErrorCode::InvalidArgument, "signed step function matrix is not k x k");
  }
  for (auto l : levels) {
    if (l >= palette_.size()) throw Error(ErrorCode::InvalidArgument, "level index outside palette");
  }
  cells_ = canonical_levels(palette_, std::move(levels));
  validate();
}

void SignedStepFunction::validate() {
  const std::size_t k = weights_.size();
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "signed step function needs at least one part");
  total_ = 0;
  for (auto w : weights_) {
    if (w == 0) throw Error(ErrorCode::InvalidArgument, "part weights must be positive");
    total_ += w;
  }
  for (const auto& v : palette_) {
    if (v < -1 || v > 1) throw Error(ErrorCode::OutOfRange, "signed value " + to_string(v) + " outside [-1,1]");
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (cells_[i * k + j] != cells_[j * k + i]) {
        throw Error(ErrorCode::AsymmetricMatrix, "signed step function is not symmetric");
      }
    }
  }
}

std::optional<std::uint32_t> SignedStepFunction::zero_level() const {
  auto it = std::lower_bound(palette_.begin(), palette_.end(), Rational(0));
  if (it == palette_.end() || *it != 0) return std::nullopt;
  return static_cast<std::uint32_t>(it - palette_.begin());
}

SignedStepFunction difference(const StepGraphon& u, const StepGraphon& v) {
  const std::uint64_t ku = u.parts(), kv = v.parts();
  const std::uint64_t l = lcm_u64(ku, kv);
  const std::uint64_t su = l / ku, sv = l / kv;
  std::vector<std::uint64_t> cuts;
  for (std::uint64_t i = 0; i <= ku; ++i) cuts.push_back(i * su);
  for (std::uint64_t j = 0; j <= kv; ++j) cuts.push_back(j * sv);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const std::size_t r = cuts.size() - 1;
  std::vector<std::uint64_t> weights(r);
  std::vector<std::size_t> pu(r), pv(r);
  for (std::size_t t = 0; t < r; ++t) {
    weights[t] = cuts[t + 1] - cuts[t];
    pu[t] = cuts[t] / su;
    pv[t] = cuts[t] / sv;
  }
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> pairs;
  std::vector<Rational> palette;
  std::vector<std::uint32_t> levels(r * r);
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < r; ++b) {
      const auto key = std::make_pair(u.level(pu[a], pu[b]), v.level(pv[a], pv[b]));
      auto [it, inserted] = pairs.try_emplace(key, static_cast<std::uint32_t>(palette.size()));
      if (inserted) palette.push_back(u.palette()[key.first] - v.palette()[key.second]);
      levels[a * r + b] = it->second;
    }
  }
  return SignedStepFunction(std::move(weights), std::move(palette), std::move(levels));
}

SignedStepFunction aligned_difference(const StepGraphon& u, const StepGraphon& v) {
  if (u.parts() != v.parts()) throw Error(ErrorCode::SizeMismatch, "aligned difference needs equal part counts");
  const std::size_t k = u.parts();
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> pairs;
  std::vector<Rational> palette;
  std::vector<std::uint32_t> levels(k * k);
  for (std::size_t a = 0; a < k * k; ++a) {
    const auto key = std::make_pair(u.levels()[a], v.levels()[a]);
    auto [it, inserted] = pairs.try_emplace(key, static_cast<std::uint32_t>(palette.size()));
    if (inserted) palette.push_back(u.palette()[key.first] - v.palette()[key.second]);
    levels[a] = it->second;
  }
  return SignedStepFunction(std::vector<std::uint64_t>(k, 1), std::move(palette), std::move(levels));
}

Rational d1(const StepGraphon& u, const StepGraphon& v) { return l1_norm(difference(u, v)); }

Rational d2(const StepGraphon& u, const StepGraphon& v) {
  const SignedStepFunction f = difference(u, v);
  const std::size_t k = f.parts();
  std::vector<unsigned __int128> acc(f.palette().size(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      acc[f.level(i, j)] += static_cast<unsigned __int128>(f.weights()[i]) * f.weights()[j];
    }
  }
  Rational sum = 0;
  for (std::size_t p = 0; p < acc.size(); ++p) {
    sum += f.palette()[p] * f.palette()[p] * Rational(detail::to_integer_u128(acc[p]));
  }
  const Rational total(Integer(static_cast<unsigned long>(f.total_weight())));
  return sum / (total * total);
}

Rational d_square(const StepGraphon& u, const StepGraphon& v, const CutNormOptions& options) {
  CutNormOptions exact = options;
  exact.heuristic = false;
  return cut_norm(difference(u, v), exact).value;
}

CutNormBounds d_square_bounds(const StepGraphon& u, const StepGraphon& v, const CutNormOptions& options) {
  return cut_norm_bounds(difference(u, v), options);
}

namespace {

// Local search over transpositions minimising Σ (a_ij − b_{σi σj})².
class AlignmentSearch {
 public:
  AlignmentSearch(const StepGraphon& a, const StepGraphon& b) : k_(a.parts()), a_(k_ * k_), b_(k_ * k_) {
    for (std::size_t i = 0; i < k_ * k_; ++i) {
      a_[i] = to_double(a.palette()[a.levels()[i]]);
      b_[i] = to_double(b.palette()[b.levels()[i]]);
    }
  }
  AlignmentSearch(const FiniteGraph& a, const FiniteGraph& b) : k_(a.vertices()), a_(k_ * k_), b_(k_ * k_) {
    for (std::size_t i = 0; i < k_; ++i) {
      for (std::size_t j = 0; j < k_; ++j) {
        a_[i * k_ + j] = a.adjacent(i, j) ? 1.0 : 0.0;
        b_[i * k_ + j] = b.adjacent(i, j) ? 1.0 : 0.0;
      }
    }
  }

  double objective(const std::vector<std::size_t>& s) const {
    double sum = 0;
    for (std::size_t i = 0; i < k_; ++i) {
      for (std::size_t j = 0; j < k_; ++j) {
        const double d = a(i, j) - b(s[i], s[j]);
        sum += d * d;
      }
    }
    return sum;
  }

  // Change in the objective when positions x and y of σ are exchanged.
  double swap_delta(const std::vector<std::size_t>& s, std::size_t x, std::size_t y) const {
    double delta = 0;
    auto sq = [](double v) { return v * v; };
    for (std::size_t i = 0; i < k_; ++i) {
      if (i == x || i == y) continue;
      delta += 2 * (sq(a(i, x) - b(s[i], s[y])) - sq(a(i, x) - b(s[i], s[x])) + sq(a(i, y) - b(s[i], s[x])) -
                    sq(a(i, y) - b(s[i], s[y])));
    }
    delta += sq(a(x, x) - b(s[y], s[y])) - sq(a(x, x) - b(s[x], s[x]));
    delta += sq(a(y, y) - b(s[x], s[x])) - sq(a(y, y) - b(s[y], s[y]));
    delta += 2 * (sq(a(x, y) - b(s[y], s[x])) - sq(a(x, y) - b(s[x], s[y])));
    return delta;
  }

  std::vector<std::size_t> descend(std::vector<std::size_t> s, std::uint64_t iterations, std::mt19937_64& rng) const {
    if (k_ < 2) return s;
    std::uniform_int_distribution<std::size_t> pick(0, k_ - 1);
    for (std::uint64_t it = 0; it < iterations; ++it) {
      const std::size_t x = pick(rng), y = pick(rng);
      if (x == y) continue;
      if (swap_delta(s, x, y) < -1e-12) std::swap(s[x], s[y]);
    }
    return s;
  }

  // Best σ (by the squared objective) among a sweep of restarts.
  std::vector<std::size_t> search(const std::vector<std::size_t>& start, std::uint64_t budget, unsigned restarts,
                                  std::uint64_t seed) const {
    std::vector<std::size_t> best = start;
    double best_value = objective(start);
    for (unsigned run = 0; run < std::max(1u, restarts); ++run) {
      std::mt19937_64 rng(detail::derive_seed(seed, run));
      std::vector<std::size_t> s = start;
      if (run > 0) std::shuffle(s.begin(), s.end(), rng);
      s = descend(std::move(s), budget, rng);
      const double value = objective(s);
      if (value < best_value) {
        best_value = value;
        best = std::move(s);
      }
    }
    return best;
  }

 private:
  double a(std::size_t i, std::size_t j) const { return a_[i * k_ + j]; }
  double b(std::size_t i, std::size_t j) const { return b_[i * k_ + j]; }

  std::size_t k_;
  std::vector<double> a_, b_;
};

std::vector<std::size_t> degree_alignment(const StepGraphon& u, const StepGraphon& v) {
  const std::size_t k = u.parts();
  auto ranks = [k](const StepGraphon& w) {
    std::vector<Rational> deg(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) deg[i] += w.value(i, j);
    }
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return deg[a] > deg[b]; });
    return order;
  };
  const auto ru = ranks(u), rv = ranks(v);
  std::vector<std::size_t> sigma(k);
  for (std::size_t r = 0; r < k; ++r) sigma[ru[r]] = rv[r];
  return sigma;
}

std::int64_t graph_cut(const FiniteGraph& g, const FiniteGraph& h, const std::vector<std::size_t>& s) {
  const std::size_t n = g.vertices();
  std::vector<std::int64_t> m(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m[i * n + j] = static_cast<std::int64_t>(g.adjacent(i, j)) - static_cast<std::int64_t>(h.adjacent(s[i], s[j]));
    }
  }
  return detail::cut_norm_small(m, n);
}

std::uint64_t factorial_capped(std::size_t n, std::uint64_t cap) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) {
    f *= i;
    if (f > cap) return cap + 1;
  }
  return f;
}

}  // namespace

DeltaBound hat_delta(const FiniteGraph& g, const FiniteGraph& h, const AlignOptions& options) {
  const std::size_t n = g.vertices();
  if (h.vertices() != n) {
    throw Error(ErrorCode::SizeMismatch, "hat_delta needs graphs of equal size (" + std::to_string(n) + " vs " +
                                             std::to_string(h.vertices()) + ")");
  }
  if (n == 0) throw Error(ErrorCode::EmptyGraph, "hat_delta on empty vertex sets");
  const Rational area(Integer(static_cast<unsigned long>(n * n)));
  DeltaBound out;
  if (options.mode == AlignMode::Exact) {
    if (n > 8) throw Error(ErrorCode::ExactTooLarge, "exact alignment limited to 8 vertices, got " + std::to_string(n));
    std::vector<std::size_t> s(n);
    std::iota(s.begin(), s.end(), std::size_t{0});
    std::int64_t best = -1;
    std::vector<std::size_t> best_s = s;
    do {
      const std::int64_t c = graph_cut(g, h, s);
      if (best < 0 || c < best) {
        best = c;
        best_s = s;
      }
    } while (best > 0 && std::next_permutation(s.begin(), s.end()));
    out.lower = out.upper = Rational(best) / area;
    out.witness = AlignmentWitness{1, Permutation(best_s)};
    return out;
  }
  const AlignmentSearch search(g, h);
  std::vector<std::size_t> id(n);
  std::iota(id.begin(), id.end(), std::size_t{0});
  std::vector<std::vector<std::size_t>> candidates{id};
  for (unsigned run = 0; run < std::max(1u, options.restarts); ++run) {
    std::mt19937_64 rng(detail::derive_seed(options.seed, run));
    std::vector<std::size_t> s = id;
    if (run > 0) std::shuffle(s.begin(), s.end(), rng);
    candidates.push_back(search.descend(std::move(s), options.budget, rng));
  }
  out.lower = 0;
  out.upper = 2;
  for (const auto& s : candidates) {
    Rational value;
    bool exact = true;
    if (n <= 20) {
      value = Rational(graph_cut(g, h, s)) / area;
    } else {
      const StepGraphon wg = graphon_of_graph(g);
      const StepGraphon wh = graphon_of_graph(h.permuted(Permutation(s)));
      CutNormBounds b = cut_norm_bounds(aligned_difference(wg, wh));
      value = b.upper;
      exact = b.exact();
    }
    if (value < out.upper) {
      out.upper = value;
      out.witness = AlignmentWitness{1, Permutation(s)};
      out.upper_kind = exact ? UpperKind::Exact : UpperKind::Certified;
    }
  }
  return out;
}

DeltaBound delta_bound(const StepGraphon& u, const StepGraphon& v, const DeltaBoundOptions& options) {
  DeltaBound out;
  // Lower bound: counting lemma inverted on small test graphs.
  const std::uint64_t end = first_index_with_vertices(options.max_test_vertices + 1);
  Rational lower = 0;
  for (std::uint64_t idx = first_index_with_vertices(2); idx < end; ++idx) {
    const FiniteGraph f = enumerate_graph(idx);
    if (t_ind_cost(f, u) > options.tind_cost_limit || t_ind_cost(f, v) > options.tind_cost_limit) continue;
    const Rational gap = abs(t_ind_exact(f, u, options.tind_cost_limit) - t_ind_exact(f, v, options.tind_cost_limit));
    lower = std::max(lower, Rational(gap / (4 * binomial2(f.vertices()))));
  }

  // Upper bound: identity on the overlay, then aligned blow-ups.
  const std::uint64_t l = lcm_u64(u.parts(), v.parts());
  out.upper = 2;
  auto consider = [&](const CutNormBounds& b, std::size_t blowup, std::vector<std::size_t> sigma) {
    if (b.upper < out.upper) {
      out.upper = b.upper;
      out.upper_kind = b.exact() ? UpperKind::Exact : UpperKind::Certified;
      out.witness = AlignmentWitness{blowup, Permutation(std::move(sigma))};
    }
  };
  {
    std::vector<std::size_t> id(l);
    std::iota(id.begin(), id.end(), std::size_t{0});
    consider(d_square_bounds(u, v, options.cut), 1, std::move(id));
  }
  for (std::size_t b = 1; b <= options.blowup_limit && out.upper > 0; ++b) {
    const std::size_t parts = l * b;
    if (parts > 4096) break;
    const StepGraphon ub = blow_up(u, parts / u.parts());
    const StepGraphon vb = blow_up(v, parts / v.parts());
    std::vector<std::vector<std::size_t>> candidates;
    if (factorial_capped(parts, options.budget) <= options.budget && parts <= 8) {
      std::vector<std::size_t> s(parts);
      std::iota(s.begin(), s.end(), std::size_t{0});
      do candidates.push_back(s);
      while (std::next_permutation(s.begin(), s.end()));
    } else {
      const auto sorted = degree_alignment(ub, vb);
      candidates.push_back(sorted);
      const AlignmentSearch search(ub, vb);
      candidates.push_back(search.search(sorted, options.budget, options.restarts, detail::derive_seed(options.seed, b)));
    }
    for (auto& s : candidates) {
      const Permutation sigma(s);
      if (b == 1 && sigma.is_identity()) continue;
      CutNormOptions cut = options.cut;
      cut.seed = detail::derive_seed(options.seed, 1000 + b);
      consider(cut_norm_bounds(aligned_difference(ub, permute_parts(vb, sigma)), cut), b, std::move(s));
      if (out.upper == 0) break;
    }
  }
  out.lower = lower;
  return out;
}

TruncatedDistance d_w_truncated(const StepGraphon& u, const StepGraphon& v, std::size_t n_terms) {
  if (n_terms == 0) throw Error(ErrorCode::InvalidArgument, "d_w truncation needs N >= 1");
  Rational value = 0;
  for (std::size_t i = 0; i < n_terms; ++i) {
    const FiniteGraph f = enumerate_graph(i);
    value += pow2(-static_cast<long>(i)) * abs(t_ind_exact(f, u) - t_ind_exact(f, v));
  }
  return {value, pow2(-static_cast<long>(n_terms - 1))};
}

}  // namespace graphonlab
