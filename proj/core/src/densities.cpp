#include "graphonlab/densities.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>
#include <string>

#include "graphonlab/error.hpp"
#include "graphonlab/parallel.hpp"
#include "graphonlab/sampling.hpp"
#include "scaled_palette.hpp"

namespace graphonlab {

namespace {

constexpr std::size_t kMaxEnumeratedVertices = 11;

std::uint64_t pairs_of(std::size_t n) { return n * (n - 1) / 2; }

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r = saturating_mul(r, base);
  return r;
}

// Parts with identical rows merged, with multiplicities.
struct Compressed {
  std::vector<std::size_t> reps;
  std::vector<std::uint64_t> weights;
};

Compressed compress_rows(const StepGraphon& w) {
  Compressed c;
  std::map<std::vector<std::uint32_t>, std::size_t> seen;
  for (std::size_t i = 0; i < w.parts(); ++i) {
    auto row = w.row_levels(i);
    auto [it, inserted] = seen.try_emplace(std::vector<std::uint32_t>(row.begin(), row.end()), c.reps.size());
    if (inserted) {
      c.reps.push_back(i);
      c.weights.push_back(1);
    } else {
      ++c.weights[it->second];
    }
  }
  return c;
}

std::uint64_t generic_cost(std::size_t n, std::size_t distinct) { return saturating_pow(distinct, n); }

std::uint64_t bitset_cost(std::size_t n, std::size_t k) {
  if (n < 2) return 1;
  return saturating_mul(saturating_pow(k, n - 1), (k + 63) / 64);
}

Rational t_ind_bitset(const FiniteGraph& f, const StepGraphon& w) {
  const std::size_t n = f.vertices(), k = w.parts(), words = (k + 63) / 64;
  const std::uint32_t one = static_cast<std::uint32_t>(w.palette().size() - 1);
  const bool has_one = w.palette().back() == 1;
  std::vector<std::uint64_t> rows(k * words, 0), complement(k * words, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (has_one && w.level(i, j) == one) rows[i * words + j / 64] |= std::uint64_t{1} << (j % 64);
    }
    for (std::size_t q = 0; q < words; ++q) {
      std::uint64_t mask = q + 1 < words || k % 64 == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << (k % 64)) - 1;
      complement[i * words + q] = ~rows[i * words + q] & mask;
    }
  }
  auto bit = [&](std::size_t a, std::size_t b) { return (rows[a * words + b / 64] >> (b % 64)) & 1; };
  const std::size_t last = n - 1;
  std::vector<std::uint64_t> partial(k, 0);
  parallel_for(k, [&](std::size_t first) {
    std::vector<std::size_t> assign(n, 0);
    std::vector<std::uint64_t> cand((n) * words, 0);
    assign[0] = first;
    // cand level t holds the survivors for the last vertex after t+1 vertices.
    auto seed_level = [&](std::size_t t) {
      const std::uint64_t* src = f.adjacent(t, last) ? &rows[assign[t] * words] : &complement[assign[t] * words];
      for (std::size_t q = 0; q < words; ++q) {
        cand[t * words + q] = (t == 0 ? ~std::uint64_t{0} : cand[(t - 1) * words + q]) & src[q];
      }
    };
    std::uint64_t total = 0;
    auto recurse = [&](auto&& self, std::size_t t) -> void {
      if (t == last) {
        for (std::size_t q = 0; q < words; ++q) total += static_cast<std::uint64_t>(std::popcount(cand[(t - 1) * words + q]));
        return;
      }
      for (std::size_t a = 0; a < k; ++a) {
        bool ok = true;
        for (std::size_t s = 0; s < t && ok; ++s) ok = (bit(assign[s], a) != 0) == f.adjacent(s, t);
        if (!ok) continue;
        assign[t] = a;
        seed_level(t);
        self(self, t + 1);
      }
    };
    if (n == 1) {
      total = 1;
    } else {
      seed_level(0);
      recurse(recurse, 1);
    }
    partial[first] = total;
  });
  Integer count = 0;
  for (auto p : partial) count += Integer(static_cast<unsigned long>(p));
  if (n == 1) return 1;
  Integer den = 1;
  for (std::size_t i = 0; i < n; ++i) den *= Integer(static_cast<unsigned long>(k));
  return make_rational(count, den);
}

template <class T>
T make_num(const Integer& v);

template <>
__int128 make_num<__int128>(const Integer& v) {
  // Values here are below 2^126 by the caller's bound.
  Integer hi = v >> 64;
  Integer lo = v - (hi << 64);
  return (static_cast<__int128>(hi.get_si()) << 64) + static_cast<__int128>(static_cast<unsigned __int128>(lo.get_ui()));
}

template <>
Integer make_num<Integer>(const Integer& v) {
  return v;
}

Integer to_big(const __int128& v) { return detail::to_integer(v); }
Integer to_big(const Integer& v) { return v; }

template <class T>
Integer t_ind_generic_sum(const FiniteGraph& f, const StepGraphon& w, const Compressed& c,
                          const detail::ScaledPalette& scaled) {
  const std::size_t n = f.vertices(), r = c.reps.size();
  std::vector<T> on(scaled.numerators.size()), off(scaled.numerators.size());
  for (std::size_t p = 0; p < scaled.numerators.size(); ++p) {
    on[p] = make_num<T>(scaled.numerators[p]);
    off[p] = make_num<T>(scaled.denominator - scaled.numerators[p]);
  }
  std::vector<std::uint32_t> lv(r * r);
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < r; ++b) lv[a * r + b] = w.level(c.reps[a], c.reps[b]);
  }
  std::vector<Integer> partial(r);
  parallel_for(r, [&](std::size_t first) {
    std::vector<std::size_t> assign(n);
    std::vector<T> prod(n + 1);
    T sum = 0;
    assign[0] = first;
    prod[1] = T(static_cast<unsigned long>(c.weights[first]));
    auto recurse = [&](auto&& self, std::size_t t) -> void {
      if (t == n) {
        sum += prod[n];
        return;
      }
      for (std::size_t a = 0; a < r; ++a) {
        T p = prod[t] * T(static_cast<unsigned long>(c.weights[a]));
        for (std::size_t s = 0; s < t && p != 0; ++s) {
          const std::uint32_t l = lv[assign[s] * r + a];
          p *= f.adjacent(s, t) ? on[l] : off[l];
        }
        if (p == 0) continue;
        assign[t] = a;
        prod[t + 1] = p;
        self(self, t + 1);
      }
    };
    recurse(recurse, 1);
    partial[first] = to_big(sum);
  });
  Integer total = 0;
  for (const auto& p : partial) total += p;
  return total;
}

}  // namespace

std::uint64_t first_index_with_vertices(std::size_t n) {
  if (n == 0 || n > kMaxEnumeratedVertices + 1) throw Error(ErrorCode::InvalidArgument, "vertex count outside enumeration");
  std::uint64_t s = 0;
  for (std::size_t m = 1; m < n; ++m) s += std::uint64_t{1} << pairs_of(m);
  return s;
}

FiniteGraph enumerate_graph(std::uint64_t index) {
  std::size_t n = 1;
  std::uint64_t start = 0;
  while (true) {
    const std::uint64_t count = std::uint64_t{1} << pairs_of(n);
    if (index - start < count) break;
    start += count;
    ++n;
  }
  const std::uint64_t bits = index - start;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t b = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++b) {
      if ((bits >> b) & 1) edges.emplace_back(i, j);
    }
  }
  return FiniteGraph(n, std::span<const std::pair<std::size_t, std::size_t>>(edges));
}

std::uint64_t graph_index(const FiniteGraph& graph) {
  const std::size_t n = graph.vertices();
  if (n == 0) throw Error(ErrorCode::EmptyGraph, "the enumeration starts at one vertex");
  if (n > kMaxEnumeratedVertices) throw Error(ErrorCode::InvalidArgument, "graph too large for a 64-bit index");
  std::uint64_t bits = 0;
  std::size_t b = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++b) {
      if (graph.adjacent(i, j)) bits |= std::uint64_t{1} << b;
    }
  }
  return first_index_with_vertices(n) + bits;
}

std::uint64_t t_ind_cost(const FiniteGraph& f, const StepGraphon& w) {
  const std::size_t n = f.vertices();
  std::uint64_t cost = generic_cost(n, compress_rows(w).reps.size());
  if (w.is_zero_one()) cost = std::min(cost, bitset_cost(n, w.parts()));
  return cost;
}

Rational t_ind_exact(const FiniteGraph& f, const StepGraphon& w, std::uint64_t cost_limit) {
  const std::size_t n = f.vertices();
  if (n == 0) return 1;
  const Compressed c = compress_rows(w);
  const std::uint64_t gcost = generic_cost(n, c.reps.size());
  const std::uint64_t bcost = w.is_zero_one() ? bitset_cost(n, w.parts()) : std::numeric_limits<std::uint64_t>::max();
  if (std::min(gcost, bcost) > cost_limit) {
    throw Error(ErrorCode::TooExpensive, "exact t_ind needs " + std::to_string(c.reps.size()) + "^" +
                                             std::to_string(n) + " = " + std::to_string(gcost) +
                                             " terms, limit is " + std::to_string(cost_limit));
  }
  if (bcost < gcost) return t_ind_bitset(f, w);

  const detail::ScaledPalette scaled(w.palette());
  const std::uint64_t pairs = pairs_of(n);
  Integer scale = 1;
  for (std::uint64_t p = 0; p < pairs; ++p) scale *= scaled.denominator;
  Integer kn = 1;
  for (std::size_t i = 0; i < n; ++i) kn *= Integer(static_cast<unsigned long>(w.parts()));
  const bool small = detail::bit_length(scale * kn) < 125;
  Integer sum = small ? t_ind_generic_sum<__int128>(f, w, c, scaled) : t_ind_generic_sum<Integer>(f, w, c, scaled);
  return make_rational(sum, scale * kn);
}

MonteCarloEstimate t_ind_mc(const FiniteGraph& f, const StepGraphon& w, std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "Monte Carlo needs at least one trial");
  RandomSource rs(seed);
  MonteCarloEstimate out;
  out.trials = trials;
  for (std::uint64_t t = 0; t < trials; ++t) {
    if (sample_graph(w, f.vertices(), rs) == f) ++out.hits;
  }
  const Integer hits(static_cast<unsigned long>(out.hits)), n(static_cast<unsigned long>(trials));
  out.estimate = make_rational(hits, n);
  // stderr^2 = hits (n - hits) / n^3, rounded up on the 2^-40 grid.
  Integer num = hits * (n - hits) << 80;
  Integer den = n * n * n;
  Integer q = num / den;
  if (q * den != num) q += 1;
  Integer root;
  mpz_sqrt(root.get_mpz_t(), q.get_mpz_t());
  if (root * root != q) root += 1;
  out.stderr_bound = make_rational(root, Integer(1) << 40);
  return out;
}

Rational counting_bound(const FiniteGraph& f, const Rational& eps) {
  if (eps < 0) throw Error(ErrorCode::InvalidArgument, "counting bound needs eps >= 0");
  return 4 * binomial2(f.vertices()) * eps;
}

}  // namespace graphonlab
