#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <random>
#include <string>

#include "cut_engine.hpp"
#include "graphonlab/error.hpp"
#include "graphonlab/metrics.hpp"
#include "graphonlab/parallel.hpp"
#include "mix.hpp"
#include "scaled_palette.hpp"

namespace graphonlab {

namespace {

using i128 = __int128;

template <class T>
T zero() {
  return T(0);
}

template <class T>
T max0(const T& a) {
  return a > 0 ? a : zero<T>();
}

// One connected piece of the nonzero pattern, twin parts merged.
struct Block {
  std::vector<std::uint64_t> weights;
  std::vector<std::uint32_t> levels;
  std::size_t size() const { return weights.size(); }
  std::uint64_t total() const { return std::accumulate(weights.begin(), weights.end(), std::uint64_t{0}); }
};

std::vector<Block> split_blocks(const SignedStepFunction& f, bool compress) {
  const std::size_t k = f.parts();
  std::vector<Block> blocks;
  if (!compress) {
    Block b;
    b.weights = f.weights();
    b.levels.resize(k * k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) b.levels[i * k + j] = f.level(i, j);
    }
    blocks.push_back(std::move(b));
    return blocks;
  }
  const auto zero_level = f.zero_level();
  auto nonzero = [&](std::size_t i, std::size_t j) { return !zero_level || f.level(i, j) != *zero_level; };

  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<bool> active(k, false);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      if (!nonzero(i, j)) continue;
      active[i] = active[j] = true;
      parent[find(i)] = find(j);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < k; ++i) {
    if (active[i]) members[find(i)].push_back(i);
  }
  for (auto& [root, parts] : members) {
    // Merge parts whose rows agree on the component (they vanish outside it).
    std::map<std::vector<std::uint32_t>, std::size_t> seen;
    std::vector<std::size_t> reps;
    Block b;
    for (std::size_t i : parts) {
      std::vector<std::uint32_t> row;
      row.reserve(parts.size());
      for (std::size_t j : parts) row.push_back(f.level(i, j));
      auto [it, inserted] = seen.try_emplace(std::move(row), reps.size());
      if (inserted) {
        reps.push_back(i);
        b.weights.push_back(f.weights()[i]);
      } else {
        b.weights[it->second] += f.weights()[i];
      }
    }
    const std::size_t r = reps.size();
    b.levels.resize(r * r);
    for (std::size_t a = 0; a < r; ++a) {
      for (std::size_t c = 0; c < r; ++c) b.levels[a * r + c] = f.level(reps[a], reps[c]);
    }
    blocks.push_back(std::move(b));
  }
  return blocks;
}

// Integer block matrix m_ij = c_i c_j D f_ij.
template <class T>
std::vector<T> block_matrix(const Block& b, const detail::ScaledPalette& scaled);

template <>
std::vector<i128> block_matrix<i128>(const Block& b, const detail::ScaledPalette& scaled) {
  const std::size_t r = b.size();
  std::vector<i128> m(r * r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      m[i * r + j] = static_cast<i128>(b.weights[i]) * static_cast<i128>(b.weights[j]) *
                     static_cast<i128>(scaled.small[b.levels[i * r + j]]);
    }
  }
  return m;
}

template <>
std::vector<Integer> block_matrix<Integer>(const Block& b, const detail::ScaledPalette& scaled) {
  const std::size_t r = b.size();
  std::vector<Integer> m(r * r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      m[i * r + j] = Integer(static_cast<unsigned long>(b.weights[i])) *
                     Integer(static_cast<unsigned long>(b.weights[j])) * scaled.numerators[b.levels[i * r + j]];
    }
  }
  return m;
}

bool fits_i128(const Block& b, const detail::ScaledPalette& scaled) {
  if (!scaled.fits_i64) return false;
  Integer max_abs = 0;
  for (auto l : b.levels) max_abs = std::max<Integer>(max_abs, abs(Integer(scaled.numerators[l])));
  const Integer total(static_cast<unsigned long>(b.total()));
  return detail::bit_length(total * total * max_abs) < 124;
}

struct SignedMax {
  Integer pos = 0;
  Integer neg = 0;
};

Integer to_int(const i128& v) { return detail::to_integer(v); }
Integer to_int(const Integer& v) { return v; }

template <class T>
SignedMax enumerate_block(const std::vector<T>& m, std::size_t r) {
  const std::size_t high = r > 10 ? std::min<std::size_t>(6, r - 6) : 0;
  const std::size_t low = r - high;
  const std::size_t chunks = std::size_t{1} << high;
  std::vector<std::pair<T, T>> best(chunks, {zero<T>(), zero<T>()});
  parallel_for(chunks, [&](std::size_t chunk) {
    std::vector<T> cs(r, zero<T>());
    for (std::size_t b = 0; b < high; ++b) {
      if ((chunk >> b) & 1) {
        for (std::size_t j = 0; j < r; ++j) cs[j] += m[(low + b) * r + j];
      }
    }
    T bp = zero<T>(), bn = zero<T>();
    auto evaluate = [&] {
      T p = zero<T>(), n = zero<T>();
      for (std::size_t j = 0; j < r; ++j) {
        if (cs[j] > 0) {
          p += cs[j];
        } else {
          n -= cs[j];
        }
      }
      if (p > bp) bp = p;
      if (n > bn) bn = n;
    };
    evaluate();
    const std::uint64_t limit = std::uint64_t{1} << low;
    for (std::uint64_t g = 1; g < limit; ++g) {
      const int bit = std::countr_zero(g);
      const bool added = (((g ^ (g >> 1)) >> bit) & 1) != 0;
      const T* row = &m[static_cast<std::size_t>(bit) * r];
      if (added) {
        for (std::size_t j = 0; j < r; ++j) cs[j] += row[j];
      } else {
        for (std::size_t j = 0; j < r; ++j) cs[j] -= row[j];
      }
      evaluate();
    }
    best[chunk] = {bp, bn};
  });
  SignedMax out;
  for (const auto& [p, n] : best) {
    out.pos = std::max(out.pos, to_int(p));
    out.neg = std::max(out.neg, to_int(n));
  }
  return out;
}

// Alternating best response from random starts; every value is achieved by
// an explicit (S,T), so it is a lower bound.
template <class T>
SignedMax local_search_block(const std::vector<T>& m, std::size_t r, std::uint64_t seed, unsigned restarts) {
  std::vector<SignedMax> found(std::max(1u, restarts));
  parallel_for(found.size(), [&](std::size_t run) {
    std::mt19937_64 rng(detail::derive_seed(seed, run));
    SignedMax local;
    for (int sign : {1, -1}) {
      std::vector<char> s(r);
      for (auto& v : s) v = static_cast<char>(rng() & 1);
      if (run == 0) std::fill(s.begin(), s.end(), 1);
      T best = zero<T>();
      std::vector<T> sums(r);
      for (int iter = 0; iter < 64; ++iter) {
        std::fill(sums.begin(), sums.end(), zero<T>());
        for (std::size_t i = 0; i < r; ++i) {
          if (!s[i]) continue;
          for (std::size_t j = 0; j < r; ++j) sums[j] += m[i * r + j];
        }
        // Symmetric matrix: the best T for S is also the best S for that T.
        T value = zero<T>();
        std::vector<char> t(r);
        for (std::size_t j = 0; j < r; ++j) {
          const bool take = sign > 0 ? sums[j] > 0 : sums[j] < 0;
          t[j] = take ? 1 : 0;
          if (take) value += sign > 0 ? sums[j] : T(-sums[j]);
        }
        if (!(value > best)) break;
        best = value;
        s = std::move(t);
      }
      (sign > 0 ? local.pos : local.neg) = to_int(best);
    }
    found[run] = local;
  });
  SignedMax out;
  for (const auto& f : found) {
    out.pos = std::max(out.pos, f.pos);
    out.neg = std::max(out.neg, f.neg);
  }
  return out;
}

SignedMax l1_parts(const Block& b, const detail::ScaledPalette& scaled) {
  SignedMax out;
  const std::size_t r = b.size();
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      const Integer& a = scaled.numerators[b.levels[i * r + j]];
      if (a == 0) continue;
      Integer w = Integer(static_cast<unsigned long>(b.weights[i])) * Integer(static_cast<unsigned long>(b.weights[j]));
      if (a > 0) {
        out.pos += w * a;
      } else {
        out.neg -= w * a;
      }
    }
  }
  return out;
}

// ‖N‖_op for N = C^{1/2} A C^{1/2}, bounded through tr(N^16) = tr((AC)^16).
std::optional<Rational> spectral_radius_bound(const Block& b, const detail::ScaledPalette& scaled) {
  const std::size_t r = b.size();
  if (r > 512 || !scaled.fits_i64) return std::nullopt;
  std::vector<i128> x(r * r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      const std::int64_t a = scaled.small[b.levels[i * r + j]];
      if (b.weights[j] > (std::uint64_t{1} << 40) || (a > (std::int64_t{1} << 40)) || a < -(std::int64_t{1} << 40)) {
        return std::nullopt;
      }
      x[i * r + j] = static_cast<i128>(a) * static_cast<i128>(b.weights[j]);
    }
  }
  for (int step = 0; step < 3; ++step) {
    long double max_abs = 0, max_row = 0;
    for (std::size_t i = 0; i < r; ++i) {
      long double row = 0;
      for (std::size_t j = 0; j < r; ++j) {
        const i128 v = x[i * r + j];
        const long double av = static_cast<long double>(v < 0 ? -v : v);
        row += av;
        max_abs = std::max(max_abs, av);
      }
      max_row = std::max(max_row, row);
    }
    if (max_row * max_abs * 1.01L >= 0x1p120L) return std::nullopt;
    std::vector<i128> y(r * r, 0);
    parallel_for(r, [&](std::size_t i) {
      for (std::size_t l = 0; l < r; ++l) {
        const i128 xil = x[i * r + l];
        if (xil == 0) continue;
        for (std::size_t j = 0; j < r; ++j) y[i * r + j] += xil * x[l * r + j];
      }
    });
    x = std::move(y);
  }
  Integer trace = 0;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) trace += detail::to_integer(x[i * r + j]) * detail::to_integer(x[j * r + i]);
  }
  // q = (floor((T 2^{16p})^{1/16}) + 1) / 2^p  >=  T^{1/16}.
  constexpr unsigned p = 24;
  Integer scaled_trace = trace << (16 * p);
  Integer root;
  mpz_root(root.get_mpz_t(), scaled_trace.get_mpz_t(), 16);
  return make_rational(root + 1, Integer(1) << p);
}

struct BlockBounds {
  Integer pos_lo, neg_lo;
  Rational pos_hi, neg_hi;
  bool exact;
};

BlockBounds bound_block(const Block& b, const detail::ScaledPalette& scaled, const CutNormOptions& options,
                        std::size_t index, bool want_upper) {
  BlockBounds out;
  const bool small = fits_i128(b, scaled);
  if (b.size() <= options.exact_limit) {
    SignedMax e = small ? enumerate_block(block_matrix<i128>(b, scaled), b.size())
                        : enumerate_block(block_matrix<Integer>(b, scaled), b.size());
    out.pos_lo = e.pos;
    out.neg_lo = e.neg;
    out.pos_hi = Rational(e.pos);
    out.neg_hi = Rational(e.neg);
    out.exact = true;
    return out;
  }
  out.exact = false;
  const std::uint64_t seed = detail::derive_seed(options.seed, index);
  SignedMax lo = small ? local_search_block(block_matrix<i128>(b, scaled), b.size(), seed, options.restarts)
                       : local_search_block(block_matrix<Integer>(b, scaled), b.size(), seed, options.restarts);
  out.pos_lo = lo.pos;
  out.neg_lo = lo.neg;
  SignedMax l1 = l1_parts(b, scaled);
  out.pos_hi = Rational(l1.pos);
  out.neg_hi = Rational(l1.neg);
  if (want_upper) {
    if (auto q = spectral_radius_bound(b, scaled)) {
      Rational s = *q * Rational(Integer(static_cast<unsigned long>(b.total())));
      out.pos_hi = std::min(out.pos_hi, s);
      out.neg_hi = std::min(out.neg_hi, s);
    }
  }
  return out;
}

Integer denominator_of(const SignedStepFunction& f, const detail::ScaledPalette& scaled) {
  const Integer total(static_cast<unsigned long>(f.total_weight()));
  return scaled.denominator * total * total;
}

std::size_t largest_block(const std::vector<Block>& blocks) {
  std::size_t m = 0;
  for (const auto& b : blocks) m = std::max(m, b.size());
  return m;
}

CutNormBounds bounds_without_split(const SignedStepFunction& f, const CutNormOptions& options) {
  const detail::ScaledPalette scaled(f.palette());
  const auto blocks = split_blocks(f, options.compress);
  Integer pos_lo = 0, neg_lo = 0;
  Rational pos_hi = 0, neg_hi = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    BlockBounds b = bound_block(blocks[i], scaled, options, i, true);
    pos_lo += b.pos_lo;
    neg_lo += b.neg_lo;
    pos_hi += b.pos_hi;
    neg_hi += b.neg_hi;
  }
  const Rational den(denominator_of(f, scaled));
  return {Rational(std::max(pos_lo, neg_lo)) / den, std::max(pos_hi, neg_hi) / den};
}

// Groups parts whose rows agree away from the diagonal and whose in-group
// off-diagonal value is a single constant.
std::vector<std::vector<std::size_t>> diagonal_classes(const SignedStepFunction& f) {
  const std::size_t k = f.parts();
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (find(i) == find(j)) continue;
      bool same = true;
      for (std::size_t l = 0; l < k && same; ++l) {
        if (l != i && l != j) same = f.level(i, l) == f.level(j, l);
      }
      if (same) parent[find(i)] = find(j);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < k; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : groups) {
    if (members.size() < 2) continue;
    std::vector<bool> in(k, false);
    for (auto m : members) in[m] = true;
    const std::uint32_t kappa = f.level(members[0], members[1]);
    bool ok = true;
    for (std::size_t a = 0; a < members.size() && ok; ++a) {
      for (std::size_t l = 0; l < k && ok; ++l) {
        if (l == members[a]) continue;
        ok = in[l] ? f.level(members[a], l) == kappa : f.level(members[a], l) == f.level(members[0], l);
      }
    }
    if (ok) out.push_back(std::move(members));
  }
  return out;
}

std::optional<Rational> diagonal_split_bound(const SignedStepFunction& f, const CutNormOptions& options) {
  if (f.parts() > 4096) return std::nullopt;
  const auto classes = diagonal_classes(f);
  if (classes.empty()) return std::nullopt;
  const std::size_t k = f.parts();
  std::vector<std::uint32_t> levels(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) levels[i * k + j] = f.level(i, j);
  }
  // F' = F with in-class diagonals replaced; F - F' is diagonal.
  Rational pos = 0, neg = 0;
  for (const auto& members : classes) {
    const std::uint32_t kappa = f.level(members[0], members[1]);
    for (auto i : members) {
      const Rational diff = f.value(i, i) - f.palette()[kappa];
      const Rational w = Rational(Integer(static_cast<unsigned long>(f.weights()[i])));
      if (diff > 0) pos += w * w * diff;
      if (diff < 0) neg -= w * w * diff;
      levels[i * k + i] = kappa;
    }
  }
  const SignedStepFunction reduced(f.weights(), f.palette(), std::move(levels));
  const CutNormBounds inner = bounds_without_split(reduced, options);
  const Rational total(Integer(static_cast<unsigned long>(f.total_weight())));
  return inner.upper + std::max(pos, neg) / (total * total);
}

}  // namespace

namespace detail {

std::int64_t cut_norm_small(const std::vector<std::int64_t>& m, std::size_t r) {
  std::vector<std::int64_t> cs(r, 0);
  std::int64_t best = 0;
  auto evaluate = [&] {
    std::int64_t p = 0, n = 0;
    for (std::size_t j = 0; j < r; ++j) (cs[j] > 0 ? p : n) += cs[j];
    best = std::max({best, p, -n});
  };
  evaluate();
  const std::uint64_t limit = std::uint64_t{1} << r;
  for (std::uint64_t g = 1; g < limit; ++g) {
    const int bit = std::countr_zero(g);
    const bool added = (((g ^ (g >> 1)) >> bit) & 1) != 0;
    const std::int64_t* row = &m[static_cast<std::size_t>(bit) * r];
    if (added) {
      for (std::size_t j = 0; j < r; ++j) cs[j] += row[j];
    } else {
      for (std::size_t j = 0; j < r; ++j) cs[j] -= row[j];
    }
    evaluate();
  }
  return best;
}

}  // namespace detail

CutNormResult cut_norm(const SignedStepFunction& f, const CutNormOptions& options) {
  const detail::ScaledPalette scaled(f.palette());
  const auto blocks = split_blocks(f, options.compress);
  const std::size_t largest = largest_block(blocks);
  if (largest > options.exact_limit && !options.heuristic) {
    throw Error(ErrorCode::TooManyParts, "exact cut norm needs " + std::to_string(largest) +
                                             " parts after reduction, limit is " +
                                             std::to_string(options.exact_limit));
  }
  Integer pos = 0, neg = 0;
  bool exact = true;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    BlockBounds b = bound_block(blocks[i], scaled, options, i, false);
    pos += b.pos_lo;
    neg += b.neg_lo;
    exact = exact && b.exact;
  }
  return {Rational(std::max(pos, neg)) / Rational(denominator_of(f, scaled)), exact};
}

CutNormBounds cut_norm_bounds(const SignedStepFunction& f, const CutNormOptions& options) {
  CutNormBounds b = bounds_without_split(f, options);
  if (b.exact() || !options.compress) return b;
  if (auto split = diagonal_split_bound(f, options)) b.upper = std::min(b.upper, *split);
  b.upper = std::max(b.upper, b.lower);
  return b;
}

Rational l1_norm(const SignedStepFunction& f) {
  const std::size_t k = f.parts();
  std::vector<Integer> mass(f.palette().size(), 0);
  std::vector<unsigned __int128> acc(f.palette().size(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      acc[f.level(i, j)] += static_cast<unsigned __int128>(f.weights()[i]) * f.weights()[j];
    }
  }
  Rational sum = 0;
  for (std::size_t p = 0; p < acc.size(); ++p) sum += abs(f.palette()[p]) * Rational(detail::to_integer_u128(acc[p]));
  const Rational total(Integer(static_cast<unsigned long>(f.total_weight())));
  return sum / (total * total);
}

}  // namespace graphonlab
