#include "graphonlab/reference.hpp"

#include <algorithm>
#include <numeric>

#include "graphonlab/error.hpp"
#include "scaled_palette.hpp"

namespace graphonlab::reference {

Rational cut_norm_brute(const SignedStepFunction& f) {
  const std::size_t k = f.parts();
  if (k > 14) throw Error(ErrorCode::ExactTooLarge, "brute cut norm limited to 14 parts");
  const detail::ScaledPalette scaled(f.palette());
  if (!scaled.fits_i64) throw Error(ErrorCode::ExactTooLarge, "brute cut norm needs 62-bit numerators");
  // m_ij = w_i w_j num_ij; magnitudes stay far below 2^127 for the weights used in tests.
  std::vector<__int128> m(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      m[i * k + j] = static_cast<__int128>(f.weights()[i]) * static_cast<__int128>(f.weights()[j]) *
                     scaled.small[f.level(i, j)];
    }
  }
  std::vector<__int128> col(k, 0);
  __int128 best = 0;
  const std::uint64_t subsets = std::uint64_t{1} << k;
  std::uint64_t s_gray = 0;
  for (std::uint64_t s = 0; s < subsets; ++s) {
    if (s) {
      const unsigned bit = static_cast<unsigned>(__builtin_ctzll(s));
      const bool adding = !((s_gray >> bit) & 1);
      s_gray ^= std::uint64_t{1} << bit;
      for (std::size_t j = 0; j < k; ++j) col[j] += adding ? m[bit * k + j] : -m[bit * k + j];
    }
    __int128 sum = 0;
    std::uint64_t t_gray = 0;
    for (std::uint64_t t = 1; t < subsets; ++t) {
      const unsigned bit = static_cast<unsigned>(__builtin_ctzll(t));
      const bool adding = !((t_gray >> bit) & 1);
      t_gray ^= std::uint64_t{1} << bit;
      sum += adding ? col[bit] : -col[bit];
      const __int128 a = sum < 0 ? -sum : sum;
      if (a > best) best = a;
    }
  }
  const Integer total(static_cast<unsigned long>(f.total_weight()));
  return make_rational(detail::to_integer(best), scaled.denominator * total * total);
}

Rational d1_brute(const StepGraphon& u, const StepGraphon& v) {
  const std::size_t k = std::lcm(u.parts(), v.parts());
  const std::size_t a = k / u.parts(), b = k / v.parts();
  Rational sum = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) sum += abs(u.value(i / a, j / a) - v.value(i / b, j / b));
  }
  return sum / Rational(k * k);
}

Rational d_square_brute(const StepGraphon& u, const StepGraphon& v) {
  const std::size_t k = std::lcm(u.parts(), v.parts());
  const std::size_t a = k / u.parts(), b = k / v.parts();
  std::vector<Rational> diff(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) diff[i * k + j] = u.value(i / a, j / a) - v.value(i / b, j / b);
  }
  return cut_norm_brute(SignedStepFunction(k, diff));
}

Rational t_ind_brute(const FiniteGraph& f, const StepGraphon& w) {
  const std::size_t n = f.vertices(), k = w.parts();
  std::vector<std::size_t> map(n, 0);
  Rational total = 0;
  for (;;) {
    Rational p = 1;
    for (std::size_t i = 0; i < n && p != 0; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const Rational& x = w.value(map[i], map[j]);
        p *= f.adjacent(i, j) ? x : 1 - x;
      }
    }
    total += p;
    std::size_t pos = 0;
    while (pos < n && ++map[pos] == k) map[pos++] = 0;
    if (pos == n) break;
  }
  Rational norm = 1;
  for (std::size_t i = 0; i < n; ++i) norm *= k;
  return total / norm;
}

Rational hat_delta_brute(const FiniteGraph& g, const FiniteGraph& h) {
  if (g.vertices() != h.vertices()) throw Error(ErrorCode::SizeMismatch, "graphs must have equal vertex counts");
  if (g.vertices() > 7) throw Error(ErrorCode::ExactTooLarge, "brute alignment limited to 7 vertices");
  const StepGraphon wg = graphon_of_graph(g);
  std::vector<std::size_t> perm(g.vertices());
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<Rational> best;
  do {
    const Rational d = d_square_brute(wg, graphon_of_graph(h.permuted(Permutation(perm))));
    if (!best || d < *best) best = d;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return *best;
}

}  // namespace graphonlab::reference
