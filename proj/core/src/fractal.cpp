#include <algorithm>
#include <bit>
#include <functional>

#include "graphonlab/constructions.hpp"
#include "graphonlab/error.hpp"
#include "graphonlab/parallel.hpp"

namespace graphonlab {

namespace {

std::uint64_t triangle(unsigned q) { return std::uint64_t{q} * (q + 1) / 2; }

}  // namespace

FractalStage::FractalStage(unsigned depth) : depth_(depth) {
  if (depth == 0) throw Error(ErrorCode::InvalidArgument, "fractal depth must be at least 1");
  if (depth > 10) throw Error(ErrorCode::InvalidArgument, "fractal depth above 10 does not fit 64-bit coordinates");
}

std::uint64_t FractalStage::render_parts() const { return std::uint64_t{1} << triangle(depth_); }

std::vector<FractalStage::Cell> FractalStage::black_cells(unsigned stage, std::uint64_t row_prefix,
                                                          std::uint64_t col_prefix) const {
  auto it = overrides_.find({stage, row_prefix, col_prefix});
  if (it != overrides_.end()) return {it->second.begin(), it->second.end()};
  std::vector<Cell> cells;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << stage); ++i) cells.emplace_back(i, i);
  return cells;
}

void FractalStage::override_black_cells(unsigned stage, std::uint64_t row_prefix, std::uint64_t col_prefix,
                                        std::vector<Cell> cells) {
  if (stage == 0 || stage > depth_) throw Error(ErrorCode::InvalidArgument, "override stage outside the depth");
  overrides_[{stage, row_prefix, col_prefix}] = std::set<Cell>(cells.begin(), cells.end());
}

bool FractalStage::black_at(unsigned stage, std::uint64_t rp, std::uint64_t cp, std::uint64_t i,
                            std::uint64_t j) const {
  if (!overrides_.empty()) {
    auto it = overrides_.find({stage, rp, cp});
    if (it != overrides_.end()) return it->second.count({i, j}) != 0;
  }
  return i == j;
}

bool FractalStage::is_black(std::uint64_t x, std::uint64_t y) const {
  const std::uint64_t total = triangle(depth_);
  for (unsigned q = 1; q <= depth_; ++q) {
    const std::uint64_t below = total - triangle(q);
    const std::uint64_t mask = (std::uint64_t{1} << q) - 1;
    const std::uint64_t rp = x >> (below + q), cp = y >> (below + q);
    if (black_at(q, rp, cp, (x >> below) & mask, (y >> below) & mask)) return true;
  }
  return false;
}

Rational FractalStage::black_measure() const {
  if (overrides_.empty()) return 1 - fractal_white_product(depth_);
  if (depth_ > 5) throw Error(ErrorCode::RenderTooLarge, "structural measure walk limited to depth 5");
  const std::uint64_t total = triangle(depth_);
  std::uint64_t black = 0;  // in units of the finest cell area 4^-total
  std::function<void(unsigned, std::uint64_t, std::uint64_t)> walk = [&](unsigned q, std::uint64_t rp,
                                                                          std::uint64_t cp) {
    const std::uint64_t side = std::uint64_t{1} << q;
    const std::uint64_t unit = std::uint64_t{1} << (2 * (total - triangle(q)));
    for (std::uint64_t i = 0; i < side; ++i) {
      for (std::uint64_t j = 0; j < side; ++j) {
        if (black_at(q, rp, cp, i, j)) {
          black += unit;
        } else if (q < depth_) {
          walk(q + 1, (rp << q) | i, (cp << q) | j);
        }
      }
    }
  };
  walk(1, 0, 0);
  return make_rational(Integer(static_cast<unsigned long>(black)), Integer(1) << (2 * total));
}

FractalStage fractal_stage(unsigned depth) { return FractalStage(depth); }

StepGraphon render_dense(const FractalStage& stage) {
  if (stage.depth() > 4) {
    throw Error(ErrorCode::RenderTooLarge, "dense render limited to depth 4 (2^10 parts), got depth " +
                                               std::to_string(stage.depth()));
  }
  const std::size_t n = stage.render_parts();
  std::vector<std::uint32_t> levels(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) levels[x * n + y] = stage.is_black(x, y) ? 1 : 0;
  }
  return StepGraphon::from_levels(n, {Rational(0), Rational(1)}, std::move(levels));
}

Rational fractal_white_product(unsigned depth) {
  Rational w = 1;
  for (unsigned n = 1; n <= depth; ++n) w *= 1 - pow2(-static_cast<long>(n));
  return w;
}

namespace {

Rational floor_to_grid(const Rational& x, long bits) {
  Rational y = x * pow2(bits);
  Integer f = y.get_num() / y.get_den();
  if (f * y.get_den() > y.get_num()) f -= 1;
  return Rational(f) * pow2(-bits);
}

Rational ceil_to_grid(const Rational& x, long bits) {
  Rational y = x * pow2(bits);
  Integer f = y.get_num() / y.get_den();
  if (f * y.get_den() < y.get_num()) f += 1;
  return Rational(f) * pow2(-bits);
}

// e^x ∈ [P_M(x), P_M(x) + 4 x^{M+1}/(M+1)!] for 0 ≤ x ≤ ln 4.
RationalInterval exp_enclosure(const Rational& x, const Rational& tol) {
  if (x < 0 || x > Rational(69, 50)) throw Error(ErrorCode::InvalidArgument, "exp enclosure argument out of range");
  Rational sum = 0, term = 1;
  for (unsigned i = 0;; ++i) {
    sum += term;
    term = term * x / Rational(i + 1);
    if (4 * term <= tol) return {sum, sum + 4 * term};
  }
}

}  // namespace

RationalInterval fractal_white_limit(const Rational& tol) {
  if (tol <= 0) throw Error(ErrorCode::InvalidArgument, "enclosure width must be positive");
  const long bits = ceil_log2(1 / tol) + 8;
  for (long extra = 0;; extra += 8) {
    const long k_max = std::max(4L, bits + extra);
    // −ln α = Σ_k (1/k)/(2^k − 1) ∈ [S_K, S_K + 2^-K / K].
    Rational s = 0;
    for (long k = 1; k <= k_max; ++k) s += Rational(1, k) / (pow2(k) - 1);
    const Rational tail = pow2(-k_max) / Rational(k_max);
    const long grid = bits + extra + 4;
    const Rational x_lo = floor_to_grid(s, grid);
    const Rational x_hi = ceil_to_grid(s + tail, grid);
    const Rational inner_tol = tol * pow2(-6);
    const RationalInterval e_lo = exp_enclosure(x_lo, inner_tol);
    const RationalInterval e_hi = exp_enclosure(x_hi, inner_tol);
    RationalInterval alpha{floor_to_grid(1 / e_hi.hi, grid), ceil_to_grid(1 / e_lo.lo, grid)};
    if (alpha.width() <= tol) return alpha;
  }
}

MatchingReport verify_diagonal_matching(const FractalStage& stage) {
  if (stage.depth() > 5) throw Error(ErrorCode::InvalidArgument, "matching walk limited to depth 5");
  MatchingReport report;
  std::function<bool(unsigned, std::uint64_t, std::uint64_t)> walk = [&](unsigned q, std::uint64_t rp,
                                                                          std::uint64_t cp) {
    const std::uint64_t side = std::uint64_t{1} << q;
    const auto cells = stage.black_cells(q, rp, cp);
    std::vector<int> row_hits(side, 0), col_hits(side, 0);
    for (auto [i, j] : cells) {
      if (i >= side || j >= side) {
        report = {false, q, rp, cp, "black cell outside the square"};
        return false;
      }
      ++row_hits[i];
      ++col_hits[j];
    }
    for (std::uint64_t i = 0; i < side; ++i) {
      if (row_hits[i] != 1 || col_hits[i] != 1) {
        report = {false, q, rp, cp,
                  row_hits[i] != 1 ? "row sub-interval " + std::to_string(i) + " matched " + std::to_string(row_hits[i]) + " times"
                                   : "column sub-interval " + std::to_string(i) + " matched " + std::to_string(col_hits[i]) + " times"};
        return false;
      }
    }
    if (q == stage.depth()) return true;
    std::set<FractalStage::Cell> black(cells.begin(), cells.end());
    for (std::uint64_t i = 0; i < side; ++i) {
      for (std::uint64_t j = 0; j < side; ++j) {
        if (black.count({i, j})) continue;
        if (!walk(q + 1, (rp << q) | i, (cp << q) | j)) return false;
      }
    }
    return true;
  };
  if (walk(1, 0, 0)) report.detail = "every white square carries a perfect matching";
  return report;
}

namespace {

using Bits = std::vector<std::uint64_t>;

bool disjoint(const Bits& a, const Bits& b) {
  for (std::size_t q = 0; q < a.size(); ++q) {
    if (a[q] & b[q]) return false;
  }
  return true;
}

std::uint64_t count(const Bits& a) {
  std::uint64_t c = 0;
  for (auto w : a) c += static_cast<std::uint64_t>(std::popcount(w));
  return c;
}

std::vector<Bits> black_rows(const FractalStage& stage) {
  const std::size_t n = stage.render_parts(), words = (n + 63) / 64;
  std::vector<Bits> rows(n, Bits(words, 0));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (stage.is_black(x, y)) rows[x][y / 64] |= std::uint64_t{1} << (y % 64);
    }
  }
  return rows;
}

// Largest set of columns whose cells against every row of X are white.
Bits white_partners(const std::vector<Bits>& rows, const Bits& x) {
  const std::size_t n = rows.size();
  Bits y(x.size(), 0);
  for (std::size_t c = 0; c < n; ++c) {
    if (disjoint(rows[c], x)) y[c / 64] |= std::uint64_t{1} << (c % 64);
  }
  return y;
}

}  // namespace

ProbeResult rectangle_bound_probe(unsigned depth, std::uint64_t trials, RandomSource& rs) {
  if (depth == 0 || depth > 4) throw Error(ErrorCode::InvalidArgument, "rectangle probe limited to depth 1..4");
  const FractalStage stage(depth);
  const auto rows = black_rows(stage);  // symmetric, so rows double as columns
  const std::size_t n = rows.size(), words = (n + 63) / 64;
  std::vector<std::uint64_t> best(trials, 0);
  const RandomSource base = rs;
  parallel_for(trials, [&](std::size_t t) {
    RandomSource local = base.derive(t);
    // Even trials start from one row, odd ones from a sparse random row set
    // (density 2^-1 .. 2^-8); dense starts almost never have white partners.
    Bits x(words, 0);
    if (t % 2 == 0) {
      const std::size_t r = part_of_word(n, local.next_u64());
      x[r / 64] |= std::uint64_t{1} << (r % 64);
    } else {
      const unsigned sparsity = 1 + static_cast<unsigned>((t / 2) % 8);
      for (std::size_t q = 0; q < words; ++q) {
        std::uint64_t w = ~std::uint64_t{0};
        for (unsigned s = 0; s < sparsity; ++s) w &= local.next_u64();
        x[q] = w;
      }
      if (n % 64) x.back() &= (std::uint64_t{1} << (n % 64)) - 1;
    }
    std::uint64_t value = 0;
    for (int iter = 0; iter < 32; ++iter) {
      const Bits y = white_partners(rows, x);
      value = std::max(value, count(x) * count(y));
      Bits next = white_partners(rows, y);
      if (next == x) break;
      x = std::move(next);
    }
    best[t] = value;
  });
  rs.next_u64();
  ProbeResult out;
  const std::uint64_t top = best.empty() ? 0 : *std::max_element(best.begin(), best.end());
  const Integer cells = Integer(static_cast<unsigned long>(n)) * Integer(static_cast<unsigned long>(n));
  out.max_measure = make_rational(Integer(static_cast<unsigned long>(top)), cells);
  out.bound = pow2(-2 * static_cast<long>(depth));
  out.passed = out.max_measure <= out.bound;
  return out;
}

Rational rectangle_bound_exhaustive(unsigned depth) {
  if (depth == 0 || depth > 2) throw Error(ErrorCode::InvalidArgument, "exhaustive rectangle search limited to depth 1..2");
  const FractalStage stage(depth);
  const auto rows = black_rows(stage);
  const std::size_t n = rows.size();
  std::uint64_t top = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const Bits x{mask};
    top = std::max(top, count(x) * count(white_partners(rows, x)));
  }
  return make_rational(Integer(static_cast<unsigned long>(top)), Integer(static_cast<unsigned long>(n * n)));
}

}  // namespace graphonlab
