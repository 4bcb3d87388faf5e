#include "graphonlab/step_graphon.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "graphonlab/error.hpp"
#include "scaled_palette.hpp"

namespace graphonlab {

namespace {

void check_unit(const Rational& v) {
  if (v < 0 || v > 1) throw Error(ErrorCode::OutOfRange, "graphon value " + to_string(v) + " outside [0,1]");
}

class Interner {
 public:
  std::uint32_t operator()(const Rational& v) {
    auto [it, inserted] = index_.try_emplace(v, static_cast<std::uint32_t>(values_.size()));
    if (inserted) values_.push_back(v);
    return it->second;
  }
  std::vector<Rational> take() { return std::move(values_); }

 private:
  std::map<Rational, std::uint32_t> index_;
  std::vector<Rational> values_;
};

}  // namespace

UnitRational::UnitRational(Rational value) : value_(std::move(value)) {
  value_.canonicalize();
  check_unit(value_);
}

Permutation::Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t v : images_) {
    if (v >= images_.size() || seen[v]) throw Error(ErrorCode::NotAPermutation, "images do not form a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t k) {
  std::vector<std::size_t> images(k);
  std::iota(images.begin(), images.end(), std::size_t{0});
  return Permutation(std::move(images));
}

Permutation Permutation::compose(const Permutation& inner) const {
  if (inner.size() != size()) throw Error(ErrorCode::SizeMismatch, "composing permutations of different sizes");
  std::vector<std::size_t> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = images_[inner.images_[i]];
  return Permutation(std::move(out));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[images_[i]] = i;
  return Permutation(std::move(out));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

StepGraphon::StepGraphon() : k_(1), palette_{Rational(0)}, cells_{0} {}

StepGraphon::StepGraphon(std::size_t k, std::vector<Rational> palette, std::vector<std::uint32_t> cells)
    : k_(k), palette_(std::move(palette)), cells_(std::move(cells)) {
  canonicalize();
}

StepGraphon::StepGraphon(std::size_t k, const std::vector<Rational>& row_major) : k_(k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "step graphon needs at least one part");
  if (row_major.size() != k * k) throw Error(ErrorCode::InvalidArgument, "matrix is not k x k");
  Interner intern;
  cells_.resize(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      Rational v = row_major[i * k + j];
      v.canonicalize();
      check_unit(v);
      Rational mirror = row_major[j * k + i];
      mirror.canonicalize();
      if (v != mirror) {
        throw Error(ErrorCode::AsymmetricMatrix,
                    "values[" + std::to_string(i) + "][" + std::to_string(j) + "] != values[" +
                        std::to_string(j) + "][" + std::to_string(i) + "]");
      }
      cells_[i * k + j] = intern(v);
    }
  }
  palette_ = intern.take();
  canonicalize();
}

StepGraphon StepGraphon::from_function(std::size_t k,
                                       const std::function<Rational(std::size_t, std::size_t)>& f) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "step graphon needs at least one part");
  Interner intern;
  std::vector<std::uint32_t> cells(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      Rational v = f(i, j);
      v.canonicalize();
      check_unit(v);
      cells[i * k + j] = cells[j * k + i] = intern(v);
    }
  }
  return StepGraphon(k, intern.take(), std::move(cells));
}

StepGraphon StepGraphon::from_levels(std::size_t k, std::vector<Rational> palette,
                                     std::vector<std::uint32_t> levels) {
  if (k == 0 || levels.size() != k * k) throw Error(ErrorCode::InvalidArgument, "level matrix is not k x k");
  for (auto& v : palette) {
    v.canonicalize();
    check_unit(v);
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (levels[i * k + j] != levels[j * k + i]) {
        throw Error(ErrorCode::AsymmetricMatrix, "level matrix is not symmetric");
      }
    }
  }
  for (auto l : levels) {
    if (l >= palette.size()) throw Error(ErrorCode::InvalidArgument, "level index outside palette");
  }
  return StepGraphon(k, std::move(palette), std::move(levels));
}

void StepGraphon::canonicalize() {
  // Drop unused palette entries and sort the rest ascending.
  std::vector<bool> used(palette_.size(), false);
  for (auto c : cells_) used[c] = true;
  std::vector<std::uint32_t> order;
  for (std::uint32_t i = 0; i < palette_.size(); ++i) {
    if (used[i]) order.push_back(i);
  }
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) { return palette_[a] < palette_[b]; });
  std::vector<std::uint32_t> remap(palette_.size(), 0);
  std::vector<Rational> sorted;
  sorted.reserve(order.size());
  for (std::uint32_t idx : order) {
    if (!sorted.empty() && sorted.back() == palette_[idx]) {
      remap[idx] = static_cast<std::uint32_t>(sorted.size() - 1);
      continue;
    }
    remap[idx] = static_cast<std::uint32_t>(sorted.size());
    sorted.push_back(palette_[idx]);
  }
  for (auto& c : cells_) c = remap[c];
  palette_ = std::move(sorted);
}

std::vector<std::vector<Rational>> StepGraphon::to_matrix() const {
  std::vector<std::vector<Rational>> m(k_, std::vector<Rational>(k_));
  for (std::size_t i = 0; i < k_; ++i) {
    for (std::size_t j = 0; j < k_; ++j) m[i][j] = value(i, j);
  }
  return m;
}

bool StepGraphon::is_zero_one() const {
  return std::all_of(palette_.begin(), palette_.end(), [](const Rational& v) { return v == 0 || v == 1; });
}

FiniteGraph::FiniteGraph(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges)
    : n_(n), adj_(n * n, 0) {
  for (auto [i, j] : edges) {
    if (i >= n || j >= n) throw Error(ErrorCode::OutOfRange, "edge endpoint outside vertex set");
    if (i == j) throw Error(ErrorCode::InvalidArgument, "self-loop at vertex " + std::to_string(i));
    adj_[i * n + j] = adj_[j * n + i] = 1;
  }
}

FiniteGraph::FiniteGraph(std::size_t n, std::initializer_list<std::pair<std::size_t, std::size_t>> edges)
    : FiniteGraph(n, std::span<const std::pair<std::size_t, std::size_t>>(edges.begin(), edges.size())) {}

FiniteGraph FiniteGraph::from_adjacency(std::size_t n, std::vector<std::uint8_t> adjacency) {
  if (adjacency.size() != n * n) throw Error(ErrorCode::InvalidArgument, "adjacency is not n x n");
  for (std::size_t i = 0; i < n; ++i) {
    if (adjacency[i * n + i] != 0) throw Error(ErrorCode::InvalidArgument, "self-loop in adjacency");
    for (std::size_t j = i + 1; j < n; ++j) {
      if ((adjacency[i * n + j] != 0) != (adjacency[j * n + i] != 0)) {
        throw Error(ErrorCode::AsymmetricMatrix, "adjacency is not symmetric");
      }
    }
  }
  FiniteGraph g;
  g.n_ = n;
  g.adj_ = std::move(adjacency);
  for (auto& a : g.adj_) a = a != 0 ? 1 : 0;
  return g;
}

FiniteGraph FiniteGraph::complete(std::size_t n) {
  std::vector<std::uint8_t> adj(n * n, 1);
  for (std::size_t i = 0; i < n; ++i) adj[i * n + i] = 0;
  return from_adjacency(n, std::move(adj));
}

FiniteGraph FiniteGraph::empty(std::size_t n) { return from_adjacency(n, std::vector<std::uint8_t>(n * n, 0)); }

std::size_t FiniteGraph::edge_count() const {
  return static_cast<std::size_t>(std::count(adj_.begin(), adj_.end(), std::uint8_t{1})) / 2;
}

std::vector<std::pair<std::size_t, std::size_t>> FiniteGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (adjacent(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

std::size_t FiniteGraph::degree(std::size_t i) const {
  return static_cast<std::size_t>(std::count(adj_.begin() + static_cast<std::ptrdiff_t>(i * n_),
                                             adj_.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_),
                                             std::uint8_t{1}));
}

FiniteGraph FiniteGraph::permuted(const Permutation& sigma) const {
  if (sigma.size() != n_) throw Error(ErrorCode::SizeMismatch, "permutation size differs from vertex count");
  std::vector<std::uint8_t> adj(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) adj[i * n_ + j] = adj_[sigma(i) * n_ + sigma(j)];
  }
  return from_adjacency(n_, std::move(adj));
}

FiniteGraph FiniteGraph::blown_up(std::size_t m) const {
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "blow-up factor must be positive");
  const std::size_t n = n_ * m;
  std::vector<std::uint8_t> adj(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) adj[a * n + b] = adj_[(a / m) * n_ + b / m];
  }
  return from_adjacency(n, std::move(adj));
}

StepGraphon make_step_graphon(std::size_t k, const std::vector<std::vector<Rational>>& values) {
  if (values.size() != k) throw Error(ErrorCode::InvalidArgument, "matrix does not have k rows");
  std::vector<Rational> flat;
  flat.reserve(k * k);
  for (const auto& row : values) {
    if (row.size() != k) throw Error(ErrorCode::InvalidArgument, "matrix row does not have k entries");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return StepGraphon(k, flat);
}

StepGraphon graphon_of_graph(const FiniteGraph& graph) {
  const std::size_t n = graph.vertices();
  if (n == 0) throw Error(ErrorCode::EmptyGraph, "graph has no vertices");
  std::vector<std::uint32_t> levels(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) levels[i * n + j] = graph.adjacent(i, j) ? 1 : 0;
  }
  return StepGraphon::from_levels(n, {Rational(0), Rational(1)}, std::move(levels));
}

std::optional<FiniteGraph> graph_of_graphon(const StepGraphon& graphon) {
  if (!graphon.is_zero_one()) return std::nullopt;
  const std::size_t k = graphon.parts();
  std::vector<std::uint8_t> adj(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    if (graphon.value(i, i) != 0) return std::nullopt;
    for (std::size_t j = 0; j < k; ++j) adj[i * k + j] = graphon.value(i, j) == 1 ? 1 : 0;
  }
  return FiniteGraph::from_adjacency(k, std::move(adj));
}

StepGraphon blow_up(const StepGraphon& graphon, std::size_t m) {
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "blow-up factor must be positive");
  if (m == 1) return graphon;
  const std::size_t k = graphon.parts();
  const std::size_t n = k * m;
  std::vector<std::uint32_t> levels(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) levels[a * n + b] = graphon.level(a / m, b / m);
  }
  return StepGraphon::from_levels(n, graphon.palette(), std::move(levels));
}

std::pair<StepGraphon, StepGraphon> common_refinement(const StepGraphon& u, const StepGraphon& v) {
  const std::size_t l = lcm_u64(u.parts(), v.parts());
  return {blow_up(u, l / u.parts()), blow_up(v, l / v.parts())};
}

StepGraphon average_onto(const StepGraphon& graphon, std::size_t m) {
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "target partition needs at least one part");
  const std::size_t k = graphon.parts();
  if (m == k) return graphon;
  if (m % k == 0) return blow_up(graphon, m / k);

  // Work in units of 1/(k m): part i is [i m, (i+1) m), target cell a is [a k, (a+1) k).
  struct Overlap {
    std::size_t part;
    std::uint64_t length;
  };
  std::vector<std::vector<Overlap>> overlaps(m);
  for (std::size_t a = 0; a < m; ++a) {
    const std::uint64_t lo = a * k, hi = (a + 1) * k;
    for (std::size_t i = lo / m; i < k && i * m < hi; ++i) {
      const std::uint64_t plo = i * m, phi = (i + 1) * m;
      const std::uint64_t len = std::min(hi, phi) - std::max(lo, plo);
      if (len > 0) overlaps[a].push_back({i, len});
    }
  }
  const detail::ScaledPalette scaled(graphon.palette());
  const Integer total_den = scaled.denominator * Integer(static_cast<unsigned long>(k)) *
                            Integer(static_cast<unsigned long>(k));
  // Overlap lengths in a row sum to k, so the int128 sum is bounded by k^2 2^62.
  const bool fast = scaled.fits_i64 && k < (std::size_t{1} << 30);
  return StepGraphon::from_function(m, [&](std::size_t a, std::size_t b) {
    if (fast) {
      __int128 sum = 0;
      for (const auto& oa : overlaps[a]) {
        for (const auto& ob : overlaps[b]) {
          sum += static_cast<__int128>(oa.length * ob.length) * scaled.small[graphon.level(oa.part, ob.part)];
        }
      }
      return make_rational(detail::to_integer(sum), total_den);
    }
    Integer sum = 0;
    for (const auto& oa : overlaps[a]) {
      for (const auto& ob : overlaps[b]) {
        sum += Integer(static_cast<unsigned long>(oa.length * ob.length)) *
               scaled.numerators[graphon.level(oa.part, ob.part)];
      }
    }
    return make_rational(sum, total_den);
  });
}

StepGraphon stepping(const StepGraphon& graphon, DyadicLevel level) {
  if (level.n > 30) throw Error(ErrorCode::InvalidArgument, "dyadic level too deep for a dense grid");
  return average_onto(graphon, static_cast<std::size_t>(level.parts()));
}

StepGraphon permute_parts(const StepGraphon& graphon, const Permutation& sigma) {
  const std::size_t k = graphon.parts();
  if (sigma.size() != k) throw Error(ErrorCode::NotAPermutation, "permutation size differs from part count");
  std::vector<std::uint32_t> levels(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) levels[i * k + j] = graphon.level(sigma(i), sigma(j));
  }
  return StepGraphon::from_levels(k, graphon.palette(), std::move(levels));
}

Rational average(const StepGraphon& graphon) {
  std::vector<std::uint64_t> counts(graphon.palette().size(), 0);
  for (auto l : graphon.levels()) ++counts[l];
  Rational sum = 0;
  for (std::size_t p = 0; p < counts.size(); ++p) {
    sum += graphon.palette()[p] * Rational(Integer(static_cast<unsigned long>(counts[p])));
  }
  const auto k = static_cast<unsigned long>(graphon.parts());
  return sum / Rational(Integer(k) * Integer(k));
}

std::size_t part_of(std::size_t parts, const Rational& x) {
  if (x < 0 || x > 1) throw Error(ErrorCode::OutOfDomain, "coordinate " + to_string(x) + " outside [0,1]");
  Rational scaled = x * Rational(Integer(static_cast<unsigned long>(parts)));
  Integer f = scaled.get_num() / scaled.get_den();
  std::size_t idx = f.get_ui();
  return std::min(idx, parts - 1);
}

UnitRational evaluate(const StepGraphon& graphon, const Rational& x, const Rational& y) {
  return UnitRational(graphon.value(part_of(graphon.parts(), x), part_of(graphon.parts(), y)));
}

}  // namespace graphonlab
