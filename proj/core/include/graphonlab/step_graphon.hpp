#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "graphonlab/rational.hpp"

namespace graphonlab {

/// An exact rational in [0,1].
class UnitRational {
 public:
  UnitRational() = default;
  explicit UnitRational(Rational value);

  const Rational& value() const noexcept { return value_; }

  friend bool operator==(const UnitRational& a, const UnitRational& b) { return a.value_ == b.value_; }
  friend bool operator<(const UnitRational& a, const UnitRational& b) { return a.value_ < b.value_; }

 private:
  Rational value_{0};
};

/// A bijection on {0, ..., k-1}.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> images);

  static Permutation identity(std::size_t k);

  std::size_t size() const noexcept { return images_.size(); }
  std::size_t operator()(std::size_t i) const { return images_[i]; }
  const std::vector<std::size_t>& images() const noexcept { return images_; }

  /// (this ∘ inner)(i) = this(inner(i)).
  Permutation compose(const Permutation& inner) const;
  Permutation inverse() const;
  bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> images_;
};

/// The equipartition P_n of [0,1] into 2^n intervals.
struct DyadicLevel {
  unsigned n = 0;

  std::uint64_t parts() const { return std::uint64_t{1} << n; }
};

/// Symmetric step function on the equipartition of [0,1] into k intervals.
///
/// Cell values are stored as indices into a sorted palette of the distinct
/// values that occur, so graphons with many parts but few distinct values
/// (renders, blow-ups, graph graphons) stay compact and metric code can work
/// per palette entry instead of per cell.
class StepGraphon {
 public:
  /// The all-zero graphon on one part.
  StepGraphon();

  /// Validating constructor from a row-major k*k matrix.
  StepGraphon(std::size_t k, const std::vector<Rational>& row_major);

  /// Evaluates `f` on the upper triangle (i <= j) and mirrors it.
  static StepGraphon from_function(std::size_t k,
                                   const std::function<Rational(std::size_t, std::size_t)>& f);

  /// Trusted construction from palette indices; the palette must be sorted,
  /// distinct, and within [0,1]. Symmetry is still checked.
  static StepGraphon from_levels(std::size_t k, std::vector<Rational> palette,
                                 std::vector<std::uint32_t> levels);

  std::size_t parts() const noexcept { return k_; }
  const Rational& value(std::size_t i, std::size_t j) const { return palette_[cells_[i * k_ + j]]; }
  std::uint32_t level(std::size_t i, std::size_t j) const { return cells_[i * k_ + j]; }

  const std::vector<Rational>& palette() const noexcept { return palette_; }
  std::span<const std::uint32_t> levels() const noexcept { return cells_; }
  std::span<const std::uint32_t> row_levels(std::size_t i) const {
    return std::span<const std::uint32_t>(cells_).subspan(i * k_, k_);
  }

  std::vector<std::vector<Rational>> to_matrix() const;

  /// True when every value is 0 or 1.
  bool is_zero_one() const;

  friend bool operator==(const StepGraphon& a, const StepGraphon& b) {
    return a.k_ == b.k_ && a.palette_ == b.palette_ && a.cells_ == b.cells_;
  }

 private:
  StepGraphon(std::size_t k, std::vector<Rational> palette, std::vector<std::uint32_t> cells);
  void canonicalize();

  std::size_t k_;
  std::vector<Rational> palette_;
  std::vector<std::uint32_t> cells_;
};

/// Irreflexive symmetric graph on {0, ..., n-1}.
class FiniteGraph {
 public:
  FiniteGraph() = default;
  FiniteGraph(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges);
  FiniteGraph(std::size_t n, std::initializer_list<std::pair<std::size_t, std::size_t>> edges);

  /// Row-major n*n 0/1 matrix; must be symmetric with zero diagonal.
  static FiniteGraph from_adjacency(std::size_t n, std::vector<std::uint8_t> adjacency);

  static FiniteGraph complete(std::size_t n);
  static FiniteGraph empty(std::size_t n);

  std::size_t vertices() const noexcept { return n_; }
  bool adjacent(std::size_t i, std::size_t j) const { return adj_[i * n_ + j] != 0; }
  std::size_t edge_count() const;
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  std::size_t degree(std::size_t i) const;

  /// new(i,j) = old(σ(i), σ(j)).
  FiniteGraph permuted(const Permutation& sigma) const;
  /// Replaces every vertex by m independent copies (no edges among copies).
  FiniteGraph blown_up(std::size_t m) const;

  friend bool operator==(const FiniteGraph&, const FiniteGraph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> adj_;
};

StepGraphon make_step_graphon(std::size_t k, const std::vector<std::vector<Rational>>& values);

/// W_G: value 1 on part cell (i,j) iff {i,j} is an edge.
StepGraphon graphon_of_graph(const FiniteGraph& graph);

/// The graph G with W_G = W, when W is 0/1 valued with a zero diagonal.
std::optional<FiniteGraph> graph_of_graphon(const StepGraphon& graphon);

StepGraphon blow_up(const StepGraphon& graphon, std::size_t m);

/// Both inputs re-expressed on lcm(k_U, k_V) parts.
std::pair<StepGraphon, StepGraphon> common_refinement(const StepGraphon& u, const StepGraphon& v);

/// Conditional expectation onto the equipartition into m intervals, by exact
/// interval-overlap integration.
StepGraphon average_onto(const StepGraphon& graphon, std::size_t m);

/// U_{P_n}: averages over the 2^n x 2^n dyadic grid.
StepGraphon stepping(const StepGraphon& graphon, DyadicLevel level);

/// values'(i,j) = values(σ(i), σ(j)).
StepGraphon permute_parts(const StepGraphon& graphon, const Permutation& sigma);

/// Edge density (1/k^2) Σ values.
Rational average(const StepGraphon& graphon);

/// Cells are [i/k,(i+1)/k) with the last one closed at 1.
UnitRational evaluate(const StepGraphon& graphon, const Rational& x, const Rational& y);

/// Index of the part containing x under the same convention.
std::size_t part_of(std::size_t parts, const Rational& x);

}  // namespace graphonlab
