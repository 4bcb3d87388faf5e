#pragma once

#include <cstddef>
#include <cstdint>

#include "graphonlab/rational.hpp"
#include "graphonlab/step_graphon.hpp"

namespace graphonlab {

/// F_i: graphs ordered by vertex count (starting at one vertex), then by the
/// integer whose bit b is the b-th pair of the row-major upper triangle
/// ((0,1) is bit 0, then (0,2), ..., (1,2), ...).
FiniteGraph enumerate_graph(std::uint64_t index);
std::uint64_t graph_index(const FiniteGraph& graph);
/// Index of the first enumerated graph on n vertices (n ≥ 1, n ≤ 11).
std::uint64_t first_index_with_vertices(std::size_t n);

inline constexpr std::uint64_t kDefaultTindCostLimit = 10'000'000;

/// Work units the exact computation would need: (distinct rows)^n in general,
/// k^{n-1}·⌈k/64⌉ for 0/1-valued graphons. Saturates at UINT64_MAX.
std::uint64_t t_ind_cost(const FiniteGraph& f, const StepGraphon& w);

/// Probability that the W-random graph on [n] equals F as a labeled graph.
Rational t_ind_exact(const FiniteGraph& f, const StepGraphon& w,
                     std::uint64_t cost_limit = kDefaultTindCostLimit);

struct MonteCarloEstimate {
  Rational estimate;
  /// √(p̂(1−p̂)/trials), rounded up to a multiple of 2^-40.
  Rational stderr_bound;
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
};

MonteCarloEstimate t_ind_mc(const FiniteGraph& f, const StepGraphon& w, std::uint64_t trials, std::uint64_t seed);

/// 4·C(k,2)·eps for F on k vertices.
Rational counting_bound(const FiniteGraph& f, const Rational& eps);

}  // namespace graphonlab
