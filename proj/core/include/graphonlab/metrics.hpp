#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "graphonlab/rational.hpp"
#include "graphonlab/step_graphon.hpp"

namespace graphonlab {

/// Symmetric step function with values in [-1,1] on a partition of [0,1] into
/// parts of width weight_i / Σ weights. Equal weights give the usual k-part
/// equipartition; unequal weights arise from overlaying two equipartitions.
class SignedStepFunction {
 public:
  /// Equipartition, row-major values.
  SignedStepFunction(std::size_t k, const std::vector<Rational>& row_major);
  SignedStepFunction(std::vector<std::uint64_t> weights, const std::vector<Rational>& row_major);
  /// Trusted construction from a palette (any order) and level indices.
  SignedStepFunction(std::vector<std::uint64_t> weights, std::vector<Rational> palette,
                     std::vector<std::uint32_t> levels);

  std::size_t parts() const noexcept { return weights_.size(); }
  const std::vector<std::uint64_t>& weights() const noexcept { return weights_; }
  std::uint64_t total_weight() const noexcept { return total_; }
  const std::vector<Rational>& palette() const noexcept { return palette_; }
  std::uint32_t level(std::size_t i, std::size_t j) const { return cells_[i * parts() + j]; }
  const Rational& value(std::size_t i, std::size_t j) const { return palette_[level(i, j)]; }
  /// Palette index of the value 0, if 0 occurs.
  std::optional<std::uint32_t> zero_level() const;

 private:
  void validate();

  std::vector<std::uint64_t> weights_;
  std::uint64_t total_ = 0;
  std::vector<Rational> palette_;
  std::vector<std::uint32_t> cells_;
};

/// U − V on the merged breakpoints of the two equipartitions (at most
/// k_U + k_V − 1 parts).
SignedStepFunction difference(const StepGraphon& u, const StepGraphon& v);

/// U − V cell by cell; both must have the same part count.
SignedStepFunction aligned_difference(const StepGraphon& u, const StepGraphon& v);

struct CutNormOptions {
  /// Largest part count, after splitting into components and merging twin
  /// parts, for which the exact search runs.
  std::size_t exact_limit = 20;
  /// Beyond the limit, return a local-search lower bound instead of throwing.
  bool heuristic = false;
  /// Skip component splitting and twin merging (plain row-subset search).
  bool compress = true;
  std::uint64_t seed = 0;
  unsigned restarts = 16;
};

struct CutNormResult {
  Rational value;
  /// False when `value` is only an achieved (hence lower) bound.
  bool exact = true;
};

struct CutNormBounds {
  Rational lower;
  Rational upper;
  bool exact() const { return lower == upper; }
};

/// max over unions of parts S, T of |∫_{S×T} F|. Throws TooManyParts when the
/// exact search is too large and heuristic mode is off.
CutNormResult cut_norm(const SignedStepFunction& f, const CutNormOptions& options = {});

/// Exact value when feasible; otherwise a local-search lower bound and the
/// best certified upper bound (L¹, spectral trace bound, diagonal splitting).
CutNormBounds cut_norm_bounds(const SignedStepFunction& f, const CutNormOptions& options = {});

/// ∫|F|.
Rational l1_norm(const SignedStepFunction& f);

Rational d1(const StepGraphon& u, const StepGraphon& v);
/// Squared L² distance.
Rational d2(const StepGraphon& u, const StepGraphon& v);
Rational d_square(const StepGraphon& u, const StepGraphon& v, const CutNormOptions& options = {});
CutNormBounds d_square_bounds(const StepGraphon& u, const StepGraphon& v, const CutNormOptions& options = {});

struct AlignmentWitness {
  /// Both sides are taken on lcm(k_U, k_V) * blowup parts.
  std::size_t blowup = 1;
  /// Applied to the refined second argument with permute_parts.
  Permutation permutation;
};

enum class UpperKind {
  /// `upper` is the exact cut distance of the witnessed alignment.
  Exact,
  /// The cut norm of the witnessed alignment was too large to compute; `upper`
  /// is a certified bound on it.
  Certified,
};

struct DeltaBound {
  Rational lower{0};
  Rational upper{1};
  std::optional<AlignmentWitness> witness;
  UpperKind upper_kind = UpperKind::Exact;
};

enum class AlignMode { Exact, Heuristic };

struct AlignOptions {
  AlignMode mode = AlignMode::Exact;
  std::uint64_t budget = 2000;
  unsigned restarts = 16;
  std::uint64_t seed = 0;
};

/// min over relabelings σ of H of d□(W_G, W_{H^σ}). Exact mode needs |V| ≤ 8.
DeltaBound hat_delta(const FiniteGraph& g, const FiniteGraph& h, const AlignOptions& options = {});

struct DeltaBoundOptions {
  std::size_t blowup_limit = 2;
  std::uint64_t budget = 2000;
  unsigned restarts = 16;
  std::uint64_t seed = 0;
  /// Lower bound uses enumerated graphs with at most this many vertices.
  std::size_t max_test_vertices = 4;
  /// Per-graph cost cap for the density computations behind the lower bound.
  std::uint64_t tind_cost_limit = 10'000'000;
  CutNormOptions cut{};
};

DeltaBound delta_bound(const StepGraphon& u, const StepGraphon& v, const DeltaBoundOptions& options = {});

struct TruncatedDistance {
  Rational value;
  Rational tail;
};

/// Σ_{i<N} 2^{-i} |t_ind(F_i,U) − t_ind(F_i,V)| with tail bound 2^{-(N-1)}.
TruncatedDistance d_w_truncated(const StepGraphon& u, const StepGraphon& v, std::size_t n_terms);

}  // namespace graphonlab
