#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graphonlab/metrics.hpp"
#include "graphonlab/rational.hpp"
#include "graphonlab/step_graphon.hpp"

namespace graphonlab {

enum class MetricTag { D1, DSquare, DeltaSquare, DW };

/// "D1", "DSQUARE", "DELTASQUARE", "DW".
const char* to_string(MetricTag tag);
MetricTag parse_metric_tag(std::string_view text);

enum class TailPolicy {
  /// Reading past a finite prefix throws NamePrefixExhausted.
  None,
  /// A finite prefix is continued by its last element.
  RepeatLast,
};

/// Metric-tagged lazy sequence j ↦ s_j meant to satisfy dist(s_j, s_l) ≤ 2^-j
/// for j < l. Elements are computed on first access and memoized; copies
/// share the memo. DW elements are stored as the graphons W_G of their graphs.
class GraphonName {
 public:
  using Generator = std::function<StepGraphon(std::size_t)>;
  using Tolerance = std::function<Rational(std::size_t)>;

  GraphonName(MetricTag tag, Generator generator);

  static GraphonName from_elements(MetricTag tag, std::vector<StepGraphon> elements,
                                   TailPolicy tail = TailPolicy::None);
  static GraphonName constant(MetricTag tag, StepGraphon element);

  MetricTag tag() const noexcept { return tag_; }
  /// Number of stored elements for names built from a finite prefix.
  std::optional<std::size_t> length() const;
  TailPolicy tail() const;

  StepGraphon element(std::size_t j) const;
  StepGraphon operator[](std::size_t j) const { return element(j); }
  std::size_t materialized() const;

  /// Same elements (shared memo) under another tag.
  GraphonName retagged(MetricTag tag) const;

  /// Claimed, not certified, per-element distance to the limit.
  GraphonName with_claimed_tolerance(Tolerance tolerance) const;
  std::optional<Rational> claimed_tolerance(std::size_t j) const;

 private:
  struct State;
  GraphonName(MetricTag tag, std::shared_ptr<State> state, Tolerance tolerance);

  MetricTag tag_;
  std::shared_ptr<State> state_;
  Tolerance tolerance_;
};

enum class ValidationStatus { Ok, Violation, Inconclusive };
const char* to_string(ValidationStatus status);

struct ValidationReport {
  ValidationStatus status = ValidationStatus::Ok;
  /// First offending (Violation) or unresolved (Inconclusive) pair.
  std::size_t j = 0;
  std::size_t l = 0;
  /// Distance, or the bound that decided the pair.
  Rational evidence;
  std::string detail;
  std::size_t pairs_checked = 0;
};

struct ValidationOptions {
  std::size_t dw_terms = 20;
  CutNormOptions cut{};
  DeltaBoundOptions delta{};
};

/// Checks dist(s_j, s_l) ≤ 2^-j for all j < l < m with the tagged metric.
ValidationReport validate_name_prefix(const GraphonName& name, std::size_t m, const ValidationOptions& options = {});

/// Only D1 → DSQUARE and DSQUARE → DELTASQUARE are declared.
GraphonName weaken_name(const GraphonName& name, MetricTag from, MetricTag to);

/// Certified upper bound on Σ_i 2^-i · 4·C(|F_i|,2) over the enumeration.
Rational thinning_constant_bound();
/// ⌈log2⌉ of the bound above.
std::size_t thinning_offset();
/// Input index read for output element j.
std::size_t thinning_schedule(std::size_t j);

GraphonName name_delta_to_dw(const GraphonName& name);

struct DwToDeltaOptions {
  std::size_t base_vertices = 16;
  /// Source element read for output j is j + source_offset.
  std::size_t source_offset = 16;
};

/// k(j) = base · 4^j.
std::size_t dw_to_delta_vertices(std::size_t j, const DwToDeltaOptions& options = {});
/// 44 / √(ln k), rounded up to a multiple of 2^-32.
Rational sampling_tolerance(std::size_t k);

/// Probabilistic: element j is the graphon of a k(j)-vertex sample from a
/// deep element, with per-element random streams derived from `seed`.
GraphonName name_dw_to_delta(const GraphonName& name, std::uint64_t seed, const DwToDeltaOptions& options = {});

struct SectionOptions {
  AlignOptions align{};
  /// Blow-up factor used to round non-0/1 elements to graphs.
  std::size_t rounding_factor = 4;
};

/// Random-free stand-in for a step graphon: each part becomes `factor`
/// vertices and a cell of value p gets round(p·factor) of each vertex's
/// `factor` possible partners in that cell.
FiniteGraph round_to_graph(const StepGraphon& w, std::size_t factor);

class SectionChain {
 public:
  explicit SectionChain(GraphonName input, SectionOptions options = {});

  /// Input index feeding G_n.
  static std::size_t source_index(std::size_t n);
  /// 45 · 2^-n.
  static Rational step_bound(std::size_t n);

  const FiniteGraph& graph(std::size_t n);
  /// d□(W_{G_{n+1}}, W_{G_n}), already checked against step_bound(n). Exact when
  /// the cut norm is computable, a certified upper bound otherwise.
  const Rational& certificate(std::size_t n);

 private:
  void extend();

  GraphonName input_;
  SectionOptions options_;
  std::vector<FiniteGraph> graphs_;
  std::vector<Rational> certificates_;
};

/// Output element j = G_{j+7}: Σ_{n≥j+7} 45·2^-n < 2^-j.
GraphonName section_delta_to_dsquare(const GraphonName& name, const SectionOptions& options = {});
inline constexpr std::size_t kSectionOutputShift = 7;

struct MartingaleLevel {
  StepGraphon graphon;
  /// Cellwise bound |graphon − U_{P_n}| ≤ err.
  Rational err;
  std::size_t source_index = 0;
};

/// Smallest K with 4^n 2^-K ≤ target_err.
std::size_t martingale_source_index(unsigned n, const Rational& target_err);
MartingaleLevel martingale_from_dsquare_name(const GraphonName& name, DyadicLevel n, const Rational& target_err);

class MartingaleStream {
 public:
  MartingaleStream(GraphonName name, Rational target_err);
  MartingaleLevel level(unsigned n) const;
  const Rational& target_err() const noexcept { return target_err_; }

 private:
  GraphonName name_;
  Rational target_err_;
};

/// Σ over cells of 2 p (1 − p) · area.
Rational randomfree_d1_distance(const StepGraphon& f);
/// Σ over cells of p (1 − p) · area.
Rational randomfree_defect(const StepGraphon& w);

struct RandomFreeOptions {
  /// Deepest dyadic level tried per output element.
  unsigned level_budget = 10;
};

GraphonName randomfree_d1_name(const GraphonName& name, bool rf_promise = true, const RandomFreeOptions& options = {});

struct SemidecideResult {
  bool not_random_free = false;
  /// Level at which the positive lower bound appeared.
  std::size_t level = 0;
  Rational lower_bound;
};

SemidecideResult randomfree_semidecide(const GraphonName& name, std::size_t budget);

/// Smallest L with d1(stepping(U, L), U) ≤ 2^-(j+1) (L ≤ 12).
unsigned canonical_level(const StepGraphon& u, std::size_t j);
/// s_j = stepping(U, canonical_level(U, j)).
GraphonName canonical_name(const StepGraphon& u, MetricTag tag = MetricTag::D1);

GraphonName d1_name_with_ground_truth(const GraphonName& name, const StepGraphon& truth, std::size_t check_depth = 8);

}  // namespace graphonlab
