#include "graphonlab/names.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "graphonlab/densities.hpp"
#include "graphonlab/error.hpp"
#include "graphonlab/sampling.hpp"
#include "mix.hpp"

namespace graphonlab {

const char* to_string(MetricTag tag) {
  switch (tag) {
    case MetricTag::D1: return "D1";
    case MetricTag::DSquare: return "DSQUARE";
    case MetricTag::DeltaSquare: return "DELTASQUARE";
    case MetricTag::DW: return "DW";
  }
  return "?";
}

MetricTag parse_metric_tag(std::string_view text) {
  if (text == "D1" || text == "d1") return MetricTag::D1;
  if (text == "DSQUARE" || text == "dsquare") return MetricTag::DSquare;
  if (text == "DELTASQUARE" || text == "deltasquare") return MetricTag::DeltaSquare;
  if (text == "DW" || text == "dw") return MetricTag::DW;
  throw Error(ErrorCode::ParseError, "unknown metric tag '" + std::string(text) + "'");
}

const char* to_string(ValidationStatus status) {
  switch (status) {
    case ValidationStatus::Ok: return "Ok";
    case ValidationStatus::Violation: return "Violation";
    case ValidationStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

struct GraphonName::State {
  Generator generator;
  std::optional<std::size_t> length;
  TailPolicy tail = TailPolicy::None;
  std::recursive_mutex mutex;
  std::map<std::size_t, StepGraphon> cache;
};

GraphonName::GraphonName(MetricTag tag, Generator generator) : tag_(tag), state_(std::make_shared<State>()) {
  state_->generator = std::move(generator);
}

GraphonName::GraphonName(MetricTag tag, std::shared_ptr<State> state, Tolerance tolerance)
    : tag_(tag), state_(std::move(state)), tolerance_(std::move(tolerance)) {}

GraphonName GraphonName::from_elements(MetricTag tag, std::vector<StepGraphon> elements, TailPolicy tail) {
  if (elements.empty()) throw Error(ErrorCode::InvalidArgument, "a stored name needs at least one element");
  auto shared = std::make_shared<const std::vector<StepGraphon>>(std::move(elements));
  const std::size_t n = shared->size();
  GraphonName name(tag, [shared, tail, n](std::size_t j) {
    if (j < n) return (*shared)[j];
    if (tail == TailPolicy::RepeatLast) return shared->back();
    throw Error(ErrorCode::NamePrefixExhausted,
                "element " + std::to_string(j) + " requested from a stored prefix of length " + std::to_string(n));
  });
  name.state_->length = n;
  name.state_->tail = tail;
  return name;
}

GraphonName GraphonName::constant(MetricTag tag, StepGraphon element) {
  return GraphonName(tag, [element = std::move(element)](std::size_t) { return element; });
}

std::optional<std::size_t> GraphonName::length() const { return state_->length; }
TailPolicy GraphonName::tail() const { return state_->tail; }

StepGraphon GraphonName::element(std::size_t j) const {
  std::lock_guard lock(state_->mutex);
  auto it = state_->cache.find(j);
  if (it != state_->cache.end()) return it->second;
  StepGraphon value = state_->generator(j);
  state_->cache.emplace(j, value);
  return value;
}

std::size_t GraphonName::materialized() const {
  std::lock_guard lock(state_->mutex);
  return state_->cache.size();
}

GraphonName GraphonName::retagged(MetricTag tag) const { return GraphonName(tag, state_, tolerance_); }

GraphonName GraphonName::with_claimed_tolerance(Tolerance tolerance) const {
  return GraphonName(tag_, state_, std::move(tolerance));
}

std::optional<Rational> GraphonName::claimed_tolerance(std::size_t j) const {
  if (!tolerance_) return std::nullopt;
  return tolerance_(j);
}

namespace {

struct PairVerdict {
  ValidationStatus status;
  Rational evidence;
  std::string detail;
};

PairVerdict check_pair(MetricTag tag, const StepGraphon& a, const StepGraphon& b, const Rational& bound,
                       const ValidationOptions& options) {
  switch (tag) {
    case MetricTag::D1: {
      Rational d = d1(a, b);
      return {d <= bound ? ValidationStatus::Ok : ValidationStatus::Violation, d, "d1"};
    }
    case MetricTag::DSquare: {
      CutNormBounds c = d_square_bounds(a, b, options.cut);
      if (c.exact()) return {c.upper <= bound ? ValidationStatus::Ok : ValidationStatus::Violation, c.upper, "dsquare"};
      if (c.upper <= bound) return {ValidationStatus::Ok, c.upper, "dsquare upper bound"};
      if (c.lower > bound) return {ValidationStatus::Violation, c.lower, "dsquare lower bound"};
      return {ValidationStatus::Inconclusive, c.upper, "dsquare bounds straddle the threshold"};
    }
    case MetricTag::DeltaSquare: {
      DeltaBound d = delta_bound(a, b, options.delta);
      if (d.upper <= bound) return {ValidationStatus::Ok, d.upper, "delta upper bound"};
      if (d.lower > bound) return {ValidationStatus::Violation, d.lower, "delta lower bound"};
      return {ValidationStatus::Inconclusive, d.upper, "delta bounds straddle the threshold"};
    }
    case MetricTag::DW: {
      TruncatedDistance d = d_w_truncated(a, b, options.dw_terms);
      if (d.value > bound) return {ValidationStatus::Violation, d.value, "truncated dw"};
      if (d.value + d.tail <= bound) return {ValidationStatus::Ok, d.value + d.tail, "truncated dw plus tail"};
      return {ValidationStatus::Inconclusive, d.value + d.tail, "truncated dw tail straddles the threshold"};
    }
  }
  return {ValidationStatus::Inconclusive, Rational(0), "unknown tag"};
}

}  // namespace

ValidationReport validate_name_prefix(const GraphonName& name, std::size_t m, const ValidationOptions& options) {
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "validation needs a prefix of length m >= 2");
  std::vector<StepGraphon> prefix;
  prefix.reserve(m);
  for (std::size_t j = 0; j < m; ++j) prefix.push_back(name.element(j));
  ValidationReport report;
  std::optional<ValidationReport> unresolved;
  for (std::size_t j = 0; j < m; ++j) {
    const Rational bound = pow2(-static_cast<long>(j));
    for (std::size_t l = j + 1; l < m; ++l) {
      PairVerdict v = check_pair(name.tag(), prefix[j], prefix[l], bound, options);
      ++report.pairs_checked;
      if (v.status == ValidationStatus::Violation) {
        report.status = ValidationStatus::Violation;
        report.j = j;
        report.l = l;
        report.evidence = v.evidence;
        report.detail = v.detail + " = " + to_string(v.evidence) + " > 2^-" + std::to_string(j);
        return report;
      }
      if (v.status == ValidationStatus::Inconclusive && !unresolved) {
        unresolved = ValidationReport{ValidationStatus::Inconclusive, j, l, v.evidence, v.detail, 0};
      }
    }
  }
  if (unresolved) {
    unresolved->pairs_checked = report.pairs_checked;
    return *unresolved;
  }
  report.detail = "all pairs within 2^-j";
  return report;
}

GraphonName weaken_name(const GraphonName& name, MetricTag from, MetricTag to) {
  const bool declared = (from == MetricTag::D1 && to == MetricTag::DSquare) ||
                        (from == MetricTag::DSquare && to == MetricTag::DeltaSquare);
  if (!declared) {
    throw Error(ErrorCode::IllegalWeakening,
                std::string("no weakening from ") + to_string(from) + " to " + to_string(to));
  }
  if (name.tag() != from) {
    throw Error(ErrorCode::IllegalWeakening,
                std::string("name is tagged ") + to_string(name.tag()) + ", not " + to_string(from));
  }
  return name.retagged(to);
}

Rational thinning_constant_bound() {
  // Graphs on n vertices occupy indices [S(n), S(n+1)); their 2^-i weights sum
  // to 2^{1-S(n)} − 2^{1-S(n+1)}. For n ≥ 6, S(n) ≥ 100 n and 2n² ≤ 2^n, so the
  // remaining terms total at most Σ_{n≥6} 2^{1-99n} < 2^-500.
  Rational sum = 0;
  for (std::size_t n = 2; n <= 5; ++n) {
    const long s = static_cast<long>(first_index_with_vertices(n));
    const long t = static_cast<long>(first_index_with_vertices(n + 1));
    sum += 4 * binomial2(n) * (pow2(1 - s) - pow2(1 - t));
  }
  return sum + pow2(-500);
}

std::size_t thinning_offset() { return static_cast<std::size_t>(ceil_log2(thinning_constant_bound())); }

std::size_t thinning_schedule(std::size_t j) { return j + thinning_offset(); }

GraphonName name_delta_to_dw(const GraphonName& name) {
  const std::size_t offset = thinning_offset();
  return GraphonName(MetricTag::DW, [name, offset](std::size_t j) { return name.element(j + offset); });
}

std::size_t dw_to_delta_vertices(std::size_t j, const DwToDeltaOptions& options) {
  if (j > 20) throw Error(ErrorCode::InvalidArgument, "sample size overflow");
  return options.base_vertices << (2 * j);
}

Rational sampling_tolerance(std::size_t k) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "sampling tolerance needs k >= 2");
  const double t = 44.0 / std::sqrt(std::log(static_cast<double>(k)));
  // The double is within a few ulps; one extra grid step covers it.
  Integer q(static_cast<unsigned long>(std::ceil(std::ldexp(t, 32))) + 1);
  return make_rational(q, Integer(1) << 32);
}

GraphonName name_dw_to_delta(const GraphonName& name, std::uint64_t seed, const DwToDeltaOptions& options) {
  GraphonName out(MetricTag::DeltaSquare, [name, seed, options](std::size_t j) {
    const StepGraphon source = name.element(j + options.source_offset);
    RandomSource rs(detail::derive_seed(seed, j));
    return empirical_graphon(source, dw_to_delta_vertices(j, options), rs);
  });
  return out.with_claimed_tolerance([options](std::size_t j) { return sampling_tolerance(dw_to_delta_vertices(j, options)); });
}

std::size_t martingale_source_index(unsigned n, const Rational& target_err) {
  if (target_err <= 0) throw Error(ErrorCode::InvalidArgument, "martingale target error must be positive");
  const long k = ceil_log2(pow2(2 * static_cast<long>(n)) / target_err);
  return static_cast<std::size_t>(std::max(0L, k));
}

MartingaleLevel martingale_from_dsquare_name(const GraphonName& name, DyadicLevel n, const Rational& target_err) {
  const std::size_t k = martingale_source_index(n.n, target_err);
  return {stepping(name.element(k), n), pow2(2 * static_cast<long>(n.n) - static_cast<long>(k)), k};
}

MartingaleStream::MartingaleStream(GraphonName name, Rational target_err)
    : name_(std::move(name)), target_err_(std::move(target_err)) {}

MartingaleLevel MartingaleStream::level(unsigned n) const {
  return martingale_from_dsquare_name(name_, DyadicLevel{n}, target_err_);
}

namespace {

Rational weighted_cell_sum(const StepGraphon& w, const std::function<Rational(const Rational&)>& g) {
  std::vector<std::uint64_t> counts(w.palette().size(), 0);
  for (auto l : w.levels()) ++counts[l];
  Rational sum = 0;
  for (std::size_t p = 0; p < counts.size(); ++p) {
    if (counts[p]) sum += g(w.palette()[p]) * Rational(Integer(static_cast<unsigned long>(counts[p])));
  }
  const Integer k(static_cast<unsigned long>(w.parts()));
  return sum / Rational(k * k);
}

}  // namespace

Rational randomfree_d1_distance(const StepGraphon& f) {
  return weighted_cell_sum(f, [](const Rational& p) { return Rational(2 * p * (1 - p)); });
}

Rational randomfree_defect(const StepGraphon& w) {
  return weighted_cell_sum(w, [](const Rational& p) { return Rational(p * (1 - p)); });
}

GraphonName randomfree_d1_name(const GraphonName& name, bool rf_promise, const RandomFreeOptions& options) {
  if (!rf_promise) throw Error(ErrorCode::InvalidArgument, "the d1 extraction is only sound for random-free limits");
  auto generate = [name, options](std::size_t j) {
    const Rational eps = pow2(-static_cast<long>(j) - 4);
    const Rational target = pow2(-static_cast<long>(j) - 1);
    Rational best = 2;
    for (unsigned n = 0; n <= options.level_budget; ++n) {
      MartingaleLevel level = martingale_from_dsquare_name(name, DyadicLevel{n}, eps);
      // d1(level, U) ≤ err + d1(U_{P_n}, U) ≤ 3 err + randomfree_d1_distance(level).
      const Rational estimate = randomfree_d1_distance(level.graphon) + 3 * level.err;
      if (estimate <= target) return level.graphon;
      best = std::min(best, estimate);
    }
    throw Error(ErrorCode::NonConvergence, "element " + std::to_string(j) + ": d1 estimate stays at " +
                                               to_decimal(best, 6) + " > " + to_string(target) + " up to level " +
                                               std::to_string(options.level_budget) +
                                               " (limit is probably not random-free)");
  };
  GraphonName out(MetricTag::D1, generate);
  out.element(0);
  return out;
}

SemidecideResult randomfree_semidecide(const GraphonName& name, std::size_t budget) {
  SemidecideResult out;
  for (std::size_t j = 0; j <= budget; ++j) {
    const Rational lower = randomfree_defect(name.element(j)) - 2 * pow2(-static_cast<long>(j));
    if (lower > 0) {
      out.not_random_free = true;
      out.level = j;
      out.lower_bound = lower;
      return out;
    }
    out.level = j;
    out.lower_bound = lower;
  }
  return out;
}

unsigned canonical_level(const StepGraphon& u, std::size_t j) {
  const Rational target = pow2(-static_cast<long>(j) - 1);
  for (unsigned level = 0; level <= 12; ++level) {
    if (d1(stepping(u, DyadicLevel{level}), u) <= target) return level;
  }
  throw Error(ErrorCode::InvalidArgument,
              "no dyadic level up to 12 approximates the graphon within " + to_string(target));
}

GraphonName canonical_name(const StepGraphon& u, MetricTag tag) {
  return GraphonName(tag, [u](std::size_t j) { return stepping(u, DyadicLevel{canonical_level(u, j)}); });
}

GraphonName d1_name_with_ground_truth(const GraphonName& name, const StepGraphon& truth, std::size_t check_depth) {
  auto check = [name, truth](std::size_t j) {
    const Rational tol = pow2(-static_cast<long>(j));
    CutNormBounds b = d_square_bounds(name.element(j), truth);
    if (b.lower > tol) {
      throw Error(ErrorCode::TruthMismatch, "element " + std::to_string(j) + " is at cut distance " +
                                                to_string(b.lower) + " > 2^-" + std::to_string(j) +
                                                " from the supplied limit");
    }
  };
  for (std::size_t j = 0; j < check_depth; ++j) check(j);
  return GraphonName(MetricTag::D1, [truth, check](std::size_t j) {
    check(j);
    return stepping(truth, DyadicLevel{canonical_level(truth, j)});
  });
}

}  // namespace graphonlab
