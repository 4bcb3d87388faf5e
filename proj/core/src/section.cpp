#include <memory>
#include <mutex>

#include "graphonlab/error.hpp"
#include "graphonlab/metrics.hpp"
#include "graphonlab/names.hpp"

namespace graphonlab {

FiniteGraph round_to_graph(const StepGraphon& w, std::size_t factor) {
  if (factor == 0) throw Error(ErrorCode::InvalidArgument, "rounding factor must be positive");
  const std::size_t k = w.parts(), n = k * factor;
  const Rational m(Integer(static_cast<unsigned long>(factor)));
  std::vector<std::size_t> quota(w.palette().size());
  for (std::size_t p = 0; p < quota.size(); ++p) {
    Rational x = w.palette()[p] * m + Rational(1, 2);
    quota[p] = Integer(x.get_num() / x.get_den()).get_ui();
  }
  std::vector<std::uint8_t> adj(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      const std::size_t q = quota[w.level(a / factor, b / factor)];
      adj[a * n + b] = ((a % factor + b % factor) % factor) < q ? 1 : 0;
    }
  }
  return FiniteGraph::from_adjacency(n, std::move(adj));
}

namespace {

FiniteGraph as_graph(const StepGraphon& w, std::size_t factor) {
  if (auto g = graph_of_graphon(w)) return *g;
  return round_to_graph(w, factor);
}

}  // namespace

SectionChain::SectionChain(GraphonName input, SectionOptions options)
    : input_(std::move(input)), options_(options) {
  graphs_.push_back(as_graph(input_.element(source_index(0)), options_.rounding_factor));
}

std::size_t SectionChain::source_index(std::size_t n) {
  if (n > 30) throw Error(ErrorCode::InvalidArgument, "section step too deep");
  return (std::size_t{1} << (2 * n)) + 2;
}

Rational SectionChain::step_bound(std::size_t n) { return 45 * pow2(-static_cast<long>(n)); }

const FiniteGraph& SectionChain::graph(std::size_t n) {
  while (graphs_.size() <= n) extend();
  return graphs_[n];
}

const Rational& SectionChain::certificate(std::size_t n) {
  while (certificates_.size() <= n) extend();
  return certificates_[n];
}

void SectionChain::extend() {
  const std::size_t n = graphs_.size() - 1;
  const FiniteGraph& g = graphs_.back();
  const FiniteGraph h = as_graph(input_.element(source_index(n + 1)), options_.rounding_factor);
  const std::size_t l = lcm_u64(g.vertices(), h.vertices());
  const FiniteGraph gb = g.blown_up(l / g.vertices());
  const FiniteGraph hb = h.blown_up(l / h.vertices());

  AlignOptions align = options_.align;
  if (align.mode == AlignMode::Exact && l > 8) align.mode = AlignMode::Heuristic;
  const DeltaBound aligned = hat_delta(gb, hb, align);
  FiniteGraph next = hb.permuted(aligned.witness->permutation);

  const CutNormBounds cert = d_square_bounds(graphon_of_graph(next), graphon_of_graph(g));
  if (cert.upper > step_bound(n)) {
    throw Error(ErrorCode::AlignmentBudgetExceeded,
                "step " + std::to_string(n) + ": aligned cut distance " + to_string(cert.upper) + " exceeds 45*2^-" +
                    std::to_string(n) + (cert.exact() ? "" : " (certified bound only)"));
  }
  certificates_.push_back(cert.upper);
  graphs_.push_back(std::move(next));
}

GraphonName section_delta_to_dsquare(const GraphonName& name, const SectionOptions& options) {
  auto chain = std::make_shared<SectionChain>(name, options);
  auto mutex = std::make_shared<std::mutex>();
  return GraphonName(MetricTag::DSquare, [chain, mutex](std::size_t j) {
    std::lock_guard lock(*mutex);
    return graphon_of_graph(chain->graph(j + kSectionOutputShift));
  });
}

}  // namespace graphonlab
