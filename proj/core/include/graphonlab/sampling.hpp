#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "graphonlab/rational.hpp"
#include "graphonlab/step_graphon.hpp"

namespace graphonlab {

/// Seeded stream of 64-bit words (mt19937_64 raw output, which the standard
/// fixes bit for bit) plus exact draws built on top of it.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }
  static constexpr const char* algorithm() { return "mt19937_64"; }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 2^bits), bits in [1, 64].
  std::uint64_t bits(unsigned bits);
  /// ζ = r / 2^64 with r uniform on 64 bits.
  std::uint64_t uniform_word() { return engine_(); }
  /// Exact Bernoulli(p) by comparing fresh bits with the binary expansion of p.
  bool bernoulli(const Rational& p);

  /// Independent source for stream `stream` (splitmix64 of seed and stream).
  RandomSource derive(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Part containing the 64-bit dyadic point r / 2^64: floor(r·k / 2^64).
std::size_t part_of_word(std::size_t parts, std::uint64_t r);

/// G(n, W): latent ζ_i, then each pair independently with probability W(ζ_i, ζ_j).
FiniteGraph sample_graph(const StepGraphon& w, std::size_t n, RandomSource& rs);

StepGraphon empirical_graphon(const StepGraphon& w, std::size_t m, RandomSource& rs);

struct QuestionnaireSample {
  FiniteGraph graph;
  /// answers[v][q-1] ∈ [0, 2^q).
  std::vector<std::vector<std::uint64_t>> answers;
  /// C(n,2)·2^{-Q}.
  Rational tv_bound;
};

/// Each vertex answers questions q = 1..Q (2^q choices each); edges join
/// vertices that agree on some answer. Q ≤ 63.
QuestionnaireSample questionnaire_sample(std::size_t n, unsigned questions, RandomSource& rs);

struct DyadicInterval {
  Rational lo;
  Rational width;
  Rational hi() const { return lo + width; }
};

/// Cell [Σ a_q 2^{-q(q+1)/2}, + 2^{-Q(Q+1)/2}) of the nested grids.
DyadicInterval answers_to_point(const std::vector<std::uint64_t>& answers);

}  // namespace graphonlab
