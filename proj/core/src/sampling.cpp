#include "graphonlab/sampling.hpp"

#include "graphonlab/error.hpp"
#include "mix.hpp"

namespace graphonlab {

RandomSource::RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

std::uint64_t RandomSource::bits(unsigned bits) {
  if (bits == 0 || bits > 64) throw Error(ErrorCode::InvalidArgument, "bit count must be in [1,64]");
  const std::uint64_t word = engine_();
  return bits == 64 ? word : word >> (64 - bits);
}

bool RandomSource::bernoulli(const Rational& p) {
  if (p <= 0) return false;
  if (p >= 1) return true;
  // Compare the uniform 0.u1u2... with p = 0.p1p2... one 64-bit chunk at a time.
  Integer num = p.get_num();
  const Integer& den = p.get_den();
  while (true) {
    num <<= 64;
    Integer chunk = num / den;
    num -= chunk * den;
    const std::uint64_t threshold = chunk.get_ui();
    const std::uint64_t u = engine_();
    if (u < threshold) return true;
    if (u > threshold) return false;
    if (num == 0) return false;
  }
}

RandomSource RandomSource::derive(std::uint64_t stream) const { return RandomSource(detail::derive_seed(seed_, stream)); }

std::size_t part_of_word(std::size_t parts, std::uint64_t r) {
  return static_cast<std::size_t>((static_cast<unsigned __int128>(r) * parts) >> 64);
}

FiniteGraph sample_graph(const StepGraphon& w, std::size_t n, RandomSource& rs) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "sample_graph needs n >= 1");
  std::vector<std::size_t> part(n);
  for (auto& p : part) p = part_of_word(w.parts(), rs.uniform_word());
  std::vector<std::uint8_t> adj(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rs.bernoulli(w.value(part[i], part[j]))) adj[i * n + j] = adj[j * n + i] = 1;
    }
  }
  return FiniteGraph::from_adjacency(n, std::move(adj));
}

StepGraphon empirical_graphon(const StepGraphon& w, std::size_t m, RandomSource& rs) {
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "empirical graphon needs m >= 1");
  return graphon_of_graph(sample_graph(w, m, rs));
}

QuestionnaireSample questionnaire_sample(std::size_t n, unsigned questions, RandomSource& rs) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "questionnaire needs n >= 1");
  if (questions == 0 || questions > 63) throw Error(ErrorCode::InvalidArgument, "questionnaire needs 1 <= Q <= 63");
  QuestionnaireSample out;
  out.answers.assign(n, std::vector<std::uint64_t>(questions));
  for (std::size_t v = 0; v < n; ++v) {
    for (unsigned q = 1; q <= questions; ++q) out.answers[v][q - 1] = rs.bits(q);
  }
  std::vector<std::uint8_t> adj(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (unsigned q = 0; q < questions; ++q) {
        if (out.answers[i][q] == out.answers[j][q]) {
          adj[i * n + j] = adj[j * n + i] = 1;
          break;
        }
      }
    }
  }
  out.graph = FiniteGraph::from_adjacency(n, std::move(adj));
  out.tv_bound = binomial2(n) * pow2(-static_cast<long>(questions));
  return out;
}

DyadicInterval answers_to_point(const std::vector<std::uint64_t>& answers) {
  if (answers.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one answer");
  DyadicInterval out{Rational(0), Rational(1)};
  long depth = 0;
  for (std::size_t q = 1; q <= answers.size(); ++q) {
    if (q >= 64 || answers[q - 1] >> q != 0) {
      throw Error(ErrorCode::DigitOutOfRange,
                  "answer " + std::to_string(answers[q - 1]) + " to question " + std::to_string(q) + " is not below 2^" +
                      std::to_string(q));
    }
    depth += static_cast<long>(q);
    out.lo += Rational(Integer(static_cast<unsigned long>(answers[q - 1]))) * pow2(-depth);
  }
  out.width = pow2(-depth);
  return out;
}

}  // namespace graphonlab
