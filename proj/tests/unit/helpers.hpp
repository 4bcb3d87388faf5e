#pragma once

#include <string>
#include <vector>

#include "graphonlab/rational.hpp"
#include "graphonlab/step_graphon.hpp"

namespace graphonlab::testing {

inline Rational q(const std::string& s) { return parse_rational(s); }

inline StepGraphon constant(const std::string& p) { return make_step_graphon(1, {{q(p)}}); }

inline StepGraphon checkerboard() { return make_step_graphon(2, {{q("1"), q("0")}, {q("0"), q("1")}}); }

inline StepGraphon matrix(std::size_t k, const std::vector<std::string>& row_major) {
  std::vector<Rational> v;
  for (const auto& s : row_major) v.push_back(q(s));
  return StepGraphon(k, v);
}

inline FiniteGraph k2() { return FiniteGraph(2, {{0, 1}}); }
inline FiniteGraph triangle() { return FiniteGraph::complete(3); }

}  // namespace graphonlab::testing
