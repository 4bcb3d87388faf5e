#include <graphonlab/metrics.hpp>

#include <iostream>

int main() {
  const graphonlab::StepGraphon half(1, {graphonlab::make_rational(1, 2)});
  const graphonlab::StepGraphon zero;
  std::cout << graphonlab::d1(half, zero) << '\n';
  return graphonlab::d1(half, zero) == graphonlab::make_rational(1, 2) ? 0 : 1;
}
