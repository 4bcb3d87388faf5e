#pragma once

// Slow, independent implementations used as test oracles.

#include "graphonlab/metrics.hpp"
#include "graphonlab/step_graphon.hpp"

namespace graphonlab::reference {

/// max over all row sets S and column sets T, both enumerated (k ≤ 14).
Rational cut_norm_brute(const SignedStepFunction& f);

/// Cell-by-cell L¹ distance on the lcm refinement, in plain rationals.
Rational d1_brute(const StepGraphon& u, const StepGraphon& v);

Rational d_square_brute(const StepGraphon& u, const StepGraphon& v);

/// Sum over all k^n part assignments of the induced-edge probability.
Rational t_ind_brute(const FiniteGraph& f, const StepGraphon& w);

/// min over all vertex permutations of d□(W_G, W_{H∘σ}); graphs of equal size ≤ 7.
Rational hat_delta_brute(const FiniteGraph& g, const FiniteGraph& h);

}  // namespace graphonlab::reference
