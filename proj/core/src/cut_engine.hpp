#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace graphonlab::detail {

/// max over S,T of |Σ_{S×T} m| for a small dense integer matrix (r ≤ 24),
/// by Gray-code row subsets and greedy columns.
std::int64_t cut_norm_small(const std::vector<std::int64_t>& m, std::size_t r);

}  // namespace graphonlab::detail
