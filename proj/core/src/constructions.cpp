#include "graphonlab/constructions.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "graphonlab/error.hpp"

namespace graphonlab {

void HaltingTable::set(std::uint64_t program, std::optional<std::uint64_t> halt_step) {
  if (halt_step && *halt_step == 0) throw Error(ErrorCode::InvalidArgument, "halting steps start at 1");
  entries_[program] = halt_step;
}

std::optional<std::uint64_t> HaltingTable::halt_step(std::uint64_t program) const {
  auto it = entries_.find(program);
  return it == entries_.end() ? std::nullopt : it->second;
}

bool HaltingTable::halted_by(std::uint64_t program, std::uint64_t stage) const {
  auto t = halt_step(program);
  return t && *t <= stage;
}

StepGraphon constant_graphon(const UnitRational& p) { return StepGraphon(1, {p.value()}); }

StepGraphon prop46_gadget(std::uint64_t program, const HaltingTable& table, std::uint64_t stage) {
  const std::uint64_t exponent = table.halted_by(program, stage) ? *table.halt_step(program) : stage;
  return constant_graphon(UnitRational(pow2(-static_cast<long>(exponent))));
}

GraphonName prop46_gadget_name(std::uint64_t program, const HaltingTable& table) {
  return GraphonName(MetricTag::D1, [program, table](std::size_t s) { return prop46_gadget(program, table, s); });
}

HaltingLevels halting_levels(std::size_t n) {
  HaltingLevels lv;
  lv.low = 1 - pow2(-static_cast<long>(2 * n + 1));
  lv.high = 1 - pow2(-static_cast<long>(2 * n + 2));
  lv.mid = (lv.low + lv.high) / 2;
  return lv;
}

StepGraphon halting_graphon(const HaltingTable& table, std::size_t max_program, std::uint64_t stage,
                            unsigned approx_param, std::size_t block_limit) {
  if (max_program > block_limit) {
    throw Error(ErrorCode::BlockLimitExceeded, "E = " + std::to_string(max_program) + " exceeds the block limit " +
                                                   std::to_string(block_limit));
  }
  if (approx_param > 8) throw Error(ErrorCode::InvalidArgument, "approximation parameter too large");
  const unsigned log_parts = static_cast<unsigned>(max_program) + 1 + 2 * approx_param;
  if (log_parts > 14) throw Error(ErrorCode::BlockLimitExceeded, "halting graphon would need 2^" +
                                                                     std::to_string(log_parts) + " parts");
  const std::size_t parts = std::size_t{1} << log_parts;
  const std::size_t blocks = static_cast<std::size_t>(std::min<std::uint64_t>(stage, max_program));
  const std::size_t pattern_bits = 2 * approx_param;

  // block_of[u] = n with u in A_n (n ≤ blocks), or -1.
  std::vector<int> block_of(parts, -1);
  std::vector<std::size_t> sub_of(parts, 0);
  for (std::size_t n = 0; n <= blocks; ++n) {
    const std::size_t width = parts >> (n + 1);
    const std::size_t start = parts - (parts >> n);
    const std::size_t sub_width = width >> pattern_bits;
    for (std::size_t u = start; u < start + width; ++u) {
      block_of[u] = static_cast<int>(n);
      sub_of[u] = (u - start) / sub_width;
    }
  }
  std::vector<HaltingLevels> levels;
  std::vector<bool> halted;
  for (std::size_t n = 0; n <= blocks; ++n) {
    levels.push_back(halting_levels(n));
    halted.push_back(table.halted_by(n, stage));
  }
  return StepGraphon::from_function(parts, [&](std::size_t u, std::size_t v) -> Rational {
    const int b = block_of[u];
    if (b < 0 || b != block_of[v]) return 0;
    const auto& lv = levels[static_cast<std::size_t>(b)];
    if (!halted[static_cast<std::size_t>(b)]) return lv.mid;
    // Sylvester–Hadamard sign (−1)^{popcount(i & j)}: +1 ↦ high, −1 ↦ low.
    const bool plus = std::popcount(sub_of[u] & sub_of[v]) % 2 == 0;
    return plus ? lv.high : lv.low;
  });
}

Rational halting_tail_measure(std::size_t max_program) {
  return pow2(-2 * static_cast<long>(max_program + 1)) / 3;
}

std::vector<SpectrumEntry> value_spectrum(const StepGraphon& w) {
  std::vector<std::uint64_t> counts(w.palette().size(), 0);
  for (auto l : w.levels()) ++counts[l];
  const Integer k(static_cast<unsigned long>(w.parts()));
  const Rational area(k * k);
  std::vector<SpectrumEntry> out;
  for (std::size_t p = 0; p < counts.size(); ++p) {
    if (counts[p]) out.push_back({w.palette()[p], Rational(Integer(static_cast<unsigned long>(counts[p]))) / area});
  }
  return out;
}

std::set<std::uint64_t> decode_halting(const std::vector<SpectrumEntry>& spectrum, std::size_t max_program) {
  std::map<Rational, std::pair<std::size_t, int>> level_owner;  // value ↦ (block, 0 low / 1 mid / 2 high)
  for (std::size_t n = 0; n <= max_program; ++n) {
    const HaltingLevels lv = halting_levels(n);
    for (auto [value, kind] : {std::pair{lv.low, 0}, std::pair{lv.mid, 1}, std::pair{lv.high, 2}}) {
      auto [it, inserted] = level_owner.try_emplace(value, n, kind);
      if (!inserted) {
        throw Error(ErrorCode::MalformedSpectrum, "level constants of blocks " + std::to_string(it->second.first) +
                                                      " and " + std::to_string(n) + " collide");
      }
    }
  }
  Rational total = 0;
  std::set<std::uint64_t> divergent;
  for (const auto& entry : spectrum) {
    if (entry.mass <= 0) throw Error(ErrorCode::MalformedSpectrum, "spectrum masses must be positive");
    total += entry.mass;
    if (entry.value == 0) continue;
    auto it = level_owner.find(entry.value);
    if (it == level_owner.end()) {
      throw Error(ErrorCode::MalformedSpectrum,
                  "value " + to_string(entry.value) + " is not a level constant of any block up to E");
    }
    if (it->second.second == 1) divergent.insert(it->second.first);
  }
  if (total > 1) throw Error(ErrorCode::MalformedSpectrum, "spectrum masses sum to more than 1");
  return divergent;
}

StepGraphon direct_sum(const StepGraphon& u, const StepGraphon& v) {
  const std::size_t l = lcm_u64(u.parts(), v.parts());
  const std::size_t su = l / u.parts(), sv = l / v.parts();
  return StepGraphon::from_function(2 * l, [&](std::size_t a, std::size_t b) -> Rational {
    if (a < l && b < l) return u.value(a / su, b / su);
    if (a >= l && b >= l) return v.value((a - l) / sv, (b - l) / sv);
    return 0;
  });
}

std::vector<std::pair<std::size_t, std::size_t>> twin_parts(const StepGraphon& w) {
  std::map<std::vector<std::uint32_t>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < w.parts(); ++i) {
    auto row = w.row_levels(i);
    groups[std::vector<std::uint32_t>(row.begin(), row.end())].push_back(i);
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& [row, members] : groups) {
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) out.emplace_back(members[a], members[b]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace graphonlab
