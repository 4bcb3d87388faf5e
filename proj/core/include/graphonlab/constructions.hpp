#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "graphonlab/names.hpp"
#include "graphonlab/rational.hpp"
#include "graphonlab/sampling.hpp"
#include "graphonlab/step_graphon.hpp"

namespace graphonlab {

/// Finite stand-in for the halting set: program id ↦ halting step or divergence.
class HaltingTable {
 public:
  void set(std::uint64_t program, std::optional<std::uint64_t> halt_step);
  std::optional<std::uint64_t> halt_step(std::uint64_t program) const;
  bool halted_by(std::uint64_t program, std::uint64_t stage) const;
  const std::map<std::uint64_t, std::optional<std::uint64_t>>& entries() const noexcept { return entries_; }

 private:
  std::map<std::uint64_t, std::optional<std::uint64_t>> entries_;
};

StepGraphon constant_graphon(const UnitRational& p);

/// Constant 2^-s while e is unhalted at stage s, constant 2^-t once it halted at t ≤ s.
StepGraphon prop46_gadget(std::uint64_t program, const HaltingTable& table, std::uint64_t stage);
/// D1 name s ↦ prop46_gadget(e, table, s).
GraphonName prop46_gadget_name(std::uint64_t program, const HaltingTable& table);

struct HaltingLevels {
  Rational low;   // 1 − 2^-(2n+1)
  Rational mid;
  Rational high;  // 1 − 2^-(2n+2)
};
HaltingLevels halting_levels(std::size_t n);

inline constexpr std::size_t kDefaultBlockLimit = 6;

/// U_s on 2^{E+1+2a} parts: block (1−2^-n, 1−2^-(n+1))² for n ≤ min(s, E)
/// holds the midpoint m_n while n is unhalted at s, and otherwise the
/// two-valued Hadamard pattern of size 4^a between low and high levels.
StepGraphon halting_graphon(const HaltingTable& table, std::size_t max_program, std::uint64_t stage,
                            unsigned approx_param = 2, std::size_t block_limit = kDefaultBlockLimit);
/// Measure of the blocks beyond E: Σ_{n>E} 4^-(n+1).
Rational halting_tail_measure(std::size_t max_program);

struct SpectrumEntry {
  Rational value;
  Rational mass;
};

std::vector<SpectrumEntry> value_spectrum(const StepGraphon& w);

/// { e ≤ E : m_e carries positive mass }.
std::set<std::uint64_t> decode_halting(const std::vector<SpectrumEntry>& spectrum, std::size_t max_program);

/// Recursive description of the nested diagonal construction: stage q splits
/// every still-white square into 2^q × 2^q cells and blackens a matching.
/// Squares are addressed by the digit prefixes of their row and column.
class FractalStage {
 public:
  using Cell = std::pair<std::uint64_t, std::uint64_t>;

  explicit FractalStage(unsigned depth);

  unsigned depth() const noexcept { return depth_; }
  /// 2^{d(d+1)/2}.
  std::uint64_t render_parts() const;

  std::vector<Cell> black_cells(unsigned stage, std::uint64_t row_prefix, std::uint64_t col_prefix) const;
  /// Fault injection: replaces the black cells of one square.
  void override_black_cells(unsigned stage, std::uint64_t row_prefix, std::uint64_t col_prefix, std::vector<Cell> cells);
  bool has_overrides() const noexcept { return !overrides_.empty(); }

  /// Render coordinates at full depth.
  bool is_black(std::uint64_t x, std::uint64_t y) const;

  /// Exact measures at full depth (structural walk for mutated stages, d ≤ 5).
  Rational black_measure() const;
  Rational white_measure() const { return 1 - black_measure(); }

 private:
  bool black_at(unsigned stage, std::uint64_t rp, std::uint64_t cp, std::uint64_t i, std::uint64_t j) const;

  unsigned depth_;
  std::map<std::tuple<unsigned, std::uint64_t, std::uint64_t>, std::set<Cell>> overrides_;
};

FractalStage fractal_stage(unsigned depth);
/// Dense 0/1 render; depth ≤ 4.
StepGraphon render_dense(const FractalStage& stage);
/// w_d = Π_{n≤d} (1 − 2^-n).
Rational fractal_white_product(unsigned depth);

struct RationalInterval {
  Rational lo;
  Rational hi;
  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

/// Encloses Π_{n≥1}(1 − 2^-n) with width ≤ tol.
RationalInterval fractal_white_limit(const Rational& tol);

struct MatchingReport {
  bool ok = true;
  unsigned stage = 0;
  std::uint64_t row_prefix = 0;
  std::uint64_t col_prefix = 0;
  std::string detail;
};

/// Every white square's next-stage black cells form a bijection rows ↔ columns. depth ≤ 5.
MatchingReport verify_diagonal_matching(const FractalStage& stage);

struct ProbeResult {
  Rational max_measure;
  Rational bound;  // 4^-d
  bool passed = true;
};

/// Random X, then alternately the largest Y with X×Y white and vice versa. depth ≤ 4.
ProbeResult rectangle_bound_probe(unsigned depth, std::uint64_t trials, RandomSource& rs);
/// Same quantity by trying every X; depth ≤ 2.
Rational rectangle_bound_exhaustive(unsigned depth);

/// U on [0,1/2]², V on [1/2,1]², zero elsewhere; 2·lcm(k_U,k_V) parts.
StepGraphon direct_sum(const StepGraphon& u, const StepGraphon& v);

std::vector<std::pair<std::size_t, std::size_t>> twin_parts(const StepGraphon& w);

}  // namespace graphonlab
