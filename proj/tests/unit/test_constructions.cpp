#include <gtest/gtest.h>

#include "graphonlab/constructions.hpp"
#include "graphonlab/error.hpp"
#include "graphonlab/metrics.hpp"
#include "graphonlab/names.hpp"
#include "graphonlab/sampling.hpp"
#include "helpers.hpp"

using namespace graphonlab;
using namespace graphonlab::testing;

TEST(Gadget, StageValues) {
  HaltingTable t;
  t.set(0, std::nullopt);
  t.set(1, 3);
  EXPECT_EQ(prop46_gadget(0, t, 5), constant("1/32"));
  EXPECT_EQ(prop46_gadget(1, t, 5), constant("1/8"));
  EXPECT_EQ(prop46_gadget(1, t, 2), constant("1/4"));
  EXPECT_EQ(validate_name_prefix(prop46_gadget_name(1, t), 10).status, ValidationStatus::Ok);
  EXPECT_EQ(constant_graphon(UnitRational(q("1/2"))), constant("1/2"));
  EXPECT_THROW(t.set(2, 0), Error);
}

TEST(Halting, Levels) {
  const HaltingLevels l0 = halting_levels(0), l1 = halting_levels(1);
  EXPECT_EQ(l0.low, Rational(1, 2));
  EXPECT_EQ(l0.high, Rational(3, 4));
  EXPECT_EQ(l0.mid, Rational(5, 8));
  EXPECT_EQ(l1.mid, Rational(29, 32));
  EXPECT_EQ(halting_tail_measure(2), Rational(1, 192));
}

TEST(Halting, AllDivergingStageOne) {
  HaltingTable t;
  for (int e = 0; e <= 2; ++e) t.set(e, std::nullopt);
  const StepGraphon w = halting_graphon(t, 2, 1);
  EXPECT_EQ(w.parts(), 128u);
  const auto spectrum = value_spectrum(w);
  Rational m0_mass = 0, m1_mass = 0, total = 0;
  for (const auto& e : spectrum) {
    total += e.mass;
    if (e.value == Rational(5, 8)) m0_mass = e.mass;
    if (e.value == Rational(29, 32)) m1_mass = e.mass;
  }
  EXPECT_EQ(total, 1);
  EXPECT_EQ(m0_mass, Rational(1, 4));   // block A_0 × A_0
  EXPECT_EQ(m1_mass, Rational(1, 16));  // block A_1 × A_1
  EXPECT_EQ(decode_halting(spectrum, 2), (std::set<std::uint64_t>{0, 1}));  // block 2 not yet at s = 1
}

TEST(Halting, DecodeExamples) {
  HaltingTable t;
  t.set(0, 3);
  t.set(1, std::nullopt);
  t.set(2, 7);
  EXPECT_EQ(decode_halting(value_spectrum(halting_graphon(t, 2, 7)), 2), (std::set<std::uint64_t>{1}));
  HaltingTable all;
  for (int e = 0; e <= 3; ++e) all.set(e, 1 + e);
  EXPECT_TRUE(decode_halting(value_spectrum(halting_graphon(all, 3, 9)), 3).empty());
  HaltingTable none;
  for (int e = 0; e <= 3; ++e) none.set(e, std::nullopt);
  EXPECT_EQ(decode_halting(value_spectrum(halting_graphon(none, 3, 9)), 3), (std::set<std::uint64_t>{0, 1, 2, 3}));
  EXPECT_THROW(halting_graphon(none, 7, 1), Error);
}

TEST(Halting, MalformedSpectra) {
  const HaltingLevels l0 = halting_levels(0);
  EXPECT_THROW(decode_halting({{Rational(1, 3), Rational(1, 2)}}, 2), Error);
  EXPECT_THROW(decode_halting({{l0.mid, Rational(3, 2)}}, 2), Error);
  EXPECT_THROW(decode_halting({{l0.mid, Rational(0)}}, 2), Error);
  EXPECT_EQ(decode_halting({{Rational(0), Rational(1, 2)}, {l0.mid, Rational(1, 4)}}, 2), (std::set<std::uint64_t>{0}));
}

TEST(Spectrum, Examples) {
  const auto c = value_spectrum(constant("2/5"));
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].mass, 1);
  const auto b = value_spectrum(checkerboard());
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[0].value, 0);
  EXPECT_EQ(b[0].mass, Rational(1, 2));
  EXPECT_EQ(b[1].value, 1);
}

TEST(Fractal, RendersAndMeasures) {
  EXPECT_EQ(render_dense(fractal_stage(1)), checkerboard());
  EXPECT_EQ(fractal_stage(1).black_measure(), Rational(1, 2));
  EXPECT_EQ(fractal_stage(2).white_measure(), Rational(3, 8));
  EXPECT_EQ(fractal_stage(3).white_measure(), Rational(21, 64));
  EXPECT_EQ(fractal_stage(4).render_parts(), 1024u);
  for (unsigned d = 1; d <= 4; ++d) EXPECT_EQ(1 - average(render_dense(fractal_stage(d))), fractal_white_product(d));
  EXPECT_THROW(render_dense(fractal_stage(5)), Error);
  EXPECT_THROW(fractal_stage(0), Error);
}

TEST(Fractal, StructuralMeasureMatchesClosedForm) {
  FractalStage st = fractal_stage(3);
  st.override_black_cells(1, 0, 0, {{0, 0}, {1, 1}});  // same as the default rule
  EXPECT_TRUE(st.has_overrides());
  EXPECT_EQ(st.white_measure(), Rational(21, 64));
  FractalStage broken = fractal_stage(2);
  broken.override_black_cells(1, 0, 0, {{0, 0}});
  EXPECT_EQ(broken.black_measure(), Rational(1, 4) + Rational(3, 4) * Rational(1, 4));
}

TEST(Fractal, WhiteLimit) {
  const RationalInterval enc = fractal_white_limit(Rational(1, 1000000000));
  EXPECT_LE(enc.width(), Rational(1, 1000000000));
  EXPECT_GE(enc.lo, q("0.2887880"));
  EXPECT_LE(enc.hi, q("0.2887882"));
  for (unsigned d = 1; d <= 30; ++d) EXPECT_GE(fractal_white_product(d), enc.lo);
}

TEST(Fractal, Matching) {
  for (unsigned d = 1; d <= 4; ++d) EXPECT_TRUE(verify_diagonal_matching(fractal_stage(d)).ok);
  FractalStage missing = fractal_stage(3);
  missing.override_black_cells(2, 1, 0, {{0, 0}, {1, 1}, {2, 2}});
  const MatchingReport m = verify_diagonal_matching(missing);
  EXPECT_FALSE(m.ok);
  EXPECT_EQ(m.stage, 2u);
  EXPECT_EQ(m.row_prefix, 1u);
  FractalStage duplicated = fractal_stage(2);
  duplicated.override_black_cells(1, 0, 0, {{0, 0}, {1, 0}});
  EXPECT_FALSE(verify_diagonal_matching(duplicated).ok);
}

TEST(Fractal, RectangleBounds) {
  EXPECT_EQ(rectangle_bound_exhaustive(1), Rational(1, 4));
  EXPECT_LE(rectangle_bound_exhaustive(2), Rational(1, 16));
  RandomSource rs(3);
  const ProbeResult p = rectangle_bound_probe(2, 10000, rs);
  EXPECT_TRUE(p.passed);
  EXPECT_EQ(p.bound, Rational(1, 16));
  EXPECT_EQ(rectangle_bound_probe(1, 0, rs).max_measure, 0);
}

TEST(Constructions, DirectSumAndTwins) {
  const StepGraphon u = matrix(2, {"1", "1/2", "1/2", "0"});
  const StepGraphon s = direct_sum(u, constant("1/3"));
  EXPECT_EQ(s.parts(), 4u);
  EXPECT_EQ(average(s), (average(u) + Rational(1, 3)) / 4);
  EXPECT_EQ(direct_sum(constant("1"), constant("1")), matrix(2, {"1", "0", "0", "1"}));
  using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;
  EXPECT_EQ(twin_parts(blow_up(constant("1/2"), 2)), (Pairs{{0, 1}}));
  EXPECT_TRUE(twin_parts(checkerboard()).empty());
  EXPECT_TRUE(twin_parts(render_dense(fractal_stage(2))).empty());
}
