#include <gtest/gtest.h>

#include <filesystem>

#include "graphonlab/error.hpp"
#include "graphonlab/formats.hpp"
#include "helpers.hpp"

using namespace graphonlab;
using namespace graphonlab::testing;

TEST(Formats, StepGraphonText) {
  const StepGraphon w = parse_step_graphon("2\n1/2 0.25\n1/4 1\n");
  EXPECT_EQ(w, matrix(2, {"1/2", "1/4", "1/4", "1"}));
  EXPECT_EQ(format_step_graphon(w), "2\n1/2 1/4\n1/4 1/1\n");
  EXPECT_EQ(parse_step_graphon(format_step_graphon(w)), w);
  EXPECT_THROW(parse_step_graphon("2\n1 0\n1 1\n"), Error);
  EXPECT_THROW(parse_step_graphon("2\n1 0\n0\n"), Error);
  EXPECT_THROW(parse_step_graphon(""), Error);
}

TEST(Formats, GraphText) {
  const FiniteGraph g = parse_graph("3\n0 1\n1 2\n");
  EXPECT_EQ(g, FiniteGraph(3, {{0, 1}, {1, 2}}));
  EXPECT_EQ(format_graph(g), "3\n0 1\n1 2\n");
  EXPECT_THROW(parse_graph("3\n1 0\n"), Error);
  EXPECT_THROW(parse_graph("3\n0 3\n"), Error);
}

TEST(Formats, HaltingTableText) {
  const HaltingTable t = parse_halting_table("# demo\n0 3\n1 -\n\n2 7  # late\n");
  EXPECT_EQ(t.halt_step(0), 3u);
  EXPECT_FALSE(t.halt_step(1).has_value());
  EXPECT_EQ(t.halt_step(2), 7u);
  EXPECT_EQ(format_halting_table(t), "0 3\n1 -\n2 7\n");
  EXPECT_THROW(parse_halting_table("0 3\n0 4\n"), Error);
  EXPECT_THROW(parse_halting_table("0\n"), Error);
}

TEST(Formats, Spectrum) {
  const std::vector<SpectrumEntry> s = {{Rational(0), Rational(1, 2)}, {Rational(5, 8), Rational(1, 2)}};
  const auto back = parse_spectrum(format_spectrum(s));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].value, Rational(5, 8));
  EXPECT_EQ(back[1].mass, Rational(1, 2));
}

TEST(Formats, Pgm) {
  const std::string white = format_pgm(constant("0"), 3);
  EXPECT_EQ(white, std::string("P5\n3 3\n255\n") + std::string(9, '\xff'));
  const std::string black = format_pgm(constant("1"), 2);
  EXPECT_EQ(black, std::string("P5\n2 2\n255\n") + std::string(4, '\0'));
  const std::string board = format_pgm(checkerboard(), 2);
  EXPECT_EQ(board.substr(board.size() - 4), std::string("\0\xff\xff\0", 4));
  EXPECT_EQ(format_pgm(constant("1/2"), 1).back(), static_cast<char>(128));
  EXPECT_THROW(format_pgm(checkerboard(), 1), Error);
}

TEST(Formats, NameDirectoryRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "graphonlab_name_dir_test";
  std::filesystem::remove_all(dir);
  const GraphonName n = GraphonName::from_elements(MetricTag::DSquare, {constant("0"), checkerboard()}, TailPolicy::RepeatLast);
  write_name_directory(dir, n, 2);
  const GraphonName back = read_name_directory(dir);
  EXPECT_EQ(back.tag(), MetricTag::DSquare);
  EXPECT_EQ(back.tail(), TailPolicy::RepeatLast);
  EXPECT_EQ(back.element(1), checkerboard());
  EXPECT_EQ(back.element(9), checkerboard());
  std::filesystem::remove_all(dir);
}
