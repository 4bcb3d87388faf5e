#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "graphonlab/constructions.hpp"
#include "graphonlab/names.hpp"
#include "graphonlab/step_graphon.hpp"

namespace graphonlab {

// .sg: "k", then k rows of k entries ("p/q" or a short decimal).
StepGraphon parse_step_graphon(const std::string& text);
std::string format_step_graphon(const StepGraphon& w);

// .g: "n", then one "i j" line per edge with i < j.
FiniteGraph parse_graph(const std::string& text);
std::string format_graph(const FiniteGraph& g);

// One entry per line, "e t" or "e -"; '#' starts a comment.
HaltingTable parse_halting_table(const std::string& text);
std::string format_halting_table(const HaltingTable& table);

// One "value mass" line per distinct value.
std::vector<SpectrumEntry> parse_spectrum(const std::string& text);
std::string format_spectrum(const std::vector<SpectrumEntry>& spectrum);

/// 8-bit binary PGM; pixel = round(255 (1 - value)), row 0 at the top is x near 0.
std::string format_pgm(const StepGraphon& w, std::size_t resolution);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

StepGraphon read_step_graphon(const std::filesystem::path& path);
FiniteGraph read_graph(const std::filesystem::path& path);

/// Loads a .sg file, or a .g file as its graph graphon.
StepGraphon read_graphon_any(const std::filesystem::path& path);

// Name directory: a file "manifest" whose first line is the metric tag,
// optionally followed by "tail=repeat-last", then one element file per line.
inline constexpr const char* kNameManifest = "manifest";

GraphonName read_name_directory(const std::filesystem::path& dir);
void write_name_directory(const std::filesystem::path& dir, const GraphonName& name, std::size_t count);

}  // namespace graphonlab
