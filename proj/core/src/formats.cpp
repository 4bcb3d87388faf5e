#include "graphonlab/formats.hpp"

#include <fstream>
#include <sstream>

#include "graphonlab/error.hpp"

namespace graphonlab {

namespace {

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  std::string s = pos == std::string::npos ? line : line.substr(0, pos);
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(strip_comment(line));
    std::string tok;
    while (ls >> tok) out.push_back(tok);
  }
  return out;
}

std::uint64_t parse_count(const std::string& tok, const char* what) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 18) {
    throw Error(ErrorCode::ParseError, std::string("expected a non-negative integer for ") + what + ", got '" + tok + "'");
  }
  return std::stoull(tok);
}

}  // namespace

StepGraphon parse_step_graphon(const std::string& text) {
  const auto tok = tokens(text);
  if (tok.empty()) throw Error(ErrorCode::ParseError, "empty step graphon file");
  const std::uint64_t k = parse_count(tok[0], "the part count");
  if (k == 0) throw Error(ErrorCode::EmptyGraph, "step graphon needs at least one part");
  if (tok.size() - 1 != k * k) {
    throw Error(ErrorCode::ParseError, "expected " + std::to_string(k * k) + " entries, found " +
                                           std::to_string(tok.size() - 1));
  }
  std::vector<Rational> values;
  values.reserve(k * k);
  for (std::size_t i = 1; i < tok.size(); ++i) values.push_back(parse_rational(tok[i]));
  return StepGraphon(k, values);
}

std::string format_step_graphon(const StepGraphon& w) {
  std::ostringstream out;
  out << w.parts() << '\n';
  std::vector<std::string> rendered;
  for (const auto& v : w.palette()) rendered.push_back(to_string(v));
  for (std::size_t i = 0; i < w.parts(); ++i) {
    for (std::size_t j = 0; j < w.parts(); ++j) out << (j ? " " : "") << rendered[w.level(i, j)];
    out << '\n';
  }
  return out.str();
}

FiniteGraph parse_graph(const std::string& text) {
  const auto tok = tokens(text);
  if (tok.empty()) throw Error(ErrorCode::ParseError, "empty graph file");
  const std::uint64_t n = parse_count(tok[0], "the vertex count");
  if ((tok.size() - 1) % 2) throw Error(ErrorCode::ParseError, "edge lines must hold two vertices");
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t t = 1; t + 1 < tok.size(); t += 2) {
    const auto i = parse_count(tok[t], "an edge endpoint"), j = parse_count(tok[t + 1], "an edge endpoint");
    if (!(i < j && j < n)) {
      throw Error(ErrorCode::ParseError, "edge '" + tok[t] + " " + tok[t + 1] + "' needs 0 <= i < j < " + std::to_string(n));
    }
    edges.emplace_back(i, j);
  }
  return FiniteGraph(n, edges);
}

std::string format_graph(const FiniteGraph& g) {
  std::ostringstream out;
  out << g.vertices() << '\n';
  for (auto [i, j] : g.edges()) out << i << ' ' << j << '\n';
  return out.str();
}

HaltingTable parse_halting_table(const std::string& text) {
  HaltingTable table;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(strip_comment(line));
    std::string e, t, extra;
    if (!(ls >> e)) continue;
    if (!(ls >> t) || (ls >> extra)) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected 'e t' or 'e -'");
    }
    const auto program = parse_count(e, "a program index");
    if (table.entries().count(program)) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": duplicate program " + e);
    }
    if (t == "-") {
      table.set(program, std::nullopt);
    } else {
      table.set(program, parse_count(t, "a halting step"));
    }
  }
  return table;
}

std::string format_halting_table(const HaltingTable& table) {
  std::ostringstream out;
  for (const auto& [e, t] : table.entries()) {
    out << e << ' ';
    if (t) {
      out << *t;
    } else {
      out << '-';
    }
    out << '\n';
  }
  return out.str();
}

std::vector<SpectrumEntry> parse_spectrum(const std::string& text) {
  const auto tok = tokens(text);
  if (tok.size() % 2) throw Error(ErrorCode::ParseError, "spectrum lines must be 'value mass'");
  std::vector<SpectrumEntry> out;
  for (std::size_t t = 0; t < tok.size(); t += 2) out.push_back({parse_rational(tok[t]), parse_rational(tok[t + 1])});
  return out;
}

std::string format_spectrum(const std::vector<SpectrumEntry>& spectrum) {
  std::ostringstream out;
  for (const auto& e : spectrum) out << to_string(e.value) << ' ' << to_string(e.mass) << '\n';
  return out.str();
}

std::string format_pgm(const StepGraphon& w, std::size_t resolution) {
  const std::size_t k = w.parts();
  if (resolution < k) {
    throw Error(ErrorCode::InvalidArgument, "resolution " + std::to_string(resolution) + " is below the part count " +
                                                std::to_string(k));
  }
  std::vector<unsigned char> shade;
  for (const auto& v : w.palette()) {
    Rational p = Rational(255) * (1 - v) + Rational(1, 2);
    Integer r = p.get_num() / p.get_den();
    shade.push_back(static_cast<unsigned char>(r.get_ui()));
  }
  // Pixel centre (2r+1)/(2·res) lies in part floor((2r+1)k / (2·res)).
  std::vector<std::size_t> part(resolution);
  for (std::size_t r = 0; r < resolution; ++r) part[r] = (2 * r + 1) * k / (2 * resolution);
  std::string out = "P5\n" + std::to_string(resolution) + " " + std::to_string(resolution) + "\n255\n";
  out.reserve(out.size() + resolution * resolution);
  for (std::size_t r = 0; r < resolution; ++r) {
    for (std::size_t c = 0; c < resolution; ++c) out.push_back(static_cast<char>(shade[w.level(part[r], part[c])]));
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorCode::IoError, "short write to " + path.string());
}

StepGraphon read_step_graphon(const std::filesystem::path& path) { return parse_step_graphon(read_text_file(path)); }
FiniteGraph read_graph(const std::filesystem::path& path) { return parse_graph(read_text_file(path)); }

StepGraphon read_graphon_any(const std::filesystem::path& path) {
  if (path.extension() == ".g") return graphon_of_graph(read_graph(path));
  return read_step_graphon(path);
}

GraphonName read_name_directory(const std::filesystem::path& dir) {
  std::istringstream in(read_text_file(dir / kNameManifest));
  std::string line;
  std::optional<MetricTag> tag;
  TailPolicy tail = TailPolicy::None;
  std::vector<StepGraphon> elements;
  while (std::getline(in, line)) {
    line = strip_comment(line);
    if (line.empty()) continue;
    if (!tag) {
      tag = parse_metric_tag(line);
    } else if (line == "tail=repeat-last") {
      tail = TailPolicy::RepeatLast;
    } else {
      elements.push_back(read_graphon_any(dir / line));
    }
  }
  if (!tag) throw Error(ErrorCode::ParseError, "name manifest has no tag line");
  if (elements.empty()) throw Error(ErrorCode::ParseError, "name manifest lists no elements");
  return GraphonName::from_elements(*tag, std::move(elements), tail);
}

void write_name_directory(const std::filesystem::path& dir, const GraphonName& name, std::size_t count) {
  std::filesystem::create_directories(dir);
  std::ostringstream manifest;
  manifest << to_string(name.tag()) << '\n';
  if (name.tail() == TailPolicy::RepeatLast) manifest << "tail=repeat-last\n";
  for (std::size_t j = 0; j < count; ++j) {
    std::ostringstream file;
    file << "s" << j << ".sg";
    write_text_file(dir / file.str(), format_step_graphon(name.element(j)));
    manifest << file.str() << '\n';
  }
  write_text_file(dir / kNameManifest, manifest.str());
}

}  // namespace graphonlab
