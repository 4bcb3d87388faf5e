#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "graphonlab/constructions.hpp"
#include "graphonlab/densities.hpp"
#include "graphonlab/error.hpp"
#include "graphonlab/formats.hpp"
#include "graphonlab/metrics.hpp"
#include "graphonlab/names.hpp"
#include "graphonlab/parallel.hpp"
#include "graphonlab/sampling.hpp"
#include "manifest.hpp"
#include "suites.hpp"

using namespace graphonlab;
namespace fs = std::filesystem;

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitCertificate = 3;

void print(cli::RunManifest& m, const std::string& key, const Rational& value, bool labelled = true) {
  std::cout << (labelled ? key + " " : "") << to_display(value) << '\n';
  m.result(key, to_string(value));
}

void write_output(cli::RunManifest& m, const fs::path& path, const std::string& content) {
  write_text_file(path, content);
  m.output(path);
}

// Text tables hold "e t" / "e -" lines; .json tables map ids to a step or null.
HaltingTable load_table(const fs::path& path) {
  const std::string text = read_text_file(path);
  if (path.extension() != ".json") return parse_halting_table(text);
  HaltingTable table;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "halting table JSON must be an object of id -> step|null");
  for (const auto& [key, value] : doc.items()) {
    std::uint64_t e = 0;
    try {
      std::size_t used = 0;
      e = std::stoull(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "program id '" + key + "' is not a non-negative integer");
    }
    if (value.is_null() || (value.is_string() && value.get<std::string>() == "-")) {
      table.set(e, std::nullopt);
    } else if (value.is_number_unsigned()) {
      table.set(e, value.get<std::uint64_t>());
    } else {
      throw Error(ErrorCode::ParseError, "halting step for program " + key + " must be a positive integer or null");
    }
  }
  return table;
}

struct Globals {
  unsigned threads = 1;
  std::string manifest;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graphonlab: exact computations on step graphons"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--threads", g.threads, "worker threads (results do not depend on it)")->check(CLI::Range(1u, 256u));
  app.add_option("--manifest", g.manifest, "write a JSON run manifest here");

  std::vector<std::string> args(argv, argv + argc);
  cli::RunManifest manifest(args);
  std::function<int()> action;

  // dist
  auto* dist = app.add_subcommand("dist", "distance between two step graphons");
  std::string metric, a_path, b_path;
  std::size_t blowup_limit = 2, trunc = 20;
  std::uint64_t budget = 2000, seed = 0;
  dist->add_option("--metric", metric)->required()->check(CLI::IsMember({"d1", "d2", "dsquare", "deltabound", "dw"}));
  dist->add_option("A", a_path)->required()->check(CLI::ExistingFile);
  dist->add_option("B", b_path)->required()->check(CLI::ExistingFile);
  dist->add_option("--blowup-limit", blowup_limit);
  dist->add_option("--budget", budget);
  dist->add_option("--trunc", trunc);
  dist->add_option("--seed", seed);
  dist->callback([&] {
    action = [&] {
      const StepGraphon a = read_graphon_any(a_path), b = read_graphon_any(b_path);
      manifest.input(a_path);
      manifest.input(b_path);
      if (metric == "d1") {
        print(manifest, "d1", d1(a, b), false);
      } else if (metric == "d2") {
        print(manifest, "d2", d2(a, b), false);
      } else if (metric == "dsquare") {
        const CutNormBounds bounds = d_square_bounds(a, b);
        if (bounds.exact()) {
          print(manifest, "dsquare", bounds.lower, false);
        } else {
          print(manifest, "lower", bounds.lower);
          print(manifest, "upper", bounds.upper);
        }
      } else if (metric == "deltabound") {
        manifest.seed("seed", seed);
        DeltaBoundOptions opt;
        opt.blowup_limit = blowup_limit;
        opt.budget = budget;
        opt.seed = seed;
        const DeltaBound db = delta_bound(a, b, opt);
        print(manifest, "lower", db.lower);
        print(manifest, "upper", db.upper);
        std::cout << "upper_kind " << (db.upper_kind == UpperKind::Exact ? "exact" : "certified") << '\n';
        if (db.witness) std::cout << "witness_blowup " << db.witness->blowup << '\n';
      } else {
        const TruncatedDistance d = d_w_truncated(a, b, trunc);
        print(manifest, "dw", d.value);
        print(manifest, "tail", d.tail);
      }
      return 0;
    };
  });

  // tind
  auto* tind = app.add_subcommand("tind", "induced density t_ind(F, W)");
  std::string graph_path, graphon_path;
  std::uint64_t mc_trials = 0;
  tind->add_option("--graph", graph_path)->required()->check(CLI::ExistingFile);
  tind->add_option("--graphon", graphon_path)->required()->check(CLI::ExistingFile);
  tind->add_option("--mc", mc_trials, "Monte Carlo trials instead of the exact sum");
  tind->add_option("--seed", seed);
  tind->callback([&] {
    action = [&] {
      const FiniteGraph f = read_graph(graph_path);
      const StepGraphon w = read_graphon_any(graphon_path);
      manifest.input(graph_path);
      manifest.input(graphon_path);
      if (mc_trials == 0) {
        print(manifest, "tind", t_ind_exact(f, w), false);
      } else {
        manifest.seed("seed", seed);
        const MonteCarloEstimate est = t_ind_mc(f, w, mc_trials, seed);
        print(manifest, "estimate", est.estimate);
        print(manifest, "stderr", est.stderr_bound);
      }
      return 0;
    };
  });

  // sample
  auto* sample = app.add_subcommand("sample", "draw G(n, W)");
  std::size_t n_vertices = 0;
  std::string out_path;
  sample->add_option("--graphon", graphon_path)->required()->check(CLI::ExistingFile);
  sample->add_option("-n", n_vertices)->required();
  sample->add_option("--seed", seed)->required();
  sample->add_option("-o", out_path);
  sample->callback([&] {
    action = [&] {
      const StepGraphon w = read_graphon_any(graphon_path);
      manifest.input(graphon_path);
      manifest.seed("seed", seed);
      RandomSource rs(seed);
      const std::string text = format_graph(sample_graph(w, n_vertices, rs));
      if (out_path.empty()) {
        std::cout << text;
      } else {
        write_output(manifest, out_path, text);
      }
      return 0;
    };
  });

  // questionnaire
  auto* quest = app.add_subcommand("questionnaire", "questionnaire-model sample");
  unsigned questions = 0;
  quest->add_option("-n", n_vertices)->required();
  quest->add_option("-Q", questions)->required()->check(CLI::Range(1u, 63u));
  quest->add_option("--seed", seed)->required();
  quest->add_option("-o", out_path);
  quest->callback([&] {
    action = [&] {
      manifest.seed("seed", seed);
      RandomSource rs(seed);
      const QuestionnaireSample q = questionnaire_sample(n_vertices, questions, rs);
      print(manifest, "tv_bound", q.tv_bound);
      const std::string text = format_graph(q.graph);
      if (out_path.empty()) {
        std::cout << text;
      } else {
        write_output(manifest, out_path, text);
      }
      return 0;
    };
  });

  // name transform / validate
  auto* name = app.add_subcommand("name", "graphon names");
  name->require_subcommand(1);
  auto* transform = name->add_subcommand("transform", "convert a name between metrics");
  std::string from_tag, to_tag, in_dir, out_dir;
  std::size_t count = 3;
  transform->add_option("--from", from_tag)->required();
  transform->add_option("--to", to_tag)->required();
  transform->add_option("--in", in_dir)->required()->check(CLI::ExistingDirectory);
  transform->add_option("--out", out_dir)->required();
  transform->add_option("--seed", seed);
  transform->add_option("--budget", budget);
  transform->add_option("--count", count, "output elements to write");
  transform->callback([&] {
    action = [&] {
      const MetricTag from = parse_metric_tag(from_tag), to = parse_metric_tag(to_tag);
      GraphonName input = read_name_directory(in_dir);
      manifest.input(in_dir);
      if (input.tag() != from) {
        throw Error(ErrorCode::InvalidArgument,
                    std::string("directory holds a ") + to_string(input.tag()) + " name, not " + to_string(from));
      }
      std::optional<GraphonName> out;
      using T = MetricTag;
      if ((from == T::D1 && to == T::DSquare) || (from == T::DSquare && to == T::DeltaSquare)) {
        out = weaken_name(input, from, to);
      } else if (from == T::DeltaSquare && to == T::DW) {
        out = name_delta_to_dw(input);
      } else if (from == T::DW && to == T::DeltaSquare) {
        manifest.seed("seed", seed);
        out = name_dw_to_delta(input, seed);
      } else if (from == T::DeltaSquare && to == T::DSquare) {
        SectionOptions opt;
        opt.align.budget = budget;
        opt.align.seed = seed;
        out = section_delta_to_dsquare(input, opt);
      } else if (from == T::DSquare && to == T::D1) {
        out = randomfree_d1_name(input);
      } else {
        throw Error(ErrorCode::IllegalWeakening,
                    std::string("no transformation from ") + to_string(from) + " to " + to_string(to));
      }
      write_name_directory(out_dir, *out, count);
      manifest.output(out_dir);
      std::cout << "wrote " << count << " elements of a " << to_string(out->tag()) << " name to " << out_dir << '\n';
      return 0;
    };
  });
  auto* validate = name->add_subcommand("validate", "check dist(s_j, s_l) <= 2^-j on a prefix");
  std::size_t prefix = 0;
  validate->add_option("--in", in_dir)->required()->check(CLI::ExistingDirectory);
  validate->add_option("-m", prefix)->required()->check(CLI::Range(std::size_t{2}, std::size_t{64}));
  validate->callback([&] {
    action = [&] {
      manifest.input(in_dir);
      const ValidationReport r = validate_name_prefix(read_name_directory(in_dir), prefix);
      std::cout << to_string(r.status) << ": " << r.detail << " (" << r.pairs_checked << " pairs)\n";
      if (r.status != ValidationStatus::Ok) {
        std::cout << "pair " << r.j << " " << r.l << " evidence " << to_display(r.evidence) << '\n';
      }
      manifest.result("status", to_string(r.status));
      return r.status == ValidationStatus::Violation ? kExitInvalid : 0;
    };
  });

  // construct fractal / halting
  auto* construct = app.add_subcommand("construct", "explicit constructions");
  construct->require_subcommand(1);
  auto* fractal = construct->add_subcommand("fractal", "nested diagonal construction");
  unsigned depth = 0;
  std::string render_path;
  fractal->add_option("-d", depth)->required()->check(CLI::Range(1u, 10u));
  fractal->add_option("--render", render_path, "dense .sg render (depth <= 4)");
  fractal->callback([&] {
    action = [&] {
      const FractalStage st = fractal_stage(depth);
      std::cout << "parts 2^" << depth * (depth + 1) / 2 << '\n';
      print(manifest, "white", st.white_measure());
      print(manifest, "black", st.black_measure());
      if (!render_path.empty()) write_output(manifest, render_path, format_step_graphon(render_dense(st)));
      return 0;
    };
  });
  auto* halting = construct->add_subcommand("halting", "truncated halting-set graphon");
  std::string table_path;
  std::size_t max_program = 0;
  std::uint64_t stage = 0;
  unsigned approx = 2;
  halting->add_option("--table", table_path)->required()->check(CLI::ExistingFile);
  halting->add_option("-E", max_program)->required();
  halting->add_option("-s", stage)->required();
  halting->add_option("--approx", approx);
  halting->add_option("-o", out_path)->required();
  halting->callback([&] {
    action = [&] {
      manifest.input(table_path);
      const StepGraphon w = halting_graphon(load_table(table_path), max_program, stage, approx);
      write_output(manifest, out_path, format_step_graphon(w));
      std::cout << "parts " << w.parts() << '\n';
      print(manifest, "tail_measure", halting_tail_measure(max_program));
      return 0;
    };
  });

  // spectrum / decode
  auto* spectrum = app.add_subcommand("spectrum", "value spectrum of a step graphon");
  spectrum->add_option("W", graphon_path)->required()->check(CLI::ExistingFile);
  spectrum->add_option("-o", out_path);
  spectrum->callback([&] {
    action = [&] {
      manifest.input(graphon_path);
      const std::string text = format_spectrum(value_spectrum(read_graphon_any(graphon_path)));
      if (out_path.empty()) {
        std::cout << text;
      } else {
        write_output(manifest, out_path, text);
      }
      return 0;
    };
  });
  auto* decode = app.add_subcommand("decode", "divergent programs from a spectrum");
  std::string spectrum_path;
  decode->add_option("--spectrum", spectrum_path)->required()->check(CLI::ExistingFile);
  decode->add_option("-E", max_program)->required();
  decode->callback([&] {
    action = [&] {
      manifest.input(spectrum_path);
      const auto ids = decode_halting(parse_spectrum(read_text_file(spectrum_path)), max_program);
      std::string line;
      for (auto e : ids) line += (line.empty() ? "" : " ") + std::to_string(e);
      std::cout << "divergent " << (line.empty() ? "(none)" : line) << '\n';
      manifest.result("divergent", line);
      return 0;
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "run a property suite");
  std::string suite;
  bool json = false;
  verify->add_option("suite", suite)->required();
  verify->add_option("--table", table_path)->check(CLI::ExistingFile);
  verify->add_option("--seed", seed);
  verify->add_flag("--json", json);
  verify->callback([&] {
    action = [&] {
      suites::SuiteOptions opt;
      if (verify->count("--seed")) opt.seed = seed;
      if (!table_path.empty()) {
        opt.table = load_table(table_path);
        manifest.input(table_path);
      }
      manifest.seed("seed", opt.seed);
      const suites::Report report = suites::run_suite(suite, opt);
      std::cout << (json ? suites::format_report_json(report) : suites::format_report(report));
      manifest.result("passed", report.passed() ? "true" : "false");
      return report.passed() ? 0 : kExitVerifyFailed;
    };
  });

  // render
  auto* render = app.add_subcommand("render", "greyscale PGM of a step graphon");
  std::size_t resolution = 0;
  render->add_option("W", graphon_path)->required()->check(CLI::ExistingFile);
  render->add_option("--resolution", resolution)->required();
  render->add_option("-o", out_path)->required();
  render->callback([&] {
    action = [&] {
      manifest.input(graphon_path);
      write_output(manifest, out_path, format_pgm(read_graphon_any(graphon_path), resolution));
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  set_thread_count(g.threads);
  try {
    const int code = action();
    if (!g.manifest.empty()) manifest.write(g.manifest);
    return code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_certificate_failure(e.code()) ? kExitCertificate : kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}
