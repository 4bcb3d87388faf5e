#include "suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "graphonlab/densities.hpp"
#include "graphonlab/error.hpp"
#include "graphonlab/metrics.hpp"
#include "graphonlab/names.hpp"
#include "graphonlab/reference.hpp"
#include "graphonlab/sampling.hpp"

namespace graphonlab::suites {

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string dec(const Rational& r, int digits = 6) { return to_decimal(r, digits); }

std::string secs(double s) {
  std::ostringstream out;
  out.precision(2);
  out << std::fixed << s << " s";
  return out.str();
}

std::size_t uniform(RandomSource& rs, std::size_t n) { return part_of_word(n, rs.next_u64()); }

StepGraphon random_graphon(RandomSource& rs, std::size_t k, unsigned denominator) {
  return StepGraphon::from_function(k, [&](std::size_t, std::size_t) {
    return Rational(static_cast<long>(uniform(rs, denominator + 1)), static_cast<long>(denominator));
  });
}

StepGraphon random_graphon(RandomSource& rs, std::size_t max_parts) {
  const std::size_t k = 1 + uniform(rs, max_parts);
  return random_graphon(rs, k, 1 + static_cast<unsigned>(uniform(rs, 12)));
}

Permutation random_permutation(RandomSource& rs, std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[uniform(rs, i)]);
  return Permutation(std::move(p));
}

FiniteGraph random_graph(RandomSource& rs, std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rs.next_u64() >> 63) edges.emplace_back(i, j);
    }
  }
  return FiniteGraph(n, edges);
}

// Even-length medians average the two middle values.
Rational median(std::vector<Rational> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  if (n % 2) return xs[n / 2];
  return (xs[n / 2 - 1] + xs[n / 2]) / 2;
}

Check verdict(std::string name, bool ok, std::string detail) { return {std::move(name), ok, std::move(detail)}; }

// A failed check that names the first counterexample.
struct Failures {
  std::size_t count = 0;
  std::string first;

  void add(const std::string& what) {
    if (count++ == 0) first = what;
  }
  bool none() const { return count == 0; }
  std::string suffix() const { return none() ? "" : "; " + std::to_string(count) + " failures, first: " + first; }
};

HaltingTable acceptance_table() {
  HaltingTable t;
  t.set(0, 3);
  t.set(1, std::nullopt);
  t.set(2, 7);
  t.set(3, std::nullopt);
  return t;
}

FiniteGraph paw() { return FiniteGraph(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}}); }

// ---- acceptance criteria -------------------------------------------------

Check ac_cut_norm_oracle(std::uint64_t seed) {
  const auto t0 = Clock::now();
  RandomSource rs = RandomSource(seed).derive(1);
  Failures bad;
  std::size_t pairs = 0;
  auto compare = [&](const SignedStepFunction& f, const std::string& label) {
    const Rational brute = reference::cut_norm_brute(f);
    const Rational fast = cut_norm(f).value;
    CutNormOptions plain;
    plain.compress = false;
    const Rational direct = cut_norm(f, plain).value;
    if (brute != fast || brute != direct) {
      bad.add(label + " brute " + to_string(brute) + " fast " + to_string(fast) + " plain " + to_string(direct));
    }
    ++pairs;
  };
  for (int i = 0; i < 200; ++i) {
    const std::size_t k = 1 + uniform(rs, 8);
    const auto u = random_graphon(rs, k, 1 + static_cast<unsigned>(uniform(rs, 12)));
    const auto v = random_graphon(rs, k, 1 + static_cast<unsigned>(uniform(rs, 12)));
    compare(aligned_difference(u, v), "pair " + std::to_string(i) + " k=" + std::to_string(k));
  }
  for (int i = 0; i < 20; ++i) {
    const std::size_t k = 9 + uniform(rs, 4);
    const auto u = random_graphon(rs, k, 1 + static_cast<unsigned>(uniform(rs, 12)));
    const auto v = random_graphon(rs, k, 1 + static_cast<unsigned>(uniform(rs, 12)));
    compare(aligned_difference(u, v), "large pair " + std::to_string(i) + " k=" + std::to_string(k));
  }
  const double s = seconds_since(t0);
  return verdict("AC1 cut-norm oracle equivalence", bad.none() && s < 60,
                 std::to_string(pairs) + " pairs equal exactly, " + secs(s) + " (limit 60 s)" + bad.suffix());
}

Check ac_metric_chain(std::uint64_t seed) {
  RandomSource rs = RandomSource(seed).derive(2);
  Failures bad;
  for (int i = 0; i < 500; ++i) {
    const auto u = random_graphon(rs, 5), v = random_graphon(rs, 5);
    DeltaBoundOptions opt;
    opt.seed = static_cast<std::uint64_t>(i);
    const DeltaBound db = delta_bound(u, v, opt);
    const Rational ds = d_square(u, v), l1 = d1(u, v);
    if (!(db.lower <= db.upper && db.upper <= ds && ds <= l1)) {
      bad.add("pair " + std::to_string(i) + ": " + to_string(db.lower) + " <= " + to_string(db.upper) + " <= " +
              to_string(ds) + " <= " + to_string(l1));
    }
  }
  for (int i = 0; i < 200; ++i) {
    const auto a = random_graphon(rs, 4), b = random_graphon(rs, 4), c = random_graphon(rs, 4);
    if (d1(a, c) > d1(a, b) + d1(b, c)) bad.add("d1 triangle, triple " + std::to_string(i));
    if (d_square(a, c) > d_square(a, b) + d_square(b, c)) bad.add("cut triangle, triple " + std::to_string(i));
  }
  return verdict("AC2 metric chain", bad.none(),
                 "500 pairs lower <= upper <= d_cut <= d1, 200 triples triangle-exact" + bad.suffix());
}

Check ac_counting_lemma(std::uint64_t seed) {
  RandomSource rs = RandomSource(seed).derive(3);
  Failures bad;
  const std::uint64_t graphs = first_index_with_vertices(5);
  Rational worst_ratio = 0;
  for (int i = 0; i < 100; ++i) {
    const auto u = random_graphon(rs, 5), v = random_graphon(rs, 5);
    const Rational ds = d_square(u, v);
    for (std::uint64_t idx = 0; idx < graphs; ++idx) {
      const FiniteGraph f = enumerate_graph(idx);
      const Rational gap = abs(t_ind_exact(f, u) - t_ind_exact(f, v));
      const Rational bound = counting_bound(f, ds);
      if (gap > bound) bad.add("pair " + std::to_string(i) + " graph " + std::to_string(idx));
      if (bound > 0) worst_ratio = std::max(worst_ratio, Rational(gap / bound));
    }
  }
  return verdict("AC3 counting lemma", bad.none(),
                 std::to_string(graphs) + " graphs x 100 pairs, max gap/bound " + dec(worst_ratio) + bad.suffix());
}

Check ac_weak_regularity(std::uint64_t seed) {
  RandomSource rs = RandomSource(seed).derive(4);
  Failures bad;
  Rational tightest = 0;
  for (int i = 0; i < 20; ++i) {
    const auto u = random_graphon(rs, 16, 8);
    Rational prev_l2 = d2(stepping(u, DyadicLevel{0}), u);
    for (unsigned n = 1; n <= 4; ++n) {
      const StepGraphon un = stepping(u, DyadicLevel{n});
      const Rational ds = d_square(un, u);
      // ds ≤ 8/√n  ⇔  n·ds² ≤ 64
      if (Rational(n) * ds * ds > 64) bad.add("graphon " + std::to_string(i) + " n=" + std::to_string(n));
      tightest = std::max(tightest, ds);
      const Rational l2 = d2(un, u);
      if (l2 > prev_l2) bad.add("L2 increase, graphon " + std::to_string(i) + " n=" + std::to_string(n));
      prev_l2 = l2;
    }
  }
  return verdict("AC4 weak regularity", bad.none(),
                 "20 graphons on 16 parts, n=1..4, largest d_cut " + dec(tightest) + " vs 8/sqrt(n) >= 4" + bad.suffix());
}

Check ac_martingale(std::uint64_t seed) {
  RandomSource rs = RandomSource(seed).derive(5);
  Failures bad;
  const Rational eps = pow2(-10);
  for (int i = 0; i < 10; ++i) {
    const auto u = random_graphon(rs, 8, 1 + static_cast<unsigned>(uniform(rs, 12)));
    const GraphonName name = canonical_name(u, MetricTag::DSquare);
    for (unsigned n = 0; n <= 3; ++n) {
      const MartingaleLevel lvl = martingale_from_dsquare_name(name, DyadicLevel{n}, eps);
      const StepGraphon exact = stepping(u, DyadicLevel{n});
      const std::size_t big_k = martingale_source_index(n, eps);
      if (lvl.err != pow2(2 * static_cast<long>(n) - static_cast<long>(big_k)) || lvl.err > eps) {
        bad.add("err mismatch graphon " + std::to_string(i) + " n=" + std::to_string(n));
      }
      if (lvl.graphon.parts() != exact.parts()) {
        bad.add("part count graphon " + std::to_string(i));
        continue;
      }
      for (std::size_t a = 0; a < exact.parts(); ++a) {
        for (std::size_t b = 0; b < exact.parts(); ++b) {
          if (abs(lvl.graphon.value(a, b) - exact.value(a, b)) > lvl.err) {
            bad.add("cell gap graphon " + std::to_string(i) + " n=" + std::to_string(n));
          }
        }
      }
    }
  }
  return verdict("AC5 martingale extraction", bad.none(),
                 "10 graphons on 8 parts, n=0..3, eps=2^-10, cellwise within 4^n 2^-K" + bad.suffix());
}

Check ac_random_free(std::uint64_t) {
  const StepGraphon w = render_dense(fractal_stage(3));
  const GraphonName rf = randomfree_d1_name(canonical_name(w, MetricTag::DSquare));
  const ValidationReport report = validate_name_prefix(rf, 7);
  Failures bad;
  if (report.status != ValidationStatus::Ok) bad.add("validation " + std::string(to_string(report.status)) + ": " + report.detail);
  for (unsigned n = 0; n <= 6; ++n) {
    const StepGraphon st = stepping(w, DyadicLevel{n});
    if (randomfree_d1_distance(st) != d1(st, w)) bad.add("formula mismatch at level " + std::to_string(n));
  }
  return verdict("AC6 random-free pipeline", bad.none(),
                 "D1 name validated on " + std::to_string(report.pairs_checked) +
                     " pairs to depth 6; 2p(1-p) formula exact at levels 0..6" + bad.suffix());
}

Check ac_gadget(std::uint64_t) {
  Failures bad;
  std::string levels;
  for (std::uint64_t t : {1, 3, 7}) {
    HaltingTable table;
    table.set(0, t);
    const SemidecideResult r = randomfree_semidecide(prop46_gadget_name(0, table), t + 6);
    if (!r.not_random_free) bad.add("halting at " + std::to_string(t) + " not flagged within " + std::to_string(t + 6));
    levels += (levels.empty() ? "" : ", ") + std::string("t=") + std::to_string(t) + " at " + std::to_string(r.level);
  }
  HaltingTable table;
  table.set(0, std::nullopt);
  const SemidecideResult r = randomfree_semidecide(prop46_gadget_name(0, table), 1000);
  if (r.not_random_free) bad.add("divergent program flagged at " + std::to_string(r.level));
  return verdict("AC7 co-c.e. gadget", bad.none(),
                 "flagged " + levels + "; divergent undecided at budget 1000" + bad.suffix());
}

struct HaltingCase {
  HaltingTable table;
  std::size_t max_program;
  std::uint64_t stage;
};

std::set<std::uint64_t> divergent_set(const HaltingTable& table, std::size_t max_program, std::uint64_t stage) {
  std::set<std::uint64_t> out;
  for (std::uint64_t e = 0; e <= max_program; ++e) {
    if (!table.halted_by(e, stage)) out.insert(e);
  }
  return out;
}

std::string set_string(const std::set<std::uint64_t>& s) {
  std::string out = "{";
  for (auto e : s) out += (out.size() > 1 ? "," : "") + std::to_string(e);
  return out + "}";
}

Check halting_roundtrip(const HaltingCase& hc, const std::set<std::uint64_t>& expected, const std::string& name) {
  Failures bad;
  const StepGraphon w = halting_graphon(hc.table, hc.max_program, hc.stage);
  const auto decoded = decode_halting(value_spectrum(w), hc.max_program);
  if (decoded != expected) bad.add("decoded " + set_string(decoded) + " expected " + set_string(expected));
  for (std::uint64_t s = 1; s <= 6; ++s) {
    const CutNormBounds b =
        d_square_bounds(halting_graphon(hc.table, hc.max_program, s), halting_graphon(hc.table, hc.max_program, s + 1));
    if (!b.exact()) bad.add("stage " + std::to_string(s) + " cut norm not exact");
    if (b.upper > pow2(1 - static_cast<long>(s))) {
      bad.add("stage " + std::to_string(s) + " distance " + to_string(b.upper) + " above 2^-" + std::to_string(s - 1));
    }
  }
  return verdict(name, bad.none(),
                 "decode = " + set_string(decoded) + ", stage chain s=1..6 exact within 2^-(s-1)" + bad.suffix());
}

Check ac_fractal(std::uint64_t seed) {
  Failures bad;
  for (unsigned d = 1; d <= 4; ++d) {
    const FractalStage st = fractal_stage(d);
    const Rational white = 1 - average(render_dense(st));
    if (white != fractal_white_product(d) || white != st.white_measure()) bad.add("white measure at depth " + std::to_string(d));
  }
  if (fractal_white_product(1) != Rational(1, 2) || fractal_white_product(2) != Rational(3, 8) ||
      fractal_white_product(3) != Rational(21, 64)) {
    bad.add("w1, w2, w3 differ from 1/2, 3/8, 21/64");
  }
  // Independent enclosure: P_200 · (1 − 2^-200) ≤ α ≤ P_200.
  Rational p200 = 1;
  for (long n = 1; n <= 200; ++n) p200 *= 1 - pow2(-n);
  const RationalInterval enc = fractal_white_limit(Rational(1, 1000000000));
  if (enc.width() > Rational(1, 1000000000)) bad.add("enclosure wider than 1e-9");
  if (!(enc.lo <= p200 * (1 - pow2(-200)) && p200 <= enc.hi)) bad.add("enclosure misses the product value");
  const Rational quoted = parse_rational("0.2887880950866");
  if (!(enc.lo <= quoted + Rational(1, 10000000000000) && quoted - Rational(1, 10000000000000) <= enc.hi)) {
    bad.add("enclosure misses 0.2887880950866");
  }
  // Questionnaire: 2000 independent pairs, edge iff some answer agrees.
  const RandomSource base = RandomSource(seed).derive(9);
  std::uint64_t hits = 0;
  const std::uint64_t trials = 2000;
  for (std::uint64_t i = 0; i < trials; ++i) {
    RandomSource local = base.derive(i);
    hits += questionnaire_sample(2, 6, local).graph.edge_count();
  }
  const Rational p = 1 - fractal_white_product(6);
  const Rational gap = Rational(static_cast<long>(hits)) - Rational(static_cast<long>(trials)) * p;
  const Rational var = Rational(static_cast<long>(trials)) * p * (1 - p);
  if (gap * gap > 9 * var) bad.add("questionnaire density outside 3 sigma");
  return verdict("AC9 fractal measures", bad.none(),
                 "w_d exact for d=1..4; alpha in [" + dec(enc.lo, 12) + ", " + dec(enc.hi, 12) +
                     "]; questionnaire density " + dec(Rational(static_cast<long>(hits), static_cast<long>(trials)), 4) +
                     " vs " + dec(p, 4) + bad.suffix());
}

GraphonName shuffled_blowups(const FiniteGraph& g, std::size_t factor, std::uint64_t seed) {
  const RandomSource base(seed);
  return GraphonName(MetricTag::DeltaSquare, [g, factor, base](std::size_t j) {
    RandomSource local = base.derive(j);
    const FiniteGraph b = g.blown_up(factor);
    return graphon_of_graph(b.permuted(random_permutation(local, b.vertices())));
  });
}

Check ac_section(std::uint64_t seed) {
  const GraphonName input = shuffled_blowups(paw(), 2, RandomSource(seed).derive(10).next_u64());
  SectionChain chain(input);
  Failures bad;
  std::string certs;
  for (std::size_t n = 0; n <= 4; ++n) {
    const Rational cert = chain.certificate(n);
    const Rational exact = d_square(graphon_of_graph(chain.graph(n + 1)), graphon_of_graph(chain.graph(n)));
    if (cert != exact) bad.add("certificate " + std::to_string(n) + " is not the exact cut norm");
    if (cert > SectionChain::step_bound(n)) bad.add("certificate " + std::to_string(n) + " above 45*2^-n");
    certs += (certs.empty() ? "" : ",") + to_string(cert);
  }
  for (std::size_t n = 0; n <= 5; ++n) {
    const auto h = graph_of_graphon(input.element(SectionChain::source_index(n)));
    AlignOptions exact;
    exact.mode = AlignMode::Exact;
    if (!h || hat_delta(chain.graph(n), *h, exact).upper != 0) bad.add("step " + std::to_string(n) + " not aligned to 0");
  }
  return verdict("AC10 section algorithm", bad.none(),
                 "certificates n=0..4: " + certs + "; exhaustive alignment upper 0 at n=0..5" + bad.suffix());
}

// Frozen from the pre-build simulation (300 replicates of the 30-seed median
// at k = 256: max 0.0364).
const Rational kSamplingMedianThreshold(1, 25);

Check ac_sampling(std::uint64_t seed) {
  const StepGraphon w = make_step_graphon(2, {{Rational(1), Rational(0)}, {Rational(0), Rational(0)}});
  std::vector<Rational> medians;
  std::string detail;
  Failures bad;
  for (std::size_t k : {16, 64, 256}) {
    std::vector<Rational> uppers;
    for (std::uint64_t s = 0; s < 30; ++s) {
      RandomSource rs = RandomSource(seed).derive(1000 * k + s);
      const StepGraphon g = empirical_graphon(w, k, rs);
      DeltaBoundOptions opt;
      opt.seed = s;
      opt.max_test_vertices = 3;
      uppers.push_back(delta_bound(w, g, opt).upper);
    }
    medians.push_back(median(uppers));
    const Rational tol = sampling_tolerance(k);
    if (tol <= 1) bad.add("44/sqrt(ln k) not vacuous at k=" + std::to_string(k));
    detail += (detail.empty() ? "" : "; ") + std::string("k=") + std::to_string(k) + " median " + dec(medians.back(), 4) +
              " (44/sqrt(ln k) = " + dec(tol, 2) + ")";
  }
  if (!(medians[0] >= medians[1] && medians[1] >= medians[2])) bad.add("medians increase");
  if (medians[2] > kSamplingMedianThreshold) bad.add("k=256 median above the frozen 0.04");
  return verdict("AC11 sampling map", bad.none(), detail + bad.suffix());
}

Check ac_dw_convergence(std::uint64_t seed) {
  const StepGraphon u =
      make_step_graphon(2, {{Rational(7, 8), Rational(1, 4)}, {Rational(1, 4), Rational(1, 8)}});
  std::vector<Rational> medians;
  std::string detail;
  for (std::size_t n : {8, 32, 128}) {
    std::vector<Rational> ds;
    for (std::uint64_t s = 0; s < 30; ++s) {
      RandomSource rs = RandomSource(seed).derive(2000 * n + s);
      ds.push_back(d_w_truncated(graphon_of_graph(sample_graph(u, n, rs)), u, 20).value);
    }
    medians.push_back(median(ds));
    detail += (detail.empty() ? "" : ", ") + std::string("n=") + std::to_string(n) + " median " + dec(medians.back(), 5);
  }
  const bool ok = medians[0] > medians[1] && medians[1] > medians[2];
  return verdict("AC12 d_w convergence", ok, detail + (ok ? "" : "; medians not decreasing"));
}

Check ac_halting(std::uint64_t) {
  return halting_roundtrip({acceptance_table(), 3, 8}, {1, 3}, "AC8 halting round-trip");
}

// ---- supplementary checks ------------------------------------------------

Check cut_bounds_bracket(std::uint64_t seed) {
  RandomSource rs = RandomSource(seed).derive(21);
  Failures bad;
  for (int i = 0; i < 30; ++i) {
    const std::size_t k = 13 + uniform(rs, 8);
    const auto u = random_graphon(rs, k, 1 + static_cast<unsigned>(uniform(rs, 6)));
    const auto v = random_graphon(rs, k, 1 + static_cast<unsigned>(uniform(rs, 6)));
    const auto f = aligned_difference(u, v);
    const Rational exact = cut_norm(f).value;
    CutNormOptions forced;
    forced.exact_limit = 4;
    const CutNormBounds b = cut_norm_bounds(f, forced);
    if (!(b.lower <= exact && exact <= b.upper)) bad.add("k=" + std::to_string(k) + " exact " + to_string(exact));
  }
  return verdict("certified bounds bracket the exact cut norm", bad.none(), "30 functions on 13..20 parts" + bad.suffix());
}

Check overlay_oracle(std::uint64_t seed) {
  RandomSource rs = RandomSource(seed).derive(22);
  Failures bad;
  for (int i = 0; i < 60; ++i) {
    const auto u = random_graphon(rs, 4), v = random_graphon(rs, 4);
    if (d_square(u, v) != reference::d_square_brute(u, v)) bad.add("d_cut pair " + std::to_string(i));
    if (d1(u, v) != reference::d1_brute(u, v)) bad.add("d1 pair " + std::to_string(i));
  }
  return verdict("overlay distances match the refinement oracle", bad.none(), "60 pairs with k <= 4" + bad.suffix());
}

Check alignment_oracle(std::uint64_t seed) {
  RandomSource rs = RandomSource(seed).derive(23);
  Failures bad;
  for (int i = 0; i < 15; ++i) {
    const std::size_t n = 3 + uniform(rs, 3);
    const auto g = random_graph(rs, n), h = random_graph(rs, n);
    AlignOptions exact;
    exact.mode = AlignMode::Exact;
    const DeltaBound db = hat_delta(g, h, exact);
    if (db.upper != reference::hat_delta_brute(g, h)) bad.add("pair " + std::to_string(i));
  }
  return verdict("exact alignment matches the permutation oracle", bad.none(), "15 graph pairs on 3..5 vertices" + bad.suffix());
}

Check density_oracle(std::uint64_t seed) {
  RandomSource rs = RandomSource(seed).derive(24);
  Failures bad;
  for (int i = 0; i < 30; ++i) {
    const auto w = random_graphon(rs, 4);
    Rational total[5] = {0, 0, 0, 0, 0};
    for (std::uint64_t idx = 0; idx < first_index_with_vertices(5); ++idx) {
      const FiniteGraph f = enumerate_graph(idx);
      const Rational t = t_ind_exact(f, w);
      total[f.vertices()] += t;
      if (t != reference::t_ind_brute(f, w)) bad.add("graphon " + std::to_string(i) + " graph " + std::to_string(idx));
    }
    for (int n = 1; n <= 4; ++n) {
      if (total[n] != 1) bad.add("densities on " + std::to_string(n) + " vertices do not sum to 1");
    }
  }
  return verdict("induced densities match the assignment oracle and sum to 1", bad.none(),
                 "30 graphons, all graphs on 1..4 vertices" + bad.suffix());
}

Check fractal_structure(std::uint64_t seed) {
  Failures bad;
  for (unsigned d = 1; d <= 5; ++d) {
    const MatchingReport m = verify_diagonal_matching(fractal_stage(d));
    if (!m.ok) bad.add("depth " + std::to_string(d) + ": " + m.detail);
  }
  FractalStage broken = fractal_stage(3);
  broken.override_black_cells(2, 0, 1, {{0, 0}, {1, 1}, {2, 2}, {2, 3}});
  if (verify_diagonal_matching(broken).ok) bad.add("injected non-matching not detected");
  if (rectangle_bound_exhaustive(1) != Rational(1, 4)) bad.add("depth-1 white rectangle max is not 1/4");
  if (rectangle_bound_exhaustive(2) > Rational(1, 16)) bad.add("depth-2 white rectangle max above 1/16");
  std::string probes;
  RandomSource rs = RandomSource(seed).derive(25);
  for (unsigned d = 1; d <= 4; ++d) {
    const ProbeResult p = rectangle_bound_probe(d, 64, rs);
    if (!p.passed) bad.add("probe depth " + std::to_string(d) + " found " + to_string(p.max_measure));
    probes += (probes.empty() ? "" : ", ") + to_string(p.max_measure);
  }
  for (unsigned d = 1; d <= 4; ++d) {
    if (randomfree_defect(render_dense(fractal_stage(d))) != 0) bad.add("render defect nonzero at depth " + std::to_string(d));
  }
  return verdict("nested diagonal structure", bad.none(),
                 "matchings at depths 1..5, fault detected, probe maxima " + probes + bad.suffix());
}

Check section_output(std::uint64_t seed) {
  const GraphonName input = shuffled_blowups(paw(), 2, RandomSource(seed).derive(26).next_u64());
  const GraphonName out = section_delta_to_dsquare(input);
  Failures bad;
  const auto g = graph_of_graphon(out.element(0));
  AlignOptions exact;
  exact.mode = AlignMode::Exact;
  if (!g || hat_delta(*g, paw().blown_up(2), exact).upper != 0) bad.add("output element 0 not weakly isomorphic to the input");
  const ValidationReport r = validate_name_prefix(out, 3);
  if (r.status != ValidationStatus::Ok) bad.add("output prefix: " + r.detail);
  return verdict("section output name", bad.none(), "element 0 aligned to the source, d_cut prefix of 3 validated" + bad.suffix());
}

Check gadget_names_valid(std::uint64_t) {
  Failures bad;
  for (std::optional<std::uint64_t> t : {std::optional<std::uint64_t>(2), std::optional<std::uint64_t>(5), std::optional<std::uint64_t>()}) {
    HaltingTable table;
    table.set(4, t);
    const ValidationReport r = validate_name_prefix(prop46_gadget_name(4, table), 12);
    if (r.status != ValidationStatus::Ok) bad.add("gadget name invalid: " + r.detail);
  }
  return verdict("gadget sequences are D1 names", bad.none(), "prefixes of 12, three tables" + bad.suffix());
}

Check random_free_not_flagged(std::uint64_t) {
  const StepGraphon w = render_dense(fractal_stage(3));
  const SemidecideResult r = randomfree_semidecide(randomfree_d1_name(canonical_name(w, MetricTag::DSquare)), 12);
  return verdict("random-free name never flagged", !r.not_random_free, "budget 12, last lower bound " + dec(r.lower_bound));
}

Check spectrum_invariants(const HaltingCase& hc) {
  Failures bad;
  const auto spectrum = value_spectrum(halting_graphon(hc.table, hc.max_program, hc.stage));
  Rational mass = 0;
  for (const auto& e : spectrum) mass += e.mass;
  if (mass != 1) bad.add("masses sum to " + to_string(mass));
  std::set<Rational> levels;
  std::size_t count = 0;
  for (std::size_t n = 0; n <= hc.max_program; ++n) {
    const HaltingLevels l = halting_levels(n);
    levels.insert({l.low, l.mid, l.high});
    count += 3;
  }
  if (levels.size() != count) bad.add("level triples collide");
  return verdict("spectrum invariants", bad.none(), std::to_string(spectrum.size()) + " values, level triples disjoint" + bad.suffix());
}

Check sampling_determinism(std::uint64_t seed) {
  const StepGraphon w = make_step_graphon(2, {{Rational(3, 4), Rational(1, 3)}, {Rational(1, 3), Rational(1, 2)}});
  RandomSource a(seed), b(seed);
  const bool same = sample_graph(w, 40, a) == sample_graph(w, 40, b);
  RandomSource c(seed);
  const auto q1 = questionnaire_sample(12, 5, c);
  RandomSource d(seed);
  const auto q2 = questionnaire_sample(12, 5, d);
  return verdict("seeded sampling is reproducible", same && q1.graph == q2.graph && q1.answers == q2.answers,
                 "graph and questionnaire samples repeat bit for bit");
}

HaltingCase case_from_table(const HaltingTable& table) {
  std::size_t max_program = 0;
  std::uint64_t stage = 1;
  for (const auto& [e, t] : table.entries()) {
    max_program = std::max<std::size_t>(max_program, e);
    if (t) stage = std::max(stage, *t);
  }
  if (max_program > kDefaultBlockLimit) {
    throw Error(ErrorCode::BlockLimitExceeded, "table programs above " + std::to_string(kDefaultBlockLimit));
  }
  return {table, max_program, stage};
}

using SuiteBody = std::function<std::vector<Check>(const SuiteOptions&)>;

const std::vector<std::pair<std::string, SuiteBody>>& registry() {
  static const std::vector<std::pair<std::string, SuiteBody>> suites = {
      {"cut-norm-oracle", [](const SuiteOptions& o) {
         return std::vector<Check>{ac_cut_norm_oracle(o.seed), cut_bounds_bracket(o.seed), overlay_oracle(o.seed)};
       }},
      {"metric-chain", [](const SuiteOptions& o) {
         return std::vector<Check>{ac_metric_chain(o.seed), alignment_oracle(o.seed)};
       }},
      {"counting-lemma", [](const SuiteOptions& o) {
         return std::vector<Check>{ac_counting_lemma(o.seed), density_oracle(o.seed)};
       }},
      {"weak-regularity", [](const SuiteOptions& o) { return std::vector<Check>{ac_weak_regularity(o.seed)}; }},
      {"martingale", [](const SuiteOptions& o) { return std::vector<Check>{ac_martingale(o.seed)}; }},
      {"random-free", [](const SuiteOptions& o) {
         return std::vector<Check>{ac_random_free(o.seed), random_free_not_flagged(o.seed)};
       }},
      {"gadget", [](const SuiteOptions& o) {
         return std::vector<Check>{ac_gadget(o.seed), gadget_names_valid(o.seed)};
       }},
      {"halting-roundtrip", [](const SuiteOptions& o) {
         const HaltingCase hc = case_from_table(o.table ? *o.table : acceptance_table());
         const HaltingCase at = {hc.table, hc.max_program, hc.stage + 1};
         return std::vector<Check>{
             halting_roundtrip(at, divergent_set(at.table, at.max_program, at.stage), "decode after every halt"),
             spectrum_invariants(at)};
       }},
      {"fractal", [](const SuiteOptions& o) {
         return std::vector<Check>{ac_fractal(o.seed), fractal_structure(o.seed)};
       }},
      {"section", [](const SuiteOptions& o) {
         return std::vector<Check>{ac_section(o.seed), section_output(o.seed)};
       }},
      {"sampling", [](const SuiteOptions& o) {
         return std::vector<Check>{ac_sampling(o.seed), sampling_determinism(o.seed)};
       }},
      {"dw-convergence", [](const SuiteOptions& o) { return std::vector<Check>{ac_dw_convergence(o.seed)}; }},
      {"acceptance", [](const SuiteOptions& o) { return acceptance(o); }},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, body] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

std::vector<Check> acceptance(const SuiteOptions& options) {
  const std::uint64_t s = options.seed;
  return {ac_cut_norm_oracle(s), ac_metric_chain(s), ac_counting_lemma(s), ac_weak_regularity(s),
          ac_martingale(s),      ac_random_free(s),  ac_gadget(s),         ac_halting(s),
          ac_fractal(s),         ac_section(s),      ac_sampling(s),       ac_dw_convergence(s)};
}

Report run_suite(const std::string& name, const SuiteOptions& options) {
  for (const auto& [suite, body] : registry()) {
    if (suite != name) continue;
    const auto t0 = Clock::now();
    Report report{name, body(options), 0};
    report.seconds = seconds_since(t0);
    return report;
  }
  std::string known;
  for (const auto& n : suite_names()) known += " " + n;
  throw Error(ErrorCode::UnknownSuite, "'" + name + "'; known suites:" + known);
}

std::string format_report(const Report& report) {
  std::ostringstream out;
  std::size_t passed = 0;
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    passed += c.passed;
  }
  out << "suite " << report.suite << ": " << passed << "/" << report.checks.size() << " passed in "
      << secs(report.seconds) << '\n';
  return out.str();
}

std::string format_report_json(const Report& report) {
  nlohmann::json j;
  j["suite"] = report.suite;
  j["passed"] = report.passed();
  j["seconds"] = report.seconds;
  for (const auto& c : report.checks) j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return j.dump(2) + "\n";
}

}  // namespace graphonlab::suites
