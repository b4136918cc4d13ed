#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "noiselab/cli.hpp"
#include "noiselab/estimators.hpp"
#include "noiselab/families.hpp"
#include "noiselab/fourier.hpp"
#include "noiselab/giant.hpp"
#include "noiselab/graphs.hpp"
#include "noiselab/moments.hpp"
#include "noiselab/patterns.hpp"
#include "noiselab/poisson.hpp"
#include "noiselab/sampling.hpp"
#include "noiselab/witness.hpp"

namespace py = pybind11;
using namespace noiselab;

namespace {

WitnessKind parse_kind(const std::string& kind) {
    if (kind == "one") return WitnessKind::One;
    if (kind == "zero") return WitnessKind::Zero;
    throw std::invalid_argument("witness kind must be 'one' or 'zero'");
}

GraphProperty make_property(const std::string& property, std::uint32_t n, std::uint32_t k,
                            double a, double b, const std::string& pattern_text) {
    if (property == "min-degree") return property_min_degree(n, k);
    if (property == "cycle-range") return property_cycle_in_range(n, a, b);
    if (property == "clique") return property_clique(n, k);
    if (property == "contains") return property_contains(parse_pattern(pattern_text), n);
    throw std::invalid_argument("unknown property: " + property);
}

PatternGraph make_pattern(const std::string& kind, std::uint32_t size,
                          const std::string& pattern_text) {
    if (kind == "clique") return pattern_clique(size);
    if (kind == "cycle") return pattern_cycle(size);
    if (kind == "disjoint-edges") return pattern_disjoint_edges(size);
    if (kind == "two-triangles-path") return pattern_two_triangles_path(size);
    if (kind == "text") return parse_pattern(pattern_text);
    throw std::invalid_argument("unknown pattern kind: " + kind);
}

py::dict estimate_dict(const Estimate& e) {
    py::dict d;
    d["value"] = e.value;
    d["stderr"] = e.stderr_;
    d["samples"] = e.samples;
    d["seed"] = e.seed;
    d["degenerate"] = e.degenerate;
    return d;
}

}  // namespace

PYBIND11_MODULE(_noiselab, m) {
    m.doc() = "noise sensitivity of monotone Boolean functions and random graph properties";

    py::class_<BooleanFunction>(m, "BooleanFunction")
        .def_property_readonly("arity", &BooleanFunction::arity)
        .def_property_readonly("monotone", &BooleanFunction::monotone)
        .def_property_readonly("name", &BooleanFunction::name)
        .def_property_readonly("truth_table_backed", &BooleanFunction::has_table)
        .def("eval",
             [](const BooleanFunction& f, const std::vector<int>& bits) {
                 if (bits.size() != f.arity()) throw std::invalid_argument("wrong arity");
                 Configuration w(bits.size());
                 for (std::size_t i = 0; i < bits.size(); ++i) w.set(i, bits[i] != 0);
                 return f.eval(w);
             })
        .def("check_monotone", [](const BooleanFunction& f) { return f.check_monotone(); });

    m.def("tribes",
          [](std::size_t blocks, std::size_t block_size, bool reversed) {
              return make_tribes(TribesSpec{blocks, block_size, reversed});
          },
          py::arg("blocks"), py::arg("block_size"), py::arg("reversed") = false);
    m.def("recmaj",
          [](unsigned fanout, unsigned depth) { return make_recmaj(RecMajSpec{fanout, depth}); },
          py::arg("fanout"), py::arg("depth"));
    m.def("compose", &make_composition, py::arg("outer"), py::arg("inner"));

    m.def("tribes_prob_one",
          [](std::size_t blocks, std::size_t block_size, bool reversed, double p) {
              return tribes_prob_one(TribesSpec{blocks, block_size, reversed}, p);
          },
          py::arg("blocks"), py::arg("block_size"), py::arg("reversed"), py::arg("p"));
    m.def("tribes_bias_solve",
          [](std::size_t blocks, std::size_t block_size, bool reversed, double target) {
              return tribes_bias_solve(TribesSpec{blocks, block_size, reversed}, target);
          },
          py::arg("blocks"), py::arg("block_size"), py::arg("reversed"), py::arg("target"));
    m.def("recmaj_conditioned_prob", &recmaj_conditioned_prob, py::arg("fanout"), py::arg("depth"),
          py::arg("eps"), py::arg("p") = 0.5);
    m.def("iterate_h", &iterate_h, py::arg("x0"), py::arg("k"));
    m.def("iterate_h_offset", &iterate_h_offset, py::arg("d0"), py::arg("k"));

    m.def("sample_bits",
          [](std::size_t n, double p, std::uint64_t master_seed, std::uint64_t stream_id) {
              RandomStream s(master_seed, stream_id);
              const Configuration c = sample_configuration(n, p, s);
              std::vector<int> bits(n);
              for (std::size_t i = 0; i < n; ++i) bits[i] = c.test(i) ? 1 : 0;
              return bits;
          },
          py::arg("n"), py::arg("p"), py::arg("master_seed"), py::arg("stream_id") = 0);
    m.def("noise_bits",
          [](const std::vector<int>& bits, double p, double eps, std::uint64_t master_seed,
             std::uint64_t stream_id) {
              Configuration w(bits.size());
              for (std::size_t i = 0; i < bits.size(); ++i) w.set(i, bits[i] != 0);
              RandomStream s(master_seed, stream_id);
              const Configuration noised = apply_noise(w, {p, eps}, s);
              std::vector<int> out(bits.size());
              for (std::size_t i = 0; i < bits.size(); ++i) out[i] = noised.test(i) ? 1 : 0;
              return out;
          },
          py::arg("bits"), py::arg("p"), py::arg("eps"), py::arg("master_seed"),
          py::arg("stream_id") = 0);
    m.def("conditioned_pair_bits",
          [](std::size_t n, const std::vector<std::uint32_t>& witness, double p, double eps,
             std::uint64_t master_seed, std::uint64_t stream_id, bool pin_to_one) {
              RandomStream s(master_seed, stream_id);
              Configuration base = sample_configuration(n, p, s);
              auto [omega, noised] = apply_noise_conditioned(base, witness, {p, eps}, s, pin_to_one);
              std::vector<int> a(n), b(n);
              for (std::size_t i = 0; i < n; ++i) {
                  a[i] = omega.test(i) ? 1 : 0;
                  b[i] = noised.test(i) ? 1 : 0;
              }
              return py::make_tuple(a, b);
          },
          py::arg("n"), py::arg("witness"), py::arg("p"), py::arg("eps"), py::arg("master_seed"),
          py::arg("stream_id") = 0, py::arg("pin_to_one") = true);

    m.def("spectrum",
          [](const BooleanFunction& f, double p) {
              return fourier_transform(f.materialize_table(), p).coeffs;
          },
          py::arg("f"), py::arg("p"));
    m.def("influences",
          [](const BooleanFunction& f, double p) { return influences(f.materialize_table(), p); },
          py::arg("f"), py::arg("p"));
    m.def("noise_covariance_exact",
          [](const BooleanFunction& f, double p, double eps) {
              return noise_covariance_exact(fourier_transform(f.materialize_table(), p), eps);
          },
          py::arg("f"), py::arg("p"), py::arg("eps"));
    m.def("pivotal_report",
          [](const BooleanFunction& f, double p) {
              const PivotalReport rep = pivotal_report(f.materialize_table(), p);
              py::dict d;
              d["influences"] = rep.influences;
              d["expected_pivotals"] = rep.expected_pivotals;
              d["expected_pivotals_given_one"] = rep.expected_pivotals_given_one;
              d["expected_pivotals_given_zero"] = rep.expected_pivotals_given_zero;
              d["prob_one"] = rep.prob_one;
              d["degenerate"] = rep.degenerate;
              d["lemma_gap"] = rep.lemma_gap;
              return d;
          },
          py::arg("f"), py::arg("p"));

    m.def("enumerate_witnesses",
          [](const BooleanFunction& f, const std::string& kind) {
              return enumerate_witnesses(f.materialize_table(), parse_kind(kind)).witnesses;
          },
          py::arg("f"), py::arg("kind") = "one");
    m.def("sns_gap",
          [](const BooleanFunction& f, double p, double eps, std::uint64_t samples,
             std::uint64_t seed, const std::string& kind,
             const std::vector<std::vector<std::uint32_t>>& witnesses, unsigned workers) {
              WitnessSet set;
              set.kind = parse_kind(kind);
              if (witnesses.empty()) {
                  set = enumerate_witnesses(f.materialize_table(), set.kind);
              } else {
                  set.witnesses = witnesses;
              }
              const SnsReport rep = sns_gap(f, set, {p, eps}, samples, seed, {workers});
              py::dict d;
              d["prob_value"] = rep.prob_value;
              d["max_gap"] = rep.max_gap;
              d["max_gap_stderr"] = rep.max_gap_stderr;
              d["degenerate"] = rep.degenerate;
              py::list gaps;
              for (const auto& g : rep.gaps) {
                  py::dict gd;
                  gd["witness"] = g.witness;
                  gd["conditioned"] = g.conditioned;
                  gd["conditioned_stderr"] = g.conditioned_stderr;
                  gd["gap"] = g.gap;
                  gd["gap_stderr"] = g.gap_stderr;
                  gaps.append(gd);
              }
              d["gaps"] = gaps;
              return d;
          },
          py::arg("f"), py::arg("p"), py::arg("eps"), py::arg("samples"), py::arg("seed"),
          py::arg("kind") = "one", py::arg("witnesses") = std::vector<std::vector<std::uint32_t>>{},
          py::arg("workers") = 0);

    m.def("estimate_covariance",
          [](const BooleanFunction& f, double p, double eps, std::uint64_t samples,
             std::uint64_t seed, unsigned workers) {
              DenseSampler sampler(f, p);
              return estimate_dict(estimate_covariance(sampler, eps, samples, seed, {workers}));
          },
          py::arg("f"), py::arg("p"), py::arg("eps"), py::arg("samples"), py::arg("seed"),
          py::arg("workers") = 0);
    m.def("sweep",
          [](const BooleanFunction& f, double p, const std::vector<double>& grid,
             std::uint64_t samples, std::uint64_t seed, unsigned workers) {
              DenseSampler sampler(f, p);
              const SweepResult res = sweep_eps(sampler, grid, samples, seed, {workers});
              py::list rows;
              for (const auto& row : res.rows) {
                  py::dict d;
                  d["eps"] = row.eps;
                  d["covariance"] = row.covariance.value;
                  d["stderr"] = row.covariance.stderr_;
                  d["correlation"] = row.correlation;
                  d["flip"] = row.flip;
                  rows.append(d);
              }
              return rows;
          },
          py::arg("f"), py::arg("p"), py::arg("grid"), py::arg("samples"), py::arg("seed"),
          py::arg("workers") = 0);

    m.def("graph_estimate",
          [](const std::string& property, std::uint32_t n, std::uint32_t k, double a, double b,
             const std::string& pattern_text, double p, double eps, std::uint64_t samples,
             std::uint64_t seed, unsigned workers) {
              const GraphProperty prop = make_property(property, n, k, a, b, pattern_text);
              GraphSampler sampler(prop, p);
              const double grid[1] = {eps};
              const PairCounts counts = collect_pair_counts(sampler, grid, samples, seed, {workers});
              const PairStatistics st = pair_statistics(counts, 0);
              py::dict d;
              d["prob_one"] = counts.prob_base();
              d["covariance"] = st.covariance;
              d["covariance_stderr"] = st.covariance_stderr;
              d["correlation"] = st.correlation;
              d["conditional"] = st.conditional;
              d["gap"] = st.gap;
              d["gap_stderr"] = st.gap_stderr;
              d["flip"] = st.flip;
              d["inconclusive"] = counts.inconclusive[0];
              d["degenerate"] = st.degenerate;
              return d;
          },
          py::arg("property"), py::arg("n"), py::arg("k") = 1, py::arg("a") = 1.0,
          py::arg("b") = 2.0, py::arg("pattern_text") = "", py::arg("p") = 0.5, py::arg("eps") = 0.1,
          py::arg("samples") = 1000, py::arg("seed") = 1, py::arg("workers") = 0);

    m.def("graph_witness_gap",
          [](const std::string& property, std::uint32_t n, std::uint32_t k, double a, double b,
             const std::string& pattern_text, double p, double eps, std::uint64_t samples,
             std::uint64_t seed, unsigned workers) {
              const GraphProperty prop = make_property(property, n, k, a, b, pattern_text);
              const bool zero_side = !prop.canonical_zero_witness.empty();
              const auto& witness =
                  zero_side ? prop.canonical_zero_witness : prop.canonical_one_witness;
              const GraphWitnessGap g =
                  graph_witness_gap(prop, p, eps, witness, !zero_side, samples, seed, {workers});
              py::dict d;
              d["conditioned"] = g.conditioned;
              d["conditioned_stderr"] = g.conditioned_stderr;
              d["base"] = g.base;
              d["gap"] = g.gap;
              d["gap_stderr"] = g.gap_stderr;
              d["pinned_value"] = zero_side ? 0 : 1;
              d["degenerate"] = g.degenerate;
              return d;
          },
          py::arg("property"), py::arg("n"), py::arg("k") = 1, py::arg("a") = 1.0,
          py::arg("b") = 2.0, py::arg("pattern_text") = "", py::arg("p") = 0.5, py::arg("eps") = 0.1,
          py::arg("samples") = 1000, py::arg("seed") = 1, py::arg("workers") = 0);

    m.def("balanced",
          [](const std::string& kind, std::uint32_t size, const std::string& pattern_text) {
              const BalanceFlags f = strictly_balanced(make_pattern(kind, size, pattern_text));
              py::dict d;
              d["balanced"] = f.balanced;
              d["strictly_balanced"] = f.strictly_balanced;
              d["density"] = f.density;
              d["max_proper_density"] = f.max_proper_density;
              return d;
          },
          py::arg("kind"), py::arg("size") = 0, py::arg("pattern_text") = "");

    m.def("expected_cliques", &expected_cliques, py::arg("n"), py::arg("k"), py::arg("p"));
    m.def("clique_bias_for_mean", &clique_bias_for_mean, py::arg("n"), py::arg("k"),
          py::arg("target"));
    m.def("expected_cycles_in_range", &expected_cycles_in_range, py::arg("n"), py::arg("p"),
          py::arg("a"), py::arg("b"));
    m.def("expected_copies",
          [](const std::string& kind, std::uint32_t size, const std::string& pattern_text,
             std::uint64_t n, double p) {
              return expected_copies(make_pattern(kind, size, pattern_text), n, p);
          },
          py::arg("kind"), py::arg("size"), py::arg("pattern_text"), py::arg("n"), py::arg("p"));
    m.def("clique_overlap_moments",
          [](std::uint64_t n, std::uint64_t k, double p) {
              const CliqueMoments mom = clique_overlap_moments(n, k, p);
              py::dict d;
              d["expected"] = mom.expected;
              d["delta"] = mom.delta;
              d["delta_sum"] = mom.delta_sum;
              d["variance_bound"] = mom.variance_bound;
              d["delta_ratio"] = mom.delta_ratio;
              d["negligible_overlap"] = mom.negligible_overlap;
              return d;
          },
          py::arg("n"), py::arg("k"), py::arg("p"));
    m.def("two_clique_overlap_term", &two_clique_overlap_term, py::arg("n"), py::arg("k"),
          py::arg("p"), py::arg("i"), py::arg("j"));
    m.def("binomial_poisson_tv", &binomial_poisson_tv, py::arg("n"), py::arg("q"));

    m.def("poisson_check",
          [](const std::string& kind, std::uint32_t size, const std::string& pattern_text,
             std::uint32_t n, double p, std::uint64_t samples, std::uint64_t seed,
             unsigned workers) {
              const PoissonDiagnostics diag = poisson_diagnostics(
                  make_pattern(kind, size, pattern_text), n, p, samples, seed, {workers});
              py::dict d;
              d["lambda"] = diag.lambda;
              d["mean"] = diag.mean;
              d["variance"] = diag.variance;
              d["conditional_mean"] = diag.conditional_mean;
              d["tv_bound"] = diag.tv_bound;
              d["empirical_tv"] = diag.empirical_tv;
              d["empirical_tv_stderr"] = diag.empirical_tv_stderr;
              d["prob_positive"] = diag.prob_positive;
              d["nondegenerate"] = diag.nondegenerate;
              return d;
          },
          py::arg("kind"), py::arg("size"), py::arg("pattern_text"), py::arg("n"), py::arg("p"),
          py::arg("samples"), py::arg("seed"), py::arg("workers") = 0);

    m.def("giant_robustness",
          [](std::uint32_t n, double lam, double eps, std::uint32_t k, std::uint64_t samples,
             std::uint64_t seed, unsigned workers) {
              const GiantRobustnessReport rep =
                  giant_robustness_experiment(n, lam, eps, k, samples, seed, {workers});
              py::dict d;
              d["prob_event"] = rep.prob_event;
              d["conditional"] = rep.conditional;
              d["gap"] = rep.gap;
              d["gap_stderr"] = rep.gap_stderr;
              d["degenerate"] = rep.degenerate;
              d["mean_triangles"] = rep.mean_triangles;
              d["frac_pairs_far"] = rep.frac_pairs_far;
              d["path_success"] = rep.path_success;
              d["path_length"] = rep.path_length;
              return d;
          },
          py::arg("n"), py::arg("lam"), py::arg("eps"), py::arg("k"), py::arg("samples"),
          py::arg("seed"), py::arg("workers") = 0);

    m.def("edge_index", &edge_index, py::arg("n"), py::arg("u"), py::arg("v"));
    m.def("edge_pair", &edge_pair, py::arg("n"), py::arg("index"));

    m.def("run_cli", [](const std::vector<std::string>& args) { return cli::run(args); },
          py::arg("args"));
}
