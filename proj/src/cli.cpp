#include "noiselab/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "noiselab/estimators.hpp"
#include "noiselab/families.hpp"
#include "noiselab/fourier.hpp"
#include "noiselab/giant.hpp"
#include "noiselab/graphs.hpp"
#include "noiselab/moments.hpp"
#include "noiselab/patterns.hpp"
#include "noiselab/poisson.hpp"
#include "noiselab/witness.hpp"

namespace noiselab::cli {

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kUsageError = 1;
constexpr int kDegenerate = 2;

void write_output(const std::string& path, const std::string& body) {
    if (path.empty() || path == "-") {
        std::cout << body;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << body;
}

// ---- family specs -------------------------------------------------------

struct FamilyFlags {
    std::string family = "tribes";
    std::size_t blocks = 2;
    std::size_t block_size = 2;
    unsigned fanout = 3;
    unsigned depth = 2;
    std::string outer;  // compact tokens for composition, e.g. "recmaj:3:2"
    std::string inner;
};

BooleanFunction build_token(const std::string& token);

BooleanFunction build_family(const FamilyFlags& ff, json* meta) {
    BooleanFunction f = [&]() {
        if (ff.family == "tribes" || ff.family == "tribes-rev") {
            TribesSpec spec{ff.blocks, ff.block_size, ff.family == "tribes-rev"};
            return make_tribes(spec);
        }
        if (ff.family == "recmaj") return make_recmaj(RecMajSpec{ff.fanout, ff.depth});
        if (ff.family == "dictator") return make_tribes(TribesSpec{1, 1, false});
        if (ff.family == "composition") {
            if (ff.outer.empty() || ff.inner.empty())
                throw CLI::ValidationError("--family composition needs --outer and --inner");
            return make_composition(build_token(ff.outer), build_token(ff.inner));
        }
        throw CLI::ValidationError("unknown family: " + ff.family);
    }();
    if (meta) {
        (*meta)["family"] = ff.family;
        (*meta)["name"] = f.name();
        (*meta)["arity"] = f.arity();
        if (ff.family == "tribes" || ff.family == "tribes-rev") {
            (*meta)["blocks"] = ff.blocks;
            (*meta)["block_size"] = ff.block_size;
        } else if (ff.family == "recmaj") {
            (*meta)["fanout"] = ff.fanout;
            (*meta)["depth"] = ff.depth;
        } else if (ff.family == "composition") {
            (*meta)["outer"] = ff.outer;
            (*meta)["inner"] = ff.inner;
        }
    }
    return f;
}

// Compact tokens: "tribes:BLOCKS:BITS", "tribes-rev:BLOCKS:BITS",
// "recmaj:FANOUT:DEPTH", "dictator".
BooleanFunction build_token(const std::string& token) {
    std::vector<std::string> parts;
    std::stringstream ss(token);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.empty()) throw CLI::ValidationError("empty family token");
    FamilyFlags ff;
    ff.family = parts[0];
    if (ff.family == "tribes" || ff.family == "tribes-rev") {
        if (parts.size() != 3) throw CLI::ValidationError("token: tribes:BLOCKS:BITS");
        ff.blocks = std::stoul(parts[1]);
        ff.block_size = std::stoul(parts[2]);
    } else if (ff.family == "recmaj") {
        if (parts.size() != 3) throw CLI::ValidationError("token: recmaj:FANOUT:DEPTH");
        ff.fanout = static_cast<unsigned>(std::stoul(parts[1]));
        ff.depth = static_cast<unsigned>(std::stoul(parts[2]));
    } else if (ff.family != "dictator") {
        throw CLI::ValidationError("unknown family token: " + parts[0]);
    }
    return build_family(ff, nullptr);
}

void add_family_flags(CLI::App* cmd, FamilyFlags& ff) {
    cmd->add_option("--family", ff.family,
                    "tribes | tribes-rev | recmaj | dictator | composition");
    cmd->add_option("--blocks", ff.blocks, "tribes: number of blocks");
    cmd->add_option("--block-size", ff.block_size, "tribes: bits per block");
    cmd->add_option("--fanout", ff.fanout, "recmaj: fanout (3 or 5)");
    cmd->add_option("--depth", ff.depth, "recmaj: tree depth");
    cmd->add_option("--outer", ff.outer, "composition: outer token, e.g. recmaj:5:2");
    cmd->add_option("--inner", ff.inner, "composition: inner token, e.g. tribes:4:3");
}

json family_config(const FamilyFlags& ff) {
    json meta;
    build_family(ff, &meta);
    return meta;
}

// ---- graph property specs -----------------------------------------------

struct PropertyFlags {
    std::string property = "min-degree";  // min-degree | cycle-range | clique | contains
    std::uint32_t n = 1000;
    std::uint32_t k = 1;
    double a = 1.0, b = 2.0;
    std::string pattern_file;
    double p = -1.0;       // explicit bias, set from the shared --p when given
    double lambda = -1.0;  // p = lambda / n
    double plog = NAN;     // p = (log n + plog) / n
    double xi = NAN;       // p = (1 + xi) / n
    std::uint64_t cycle_budget = 4'000'000;
};

// The shared --p option doubles as the explicit edge probability; commands
// with property flags copy it into PropertyFlags when the user set it.
void add_property_flags(CLI::App* cmd, PropertyFlags& pf) {
    cmd->add_option("--property", pf.property, "min-degree | cycle-range | clique | contains");
    cmd->add_option("--n", pf.n, "vertex count");
    cmd->add_option("--k", pf.k, "min-degree bound / clique size");
    cmd->add_option("--a", pf.a, "cycle window lower multiplier of n^(1/3)");
    cmd->add_option("--b", pf.b, "cycle window upper multiplier of n^(1/3)");
    cmd->add_option("--pattern-file", pf.pattern_file, "edge-list file for contains");
    cmd->add_option("--lambda", pf.lambda, "edge probability lambda/n");
    cmd->add_option("--plog", pf.plog, "edge probability (log n + plog)/n");
    cmd->add_option("--xi", pf.xi, "edge probability (1+xi)/n around the critical window");
    cmd->add_option("--cycle-budget", pf.cycle_budget, "work budget per cycle search");
}

PatternGraph load_pattern_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open pattern file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_pattern(ss.str());
}

double resolve_bias(const PropertyFlags& pf) {
    const double n = static_cast<double>(pf.n);
    if (pf.p > 0.0) return pf.p;
    if (pf.lambda > 0.0) return pf.lambda / n;
    if (!std::isnan(pf.plog)) return (std::log(n) + pf.plog) / n;
    if (!std::isnan(pf.xi)) return (1.0 + pf.xi) / n;
    // Defaults to the property's critical scale.
    if (pf.property == "cycle-range") return 1.0 / n;
    if (pf.property == "min-degree") return std::log(n) / n;
    throw CLI::ValidationError("no bias given: use --p, --lambda, --plog or --xi");
}

GraphProperty build_property(const PropertyFlags& pf) {
    if (pf.property == "min-degree") return property_min_degree(pf.n, pf.k);
    if (pf.property == "cycle-range")
        return property_cycle_in_range(pf.n, pf.a, pf.b, pf.cycle_budget);
    if (pf.property == "clique") return property_clique(pf.n, pf.k);
    if (pf.property == "contains") {
        if (pf.pattern_file.empty()) throw CLI::ValidationError("contains needs --pattern-file");
        return property_contains(load_pattern_file(pf.pattern_file), pf.n);
    }
    throw CLI::ValidationError("unknown property: " + pf.property);
}

json property_config(const PropertyFlags& pf, double p) {
    json cfg{{"property", pf.property}, {"n", pf.n}, {"p", p}};
    if (pf.property == "min-degree" || pf.property == "clique") cfg["k"] = pf.k;
    if (pf.property == "cycle-range") {
        cfg["a"] = pf.a;
        cfg["b"] = pf.b;
    }
    if (!pf.pattern_file.empty()) cfg["pattern_file"] = pf.pattern_file;
    return cfg;
}

// ---- pattern specs (poisson-check / balanced) ----------------------------

struct PatternFlags {
    std::uint32_t clique = 0;
    std::uint32_t disjoint_edges = 0;
    std::uint32_t two_triangles_path = 0;
    std::uint32_t cycle = 0;
    std::string pattern_file;
};

void add_pattern_flags(CLI::App* cmd, PatternFlags& pf) {
    cmd->add_option("--clique", pf.clique, "pattern: complete graph K_k");
    cmd->add_option("--disjoint-edges", pf.disjoint_edges, "pattern: m disjoint edges");
    cmd->add_option("--two-triangles-path", pf.two_triangles_path,
                    "pattern: two triangles joined by a path of this length");
    cmd->add_option("--cycle", pf.cycle, "pattern: cycle of this length");
    cmd->add_option("--pattern-file", pf.pattern_file, "edge-list file: 'k l' then 'u v' lines");
}

PatternGraph build_pattern(const PatternFlags& pf, json* cfg) {
    PatternGraph h;
    if (pf.clique > 0) h = pattern_clique(pf.clique);
    else if (pf.disjoint_edges > 0) h = pattern_disjoint_edges(pf.disjoint_edges);
    else if (pf.two_triangles_path > 0) h = pattern_two_triangles_path(pf.two_triangles_path);
    else if (pf.cycle > 0) h = pattern_cycle(pf.cycle);
    else if (!pf.pattern_file.empty()) h = load_pattern_file(pf.pattern_file);
    else throw CLI::ValidationError("no pattern given");
    if (cfg) {
        (*cfg)["pattern"] = h.name;
        (*cfg)["pattern_vertices"] = h.k;
        (*cfg)["pattern_edges"] = h.edge_count();
    }
    return h;
}

// ---- eps grids ------------------------------------------------------------

std::vector<double> parse_eps_grid(const std::string& text, double center) {
    std::vector<double> grid;
    if (text == "auto") {
        // Log grid spanning a decade on each side of the critical scale.
        for (double mult : {0.1, 0.31622776601683794, 1.0, 3.1622776601683795, 10.0}) {
            const double eps = center * mult;
            if (eps > 0.0 && eps <= 1.0) grid.push_back(eps);
        }
        if (grid.empty()) throw CLI::ValidationError("auto grid collapsed; give explicit --eps-grid");
        return grid;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) grid.push_back(std::stod(item));
    return grid;
}

double auto_grid_center(const std::string& property, std::uint32_t n) {
    if (property == "cycle-range") return std::pow(static_cast<double>(n), -1.0 / 3.0);
    if (property == "min-degree") return 1.0 / std::log(static_cast<double>(n));
    return 0.25;
}

// ---- subcommand payloads ---------------------------------------------------

struct CommonFlags {
    double p = 0.5;
    double eps = 0.2;
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    unsigned workers = 0;
    std::uint64_t budget_cap = 64;
    std::string out;
    CLI::Option* p_option = nullptr;
};

void add_common_flags(CLI::App* cmd, CommonFlags& cf, bool with_eps = true) {
    cf.p_option = cmd->add_option("--p", cf.p, "bit bias p / explicit edge probability");
    if (with_eps) cmd->add_option("--eps", cf.eps, "noise rate eps");
    cmd->add_option("--samples", cf.samples, "Monte Carlo samples");
    cmd->add_option("--seed", cf.seed, "master seed");
    cmd->add_option("--workers", cf.workers, "worker threads (default NOISE_LAB_WORKERS or hardware)");
    cmd->add_option("--budget-cap", cf.budget_cap, "adaptive budget multiplier cap");
    cmd->add_option("--out", cf.out, "output path (default stdout)");
}

std::string csv_with_config(const json& config, const std::string& csv_body) {
    return "# config: " + config.dump() + "\n" + csv_body;
}

}  // namespace

std::string render_json_report(const json& config, const json& results) {
    json report{{"config", config}, {"results", results}};
    return report.dump(2) + "\n";
}

Report parse_json_report(const std::string& text) {
    json report = json::parse(text);
    if (!report.contains("config") || !report.contains("results"))
        throw std::runtime_error("report missing config/results");
    return Report{report["config"], report["results"]};
}

json parse_csv_config(const std::string& text) {
    const std::string prefix = "# config: ";
    if (text.rfind(prefix, 0) != 0) throw std::runtime_error("CSV report missing config comment");
    const auto end = text.find('\n');
    return json::parse(text.substr(prefix.size(), end - prefix.size()));
}

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("noiselab");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

int run(int argc, const char* const* argv) {
    CLI::App app{"noise sensitivity toolkit for monotone Boolean functions and random graphs"};
    app.require_subcommand(1);

    // spectrum -----------------------------------------------------------
    auto* spectrum_cmd = app.add_subcommand(
        "spectrum", "exact biased Fourier coefficients of a family (CSV)");
    FamilyFlags spectrum_family;
    CommonFlags spectrum_common;
    add_family_flags(spectrum_cmd, spectrum_family);
    add_common_flags(spectrum_cmd, spectrum_common, false);

    // influence ----------------------------------------------------------
    auto* influence_cmd =
        app.add_subcommand("influence", "exact per-coordinate influences (CSV)");
    FamilyFlags influence_family;
    CommonFlags influence_common;
    add_family_flags(influence_cmd, influence_family);
    add_common_flags(influence_cmd, influence_common, false);

    // cov ------------------------------------------------------------------
    auto* cov_cmd = app.add_subcommand(
        "cov", "Monte Carlo noise covariance of a family, with exact check when available");
    FamilyFlags cov_family;
    CommonFlags cov_common;
    add_family_flags(cov_cmd, cov_family);
    add_common_flags(cov_cmd, cov_common);

    // sns ------------------------------------------------------------------
    auto* sns_cmd =
        app.add_subcommand("sns", "witness-conditioned noise gaps of a family (JSON)");
    FamilyFlags sns_family;
    CommonFlags sns_common;
    std::string sns_witness = "canonical";
    std::string sns_kind = "one";
    add_family_flags(sns_cmd, sns_family);
    add_common_flags(sns_cmd, sns_common);
    sns_cmd->add_option("--witness", sns_witness, "canonical | enumerate");
    sns_cmd->add_option("--kind", sns_kind, "one | zero");

    // sweep -----------------------------------------------------------------
    auto* sweep_cmd = app.add_subcommand("sweep", "eps sweep (CSV with correlation column)");
    FamilyFlags sweep_family;
    PropertyFlags sweep_property;
    CommonFlags sweep_common;
    std::string sweep_grid = "auto";
    bool sweep_use_property = false;
    add_family_flags(sweep_cmd, sweep_family);
    add_property_flags(sweep_cmd, sweep_property);
    add_common_flags(sweep_cmd, sweep_common, false);
    sweep_cmd->add_option("--eps-grid", sweep_grid,
                          "comma list or 'auto' (log grid on the critical noise scale:"
                          " n^(-1/3) for cycle-range, 1/log n for min-degree)");
    sweep_cmd->add_flag("--use-property", sweep_use_property,
                        "sweep the graph property instead of the family");

    // family ------------------------------------------------------------------
    auto* family_cmd = app.add_subcommand("family", "describe a family and its analytic values");
    FamilyFlags family_family;
    CommonFlags family_common;
    double family_solve_target = -1.0;
    add_family_flags(family_cmd, family_family);
    add_common_flags(family_cmd, family_common);
    family_cmd->add_option("--solve-target", family_solve_target,
                           "solve the tribes bias for P(f=1) = target");

    // graph-prop ---------------------------------------------------------------
    auto* gp_cmd = app.add_subcommand("graph-prop", "single graph-property noise estimate (JSON)");
    PropertyFlags gp_property;
    CommonFlags gp_common;
    std::string gp_witness = "none";
    add_property_flags(gp_cmd, gp_property);
    add_common_flags(gp_cmd, gp_common);
    gp_cmd->add_option("--witness", gp_witness,
                       "none | canonical: also estimate the witness-conditioned gap");

    // poisson-check -------------------------------------------------------------
    auto* pc_cmd = app.add_subcommand("poisson-check", "copy-count Poisson diagnostics (JSON)");
    PatternFlags pc_pattern;
    CommonFlags pc_common;
    std::uint32_t pc_n = 50;
    double pc_solve_mean = -1.0;
    add_pattern_flags(pc_cmd, pc_pattern);
    add_common_flags(pc_cmd, pc_common);
    pc_cmd->add_option("--n", pc_n, "vertex count");
    pc_cmd->add_option("--solve-mean", pc_solve_mean, "solve p for E[X] = target");

    // balanced ---------------------------------------------------------------
    auto* bal_cmd = app.add_subcommand("balanced", "balanced / strictly balanced classifier (JSON)");
    PatternFlags bal_pattern;
    std::string bal_out;
    add_pattern_flags(bal_cmd, bal_pattern);
    bal_cmd->add_option("--out", bal_out, "output path (default stdout)");

    // giant-robustness ----------------------------------------------------------
    auto* giant_cmd =
        app.add_subcommand("giant-robustness", "triangles-in-giant noise robustness (JSON)");
    CommonFlags giant_common;
    std::uint32_t giant_n = 100000;
    double giant_lambda = 10.0;
    std::uint32_t giant_k = 1;
    add_common_flags(giant_cmd, giant_common);
    giant_cmd->add_option("--n", giant_n, "vertex count");
    giant_cmd->add_option("--lambda", giant_lambda, "mean degree; p = lambda/n");
    giant_cmd->add_option("--k", giant_k, "triangle count threshold");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsageError;
    }

    try {
        if (*spectrum_cmd) {
            json cfg = family_config(spectrum_family);
            cfg["subcommand"] = "spectrum";
            cfg["p"] = spectrum_common.p;
            BooleanFunction f = build_family(spectrum_family, nullptr).materialize_table();
            const SpectralTable table = fourier_transform(f, spectrum_common.p);
            write_output(spectrum_common.out, csv_with_config(cfg, spectral_table_csv(table)));
            return kOk;
        }

        if (*influence_cmd) {
            json cfg = family_config(influence_family);
            cfg["subcommand"] = "influence";
            cfg["p"] = influence_common.p;
            BooleanFunction f = build_family(influence_family, nullptr).materialize_table();
            const auto inf = influences(f, influence_common.p);
            std::string body = "index,influence\n";
            char buf[64];
            for (std::size_t i = 0; i < inf.size(); ++i) {
                std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", i, inf[i]);
                body += buf;
            }
            write_output(influence_common.out, csv_with_config(cfg, body));
            return kOk;
        }

        if (*cov_cmd) {
            json cfg = family_config(cov_family);
            cfg["subcommand"] = "cov";
            cfg["p"] = cov_common.p;
            cfg["eps"] = cov_common.eps;
            cfg["samples"] = cov_common.samples;
            cfg["seed"] = cov_common.seed;
            BooleanFunction f = build_family(cov_family, nullptr);
            DenseSampler sampler(f, cov_common.p);
            const double grid[1] = {cov_common.eps};
            const PairCounts counts = collect_pair_counts(
                sampler, grid, cov_common.samples, cov_common.seed, {cov_common.workers});
            const PairStatistics st = pair_statistics(counts, 0);
            json results{{"covariance", st.covariance},
                         {"covariance_stderr", st.covariance_stderr},
                         {"correlation", st.correlation},
                         {"conditional", st.conditional},
                         {"conditional_stderr", st.conditional_stderr},
                         {"gap", st.gap},
                         {"gap_stderr", st.gap_stderr},
                         {"flip", st.flip},
                         {"prob_one", counts.prob_base()},
                         {"degenerate", st.degenerate}};
            if (f.arity() <= BooleanFunction::kMaxTableArity) {
                const SpectralTable table =
                    fourier_transform(f.materialize_table(), cov_common.p);
                results["exact_covariance"] = noise_covariance_exact(table, cov_common.eps);
            }
            write_output(cov_common.out, render_json_report(cfg, results));
            return st.degenerate ? kDegenerate : kOk;
        }

        if (*sns_cmd) {
            json cfg = family_config(sns_family);
            cfg["subcommand"] = "sns";
            cfg["p"] = sns_common.p;
            cfg["eps"] = sns_common.eps;
            cfg["samples"] = sns_common.samples;
            cfg["seed"] = sns_common.seed;
            cfg["witness"] = sns_witness;
            cfg["kind"] = sns_kind;
            BooleanFunction f = build_family(sns_family, nullptr);
            const WitnessKind kind = sns_kind == "zero" ? WitnessKind::Zero : WitnessKind::One;
            WitnessSet witnesses;
            witnesses.kind = kind;
            if (sns_witness == "enumerate") {
                witnesses = enumerate_witnesses(f.materialize_table(), kind);
            } else {
                witnesses.complete = false;
                if (sns_family.family == "tribes" || sns_family.family == "dictator") {
                    TribesSpec spec{sns_family.blocks, sns_family.block_size, false};
                    if (sns_family.family == "dictator") spec = TribesSpec{1, 1, false};
                    witnesses.witnesses.push_back(tribes_canonical_witness(spec, kind));
                } else if (sns_family.family == "recmaj") {
                    witnesses.witnesses.push_back(
                        recmaj_canonical_witness(RecMajSpec{sns_family.fanout, sns_family.depth}, kind));
                } else {
                    throw CLI::ValidationError("canonical witnesses available for tribes/recmaj only");
                }
            }
            const SnsReport rep = sns_gap(f, witnesses, {sns_common.p, sns_common.eps},
                                          sns_common.samples, sns_common.seed,
                                          {sns_common.workers});
            json gaps = json::array();
            for (const auto& g : rep.gaps)
                gaps.push_back(json{{"witness_size", g.witness.size()},
                                    {"conditioned", g.conditioned},
                                    {"conditioned_stderr", g.conditioned_stderr},
                                    {"gap", g.gap},
                                    {"gap_stderr", g.gap_stderr}});
            json results{{"prob_value", rep.prob_value},
                         {"prob_value_stderr", rep.prob_value_stderr},
                         {"gaps", gaps},
                         {"max_gap", rep.max_gap},
                         {"max_gap_stderr", rep.max_gap_stderr},
                         {"max_index", rep.max_index},
                         {"degenerate", rep.degenerate}};
            write_output(sns_common.out, render_json_report(cfg, results));
            return rep.degenerate ? kDegenerate : kOk;
        }

        if (*sweep_cmd) {
            json cfg;
            std::unique_ptr<PairSampler> sampler;
            double center = 0.25;
            if (sweep_use_property) {
                if (sweep_common.p_option->count() > 0) sweep_property.p = sweep_common.p;
                const double p = resolve_bias(sweep_property);
                cfg = property_config(sweep_property, p);
                sampler = std::make_unique<GraphSampler>(build_property(sweep_property), p);
                center = auto_grid_center(sweep_property.property, sweep_property.n);
            } else {
                cfg = family_config(sweep_family);
                cfg["p"] = sweep_common.p;
                sampler = std::make_unique<DenseSampler>(build_family(sweep_family, nullptr),
                                                         sweep_common.p);
            }
            cfg["subcommand"] = "sweep";
            cfg["samples"] = sweep_common.samples;
            cfg["seed"] = sweep_common.seed;
            cfg["eps_grid"] = sweep_grid;
            const std::vector<double> grid = parse_eps_grid(sweep_grid, center);
            const SweepResult result = sweep_eps(*sampler, grid, sweep_common.samples,
                                                 sweep_common.seed, {sweep_common.workers});
            std::string body = result.csv();
            body += result.crossing_eps
                        ? "# crossing_eps=" + std::to_string(*result.crossing_eps) + "\n"
                        : "# crossing_eps=none\n";
            write_output(sweep_common.out, csv_with_config(cfg, body));
            return kOk;
        }

        if (*family_cmd) {
            json cfg = family_config(family_family);
            cfg["subcommand"] = "family";
            cfg["p"] = family_common.p;
            BooleanFunction f = build_family(family_family, nullptr);
            json results{{"name", f.name()},
                         {"arity", f.arity()},
                         {"monotone", f.monotone()},
                         {"truth_table_backed", f.has_table()}};
            if (family_family.family == "tribes" || family_family.family == "tribes-rev") {
                TribesSpec spec{family_family.blocks, family_family.block_size,
                                family_family.family == "tribes-rev"};
                results["prob_one_closed_form"] = tribes_prob_one(spec, family_common.p);
                if (family_solve_target > 0.0) {
                    results["solved_bias"] = tribes_bias_solve(spec, family_solve_target);
                    cfg["solve_target"] = family_solve_target;
                }
            }
            if (family_family.family == "recmaj" &&
                (family_family.fanout == 3 || family_family.fanout == 5)) {
                results["conditioned_prob"] = recmaj_conditioned_prob(
                    family_family.fanout, family_family.depth, family_common.eps);
                cfg["eps"] = family_common.eps;
            }
            write_output(family_common.out, render_json_report(cfg, results));
            return kOk;
        }

        if (*gp_cmd) {
            if (gp_common.p_option->count() > 0) gp_property.p = gp_common.p;
            const double p = resolve_bias(gp_property);
            json cfg = property_config(gp_property, p);
            cfg["subcommand"] = "graph-prop";
            cfg["eps"] = gp_common.eps;
            cfg["samples"] = gp_common.samples;
            cfg["seed"] = gp_common.seed;
            cfg["witness"] = gp_witness;
            const GraphProperty prop = build_property(gp_property);
            GraphSampler sampler(prop, p);
            const double grid[1] = {gp_common.eps};
            const PairCounts counts = collect_pair_counts(sampler, grid, gp_common.samples,
                                                          gp_common.seed, {gp_common.workers});
            const PairStatistics st = pair_statistics(counts, 0);
            json results{{"prob_one", counts.prob_base()},
                         {"covariance", st.covariance},
                         {"covariance_stderr", st.covariance_stderr},
                         {"correlation", st.correlation},
                         {"conditional", st.conditional},
                         {"conditional_stderr", st.conditional_stderr},
                         {"gap", st.gap},
                         {"gap_stderr", st.gap_stderr},
                         {"flip", st.flip},
                         {"inconclusive", counts.inconclusive[0]},
                         {"degenerate", st.degenerate}};
            if (gp_witness == "canonical") {
                const bool zero_side = !prop.canonical_zero_witness.empty();
                const auto& witness =
                    zero_side ? prop.canonical_zero_witness : prop.canonical_one_witness;
                if (witness.empty()) throw CLI::ValidationError("property has no canonical witness");
                const GraphWitnessGap wg =
                    graph_witness_gap(prop, p, gp_common.eps, witness, !zero_side,
                                      gp_common.samples, gp_common.seed, {gp_common.workers});
                results["witness_gap"] = json{{"conditioned", wg.conditioned},
                                              {"conditioned_stderr", wg.conditioned_stderr},
                                              {"base", wg.base},
                                              {"base_stderr", wg.base_stderr},
                                              {"gap", wg.gap},
                                              {"gap_stderr", wg.gap_stderr},
                                              {"pinned_value", zero_side ? 0 : 1},
                                              {"witness_size", witness.size()}};
            }
            write_output(gp_common.out, render_json_report(cfg, results));
            return st.degenerate ? kDegenerate : kOk;
        }

        if (*pc_cmd) {
            json cfg;
            const PatternGraph h = build_pattern(pc_pattern, &cfg);
            cfg["subcommand"] = "poisson-check";
            cfg["n"] = pc_n;
            double p = pc_common.p;
            if (pc_solve_mean > 0.0) {
                const double log_p =
                    (std::log(pc_solve_mean) - log_choose(pc_n, h.k) - std::lgamma(h.k + 1.0) +
                     std::log(static_cast<double>(h.automorphisms()))) /
                    static_cast<double>(h.edge_count());
                p = std::exp(log_p);
                cfg["solve_mean"] = pc_solve_mean;
            }
            cfg["p"] = p;
            cfg["samples"] = pc_common.samples;
            cfg["seed"] = pc_common.seed;
            const PoissonDiagnostics diag =
                poisson_diagnostics(h, pc_n, p, pc_common.samples, pc_common.seed,
                                    {pc_common.workers});
            json hist = json::object();
            for (auto [k, v] : diag.histogram) hist[std::to_string(k)] = v;
            json results{{"lambda", diag.lambda},
                         {"mean", diag.mean},
                         {"mean_stderr", diag.mean_stderr},
                         {"variance", diag.variance},
                         {"conditional_mean", diag.conditional_mean},
                         {"conditional_mean_stderr", diag.conditional_mean_stderr},
                         {"max_witness_prob", diag.max_witness_prob},
                         {"tv_bound", diag.tv_bound},
                         {"empirical_tv", diag.empirical_tv},
                         {"empirical_tv_stderr", diag.empirical_tv_stderr},
                         {"prob_positive", diag.prob_positive},
                         {"degenerate_zero", diag.degenerate_zero},
                         {"nondegenerate", diag.nondegenerate},
                         {"histogram", hist}};
            write_output(pc_common.out, render_json_report(cfg, results));
            return (diag.degenerate_zero || !diag.nondegenerate) ? kDegenerate : kOk;
        }

        if (*bal_cmd) {
            json cfg;
            const PatternGraph h = build_pattern(bal_pattern, &cfg);
            cfg["subcommand"] = "balanced";
            const BalanceFlags flags = strictly_balanced(h);
            json results{{"balanced", flags.balanced},
                         {"strictly_balanced", flags.strictly_balanced},
                         {"density", flags.density},
                         {"max_proper_density", flags.max_proper_density},
                         {"vertices", h.k},
                         {"edges", h.edge_count()}};
            write_output(bal_out, render_json_report(cfg, results));
            return kOk;
        }

        if (*giant_cmd) {
            json cfg{{"subcommand", "giant-robustness"},
                     {"n", giant_n},
                     {"lambda", giant_lambda},
                     {"eps", giant_common.eps},
                     {"k", giant_k},
                     {"samples", giant_common.samples},
                     {"seed", giant_common.seed}};
            const GiantRobustnessReport rep =
                giant_robustness_experiment(giant_n, giant_lambda, giant_common.eps, giant_k,
                                            giant_common.samples, giant_common.seed,
                                            {giant_common.workers});
            json results{{"prob_event", rep.prob_event},
                         {"prob_event_noised", rep.prob_event_noised},
                         {"conditional", rep.conditional},
                         {"gap", rep.gap},
                         {"gap_stderr", rep.gap_stderr},
                         {"degenerate", rep.degenerate},
                         {"mean_triangles", rep.mean_triangles},
                         {"frac_pairs_far", rep.frac_pairs_far},
                         {"path_success", rep.path_success},
                         {"pair_attempts", rep.pair_attempts},
                         {"path_length", rep.path_length}};
            write_output(giant_common.out, render_json_report(cfg, results));
            return rep.degenerate ? kDegenerate : kOk;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    }
    return kUsageError;
}

}  // namespace noiselab::cli
