// Command-line front end: graph ingestion and generation, hyperbolicity
// diagnostics, minimal-flow norms, chain decomposition, statement
// certification, properness profiles and the lattice counterexample.

#include <fstream>
#include <iostream>
#include <random>

#include "CLI11.hpp"

#include "hypquot/certify.hpp"
#include "hypquot/parallel.hpp"
#include "hypquot/report.hpp"
#include "hypquot/words.hpp"

using namespace hypquot;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct GraphSource {
    std::string input_file;
    std::string group;
    int radius = 0;

    void attach(CLI::App* cmd) {
        auto* file = cmd->add_option("--input", input_file, "graph file ('n m' header, edge lines)");
        auto* grp =
            cmd->add_option("--group", group, "group spec: free:<rank> | grid2d | z2z3 | surface2");
        cmd->add_option("--radius", radius, "ball radius for --group");
        file->excludes(grp);
    }

    Graph load() const {
        if (!input_file.empty() && !group.empty())
            fail(ErrorKind::format, "choose exactly one of --input and --group");
        if (!input_file.empty()) {
            std::ifstream in(input_file);
            if (!in) fail(ErrorKind::format, "cannot open graph file '" + input_file + "'");
            return Graph::from_stream(in);
        }
        if (group.empty()) fail(ErrorKind::format, "a graph source is required (--input or --group)");
        return Graph::cayley_ball(GroupSpec::parse(group, radius));
    }
};

void emit(const Json& report, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << report.dump(2) << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) fail(ErrorKind::format, "cannot open output file '" + out_path + "'");
    out << report.dump(2) << '\n';
}

void emit_csv(const std::string& text, const std::string& path) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) fail(ErrorKind::format, "cannot open CSV file '" + path + "'");
    out << text;
}

Vertex resolve_vertex(const Graph& g, const std::string& word, int vertex_id) {
    if (!word.empty()) {
        if (!g.has_labels())
            fail(ErrorKind::unsupported, "--from/--to words need a Cayley ball (use --x/--y)");
        const auto wp = WordProblem::make(*g.cayley_spec());
        const std::string reduced = wp->reduce(wp->parse_word(word));
        if (wp->has_canonical_form()) {
            const auto v = g.vertex_by_label(reduced);
            if (!v) fail(ErrorKind::domain, "word '" + word + "' lies outside the ball");
            return *v;
        }
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            if (wp->equal(g.label(v), reduced)) return v;
        fail(ErrorKind::domain, "word '" + word + "' lies outside the ball");
    }
    if (vertex_id < 0) fail(ErrorKind::format, "missing vertex (word or id)");
    if (vertex_id >= g.vertex_count())
        fail(ErrorKind::invalid_vertex, "vertex id " + std::to_string(vertex_id) + " out of range");
    return vertex_id;
}

std::vector<std::pair<Vertex, Vertex>> sample_pairs(const Graph& g, std::size_t count,
                                                    std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Vertex> pick(0, g.vertex_count() - 1);
    std::vector<std::pair<Vertex, Vertex>> pairs;
    while (pairs.size() < count) {
        const Vertex x = pick(rng), y = pick(rng);
        if (x != y) pairs.push_back({x, y});
    }
    return pairs;
}

std::vector<std::vector<Vertex>> sample_walks(const Graph& g, std::size_t count, int max_len,
                                              std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Vertex> pick(0, g.vertex_count() - 1);
    std::vector<std::vector<Vertex>> walks;
    while (walks.size() < count) {
        Vertex x = pick(rng), y = pick(rng);
        if (x == y) continue;
        std::vector<Vertex> walk{x};
        Vertex cur = x;
        const auto dy = g.distances_from(y);
        for (int step = 0; step < max_len && cur != y; ++step) {
            const auto& nb = g.neighbors(cur);
            Vertex next = nb[rng() % nb.size()];
            if (std::uniform_real_distribution<double>(0, 1)(rng) < 0.5)
                for (const Vertex w : nb)
                    if (dy[w] < dy[cur]) {
                        next = w;
                        break;
                    }
            walk.push_back(next);
            cur = next;
        }
        if (cur != y) {
            const auto tail = g.geodesic(cur, y);
            walk.insert(walk.end(), tail.begin() + 1, tail.end());
        }
        walks.push_back(std::move(walk));
    }
    return walks;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-scale chain, flow and hyperbolicity toolkit"};
    app.require_subcommand(1);
    app.fallthrough(); // let --out/--seed/--workers appear after the subcommand

    int workers = default_worker_count();
    std::uint64_t seed = 1;
    std::string out_path;
    app.add_option("--workers", workers, "worker thread count (env HYPQUOT_THREADS)");
    app.add_option("--seed", seed, "random seed recorded in the report");
    app.add_option("--out", out_path, "report path (default stdout)");

    // graph
    auto* cmd_graph = app.add_subcommand("graph", "build/validate a graph and print stats");
    GraphSource src_graph;
    src_graph.attach(cmd_graph);

    // delta
    auto* cmd_delta = app.add_subcommand("delta", "four-point hyperbolicity constant");
    GraphSource src_delta;
    src_delta.attach(cmd_delta);
    std::string delta_mode = "exact";
    std::size_t delta_samples = 200000;
    cmd_delta->add_option("--mode", delta_mode, "exact | sampled");
    cmd_delta->add_option("--samples", delta_samples, "sample count for sampled mode");

    // visual
    auto* cmd_visual = app.add_subcommand("visual", "visual metric and epsilon search");
    GraphSource src_visual;
    src_visual.attach(cmd_visual);
    int visual_center = -1;
    double visual_epsilon = 0.0;
    double visual_cap = 4.0;
    cmd_visual->add_option("--center", visual_center, "center vertex (omit to search epsilon)");
    cmd_visual->add_option("--epsilon", visual_epsilon, "visual parameter (with --center)");
    cmd_visual->add_option("--c-cap", visual_cap, "sandwich cap for the epsilon search");

    // norm
    auto* cmd_norm = app.add_subcommand("norm", "minimal-flow quotient norm of a vertex pair");
    GraphSource src_norm;
    src_norm.attach(cmd_norm);
    std::string from_word, to_word;
    int from_id = -1, to_id = -1;
    double norm_p = 1.0, norm_tol = 1e-8;
    cmd_norm->add_option("--from", from_word, "source word (Cayley balls; 'e' = identity)");
    cmd_norm->add_option("--to", to_word, "target word");
    cmd_norm->add_option("--x", from_id, "source vertex id");
    cmd_norm->add_option("--y", to_id, "target vertex id");
    cmd_norm->add_option("--p", norm_p, "exponent p >= 1");
    cmd_norm->add_option("--tol", norm_tol, "stationarity tolerance for p > 1");

    // decompose
    auto* cmd_dec = app.add_subcommand("decompose", "peel a chain into paths plus loops");
    GraphSource src_dec;
    src_dec.attach(cmd_dec);
    std::string chain_file;
    cmd_dec->add_option("--chain", chain_file, "chain file: lines 'u v coefficient'")->required();

    // certify
    auto* cmd_cert = app.add_subcommand("certify", "run statement checks and report verdicts");
    GraphSource src_cert;
    src_cert.attach(cmd_cert);
    std::string selector = "all";
    cmd_cert->add_option("statement", selector, "2.4 | 2.5 | 2.6 | 2.7 | 2.9 | all");
    double cert_p = 1.05, cert_cap = 4.0;
    std::size_t cert_samples = 200, cert_pairs = 120;
    cmd_cert->add_option("--p", cert_p, "exponent for the lower-bound statement");
    cmd_cert->add_option("--c-cap", cert_cap, "sandwich cap for the epsilon search");
    cmd_cert->add_option("--samples", cert_samples, "sampled paths/chains per statement");
    cmd_cert->add_option("--pairs", cert_pairs, "vertex pairs for the lower-bound statement");

    // profile
    auto* cmd_prof = app.add_subcommand("profile", "cocycle norms over spheres of the ball");
    GraphSource src_prof;
    src_prof.attach(cmd_prof);
    double prof_p = 1.0;
    std::string prof_csv;
    cmd_prof->add_option("--p", prof_p, "exponent p >= 1");
    cmd_prof->add_option("--csv", prof_csv, "CSV output path");

    // counterexample
    auto* cmd_ce = app.add_subcommand("counterexample", "lattice rectangle weight sums");
    int ce_m = 2, ce_d = 3;
    double ce_eps = 1.0;
    std::string ce_csv;
    cmd_ce->add_option("--m", ce_m, "rectangle height");
    cmd_ce->add_option("--d", ce_d, "segment length");
    cmd_ce->add_option("--epsilon", ce_eps, "weight decay rate");
    cmd_ce->add_option("--csv", ce_csv, "CSV output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (cmd_graph->parsed()) {
            const Graph g = src_graph.load();
            Json report = report_envelope("graph", seed, workers);
            report["graph"] = graph_summary(g);
            emit(report, out_path);
            return kExitOk;
        }

        if (cmd_delta->parsed()) {
            const Graph g = src_delta.load();
            Json report = report_envelope("delta", seed, workers);
            report["graph"] = graph_summary(g);
            DeltaResult res;
            if (delta_mode == "exact")
                res = four_point_delta_exact(g, 400, workers);
            else if (delta_mode == "sampled")
                res = four_point_delta_sampled(g, delta_samples, seed, workers);
            else
                fail(ErrorKind::format, "unknown delta mode '" + delta_mode + "'");
            report["delta"] = res.delta;
            report["exact"] = res.exact;
            report["witness"] = std::vector<Vertex>(res.witness.begin(), res.witness.end());
            emit(report, out_path);
            return kExitOk;
        }

        if (cmd_visual->parsed()) {
            const Graph g = src_visual.load();
            Json report = report_envelope("visual", seed, workers);
            report["graph"] = graph_summary(g);
            if (visual_center >= 0) {
                if (visual_epsilon <= 0)
                    fail(ErrorKind::format, "--epsilon is required with --center");
                const auto vm = build_visual_metric(g, visual_center, visual_epsilon, workers);
                report["center"] = vm.center();
                report["epsilon"] = vm.epsilon();
                report["sandwich_C"] = vm.sandwich_C();
            } else {
                const auto delta = g.vertex_count() <= 400
                                       ? four_point_delta_exact(g, 400, workers)
                                       : four_point_delta_sampled(g, 200000, seed, workers);
                const auto choice = suggest_epsilon(g, delta.delta, visual_cap, workers);
                report["delta"] = delta.delta;
                report["epsilon"] = choice.epsilon;
                report["worst_C"] = choice.worst_C;
                report["centers"] = choice.centers;
            }
            emit(report, out_path);
            return kExitOk;
        }

        if (cmd_norm->parsed()) {
            const Graph g = src_norm.load();
            const Vertex x = resolve_vertex(g, from_word, from_id);
            const Vertex y = resolve_vertex(g, to_word, to_id);
            Json report = report_envelope("norm", seed, workers);
            report["graph"] = graph_summary(g);
            report["x"] = x;
            report["y"] = y;
            report["p"] = norm_p;
            if (norm_p == 1.0) {
                const auto res = quotient_norm_l1(g, x, y);
                report["value"] = res.value;
                Json triples = Json::array();
                for (const auto& [u, v, c] : res.witness.triples())
                    triples.push_back(Json::array({u, v, c}));
                report["chain"] = triples;
                emit(report, out_path);
                return kExitOk;
            }
            FlowOptions opt;
            opt.tol = norm_tol;
            const auto sol = min_norm_flow(g, x, y, norm_p, opt);
            report["solution"] = to_json(sol);
            emit(report, out_path);
            return sol.converged ? kExitOk : kExitResource;
        }

        if (cmd_dec->parsed()) {
            const Graph g = src_dec.load();
            std::ifstream in(chain_file);
            if (!in) fail(ErrorKind::format, "cannot open chain file '" + chain_file + "'");
            const Chain c = read_chain_text(in, g);
            const auto d = decompose(c);
            Json report = report_envelope("decompose", seed, workers);
            report["graph"] = graph_summary(g);
            report["l1_norm"] = lp_norm(c, 1.0);
            report["decomposition"] = to_json(d);
            emit(report, out_path);
            return kExitOk;
        }

        if (cmd_cert->parsed()) {
            const Graph g = src_cert.load();
            Json report = report_envelope("certify", seed, workers);
            report["graph"] = graph_summary(g);
            report["selector"] = selector;

            const bool all = selector == "all";
            if (!all && selector != "2.4" && selector != "2.5" && selector != "2.6" &&
                selector != "2.7" && selector != "2.9")
                fail(ErrorKind::format, "unknown statement selector '" + selector + "'");

            ConstantsOptions copt;
            copt.c_cap = cert_cap;
            copt.seed = seed;
            copt.workers = workers;
            ProofConstants constants = compute_constants(g, copt);

            std::size_t violations = 0;
            Json statements = Json::array();
            auto add = [&](const StatementReport& r, const std::string& sel) {
                Json j = to_json(r);
                j["selector"] = sel;
                statements.push_back(j);
                violations += r.violated;
            };

            if (all || selector == "2.4") {
                if (g.vertex_count() > 80)
                    fail(ErrorKind::resource,
                         "exhaustive nesting scan is O(n^4); use a graph with at most 80 vertices");
                add(check_nesting_exhaustive(g, constants.delta, {0.0, 1.0, 2.0, constants.delta},
                                             workers),
                    "2.4");
            }
            if (all || selector == "2.5") {
                VisualLowerBoundOptions vopt;
                vopt.samples = cert_samples;
                vopt.seed = seed;
                add(check_visual_lower_bound(g, constants, vopt), "2.5");
                if (g.vertex_count() <= 200) add(check_product_bounds_exhaustive(g), "2.5");
            }
            if (all || selector == "2.6") {
                StatementReport r;
                r.id = "segment-pipeline";
                const auto walks = sample_walks(g, cert_samples, 40, seed);
                Json rows = Json::array();
                for (const auto& walk : walks) {
                    const auto res = verify_segment_pipeline(g, walk, constants);
                    if (!res.extraction_ok) {
                        ++r.vacuous;
                        if (r.witnesses.size() < 8)
                            r.witnesses.push_back({"extraction failure: " + res.failure, walk, {}});
                        continue;
                    }
                    r.record(res.assembly_ok);
                    if (!res.assembly_ok && r.witnesses.size() < 8)
                        r.witnesses.push_back(
                            {"assembly failed", walk, {res.total_sum, res.assembly_bound}});
                }
                add(r, "2.6");
            }
            if (all || selector == "2.7") {
                StatementReport r;
                r.id = "chain-reduction";
                std::mt19937_64 rng(seed);
                std::uniform_int_distribution<Vertex> pick(0, g.vertex_count() - 1);
                for (std::size_t s = 0; s < cert_samples; ++s) {
                    Vertex x = pick(rng), y = pick(rng);
                    while (y == x) y = pick(rng);
                    // Half the mass on a geodesic, half on a detour through a
                    // random waypoint.
                    Chain c(g);
                    c.add_scaled(chain_from_path(g, g.geodesic(x, y)), 0.5);
                    const Vertex mid = pick(rng);
                    std::vector<Vertex> detour = g.geodesic(x, mid);
                    const auto leg = g.geodesic(mid, y);
                    detour.insert(detour.end(), leg.begin() + 1, leg.end());
                    c.add_scaled(chain_from_path(g, detour), 0.5);
                    c.prune(0.0);
                    if (c.is_zero()) continue;

                    const double chain_sum = chain_weight_sum(g, c, x, y, constants.epsilon);
                    const auto dec = decompose(c);
                    double reduced = 0.0, min_ratio = kInfinity;
                    for (const auto& t : dec.paths) {
                        const double path_sum =
                            path_weight_sum(g, t.vertices, x, y, constants.epsilon);
                        reduced += std::abs(t.weight) * path_sum;
                        min_ratio = std::min(min_ratio, path_sum / g.distance(x, y));
                    }
                    const bool ok = chain_sum >= reduced * (1 - 1e-9) &&
                                    chain_sum >= min_ratio * g.distance(x, y) * (1 - 1e-9);
                    r.record(ok);
                    if (!ok && r.witnesses.size() < 8)
                        r.witnesses.push_back({"reduction failed", {x, y}, {chain_sum, reduced}});
                }
                add(r, "2.7");
            }
            if (all || selector == "2.9") {
                const auto pairs = sample_pairs(g, cert_pairs, seed + 7);
                const auto lb = verify_lp_lower_bound(g, cert_p, constants, pairs, workers);
                constants = lb.constants;
                Json j = to_json(lb, g.vertex_count() <= 120);
                j["selector"] = "2.9";
                statements.push_back(j);
                violations += lb.violations;
                if (lb.unconverged > 0) {
                    report["constants"] = to_json(constants);
                    report["statements"] = statements;
                    report["violations"] = violations;
                    emit(report, out_path);
                    return kExitResource;
                }
            }

            report["constants"] = to_json(constants);
            report["statements"] = statements;
            report["violations"] = violations;
            emit(report, out_path);
            return violations == 0 ? kExitOk : kExitViolation;
        }

        if (cmd_prof->parsed()) {
            const Graph g = src_prof.load();
            const auto profile = properness_profile(g, prof_p, 0, workers);
            Json report = report_envelope("profile", seed, workers);
            report["graph"] = graph_summary(g);
            report["profile"] = to_json(profile, prof_p);
            std::ostringstream csv;
            write_profile_csv(csv, profile, prof_p);
            emit_csv(csv.str(), prof_csv);
            emit(report, out_path);
            return profile.unconverged == 0 ? kExitOk : kExitResource;
        }

        if (cmd_ce->parsed()) {
            const auto res = euclid_counterexample(ce_m, ce_d, ce_eps);
            Json report = report_envelope("counterexample", seed, workers);
            report["result"] = to_json(res, ce_m, ce_d, ce_eps);
            std::ostringstream csv;
            write_counterexample_csv(csv, res, ce_m, ce_d, ce_eps);
            emit_csv(csv.str(), ce_csv);
            emit(report, out_path);
            return kExitOk;
        }
    } catch (const Error& e) {
        Json report = report_envelope("error", seed, workers);
        report["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
        std::cerr << report.dump(2) << '\n';
        switch (e.kind()) {
        case ErrorKind::resource:
        case ErrorKind::convergence: return kExitResource;
        default: return kExitUsage;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
