#include "hypquot/certify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "hypquot/parallel.hpp"
#include "hypquot/words.hpp"

namespace hypquot {

double alpha_eta(double epsilon, double c, double eta) {
    if (epsilon <= 0) fail(ErrorKind::domain, "alpha_eta requires epsilon > 0");
    if (c < 1) fail(ErrorKind::domain, "alpha_eta requires C >= 1");
    if (eta < 0) fail(ErrorKind::domain, "alpha_eta requires eta >= 0");
    return std::exp(-epsilon * (eta / 2.0 + 1.0)) / (c * c);
}

double p_zero(double beta_prime, double epsilon) {
    if (beta_prime <= 0 || epsilon <= 0)
        fail(ErrorKind::domain, "p_zero requires positive beta' and epsilon");
    if (epsilon >= beta_prime) return kInfinity;
    return beta_prime / (beta_prime - epsilon);
}

double series_sum_d_prime(double beta_prime, double epsilon, double q) {
    if (q * epsilon <= beta_prime)
        fail(ErrorKind::domain, "geometric tail diverges: need q > beta'/epsilon");
    return 1.0 / (1.0 - std::exp(beta_prime - epsilon * q));
}

double alpha_prime(double beta, double growth_prefactor, double beta_prime, double epsilon,
                   double q) {
    const double d_prime = series_sum_d_prime(beta_prime, epsilon, q);
    return beta / std::pow(growth_prefactor * d_prime, 1.0 / q);
}

void fill_gap_window(ProofConstants& c) {
    c.delta1 = std::ceil(3.0 * c.delta + 2.0);
    c.delta2 = 2.0 * c.delta1;
    c.segment_gap = c.delta2;
    c.Delta = (c.segment_gap + 1.0) / 2.0 + c.delta;
    c.Delta_prime = c.Delta + c.delta;
    c.Delta_double_prime = 3.0 * (c.segment_gap + 1.0) / 2.0 + 2.0 * c.delta;
    if (c.epsilon > 0) {
        c.alpha = alpha_eta(c.epsilon, c.sandwich_C, c.Delta_double_prime);
        c.beta_paper = c.alpha / c.delta2;
        c.beta = std::isnan(c.beta_emp) ? c.beta_paper : std::min(c.beta_paper, c.beta_emp);
    }
}

void finalize_for_p(ProofConstants& c, double p) {
    if (p <= 1) fail(ErrorKind::domain, "finalize_for_p requires p > 1");
    c.p = p;
    c.q = p / (p - 1.0);
    c.p_zero = p_zero(c.beta_prime, c.epsilon);
    if (p >= c.p_zero)
        fail(ErrorKind::domain, "p = " + std::to_string(p) +
                                    " is outside the certified range (p_zero = " +
                                    std::to_string(c.p_zero) + ")");
    c.series_sum = series_sum_d_prime(c.beta_prime, c.epsilon, c.q);
    const double prefactor = std::max(c.growth_prefactor, c.growth_prefactor_cert);
    c.beta = std::isnan(c.beta_emp) ? c.beta_paper : std::min(c.beta_paper, c.beta_emp);
    c.alpha_prime = alpha_prime(c.beta, prefactor, c.beta_prime, c.epsilon, c.q);
}

double path_weight_sum(const Graph& g, const std::vector<Vertex>& path, Vertex x, Vertex y,
                       double epsilon) {
    if (path.empty() || path.front() != x || path.back() != y)
        fail(ErrorKind::domain, "path endpoints do not match the requested pair");
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        if (g.edge_index(path[i], path[i + 1]) < 0)
            fail(ErrorKind::domain, "path vertices " + std::to_string(path[i]) + ", " +
                                        std::to_string(path[i + 1]) + " are not adjacent");
    const auto geod = g.eta_geodesic_set(x, y, 0.0);
    const auto dist = g.distances_to_set(geod);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) sum += std::exp(-epsilon * dist[path[i]]);
    return sum;
}

double chain_weight_sum(const Graph& g, const Chain& chain, Vertex x, Vertex y, double epsilon) {
    VertexCharge charge = boundary(chain);
    charge.add(x, 1.0);
    charge.add(y, -1.0);
    charge.prune(1e-9);
    if (!charge.values().empty())
        fail(ErrorKind::domain, "chain boundary is not the requested unit dipole");
    const auto geod = g.eta_geodesic_set(x, y, 0.0);
    const auto dist = g.distances_to_set(geod);
    const auto& edges = g.canonical_edges();
    double sum = 0.0;
    for (const auto& [idx, value] : chain.coeffs())
        sum += std::abs(value) *
               std::exp(-epsilon * std::min(dist[edges[idx].u], dist[edges[idx].v]));
    return sum;
}

BetaMeasurement measure_beta(const Graph& g, double epsilon, const BetaFamily& family) {
    if (family.paths.empty() && family.chains.empty())
        fail(ErrorKind::domain, "measure_beta needs a nonempty family");
    BetaMeasurement out;
    auto feed = [&](double sum, double distance, const std::string& tag) {
        const double ratio = sum / distance;
        if (ratio < out.beta_emp) {
            out.beta_emp = ratio;
            out.witness_tag = tag;
            out.witness_sum = sum;
            out.witness_distance = distance;
        }
    };
    for (const auto& entry : family.paths) {
        const Vertex x = entry.path.front(), y = entry.path.back();
        if (x == y) fail(ErrorKind::domain, "beta family paths need distinct endpoints");
        feed(path_weight_sum(g, entry.path, x, y, epsilon), g.distance(x, y), entry.tag);
    }
    for (const auto& entry : family.chains) {
        if (entry.x == entry.y)
            fail(ErrorKind::domain, "beta family chains need distinct endpoints");
        feed(chain_weight_sum(g, entry.chain, entry.x, entry.y, epsilon),
             g.distance(entry.x, entry.y), entry.tag);
    }
    return out;
}

StatementReport check_product_bounds_exhaustive(const Graph& g) {
    StatementReport report;
    report.id = "adjacent-product-bounds";
    for (const auto& e : g.canonical_edges())
        for (const auto& [a, b] :
             {std::pair<Vertex, Vertex>{e.u, e.v}, std::pair<Vertex, Vertex>{e.v, e.u}})
            for (Vertex t = 0; t < g.vertex_count(); ++t) {
                const double prod = gromov_product(g, t, a, b);
                const double da = g.distance(a, t);
                const bool ok = prod >= da - 1.0 - 1e-12 && prod <= da + 1e-12;
                report.record(ok);
                if (!ok && report.witnesses.size() < 8)
                    report.witnesses.push_back({"product bound failed", {a, b, t}, {prod, da}});
            }
    return report;
}

StatementReport check_nesting_exhaustive(const Graph& g, double delta,
                                         const std::vector<double>& etas, int workers) {
    if (workers <= 0) workers = default_worker_count();
    const Vertex n = g.vertex_count();
    struct Acc {
        std::size_t holds = 0, violated = 0, vacuous = 0;
        std::vector<Witness> witnesses;
    };
    Acc total = parallel_reduce<Acc>(
        static_cast<std::size_t>(n), workers, Acc{},
        [&](Acc& acc, std::size_t ai) {
            const Vertex a = static_cast<Vertex>(ai);
            for (Vertex b = 0; b < n; ++b)
                for (Vertex c = 0; c < n; ++c)
                    for (Vertex d = 0; d < n; ++d)
                        for (const double eta1 : etas)
                            for (const double eta2 : etas) {
                                switch (nesting_check(g, a, b, c, d, eta1, eta2, delta)) {
                                case NestingVerdict::holds: ++acc.holds; break;
                                case NestingVerdict::vacuous: ++acc.vacuous; break;
                                case NestingVerdict::violated:
                                    ++acc.violated;
                                    if (acc.witnesses.size() < 8)
                                        acc.witnesses.push_back({"nesting violated",
                                                                 {a, b, c, d},
                                                                 {eta1, eta2, delta}});
                                    break;
                                }
                            }
        },
        [](Acc& out, const Acc& in) {
            out.holds += in.holds;
            out.violated += in.violated;
            out.vacuous += in.vacuous;
            for (const auto& w : in.witnesses)
                if (out.witnesses.size() < 8) out.witnesses.push_back(w);
        });
    StatementReport report;
    report.id = "geodesic-nesting";
    report.holds = total.holds;
    report.violated = total.violated;
    report.vacuous = total.vacuous;
    report.witnesses = std::move(total.witnesses);
    return report;
}

namespace {

std::vector<Vertex> random_walk_path(const Graph& g, Vertex x, Vertex y, int max_len,
                                     std::mt19937_64& rng) {
    std::vector<Vertex> walk{x};
    Vertex cur = x;
    const auto dy = g.distances_from(y);
    for (int step = 0; step < max_len && cur != y; ++step) {
        const auto& nb = g.neighbors(cur);
        Vertex next = nb[rng() % nb.size()];
        if (std::uniform_real_distribution<double>(0, 1)(rng) < 0.5) {
            for (const Vertex w : nb)
                if (dy[w] < dy[cur]) {
                    next = w;
                    break;
                }
        }
        walk.push_back(next);
        cur = next;
    }
    if (cur != y) {
        const auto tail = g.geodesic(cur, y);
        walk.insert(walk.end(), tail.begin() + 1, tail.end());
    }
    return walk;
}

} // namespace

StatementReport check_visual_lower_bound(const Graph& g, const ProofConstants& constants,
                                         VisualLowerBoundOptions options) {
    if (constants.epsilon <= 0 || constants.sandwich_C < 1)
        fail(ErrorKind::domain, "check_visual_lower_bound needs certified (epsilon, C)");
    const double eps = constants.epsilon;
    const double c_const = constants.sandwich_C;
    const double eta_max = options.eta_max >= 0 ? options.eta_max : constants.Delta_double_prime;

    StatementReport report;
    report.id = "path-visual-lower-bound";
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<Vertex> pick(0, g.vertex_count() - 1);
    std::map<Vertex, VisualMetric> metric_cache;

    for (std::size_t s = 0; s < options.samples; ++s) {
        Vertex x = pick(rng), y = pick(rng);
        while (y == x) y = pick(rng);
        const auto path = random_walk_path(g, x, y, options.max_walk_length, rng);

        const double eta = std::uniform_real_distribution<double>(0, eta_max)(rng);
        const auto zone = g.eta_geodesic_set(x, y, eta);
        const Vertex t = zone[rng() % zone.size()];
        const double eta_tight = g.distance(x, t) + g.distance(t, y) - g.distance(x, y);

        double sum = 0.0;
        const auto dt = g.distances_from(t);
        for (std::size_t i = 0; i + 1 < path.size(); ++i) sum += std::exp(-eps * dt[path[i]]);

        const double bound = alpha_eta(eps, c_const, eta_tight);
        const bool ok = sum >= bound * (1 - 1e-12);
        report.record(ok);
        if (!ok && report.witnesses.size() < 8) {
            Witness w{"lower bound failed", {x, y, t}, {sum, bound, eta_tight}};
            w.vertices.insert(w.vertices.end(), path.begin(), path.end());
            report.witnesses.push_back(w);
        }

        // Adjacent-pair product bounds along the sampled path.
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            const double prod = gromov_product(g, t, path[i], path[i + 1]);
            const bool ok2 = prod >= dt[path[i]] - 1.0 - 1e-12 && prod <= dt[path[i]] + 1e-12;
            report.record(ok2);
            if (!ok2 && report.witnesses.size() < 8)
                report.witnesses.push_back(
                    {"product bound failed", {path[i], path[i + 1], t}, {prod}});
        }

        // Replay the visual-metric inequality chain for a few centers; the
        // dense d_t table is cubic to build, so cap the distinct centers.
        auto it = metric_cache.find(t);
        if (it == metric_cache.end() && metric_cache.size() < options.replay_center_cap)
            it = metric_cache.emplace(t, build_visual_metric(g, t, eps)).first;
        if (it != metric_cache.end()) {
            const VisualMetric& vm = it->second;
            double rho_sum = 0.0, dt_sum = 0.0;
            for (std::size_t i = 0; i + 1 < path.size(); ++i) {
                rho_sum += vm.rho(path[i], path[i + 1]);
                dt_sum += vm.value(path[i], path[i + 1]);
            }
            const double c_meas = vm.sandwich_C();
            const bool chain_ok =
                c_meas * rho_sum >= dt_sum * (1 - 1e-12) &&
                dt_sum >= vm.value(x, y) * (1 - 1e-12) &&
                vm.value(x, y) >= std::exp(-eps * eta_tight / 2.0) / c_meas * (1 - 1e-12);
            report.record(chain_ok);
            if (!chain_ok && report.witnesses.size() < 8)
                report.witnesses.push_back(
                    {"visual chain replay failed", {x, y, t}, {rho_sum, dt_sum, c_meas}});
        }
    }
    return report;
}

EuclidResult euclid_counterexample(int m, int d_len, double epsilon, CayleyLimits limits) {
    if (m < 1 || d_len < 1) fail(ErrorKind::domain, "rectangle needs m >= 1 and d >= 1");
    if (epsilon <= 0) fail(ErrorKind::domain, "epsilon must be positive");

    GroupSpec spec{GroupSpec::Kind::grid2d, 2, m + d_len};
    const Graph g = Graph::cayley_ball(spec, limits);

    auto vertex_at = [&](int i, int j) {
        const std::string label = std::string(i, 'a') + std::string(j, 'b');
        const auto v = g.vertex_by_label(label);
        if (!v)
            fail(ErrorKind::resource, "lattice ball too small for the rectangle corner (" +
                                          std::to_string(i) + ", " + std::to_string(j) + ")");
        return *v;
    };

    std::vector<Vertex> path;
    for (int k = 0; k <= m; ++k) path.push_back(vertex_at(0, k));
    for (int i = 1; i <= d_len; ++i) path.push_back(vertex_at(i, m));
    for (int k = m - 1; k >= 0; --k) path.push_back(vertex_at(d_len, k));

    EuclidResult out;
    out.constructed_value =
        path_weight_sum(g, path, vertex_at(0, 0), vertex_at(d_len, 0), epsilon);
    double formula = 0.0;
    for (int k = 0; k <= m - 1; ++k) formula += std::exp(-epsilon * k);
    formula += d_len * std::exp(-epsilon * m);
    for (int k = 1; k <= m; ++k) formula += std::exp(-epsilon * k);
    out.formula_value = formula;
    out.upper_bound = 2.0 / (1.0 - std::exp(-epsilon)) + d_len * std::exp(-epsilon * m);
    out.beta_ratio = formula / d_len;
    return out;
}

namespace {

Vertex nearest_projection(const Graph& g, Vertex v, const std::vector<Vertex>& geod) {
    Vertex best = geod.front();
    int best_d = g.distance(v, best);
    for (const Vertex t : geod) {
        const int d = g.distance(v, t);
        if (d < best_d) { // geod ascending: ties keep the smallest index
            best = t;
            best_d = d;
        }
    }
    return best;
}

} // namespace

PathPipelineResult verify_segment_pipeline(const Graph& g, const std::vector<Vertex>& path,
                                           const ProofConstants& constants,
                                           PipelineOptions options) {
    if (path.size() < 2) fail(ErrorKind::domain, "pipeline needs a path of length >= 1");
    const Vertex x = path.front(), y = path.back();
    if (x == y) fail(ErrorKind::domain, "pipeline needs distinct endpoints");
    const double eps = constants.epsilon;
    const double c_const = constants.sandwich_C;
    const double delta = constants.delta;
    const double delta1 = options.delta1 > 0 ? options.delta1 : constants.delta1;
    const double delta2 = options.delta2 > 0 ? options.delta2 : constants.delta2;

    PathPipelineResult result;
    const int dxy = g.distance(x, y);
    const auto geod = g.eta_geodesic_set(x, y, 0.0);
    const auto dist_geod = g.distances_to_set(geod);
    result.total_sum = path_weight_sum(g, path, x, y, eps);

    if (dxy < delta1) {
        // Short pairs: the endpoint itself witnesses the lower bound.
        result.short_branch = true;
        result.assembly_bound = constants.beta_paper * dxy;
        double sum_to_x = 0.0;
        const auto dx = g.distances_from(x);
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
            sum_to_x += std::exp(-eps * dx[path[i]]);
        result.assembly_ok = sum_to_x >= alpha_eta(eps, c_const, 0.0) * (1 - 1e-12) &&
                             result.total_sum >= result.assembly_bound * (1 - 1e-12);
        return result;
    }

    // Projection extraction with gaps inside [delta1, delta2].
    std::vector<Vertex> proj(path.size());
    for (std::size_t i = 0; i < path.size(); ++i) proj[i] = nearest_projection(g, path[i], geod);

    std::vector<std::pair<std::size_t, Vertex>> anchors{{0, x}};
    std::size_t i_cur = 0;
    Vertex t_cur = x;
    while (g.distance(t_cur, y) > delta2) {
        std::size_t next = 0;
        bool found = false;
        for (std::size_t i = i_cur + 1; i < path.size(); ++i) {
            if (g.distance(t_cur, proj[i]) >= delta1) {
                next = i;
                found = true;
                break;
            }
        }
        if (!found) {
            result.extraction_ok = false;
            result.failure = "no projection crossing past the gap";
            break;
        }
        double hop = g.distance(t_cur, proj[next]);
        if (hop > delta2 || g.distance(proj[next], y) < delta1) {
            // First crossing overshoots or strands the endgame: look for any
            // admissible anchor in the window.
            const double room = g.distance(t_cur, y) - delta1;
            bool fixed = false;
            for (std::size_t i = i_cur + 1; i < path.size(); ++i) {
                const double h = g.distance(t_cur, proj[i]);
                if (h >= delta1 && h <= std::min(delta2, room)) {
                    next = i;
                    hop = h;
                    fixed = true;
                    break;
                }
            }
            if (!fixed && hop > delta2) {
                result.extraction_ok = false;
                result.failure = "projection jump exceeds the gap window";
                break;
            }
        }
        anchors.push_back({next, proj[next]});
        i_cur = next;
        t_cur = proj[next];
    }
    if (result.extraction_ok && t_cur != y) {
        if (g.distance(t_cur, y) < delta1) {
            result.extraction_ok = false;
            result.failure = "final hop shorter than delta1";
        } else {
            anchors.push_back({path.size() - 1, y});
        }
    }
    if (!result.extraction_ok) return result;

    // Per-segment checks: the three nesting applications, the midpoint
    // memberships and the localized lower bound.
    bool all_ok = true;
    for (std::size_t k = 0; k + 1 < anchors.size(); ++k) {
        SegmentCheck seg;
        seg.i_from = anchors[k].first;
        seg.i_to = anchors[k + 1].first;
        seg.t_from = anchors[k].second;
        seg.t_to = anchors[k + 1].second;
        seg.gap = g.distance(seg.t_from, seg.t_to);
        seg.mid = g.midpoint(seg.t_from, seg.t_to);
        const Vertex a = path[seg.i_from];
        const Vertex b = path[seg.i_to];

        seg.nest_left = nesting_check(g, a, seg.t_from, seg.mid, seg.t_to,
                                      g.distance(seg.t_from, seg.mid), 0.0, delta);
        seg.nest_right = nesting_check(g, seg.t_from, seg.mid, seg.t_to, b, 0.0,
                                       g.distance(seg.mid, seg.t_to), delta);
        const double slack = (seg.gap + 1.0) / 2.0 + delta;
        seg.nest_outer = nesting_check(g, a, seg.t_from, seg.t_to, b, slack, slack, delta);

        const double wide = 3.0 * (seg.gap + 1.0) / 2.0 + 2.0 * delta;
        seg.mid_in_wide_geod =
            g.distance(a, seg.mid) + g.distance(seg.mid, b) <= g.distance(a, b) + wide + 1e-9;
        seg.mid_on_geod_xy = dist_geod[seg.mid] == 0;

        const auto dm = g.distances_from(seg.mid);
        double sum = 0.0;
        for (std::size_t i = seg.i_from; i < seg.i_to; ++i) sum += std::exp(-eps * dm[path[i]]);
        seg.segment_sum = sum;
        seg.alpha_bound = alpha_eta(eps, c_const, wide);
        seg.segment_ok = seg.nest_left != NestingVerdict::violated &&
                         seg.nest_right != NestingVerdict::violated &&
                         seg.nest_outer != NestingVerdict::violated && seg.mid_in_wide_geod &&
                         seg.mid_on_geod_xy && sum >= seg.alpha_bound * (1 - 1e-12);
        all_ok = all_ok && seg.segment_ok;
        result.segments.push_back(seg);
    }

    result.assembly_bound = constants.alpha * dxy / delta2;
    result.assembly_ok = all_ok && result.total_sum >= result.assembly_bound * (1 - 1e-12);
    return result;
}

LowerBoundReport verify_lp_lower_bound(const Graph& g, double p, ProofConstants constants,
                                       const std::vector<std::pair<Vertex, Vertex>>& pairs,
                                       int workers) {
    if (workers <= 0) workers = default_worker_count();
    if (p <= 1) fail(ErrorKind::domain, "verify_lp_lower_bound requires p > 1");
    const double pz = p_zero(constants.beta_prime, constants.epsilon);
    if (p >= pz)
        fail(ErrorKind::domain, "p = " + std::to_string(p) +
                                    " is outside the certified range (p_zero = " +
                                    std::to_string(pz) + ")");
    const double q = p / (p - 1.0);
    const double d_prime = series_sum_d_prime(constants.beta_prime, constants.epsilon, q);

    std::vector<std::pair<Vertex, Vertex>> live;
    for (const auto& pr : pairs)
        if (pr.first != pr.second) live.push_back(pr); // degenerate pairs are vacuous

    std::vector<PairBound> rows(live.size());
    parallel_chunks_ctx(
        live.size(), workers, [&] { return std::make_unique<PotentialSolver>(g); },
        [&](std::unique_ptr<PotentialSolver>& solver, std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                const auto [x, y] = live[i];
                PairBound row;
                row.x = x;
                row.y = y;
                row.distance = g.distance(x, y);
                const auto sol = min_norm_flow(g, x, y, p, FlowOptions{}, solver.get());
                row.value = sol.value;
                row.kkt_residual = sol.kkt_residual;
                row.converged = sol.converged;
                row.chain_sum = chain_weight_sum(g, sol.chain, x, y, constants.epsilon);

                const auto geod = g.eta_geodesic_set(x, y, 0.0);
                const auto dist = g.distances_to_set(geod);
                double edge_sum = 0.0;
                for (const auto& e : g.canonical_edges())
                    edge_sum += std::exp(-constants.epsilon * q * std::min(dist[e.u], dist[e.v]));
                row.edge_sum = edge_sum;
                rows[i] = row;
            }
        });

    // Certify the constants against exactly the measured data: the empirical
    // beta is the infimum over the solved chains, and the prefactor is lifted
    // until it covers every tested edge sum.
    double beta_measured = kInfinity, cert_prefactor = constants.growth_prefactor;
    for (const auto& row : rows) {
        beta_measured = std::min(beta_measured, row.chain_sum / row.distance);
        cert_prefactor = std::max(cert_prefactor, row.edge_sum / (d_prime * row.distance));
    }
    if (!rows.empty())
        constants.beta_emp = std::isnan(constants.beta_emp)
                                 ? beta_measured
                                 : std::min(constants.beta_emp, beta_measured);
    constants.growth_prefactor_cert = cert_prefactor;
    finalize_for_p(constants, p);

    LowerBoundReport report;
    report.constants = constants;
    for (auto& row : rows) {
        row.lower_bound = constants.alpha_prime * std::pow(row.distance, 1.0 / p);
        row.upper_bound = std::pow(row.distance, 1.0 / p);
        row.holder_ok =
            row.value * std::pow(row.edge_sum, 1.0 / q) >= row.chain_sum * (1 - 1e-9);
        row.bounds_ok = row.value >= row.lower_bound * (1 - 1e-9) &&
                        row.value <= row.upper_bound * (1 + 1e-9);
        if (!row.converged) ++report.unconverged;
        if (!row.holder_ok || !row.bounds_ok) ++report.violations;
    }
    report.pairs = std::move(rows);
    return report;
}

ProfileResult properness_profile(const Graph& g, double p, Vertex basepoint, int workers) {
    if (!g.cayley_spec() || !g.has_labels())
        fail(ErrorKind::unsupported, "properness profile requires a labeled Cayley ball");
    if (p < 1) fail(ErrorKind::domain, "properness profile requires p >= 1");
    if (workers <= 0) workers = default_worker_count();

    const auto dist = g.distances_from(basepoint);
    const int radius = *std::max_element(dist.begin(), dist.end());

    std::vector<double> value(g.vertex_count(), 0.0);
    std::size_t unconverged = 0;
    if (p == 1.0) {
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            value[v] = quotient_norm_l1(g, v, basepoint).value;
    } else {
        std::vector<char> bad(g.vertex_count(), 0);
        parallel_chunks_ctx(
            static_cast<std::size_t>(g.vertex_count()), workers,
            [&] { return std::make_unique<PotentialSolver>(g); },
            [&](std::unique_ptr<PotentialSolver>& solver, std::size_t lo, std::size_t hi) {
                for (std::size_t vi = lo; vi < hi; ++vi) {
                    const Vertex v = static_cast<Vertex>(vi);
                    if (v == basepoint) continue;
                    const auto sol =
                        min_norm_flow(g, v, basepoint, p, FlowOptions{}, solver.get());
                    value[vi] = sol.value;
                    bad[vi] = sol.converged ? 0 : 1;
                }
            });
        for (const char b : bad) unconverged += b;
    }

    ProfileResult out;
    out.unconverged = unconverged;
    out.rows.resize(radius + 1);
    for (int r = 0; r <= radius; ++r) out.rows[r] = {r, kInfinity, -kInfinity};
    out.rows[0] = {0, 0.0, 0.0};
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (v == basepoint) continue;
        auto& row = out.rows[dist[v]];
        row.min_norm = std::min(row.min_norm, value[v]);
        row.max_norm = std::max(row.max_norm, value[v]);
    }
    return out;
}

ProofConstants compute_constants(const Graph& g, ConstantsOptions options) {
    ProofConstants constants;
    if (g.vertex_count() <= options.delta_exact_cap) {
        const auto res = four_point_delta_exact(g, options.delta_exact_cap, options.workers);
        constants.delta = res.delta;
        constants.delta_exact = true;
    } else {
        const auto res =
            four_point_delta_sampled(g, options.delta_samples, options.seed, options.workers);
        constants.delta = res.delta;
        constants.delta_exact = false;
    }

    const auto choice = suggest_epsilon(g, constants.delta, options.c_cap, options.workers);
    constants.epsilon = choice.epsilon;
    constants.sandwich_C = choice.worst_C;

    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<Vertex> pick(0, g.vertex_count() - 1);
    std::vector<std::pair<Vertex, Vertex>> pairs;
    while (pairs.size() < options.growth_pairs) {
        const Vertex x = pick(rng), y = pick(rng);
        if (x != y) pairs.push_back({x, y});
    }
    const auto fit = growth_fit(g, pairs, options.growth_k_max, options.workers);
    constants.beta_prime = std::max(fit.beta_prime, 1e-6);
    constants.growth_prefactor = fit.growth_prefactor;
    constants.growth_prefactor_cert = fit.growth_prefactor;

    fill_gap_window(constants);
    return constants;
}

} // namespace hypquot
