#include "hypquot/hyperbolicity.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hypquot/parallel.hpp"

namespace hypquot {

double gromov_product(const Graph& g, Vertex t, Vertex x, Vertex y) {
    return 0.5 * (g.distance(x, t) + g.distance(y, t) - g.distance(x, y));
}

namespace {

struct DeltaAcc {
    int value = -1;
    std::array<Vertex, 4> witness{0, 0, 0, 0};

    void feed(int candidate, std::array<Vertex, 4> quad) {
        if (candidate > value || (candidate == value && quad < witness)) {
            value = candidate;
            witness = quad;
        }
    }
    void merge(const DeltaAcc& other) {
        if (other.value > value || (other.value == value && other.witness < witness)) {
            value = other.value;
            witness = other.witness;
        }
    }
};

std::vector<std::vector<int>> distance_rows(const Graph& g) {
    std::vector<std::vector<int>> rows(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v) rows[v] = g.distances_from(v);
    return rows;
}

int four_point_excess(const std::vector<std::vector<int>>& d, Vertex a, Vertex b, Vertex c,
                      Vertex x) {
    return d[a][c] + d[b][x] - std::max(d[a][x] + d[b][c], d[a][b] + d[c][x]);
}

} // namespace

DeltaResult four_point_delta_exact(const Graph& g, Vertex exact_cap, int workers) {
    const Vertex n = g.vertex_count();
    if (n > exact_cap)
        fail(ErrorKind::resource,
             "exact four-point scan is O(n^4); " + std::to_string(n) + " vertices exceed the cap of " +
                 std::to_string(exact_cap) + " (use the sampled mode)");
    if (workers <= 0) workers = default_worker_count();
    const auto d = distance_rows(g);

    // The excess is invariant under (a,b,c,x) -> (b,a,x,c), (c,x,a,b) and
    // (x,c,b,a), so scanning quadruples whose first entry is minimal covers
    // every orbit.
    DeltaAcc result = parallel_reduce<DeltaAcc>(
        static_cast<std::size_t>(n), workers, DeltaAcc{},
        [&](DeltaAcc& acc, std::size_t ai) {
            const Vertex a = static_cast<Vertex>(ai);
            for (Vertex b = a; b < n; ++b)
                for (Vertex c = a; c < n; ++c)
                    for (Vertex x = a; x < n; ++x)
                        acc.feed(four_point_excess(d, a, b, c, x), {a, b, c, x});
        },
        [](DeltaAcc& out, const DeltaAcc& in) { out.merge(in); });

    return {static_cast<double>(std::max(result.value, 0)), true, result.witness};
}

DeltaResult four_point_delta_sampled(const Graph& g, std::size_t samples, std::uint64_t seed,
                                     int workers) {
    const Vertex n = g.vertex_count();
    if (workers <= 0) workers = default_worker_count();
    const bool table = g.has_distance_table();
    // Without the all-pairs table fall back to a per-sample BFS batch keyed on a.
    std::vector<std::vector<int>> rows;
    if (table) rows = distance_rows(g);

    DeltaAcc result = parallel_reduce<DeltaAcc>(
        samples, workers, DeltaAcc{},
        [&](DeltaAcc& acc, std::size_t i) {
            std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + i);
            std::uniform_int_distribution<Vertex> pick(0, n - 1);
            const Vertex a = pick(rng), b = pick(rng), c = pick(rng), x = pick(rng);
            int excess;
            if (table) {
                excess = four_point_excess(rows, a, b, c, x);
            } else {
                const auto da = g.distances_from(a);
                const auto db = g.distances_from(b);
                const auto dc = g.distances_from(c);
                excess = da[c] + db[x] - std::max(da[x] + db[c], da[b] + dc[x]);
            }
            acc.feed(excess, {a, b, c, x});
        },
        [](DeltaAcc& out, const DeltaAcc& in) { out.merge(in); });

    return {static_cast<double>(std::max(result.value, 0)), false, result.witness};
}

double VisualMetric::rho(Vertex x, Vertex y) const {
    return std::exp(-epsilon_ * gromov_product(*graph_, center_, x, y));
}

VisualMetric build_visual_metric(const Graph& g, Vertex t, double epsilon, int workers,
                                 Vertex dense_cap) {
    if (epsilon <= 0) fail(ErrorKind::domain, "visual metric parameter epsilon must be positive");
    const Vertex n = g.vertex_count();
    if (n > dense_cap)
        fail(ErrorKind::resource, "visual metric needs a dense n x n table; " + std::to_string(n) +
                                      " vertices exceed the cap of " + std::to_string(dense_cap));
    if (workers <= 0) workers = default_worker_count();

    const auto dt = g.distances_from(t);
    std::vector<double> rho(static_cast<std::size_t>(n) * n);
    parallel_chunks(static_cast<std::size_t>(n), workers, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t u = lo; u < hi; ++u) {
            const auto du = g.distances_from(static_cast<Vertex>(u));
            for (Vertex v = 0; v < n; ++v)
                rho[u * n + v] = std::exp(-epsilon * 0.5 * (dt[u] + dt[v] - du[v]));
        }
    });

    // Shortest chains in the complete weighted graph (Floyd-Warshall).
    std::vector<double> dist = rho;
    for (Vertex k = 0; k < n; ++k) {
        const double* krow = dist.data() + static_cast<std::size_t>(k) * n;
        parallel_chunks(static_cast<std::size_t>(n), workers, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                double* irow = dist.data() + i * n;
                const double dik = irow[k];
                for (Vertex j = 0; j < n; ++j) irow[j] = std::min(irow[j], dik + krow[j]);
            }
        });
    }
    for (Vertex x = 0; x < n; ++x)
        dist[static_cast<std::size_t>(x) * n + x] = rho[static_cast<std::size_t>(x) * n + x];

    double worst = 1.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        const double ratio = rho[i] / dist[i];
        worst = std::max(worst, std::max(ratio, 1.0 / ratio));
    }
    return VisualMetric(g, t, epsilon, std::move(dist), worst);
}

EpsilonChoice suggest_epsilon(const Graph& g, double delta, double c_cap, int workers) {
    if (delta < 0) fail(ErrorKind::domain, "delta must be nonnegative");
    if (c_cap <= 1) fail(ErrorKind::domain, "the sandwich cap must exceed 1");
    const Vertex n = g.vertex_count();
    const Vertex count = std::min<Vertex>(10, n);
    std::vector<Vertex> centers;
    for (Vertex i = 0; i < count; ++i)
        centers.push_back(static_cast<Vertex>(static_cast<long>(i) * n / count));

    const double top = std::log(2.0) / std::max(delta, 1.0);
    double best_eps = 0.0, best_c = std::numeric_limits<double>::infinity();
    for (int j = 0; j <= 12; ++j) {
        const double eps = top * std::ldexp(1.0, -j);
        double worst = 1.0;
        for (const Vertex t : centers)
            worst = std::max(worst, build_visual_metric(g, t, eps, workers).sandwich_C());
        if (worst <= c_cap) return {eps, worst, centers};
        if (worst < best_c) {
            best_c = worst;
            best_eps = eps;
        }
    }
    throw EpsilonSearchError(best_eps, best_c,
                             "no epsilon in the grid reaches sandwich constant <= " +
                                 std::to_string(c_cap) + "; best was C = " + std::to_string(best_c) +
                                 " at epsilon = " + std::to_string(best_eps));
}

GrowthFit growth_fit(const Graph& g, const std::vector<std::pair<Vertex, Vertex>>& pairs,
                     int k_max, int workers) {
    if (pairs.empty()) fail(ErrorKind::domain, "growth_fit needs at least one vertex pair");
    for (const auto& [x, y] : pairs)
        if (x == y) fail(ErrorKind::domain, "growth_fit pairs must have distinct endpoints");
    if (k_max < 0) fail(ErrorKind::domain, "k_max must be nonnegative");
    if (workers <= 0) workers = default_worker_count();

    // counts[pair][k] = N(k), cumulative.
    std::vector<std::vector<std::size_t>> counts(pairs.size());
    std::vector<int> dxy(pairs.size());
    parallel_chunks(pairs.size(), workers, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const auto [x, y] = pairs[i];
            dxy[i] = g.distance(x, y);
            const auto geod = g.eta_geodesic_set(x, y, 0.0);
            const auto dist = g.distances_to_set(geod);
            std::vector<std::size_t> hist(static_cast<std::size_t>(k_max) + 1, 0);
            for (Vertex z = 0; z < g.vertex_count(); ++z)
                if (dist[z] <= k_max) ++hist[dist[z]];
            for (int k = 1; k <= k_max; ++k) hist[k] += hist[k - 1];
            counts[i] = std::move(hist);
        }
    });

    double sk = 0, skk = 0, sv = 0, skv = 0;
    std::size_t m = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (int k = 0; k <= k_max; ++k) {
            const double v = std::log(static_cast<double>(counts[i][k]) / dxy[i]);
            sk += k;
            skk += static_cast<double>(k) * k;
            sv += v;
            skv += k * v;
            ++m;
        }
    GrowthFit fit;
    fit.sample_count = m;
    const double denom = m * skk - sk * sk;
    double slope = 0.0, intercept = sv / m;
    if (denom > 0 && k_max > 0) {
        slope = (m * skv - sk * sv) / denom;
        intercept = (sv - slope * sk) / m;
    }
    fit.beta_prime = std::max(slope, 0.0);
    fit.fit_prefactor = std::exp(intercept);

    double needed = 0.0, resid = 0.0;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (int k = 0; k <= k_max; ++k) {
            const double bound_unit = std::exp(fit.beta_prime * k) * dxy[i];
            needed = std::max(needed, counts[i][k] / bound_unit);
            const double predicted = intercept + slope * k;
            resid = std::max(resid,
                             std::abs(std::log(static_cast<double>(counts[i][k]) / dxy[i]) - predicted));
        }
    fit.growth_prefactor = std::max(needed, fit.fit_prefactor);
    fit.fit_residual = resid;
    return fit;
}

const char* to_string(NestingVerdict v) {
    switch (v) {
    case NestingVerdict::holds: return "holds";
    case NestingVerdict::vacuous: return "vacuous";
    case NestingVerdict::violated: return "violated";
    }
    return "?";
}

NestingVerdict nesting_check(const Graph& g, Vertex a, Vertex b, Vertex c, Vertex d, double eta1,
                             double eta2, double delta) {
    constexpr double kSlack = 1e-9;
    const double dab = g.distance(a, b), dbc = g.distance(b, c), dac = g.distance(a, c);
    const double dcd = g.distance(c, d), dbd = g.distance(b, d), dad = g.distance(a, d);
    const bool hyp_b = dab + dbc <= dac + eta1 + kSlack;
    const bool hyp_c = dbc + dcd <= dbd + eta2 + kSlack;
    const bool gap = dbc > (eta1 + eta2 + delta) / 2.0 + kSlack;
    if (!hyp_b || !hyp_c || !gap) return NestingVerdict::vacuous;
    const bool conc_b = dab + dbd <= dad + eta1 + delta + kSlack;
    const bool conc_c = dac + dcd <= dad + eta2 + delta + kSlack;
    return conc_b && conc_c ? NestingVerdict::holds : NestingVerdict::violated;
}

} // namespace hypquot
