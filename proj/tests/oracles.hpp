// Test-side oracles, kept independent of the library code paths they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

// Plain BFS over an edge list; deliberately not using hypquot::Graph.
inline std::vector<int> bfs_distances(int n, const std::vector<std::pair<int, int>>& edges,
                                      int source) {
    std::vector<std::vector<int>> adj(n);
    for (const auto& [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<int> dist(n, -1);
    std::queue<int> q;
    q.push(source);
    dist[source] = 0;
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (const int w : adj[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
    }
    return dist;
}

// Number of reduced words of length k over rank r free generators: 2r (2r-1)^{k-1}.
inline std::uint64_t free_sphere_size(int rank, int k) {
    if (k == 0) return 1;
    std::uint64_t count = 2 * static_cast<std::uint64_t>(rank);
    for (int i = 1; i < k; ++i) count *= 2 * rank - 1;
    return count;
}

inline std::uint64_t free_ball_size(int rank, int radius) {
    std::uint64_t total = 0;
    for (int k = 0; k <= radius; ++k) total += free_sphere_size(rank, k);
    return total;
}

// Brute-force enumeration of reduced words, as an independent cross-check of
// the closed-form sphere count.
inline std::uint64_t free_sphere_by_enumeration(int rank, int k) {
    std::vector<std::string> words{""};
    std::string letters;
    for (int i = 0; i < rank; ++i) {
        letters.push_back(static_cast<char>('a' + i));
        letters.push_back(static_cast<char>('A' + i));
    }
    auto inverse = [](char c) {
        return static_cast<char>(std::isupper(static_cast<unsigned char>(c)) ? std::tolower(c)
                                                                             : std::toupper(c));
    };
    for (int step = 0; step < k; ++step) {
        std::vector<std::string> next;
        for (const auto& w : words)
            for (const char c : letters)
                if (w.empty() || w.back() != inverse(c)) next.push_back(w + c);
        words = std::move(next);
    }
    return words.size();
}

// Lattice points with |x| + |y| <= R.
inline std::uint64_t l1_ball_size(int radius) {
    std::uint64_t count = 0;
    for (int x = -radius; x <= radius; ++x)
        for (int y = -radius; y <= radius; ++y)
            if (std::abs(x) + std::abs(y) <= radius) ++count;
    return count;
}

// Sphere sizes in Z/2 * Z/3 with generators {a, b, b^2}: alternating-syllable
// count A_k (ending in a) = B_{k-1}, B_k (ending in b-type) = 2 A_{k-1}.
inline std::uint64_t z2z3_ball_size(int radius) {
    std::uint64_t total = 1, a_prev = 0, b_prev = 0;
    for (int k = 1; k <= radius; ++k) {
        const std::uint64_t a = k == 1 ? 1 : b_prev;
        const std::uint64_t b = k == 1 ? 2 : 2 * a_prev;
        total += a + b;
        a_prev = a;
        b_prev = b;
    }
    return total;
}

// Exhaustive chain infimum for visual metrics on tiny graphs: minimal sum of
// rho over all simple vertex sequences from x to y.
inline double chain_infimum(const std::vector<std::vector<double>>& rho, int x, int y) {
    const int n = static_cast<int>(rho.size());
    std::vector<char> used(n, 0);
    double best = rho[x][y];
    auto dfs = [&](auto&& self, int cur, double acc) -> void {
        if (acc >= best) return;
        if (cur == y) {
            best = std::min(best, acc);
            return;
        }
        for (int z = 0; z < n; ++z) {
            if (used[z] || z == cur) continue;
            used[z] = 1;
            self(self, z, acc + rho[cur][z]);
            used[z] = 0;
        }
    };
    used[x] = 1;
    dfs(dfs, x, 0.0);
    return best;
}

// Independent four-point scan for small graphs.
inline double four_point_delta(const std::vector<std::vector<int>>& d) {
    const int n = static_cast<int>(d.size());
    int worst = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int e = 0; e < n; ++e)
                    worst = std::max(worst, d[a][c] + d[b][e] -
                                                std::max(d[a][e] + d[b][c], d[a][b] + d[c][e]));
    return worst;
}

// Minimum over s in [0,1] of (2 s^p + 2 (1-s)^p)^{1/p}: the exact feasible
// line for opposite corners of the 4-cycle.
inline double four_cycle_min_norm(double p) {
    auto f = [&](double s) { return std::pow(2.0 * std::pow(s, p) + 2.0 * std::pow(1.0 - s, p), 1.0 / p); };
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (f(m1) < f(m2))
            hi = m2;
        else
            lo = m1;
    }
    return f(0.5 * (lo + hi));
}

struct CycleSpace {
    std::vector<long double> base;                // feasible chain for (x, y)
    std::vector<std::vector<long double>> cycles; // fundamental cycle basis
};

// Explicit feasible affine set: a tree-path chain plus a fundamental cycle
// basis from a BFS spanning tree.
inline CycleSpace cycle_space(int n, const std::vector<std::pair<int, int>>& edges, int x,
                              int y) {
    const int m = static_cast<int>(edges.size());
    std::vector<std::vector<std::pair<int, int>>> adj(n); // (neighbor, edge idx)
    for (int i = 0; i < m; ++i) {
        adj[edges[i].first].push_back({edges[i].second, i});
        adj[edges[i].second].push_back({edges[i].first, i});
    }
    std::vector<int> parent(n, -1), parent_edge(n, -1);
    std::vector<char> seen(n, 0), in_tree(m, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (const auto& [w, idx] : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                parent[w] = v;
                parent_edge[w] = idx;
                in_tree[idx] = 1;
                q.push(w);
            }
    }
    // Signed tree path between two vertices, as edge coefficients.
    auto tree_path = [&](int from, int to) {
        std::vector<long double> coeffs(m, 0.0L);
        std::vector<int> fa, ta;
        for (int v = from; v >= 0; v = parent[v]) fa.push_back(v);
        for (int v = to; v >= 0; v = parent[v]) ta.push_back(v);
        std::set<int> fset(fa.begin(), fa.end());
        int meet = to;
        for (const int v : ta)
            if (fset.count(v)) {
                meet = v;
                break;
            }
        // Walk v -> parent(v) up to the meet; the oriented step (v, parent)
        // contributes +1 when the stored edge is (v, parent), else -1.
        auto ascend_from = [&](int v, long double sign) {
            while (v != meet) {
                const int idx = parent_edge[v];
                const int u = parent[v];
                const long double orient = edges[idx].first == v ? 1.0L : -1.0L;
                coeffs[idx] += sign * orient;
                v = u;
            }
        };
        ascend_from(from, 1.0L);  // from -> meet, upward
        ascend_from(to, -1.0L);   // meet -> to, downward
        return coeffs;
    };

    CycleSpace out;
    out.base = tree_path(x, y); // boundary delta_y - delta_x by telescoping
    for (int i = 0; i < m; ++i) {
        if (in_tree[i]) continue;
        auto cyc = tree_path(edges[i].second, edges[i].first);
        cyc[i] += 1.0L; // close with the non-tree edge, oriented first -> second
        out.cycles.push_back(std::move(cyc));
    }
    return out;
}

inline long double lp_objective(const std::vector<long double>& c, double p) {
    long double sum = 0.0L;
    for (const auto& v : c) sum += powl(fabsl(v), static_cast<long double>(p));
    return sum;
}

// High-precision minimization of sum_e |c_e|^p over the affine set of chains
// with boundary delta_y - delta_x: cycle-space coordinate descent in long
// double. Converges well for p not too close to 1; for p near 1 prefer the
// directional-minimality certificate below.
inline long double lp_flow_minimum(int n, const std::vector<std::pair<int, int>>& edges, int x,
                                   int y, double p, int sweeps = 400) {
    const auto space = cycle_space(n, edges, x, y);
    const int m = static_cast<int>(edges.size());
    std::vector<long double> c = space.base;
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        for (const auto& cyc : space.cycles) {
            auto value_at = [&](long double t) {
                long double sum = 0.0L;
                for (int i = 0; i < m; ++i)
                    sum += powl(fabsl(c[i] + t * cyc[i]), static_cast<long double>(p));
                return sum;
            };
            long double lo = -2.0L, hi = 2.0L;
            const long double gr = 0.6180339887498949L;
            long double m1 = hi - gr * (hi - lo), m2 = lo + gr * (hi - lo);
            long double f1 = value_at(m1), f2 = value_at(m2);
            for (int it = 0; it < 90; ++it) {
                if (f1 <= f2) {
                    hi = m2;
                    m2 = m1;
                    f2 = f1;
                    m1 = hi - gr * (hi - lo);
                    f1 = value_at(m1);
                } else {
                    lo = m1;
                    m1 = m2;
                    f1 = f2;
                    m2 = lo + gr * (hi - lo);
                    f2 = value_at(m2);
                }
            }
            const long double t = 0.5L * (lo + hi);
            if (value_at(t) < lp_objective(c, p))
                for (int i = 0; i < m; ++i) c[i] += t * cyc[i];
        }
    }
    return powl(lp_objective(c, p), 1.0L / static_cast<long double>(p));
}

// Certificate that a feasible chain is a local (hence global, by convexity)
// minimizer: no probe along the cycle space lowers the objective by more than
// the tolerance. Returns the largest observed relative improvement.
inline double directional_slack(const std::vector<long double>& c,
                                const std::vector<std::vector<long double>>& cycles, double p,
                                std::mt19937_64& rng) {
    const int m = static_cast<int>(c.size());
    const long double f0 = lp_objective(c, p);
    long double best_drop = 0.0L;
    auto probe = [&](const std::vector<long double>& dir) {
        for (const long double t : {1e-6L, -1e-6L, 1e-4L, -1e-4L, 1e-2L, -1e-2L, 0.3L, -0.3L}) {
            std::vector<long double> cc(c);
            for (int i = 0; i < m; ++i) cc[i] += t * dir[i];
            best_drop = std::max(best_drop, f0 - lp_objective(cc, p));
        }
    };
    for (const auto& cyc : cycles) probe(cyc);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int round = 0; round < 24 && !cycles.empty(); ++round) {
        std::vector<long double> dir(m, 0.0L);
        for (const auto& cyc : cycles) {
            const long double w = gauss(rng);
            for (int i = 0; i < m; ++i) dir[i] += w * cyc[i];
        }
        probe(dir);
    }
    return static_cast<double>(best_drop / std::max(f0, 1e-30L));
}

// Random connected graph: random spanning tree plus extra random edges.
inline std::vector<std::pair<int, int>> random_connected_graph(int n, int extra_edges,
                                                               std::mt19937_64& rng) {
    std::vector<std::pair<int, int>> edges;
    std::set<std::pair<int, int>> seen;
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> pick(0, v - 1);
        const int u = pick(rng);
        edges.push_back({u, v});
        seen.insert({u, v});
    }
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int tries = 0; tries < 20 * extra_edges && extra_edges > 0; ++tries) {
        int u = pick(rng), v = pick(rng);
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        if (seen.count({u, v})) continue;
        seen.insert({u, v});
        edges.push_back({u, v});
        if (--extra_edges == 0) break;
    }
    return edges;
}

} // namespace oracle
