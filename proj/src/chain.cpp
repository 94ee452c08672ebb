#include "hypquot/chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <type_traits>

namespace hypquot {

double Chain::oriented(Vertex from, Vertex to) const {
    const int idx = graph_->edge_index(from, to);
    if (idx < 0)
        fail(ErrorKind::invalid_vertex, "no edge (" + std::to_string(from) + ", " +
                                            std::to_string(to) + ") in the graph");
    const double value = coeff(idx);
    return from < to ? value : -value;
}

void Chain::set(int edge_index, double value) {
    if (edge_index < 0 || static_cast<std::size_t>(edge_index) >= graph_->edge_count())
        fail(ErrorKind::invalid_vertex, "edge index out of range");
    if (value == 0.0)
        coeffs_.erase(edge_index);
    else
        coeffs_[edge_index] = value;
}

void Chain::add_oriented(Vertex from, Vertex to, double value) {
    const int idx = graph_->edge_index(from, to);
    if (idx < 0)
        fail(ErrorKind::invalid_vertex, "no edge (" + std::to_string(from) + ", " +
                                            std::to_string(to) + ") in the graph");
    const double signed_value = from < to ? value : -value;
    const double next = coeff(idx) + signed_value;
    set(idx, next);
}

void Chain::add_scaled(const Chain& other, double factor) {
    for (const auto& [idx, value] : other.coeffs_) set(idx, coeff(idx) + factor * value);
}

void Chain::prune(double threshold) {
    for (auto it = coeffs_.begin(); it != coeffs_.end();)
        it = std::abs(it->second) <= threshold ? coeffs_.erase(it) : std::next(it);
}

std::vector<double> Chain::to_dense() const {
    std::vector<double> values(graph_->edge_count(), 0.0);
    for (const auto& [idx, value] : coeffs_) values[idx] = value;
    return values;
}

Chain Chain::from_dense(const Graph& graph, const std::vector<double>& values, double threshold) {
    if (values.size() != graph.edge_count())
        fail(ErrorKind::domain, "dense coefficient vector has wrong length");
    Chain c(graph);
    for (std::size_t i = 0; i < values.size(); ++i)
        if (std::abs(values[i]) > threshold) c.coeffs_[static_cast<int>(i)] = values[i];
    return c;
}

std::vector<std::tuple<Vertex, Vertex, double>> Chain::triples() const {
    std::vector<std::tuple<Vertex, Vertex, double>> out;
    out.reserve(coeffs_.size());
    for (const auto& [idx, value] : coeffs_) {
        const auto& e = graph_->canonical_edges()[idx];
        out.emplace_back(e.u, e.v, value);
    }
    return out;
}

Chain Chain::from_triples(const Graph& graph,
                          const std::vector<std::tuple<Vertex, Vertex, double>>& triples) {
    Chain c(graph);
    for (const auto& [u, v, value] : triples) c.add_oriented(u, v, u < v ? value : -value);
    return c;
}

void VertexCharge::add(Vertex v, double value) {
    const double next = at(v) + value;
    if (next == 0.0)
        values_.erase(v);
    else
        values_[v] = next;
}

double VertexCharge::total() const {
    double sum = 0.0;
    for (const auto& [v, value] : values_) sum += value;
    return sum;
}

void VertexCharge::prune(double threshold) {
    for (auto it = values_.begin(); it != values_.end();)
        it = std::abs(it->second) <= threshold ? values_.erase(it) : std::next(it);
}

VertexCharge boundary(const Chain& chain) {
    VertexCharge out;
    const auto& edges = chain.graph().canonical_edges();
    for (const auto& [idx, value] : chain.coeffs()) {
        out.add(edges[idx].v, value);
        out.add(edges[idx].u, -value);
    }
    return out;
}

Chain chain_from_path(const Graph& graph, const std::vector<Vertex>& vertices) {
    Chain c(graph);
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
        c.add_oriented(vertices[i], vertices[i + 1], 1.0);
    c.prune(0.0);
    return c;
}

double lp_norm(const Chain& chain, double p) {
    if (p < 1.0) fail(ErrorKind::domain, "lp_norm requires p >= 1");
    double sum = 0.0;
    for (const auto& [idx, value] : chain.coeffs()) sum += std::pow(std::abs(value), p);
    return std::pow(sum, 1.0 / p);
}

double Decomposition::path_weight_sum() const {
    double sum = 0.0;
    for (const auto& term : paths) sum += term.weight;
    return sum;
}

Chain Decomposition::reconstruct(const Graph& graph) const {
    Chain out(graph);
    for (const auto& term : paths) out.add_scaled(chain_from_path(graph, term.vertices), term.weight);
    for (const auto& term : loops) out.add_scaled(chain_from_path(graph, term.vertices), term.weight);
    return out;
}

namespace {

struct DoubleOps {
    using Scalar = double;
    double flush;
    bool is_zero(double v) const { return std::abs(v) <= flush; }
    static double abs(double v) { return std::abs(v); }
    static bool close_to(double v, double target) { return std::abs(v - target) <= 1e-9; }
};

struct RationalOps {
    using Scalar = Rational;
    bool is_zero(const Rational& v) const { return v.is_zero(); }
    static Rational abs(const Rational& v) { return v.abs(); }
    static bool close_to(const Rational& v, double target) {
        return v == Rational(static_cast<std::int64_t>(target));
    }
};

// Shared peeling engine. Coefficients live on canonical edges; the oriented
// value of a -> b is +coeff when a < b and -coeff otherwise.
template <typename Ops>
struct PeelEngine {
    using S = typename Ops::Scalar;

    const Graph& g;
    Ops ops;
    std::vector<S> coeff;
    std::vector<int> visit_pos; // walk-local visitation stamps
    std::size_t support = 0;

    struct Term {
        S weight;
        std::vector<Vertex> vertices;
    };
    std::vector<Term> paths, loops;
    std::size_t iterations = 0;

    PeelEngine(const Graph& graph, Ops o)
        : g(graph), ops(o), coeff(graph.edge_count(), S(0)),
          visit_pos(graph.vertex_count(), -1) {}

    S oriented_from(Vertex a, int idx) const {
        return g.canonical_edges()[idx].u == a ? coeff[idx] : -coeff[idx];
    }

    void add_oriented_from(Vertex a, int idx, const S& delta) {
        if (g.canonical_edges()[idx].u == a)
            coeff[idx] = coeff[idx] + delta;
        else
            coeff[idx] = coeff[idx] - delta;
    }

    void refresh_support() {
        support = 0;
        for (auto& v : coeff) {
            if (ops.is_zero(v)) v = S(0);
            else ++support;
        }
    }

    // Follows oriented edges with sign * value > 0, taking the largest value
    // (smallest edge index on ties). Returns the walked vertices; loop_at is
    // the position of the first revisited vertex, or -1 when sink was reached.
    bool walk(Vertex start, Vertex sink, int sign, std::vector<Vertex>& out, int& loop_at) {
        out.clear();
        std::vector<Vertex> touched;
        Vertex cur = start;
        out.push_back(cur);
        visit_pos[cur] = 0;
        touched.push_back(cur);
        bool ok = true;
        for (;;) {
            if (cur == sink && out.size() > 1) {
                loop_at = -1;
                break;
            }
            int best_idx = -1;
            S best_val = S(0);
            for (const int idx : g.incident_edges(cur)) {
                S val = oriented_from(cur, idx);
                if (sign < 0) val = -val;
                if (ops.is_zero(val) || val < S(0)) continue;
                if (best_idx < 0 || best_val < val) {
                    best_idx = idx;
                    best_val = val;
                }
            }
            if (best_idx < 0) {
                ok = false; // numerically stranded; caller decides
                break;
            }
            const auto& e = g.canonical_edges()[best_idx];
            const Vertex nxt = e.u == cur ? e.v : e.u;
            if (visit_pos[nxt] >= 0) {
                out.push_back(nxt);
                loop_at = visit_pos[nxt];
                break;
            }
            visit_pos[nxt] = static_cast<int>(out.size());
            out.push_back(nxt);
            touched.push_back(nxt);
            cur = nxt;
        }
        for (const Vertex v : touched) visit_pos[v] = -1;
        return ok;
    }

    S min_abs_along(const std::vector<Vertex>& verts, std::size_t begin) const {
        S best = S(0);
        bool first = true;
        for (std::size_t i = begin; i + 1 < verts.size(); ++i) {
            const int idx = g.edge_index(verts[i], verts[i + 1]);
            const S a = Ops::abs(coeff[idx]);
            if (first || a < best) {
                best = a;
                first = false;
            }
        }
        return best;
    }

    void subtract_walk(const std::vector<Vertex>& verts, std::size_t begin, const S& weight) {
        for (std::size_t i = begin; i + 1 < verts.size(); ++i) {
            const int idx = g.edge_index(verts[i], verts[i + 1]);
            add_oriented_from(verts[i], idx, -weight);
        }
    }

    double residual_max() const {
        double mx = 0.0;
        for (const auto& v : coeff)
            if constexpr (std::is_same_v<S, double>)
                mx = std::max(mx, std::abs(v));
            else
                mx = std::max(mx, std::abs(v.to_double()));
        return mx;
    }

    void run(Vertex x, Vertex y, bool has_dipole, S mu) {
        refresh_support();
        const std::size_t budget = support + 8;
        while (support > 0) {
            if (++iterations > budget)
                fail(ErrorKind::convergence, "decomposition failed to terminate");
            int sign = 0;
            if (has_dipole && !ops.is_zero(mu)) sign = mu > S(0) ? 1 : -1;
            std::vector<Vertex> verts;
            int loop_at = 0;
            if (sign != 0) {
                if (!walk(x, y, sign, verts, loop_at)) {
                    if (residual_max() <= 1e-9) break; // flush numerical dust
                    fail(ErrorKind::convergence, "conservation violated during peeling");
                }
                if (loop_at < 0) {
                    const S m = min_abs_along(verts, 0);
                    const S weight = sign > 0 ? m : -m;
                    paths.push_back({weight, verts});
                    subtract_walk(verts, 0, weight);
                    mu = mu - weight;
                } else {
                    extract_loop(verts, static_cast<std::size_t>(loop_at), sign);
                }
            } else {
                // Pure cycle: start at the smallest vertex carrying support.
                Vertex start = -1;
                for (std::size_t idx = 0; idx < coeff.size(); ++idx) {
                    if (!ops.is_zero(coeff[idx])) {
                        start = g.canonical_edges()[idx].u;
                        break;
                    }
                }
                if (start < 0) break;
                if (!walk(start, -1, 1, verts, loop_at) || loop_at < 0) {
                    if (residual_max() <= 1e-9) break;
                    fail(ErrorKind::convergence, "conservation violated during cycle peeling");
                }
                extract_loop(verts, static_cast<std::size_t>(loop_at), 1);
            }
            refresh_support();
        }
    }

    void extract_loop(const std::vector<Vertex>& verts, std::size_t from, int sign) {
        std::vector<Vertex> loop(verts.begin() + from, verts.end());
        const S m = min_abs_along(verts, from);
        const S weight = sign > 0 ? m : -m;
        subtract_walk(verts, from, weight);
        if (sign > 0) {
            loops.push_back({m, std::move(loop)});
        } else {
            std::reverse(loop.begin(), loop.end());
            loops.push_back({m, std::move(loop)});
        }
    }
};

// Boundary must be zero or a unit dipole delta_y - delta_x.
template <typename Ops>
void analyze_boundary(const Graph& g, const std::vector<typename Ops::Scalar>& coeff,
                      const Ops& ops, bool& has_dipole, Vertex& x, Vertex& y,
                      typename Ops::Scalar& mu) {
    using S = typename Ops::Scalar;
    std::vector<S> charge(g.vertex_count(), S(0));
    const auto& edges = g.canonical_edges();
    for (std::size_t i = 0; i < coeff.size(); ++i) {
        if (ops.is_zero(coeff[i])) continue;
        charge[edges[i].v] = charge[edges[i].v] + coeff[i];
        charge[edges[i].u] = charge[edges[i].u] - coeff[i];
    }
    std::vector<Vertex> hot;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (!ops.is_zero(charge[v])) hot.push_back(v);
    if (hot.empty()) {
        has_dipole = false;
        x = y = -1;
        mu = S(0);
        return;
    }
    if (hot.size() == 2) {
        Vertex neg = -1, pos = -1;
        for (const Vertex v : hot) (charge[v] > S(0) ? pos : neg) = v;
        if (pos >= 0 && neg >= 0 && Ops::close_to(charge[pos], 1.0) &&
            Ops::close_to(charge[neg], -1.0)) {
            has_dipole = true;
            x = neg;
            y = pos;
            mu = S(1);
            return;
        }
    }
    fail(ErrorKind::domain,
         "chain boundary is neither zero nor a unit dipole delta_y - delta_x");
}

} // namespace

Decomposition decompose(const Chain& chain, double flush_threshold) {
    const Graph& g = chain.graph();
    DoubleOps ops{flush_threshold};
    PeelEngine<DoubleOps> engine(g, ops);
    engine.coeff = chain.to_dense();

    bool has_dipole = false;
    Vertex x = -1, y = -1;
    double mu = 0.0;
    analyze_boundary(g, engine.coeff, ops, has_dipole, x, y, mu);
    engine.run(x, y, has_dipole, mu);

    Decomposition out;
    out.iterations = engine.iterations;
    for (auto& t : engine.paths) out.paths.push_back({t.weight, std::move(t.vertices)});
    for (auto& t : engine.loops) out.loops.push_back({t.weight, std::move(t.vertices)});
    return out;
}

RationalDecomposition
decompose_exact(const Graph& graph,
                const std::vector<std::tuple<Vertex, Vertex, Rational>>& triples) {
    RationalOps ops;
    PeelEngine<RationalOps> engine(graph, ops);
    for (const auto& [u, v, value] : triples) {
        const int idx = graph.edge_index(u, v);
        if (idx < 0)
            fail(ErrorKind::invalid_vertex, "no edge (" + std::to_string(u) + ", " +
                                                std::to_string(v) + ") in the graph");
        const Rational signed_value = u < v ? value : -value;
        engine.coeff[idx] = engine.coeff[idx] + signed_value;
    }

    bool has_dipole = false;
    Vertex x = -1, y = -1;
    Rational mu(0);
    analyze_boundary(graph, engine.coeff, ops, has_dipole, x, y, mu);
    engine.run(x, y, has_dipole, mu);

    RationalDecomposition out;
    out.iterations = engine.iterations;
    for (auto& t : engine.paths) out.paths.push_back({t.weight, std::move(t.vertices)});
    for (auto& t : engine.loops) out.loops.push_back({t.weight, std::move(t.vertices)});
    return out;
}

double kirchhoff_imbalance(const Chain& chain, Vertex source, Vertex sink) {
    const Graph& g = chain.graph();
    std::vector<double> in(g.vertex_count(), 0.0), out(g.vertex_count(), 0.0);
    const auto& edges = g.canonical_edges();
    for (const auto& [idx, value] : chain.coeffs()) {
        if (value == 0.0) continue;
        const Vertex tail = value > 0 ? edges[idx].u : edges[idx].v;
        const Vertex head = value > 0 ? edges[idx].v : edges[idx].u;
        out[tail] += std::abs(value);
        in[head] += std::abs(value);
    }
    double worst = 0.0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (v == source || v == sink) continue;
        worst = std::max(worst, std::abs(in[v] - out[v]));
    }
    return worst;
}

} // namespace hypquot
