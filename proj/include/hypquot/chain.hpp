#pragma once

#include <map>
#include <vector>

#include "hypquot/graph.hpp"
#include "hypquot/rational.hpp"

namespace hypquot {

/// Finitely supported real function on the edges of a fixed graph, modulo
/// orientation reversal acting by sign flip. coeff(i) is the value on the
/// canonical orientation (u -> v with u < v) of edge i.
class Chain {
public:
    explicit Chain(const Graph& graph) : graph_(&graph) {}

    const Graph& graph() const { return *graph_; }

    double coeff(int edge_index) const {
        const auto it = coeffs_.find(edge_index);
        return it == coeffs_.end() ? 0.0 : it->second;
    }
    /// Signed coefficient of the oriented edge from -> to.
    double oriented(Vertex from, Vertex to) const;
    void set(int edge_index, double value);
    void add_oriented(Vertex from, Vertex to, double value);
    void add_scaled(const Chain& other, double factor);

    /// Sparse view, keyed by canonical edge index (ordered, deterministic).
    const std::map<int, double>& coeffs() const { return coeffs_; }
    std::size_t support_size() const { return coeffs_.size(); }
    bool is_zero() const { return coeffs_.empty(); }
    /// Drops entries with |value| <= threshold.
    void prune(double threshold = 0.0);

    std::vector<double> to_dense() const;
    static Chain from_dense(const Graph& graph, const std::vector<double>& values,
                            double threshold = 0.0);

    /// Serialization triples (u, v, coefficient) with u < v, sorted.
    std::vector<std::tuple<Vertex, Vertex, double>> triples() const;
    static Chain from_triples(const Graph& graph,
                              const std::vector<std::tuple<Vertex, Vertex, double>>& triples);

private:
    const Graph* graph_;
    std::map<int, double> coeffs_;
};

/// Finitely supported function on vertices; boundary images sum to zero.
class VertexCharge {
public:
    double at(Vertex v) const {
        const auto it = values_.find(v);
        return it == values_.end() ? 0.0 : it->second;
    }
    void add(Vertex v, double value);
    const std::map<Vertex, double>& values() const { return values_; }
    double total() const;
    void prune(double threshold = 0.0);

private:
    std::map<Vertex, double> values_;
};

/// Sum over the support of coeff * (head - tail) per oriented edge.
VertexCharge boundary(const Chain& chain);

/// Oriented edge sum along a vertex path; back-and-forth steps cancel.
Chain chain_from_path(const Graph& graph, const std::vector<Vertex>& vertices);

/// (sum over unoriented edges of |c(e)|^p)^(1/p), p >= 1.
double lp_norm(const Chain& chain, double p);

/// Weighted paths and loops reconstructing a chain, as produced by decompose.
struct Decomposition {
    struct PathTerm {
        double weight; // nonzero, sign may vary
        std::vector<Vertex> vertices;
    };
    struct LoopTerm {
        double weight; // strictly positive
        std::vector<Vertex> vertices; // closed walk, front() == back()
    };
    std::vector<PathTerm> paths;
    std::vector<LoopTerm> loops;
    std::size_t iterations = 0;

    double path_weight_sum() const;
    Chain reconstruct(const Graph& graph) const;
};

/// Peels a chain whose boundary is zero or a unit dipole into weighted
/// edge-simple source-to-sink paths plus positively weighted loops. Walks
/// follow the largest remaining coefficient (smallest edge index on ties)
/// and the support shrinks by at least one edge per extraction.
Decomposition decompose(const Chain& chain, double flush_threshold = 1e-12);

/// Exact-arithmetic variant for rational inputs.
struct RationalDecomposition {
    struct PathTerm {
        Rational weight;
        std::vector<Vertex> vertices;
    };
    struct LoopTerm {
        Rational weight;
        std::vector<Vertex> vertices;
    };
    std::vector<PathTerm> paths;
    std::vector<LoopTerm> loops;
    std::size_t iterations = 0;
};

RationalDecomposition
decompose_exact(const Graph& graph,
                const std::vector<std::tuple<Vertex, Vertex, Rational>>& triples);

/// Largest conservation violation of the positive-part flow over vertices
/// other than the two dipole endpoints (0 for exact inputs).
double kirchhoff_imbalance(const Chain& chain, Vertex source, Vertex sink);

} // namespace hypquot
