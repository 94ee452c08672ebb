#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hypquot/errors.hpp"

namespace hypquot {

using Vertex = std::int32_t;

/// Unoriented edge stored with its canonical orientation u < v.
struct CanonicalEdge {
    Vertex u;
    Vertex v;

    friend bool operator==(const CanonicalEdge& a, const CanonicalEdge& b) {
        return a.u == b.u && a.v == b.v;
    }
    friend bool operator<(const CanonicalEdge& a, const CanonicalEdge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    }
};

struct GroupSpec {
    enum class Kind { free_group, grid2d, z2z3, surface_genus2 };

    Kind kind = Kind::free_group;
    int rank = 2; // free_group only; alphabet supports ranks 1..4
    int radius = 0;

    void validate() const;
    std::string name() const;

    /// Parses "free:<rank>", "grid2d", "z2z3" or "surface2".
    static GroupSpec parse(const std::string& text, int radius);
};

struct GraphOptions {
    // Below this vertex count an all-pairs distance table is built eagerly;
    // above it every distance query runs a fresh BFS.
    Vertex allpairs_threshold = 5000;
};

struct CayleyLimits {
    std::size_t vertex_cap = 1'000'000;
};

/// Finite connected undirected graph. Immutable once built; every query is
/// const and safe to run concurrently from any number of threads.
class Graph {
public:
    static Graph from_edges(const std::vector<std::pair<Vertex, Vertex>>& edges,
                            GraphOptions options = {});
    /// Text format: first line "n m", then m lines "u v" (0-based).
    static Graph from_stream(std::istream& in, GraphOptions options = {});
    static Graph cayley_ball(const GroupSpec& spec, CayleyLimits limits = {},
                             GraphOptions options = {});

    Vertex vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[check(v)]; }
    const std::vector<CanonicalEdge>& canonical_edges() const { return edges_; }
    int degree_bound() const { return degree_bound_; }
    bool is_tree() const { return edges_.size() + 1 == static_cast<std::size_t>(n_); }

    /// Index of the unoriented edge {u, v} in canonical_edges(), or -1.
    int edge_index(Vertex u, Vertex v) const;
    /// Canonical edge indices incident to v.
    const std::vector<int>& incident_edges(Vertex v) const { return incident_[check(v)]; }

    bool has_labels() const { return !labels_.empty(); }
    const std::string& label(Vertex v) const;
    std::optional<Vertex> vertex_by_label(const std::string& word) const;
    const std::optional<GroupSpec>& cayley_spec() const { return spec_; }

    int distance(Vertex x, Vertex y) const;
    /// Distances from x to every vertex (table row or one BFS).
    std::vector<int> distances_from(Vertex x) const;
    /// Multi-source BFS: distance from every vertex to the given set.
    std::vector<int> distances_to_set(const std::vector<Vertex>& sources) const;
    bool has_distance_table() const { return !dist_table_.empty(); }

    /// Vertices z with d(x,z) + d(z,y) <= d(x,y) + eta, ascending.
    std::vector<Vertex> eta_geodesic_set(Vertex x, Vertex y, double eta) const;
    /// One geodesic path from x to y (smallest-index tie-break, deterministic).
    std::vector<Vertex> geodesic(Vertex x, Vertex y) const;
    /// Vertex z on a geodesic with |d(x,z) - d(y,z)| <= 1, smallest index.
    Vertex midpoint(Vertex x, Vertex y) const;

    /// Left translation on a Cayley ball: the vertex labeled by the reduced
    /// word w * label(v), or nullopt when it falls outside the ball.
    std::optional<Vertex> translate(const std::string& word, Vertex v) const;

    void to_stream(std::ostream& out) const;

private:
    Graph() = default;
    void finalize(GraphOptions options); // builds incident lists, table, checks

    Vertex check(Vertex v) const {
        if (v < 0 || v >= n_)
            fail(ErrorKind::invalid_vertex,
                 "vertex " + std::to_string(v) + " out of range [0, " + std::to_string(n_) + ")");
        return v;
    }

    std::vector<int> bfs_from(Vertex x) const;

    Vertex n_ = 0;
    std::vector<std::vector<Vertex>> adj_;
    std::vector<CanonicalEdge> edges_; // sorted lexicographically
    std::vector<std::vector<int>> incident_;
    int degree_bound_ = 0;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, Vertex> label_to_vertex_;
    std::optional<GroupSpec> spec_;
    std::vector<std::uint16_t> dist_table_; // row-major, empty above threshold
};

} // namespace hypquot
