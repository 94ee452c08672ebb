#include "hypquot/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>

#include "hypquot/words.hpp"

namespace hypquot {

void GroupSpec::validate() const {
    if (radius < 0) fail(ErrorKind::domain, "radius must be nonnegative");
    if (kind == Kind::free_group) {
        if (rank < 1) fail(ErrorKind::domain, "free group rank must be >= 1");
        if (rank > 4) fail(ErrorKind::domain, "free group rank above 4 exceeds the a..d alphabet");
    }
}

std::string GroupSpec::name() const {
    switch (kind) {
    case Kind::free_group: return "free:" + std::to_string(rank);
    case Kind::grid2d: return "grid2d";
    case Kind::z2z3: return "z2z3";
    case Kind::surface_genus2: return "surface2";
    }
    return "?";
}

GroupSpec GroupSpec::parse(const std::string& text, int radius) {
    GroupSpec spec;
    spec.radius = radius;
    if (text.rfind("free", 0) == 0) {
        spec.kind = Kind::free_group;
        spec.rank = 2;
        const auto colon = text.find(':');
        if (colon != std::string::npos) {
            try {
                spec.rank = std::stoi(text.substr(colon + 1));
            } catch (const std::exception&) {
                fail(ErrorKind::format, "cannot parse free-group rank in '" + text + "'");
            }
        }
    } else if (text == "grid2d" || text == "grid") {
        spec.kind = Kind::grid2d;
    } else if (text == "z2z3") {
        spec.kind = Kind::z2z3;
    } else if (text == "surface2" || text == "surface_genus2") {
        spec.kind = Kind::surface_genus2;
    } else {
        fail(ErrorKind::format, "unknown group '" + text + "' (expected free:<rank>, grid2d, z2z3, surface2)");
    }
    spec.validate();
    return spec;
}

Graph Graph::from_edges(const std::vector<std::pair<Vertex, Vertex>>& edges, GraphOptions options) {
    if (edges.empty()) fail(ErrorKind::domain, "edge list is empty");
    Vertex n = 0;
    for (const auto& [u, v] : edges) {
        if (u < 0 || v < 0) fail(ErrorKind::invalid_vertex, "negative vertex id in edge list");
        n = std::max({n, u + 1, v + 1});
    }
    Graph g;
    g.n_ = n;
    g.edges_.reserve(edges.size());
    for (const auto& [u, v] : edges) {
        if (u == v)
            fail(ErrorKind::self_loop, "self-loop at vertex " + std::to_string(u));
        g.edges_.push_back({std::min(u, v), std::max(u, v)});
    }
    std::sort(g.edges_.begin(), g.edges_.end());
    for (std::size_t i = 1; i < g.edges_.size(); ++i)
        if (g.edges_[i] == g.edges_[i - 1])
            fail(ErrorKind::duplicate_edge, "duplicate edge (" + std::to_string(g.edges_[i].u) +
                                                ", " + std::to_string(g.edges_[i].v) + ")");
    g.finalize(options);
    return g;
}

Graph Graph::from_stream(std::istream& in, GraphOptions options) {
    Vertex n = 0;
    std::size_t m = 0;
    if (!(in >> n >> m)) fail(ErrorKind::format, "expected header line 'n m'");
    if (n <= 0) fail(ErrorKind::format, "vertex count must be positive");
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        Vertex u = 0, v = 0;
        if (!(in >> u >> v)) fail(ErrorKind::format, "expected " + std::to_string(m) + " edge lines");
        if (u < 0 || u >= n || v < 0 || v >= n)
            fail(ErrorKind::invalid_vertex,
                 "edge (" + std::to_string(u) + ", " + std::to_string(v) + ") out of range");
        edges.push_back({u, v});
    }
    Graph g = from_edges(edges, options);
    if (g.n_ != n)
        fail(ErrorKind::disconnected,
             "vertex " + std::to_string(g.n_) + " has no incident edge");
    return g;
}

void Graph::to_stream(std::ostream& out) const {
    out << n_ << ' ' << edges_.size() << '\n';
    for (const auto& e : edges_) out << e.u << ' ' << e.v << '\n';
}

void Graph::finalize(GraphOptions options) {
    adj_.assign(n_, {});
    for (const auto& e : edges_) {
        adj_[e.u].push_back(e.v);
        adj_[e.v].push_back(e.u);
    }
    degree_bound_ = 0;
    for (auto& list : adj_) {
        std::sort(list.begin(), list.end());
        degree_bound_ = std::max(degree_bound_, static_cast<int>(list.size()));
    }
    incident_.assign(n_, {});
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        incident_[edges_[i].u].push_back(static_cast<int>(i));
        incident_[edges_[i].v].push_back(static_cast<int>(i));
    }

    // Connectivity sweep from vertex 0.
    std::vector<char> seen(n_, 0);
    std::deque<Vertex> queue{0};
    seen[0] = 1;
    Vertex reached = 1;
    while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop_front();
        for (Vertex w : adj_[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                queue.push_back(w);
            }
    }
    if (reached != n_) {
        Vertex missing = 0;
        while (seen[missing]) ++missing;
        fail(ErrorKind::disconnected,
             "graph is disconnected: vertex " + std::to_string(missing) +
                 " is unreachable from vertex 0");
    }

    if (n_ <= options.allpairs_threshold) {
        dist_table_.assign(static_cast<std::size_t>(n_) * n_, 0);
        for (Vertex x = 0; x < n_; ++x) {
            const auto row = bfs_from(x);
            for (Vertex y = 0; y < n_; ++y)
                dist_table_[static_cast<std::size_t>(x) * n_ + y] =
                    static_cast<std::uint16_t>(row[y]);
        }
    }
}

int Graph::edge_index(Vertex u, Vertex v) const {
    check(u);
    check(v);
    const CanonicalEdge key{std::min(u, v), std::max(u, v)};
    const auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    if (it == edges_.end() || !(*it == key)) return -1;
    return static_cast<int>(it - edges_.begin());
}

const std::string& Graph::label(Vertex v) const {
    check(v);
    if (labels_.empty()) fail(ErrorKind::unsupported, "graph carries no vertex labels");
    return labels_[v];
}

std::optional<Vertex> Graph::vertex_by_label(const std::string& word) const {
    const auto it = label_to_vertex_.find(word);
    if (it == label_to_vertex_.end()) return std::nullopt;
    return it->second;
}

std::vector<int> Graph::bfs_from(Vertex x) const {
    std::vector<int> dist(n_, -1);
    std::deque<Vertex> queue{x};
    dist[x] = 0;
    while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop_front();
        for (Vertex w : adj_[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
    }
    return dist;
}

int Graph::distance(Vertex x, Vertex y) const {
    check(x);
    check(y);
    if (!dist_table_.empty()) return dist_table_[static_cast<std::size_t>(x) * n_ + y];
    return bfs_from(x)[y];
}

std::vector<int> Graph::distances_from(Vertex x) const {
    check(x);
    if (!dist_table_.empty()) {
        std::vector<int> row(n_);
        const auto* base = dist_table_.data() + static_cast<std::size_t>(x) * n_;
        for (Vertex y = 0; y < n_; ++y) row[y] = base[y];
        return row;
    }
    return bfs_from(x);
}

std::vector<int> Graph::distances_to_set(const std::vector<Vertex>& sources) const {
    if (sources.empty()) fail(ErrorKind::domain, "distances_to_set needs a nonempty source set");
    std::vector<int> dist(n_, -1);
    std::deque<Vertex> queue;
    for (Vertex s : sources) {
        check(s);
        if (dist[s] < 0) {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop_front();
        for (Vertex w : adj_[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
    }
    return dist;
}

std::vector<Vertex> Graph::eta_geodesic_set(Vertex x, Vertex y, double eta) const {
    if (eta < 0) fail(ErrorKind::domain, "eta must be nonnegative");
    const auto dx = distances_from(x);
    const auto dy = distances_from(y);
    const double budget = dx[y] + eta;
    std::vector<Vertex> out;
    for (Vertex z = 0; z < n_; ++z)
        if (dx[z] + dy[z] <= budget) out.push_back(z);
    return out;
}

std::vector<Vertex> Graph::geodesic(Vertex x, Vertex y) const {
    check(x);
    check(y);
    const auto dy = distances_from(y);
    std::vector<Vertex> path{x};
    Vertex cur = x;
    while (cur != y) {
        for (Vertex w : adj_[cur]) // neighbors sorted: smallest-index tie-break
            if (dy[w] == dy[cur] - 1) {
                cur = w;
                break;
            }
        path.push_back(cur);
    }
    return path;
}

Vertex Graph::midpoint(Vertex x, Vertex y) const {
    const auto dx = distances_from(x);
    const auto dy = distances_from(y);
    const int d = dx[y];
    for (Vertex z = 0; z < n_; ++z)
        if (dx[z] + dy[z] == d && std::abs(dx[z] - dy[z]) <= 1) return z;
    fail(ErrorKind::domain, "no midpoint found (graph metric not geodesic?)");
}

std::optional<Vertex> Graph::translate(const std::string& word, Vertex v) const {
    check(v);
    if (!spec_ || labels_.empty())
        fail(ErrorKind::unsupported, "translate requires a labeled Cayley ball");
    const auto wp = WordProblem::make(*spec_);
    if (!wp->valid_word(word))
        fail(ErrorKind::format, "word '" + word + "' uses letters outside the group alphabet");
    const std::string target = wp->reduce(word + labels_[v]);
    if (wp->has_canonical_form()) return vertex_by_label(target);
    // No canonical form: scan candidates whose distance can match.
    const int wl = static_cast<int>(wp->reduce(word).size());
    const int vl = static_cast<int>(labels_[v].size());
    for (Vertex z = 0; z < n_; ++z) {
        const int zl = static_cast<int>(labels_[z].size());
        if (zl > wl + vl) continue;
        if (wp->equal(labels_[z], target)) return z;
    }
    return std::nullopt;
}

} // namespace hypquot
