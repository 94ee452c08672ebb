#include <algorithm>
#include <unordered_map>

#include "hypquot/graph.hpp"
#include "hypquot/words.hpp"

namespace hypquot {

namespace {

void add_edge(std::vector<std::pair<Vertex, Vertex>>& edges, Vertex a, Vertex b) {
    if (a != b) edges.push_back({std::min(a, b), std::max(a, b)});
}

} // namespace

Graph Graph::cayley_ball(const GroupSpec& spec, CayleyLimits limits, GraphOptions options) {
    spec.validate();
    const auto wp = WordProblem::make(spec);

    std::vector<std::string> labels{""};
    std::vector<std::pair<Vertex, Vertex>> edge_pairs;

    auto reserve_vertex = [&](const std::string& word) -> Vertex {
        if (labels.size() >= limits.vertex_cap)
            fail(ErrorKind::resource, "cayley ball exceeds the vertex cap of " +
                                          std::to_string(limits.vertex_cap) +
                                          " at radius " + std::to_string(spec.radius));
        labels.push_back(word);
        return static_cast<Vertex>(labels.size() - 1);
    };

    if (wp->has_canonical_form()) {
        std::unordered_map<std::string, Vertex> id{{"", 0}};
        std::vector<Vertex> layer{0};
        for (int k = 0; k <= spec.radius && !layer.empty(); ++k) {
            std::vector<Vertex> next;
            for (const Vertex v : layer) {
                const std::string word = labels[v];
                for (const char s : wp->generators()) {
                    const std::string nw = wp->reduce(word + s);
                    const auto it = id.find(nw);
                    if (it != id.end()) {
                        add_edge(edge_pairs, v, it->second);
                    } else if (k < spec.radius) {
                        const Vertex t = reserve_vertex(nw);
                        id.emplace(nw, t);
                        next.push_back(t);
                        add_edge(edge_pairs, v, t);
                    }
                    // k == spec.radius and unseen: the neighbor lies outside the ball.
                }
            }
            layer = std::move(next);
        }
    } else {
        // No canonical form: layered search with the group's equality oracle.
        // Generator steps change the distance by exactly one and relations have
        // even length, so a candidate word of length k+1 names an element at
        // distance k+1 or k-1, and one of length k-1 an element at distance k-1.
        std::vector<std::vector<Vertex>> layers{{0}};
        std::unordered_map<std::string, Vertex> word_to_id{{"", 0}};
        for (int k = 0; k <= spec.radius; ++k) {
            if (static_cast<std::size_t>(k) >= layers.size()) break;
            struct Cand {
                std::string word;
                Vertex src;
            };
            std::vector<Cand> shorter, longer;
            for (const Vertex v : layers[k]) {
                for (const char s : wp->generators()) {
                    std::string nw = WordProblem::free_reduce(labels[v] + s);
                    if (nw.size() == labels[v].size() + 1)
                        longer.push_back({std::move(nw), v});
                    else
                        shorter.push_back({std::move(nw), v});
                }
            }
            auto resolve_in_layer = [&](const std::string& word, int li) -> Vertex {
                for (const Vertex z : layers[li])
                    if (wp->equal(labels[z], word)) return z;
                return -1;
            };
            for (const Cand& c : shorter) {
                auto it = word_to_id.find(c.word);
                Vertex t = it != word_to_id.end() ? it->second : resolve_in_layer(c.word, k - 1);
                word_to_id.emplace(c.word, t);
                add_edge(edge_pairs, c.src, t);
            }
            // Lexicographically smallest geodesic word becomes the label.
            std::sort(longer.begin(), longer.end(), [](const Cand& a, const Cand& b) {
                return a.word != b.word ? a.word < b.word : a.src < b.src;
            });
            std::vector<Vertex> next;
            for (std::size_t i = 0; i < longer.size();) {
                std::size_t j = i;
                while (j < longer.size() && longer[j].word == longer[i].word) ++j;
                const std::string& word = longer[i].word;
                Vertex t = -1;
                const auto it = word_to_id.find(word);
                if (it != word_to_id.end()) {
                    t = it->second;
                } else {
                    if (k >= 1) t = resolve_in_layer(word, k - 1);
                    if (t < 0)
                        for (const Vertex z : next)
                            if (wp->equal(labels[z], word)) {
                                t = z;
                                break;
                            }
                    if (t < 0 && k < spec.radius) {
                        t = reserve_vertex(word);
                        next.push_back(t);
                    }
                    if (t >= 0) word_to_id.emplace(word, t);
                }
                if (t >= 0)
                    for (std::size_t l = i; l < j; ++l) add_edge(edge_pairs, longer[l].src, t);
                i = j;
            }
            layers.push_back(std::move(next));
        }
    }

    Graph g;
    g.n_ = static_cast<Vertex>(labels.size());
    for (const auto& [u, v] : edge_pairs) g.edges_.push_back({u, v});
    std::sort(g.edges_.begin(), g.edges_.end());
    g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());
    g.labels_ = std::move(labels);
    for (Vertex v = 0; v < g.n_; ++v) g.label_to_vertex_.emplace(g.labels_[v], v);
    g.spec_ = spec;
    g.finalize(options);
    return g;
}

} // namespace hypquot
