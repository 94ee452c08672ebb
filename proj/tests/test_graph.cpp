#include "doctest.h"

#include <algorithm>
#include <sstream>

#include "hypquot/graph.hpp"
#include "hypquot/words.hpp"
#include "oracles.hpp"

using namespace hypquot;

namespace {

Graph path_graph(int n) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    return Graph::from_edges(edges);
}

Graph cycle_graph(int n) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
    return Graph::from_edges(edges);
}

} // namespace

TEST_CASE("from_edges validates and builds") {
    const Graph g = path_graph(3);
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.distance(0, 2) == 2);
    CHECK(g.degree_bound() == 2);

    CHECK_THROWS_AS(Graph::from_edges({{0, 1}, {1, 0}}), Error);
    CHECK_THROWS_AS(Graph::from_edges({{0, 1}, {2, 3}}), Error);
    CHECK_THROWS_AS(Graph::from_edges({{0, 0}}), Error);
    try {
        Graph::from_edges({{0, 1}, {1, 0}});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::duplicate_edge);
    }
    try {
        Graph::from_edges({{0, 1}, {2, 3}});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::disconnected);
    }
    try {
        Graph::from_edges({{0, 0}});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::self_loop);
    }
}

TEST_CASE("file format round trip") {
    const Graph g = cycle_graph(5);
    std::stringstream buf;
    g.to_stream(buf);
    const Graph h = Graph::from_stream(buf);
    CHECK(h.vertex_count() == 5);
    CHECK(h.edge_count() == 5);
    CHECK(h.distance(0, 2) == 2);

    std::stringstream bad("3 1\n0 1\n");
    CHECK_THROWS_AS(Graph::from_stream(bad), Error); // vertex 2 isolated
}

TEST_CASE("distance is a metric and geodesic (exhaustive on small graphs)") {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 4; ++round) {
        const int n = 20 + round * 15;
        const auto edges = oracle::random_connected_graph(n, n / 2, rng);
        std::vector<std::pair<Vertex, Vertex>> typed(edges.begin(), edges.end());
        const Graph g = Graph::from_edges(typed);
        for (Vertex x = 0; x < g.vertex_count(); ++x) {
            const auto row = g.distances_from(x);
            const auto expect = oracle::bfs_distances(n, edges, x);
            for (Vertex y = 0; y < g.vertex_count(); ++y) {
                CHECK(row[y] == expect[y]);
                CHECK(g.distance(x, y) == g.distance(y, x));
                CHECK((g.distance(x, y) == 0) == (x == y));
            }
        }
        for (Vertex x = 0; x < g.vertex_count(); ++x)
            for (Vertex y = 0; y < g.vertex_count(); ++y) {
                const int d = g.distance(x, y);
                const auto dx = g.distances_from(x);
                const auto dy = g.distances_from(y);
                for (Vertex z = 0; z < g.vertex_count(); ++z)
                    CHECK(d <= dx[z] + dy[z]);
                for (int k = 0; k <= d; ++k) {
                    bool found = false;
                    for (Vertex z = 0; z < g.vertex_count() && !found; ++z)
                        found = dx[z] == k && dy[z] == d - k;
                    CHECK(found);
                }
            }
    }
}

TEST_CASE("eta geodesic sets") {
    const Graph p3 = path_graph(3);
    CHECK(p3.eta_geodesic_set(0, 2, 0.0) == std::vector<Vertex>{0, 1, 2});

    const Graph c4 = cycle_graph(4);
    CHECK(c4.eta_geodesic_set(0, 2, 0.0) == std::vector<Vertex>{0, 1, 2, 3});

    const Graph p5 = path_graph(5);
    const auto set = p5.eta_geodesic_set(0, 2, 2.0);
    CHECK(std::find(set.begin(), set.end(), 3) != set.end()); // 3 + 1 <= 2 + 2
    CHECK(std::find(set.begin(), set.end(), 4) == set.end());

    // Monotone in eta; always contains the endpoints.
    const Graph c6 = cycle_graph(6);
    for (Vertex x = 0; x < 6; ++x)
        for (Vertex y = 0; y < 6; ++y) {
            std::size_t prev = 0;
            for (const double eta : {0.0, 0.5, 1.0, 2.0, 4.0}) {
                const auto s = c6.eta_geodesic_set(x, y, eta);
                CHECK(std::find(s.begin(), s.end(), x) != s.end());
                CHECK(std::find(s.begin(), s.end(), y) != s.end());
                CHECK(s.size() >= prev);
                prev = s.size();
            }
        }
}

TEST_CASE("midpoint") {
    const Graph p5 = path_graph(5);
    CHECK(p5.midpoint(0, 4) == 2);
    CHECK(p5.midpoint(3, 3) == 3);
    const Graph p4 = path_graph(4);
    CHECK(p4.midpoint(0, 3) == 1); // smallest index among {1, 2}
}

TEST_CASE("cayley ball: free groups are trees with known sphere sizes") {
    for (int radius = 1; radius <= 5; ++radius) {
        const Graph g = Graph::cayley_ball(GroupSpec{GroupSpec::Kind::free_group, 2, radius});
        CHECK(static_cast<std::uint64_t>(g.vertex_count()) == oracle::free_ball_size(2, radius));
        CHECK(g.edge_count() + 1 == static_cast<std::size_t>(g.vertex_count())); // tree
        CHECK(g.degree_bound() == 4);
    }
    CHECK(oracle::free_sphere_by_enumeration(2, 3) == oracle::free_sphere_size(2, 3));

    const Graph r1 = Graph::cayley_ball(GroupSpec{GroupSpec::Kind::free_group, 2, 1});
    CHECK(r1.vertex_count() == 5);
    CHECK(r1.edge_count() == 4);

    const Graph r2 = Graph::cayley_ball(GroupSpec{GroupSpec::Kind::free_group, 2, 2});
    CHECK(r2.vertex_count() == 17);

    // d(a, a^{-1}) = 2 through the identity.
    const auto va = r2.vertex_by_label("a");
    const auto vA = r2.vertex_by_label("A");
    REQUIRE(va.has_value());
    REQUIRE(vA.has_value());
    CHECK(r2.distance(*va, *vA) == 2);
}

TEST_CASE("cayley ball: grid2d matches lattice counts") {
    for (int radius = 1; radius <= 4; ++radius) {
        const Graph g = Graph::cayley_ball(GroupSpec{GroupSpec::Kind::grid2d, 2, radius});
        CHECK(static_cast<std::uint64_t>(g.vertex_count()) == oracle::l1_ball_size(radius));
        CHECK(g.degree_bound() == 4);
    }
    const Graph g2 = Graph::cayley_ball(GroupSpec{GroupSpec::Kind::grid2d, 2, 2});
    CHECK(g2.vertex_count() == 13);
}

TEST_CASE("cayley ball: z2z3 sizes and local structure") {
    for (int radius = 1; radius <= 6; ++radius) {
        const Graph g = Graph::cayley_ball(GroupSpec{GroupSpec::Kind::z2z3, 2, radius});
        CHECK(static_cast<std::uint64_t>(g.vertex_count()) == oracle::z2z3_ball_size(radius));
        CHECK(g.degree_bound() == 3);
    }
    const Graph g = Graph::cayley_ball(GroupSpec{GroupSpec::Kind::z2z3, 2, 2});
    // b and b^2 close a triangle with the identity.
    const auto vb = g.vertex_by_label("b");
    const auto vB = g.vertex_by_label("B");
    REQUIRE(vb.has_value());
    REQUIRE(vB.has_value());
    CHECK(g.distance(*vb, *vB) == 1);
}

TEST_CASE("cayley ball: genus-2 surface group via Dehn reduction") {
    const Graph g = Graph::cayley_ball(GroupSpec{GroupSpec::Kind::surface_genus2, 2, 3});
    // No relation is short enough to identify words below length 4,
    // so spheres match the rank-4 free group up to radius 3.
    CHECK(static_cast<std::uint64_t>(g.vertex_count()) == oracle::free_ball_size(4, 3));
    CHECK(g.degree_bound() == 8);

    const auto wp = WordProblem::make(GroupSpec{GroupSpec::Kind::surface_genus2, 2, 4});
    CHECK(wp->equal("abAB", "dcDC")); // complement halves of the relator
    CHECK(wp->reduce("abABcdCD").empty());
    CHECK(!wp->equal("ab", "ba"));
}

TEST_CASE("cayley ball: vertex cap raises a resource error") {
    CayleyLimits limits;
    limits.vertex_cap = 10;
    CHECK_THROWS_AS(Graph::cayley_ball(GroupSpec{GroupSpec::Kind::free_group, 2, 3}, limits),
                    Error);
}

TEST_CASE("translate is a partial left action") {
    const Graph g = Graph::cayley_ball(GroupSpec{GroupSpec::Kind::free_group, 2, 2});
    const auto vb = g.vertex_by_label("b");
    REQUIRE(vb.has_value());

    SUBCASE("identity word fixes everything") {
        for (Vertex v = 0; v < g.vertex_count(); ++v) CHECK(g.translate("", v) == v);
    }
    SUBCASE("one step") {
        const auto moved = g.translate("a", *vb);
        REQUIRE(moved.has_value());
        CHECK(g.label(*moved) == "ab");
    }
    SUBCASE("outside the ball is undefined") {
        const auto far = g.vertex_by_label("aa");
        REQUIRE(far.has_value());
        CHECK(!g.translate("a", *far).has_value());
    }
    SUBCASE("unsupported on plain graphs") {
        const Graph plain = path_graph(3);
        CHECK_THROWS_AS(plain.translate("a", 0), Error);
    }
}

TEST_CASE("translate preserves distances inside the shrunk ball") {
    for (const auto kind :
         {GroupSpec::Kind::free_group, GroupSpec::Kind::grid2d, GroupSpec::Kind::z2z3}) {
        const int radius = 4;
        const Graph g = Graph::cayley_ball(GroupSpec{kind, 2, radius});
        const std::vector<std::string> words = kind == GroupSpec::Kind::z2z3
                                                   ? std::vector<std::string>{"a", "b", "ab"}
                                                   : std::vector<std::string>{"a", "b", "aB"};
        for (const auto& w : words) {
            const int wl = static_cast<int>(w.size());
            for (Vertex u = 0; u < g.vertex_count(); ++u) {
                if (g.distance(0, u) > radius - wl) continue;
                for (Vertex v = 0; v < g.vertex_count(); ++v) {
                    if (g.distance(0, v) > radius - wl) continue;
                    const auto tu = g.translate(w, u);
                    const auto tv = g.translate(w, v);
                    REQUIRE(tu.has_value());
                    REQUIRE(tv.has_value());
                    CHECK(g.distance(*tu, *tv) == g.distance(u, v));
                }
            }
        }
    }
}

TEST_CASE("group spec parsing and validation") {
    CHECK(GroupSpec::parse("free:3", 2).rank == 3);
    CHECK(GroupSpec::parse("z2z3", 1).kind == GroupSpec::Kind::z2z3);
    CHECK(GroupSpec::parse("grid2d", 1).kind == GroupSpec::Kind::grid2d);
    CHECK(GroupSpec::parse("surface2", 1).kind == GroupSpec::Kind::surface_genus2);
    CHECK_THROWS_AS(GroupSpec::parse("so3", 1), Error);
    GroupSpec bad{GroupSpec::Kind::free_group, 0, 1};
    CHECK_THROWS_AS(bad.validate(), Error);
}
