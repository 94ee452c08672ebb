#include "hypquot/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <istream>
#include <ostream>
#include <sstream>

namespace hypquot {

namespace {

Json finite_or_marker(double v) {
    if (std::isinf(v)) return v > 0 ? Json("inf") : Json("-inf");
    if (std::isnan(v)) return Json(nullptr);
    return Json(v);
}

} // namespace

Json graph_summary(const Graph& g) {
    Json j;
    j["vertices"] = g.vertex_count();
    j["edges"] = g.edge_count();
    j["degree_bound"] = g.degree_bound();
    j["tree"] = g.is_tree();
    if (g.cayley_spec()) j["group"] = g.cayley_spec()->name();
    if (g.cayley_spec()) j["radius"] = g.cayley_spec()->radius;
    return j;
}

Json to_json(const ProofConstants& c) {
    Json j;
    j["delta"] = c.delta;
    j["delta_exact"] = c.delta_exact;
    j["epsilon"] = c.epsilon;
    j["sandwich_C"] = c.sandwich_C;
    j["delta1"] = c.delta1;
    j["delta2"] = c.delta2;
    j["segment_gap"] = c.segment_gap;
    j["Delta"] = c.Delta;
    j["Delta_prime"] = c.Delta_prime;
    j["Delta_double_prime"] = c.Delta_double_prime;
    j["alpha"] = c.alpha;
    j["beta_paper"] = c.beta_paper;
    j["beta_emp"] = finite_or_marker(c.beta_emp);
    j["beta"] = c.beta;
    j["beta_prime"] = c.beta_prime;
    j["growth_prefactor"] = c.growth_prefactor;
    j["growth_prefactor_cert"] = c.growth_prefactor_cert;
    j["p"] = c.p;
    j["q"] = finite_or_marker(c.q);
    j["series_sum"] = finite_or_marker(c.series_sum);
    j["alpha_prime"] = c.alpha_prime;
    j["p_zero"] = finite_or_marker(c.p_zero);
    return j;
}

Json to_json(const Witness& w) {
    Json j;
    j["note"] = w.note;
    j["vertices"] = w.vertices;
    j["numbers"] = w.numbers;
    return j;
}

Json to_json(const StatementReport& r) {
    Json j;
    j["id"] = r.id;
    j["holds"] = r.holds;
    j["violated"] = r.violated;
    j["vacuous"] = r.vacuous;
    Json ws = Json::array();
    for (const auto& w : r.witnesses) ws.push_back(to_json(w));
    j["witnesses"] = ws;
    return j;
}

Json to_json(const LowerBoundReport& r, bool include_pairs) {
    Json j;
    j["constants"] = to_json(r.constants);
    j["pairs_checked"] = r.pairs.size();
    j["violations"] = r.violations;
    j["unconverged"] = r.unconverged;
    if (include_pairs) {
        Json rows = Json::array();
        for (const auto& row : r.pairs) {
            Json e;
            e["x"] = row.x;
            e["y"] = row.y;
            e["distance"] = row.distance;
            e["value"] = row.value;
            e["kkt_residual"] = row.kkt_residual;
            e["converged"] = row.converged;
            e["chain_sum"] = row.chain_sum;
            e["edge_sum"] = row.edge_sum;
            e["lower_bound"] = row.lower_bound;
            e["upper_bound"] = row.upper_bound;
            e["holder_ok"] = row.holder_ok;
            e["bounds_ok"] = row.bounds_ok;
            rows.push_back(e);
        }
        j["pairs"] = rows;
    }
    return j;
}

Json to_json(const ProfileResult& profile, double p) {
    Json j;
    j["p"] = p;
    j["unconverged"] = profile.unconverged;
    Json rows = Json::array();
    for (const auto& row : profile.rows) {
        Json e;
        e["radius"] = row.radius;
        e["min_norm"] = row.min_norm;
        e["max_norm"] = row.max_norm;
        rows.push_back(e);
    }
    j["rows"] = rows;
    return j;
}

Json to_json(const EuclidResult& r, int m, int d_len, double epsilon) {
    Json j;
    j["m"] = m;
    j["d"] = d_len;
    j["epsilon"] = epsilon;
    j["formula_value"] = r.formula_value;
    j["constructed_value"] = r.constructed_value;
    j["upper_bound"] = r.upper_bound;
    j["beta_ratio"] = r.beta_ratio;
    return j;
}

Json to_json(const Decomposition& d) {
    Json j;
    j["iterations"] = d.iterations;
    j["path_weight_sum"] = d.path_weight_sum();
    Json paths = Json::array();
    for (const auto& t : d.paths) {
        Json e;
        e["weight"] = t.weight;
        e["vertices"] = t.vertices;
        paths.push_back(e);
    }
    Json loops = Json::array();
    for (const auto& t : d.loops) {
        Json e;
        e["weight"] = t.weight;
        e["vertices"] = t.vertices;
        loops.push_back(e);
    }
    j["paths"] = paths;
    j["loops"] = loops;
    return j;
}

Json to_json(const FlowSolution& s) {
    Json j;
    j["source"] = s.source;
    j["sink"] = s.sink;
    j["p"] = s.p;
    j["value"] = s.value;
    j["kkt_residual"] = s.kkt_residual;
    j["iterations"] = s.iterations;
    j["converged"] = s.converged;
    Json triples = Json::array();
    for (const auto& [u, v, c] : s.chain.triples()) triples.push_back(Json::array({u, v, c}));
    j["chain"] = triples;
    return j;
}

Json report_envelope(const std::string& subcommand, std::uint64_t seed, int workers) {
    Json j;
    j["schema_version"] = 1;
    j["tool"] = "hypquot";
    j["subcommand"] = subcommand;
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
    j["timestamp"] = buf;
    j["seed"] = seed;
    j["workers"] = workers;
    return j;
}

void write_profile_csv(std::ostream& out, const ProfileResult& profile, double p) {
    out << "radius,min_norm,max_norm,p\n";
    for (const auto& row : profile.rows) {
        Json minj = row.min_norm, maxj = row.max_norm, pj = p;
        out << row.radius << ',' << minj.dump() << ',' << maxj.dump() << ',' << pj.dump()
            << '\n';
    }
}

void write_counterexample_csv(std::ostream& out, const EuclidResult& r, int m, int d_len,
                              double epsilon) {
    out << "m,d,epsilon,formula_value,constructed_value,upper_bound,beta_ratio\n";
    out << m << ',' << d_len << ',' << Json(epsilon).dump() << ',' << Json(r.formula_value).dump()
        << ',' << Json(r.constructed_value).dump() << ',' << Json(r.upper_bound).dump() << ','
        << Json(r.beta_ratio).dump() << '\n';
}

Chain read_chain_text(std::istream& in, const Graph& g) {
    Chain c(g);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream row(line);
        Vertex u, v;
        double coeff;
        if (!(row >> u >> v)) continue; // blank line
        if (!(row >> coeff))
            fail(ErrorKind::format,
                 "chain line " + std::to_string(lineno) + ": expected 'u v coefficient'");
        c.add_oriented(u, v, u < v ? coeff : -coeff);
    }
    return c;
}

} // namespace hypquot
