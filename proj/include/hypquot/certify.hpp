#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hypquot/chain.hpp"
#include "hypquot/graph.hpp"
#include "hypquot/hyperbolicity.hpp"
#include "hypquot/lp_flow.hpp"

namespace hypquot {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Ledger of every constant the inequality chain needs, from the metric
/// diagnostics down to the lower-bound exponent window.
struct ProofConstants {
    double delta = 0.0;
    bool delta_exact = true;
    double epsilon = 0.0;
    double sandwich_C = 1.0;

    double delta1 = 0.0; // projection gap window, delta2 >= delta1 > 3 delta + 1
    double delta2 = 0.0;
    double segment_gap = 0.0; // worst-case d(t_k, t_{k+1}) used for the slacks
    double Delta = 0.0;       // (segment_gap + 1)/2 + delta
    double Delta_prime = 0.0; // Delta + delta
    double Delta_double_prime = 0.0; // 3(segment_gap + 1)/2 + 2 delta

    double alpha = 0.0;      // alpha_eta at eta = Delta''
    double beta_paper = 0.0; // alpha / delta2
    double beta_emp = std::numeric_limits<double>::quiet_NaN();
    double beta = 0.0; // min(beta_paper, beta_emp) once both exist

    double beta_prime = 0.0;
    double growth_prefactor = 1.0;      // vertex-count bound, inflated over samples
    double growth_prefactor_cert = 1.0; // additionally covers tested edge sums

    double p = 0.0;
    double q = 0.0;          // conjugate exponent
    double series_sum = 0.0; // D' = 1/(1 - exp(beta' - eps q))
    double alpha_prime = 0.0;
    double p_zero = kInfinity;
};

/// alpha_eta = exp(-eps (eta/2 + 1)) / C^2.
double alpha_eta(double epsilon, double c, double eta);
/// beta' / (beta' - eps) when eps < beta', +infinity otherwise.
double p_zero(double beta_prime, double epsilon);
/// Geometric tail 1/(1 - exp(beta' - eps q)); requires q > beta'/eps.
double series_sum_d_prime(double beta_prime, double epsilon, double q);
/// beta / (D D')^{1/q} with D' the geometric tail above.
double alpha_prime(double beta, double growth_prefactor, double beta_prime, double epsilon,
                   double q);

/// Default gap window: delta1 = ceil(3 delta + 2), delta2 = 2 delta1.
void fill_gap_window(ProofConstants& constants);
/// Derives q, D', p_zero and alpha_prime for the given p.
void finalize_for_p(ProofConstants& constants, double p);

struct Witness {
    std::string note;
    std::vector<Vertex> vertices;
    std::vector<double> numbers;
};

struct StatementReport {
    std::string id;
    std::size_t holds = 0;
    std::size_t violated = 0;
    std::size_t vacuous = 0;
    std::vector<Witness> witnesses; // violations and extreme cases, replayable

    void record(bool ok) { ok ? ++holds : ++violated; }
};

/// Weighted sum exp(-eps d(x_i, geod(x,y))) along a path, last vertex excluded.
double path_weight_sum(const Graph& g, const std::vector<Vertex>& path, Vertex x, Vertex y,
                       double epsilon);

/// Sum over unoriented edges of |c(e)| exp(-eps d(e, geod(x,y))) where the
/// edge distance is the smaller endpoint distance. Requires boundary
/// delta_y - delta_x.
double chain_weight_sum(const Graph& g, const Chain& chain, Vertex x, Vertex y, double epsilon);

struct BetaFamily {
    struct PathEntry {
        std::vector<Vertex> path; // front() = x, back() = y
        std::string tag;
    };
    struct ChainEntry {
        Chain chain;
        Vertex x;
        Vertex y;
        std::string tag;
    };
    std::vector<PathEntry> paths;
    std::vector<ChainEntry> chains;
};

struct BetaMeasurement {
    double beta_emp = kInfinity; // infimum of (weighted sum) / d(x,y)
    std::string witness_tag;
    double witness_sum = 0.0;
    double witness_distance = 0.0;
};

BetaMeasurement measure_beta(const Graph& g, double epsilon, const BetaFamily& family);

/// Exhaustive check of the adjacent-pair product bounds
/// d(x_i, t) - 1 <= (x_i, x_{i+1})_t <= d(x_i, t) over all oriented edges and
/// all centers t.
StatementReport check_product_bounds_exhaustive(const Graph& g);

/// Exhaustive nesting scan over all ordered quadruples and the given eta grid.
StatementReport check_nesting_exhaustive(const Graph& g, double delta,
                                         const std::vector<double>& etas, int workers = 0);

struct VisualLowerBoundOptions {
    std::size_t samples = 500;
    std::uint64_t seed = 1;
    int max_walk_length = 40;
    double eta_max = -1.0; // defaults to Delta'' of the constants in use
    std::size_t replay_center_cap = 5; // dense d_t tables built for at most this many centers
};

/// Sampled lower bound sum exp(-eps d(x_i, t)) >= alpha_eta for t in the
/// eta-geodesic set of the endpoints, with the two-step inequality replay.
StatementReport check_visual_lower_bound(const Graph& g, const ProofConstants& constants,
                                         VisualLowerBoundOptions options = {});

struct EuclidResult {
    double formula_value = 0.0;     // exact displayed sum
    double constructed_value = 0.0; // weight sum of the explicit rectangle path
    double upper_bound = 0.0;       // 2/(1 - e^-eps) + d e^{-eps m}
    double beta_ratio = 0.0;        // formula_value / d
};

/// Rectangle detour of height m over a straight segment of length d_len in
/// the square lattice; the weighted path sum admits the closed form that
/// defeats any uniform linear lower bound.
EuclidResult euclid_counterexample(int m, int d_len, double epsilon,
                                   CayleyLimits limits = {});

struct PipelineOptions {
    double delta1 = 0.0; // 0 = derive from the constants' gap window
    double delta2 = 0.0;
};

struct SegmentCheck {
    std::size_t i_from = 0, i_to = 0;
    Vertex t_from = 0, t_to = 0, mid = 0;
    double gap = 0.0; // d(t_from, t_to)
    NestingVerdict nest_left = NestingVerdict::vacuous;
    NestingVerdict nest_right = NestingVerdict::vacuous;
    NestingVerdict nest_outer = NestingVerdict::vacuous;
    bool mid_in_wide_geod = false; // Delta''-geodesic membership
    bool mid_on_geod_xy = false;
    double segment_sum = 0.0;
    double alpha_bound = 0.0;
    bool segment_ok = false;
};

struct PathPipelineResult {
    bool short_branch = false;
    bool extraction_ok = true;
    std::string failure;
    std::vector<SegmentCheck> segments;
    double total_sum = 0.0;
    double assembly_bound = 0.0; // alpha * d / delta2
    bool assembly_ok = false;
};

/// Constructive replay of the projection/midpoint argument on one path:
/// extract projections with gaps inside [delta1, delta2], run the three
/// nesting applications per segment, check the midpoint memberships and the
/// per-segment lower bounds, then the final assembly.
PathPipelineResult verify_segment_pipeline(const Graph& g, const std::vector<Vertex>& path,
                                           const ProofConstants& constants,
                                           PipelineOptions options = {});

struct PairBound {
    Vertex x = 0, y = 0;
    int distance = 0;
    double value = 0.0;
    double kkt_residual = 0.0;
    bool converged = false;
    double chain_sum = 0.0;  // weighted chain sum of the optimal chain
    double edge_sum = 0.0;   // sum over edges of exp(-eps q d(e, geod))
    double lower_bound = 0.0; // alpha' d^{1/p}
    double upper_bound = 0.0; // d^{1/p}
    bool holder_ok = false;
    bool bounds_ok = false;
};

struct LowerBoundReport {
    ProofConstants constants; // finalized for p, with certified prefactor
    std::vector<PairBound> pairs;
    std::size_t violations = 0;
    std::size_t unconverged = 0;
};

/// Solves every pair, measures the chain and edge sums exactly, certifies the
/// growth prefactor against them, and asserts
/// alpha' d^{1/p} <= value <= d^{1/p} plus the Holder chain per pair.
LowerBoundReport verify_lp_lower_bound(const Graph& g, double p, ProofConstants constants,
                                       const std::vector<std::pair<Vertex, Vertex>>& pairs,
                                       int workers = 0);

struct ProfileRow {
    int radius = 0;
    double min_norm = 0.0;
    double max_norm = 0.0;
};

struct ProfileResult {
    std::vector<ProfileRow> rows;
    std::size_t unconverged = 0;
};

/// Quotient norms of the basepoint cocycle over spheres of increasing radius.
ProfileResult properness_profile(const Graph& g, double p, Vertex basepoint = 0,
                                 int workers = 0);

struct ConstantsOptions {
    double c_cap = 4.0;
    Vertex delta_exact_cap = 400;
    std::size_t delta_samples = 200000;
    std::size_t growth_pairs = 12;
    int growth_k_max = 4;
    std::uint64_t seed = 1;
    int workers = 0;
};

/// Measures delta, the visual parameters and the growth bound on a graph and
/// fills the derived gap window.
ProofConstants compute_constants(const Graph& g, ConstantsOptions options = {});

} // namespace hypquot
