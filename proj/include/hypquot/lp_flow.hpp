#pragma once

#include <memory>

#include "hypquot/chain.hpp"
#include "hypquot/graph.hpp"

namespace hypquot {

struct FlowSolution {
    Chain chain; // feasible: boundary = delta_sink - delta_source
    double value = 0.0;
    double p = 2.0;
    Vertex source = 0;
    Vertex sink = 0;
    double kkt_residual = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Per-graph factorization of the pinned unweighted Laplacian, used to fit
/// least-squares vertex potentials against an edge gradient field. Build one
/// per thread; solves on a built instance do not mutate it.
class PotentialSolver {
public:
    explicit PotentialSolver(const Graph& g);
    ~PotentialSolver();
    PotentialSolver(PotentialSolver&&) noexcept;
    PotentialSolver& operator=(PotentialSolver&&) noexcept;

    const Graph& graph() const;
    /// phi minimizing sum_e (target_e - (phi(v) - phi(u)))^2, phi(0) = 0,
    /// where target is indexed by canonical edges oriented u -> v.
    std::vector<double> potentials(const std::vector<double>& edge_target) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct L1Result {
    int value = 0;
    Chain witness; // geodesic indicator chain
};

/// Minimal l^1 mass of a chain with boundary delta_y - delta_x: the graph
/// distance, witnessed by a geodesic indicator chain.
L1Result quotient_norm_l1(const Graph& g, Vertex x, Vertex y);

struct FlowOptions {
    double tol = 1e-8;
    std::size_t max_iterations = 10000;
    const Chain* initial = nullptr; // feasible start; defaults to a geodesic indicator
};

/// Minimizes sum_e |c(e)|^p over chains with boundary delta_y - delta_x via
/// iteratively reweighted Laplacian subproblems with a smoothing schedule and
/// a monotone line search. The reported value is the iterate's own norm, so
/// it is always a feasible upper bound.
FlowSolution min_norm_flow(const Graph& g, Vertex x, Vertex y, double p, FlowOptions options = {},
                           const PotentialSolver* shared = nullptr);
inline FlowSolution min_norm_flow(const Graph& g, Vertex x, Vertex y, double p, double tol) {
    FlowOptions options;
    options.tol = tol;
    return min_norm_flow(g, x, y, p, options);
}

/// Max violation of the stationarity system: |p|c|^{p-1}sgn(c) - grad(phi)|
/// over support edges plus |grad(phi)| over exactly-zero edges, with phi the
/// least-squares potential fit.
double kkt_residual(const Graph& g, const Chain& chain, double p, const PotentialSolver& solver);
double kkt_residual(const Graph& g, const FlowSolution& solution);

} // namespace hypquot
