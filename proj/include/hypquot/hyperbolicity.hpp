#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hypquot/graph.hpp"

namespace hypquot {

/// (x,y)_t = (d(x,t) + d(y,t) - d(x,y)) / 2, an exact half-integer.
double gromov_product(const Graph& g, Vertex t, Vertex x, Vertex y);

struct DeltaResult {
    double delta = 0.0;
    bool exact = true; // sampled scans only certify a lower bound
    std::array<Vertex, 4> witness{0, 0, 0, 0};
};

/// Smallest delta with d(a,c)+d(b,d) <= max(d(a,d)+d(b,c), d(a,b)+d(c,d)) + delta
/// over all ordered quadruples. O(n^4); refuses above the cap.
DeltaResult four_point_delta_exact(const Graph& g, Vertex exact_cap = 400, int workers = 0);
DeltaResult four_point_delta_sampled(const Graph& g, std::size_t samples, std::uint64_t seed,
                                     int workers = 0);

/// Triangle-inequality envelope of rho(u,v) = exp(-eps * (u,v)_t): off-diagonal
/// values are shortest chain sums of rho over the complete graph, the diagonal
/// is rho(x,x) > 0. sandwich_C is the smallest C >= 1 with
/// rho/C <= value <= C*rho measured over all pairs.
class VisualMetric {
public:
    VisualMetric(const Graph& g, Vertex center, double epsilon, std::vector<double> values,
                 double sandwich_c)
        : graph_(&g), center_(center), epsilon_(epsilon), values_(std::move(values)),
          sandwich_c_(sandwich_c) {}

    const Graph& graph() const { return *graph_; }
    Vertex center() const { return center_; }
    double epsilon() const { return epsilon_; }
    double sandwich_C() const { return sandwich_c_; }

    double value(Vertex x, Vertex y) const {
        return values_[static_cast<std::size_t>(x) * graph_->vertex_count() + y];
    }
    double rho(Vertex x, Vertex y) const;

private:
    const Graph* graph_;
    Vertex center_;
    double epsilon_;
    std::vector<double> values_;
    double sandwich_c_;
};

VisualMetric build_visual_metric(const Graph& g, Vertex t, double epsilon, int workers = 0,
                                 Vertex dense_cap = 3000);

struct EpsilonChoice {
    double epsilon = 0.0;
    double worst_C = 1.0; // max sandwich constant over the sampled centers
    std::vector<Vertex> centers;
};

/// Thrown when no grid point reaches the requested sandwich cap.
class EpsilonSearchError : public Error {
public:
    EpsilonSearchError(double best_epsilon, double best_c, const std::string& message)
        : Error(ErrorKind::domain, message), best_epsilon_(best_epsilon), best_c_(best_c) {}
    double best_epsilon() const { return best_epsilon_; }
    double best_C() const { return best_c_; }

private:
    double best_epsilon_;
    double best_c_;
};

/// Largest epsilon in the grid {ln2/max(delta,1) * 2^-j : j = 0..12} whose
/// visual metrics over up to 10 sampled centers all have sandwich_C <= c_cap.
EpsilonChoice suggest_epsilon(const Graph& g, double delta, double c_cap, int workers = 0);

struct GrowthFit {
    double beta_prime = 0.0;       // fitted exponential rate
    double growth_prefactor = 1.0; // inflated so the bound holds on every sample
    double fit_prefactor = 1.0;    // raw least-squares intercept
    double fit_residual = 0.0;     // max |log residual| of the raw fit
    std::size_t sample_count = 0;
};

/// Counts N(k) = #{z : d(z, geod(x,y)) <= k} per pair, fits
/// ln(N(k)/d(x,y)) ~ beta' * k + ln D, then inflates D minimally so that
/// N(k) <= D * exp(beta' k) * d(x,y) for every sampled (pair, k).
GrowthFit growth_fit(const Graph& g, const std::vector<std::pair<Vertex, Vertex>>& pairs,
                     int k_max, int workers = 0);

enum class NestingVerdict { holds, vacuous, violated };
const char* to_string(NestingVerdict v);

/// Geodesic nesting: when b lies near geod(a,c), c lies near geod(b,d) and
/// d(b,c) clears the gap (eta1+eta2+delta)/2, both b and c must lie in the
/// delta-widened geodesic set of (a,d).
NestingVerdict nesting_check(const Graph& g, Vertex a, Vertex b, Vertex c, Vertex d,
                             double eta1, double eta2, double delta);

struct HyperbolicityProfile {
    double delta = 0.0;
    double beta_prime = 0.0;
    double growth_prefactor = 1.0;
    int degree_bound = 0;
    double fit_residual = 0.0;
};

} // namespace hypquot
