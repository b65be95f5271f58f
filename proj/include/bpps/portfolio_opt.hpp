#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bpps/posterior_stats.hpp"

namespace bpps {

/// Long-only fully invested weight vector on the K-simplex.
using Weights = Vector;

/// The mean constraint (or the whole eta grid) cannot be met on the simplex.
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// True if w is on the simplex within tolerance.
bool on_simplex(const Weights& w, double tol = 1e-9);

struct MvConfig {
    std::vector<double> eta_grid;  // empty -> 50 evenly spaced points in [min mu, max mu]
    double risk_free = 0.0;
};

struct QuantileConfig {
    double alpha = 0.05;  // CVoR level
    double beta = 0.95;   // VaR level
    double v0 = -0.1;     // loss bound
    double lambda = 10.0; // penalty weight
};

struct UtilityConfig {
    double gamma = 1.0;  // risk aversion > 0
};

struct OptimizerConfig {
    int max_iters = 2000;
    double step_tol = 1e-10;
    double obj_tol = 1e-12;
    int restarts = 8;
    std::uint64_t seed = 0;
};

/// Solver diagnostics for callers that want them; all solvers also work
/// without.
struct OptReport {
    bool converged = true;
    int iterations = 0;
    double objective = 0.0;
    std::string warning;
};

/// Euclidean projection onto the simplex (exact sort-based algorithm).
Weights project_simplex(const Vector& v);

/// min w'Sw  s.t.  w'mu >= eta, w on simplex. Throws InfeasibleError when
/// eta exceeds the largest attainable mean.
Weights solve_min_variance_at_mean(const Moments& m, double eta, const OptimizerConfig& opt = {},
                                   OptReport* report = nullptr);

/// Sweep the eta grid, solve the constrained problem at each level, return
/// the solution with the highest Sharpe ratio (ties: lower variance, then
/// lexicographically smallest weights).
Weights max_sharpe_frontier(const Moments& m, const MvConfig& cfg, const OptimizerConfig& opt = {},
                            OptReport* report = nullptr);

/// max w'mu - (gamma/2) w'(S + mu mu')w on the simplex.
Weights solve_quadratic_utility(const Moments& m, const UtilityConfig& cfg,
                                const OptimizerConfig& opt = {}, OptReport* report = nullptr);

/// max CVoR_alpha(R(w)) - lambda*max{0, VaR_beta(L(w)) - v0} over the
/// simplex, by multi-start projected subgradient (uniform start plus
/// `restarts` Dirichlet starts). Deterministic given opt.seed.
Weights solve_quantile(const PosteriorPredictive& pp, const QuantileConfig& cfg,
                       const OptimizerConfig& opt = {}, OptReport* report = nullptr);

/// -w'mu + q_alpha(mode, alpha) * sqrt(w'Sw); diagnostic objective.
double q_alpha_objective(const Moments& m, const Weights& w, double alpha, QuantileMode mode);

/// RC_a = w_a (Sw)_a / (w'Sw) for every asset; sums to 1.
Vector risk_contributions(const Moments& m, const Weights& w);

/// Equal-risk-contribution weights: minimizes the pairwise RC spread; the
/// returned point has all RC_a = 1/K within 1e-6 for positive-definite S.
Weights solve_risk_parity(const Moments& m, const OptimizerConfig& opt = {},
                          OptReport* report = nullptr);

}  // namespace bpps
