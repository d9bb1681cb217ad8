// Fidelity bounds in terms of the lowest PT symplectic eigenvalue, the
// constructive omega_theta lower-bound map, the full optimal-TGCP solver
// (candidate procedure over the eta-family), and the brute-force oracle.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "teleopt/teleport.hpp"

namespace teleopt {

/// (1+nu)/(1+3nu) <= F_opt <= 1/(1+nu).
struct FidelityBounds {
    double nu = 1.0;
    double lower = 0.5;
    double upper = 0.5;
};
FidelityBounds fidelity_bounds(double nu);

/// Maximum of upper - lower over nu in (0, 1], located by golden-section
/// search; the gap never exceeds 0.086.
struct BoundGap {
    double nu_star = 0.0;
    double gap = 0.0;
    int iterations = 0;
};
BoundGap max_bound_gap();

/// The constructive lower-bound map built from the Williamson form of the
/// partially transposed CM. Defined for entangled states (nu < 1).
struct OmegaThetaResult {
    double theta = 0.0;    // in (0, pi/2)
    double epsilon = 0.0;  // det W_b - det W_a, |epsilon| <= nu
    TgcpMap map;
    double fidelity = 0.0;  // (1+|eps|) / (1+nu+2|eps|)
    Mat2 w_a, w_b;
};
OmegaThetaResult omega_theta(const TwoModeCM& v);

/// Which mode the optimal attenuation acts on.
enum class Side { none, a, b };

/// One entry of the candidate set assembled from the stationarity system.
struct Candidate {
    double lambda = 0.0;
    double eta = 1.0;
    double fidelity = 0.0;
    Side side = Side::none;  // none = boundary eta = 1 (no attenuation)
};

struct SolverOptions {
    int eta_grid = 512;     // interior grid resolution in eta
    double tol = 1e-10;     // root refinement tolerance
};

struct OptimizationReport {
    FidelityBounds bounds;
    bool entangled = false;  // nu < 1; the bounds are proven only in this case
    double f_unoptimized = 0.0;
    double f_opt = 0.0;
    TgcpMap optimal_map;
    MinimalNoiseDecomposition decomposition_a, decomposition_b;
    Side attenuation_side = Side::none;
    double tau_star = 1.0;
    double lambda_star = 0.0;
    std::vector<Candidate> candidates;
    TwoModeCM output_cm;  // optimal_map applied to the input
    std::optional<double> oracle_f;
};

/// Optimal local TGCP map and fidelity per the candidate procedure:
/// stationary points of the eta-family (interior system plus the eta = 1
/// boundary), run for attenuation on either side, maximum over candidates.
OptimizationReport optimal_tgcp(const TwoModeCM& v, const SolverOptions& opts = {});

/// True iff the standard form III of v is symmetric (|n - m| <= tol), the
/// necessary and sufficient condition for reaching the 1/(1+nu) bound.
bool upper_bound_achievable(const TwoModeCM& v, double tol = 1e-9);

struct BruteForceOptions {
    int starts = 32;
    std::uint64_t seed = 1;
    int max_evals_per_start = 2500;
};

struct BruteForceResult {
    double fidelity = 0.0;
    int starts = 0;
    std::uint64_t seed = 0;
    long evaluations = 0;
    TgcpMap best_map;
};

/// Independent oracle: multistart Nelder-Mead over minimal-noise local maps
/// parametrized as (Euler triple + attenuation) per mode. Deterministic per
/// seed.
BruteForceResult brute_force_optimal(const TwoModeCM& v, const BruteForceOptions& opts = {});

}  // namespace teleopt
