// Braunstein-Kimble fidelity machinery: noise matrix, fidelity formulas,
// local trace-preserving Gaussian CP maps, the minimal-noise decomposition,
// and the entanglement-swapping covariance matrix.
#pragma once

#include "teleopt/state.hpp"

namespace teleopt {

enum class Mode { a, b };

/// Local TGCP map acting on covariance matrices as
/// V -> (S_a (+) S_b) V (S_a (+) S_b)^T + (G_a (+) G_b).
/// Complete positivity per mode: G >= 0 and det G >= (1 - det S)^2.
struct TgcpMap {
    Mat2 s_a = Mat2::identity();
    Mat2 g_a = Mat2::zero();
    Mat2 s_b = Mat2::identity();
    Mat2 g_b = Mat2::zero();

    static TgcpMap identity() { return TgcpMap{}; }
};

/// True iff both mode pairs satisfy the CP condition within tol.
bool is_valid_tgcp(const TgcpMap& map, double tol = 1e-9);

/// Excess noise added to a teleported coherent state:
/// N = Z A Z + Z C + C^T Z + B. Positive semidefinite for physical states.
struct NoiseMatrix {
    Mat2 n;
};
NoiseMatrix noise_matrix(const TwoModeCM& v);

/// Fidelity for a Gaussian input with covariance v_in:
/// F = 2 / sqrt(det(2 v_in + N)).
double fidelity_gaussian_input(const TwoModeCM& v, const Mat2& v_in);

/// Coherent-state input (v_in = I): F = 2 / sqrt(4 + 2 tr N + det N).
double fidelity_coherent(const TwoModeCM& v);

/// Applies a local TGCP map; throws InvalidInputError if the map violates
/// the CP condition.
TwoModeCM apply_local_tgcp(const TwoModeCM& v, const TgcpMap& map);

/// Beam-splitter loss on one mode: S = tau I, G = (1 - tau^2) I there,
/// identity on the other mode.
TgcpMap attenuation_map(double tau, Mode mode);

/// True iff |det G - (1 - det S)^2| <= tol on each mode.
bool is_minimal_noise(const TgcpMap& map, double tol = 1e-9);

/// Theorem-4 factorization of a single-mode minimal-noise pair (S, G) with
/// 0 < det S <= 1: S = sigma2 (tau I) sigma1 and G = sigma2 sigma2^T (1 - tau^2).
struct MinimalNoiseDecomposition {
    Mat2 sigma1 = Mat2::identity();
    double tau = 1.0;
    Mat2 sigma2 = Mat2::identity();
};
MinimalNoiseDecomposition decompose_minimal_noise(const Mat2& s, const Mat2& g);

/// The symplectic pair (S_a = Z S_b Z, S_b) that turns the noise matrix into
/// sqrt(det N) * I; the mechanism behind the optimal-noise lemma. Requires
/// det N > 0.
TgcpMap isotropize_noise(const TwoModeCM& v);

/// Post-entanglement-swapping covariance matrix:
/// A = I cosh r, B = I (2 n_opt + cosh r), C = -Z sinh r.
TwoModeCM swap_cm(double n_opt, double r);

}  // namespace teleopt
