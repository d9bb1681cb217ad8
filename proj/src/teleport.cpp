#include "teleopt/teleport.hpp"

#include <algorithm>
#include <string>

#include "teleopt/errors.hpp"
#include "teleopt/symplectic.hpp"

namespace teleopt {

namespace {

bool cp_condition_ok(const Mat2& s, const Mat2& g, double tol) {
    // G + iJ - i S J S^T >= 0 for 2x2 reduces to G >= 0 together with
    // det G >= (1 - det S)^2.
    const double gap = 1.0 - s.det();
    const double tr = g.trace();
    const double dg = g.det();
    const SymEig2 ev = sym_eig2(g);
    return tr >= -tol && ev.lo >= -tol && dg >= gap * gap - tol;
}

}  // namespace

bool is_valid_tgcp(const TgcpMap& map, double tol) {
    if (!map.s_a.finite() || !map.g_a.finite() || !map.s_b.finite() || !map.g_b.finite())
        throw InvalidInputError("is_valid_tgcp: non-finite entries");
    return cp_condition_ok(map.s_a, map.g_a, tol) && cp_condition_ok(map.s_b, map.g_b, tol);
}

NoiseMatrix noise_matrix(const TwoModeCM& v) {
    const Mat2 z = pauli_z();
    const Mat2 c = v.block_c();
    Mat2 n = z * v.block_a() * z + z * c + c.transposed() * z + v.block_b();
    n(0, 1) = n(1, 0) = 0.5 * (n(0, 1) + n(1, 0));
    return NoiseMatrix{n};
}

namespace {

double fidelity_from_det(double det) {
    if (!(det > 0.0))
        throw NumericalFailureError("fidelity: non-positive determinant under the root");
    double f = 2.0 / std::sqrt(det);
    if (f > 1.0 + 1e-9)
        throw NumericalFailureError("fidelity: value " + std::to_string(f) + " exceeds 1");
    return std::clamp(f, 0.0, 1.0);
}

}  // namespace

double fidelity_gaussian_input(const TwoModeCM& v, const Mat2& v_in) {
    if (!v_in.finite()) throw InvalidInputError("fidelity_gaussian_input: non-finite input CM");
    if (std::fabs(v_in(0, 1) - v_in(1, 0)) > 1e-9)
        throw InvalidInputError("fidelity_gaussian_input: input CM must be symmetric");
    const double det_in = v_in.det();
    // Single-mode physicality: Williamson eigenvalue sqrt(det) >= 1.
    if (v_in(0, 0) <= 0.0 || det_in < 1.0 - 1e-9)
        throw InvalidInputError("fidelity_gaussian_input: input CM is unphysical");
    const Mat2 n = noise_matrix(v).n;
    return fidelity_from_det((2.0 * v_in + n).det());
}

double fidelity_coherent(const TwoModeCM& v) {
    const Mat2 n = noise_matrix(v).n;
    return fidelity_from_det(4.0 + 2.0 * n.trace() + n.det());
}

TwoModeCM apply_local_tgcp(const TwoModeCM& v, const TgcpMap& map) {
    if (!is_valid_tgcp(map))
        throw InvalidInputError("apply_local_tgcp: map violates the CP condition");
    Mat4 out = local_congruence(v.matrix(), map.s_a, map.s_b);
    out += Mat4::direct_sum(map.g_a, map.g_b);
    return TwoModeCM::from_matrix(out, 1e-9);
}

TgcpMap attenuation_map(double tau, Mode mode) {
    if (!(tau >= 0.0 && tau <= 1.0))
        throw InvalidInputError("attenuation_map: tau must be in [0, 1]");
    TgcpMap map;
    Mat2& s = mode == Mode::a ? map.s_a : map.s_b;
    Mat2& g = mode == Mode::a ? map.g_a : map.g_b;
    s = tau * Mat2::identity();
    g = (1.0 - tau * tau) * Mat2::identity();
    return map;
}

bool is_minimal_noise(const TgcpMap& map, double tol) {
    const double gap_a = 1.0 - map.s_a.det();
    const double gap_b = 1.0 - map.s_b.det();
    return std::fabs(map.g_a.det() - gap_a * gap_a) <= tol &&
           std::fabs(map.g_b.det() - gap_b * gap_b) <= tol;
}

MinimalNoiseDecomposition decompose_minimal_noise(const Mat2& s, const Mat2& g) {
    if (!s.finite() || !g.finite())
        throw InvalidInputError("decompose_minimal_noise: non-finite entries");
    const double det_s = s.det();
    if (!(det_s > 0.0) || det_s > 1.0 + 1e-12)
        throw OutOfDomainError("decompose_minimal_noise: det S must lie in (0, 1]");
    const double gap = 1.0 - det_s;
    if (std::fabs(g.det() - gap * gap) > 1e-9 * std::max(1.0, max_abs(g)) ||
        std::fabs(g(0, 1) - g(1, 0)) > 1e-9)
        throw InvalidInputError("decompose_minimal_noise: pair is not minimal noise");

    MinimalNoiseDecomposition out;
    out.tau = std::sqrt(std::min(det_s, 1.0));
    if (gap <= 1e-12) {
        // det S = 1: G must vanish and the map is the symplectic itself.
        if (max_abs(g) > 1e-8)
            throw InvalidInputError(
                "decompose_minimal_noise: det S = 1 requires G = 0 for minimal noise");
        out.sigma1 = s;
        out.sigma2 = Mat2::identity();
        out.tau = 1.0;
        return out;
    }
    // G = sigma2 sigma2^T (1 - s) with det(G / (1-s)) = 1; the principal
    // square root is the canonical symplectic factor.
    out.sigma2 = sqrt_spd2(g * (1.0 / gap));
    out.sigma1 = out.sigma2.inverse() * s * (1.0 / out.tau);
    return out;
}

TgcpMap isotropize_noise(const TwoModeCM& v) {
    const Mat2 n = noise_matrix(v).n;
    const double det_n = n.det();
    if (!(det_n > 0.0))
        throw OutOfDomainError("isotropize_noise: noise matrix must be positive definite");
    const SymEig2 ev = sym_eig2(n);
    const double g = std::sqrt(std::sqrt(ev.lo * ev.hi));
    const Mat2 s_b = Mat2::diag(g / std::sqrt(ev.lo), g / std::sqrt(ev.hi)) * rotation(ev.angle);
    TgcpMap map;
    map.s_b = s_b;
    map.s_a = pauli_z() * s_b * pauli_z();
    return map;
}

TwoModeCM swap_cm(double n_opt, double r) {
    if (!(n_opt >= 0.0) || !(r >= 0.0))
        throw InvalidInputError("swap_cm: n_opt and r must be >= 0");
    const Mat2 a = std::cosh(r) * Mat2::identity();
    const Mat2 b = (2.0 * n_opt + std::cosh(r)) * Mat2::identity();
    const Mat2 c = -std::sinh(r) * pauli_z();
    return TwoModeCM::from_matrix(Mat4::from_blocks(a, c, c, b));
}

}  // namespace teleopt
