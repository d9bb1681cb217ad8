// Symplectic form, elementary symplectic generators, and the two-mode
// Williamson diagonalization. Quadrature ordering is (x_a, p_a, x_b, p_b)
// with vacuum variance 1.
#pragma once

#include "teleopt/mat.hpp"

namespace teleopt {

/// Z = diag(1, -1).
inline Mat2 pauli_z() { return Mat2::diag(1.0, -1.0); }

/// Single-mode symplectic form J = [[0, 1], [-1, 0]].
inline Mat2 symplectic_form2() { return Mat2{{0.0, 1.0, -1.0, 0.0}}; }

/// Two-mode symplectic form J (+) J.
inline Mat4 symplectic_form4() {
    return Mat4::direct_sum(symplectic_form2(), symplectic_form2());
}

/// Partial-transpose conjugator Lambda = Z (+) I = diag(1, -1, 1, 1).
inline Mat4 pt_conjugator() { return Mat4::diag(1.0, -1.0, 1.0, 1.0); }

/// Phase-space rotation [[cos phi, sin phi], [-sin phi, cos phi]].
inline Mat2 rotation(double phi) {
    const double c = std::cos(phi), s = std::sin(phi);
    return Mat2{{c, s, -s, c}};
}

/// Single-mode squeezer diag(s, 1/s), s > 0.
Mat2 squeeze(double s);

/// Two-mode squeezer with blocks [[I cosh r, Z sinh r], [Z sinh r, I cosh r]].
Mat4 two_mode_squeezer(double r);

/// Euler (rotation-squeeze-rotation) parameters of a single-mode symplectic.
struct EulerParams {
    double phi = 0.0;  // radians
    double s = 1.0;    // squeeze factor, canonical branch s >= 1
    double psi = 0.0;  // radians
};

/// rotation(phi) * squeeze(s) * rotation(psi).
Mat2 euler_compose(const EulerParams& p);

/// Inverse of euler_compose up to the s = 1 rotation gauge.
/// Throws InvalidInputError if S is not symplectic.
EulerParams euler_decompose(const Mat2& s, double tol = 1e-9);

/// True iff ||S J S^T - J||_max <= tol.
bool is_symplectic(const Mat2& s, double tol);
bool is_symplectic(const Mat4& s, double tol);

/// Lambda V Lambda: the covariance matrix of the partially transposed state.
Mat4 partial_transpose_cm(const Mat4& v);

/// Williamson normal form of a symmetric positive-definite 4x4 matrix:
/// s * v * s^T = diag(nu_minus, nu_minus, nu_plus, nu_plus) with s symplectic
/// and nu_minus <= nu_plus.
///
/// The construction is eigensolver-driven but touches only symmetric
/// matrices: with K = v^{-1/2} J v^{-1/2} (antisymmetric), an orthogonal O
/// brings K to its canonical form and s = D^{1/2} O^T v^{-1/2}.
struct Williamson {
    Mat4 s;
    double nu_minus = 0.0;
    double nu_plus = 0.0;
};
Williamson williamson_two_mode(const Mat4& v, double tol = 1e-9);

/// (s_a (+) s_b) v (s_a (+) s_b)^T with the symmetry of v preserved exactly.
Mat4 local_congruence(const Mat4& v, const Mat2& s_a, const Mat2& s_b);

}  // namespace teleopt
