#include "teleopt/symplectic.hpp"

#include <algorithm>
#include <string>

#include "teleopt/errors.hpp"

namespace teleopt {

Mat2 squeeze(double s) {
    if (!(s > 0.0) || !std::isfinite(s))
        throw InvalidInputError("squeeze: factor must be positive and finite");
    return Mat2::diag(s, 1.0 / s);
}

Mat4 two_mode_squeezer(double r) {
    const double c = std::cosh(r), s = std::sinh(r);
    const Mat2 cI = c * Mat2::identity();
    const Mat2 sZ = s * pauli_z();
    return Mat4::from_blocks(cI, sZ, sZ, cI);
}

Mat2 euler_compose(const EulerParams& p) {
    return rotation(p.phi) * squeeze(p.s) * rotation(p.psi);
}

bool is_symplectic(const Mat2& s, double tol) {
    if (!(tol > 0.0)) throw InvalidInputError("is_symplectic: tol must be positive");
    if (!s.finite()) throw InvalidInputError("is_symplectic: non-finite entries");
    const Mat2 j = symplectic_form2();
    return max_abs(s * j * s.transposed() - j) <= tol;
}

bool is_symplectic(const Mat4& s, double tol) {
    if (!(tol > 0.0)) throw InvalidInputError("is_symplectic: tol must be positive");
    if (!s.finite()) throw InvalidInputError("is_symplectic: non-finite entries");
    const Mat4 j = symplectic_form4();
    return max_abs(s * j * s.transposed() - j) <= tol;
}

EulerParams euler_decompose(const Mat2& s, double tol) {
    if (!is_symplectic(s, tol))
        throw InvalidInputError("euler_decompose: input is not symplectic");
    const RotSvd2 svd = rot_svd2(s);
    // det s = 1 forces s2 = 1/s1 > 0, so the singular values are already a
    // squeeze pair with s1 >= 1.
    EulerParams p;
    p.s = svd.s1;
    // left * s * right^T = diag(s1, s2), i.e. s = left^T diag right.
    // left = rotation(tl) and rotation(t)^T = rotation(-t).
    const double tl = std::atan2(svd.left(0, 1), svd.left(0, 0));
    const double tr = std::atan2(svd.right(0, 1), svd.right(0, 0));
    p.phi = -tl;
    p.psi = tr;
    return p;
}

Mat4 partial_transpose_cm(const Mat4& v) {
    const Mat4 lam = pt_conjugator();
    return lam * v * lam;
}

Mat4 local_congruence(const Mat4& v, const Mat2& s_a, const Mat2& s_b) {
    Mat2 a = s_a * v.block(0, 0) * s_a.transposed();
    Mat2 b = s_b * v.block(1, 1) * s_b.transposed();
    const Mat2 c = s_a * v.block(0, 1) * s_b.transposed();
    // Blockwise products can pick up ~1 ulp of asymmetry; remove it.
    a(0, 1) = a(1, 0) = 0.5 * (a(0, 1) + a(1, 0));
    b(0, 1) = b(1, 0) = 0.5 * (b(0, 1) + b(1, 0));
    return Mat4::from_blocks(a, c, c.transposed(), b);
}

namespace {

// Normalized column of a Mat4, as a plain array.
using Vec4 = std::array<double, 4>;

Vec4 mat_vec(const Mat4& m, const Vec4& x) {
    Vec4 r{};
    for (int i = 0; i < 4; ++i) {
        double s = 0.0;
        for (int j = 0; j < 4; ++j) s += m(i, j) * x[static_cast<size_t>(j)];
        r[static_cast<size_t>(i)] = s;
    }
    return r;
}

double dot(const Vec4& a, const Vec4& b) {
    double s = 0.0;
    for (size_t i = 0; i < 4; ++i) s += a[i] * b[i];
    return s;
}

double norm(const Vec4& a) { return std::sqrt(dot(a, a)); }

void axpy(Vec4& y, double alpha, const Vec4& x) {
    for (size_t i = 0; i < 4; ++i) y[i] += alpha * x[i];
}

void scale(Vec4& x, double alpha) {
    for (double& v : x) v *= alpha;
}

}  // namespace

Williamson williamson_two_mode(const Mat4& v, double tol) {
    if (!v.finite()) throw InvalidInputError("williamson_two_mode: non-finite entries");
    if (max_abs(v - v.transposed()) > 1e-9 * std::max(1.0, max_abs(v)))
        throw InvalidInputError("williamson_two_mode: matrix is not symmetric");

    const SymEig4 ev = sym_eig4(v);
    double wmin = ev.w[0];
    for (double w : ev.w) wmin = std::min(wmin, w);
    if (wmin <= 0.0)
        throw InvalidInputError("williamson_two_mode: matrix is not positive definite");

    // v^{-1/2} from the symmetric eigen-decomposition.
    Mat4 inv_sqrt = Mat4::zero();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k)
                s += ev.q(i, k) * ev.q(j, k) / std::sqrt(ev.w[static_cast<size_t>(k)]);
            inv_sqrt(i, j) = s;
        }

    // K = v^{-1/2} J v^{-1/2} is antisymmetric with canonical pairs 1/nu_i.
    Mat4 k = inv_sqrt * symplectic_form4() * inv_sqrt;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            const double a = 0.5 * (k(i, j) - k(j, i));
            k(i, j) = a;
            k(j, i) = -a;
        }

    // K^2 is symmetric negative semidefinite with doubly degenerate
    // eigenvalues -1/nu_i^2; its eigenvectors span the canonical planes.
    const Mat4 k2 = k * k;
    const SymEig4 pe = sym_eig4(k2);

    std::array<int, 4> order{0, 1, 2, 3};
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return pe.w[static_cast<size_t>(a)] < pe.w[static_cast<size_t>(b)]; });
    // Most negative eigenvalue of K^2 <-> largest kappa <-> smallest nu.
    Vec4 u1{};
    for (int i = 0; i < 4; ++i) u1[static_cast<size_t>(i)] = pe.q(i, order[0]);
    Vec4 ku1 = mat_vec(k, u1);
    const double kappa1 = norm(ku1);
    if (!(kappa1 > 0.0))
        throw NumericalFailureError("williamson_two_mode: degenerate canonical plane");
    Vec4 w1 = ku1;
    scale(w1, -1.0 / kappa1);

    // Second plane: take the remaining eigenvector, orthogonalized against
    // the first plane (needed only when the spectrum is degenerate).
    Vec4 u2{};
    double best = -1.0;
    for (int c = 1; c < 4; ++c) {
        Vec4 cand{};
        for (int i = 0; i < 4; ++i) cand[static_cast<size_t>(i)] = pe.q(i, order[static_cast<size_t>(c)]);
        axpy(cand, -dot(cand, u1), u1);
        axpy(cand, -dot(cand, w1), w1);
        const double n = norm(cand);
        if (n > best) {
            best = n;
            u2 = cand;
        }
    }
    if (best < 1e-8)
        throw NumericalFailureError("williamson_two_mode: could not build second canonical plane");
    scale(u2, 1.0 / norm(u2));
    Vec4 ku2 = mat_vec(k, u2);
    const double kappa2 = norm(ku2);
    if (!(kappa2 > 0.0))
        throw NumericalFailureError("williamson_two_mode: degenerate canonical plane");
    Vec4 w2 = ku2;
    scale(w2, -1.0 / kappa2);

    const double nu1 = 1.0 / kappa1;  // smallest
    const double nu2 = 1.0 / kappa2;

    Mat4 o;  // columns (u1, w1, u2, w2)
    for (int i = 0; i < 4; ++i) {
        o(i, 0) = u1[static_cast<size_t>(i)];
        o(i, 1) = w1[static_cast<size_t>(i)];
        o(i, 2) = u2[static_cast<size_t>(i)];
        o(i, 3) = w2[static_cast<size_t>(i)];
    }

    const Mat4 d_sqrt = Mat4::diag(std::sqrt(nu1), std::sqrt(nu1), std::sqrt(nu2), std::sqrt(nu2));
    Williamson out;
    out.s = d_sqrt * o.transposed() * inv_sqrt;
    out.nu_minus = nu1;
    out.nu_plus = nu2;

    const Mat4 resid_d =
        out.s * v * out.s.transposed() - Mat4::diag(nu1, nu1, nu2, nu2);
    const Mat4 j = symplectic_form4();
    const Mat4 resid_j = out.s * j * out.s.transposed() - j;
    const double scale_v = std::max(1.0, max_abs(v));
    if (max_abs(resid_d) > tol * scale_v || max_abs(resid_j) > tol * scale_v)
        throw NumericalFailureError("williamson_two_mode: residual above tolerance");
    return out;
}

}  // namespace teleopt
