#include "teleopt/mat.hpp"

#include "teleopt/errors.hpp"
#include "teleopt/symplectic.hpp"

namespace teleopt {

Mat2 Mat2::inverse() const {
    const double d = det();
    if (std::fabs(d) < 1e-300)
        throw NumericalFailureError("Mat2::inverse: matrix is singular");
    const double inv = 1.0 / d;
    return Mat2{{e[3] * inv, -e[1] * inv, -e[2] * inv, e[0] * inv}};
}

Mat4 Mat4::direct_sum(const Mat2& top, const Mat2& bottom) {
    Mat4 m;
    m.set_block(0, 0, top);
    m.set_block(1, 1, bottom);
    return m;
}

Mat4 Mat4::from_blocks(const Mat2& tl, const Mat2& tr, const Mat2& bl, const Mat2& br) {
    Mat4 m;
    m.set_block(0, 0, tl);
    m.set_block(0, 1, tr);
    m.set_block(1, 0, bl);
    m.set_block(1, 1, br);
    return m;
}

Mat4 operator*(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}

double Mat4::det() const {
    // Cofactor expansion via the six 2x2 minors of the bottom rows.
    const auto& m = *this;
    const double s0 = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const double s1 = m(0, 0) * m(1, 2) - m(0, 2) * m(1, 0);
    const double s2 = m(0, 0) * m(1, 3) - m(0, 3) * m(1, 0);
    const double s3 = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
    const double s4 = m(0, 1) * m(1, 3) - m(0, 3) * m(1, 1);
    const double s5 = m(0, 2) * m(1, 3) - m(0, 3) * m(1, 2);
    const double c5 = m(2, 2) * m(3, 3) - m(2, 3) * m(3, 2);
    const double c4 = m(2, 1) * m(3, 3) - m(2, 3) * m(3, 1);
    const double c3 = m(2, 1) * m(3, 2) - m(2, 2) * m(3, 1);
    const double c2 = m(2, 0) * m(3, 3) - m(2, 3) * m(3, 0);
    const double c1 = m(2, 0) * m(3, 2) - m(2, 2) * m(3, 0);
    const double c0 = m(2, 0) * m(3, 1) - m(2, 1) * m(3, 0);
    return s0 * c5 - s1 * c4 + s2 * c3 + s3 * c2 - s4 * c1 + s5 * c0;
}

SymEig2 sym_eig2(const Mat2& m) {
    const double a = m(0, 0), b = 0.5 * (m(0, 1) + m(1, 0)), c = m(1, 1);
    const double half_sum = 0.5 * (a + c);
    const double half_diff = 0.5 * (a - c);
    const double r = std::hypot(half_diff, b);
    SymEig2 out;
    out.lo = half_sum - r;
    out.hi = half_sum + r;
    // Eigenvector of `lo`: rotate so that R^T m R = diag(lo, hi).
    out.angle = 0.5 * std::atan2(2.0 * b, a - c) + M_PI_2;
    // The atan2 branch above orients the first column along `hi`; shift by
    // pi/2 to put `lo` first.
    return out;
}

Mat2 sqrt_spd2(const Mat2& m) {
    const double d = m.det();
    const double t = m.trace();
    if (d <= 0.0 || t <= 0.0)
        throw InvalidInputError("sqrt_spd2: matrix is not positive definite");
    const double s = std::sqrt(d);
    const double denom = std::sqrt(t + 2.0 * s);
    Mat2 r = m;
    r(0, 0) += s;
    r(1, 1) += s;
    return r * (1.0 / denom);
}

SymEig4 sym_eig4(const Mat4& m) {
    Mat4 a = m;
    // Force exact symmetry so the sweep terminates cleanly.
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            const double v = 0.5 * (a(i, j) + a(j, i));
            a(i, j) = v;
            a(j, i) = v;
        }
    Mat4 q = Mat4::identity();
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) off += a(i, j) * a(i, j);
        if (off < 1e-300) break;
        for (int p = 0; p < 4; ++p)
            for (int qi = p + 1; qi < 4; ++qi) {
                const double apq = a(p, qi);
                if (std::fabs(apq) < 1e-300) continue;
                const double theta = 0.5 * (a(qi, qi) - a(p, p)) / apq;
                const double t = std::copysign(1.0, theta) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < 4; ++k) {
                    const double akp = a(k, p), akq = a(k, qi);
                    a(k, p) = c * akp - s * akq;
                    a(k, qi) = s * akp + c * akq;
                }
                for (int k = 0; k < 4; ++k) {
                    const double apk = a(p, k), aqk = a(qi, k);
                    a(p, k) = c * apk - s * aqk;
                    a(qi, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < 4; ++k) {
                    const double qkp = q(k, p), qkq = q(k, qi);
                    q(k, p) = c * qkp - s * qkq;
                    q(k, qi) = s * qkp + c * qkq;
                }
            }
    }
    SymEig4 out;
    out.q = q;
    for (int i = 0; i < 4; ++i) out.w[static_cast<size_t>(i)] = a(i, i);
    return out;
}

RotSvd2 rot_svd2(const Mat2& m) {
    // Closed-form 2x2 SVD in terms of the sum/difference parametrization.
    const double ee = 0.5 * (m(0, 0) + m(1, 1));
    const double f = 0.5 * (m(0, 0) - m(1, 1));
    const double g = 0.5 * (m(1, 0) + m(0, 1));
    const double h = 0.5 * (m(1, 0) - m(0, 1));
    const double q = std::hypot(ee, h);
    const double r = std::hypot(f, g);
    const double a1 = std::atan2(g, f);
    const double a2 = std::atan2(h, ee);
    const double theta_left = 0.5 * (a2 + a1);
    const double theta_right = 0.5 * (a1 - a2);
    RotSvd2 out;
    out.s1 = q + r;
    out.s2 = q - r;
    out.left = rotation(theta_left);
    out.right = rotation(theta_right);
    return out;
}

}  // namespace teleopt
