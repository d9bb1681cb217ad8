// Fixed-size real matrix kernels for 2x2 and 4x4 covariance-matrix algebra.
// Everything is a plain value type; no dynamic allocation anywhere.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace teleopt {

struct Mat2 {
    // Row-major entries.
    std::array<double, 4> e{0.0, 0.0, 0.0, 0.0};

    double& operator()(int r, int c) { return e[static_cast<size_t>(2 * r + c)]; }
    double operator()(int r, int c) const { return e[static_cast<size_t>(2 * r + c)]; }

    static Mat2 identity() { return Mat2{{1.0, 0.0, 0.0, 1.0}}; }
    static Mat2 zero() { return Mat2{}; }
    static Mat2 diag(double d0, double d1) { return Mat2{{d0, 0.0, 0.0, d1}}; }

    Mat2 transposed() const { return Mat2{{e[0], e[2], e[1], e[3]}}; }
    double det() const { return e[0] * e[3] - e[1] * e[2]; }
    double trace() const { return e[0] + e[3]; }
    Mat2 inverse() const;

    bool finite() const {
        for (double x : e)
            if (!std::isfinite(x)) return false;
        return true;
    }

    Mat2& operator+=(const Mat2& o) {
        for (size_t i = 0; i < 4; ++i) e[i] += o.e[i];
        return *this;
    }
    Mat2& operator-=(const Mat2& o) {
        for (size_t i = 0; i < 4; ++i) e[i] -= o.e[i];
        return *this;
    }
    Mat2& operator*=(double s) {
        for (double& x : e) x *= s;
        return *this;
    }
};

inline Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
inline Mat2 operator-(Mat2 a, const Mat2& b) { return a -= b; }
inline Mat2 operator*(double s, Mat2 a) { return a *= s; }
inline Mat2 operator*(Mat2 a, double s) { return a *= s; }
inline Mat2 operator*(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
    return r;
}

struct Mat4 {
    // Row-major entries.
    std::array<double, 16> e{};

    double& operator()(int r, int c) { return e[static_cast<size_t>(4 * r + c)]; }
    double operator()(int r, int c) const { return e[static_cast<size_t>(4 * r + c)]; }

    static Mat4 identity() {
        Mat4 m;
        m(0, 0) = m(1, 1) = m(2, 2) = m(3, 3) = 1.0;
        return m;
    }
    static Mat4 zero() { return Mat4{}; }
    static Mat4 diag(double d0, double d1, double d2, double d3) {
        Mat4 m;
        m(0, 0) = d0;
        m(1, 1) = d1;
        m(2, 2) = d2;
        m(3, 3) = d3;
        return m;
    }
    /// Direct sum of two 2x2 blocks.
    static Mat4 direct_sum(const Mat2& top, const Mat2& bottom);
    /// Assemble from 2x2 blocks [[a, c], [c^T, b]] is NOT assumed; all four
    /// blocks are taken verbatim.
    static Mat4 from_blocks(const Mat2& tl, const Mat2& tr, const Mat2& bl, const Mat2& br);

    Mat2 block(int br, int bc) const {
        Mat2 m;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                m(i, j) = (*this)(2 * br + i, 2 * bc + j);
        return m;
    }
    void set_block(int br, int bc, const Mat2& m) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                (*this)(2 * br + i, 2 * bc + j) = m(i, j);
    }

    Mat4 transposed() const {
        Mat4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                r(i, j) = (*this)(j, i);
        return r;
    }
    double trace() const { return e[0] + e[5] + e[10] + e[15]; }
    double det() const;

    bool finite() const {
        for (double x : e)
            if (!std::isfinite(x)) return false;
        return true;
    }

    Mat4& operator+=(const Mat4& o) {
        for (size_t i = 0; i < 16; ++i) e[i] += o.e[i];
        return *this;
    }
    Mat4& operator-=(const Mat4& o) {
        for (size_t i = 0; i < 16; ++i) e[i] -= o.e[i];
        return *this;
    }
    Mat4& operator*=(double s) {
        for (double& x : e) x *= s;
        return *this;
    }
};

inline Mat4 operator+(Mat4 a, const Mat4& b) { return a += b; }
inline Mat4 operator-(Mat4 a, const Mat4& b) { return a -= b; }
inline Mat4 operator*(double s, Mat4 a) { return a *= s; }
inline Mat4 operator*(Mat4 a, double s) { return a *= s; }
Mat4 operator*(const Mat4& a, const Mat4& b);

inline double max_abs(const Mat2& m) {
    double r = 0.0;
    for (double x : m.e) r = std::fmax(r, std::fabs(x));
    return r;
}
inline double max_abs(const Mat4& m) {
    double r = 0.0;
    for (double x : m.e) r = std::fmax(r, std::fabs(x));
    return r;
}

/// S A S^T for 2x2.
inline Mat2 congruence(const Mat2& s, const Mat2& a) { return s * a * s.transposed(); }
/// S A S^T for 4x4.
inline Mat4 congruence(const Mat4& s, const Mat4& a) { return s * a * s.transposed(); }

/// Eigen-decomposition of a symmetric 2x2 matrix: returns eigenvalues
/// (lo <= hi) and the rotation angle t such that the columns of
/// [[cos t, -sin t], [sin t, cos t]] are the corresponding eigenvectors.
struct SymEig2 {
    double lo = 0.0;
    double hi = 0.0;
    double angle = 0.0;  // eigenvector angle of `lo`
};
SymEig2 sym_eig2(const Mat2& m);

/// Principal square root of a symmetric positive-definite 2x2 matrix.
Mat2 sqrt_spd2(const Mat2& m);

/// Cyclic Jacobi eigen-decomposition of a symmetric 4x4 matrix.
/// On return, m = q * diag(w) * q^T with q orthogonal (columns = eigenvectors),
/// eigenvalues unsorted.
struct SymEig4 {
    Mat4 q;
    std::array<double, 4> w{};
};
SymEig4 sym_eig4(const Mat4& m);

/// Rotation-only SVD of a real 2x2 matrix: finds proper rotations and a
/// diagonal such that left * m * right^T = diag(s1, s2) with s1 >= |s2| and
/// sign(s1 * s2) = sign(det m). The rotation convention matches rotation()
/// from symplectic.hpp.
struct RotSvd2 {
    Mat2 left;
    Mat2 right;
    double s1 = 0.0;
    double s2 = 0.0;
};
RotSvd2 rot_svd2(const Mat2& m);

}  // namespace teleopt
