// Two-mode covariance-matrix model: physicality, symplectic invariants,
// partial-transpose spectra, entanglement measures, and the local-symplectic
// normal forms.
#pragma once

#include <cstdint>
#include <vector>

#include "teleopt/mat.hpp"

namespace teleopt {

/// Validated two-mode covariance matrix in (x_a, p_a, x_b, p_b) ordering,
/// block form [[A, C], [C^T, B]].
class TwoModeCM {
public:
    /// Two vacua.
    TwoModeCM() : v_(Mat4::identity()) {}

    /// Validates symmetry (averaging V and V^T when the asymmetry is below
    /// `sym_tol`) and physicality (both Williamson eigenvalues >= 1 - 1e-9
    /// and positive definiteness). Throws InvalidInputError on asymmetric or
    /// non-finite input, UnphysicalStateError otherwise.
    static TwoModeCM from_matrix(const Mat4& v, double sym_tol = 1e-12);

    const Mat4& matrix() const { return v_; }
    Mat2 block_a() const { return v_.block(0, 0); }
    Mat2 block_b() const { return v_.block(1, 1); }
    Mat2 block_c() const { return v_.block(0, 1); }

private:
    explicit TwoModeCM(const Mat4& v) : v_(v) {}
    Mat4 v_;
};

/// make_cm is the spec-facing name of TwoModeCM::from_matrix.
inline TwoModeCM make_cm(const Mat4& entries, double tol = 1e-12) {
    return TwoModeCM::from_matrix(entries, tol);
}

/// Two-mode squeezed vacuum: A = B = I cosh r, C = -Z sinh r.
TwoModeCM two_mode_squeezed(double r);

/// The four local-symplectic invariants of the channel.
struct ChannelInvariants {
    double a = 1.0;      // sqrt(det A)
    double b = 1.0;      // sqrt(det B)
    double c = 0.0;      // sqrt(|det C|)
    int sign_det_c = 0;  // -1, 0, or +1
    double v = 1.0;      // det V
};
ChannelInvariants invariants(const TwoModeCM& v);

/// Partial-transpose symplectic spectrum.
struct PtSpectrum {
    double nu = 1.0;        // lowest PT symplectic eigenvalue
    double mu = 1.0;        // largest PT symplectic eigenvalue
    double sigma_pt = 2.0;  // det A + det B - 2 det C
};
PtSpectrum pt_spectrum(const TwoModeCM& v);

/// max(0, -ln nu).
double log_negativity(const TwoModeCM& v);

/// Standard form I: A -> aI, B -> bI, C -> diag(-c1, c2) with c1 >= |c2|.
/// c2 > 0 whenever det C < 0 (the entangled-relevant case); c2 <= 0 records
/// a state with det C >= 0.
struct StandardFormI {
    TwoModeCM v_n;
    Mat2 s_a, s_b;  // (s_a (+) s_b) V (s_a (+) s_b)^T = v_n
    double a = 1.0, b = 1.0;
    double c1 = 0.0, c2 = 0.0;
};
StandardFormI to_standard_form_i(const TwoModeCM& v);

/// Standard form III: diagonal blocks (n+lambda, n), (m+lambda, m), and
/// off-diagonal diag(-d-lambda, d); equivalently n1-n2 = m1-m2 = d1-d2.
struct StandardFormIII {
    double n = 1.0, m = 1.0, d = 0.0, lambda = 0.0;
    Mat2 s_a, s_b;
    TwoModeCM v1;
};
StandardFormIII to_standard_form_iii(const TwoModeCM& v, double tol = 1e-9);

/// Member of the eta-family of normal forms: n1-n2 = eta (d1-d2)
/// = eta^2 (m1-m2) = lambda. eta = 1 reduces to standard form III.
struct NormalFormEta {
    double eta = 1.0;
    double n = 1.0, m = 1.0, d = 0.0, lambda = 0.0;
    Mat2 s_a, s_b;
    TwoModeCM veta;
};
NormalFormEta to_normal_form_eta(const TwoModeCM& v, double eta, double tol = 1e-9);

/// Reduction onto the eta-family member with a prescribed lambda (any value
/// consistent with v's invariants, i.e. det V_eta(lambda) = det V), built by
/// composing the standard-form-I reductions of v and of the target matrix.
/// Requires det C < 0. Throws NumericalFailureError when lambda does not
/// reproduce a physical member of the family.
NormalFormEta to_normal_form_eta_at(const TwoModeCM& v, double eta, double lambda,
                                    double tol = 1e-9);

/// All real roots lambda of the Lemma-2/3 root equation for the given eta
/// (the reductions reachable by local squeezes from standard form I),
/// sorted by increasing |lambda|.
std::vector<double> normal_form_lambda_roots(const TwoModeCM& v, double eta);

/// Seeded random physical state: S D S^T with Williamson eigenvalues
/// 1 + purity_mix * u and S a random two-mode symplectic (local Euler
/// triples around a two-mode squeezer with |r| <= max_squeeze).
/// Deterministic per seed.
TwoModeCM random_physical_cm(std::uint64_t seed, double purity_mix, double max_squeeze);

/// Closed-form coefficients of the eta-family reconstructed from the channel
/// invariants alone (valid when det C <= 0): block determinants stay at a^2,
/// b^2 and -c^2 for every (lambda, eta).
struct EtaFamily {
    double a = 1.0, b = 1.0, c = 0.0;

    static EtaFamily from(const ChannelInvariants& inv) { return {inv.a, inv.b, inv.c}; }

    double n(double lambda) const;
    double m(double lambda, double eta) const;
    double d(double lambda, double eta) const;
    /// det of the parametric family member.
    double det_v(double lambda, double eta) const;
    /// Positive definiteness of the parametric member (both quadrature
    /// sectors must have positive determinant).
    bool positive_definite(double lambda, double eta) const;
    /// Assembled parametric matrix.
    Mat4 member(double lambda, double eta) const;
};

}  // namespace teleopt
