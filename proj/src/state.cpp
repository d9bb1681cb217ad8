#include "teleopt/state.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <string>

#include "teleopt/errors.hpp"
#include "teleopt/symplectic.hpp"

namespace teleopt {

namespace {

constexpr double kPhysTol = 1e-9;  // Williamson eigenvalues in [1 - kPhysTol, 1) accepted

// x + sqrt(1 + x^2), evaluated without cancellation for x < 0.
double stable_r(double x) {
    const double h = std::hypot(1.0, x);
    return x >= 0.0 ? x + h : 1.0 / (h - x);
}

// -h + sqrt(inv^2 + h^2), evaluated without cancellation for h > 0.
double shifted_root(double inv, double h) {
    const double s = std::hypot(inv, h);
    return h >= 0.0 ? inv * inv / (h + s) : s - h;
}

// Symplectic pair (lo, hi) from a Sigma-type invariant and det V; the lower
// eigenvalue is recovered as sqrt(v)/hi to avoid cancellation.
std::pair<double, double> symplectic_pair(double sigma, double v) {
    if (!(v > 0.0))
        throw NumericalFailureError("symplectic spectrum: det V must be positive");
    double disc = sigma * sigma - 4.0 * v;
    if (disc < 0.0) {
        if (disc < -1e-12 * std::max(1.0, sigma * sigma))
            throw NumericalFailureError("symplectic spectrum: negative discriminant");
        disc = 0.0;
    }
    const double hi = std::sqrt(0.5 * (sigma + std::sqrt(disc)));
    return {std::sqrt(v) / hi, hi};
}

}  // namespace

TwoModeCM TwoModeCM::from_matrix(const Mat4& v, double sym_tol) {
    if (!v.finite()) throw InvalidInputError("make_cm: non-finite entries");
    const double asym = max_abs(v - v.transposed());
    if (asym >= sym_tol)
        throw InvalidInputError("make_cm: asymmetry " + std::to_string(asym) +
                                " exceeds tolerance");
    Mat4 sym = v;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            const double m = 0.5 * (sym(i, j) + sym(j, i));
            sym(i, j) = m;
            sym(j, i) = m;
        }

    const SymEig4 ev = sym_eig4(sym);
    double wmin = ev.w[0];
    for (double w : ev.w) wmin = std::min(wmin, w);
    if (wmin <= 0.0)
        throw UnphysicalStateError("make_cm: matrix is not positive definite", wmin);

    const Williamson wd = williamson_two_mode(sym, 1e-7);
    if (wd.nu_minus < 1.0 - kPhysTol)
        throw UnphysicalStateError(
            "make_cm: uncertainty principle violated (Williamson eigenvalue " +
                std::to_string(wd.nu_minus) + " < 1)",
            wd.nu_minus);
    return TwoModeCM(sym);
}

TwoModeCM two_mode_squeezed(double r) {
    if (!(r >= 0.0) || !std::isfinite(r))
        throw InvalidInputError("two_mode_squeezed: r must be finite and >= 0");
    const Mat2 diag_block = std::cosh(r) * Mat2::identity();
    const Mat2 off = -std::sinh(r) * pauli_z();
    return TwoModeCM::from_matrix(Mat4::from_blocks(diag_block, off, off, diag_block));
}

ChannelInvariants invariants(const TwoModeCM& v) {
    ChannelInvariants out;
    const double det_a = v.block_a().det();
    const double det_b = v.block_b().det();
    const double det_c = v.block_c().det();
    out.a = std::sqrt(det_a);
    out.b = std::sqrt(det_b);
    out.c = std::sqrt(std::fabs(det_c));
    const double eps = 1e-13 * std::max(1.0, out.a * out.b);
    out.sign_det_c = det_c > eps ? 1 : (det_c < -eps ? -1 : 0);
    out.v = v.matrix().det();
    return out;
}

PtSpectrum pt_spectrum(const TwoModeCM& v) {
    PtSpectrum out;
    const double det_a = v.block_a().det();
    const double det_b = v.block_b().det();
    const double det_c = v.block_c().det();
    out.sigma_pt = det_a + det_b - 2.0 * det_c;
    const auto [lo, hi] = symplectic_pair(out.sigma_pt, v.matrix().det());
    out.nu = lo;
    out.mu = hi;
    return out;
}

double log_negativity(const TwoModeCM& v) {
    const double nu = pt_spectrum(v).nu;
    return std::max(0.0, -std::log(nu));
}

namespace {

// Local symplectic bringing a symmetric positive-definite 2x2 block to
// sqrt(det) * I.
Mat2 isotropizer(const Mat2& block) {
    const SymEig2 ev = sym_eig2(block);
    if (ev.lo <= 0.0)
        throw NumericalFailureError("standard form: diagonal block not positive definite");
    const double g = std::sqrt(std::sqrt(ev.lo * ev.hi));
    // Columns of rotation(-angle) are the eigenvectors, so rotation(angle)
    // maps them onto the coordinate axes.
    return Mat2::diag(g / std::sqrt(ev.lo), g / std::sqrt(ev.hi)) * rotation(ev.angle);
}

}  // namespace

StandardFormI to_standard_form_i(const TwoModeCM& v) {
    StandardFormI out;
    out.a = std::sqrt(v.block_a().det());
    out.b = std::sqrt(v.block_b().det());
    const Mat2 l_a = isotropizer(v.block_a());
    const Mat2 l_b = isotropizer(v.block_b());
    const Mat2 c_mid = l_a * v.block_c() * l_b.transposed();
    const RotSvd2 svd = rot_svd2(c_mid);
    // Gauge: flip both rows so the C block reads diag(-c1, c2) with c1 >= |c2|.
    out.s_a = -1.0 * (svd.left * l_a);
    out.s_b = svd.right * l_b;
    out.c1 = svd.s1;
    out.c2 = -svd.s2;
    out.v_n = TwoModeCM::from_matrix(local_congruence(v.matrix(), out.s_a, out.s_b), 1e-9);
    return out;
}

double EtaFamily::n(double lambda) const { return shifted_root(a, 0.5 * lambda); }
double EtaFamily::m(double lambda, double eta) const {
    return shifted_root(b, 0.5 * lambda / (eta * eta));
}
double EtaFamily::d(double lambda, double eta) const {
    return shifted_root(c, 0.5 * lambda / eta);
}

double EtaFamily::det_v(double lambda, double eta) const {
    const double nn = n(lambda);
    const double mm = m(lambda, eta);
    const double dd = d(lambda, eta);
    const double x = (nn + lambda) * (mm + lambda / (eta * eta)) -
                     (dd + lambda / eta) * (dd + lambda / eta);
    const double p = nn * mm - dd * dd;
    return x * p;
}

bool EtaFamily::positive_definite(double lambda, double eta) const {
    const double nn = n(lambda);
    const double mm = m(lambda, eta);
    const double dd = d(lambda, eta);
    const double x = (nn + lambda) * (mm + lambda / (eta * eta)) -
                     (dd + lambda / eta) * (dd + lambda / eta);
    const double p = nn * mm - dd * dd;
    const double floor = 1e-11 * std::max(1.0, std::max(a * b, c * c));
    return nn > 0.0 && nn + lambda > 0.0 && x > floor && p > floor;
}

Mat4 EtaFamily::member(double lambda, double eta) const {
    const double nn = n(lambda);
    const double mm = m(lambda, eta);
    const double dd = d(lambda, eta);
    Mat4 v = Mat4::zero();
    v(0, 0) = nn + lambda;
    v(1, 1) = nn;
    v(2, 2) = mm + lambda / (eta * eta);
    v(3, 3) = mm;
    v(0, 2) = v(2, 0) = -(dd + lambda / eta);
    v(1, 3) = v(3, 1) = dd;
    return v;
}

namespace {

// Squeeze factors from the Lemma-2 conditions a (r - 1/r) = shift.
double squeeze_factor(double block_inv, double shift) {
    return stable_r(0.5 * shift / block_inv);
}

struct EtaRootProblem {
    double a, b, c1, c2, eta;

    // f(lambda) of the root equation; the reduction exists iff f = 1.
    double f(double lambda) const {
        const double ra = squeeze_factor(a, lambda);
        const double rb = squeeze_factor(b, lambda / (eta * eta));
        const double rho = std::sqrt(ra * rb);
        return eta * (c1 * rho - c2 / rho) / lambda;
    }
};

std::vector<double> solve_eta_roots(const EtaRootProblem& prob) {
    const double scale = std::max({1.0, prob.a, prob.b, prob.c1, std::fabs(prob.c2)});
    const double asym = prob.c1 - prob.c2;
    if (std::fabs(asym) <= 1e-12 * scale) return {0.0};

    const double sgn = asym > 0.0 ? 1.0 : -1.0;
    const double x_lo = 1e-8 * scale;
    const double x_hi = 1e6 * scale;
    const int kGrid = 480;
    std::vector<double> roots;
    double prev_x = x_lo;
    double prev_g = prob.f(sgn * prev_x) - 1.0;
    for (int i = 1; i <= kGrid; ++i) {
        const double x = x_lo * std::pow(x_hi / x_lo, static_cast<double>(i) / kGrid);
        const double g = prob.f(sgn * x) - 1.0;
        if ((prev_g > 0.0 && g <= 0.0) || (prev_g < 0.0 && g >= 0.0)) {
            double lo = prev_x, hi = x, glo = prev_g;
            for (int it = 0; it < 100; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double gm = prob.f(sgn * mid) - 1.0;
                if ((glo > 0.0) == (gm > 0.0)) {
                    lo = mid;
                    glo = gm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(sgn * 0.5 * (lo + hi));
        }
        prev_x = x;
        prev_g = g;
    }
    if (roots.empty())
        throw NumericalFailureError("normal form: no root of the reduction equation found");
    std::sort(roots.begin(), roots.end(),
              [](double l, double r) { return std::fabs(l) < std::fabs(r); });
    return roots;
}

NormalFormEta build_eta_form(const TwoModeCM& v, const StandardFormI& fi, double eta,
                             double lambda, double tol) {
    const double ra = squeeze_factor(fi.a, lambda);
    const double rb = squeeze_factor(fi.b, lambda / (eta * eta));
    const double rho = std::sqrt(ra * rb);
    NormalFormEta out;
    out.eta = eta;
    out.lambda = lambda;
    out.n = fi.a / ra;
    out.m = fi.b / rb;
    out.d = fi.c2 / rho;
    out.s_a = squeeze(std::sqrt(ra)) * fi.s_a;
    out.s_b = squeeze(std::sqrt(rb)) * fi.s_b;
    const Mat4 reduced = local_congruence(v.matrix(), out.s_a, out.s_b);
    // Constraint-chain residual: n1-n2 = eta (d1-d2) = eta^2 (m1-m2) = lambda.
    const double scale = std::max(1.0, max_abs(reduced));
    const double res = std::max(
        {std::fabs(reduced(0, 0) - reduced(1, 1) - lambda),
         std::fabs(eta * (-reduced(0, 2) - reduced(1, 3)) - lambda),
         std::fabs(eta * eta * (reduced(2, 2) - reduced(3, 3)) - lambda)});
    if (res > std::max(tol, 1e-9) * scale)
        throw NumericalFailureError("normal form: constraint residual " + std::to_string(res));
    out.veta = TwoModeCM::from_matrix(reduced, 1e-9);
    return out;
}

}  // namespace

std::vector<double> normal_form_lambda_roots(const TwoModeCM& v, double eta) {
    if (!(eta > 0.0 && eta <= 1.0))
        throw InvalidInputError("normal_form_lambda_roots: eta must be in (0, 1]");
    const StandardFormI fi = to_standard_form_i(v);
    return solve_eta_roots({fi.a, fi.b, fi.c1, fi.c2, eta});
}

NormalFormEta to_normal_form_eta(const TwoModeCM& v, double eta, double tol) {
    if (!(eta > 0.0 && eta <= 1.0))
        throw InvalidInputError("to_normal_form_eta: eta must be in (0, 1]");
    const StandardFormI fi = to_standard_form_i(v);
    const std::vector<double> roots = solve_eta_roots({fi.a, fi.b, fi.c1, fi.c2, eta});
    // Among the admissible reductions keep the one with the least attenuated
    // noise; ties go to the smallest |lambda| (the sort order).
    double best_lambda = roots.front();
    double best_noise = std::numeric_limits<double>::infinity();
    for (double lam : roots) {
        const double ra = squeeze_factor(fi.a, lam);
        const double rb = squeeze_factor(fi.b, lam / (eta * eta));
        const double noise = fi.a / ra + eta * eta * (fi.b / rb) -
                             2.0 * eta * (fi.c2 / std::sqrt(ra * rb)) + 1.0 - eta * eta;
        if (noise < best_noise - 1e-12) {
            best_noise = noise;
            best_lambda = lam;
        }
    }
    return build_eta_form(v, fi, eta, best_lambda, tol);
}

StandardFormIII to_standard_form_iii(const TwoModeCM& v, double tol) {
    const NormalFormEta nf = to_normal_form_eta(v, 1.0, tol);
    StandardFormIII out;
    out.n = nf.n;
    out.m = nf.m;
    out.d = nf.d;
    out.lambda = nf.lambda;
    out.s_a = nf.s_a;
    out.s_b = nf.s_b;
    out.v1 = nf.veta;
    return out;
}

NormalFormEta to_normal_form_eta_at(const TwoModeCM& v, double eta, double lambda,
                                    double tol) {
    if (!(eta > 0.0 && eta <= 1.0))
        throw InvalidInputError("to_normal_form_eta_at: eta must be in (0, 1]");
    const ChannelInvariants inv = invariants(v);
    if (inv.sign_det_c >= 0)
        throw OutOfDomainError("to_normal_form_eta_at: requires det C < 0");
    const EtaFamily fam = EtaFamily::from(inv);
    if (!fam.positive_definite(lambda, eta))
        throw NumericalFailureError("to_normal_form_eta_at: target member is unphysical");

    TwoModeCM target = [&] {
        try {
            return TwoModeCM::from_matrix(fam.member(lambda, eta));
        } catch (const UnphysicalStateError& e) {
            throw NumericalFailureError(std::string("to_normal_form_eta_at: ") + e.what());
        }
    }();
    const StandardFormI fi_v = to_standard_form_i(v);
    const StandardFormI fi_t = to_standard_form_i(target);
    const Mat2 u_a = fi_t.s_a.inverse() * fi_v.s_a;
    const Mat2 u_b = fi_t.s_b.inverse() * fi_v.s_b;
    const Mat4 reduced = local_congruence(v.matrix(), u_a, u_b);
    const double scale = std::max(1.0, max_abs(target.matrix()));
    if (max_abs(reduced - target.matrix()) > std::max(tol, 1e-7) * scale)
        throw NumericalFailureError(
            "to_normal_form_eta_at: lambda is inconsistent with the state invariants");

    NormalFormEta out;
    out.eta = eta;
    out.lambda = lambda;
    out.n = fam.n(lambda);
    out.m = fam.m(lambda, eta);
    out.d = fam.d(lambda, eta);
    out.s_a = u_a;
    out.s_b = u_b;
    out.veta = TwoModeCM::from_matrix(reduced, 1e-9);
    return out;
}

TwoModeCM random_physical_cm(std::uint64_t seed, double purity_mix, double max_squeeze) {
    if (!(max_squeeze > 0.0))
        throw InvalidInputError("random_physical_cm: max_squeeze must be positive");
    if (!(purity_mix >= 0.0 && purity_mix <= 1.0))
        throw InvalidInputError("random_physical_cm: purity_mix must be in [0, 1]");
    std::mt19937_64 gen(seed);
    auto uniform = [&gen]() {
        return static_cast<double>(gen() >> 11) * 0x1.0p-53;  // [0, 1)
    };
    auto random_local = [&]() {
        EulerParams p;
        p.phi = 2.0 * M_PI * uniform();
        p.s = std::exp((uniform() - 0.5) * std::min(max_squeeze, 3.0));
        p.psi = 2.0 * M_PI * uniform();
        return euler_compose(p);
    };
    const Mat2 e1 = random_local(), e2 = random_local();
    const double r_tms = max_squeeze * uniform();
    const Mat2 e3 = random_local(), e4 = random_local();

    const double nu1 = 1.0 + 2.0 * purity_mix * uniform();
    const double nu2 = 1.0 + 2.0 * purity_mix * uniform();

    const Mat4 s = Mat4::direct_sum(e1, e2) * two_mode_squeezer(r_tms) * Mat4::direct_sum(e3, e4);
    const Mat4 w = s * Mat4::diag(std::sqrt(nu1), std::sqrt(nu1), std::sqrt(nu2), std::sqrt(nu2));
    const Mat4 v = w * w.transposed();
    return TwoModeCM::from_matrix(v);
}

}  // namespace teleopt
