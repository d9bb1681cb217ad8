#include "teleopt/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "teleopt/errors.hpp"
#include "teleopt/symplectic.hpp"

namespace teleopt {

FidelityBounds fidelity_bounds(double nu) {
    if (!(nu > 0.0) || !std::isfinite(nu))
        throw InvalidInputError("fidelity_bounds: nu must be positive and finite");
    FidelityBounds b;
    b.nu = nu;
    b.lower = (1.0 + nu) / (1.0 + 3.0 * nu);
    b.upper = 1.0 / (1.0 + nu);
    return b;
}

BoundGap max_bound_gap() {
    auto gap = [](double nu) {
        const FidelityBounds b = fidelity_bounds(nu);
        return b.upper - b.lower;
    };
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = 1e-9, b = 1.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = gap(x1), f2 = gap(x2);
    int iters = 0;
    while (b - a > 1e-12 && iters < 200) {
        ++iters;
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = gap(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = gap(x1);
        }
    }
    BoundGap out;
    out.nu_star = 0.5 * (a + b);
    out.gap = gap(out.nu_star);
    out.iterations = iters;
    return out;
}

OmegaThetaResult omega_theta(const TwoModeCM& v) {
    const PtSpectrum spec = pt_spectrum(v);
    if (spec.nu >= 1.0)
        throw OutOfDomainError("omega_theta: state must be entangled (nu < 1)");

    const Williamson wd = williamson_two_mode(partial_transpose_cm(v.matrix()), 1e-8);
    if (std::fabs(wd.nu_minus - spec.nu) > 1e-7 * std::max(1.0, spec.mu))
        throw NumericalFailureError("omega_theta: PT spectrum mismatch");

    OmegaThetaResult out;
    out.w_a = wd.s.block(0, 0);
    out.w_b = wd.s.block(0, 1);
    double eps = out.w_b.det() - out.w_a.det();
    if (std::fabs(eps) > spec.nu + 1e-9)
        throw NumericalFailureError("omega_theta: |epsilon| exceeds nu");
    eps = std::clamp(eps, -spec.nu, spec.nu);
    out.epsilon = eps;
    out.theta = std::atan(std::sqrt((1.0 - eps) / (1.0 + eps)));

    const Mat2 z = pauli_z();
    const Mat2 zwz = z * out.w_a * z;
    if (eps >= 0.0) {
        // theta <= pi/4: noise is added on Alice's side.
        const double inv_cos = 1.0 / std::cos(out.theta);
        const double tan2 = std::pow(std::tan(out.theta), 2);
        out.map.s_a = inv_cos * zwz;
        out.map.s_b = inv_cos * out.w_b;
        out.map.g_a = (1.0 - tan2) * Mat2::identity();
        out.map.g_b = Mat2::zero();
    } else {
        const double inv_sin = 1.0 / std::sin(out.theta);
        const double cot2 = std::pow(1.0 / std::tan(out.theta), 2);
        out.map.s_a = inv_sin * zwz;
        out.map.s_b = inv_sin * out.w_b;
        out.map.g_a = Mat2::zero();
        out.map.g_b = (1.0 - cot2) * Mat2::identity();
    }
    const double ae = std::fabs(eps);
    out.fidelity = (1.0 + ae) / (1.0 + spec.nu + 2.0 * ae);
    return out;
}

namespace {

double stable_r(double x) {
    const double h = std::hypot(1.0, x);
    return x >= 0.0 ? x + h : 1.0 / (h - x);
}

TwoModeCM swap_modes(const TwoModeCM& v) {
    const Mat2 c = v.block_c();
    return TwoModeCM::from_matrix(
        Mat4::from_blocks(v.block_b(), c.transposed(), c, v.block_a()), 1e-9);
}

// Candidate fidelity of Eq.-style closed form; the lambda terms cancel
// between n, eta^2 m and 2 eta d, leaving only the invariants.
double candidate_fidelity(const EtaFamily& fam, double lambda, double eta) {
    const double q = 0.25 * lambda * lambda;
    const double denom = 2.0 + std::sqrt(fam.a * fam.a + q) +
                         std::sqrt(fam.b * fam.b * std::pow(eta, 4) + q) -
                         2.0 * std::sqrt(fam.c * fam.c * eta * eta + q) + 1.0 - eta * eta;
    return denom > 0.0 ? 2.0 / denom : 0.0;
}

// Stationarity residual of the interior system: eta (m - 1) - d.
double stationarity_residual(const EtaFamily& fam, double lambda, double eta) {
    return eta * (fam.m(lambda, eta) - 1.0) - fam.d(lambda, eta);
}

// All nonzero roots of det V_eta(lambda) = v on both sign sides.
std::vector<double> det_roots(const EtaFamily& fam, double eta, double v, int grid_per_side) {
    std::vector<double> roots;
    const double scale = std::max({1.0, fam.a, fam.b, fam.c});
    const double d0 = fam.det_v(0.0, eta) - v;
    // |c1 - c2| of the underlying standard form I sets the scale of the
    // smallest possible root.
    const double asym = std::sqrt(std::max(d0, 0.0) / (fam.a * fam.b));
    const double x_lo = std::max(1e-13 * scale, std::min(1e-7 * scale, 1e-3 * asym));
    const double x_hi = 1e7 * scale * scale;
    for (double sgn : {1.0, -1.0}) {
        double px = x_lo;
        double pd = fam.det_v(sgn * px, eta) - v;
        for (int i = 1; i <= grid_per_side; ++i) {
            const double x =
                x_lo * std::pow(x_hi / x_lo, static_cast<double>(i) / grid_per_side);
            const double dd = fam.det_v(sgn * x, eta) - v;
            if ((pd > 0.0) != (dd > 0.0)) {
                double lo = px, hi = x, dlo = pd;
                for (int it = 0; it < 90; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const double dm = fam.det_v(sgn * mid, eta) - v;
                    if ((dlo > 0.0) == (dm > 0.0)) {
                        lo = mid;
                        dlo = dm;
                    } else {
                        hi = mid;
                    }
                }
                roots.push_back(sgn * 0.5 * (lo + hi));
            }
            px = x;
            pd = dd;
        }
    }
    std::sort(roots.begin(), roots.end(),
              [](double l, double r) { return std::fabs(l) < std::fabs(r); });
    return roots;
}

// Root of det V_eta(lambda) = v near `guess` (used for continuation in eta).
std::optional<double> local_det_root(const EtaFamily& fam, double eta, double v, double guess) {
    double delta = 1e-4 * (1.0 + std::fabs(guess));
    double lo = guess - delta, hi = guess + delta;
    double dlo = fam.det_v(lo, eta) - v, dhi = fam.det_v(hi, eta) - v;
    int tries = 0;
    while ((dlo > 0.0) == (dhi > 0.0)) {
        if (++tries > 24) return std::nullopt;
        delta *= 2.0;
        lo = guess - delta;
        hi = guess + delta;
        dlo = fam.det_v(lo, eta) - v;
        dhi = fam.det_v(hi, eta) - v;
    }
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double dm = fam.det_v(mid, eta) - v;
        if ((dlo > 0.0) == (dm > 0.0)) {
            lo = mid;
            dlo = dm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Interior stationary points for one labeling: scan eta over a uniform grid,
// follow the det-constraint branches lambda(eta), and bisect sign changes of
// the stationarity residual.
void interior_candidates(const EtaFamily& fam, double v, Side side, const SolverOptions& opts,
                         std::vector<Candidate>& out) {
    // Analytic lambda = 0 branch (present iff c1 = c2, where the det
    // constraint has a double root at 0 that a sign scan cannot see).
    const double d0 = fam.det_v(0.0, 1.0) - v;
    if (std::fabs(d0) <= 1e-9 * std::max(1.0, v) && fam.b > 1.0) {
        const double eta_star = fam.c / (fam.b - 1.0);
        if (eta_star > 1e-9 && eta_star < 1.0 - 1e-12 &&
            fam.positive_definite(0.0, eta_star))
            out.push_back({0.0, eta_star, candidate_fidelity(fam, 0.0, eta_star), side});
    }

    const int n = std::max(opts.eta_grid, 16);
    const int grid_per_side = 120;
    std::vector<double> prev_roots;
    double prev_eta = 0.0;
    for (int k = 1; k < n; ++k) {
        const double eta = static_cast<double>(k) / n;
        std::vector<double> roots = det_roots(fam, eta, v, grid_per_side);
        if (!prev_roots.empty()) {
            for (double r0 : prev_roots) {
                // Continue the branch to the nearest same-sign root.
                double best = std::numeric_limits<double>::infinity();
                double r1 = 0.0;
                bool found = false;
                for (double cand : roots) {
                    if ((cand > 0.0) != (r0 > 0.0)) continue;
                    const double dist = std::fabs(cand - r0);
                    if (dist < best) {
                        best = dist;
                        r1 = cand;
                        found = true;
                    }
                }
                if (!found || best > 0.35 * (1.0 + std::min(std::fabs(r0), std::fabs(r1))))
                    continue;
                const double g0 = stationarity_residual(fam, r0, prev_eta);
                const double g1 = stationarity_residual(fam, r1, eta);
                if ((g0 > 0.0) == (g1 > 0.0)) continue;
                // Bisect in eta with lambda continuation.
                double elo = prev_eta, ehi = eta, llo = r0, lhi = r1, glo = g0;
                bool ok = true;
                for (int it = 0; it < 48 && ok; ++it) {
                    const double em = 0.5 * (elo + ehi);
                    const auto lm = local_det_root(fam, em, v, 0.5 * (llo + lhi));
                    if (!lm) {
                        ok = false;
                        break;
                    }
                    const double gm = stationarity_residual(fam, *lm, em);
                    if ((glo > 0.0) == (gm > 0.0)) {
                        elo = em;
                        llo = *lm;
                        glo = gm;
                    } else {
                        ehi = em;
                        lhi = *lm;
                    }
                }
                if (!ok) continue;
                const double eta_star = 0.5 * (elo + ehi);
                const double lam_star = 0.5 * (llo + lhi);
                if (fam.positive_definite(lam_star, eta_star))
                    out.push_back({lam_star, eta_star,
                                   candidate_fidelity(fam, lam_star, eta_star), side});
            }
        }
        prev_roots = std::move(roots);
        prev_eta = eta;
    }
}

// Candidates on the eta = 1 boundary (no attenuation).
void boundary_candidates(const EtaFamily& fam, double v, std::vector<Candidate>& out) {
    std::vector<double> roots = det_roots(fam, 1.0, v, 240);
    const double d0 = fam.det_v(0.0, 1.0) - v;
    if (std::fabs(d0) <= 1e-9 * std::max(1.0, v)) roots.insert(roots.begin(), 0.0);
    for (double lam : roots)
        if (fam.positive_definite(lam, 1.0))
            out.push_back({lam, 1.0, candidate_fidelity(fam, lam, 1.0), Side::none});
}

// Deduplicate near-identical candidates (same side, nearly equal parameters).
void dedupe_candidates(std::vector<Candidate>& cands) {
    std::vector<Candidate> unique;
    for (const Candidate& c : cands) {
        bool dup = false;
        for (const Candidate& u : unique)
            if (u.side == c.side && std::fabs(u.eta - c.eta) < 1e-7 &&
                std::fabs(u.lambda - c.lambda) < 1e-7 * (1.0 + std::fabs(c.lambda))) {
                dup = true;
                break;
            }
        if (!dup) unique.push_back(c);
    }
    cands.swap(unique);
}

int side_rank(Side s) { return s == Side::none ? 0 : (s == Side::b ? 1 : 2); }

}  // namespace

bool upper_bound_achievable(const TwoModeCM& v, double tol) {
    const StandardFormIII sf = to_standard_form_iii(v);
    return std::fabs(sf.n - sf.m) <= tol;
}

OptimizationReport optimal_tgcp(const TwoModeCM& v, const SolverOptions& opts) {
    OptimizationReport rep;
    const PtSpectrum spec = pt_spectrum(v);
    rep.bounds = fidelity_bounds(spec.nu);
    rep.entangled = spec.nu < 1.0;
    rep.f_unoptimized = fidelity_coherent(v);

    const ChannelInvariants inv = invariants(v);

    if (inv.sign_det_c >= 0) {
        // det C >= 0: the state is separable and the invariant-space family
        // does not apply; only symplectic reductions (eta = 1) are searched.
        const StandardFormI fi = to_standard_form_i(v);
        for (double lam : normal_form_lambda_roots(v, 1.0)) {
            const double ra = stable_r(0.5 * lam / fi.a);
            const double rb = stable_r(0.5 * lam / fi.b);
            const double noise =
                fi.a / ra + fi.b / rb - 2.0 * fi.c2 / std::sqrt(ra * rb);
            if (noise <= -2.0) continue;
            rep.candidates.push_back({lam, 1.0, 2.0 / (2.0 + noise), Side::none});
        }
        if (rep.candidates.empty())
            throw NumericalFailureError("optimal_tgcp: no boundary candidate found");
        const NormalFormEta nf = to_normal_form_eta(v, 1.0, 1e-8);
        rep.optimal_map.s_a = nf.s_a;
        rep.optimal_map.s_b = nf.s_b;
        rep.lambda_star = nf.lambda;
        rep.tau_star = 1.0;
        rep.attenuation_side = Side::none;
        rep.f_opt = 2.0 / (2.0 + nf.n + nf.m - 2.0 * nf.d);
    } else {
        const EtaFamily fam_b = EtaFamily::from(inv);
        const EtaFamily fam_a{inv.b, inv.a, inv.c};
        boundary_candidates(fam_b, inv.v, rep.candidates);
        interior_candidates(fam_b, inv.v, Side::b, opts, rep.candidates);
        interior_candidates(fam_a, inv.v, Side::a, opts, rep.candidates);
        dedupe_candidates(rep.candidates);
        if (rep.candidates.empty())
            throw NumericalFailureError("optimal_tgcp: no boundary candidate found");

        double fmax = -1.0;
        for (const Candidate& c : rep.candidates) fmax = std::max(fmax, c.fidelity);
        // Ties prefer no attenuation, then the smallest |lambda| shift.
        const Candidate* best = nullptr;
        for (const Candidate& c : rep.candidates) {
            if (c.fidelity < fmax - 1e-10) continue;
            if (!best) {
                best = &c;
                continue;
            }
            const bool better =
                c.eta > best->eta + 1e-12 ||
                (std::fabs(c.eta - best->eta) <= 1e-12 &&
                 (std::fabs(c.lambda) < std::fabs(best->lambda) - 1e-12 ||
                  (std::fabs(std::fabs(c.lambda) - std::fabs(best->lambda)) <= 1e-12 &&
                   side_rank(c.side) < side_rank(best->side))));
            if (better) best = &c;
        }

        rep.f_opt = best->fidelity;
        rep.lambda_star = best->lambda;
        if (best->side == Side::none) {
            const NormalFormEta nf = to_normal_form_eta_at(v, 1.0, best->lambda);
            rep.optimal_map.s_a = nf.s_a;
            rep.optimal_map.s_b = nf.s_b;
            rep.tau_star = 1.0;
            rep.attenuation_side = Side::none;
        } else {
            const TwoModeCM vv = best->side == Side::b ? v : swap_modes(v);
            const NormalFormEta nf = to_normal_form_eta_at(vv, best->eta, best->lambda);
            TgcpMap map;
            map.s_a = nf.s_a;
            map.s_b = best->eta * nf.s_b;
            map.g_b = (1.0 - best->eta * best->eta) * Mat2::identity();
            if (best->side == Side::a) {
                std::swap(map.s_a, map.s_b);
                std::swap(map.g_a, map.g_b);
            }
            rep.optimal_map = map;
            rep.tau_star = best->eta;
            rep.attenuation_side = best->side;
        }
    }

    rep.output_cm = apply_local_tgcp(v, rep.optimal_map);
    const double achieved = fidelity_coherent(rep.output_cm);
    if (std::fabs(achieved - rep.f_opt) > 1e-7)
        throw NumericalFailureError(
            "optimal_tgcp: reconstructed map does not achieve the candidate fidelity (" +
            std::to_string(achieved) + " vs " + std::to_string(rep.f_opt) + ")");
    rep.decomposition_a = decompose_minimal_noise(rep.optimal_map.s_a, rep.optimal_map.g_a);
    rep.decomposition_b = decompose_minimal_noise(rep.optimal_map.s_b, rep.optimal_map.g_b);
    return rep;
}

namespace {

// Fidelity of v under the (Euler, attenuation) map parametrization, without
// state revalidation; this is the oracle's hot path.
double mapped_fidelity(const Mat4& v, const std::array<double, 8>& x) {
    auto mode_map = [](double phi, double l, double psi, double t, Mat2& s, double& g) {
        const double squeeze_amt = std::exp(std::clamp(l, -3.0, 3.0));
        const double tau = std::clamp(t, 0.02, 1.0);
        s = tau * (rotation(phi) * Mat2::diag(squeeze_amt, 1.0 / squeeze_amt) * rotation(psi));
        g = 1.0 - tau * tau;
    };
    Mat2 s_a, s_b;
    double g_a = 0.0, g_b = 0.0;
    mode_map(x[0], x[1], x[2], x[3], s_a, g_a);
    mode_map(x[4], x[5], x[6], x[7], s_b, g_b);

    const Mat2 a = s_a * v.block(0, 0) * s_a.transposed() + Mat2::diag(g_a, g_a);
    const Mat2 b = s_b * v.block(1, 1) * s_b.transposed() + Mat2::diag(g_b, g_b);
    const Mat2 c = s_a * v.block(0, 1) * s_b.transposed();
    const Mat2 z = pauli_z();
    const Mat2 n = z * a * z + z * c + c.transposed() * z + b;
    const double det = 4.0 + 2.0 * n.trace() + n.det();
    return det > 0.0 ? 2.0 / std::sqrt(det) : 0.0;
}

struct NelderMead {
    static constexpr int kDim = 8;
    using Point = std::array<double, kDim>;

    template <typename F>
    static std::pair<Point, double> minimize(F&& f, const Point& start, const Point& steps,
                                             int max_evals, long& evals) {
        std::array<Point, kDim + 1> xs;
        std::array<double, kDim + 1> fs;
        xs[0] = start;
        fs[0] = f(start);
        for (int i = 0; i < kDim; ++i) {
            xs[i + 1] = start;
            xs[i + 1][static_cast<size_t>(i)] += steps[static_cast<size_t>(i)];
            fs[i + 1] = f(xs[i + 1]);
        }
        int used = kDim + 1;
        std::array<int, kDim + 1> order{};
        auto sort_simplex = [&]() {
            for (int i = 0; i <= kDim; ++i) order[static_cast<size_t>(i)] = i;
            std::sort(order.begin(), order.end(),
                      [&](int l, int r) { return fs[static_cast<size_t>(l)] < fs[static_cast<size_t>(r)]; });
        };
        while (used < max_evals) {
            sort_simplex();
            const int lo = order[0], hi = order[kDim], second_hi = order[kDim - 1];
            if (fs[static_cast<size_t>(hi)] - fs[static_cast<size_t>(lo)] < 1e-14) break;
            Point centroid{};
            for (int i = 0; i <= kDim; ++i) {
                if (i == hi) continue;
                for (int d = 0; d < kDim; ++d)
                    centroid[static_cast<size_t>(d)] +=
                        xs[static_cast<size_t>(i)][static_cast<size_t>(d)] / kDim;
            }
            auto blend = [&](double coef) {
                Point p;
                for (int d = 0; d < kDim; ++d)
                    p[static_cast<size_t>(d)] =
                        centroid[static_cast<size_t>(d)] +
                        coef * (xs[static_cast<size_t>(hi)][static_cast<size_t>(d)] -
                                centroid[static_cast<size_t>(d)]);
                return p;
            };
            const Point refl = blend(-1.0);
            const double f_refl = f(refl);
            ++used;
            if (f_refl < fs[static_cast<size_t>(lo)]) {
                const Point expd = blend(-2.0);
                const double f_expd = f(expd);
                ++used;
                if (f_expd < f_refl) {
                    xs[static_cast<size_t>(hi)] = expd;
                    fs[static_cast<size_t>(hi)] = f_expd;
                } else {
                    xs[static_cast<size_t>(hi)] = refl;
                    fs[static_cast<size_t>(hi)] = f_refl;
                }
            } else if (f_refl < fs[static_cast<size_t>(second_hi)]) {
                xs[static_cast<size_t>(hi)] = refl;
                fs[static_cast<size_t>(hi)] = f_refl;
            } else {
                const Point contr = blend(f_refl < fs[static_cast<size_t>(hi)] ? -0.5 : 0.5);
                const double f_contr = f(contr);
                ++used;
                if (f_contr < std::min(f_refl, fs[static_cast<size_t>(hi)])) {
                    xs[static_cast<size_t>(hi)] = contr;
                    fs[static_cast<size_t>(hi)] = f_contr;
                } else {
                    // Shrink toward the best vertex.
                    for (int i = 0; i <= kDim; ++i) {
                        if (i == lo) continue;
                        for (int d = 0; d < kDim; ++d)
                            xs[static_cast<size_t>(i)][static_cast<size_t>(d)] =
                                0.5 * (xs[static_cast<size_t>(i)][static_cast<size_t>(d)] +
                                       xs[static_cast<size_t>(lo)][static_cast<size_t>(d)]);
                        fs[static_cast<size_t>(i)] = f(xs[static_cast<size_t>(i)]);
                        ++used;
                    }
                }
            }
        }
        evals += used;
        sort_simplex();
        return {xs[static_cast<size_t>(order[0])], fs[static_cast<size_t>(order[0])]};
    }
};

}  // namespace

BruteForceResult brute_force_optimal(const TwoModeCM& v, const BruteForceOptions& opts) {
    BruteForceResult out;
    out.starts = std::max(opts.starts, 1);
    out.seed = opts.seed;
    const Mat4& vm = v.matrix();
    auto objective = [&vm](const NelderMead::Point& x) { return -mapped_fidelity(vm, x); };

    std::mt19937_64 gen(opts.seed);
    auto uniform = [&gen]() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };

    NelderMead::Point best_x{0, 0, 0, 1, 0, 0, 0, 1};
    double best_f = objective(best_x);
    out.evaluations = 1;
    const NelderMead::Point steps{0.4, 0.25, 0.4, 0.12, 0.4, 0.25, 0.4, 0.12};
    for (int s = 0; s < out.starts; ++s) {
        NelderMead::Point x0;
        if (s == 0) {
            x0 = {0, 0, 0, 1, 0, 0, 0, 1};
        } else if (s == 1) {
            x0 = {0, 0, 0, 1, 0, 0, 0, 0.7};
        } else if (s == 2) {
            x0 = {0, 0, 0, 0.7, 0, 0, 0, 1};
        } else {
            x0 = {2.0 * M_PI * uniform(), 2.4 * (uniform() - 0.5), 2.0 * M_PI * uniform(),
                  0.25 + 0.75 * uniform(), 2.0 * M_PI * uniform(), 2.4 * (uniform() - 0.5),
                  2.0 * M_PI * uniform(), 0.25 + 0.75 * uniform()};
        }
        const auto [x, f] =
            NelderMead::minimize(objective, x0, steps, opts.max_evals_per_start, out.evaluations);
        if (f < best_f) {
            best_f = f;
            best_x = x;
        }
    }
    // Polish the winner with a tight simplex.
    const NelderMead::Point fine_steps{0.01, 0.008, 0.01, 0.004, 0.01, 0.008, 0.01, 0.004};
    const auto [xp, fp] = NelderMead::minimize(objective, best_x, fine_steps,
                                               opts.max_evals_per_start, out.evaluations);
    if (fp < best_f) {
        best_f = fp;
        best_x = xp;
    }

    out.fidelity = -best_f;
    auto mode_map = [](double phi, double l, double psi, double t, Mat2& s, Mat2& g) {
        const double squeeze_amt = std::exp(std::clamp(l, -3.0, 3.0));
        const double tau = std::clamp(t, 0.02, 1.0);
        s = tau * (rotation(phi) * Mat2::diag(squeeze_amt, 1.0 / squeeze_amt) * rotation(psi));
        g = (1.0 - tau * tau) * Mat2::identity();
    };
    mode_map(best_x[0], best_x[1], best_x[2], best_x[3], out.best_map.s_a, out.best_map.g_a);
    mode_map(best_x[4], best_x[5], best_x[6], best_x[7], out.best_map.s_b, out.best_map.g_b);
    return out;
}

}  // namespace teleopt
