#include "cfb/cayley.hpp"

#include <algorithm>
#include <sstream>

namespace cfb {

int cartesian_multiplier(const CausticSet& caustics, const std::vector<long>& m_elliptic) {
    const int d = caustics.d;
    // Window j of lambda_{j+1} is [bext[2j], bext[2j+1]] with bext = (0, b...).
    // A coordinate sign survives one elliptic period iff every window touching
    // a coordinate hyperplane value a_i has even elliptic winding number.
    for (int j = 0; j < d; ++j) {
        bool axis_adjacent = false;
        for (int idx : {2 * j, 2 * j + 1}) {
            if (idx == 0) continue; // bext[0] = 0 is the boundary, not an axis value
            if (caustics.b_is_axis[idx - 1]) axis_adjacent = true;
        }
        if (axis_adjacent && (m_elliptic[j] % 2 != 0)) return 2;
    }
    return 1;
}

PeriodicityVerdict check_periodicity(const ConfocalFamily& family, const CausticSet& caustics,
                                     int n, const NumericConfig& cfg) {
    const int d = family.dim();
    if (caustics.d != d) throw Error("check_periodicity: caustic set dimension mismatch");
    if (n <= d) {
        std::ostringstream os;
        os << "period " << n << " <= dimension " << d
           << ": such trajectories are contained in a coordinate hyperplane; "
              "restrict the family to that hyperplane and query again";
        throw PeriodTooSmall(os.str());
    }

    PeriodicityVerdict v;
    if (n % 2 == 1 && !caustics.has_ellipsoid_caustic()) {
        v.reason = "odd period requires one ellipsoidal caustic";
        return v;
    }

    Poly<Real> pol = pol_from_b(caustics.b);
    auto series = sqrt_series(pol, 2 * n + 2);
    IntervalSystem sys = interval_system(caustics);

    std::vector<int> candidates;
    for (int m = d; m <= n; ++m)
        if (n % m == 0) candidates.push_back(m);

    std::ostringstream failures;
    for (int m : candidates) {
        auto hk = hankel_condition(series, m, d, cfg);
        if (!hk.satisfied) {
            failures << "C(" << m << "," << d << ") rank " << hk.rank << "/" << hk.cols << "; ";
            continue;
        }
        PellSolution sol;
        try {
            sol = pell_solve(sys, m, cfg);
        } catch (const Error& e) {
            failures << "C(" << m << "," << d << ") held but Pell failed: " << e.what() << "; ";
            continue;
        }
        WindingData w = analyze_alternance(sol, sys, cfg);
        if (!w.consistent) {
            failures << "alternance bookkeeping inconsistent at m = " << m << "; ";
            continue;
        }
        if (w.gcd_k > 1 && w.elliptic_period >= d) {
            // First hit was not the fundamental solution; redo at the true
            // elliptic period.
            sol = pell_solve(sys, static_cast<int>(w.elliptic_period), cfg);
            w = analyze_alternance(sol, sys, cfg);
        }
        int elliptic = static_cast<int>(w.elliptic_period);
        int k = cartesian_multiplier(caustics, w.m_elliptic);
        int n_cart = k * elliptic;

        v.elliptic_period = elliptic;
        v.cartesian_period = n_cart;
        std::vector<long> winding(w.m_elliptic);
        for (auto& mi : winding) mi *= k;
        v.predicted_winding = winding;
        if (n % n_cart == 0) {
            v.periodic = true;
            // Signature reported for the fundamental Cartesian period.
            PellSolution cart = (k == 1 && elliptic == m)
                                    ? sol
                                    : pell_power(sol, n_cart / sol.n, sys);
            WindingData wc = analyze_alternance(cart, sys, cfg);
            v.signature = wc.tau;
            v.pell = std::move(cart);
            std::ostringstream os;
            os << "C(" << sol.n << "," << d << ") satisfied; elliptic period " << elliptic
               << ", Cartesian period " << n_cart;
            v.reason = os.str();
        } else {
            std::ostringstream os;
            os << "closes in Jacobi coordinates after " << elliptic
               << " impacts but the Cartesian period is " << n_cart
               << ", which does not divide " << n;
            v.reason = os.str();
        }
        return v;
    }
    v.reason = "no Cayley condition satisfied among candidate periods: " + failures.str();
    return v;
}

bool planar_cayley(const Real& a1, const Real& a2, const Real& alpha, int n,
                   const NumericConfig& cfg) {
    if (!(a1 < a2)) throw Error("planar_cayley: need a1 < a2");
    if (!(alpha > 0 && alpha < a2)) throw DegenerateCaustic("planar_cayley: alpha outside (0, a2)");
    if (alpha == a1) throw DegenerateCaustic("planar_cayley: alpha equals a1");
    if (n < 3) throw PeriodTooSmall("planar_cayley: n >= 3 required");

    Poly<Real> pol = pol_from_b({std::min(a1, alpha), std::min(a2, std::max(a1, alpha)),
                                 std::max(a2, alpha)});
    auto series = sqrt_series(pol, n + 2);

    int start, size;
    if (n % 2 == 0) { // n = 2m: |C_3 ... C_{m+1}; ...|, size m-1
        int m = n / 2;
        start = 3;
        size = m - 1;
    } else { // n = 2m+1: |C_2 ... C_{m+1}; ...|, size m
        int m = (n - 1) / 2;
        start = 2;
        size = m;
    }
    Real det = hankel_det(series, start, size);
    // Hadamard-style scale from the window entries.
    Real scale = 1;
    for (int i = 0; i < size; ++i) {
        Real rowsq = 0;
        for (int j = 0; j < size; ++j) {
            const Real& e = series.coeff[start + i + j];
            rowsq += e * e;
        }
        scale *= sqrt(rowsq);
    }
    if (scale == 0) return true;
    return abs(det) < cfg.vanish_rel() * scale;
}

namespace {

bool dplus1_type_pattern(const CausticSet& cs) {
    const int d = cs.d;
    std::vector<int> expected;
    if (d % 2 == 0) {
        expected.push_back(0);
        for (int j = 2; j <= d - 2; j += 2) {
            expected.push_back(j);
            expected.push_back(j);
        }
    } else {
        for (int j = 1; j <= d - 2; j += 2) {
            expected.push_back(j);
            expected.push_back(j);
        }
    }
    std::vector<int> got;
    for (auto& t : cs.types) got.push_back(t.sheets);
    std::sort(expected.begin(), expected.end());
    std::sort(got.begin(), got.end());
    return got == expected;
}

bool rel_vanish(const Real& value, const Real& scale, const NumericConfig& cfg) {
    if (scale == 0) return value == 0;
    return abs(value) < cfg.vanish_rel() * scale;
}

} // namespace

bool check_d_plus_1(const ConfocalFamily& family, const CausticSet& caustics,
                    const NumericConfig& cfg) {
    const int d = family.dim();
    if (!dplus1_type_pattern(caustics)) return false;

    // Divisor over alternate caustics: odd-indexed alphas for even d,
    // even-indexed for odd d (1-based, ascending).
    Poly<Real> divisor = Poly<Real>::constant(Real(1));
    std::vector<int> cond_idx; // 1-based alpha indices entering the polynomial conditions
    if (d % 2 == 0) {
        for (int j = 1; j <= d - 1; j += 2)
            divisor = divisor * Poly<Real>(std::vector<Real>{caustics.alpha[j - 1], Real(-1)});
        for (int j = 2; j <= d - 2; j += 2) cond_idx.push_back(j);
    } else {
        for (int j = 2; j <= d - 1; j += 2)
            divisor = divisor * Poly<Real>(std::vector<Real>{caustics.alpha[j - 1], Real(-1)});
        for (int j = 1; j <= d - 2; j += 2) cond_idx.push_back(j);
    }
    const int pdeg = (d % 2 == 0) ? d / 2 : (d + 1) / 2;

    Poly<Real> pol = pol_from_b(caustics.b);
    auto series = sqrt_series(pol, d + 2, divisor);

    Real scale = 0;
    for (int k = 0; k <= d + 1; ++k) scale = std::max(scale, abs(series.coeff[k]));

    for (int k = pdeg + 1; k <= d; ++k)
        if (!rel_vanish(series.coeff[k], scale, cfg)) return false;

    for (int j : cond_idx) {
        const Real& aj = caustics.alpha[j - 1];
        Real val = 0, mag = 0, pw = 1;
        for (int k = 0; k <= pdeg; ++k) {
            val += series.coeff[k] * pw;
            mag += abs(series.coeff[k]) * pw;
            pw *= aj;
        }
        if (!rel_vanish(val, mag, cfg)) return false;
    }
    return true;
}

bool check_five_d3(const ConfocalFamily& family, const CausticSet& caustics,
                   const NumericConfig& cfg) {
    if (family.dim() != 3) throw Error("check_five_d3: d = 3 only");
    if (caustics.types[0].sheets != 0) return false; // needs an ellipsoidal caustic

    Poly<Real> divisor(std::vector<Real>{caustics.alpha[0], Real(-1)});
    Poly<Real> pol = pol_from_b(caustics.b);
    auto series = sqrt_series(pol, 6, divisor);
    Real scale = 0;
    for (int k = 0; k <= 5; ++k) scale = std::max(scale, abs(series.coeff[k]));
    return rel_vanish(series.coeff[3], scale, cfg) && rel_vanish(series.coeff[4], scale, cfg);
}

SixVerdict check_six_d3(const ConfocalFamily& family, const Real& alpha1, const Real& alpha2,
                        const std::vector<long>& variant, const NumericConfig& cfg) {
    if (family.dim() != 3) throw Error("check_six_d3: d = 3 only");
    const std::vector<long> v642{6, 4, 2};
    const bool odd_variant = !(variant == v642);

    CausticSet cs = classify_caustics(family, {alpha1, alpha2});
    SixVerdict out;
    out.winding = {};

    if (!odd_variant) {
        Poly<Real> pol = pol_from_b(cs.b);
        auto series = sqrt_series(pol, 10);
        Real scale = 0;
        for (int k = 0; k <= 6; ++k) scale = std::max(scale, abs(series.coeff[k]));
        bool c45 = abs(series.coeff[4]) < cfg.vanish_rel() * scale &&
                   abs(series.coeff[5]) < cfg.vanish_rel() * scale;
        if (c45 && alpha1 == alpha2) {
            // Coinciding hyperboloid caustics: cross-check the B-series determinant.
            Poly<Real> pa = pol_from_b({family.a[0], family.a[1], family.a[2]});
            auto bs = sqrt_series(pa, 8);
            Real det = bs.coeff[3] * bs.coeff[5] - bs.coeff[4] * bs.coeff[4];
            Real sc = abs(bs.coeff[3] * bs.coeff[5]) + bs.coeff[4] * bs.coeff[4];
            out.note = (abs(det) < cfg.vanish_rel() * sc)
                           ? "|B3 B5 - B4^2| = 0 confirmed on the axis series"
                           : "warning: axis-series determinant did not vanish";
        }
        out.satisfied = c45;
        if (c45) out.winding = v642;
        return out;
    }

    // Odd m_1 variants need two 1-sheeted hyperboloid caustics.
    if (cs.types[0].sheets != 1 || cs.types[1].sheets != 1) {
        std::ostringstream os;
        os << "winding (" << variant[0] << "," << variant[1] << "," << variant[2]
           << ") requires both caustics to be 1-sheeted hyperboloids";
        throw TypeMismatch(os.str());
    }

    Poly<Real> pol = pol_from_b(cs.b);
    auto series = sqrt_series(pol, 8);

    // 6x5 matrix: columns 0..2 shift the coefficients of u = (alpha1-x)(alpha2-x),
    // columns 3..4 shift the series.
    const Real u0 = alpha1 * alpha2, u1 = -(alpha1 + alpha2), u2 = 1;
    Matrix<Real> M(6, 5);
    const Real u[3] = {u0, u1, u2};
    for (int j = 0; j < 3; ++j)
        for (int i = j; i < j + 3 && i < 6; ++i) M(i, j) = u[i - j];
    for (int i = 0; i < 6; ++i) M(i, 3) = series.coeff[i];
    for (int i = 1; i < 6; ++i) M(i, 4) = series.coeff[i - 1];

    auto svd = jacobi_svd(M);
    Real smax = svd.sigma.front();
    if (!(svd.sigma.back() < cfg.vanish_rel() * smax)) {
        out.satisfied = false;
        return out;
    }

    // Witness pair from the null vector; series columns are in normalized
    // scale, so p1 absorbs the factor sqrt(Pol(0)).
    const auto& nv = svd.right.back();
    Poly<Real> p2(std::vector<Real>{nv[0], nv[1], nv[2]});
    Real sig = sqrt(pol.coeff(0));
    Poly<Real> p1(std::vector<Real>{nv[3] / sig, nv[4] / sig});

    Poly<Real> u_poly(std::vector<Real>{u0, u1, u2});
    Poly<Real> a_poly = pol_from_b({family.a[0], family.a[1], family.a[2]});
    Poly<Real> E = u_poly * (p2 * p2) - a_poly * (p1 * p1);
    Real c6 = E.coeff(6);
    Real lower = 0;
    for (int k = 0; k < 6; ++k) lower = std::max(lower, abs(E.coeff(k)));
    if (abs(c6) == 0 || !(lower < cfg.vanish_rel() * abs(c6) * 1000)) {
        out.satisfied = false;
        out.note = "null vector did not verify the x^6 identity";
        return out;
    }
    Real sc = sqrt(abs(c6));
    p2 *= Real(1) / sc;
    p1 *= Real(1) / sc;
    if (c6 < 0)
        out.note = "identity realized with -x^6; Pell closure via X + Y";

    // Pell polynomial p6 = X' + Y' with X' - Y' = 1 in the s variable.
    Poly<Real> r2 = p2.reversed(2);
    Poly<Real> r1 = p1.reversed(1);
    std::vector<Real> inv_al{1 / alpha1, 1 / alpha2};
    Poly<Real> us = Poly<Real>::from_roots(inv_al);
    Poly<Real> rho(std::vector<Real>{Real(0), Real(1)});
    for (auto& ai : family.a) rho = rho * Poly<Real>(std::vector<Real>{-1 / ai, Real(1)});
    Real csign = c6 < 0 ? Real(-1) : Real(1);
    Poly<Real> X = (alpha1 * alpha2 / csign) * (us * (r2 * r2));
    Poly<Real> Y = (family.a[0] * family.a[1] * family.a[2] / csign) * (rho * (r1 * r1));

    PellSolution sol;
    sol.p_hat = X + Y;
    if (sol.p_hat.coeff(0) > 0) sol.p_hat = -sol.p_hat;
    Real qc = 2 * sqrt(alpha1 * alpha2 * family.a[0] * family.a[1] * family.a[2]);
    sol.q_hat = qc * (r1 * r2);
    sol.n = 6;
    sol.d = 3;
    IntervalSystem sys = interval_system(cs);
    Poly<Real> hatP = hat_p2d(sys);
    sol.residual =
        (sol.p_hat * sol.p_hat - hatP * (sol.q_hat * sol.q_hat) - Poly<Real>::constant(Real(1)))
            .max_abs_coeff();
    sol.norm_const = sc;

    WindingData w = analyze_alternance(sol, sys, cfg);
    out.witness = std::make_pair(p2, p1);
    out.winding.assign(w.m.begin(), w.m.end());
    out.satisfied = w.consistent && std::equal(variant.begin(), variant.end(), w.m.begin());
    return out;
}

} // namespace cfb
