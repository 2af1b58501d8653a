#include "cfb/extremal.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cfb {

Poly<Real> hat_p2d(const IntervalSystem& sys) {
    Poly<Real> p = Poly<Real>::constant(Real(1));
    for (auto& ck : sys.c) p = p * Poly<Real>(std::vector<Real>{-ck, Real(1)});
    return p;
}

namespace {

template <class T>
struct PellCore {
    Poly<T> p_hat, q_hat;
    Poly<T> residual_poly;
};

// Shared x-to-s pipeline: from the normalized sqrt series of Pol(x) build
// (p, q) with p + q*sqrt(Pol/Pol(0)) = O(x^{2n}), reverse coefficients into
// the s = 1/x variable and rescale to Pell constant 1. With the normalized
// series both polynomials stay in the coefficient field.
template <class T>
PellCore<T> pell_from_pade(const Poly<T>& pol_normalized, const Poly<T>& hatP,
                           const PadePair<T>& pq, int n, int d) {
    const Poly<T>& p = pq.p;
    const Poly<T>& q = pq.q;
    Poly<T> E = p * p - pol_normalized * (q * q);
    T c = E.coeff(2 * n);
    if (field_traits<T>::is_zero(c))
        throw IllConditioned("pell: degenerate leading coefficient in the Pade pair");
    if (c < 0) throw IllConditioned("pell: negative Pell constant");

    Poly<T> ph = p.reversed(n);
    Poly<T> qh = q.reversed(n - d);
    // c = lc(p)^2 is a square in the field; divide by its exact square root.
    T sc;
    if constexpr (field_traits<T>::exact) {
        sc = field_traits<T>::abs(p.coeff(n));
        if (sc * sc != c) throw IllConditioned("pell: residual polynomial is not O(x^{2n})");
    } else {
        sc = sqrt(c);
    }
    ph *= T(1) / sc;
    qh *= T(1) / sc;
    if (ph.coeff(0) > 0) ph = -ph;

    PellCore<T> out;
    out.residual_poly = ph * ph - hatP * (qh * qh) - Poly<T>::constant(T(1));
    out.p_hat = std::move(ph);
    out.q_hat = std::move(qh);
    return out;
}

} // namespace

PellSolution pell_solve(const IntervalSystem& sys, int n, const NumericConfig& cfg) {
    const int d = sys.d;
    if (n < d) throw NoSolution("pell_solve: need n >= d (q has degree n - d)");
    auto b = sys.b_values();
    Poly<Real> pol = pol_from_b(b);
    auto series = sqrt_series(pol, 2 * n + 2);

    bool ill = false;
    auto pq = pade_sqrt(series, n, d, cfg, &ill);
    if (!pq) throw NoSolution("pell_solve: Cayley window has full rank, no Pell solution");
    if (ill)
        throw IllConditioned("pell_solve: null space numerically ambiguous (two small singular values)");

    Poly<Real> pol_norm = Real(1) / pol.coeff(0) * pol;
    Poly<Real> hatP = hat_p2d(sys);
    auto core = pell_from_pade(pol_norm, hatP, *pq, n, d);

    PellSolution sol;
    sol.p_hat = std::move(core.p_hat);
    sol.q_hat = std::move(core.q_hat);
    sol.residual = core.residual_poly.max_abs_coeff();
    sol.norm_const = sqrt(abs((pq->p).coeff(n)));
    sol.n = n;
    sol.d = d;
    return sol;
}

PellSolutionExact pell_solve_exact(const std::vector<Rational>& b_ascending, int n) {
    const int d = static_cast<int>(b_ascending.size() + 1) / 2;
    Poly<Rational> pol = Poly<Rational>::constant(Rational(1));
    for (auto& bk : b_ascending)
        pol = pol * Poly<Rational>(std::vector<Rational>{bk, Rational(-1)});
    auto series = sqrt_series(pol, 2 * n + 2);
    auto pq = pade_sqrt(series, n, d);
    if (!pq) throw NoSolution("pell_solve_exact: no Pell solution");

    Poly<Rational> pol_norm = Rational(1) / pol.coeff(0) * pol;
    Poly<Rational> hatP = Poly<Rational>(std::vector<Rational>{Rational(0), Rational(1)});
    for (auto& bk : b_ascending)
        hatP = hatP * Poly<Rational>(std::vector<Rational>{-Rational(1) / bk, Rational(1)});
    auto core = pell_from_pade(pol_norm, hatP, *pq, n, d);

    PellSolutionExact sol;
    sol.p_hat = std::move(core.p_hat);
    sol.q_hat = std::move(core.q_hat);
    sol.residual_zero = core.residual_poly.is_zero();
    sol.n = n;
    sol.d = d;
    return sol;
}

PellSolution pell_power(const PellSolution& sol, int k, const IntervalSystem& sys) {
    if (k < 1) throw Error("pell_power: need k >= 1");
    // T_k(p) and U_{k-1}(p) by the three-term recurrences over polynomials.
    Poly<Real> tprev = Poly<Real>::constant(Real(1)); // T_0
    Poly<Real> tcur = sol.p_hat;                      // T_1
    Poly<Real> uprev = Poly<Real>::constant(Real(0)); // U_{-1}
    Poly<Real> ucur = Poly<Real>::constant(Real(1));  // U_0
    for (int j = 2; j <= k; ++j) {
        Poly<Real> tn = Real(2) * (sol.p_hat * tcur) - tprev;
        tprev = std::move(tcur);
        tcur = std::move(tn);
        Poly<Real> un = Real(2) * (sol.p_hat * ucur) - uprev;
        uprev = std::move(ucur);
        ucur = std::move(un);
    }
    PellSolution out;
    out.p_hat = std::move(tcur);
    out.q_hat = ucur * sol.q_hat;
    if (out.p_hat.coeff(0) > 0) out.p_hat = -out.p_hat;
    out.n = sol.n * k;
    out.d = sol.d;
    Poly<Real> hatP = hat_p2d(sys);
    out.residual = (out.p_hat * out.p_hat - hatP * (out.q_hat * out.q_hat) -
                    Poly<Real>::constant(Real(1)))
                       .max_abs_coeff();
    out.norm_const = sol.norm_const;
    return out;
}

WindingData analyze_alternance(const PellSolution& sol, const IntervalSystem& sys,
                               const NumericConfig& cfg) {
    const int d = sys.d;
    const int n = sol.n;
    WindingData w;
    w.tau.assign(d, 0);

    if (sol.q_hat.degree() >= 1) {
        auto rep = real_roots(sol.q_hat);
        if (!rep.all_real || static_cast<int>(rep.roots.size()) != sol.q_hat.degree()) {
            std::ostringstream os;
            os << "analyze_alternance: q_hat has a non-real zero (companion imag "
               << rep.max_residual_imag << ")";
            throw ComplexRoot(os.str());
        }
        w.q_roots = rep.roots;
    } else if (sol.q_hat.is_zero()) {
        throw NoSolution("analyze_alternance: q_hat vanishes identically");
    }

    bool placed_ok = true;
    for (auto& r : w.q_roots) {
        bool placed = false;
        for (int j = 1; j <= d; ++j) {
            auto bd = sys.band(j);
            if (r > bd.lo && r < bd.hi) {
                ++w.tau[j - 1];
                placed = true;
                break;
            }
        }
        if (placed) continue;
        for (int j = 1; j <= d - 1; ++j) {
            auto gp = sys.gap(j);
            if (r > gp.lo && r < gp.hi) {
                ++w.gap_roots;
                placed = true;
                break;
            }
        }
        if (!placed) placed_ok = false;
    }

    w.m.assign(d + 1, 0);
    for (int j = d; j >= 1; --j) w.m[j - 1] = w.m[j] + w.tau[j - 1] + 1;
    w.m.resize(d);

    w.alternance.assign(d, 0);
    for (int j = 1; j <= d; ++j) w.alternance[j - 1] = w.tau[j - 1] + (j == d ? 2 : 1);

    w.consistent = placed_ok && (w.gap_roots == 0) && (w.m[0] == n);

    long g = 0;
    for (auto mj : w.m) g = std::gcd(g, mj);
    w.gcd_k = g == 0 ? 1 : g;
    w.elliptic_period = w.m[0] / w.gcd_k;
    w.m_elliptic.resize(d);
    for (int j = 0; j < d; ++j) w.m_elliptic[j] = w.m[j] / w.gcd_k;
    return w;
}

namespace {

// The single critical point of r in the open interval (0, smax); r' changes
// sign exactly once there.
Real critical_point(const Poly<Real>& r, const Real& smax) {
    Poly<Real> dr = r.derivative();
    Real lo = smax / 1000000;
    Real hi = smax - smax / 1000000;
    auto polished = polish_root(dr, smax / 2);
    if (polished && *polished > 0 && *polished < smax) return *polished;
    for (int it = 0; it < 20 + (int)(precision_digits10() * 3.4); ++it) {
        Real mid = (lo + hi) / 2;
        if (dr(lo) * dr(mid) <= 0) hi = mid; else lo = mid;
    }
    return (lo + hi) / 2;
}

} // namespace

DPlus1Caustics find_caustics_d_plus_1(const ConfocalFamily& family, const NumericConfig& cfg) {
    const int d = family.dim();
    // r(s) = s * prod(s - 1/a_j)
    std::vector<Real> inv_a;
    for (auto& ai : family.a) inv_a.push_back(1 / ai);
    Poly<Real> r(std::vector<Real>{Real(0), Real(1)});
    for (auto& ca : inv_a) r = r * Poly<Real>(std::vector<Real>{-ca, Real(1)});

    DPlus1Caustics out;
    out.gamma = critical_point(r, inv_a.back());
    out.r_at_gamma = r(out.gamma);

    out.p_hat = Real(2) / out.r_at_gamma * r - Poly<Real>::constant(Real(1));

    // Remaining roots of r(s) = r(gamma): deflate the double root at gamma.
    Poly<Real> shifted = r - Poly<Real>::constant(out.r_at_gamma);
    auto [w1, rem1] = shifted.divide_linear(out.gamma);
    auto [w2, rem2] = w1.divide_linear(out.gamma);
    (void)rem1;
    (void)rem2;

    auto rep = real_roots(w2);
    if (!rep.all_real || static_cast<int>(rep.roots.size()) != d - 1) {
        out.admissible = false;
        out.reason = "remaining roots of p_hat = 1 are not all real";
        return out;
    }
    for (auto& s : rep.roots) {
        if (!(s > 0)) {
            out.admissible = false;
            out.reason = "non-positive root of p_hat = 1";
            return out;
        }
        out.alpha.push_back(1 / s);
    }
    std::sort(out.alpha.begin(), out.alpha.end());

    // Type pattern of (d+1)-periodic trajectories: for even d an ellipsoid
    // caustic plus same-type pairs in (a_j, a_{j+1}) for even j; for odd d
    // same-type pairs for odd j.
    try {
        CausticSet cs = classify_caustics(family, out.alpha);
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
        if (got != expected) {
            out.admissible = false;
            out.reason = "caustic type pattern does not match the (d+1)-periodic layout";
            return out;
        }
    } catch (const Error& e) {
        out.admissible = false;
        out.reason = e.what();
        return out;
    }
    out.admissible = true;
    return out;
}

Hyperboloid4 hyperboloid_4periodic(const Real& a2, const Real& a3) {
    if (!(0 < a2 && a2 < a3))
        throw Error("hyperboloid_4periodic: need 0 < a2 < a3");
    Hyperboloid4 h;
    h.a1 = a2 * a3 / (a2 + a3);
    h.alpha = a2 + a3 - sqrt(a2 * a2 + a3 * a3);
    return h;
}

UniquePair unique_pair_in_family(const ConfocalFamily& family) {
    if (family.dim() != 3) throw Error("unique_pair_in_family: d = 3 only");
    const Real &a1 = family.a[0], &a2 = family.a[1], &a3 = family.a[2];
    UniquePair up;
    up.lambda = a1 - sqrt((a3 - a1) * (a2 - a1));
    Hyperboloid4 h = hyperboloid_4periodic(a2 - up.lambda, a3 - up.lambda);
    up.hyperboloid_alpha = h.alpha + up.lambda;
    return up;
}

} // namespace cfb
