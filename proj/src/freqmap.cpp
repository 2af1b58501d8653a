#include "cfb/freqmap.hpp"

#include "cfb/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace cfb {

namespace {

// Roots of hatP_{2d} with multiplicity: every c entry, including 0.
std::vector<Real> hatp_roots(const IntervalSystem& sys) { return sys.c; }

// prod over roots |s - c| with one copy of each endpoint removed.
Real reduced_weight(const std::vector<Real>& roots, const Real& s, const Real& lo,
                    const Real& hi) {
    bool skip_lo = true, skip_hi = true;
    Real r = 1;
    for (auto& c : roots) {
        if (skip_lo && c == lo) {
            skip_lo = false;
            continue;
        }
        if (skip_hi && c == hi) {
            skip_hi = false;
            continue;
        }
        r *= abs(s - c);
    }
    return r;
}

// Cosine-substitution rule on [lo, hi] for integrands with inverse-sqrt
// singularities at both endpoints: integral of phi(s)/sqrt((s-lo)(hi-s)).
Real chebyshev_rule(const std::function<Real(const Real&)>& phi, const Real& lo, const Real& hi,
                    unsigned n) {
    Real mid = (lo + hi) / 2;
    Real h = (hi - lo) / 2;
    Real pi = real_pi();
    Real acc = 0;
    for (unsigned i = 0; i < n; ++i) {
        Real theta = pi * (2 * Real(i) + 1) / (2 * Real(n));
        acc += phi(mid + h * cos(theta));
    }
    return acc * pi / Real(n);
}

Real converged_chebyshev(const std::function<Real(const Real&)>& phi, const Real& lo,
                         const Real& hi, const NumericConfig& cfg, unsigned* used = nullptr) {
    unsigned n = cfg.quadrature_nodes;
    Real prev = chebyshev_rule(phi, lo, hi, n);
    while (2 * n <= cfg.quadrature_node_cap) {
        n *= 2;
        Real cur = chebyshev_rule(phi, lo, hi, n);
        if (abs(cur - prev) < Real(1e-12) * (1 + abs(cur))) {
            if (used) *used = n;
            return cur;
        }
        prev = cur;
    }
    if (used) *used = n;
    return prev;
}

// tanh-sinh rule on [0, 1] for smooth integrands; used for the one-sided
// singular integrals after the quadratic substitution.
Real tanh_sinh_01(const std::function<Real(const Real&)>& f) {
    const Real pi_half = real_pi() / 2;
    const Real eps = pow(Real(10), -(long)precision_digits10() + 4);
    const double umax = 6.8; // weights are negligible past this at any working precision

    Real h = 1;
    Real prev = 0;
    for (int level = 0; level <= 10; ++level) {
        Real acc = 0;
        long kmax = static_cast<long>(std::ceil(umax / to_double(h)));
        for (long k = -kmax; k <= kmax; ++k) {
            Real u = Real(k) * h;
            Real t = pi_half * sinh(u);
            Real c = cosh(t);
            Real x = (1 + tanh(t)) / 2;
            Real w = pi_half * cosh(u) / (2 * c * c);
            if (w < eps * Real(1e-6)) continue;
            if (x > 0 && x < 1) acc += f(x) * w;
        }
        Real val = acc * h;
        if (level > 2 && abs(val - prev) < eps * (1 + abs(val))) return val;
        prev = val;
        h /= 2;
    }
    return prev;
}

// Integral of g(t)/sqrt(|t - singular_end|) over [lo, hi] where the
// inverse-sqrt singularity sits at exactly one endpoint. The substitution
// t = end -/+ (hi-lo) w^2 removes it.
Real one_sided_integral(const std::function<Real(const Real&)>& g, const Real& lo, const Real& hi,
                        bool singular_at_hi) {
    Real len = hi - lo;
    auto f = [&](const Real& w) -> Real {
        Real t = singular_at_hi ? hi - len * w * w : lo + len * w * w;
        return g(t);
    };
    return 2 * sqrt(len) * tanh_sinh_01(f);
}

Real interval_poly_integral(const IntervalSystem& sys, const Poly<Real>& poly, const Real& lo,
                            const Real& hi, const NumericConfig& cfg, unsigned* used = nullptr) {
    auto roots = hatp_roots(sys);
    auto phi = [&](const Real& s) -> Real {
        return poly(s) / sqrt(reduced_weight(roots, s, lo, hi));
    };
    return converged_chebyshev(phi, lo, hi, cfg, used);
}

} // namespace

Real band_integral(const IntervalSystem& sys, const Poly<Real>& poly, int band_index,
                   const NumericConfig& cfg) {
    auto bd = sys.band(band_index);
    return interval_poly_integral(sys, poly, bd.lo, bd.hi, cfg);
}

Real gap_integral(const IntervalSystem& sys, const Poly<Real>& poly, int gap_index,
                  const NumericConfig& cfg) {
    auto gp = sys.gap(gap_index);
    return interval_poly_integral(sys, poly, gp.lo, gp.hi, cfg);
}

Poly<Real> third_kind_polynomial(const IntervalSystem& sys, const NumericConfig& cfg) {
    const int d = sys.d;
    if (d == 1) return Poly<Real>::constant(Real(1));
    // Monic eta of degree d-1: solve the (d-1)x(d-1) moment system so that
    // every gap integral vanishes.
    Matrix<Real> M(d - 1, d - 1);
    std::vector<Real> rhs(d - 1);
    for (int j = 1; j <= d - 1; ++j) {
        for (int i = 0; i <= d - 2; ++i) {
            std::vector<Real> mono(i + 1, Real(0));
            mono[i] = 1;
            M(j - 1, i) = gap_integral(sys, Poly<Real>(std::move(mono)), j, cfg);
        }
        std::vector<Real> top(d, Real(0));
        top[d - 1] = 1;
        rhs[j - 1] = -gap_integral(sys, Poly<Real>(std::move(top)), j, cfg);
    }
    std::vector<Real> coeffs;
    Real scale = 0;
    for (auto& v : M.a) scale = std::max(scale, abs(v));
    if (!solve_dense(M, rhs, coeffs, scale * pow(Real(10), -(long)(precision_digits10() - 8))))
        throw SingularSystem("third_kind_polynomial: near-singular moment matrix");
    coeffs.push_back(Real(1));
    return Poly<Real>(std::move(coeffs));
}

namespace {

struct ReducedSystem {
    IntervalSystem sys;                 // collapsed gap pairs removed
    std::vector<Real> interior_nodes;   // removed double values, for eta reassembly
};

ReducedSystem reduce_collapsed(const IntervalSystem& sys) {
    ReducedSystem out;
    std::vector<Real> c;
    for (std::size_t i = 0; i < sys.c.size(); ++i) {
        // A collapsed gap shows up as equal consecutive c entries.
        if (i + 1 < sys.c.size() && sys.c[i] == sys.c[i + 1]) {
            out.interior_nodes.push_back(sys.c[i]);
            ++i;
            continue;
        }
        c.push_back(sys.c[i]);
    }
    out.sys.c = std::move(c);
    out.sys.d = static_cast<int>(out.sys.c.size()) / 2;
    return out;
}

} // namespace

FrequencyVector frequency(const ConfocalFamily& family, const CausticSet& caustics,
                          const NumericConfig& cfg) {
    IntervalSystem orig = interval_system(caustics);
    ReducedSystem red = reduce_collapsed(orig);
    const int d = orig.d;
    const int dr = red.sys.d;

    Poly<Real> eta_red = third_kind_polynomial(red.sys, cfg);

    FrequencyVector out;
    out.eta = eta_red;
    for (auto& node : red.interior_nodes)
        out.eta = out.eta * Poly<Real>(std::vector<Real>{-node, Real(1)});

    // One eta root strictly inside each (non-collapsed) gap.
    if (dr >= 2) {
        auto rep = real_roots(eta_red);
        if (!rep.all_real || static_cast<int>(rep.roots.size()) != dr - 1) {
            out.eta_roots_in_gaps = false;
        } else {
            for (int j = 1; j <= dr - 1; ++j) {
                auto gp = red.sys.gap(j);
                if (!(rep.roots[dr - 1 - j] > gp.lo && rep.roots[dr - 1 - j] < gp.hi))
                    out.eta_roots_in_gaps = false;
            }
        }
    }

    // Band masses of the original system. Bands that merged across a removed
    // double node are split there; the half-integrals have one singular
    // endpoint each.
    auto red_roots = hatp_roots(red.sys);
    out.mu.assign(d, Real(0));
    unsigned used = cfg.quadrature_nodes;
    for (int k = 1; k <= d; ++k) {
        auto bd = orig.band(k);
        bool lo_interior = std::find(red.interior_nodes.begin(), red.interior_nodes.end(),
                                     bd.lo) != red.interior_nodes.end();
        bool hi_interior = std::find(red.interior_nodes.begin(), red.interior_nodes.end(),
                                     bd.hi) != red.interior_nodes.end();
        Real val;
        if (!lo_interior && !hi_interior) {
            auto phi = [&](const Real& s) -> Real {
                return eta_red(s) / sqrt(reduced_weight(red_roots, s, bd.lo, bd.hi));
            };
            val = converged_chebyshev(phi, bd.lo, bd.hi, cfg, &used);
        } else if (hi_interior) {
            // Singularity at lo only; the factor (s - hi) is regular here.
            auto g = [&](const Real& t) -> Real {
                return eta_red(t) / sqrt(reduced_weight(red_roots, t, bd.lo, bd.lo));
            };
            val = one_sided_integral(g, bd.lo, bd.hi, /*singular_at_hi=*/false);
        } else {
            auto g = [&](const Real& t) -> Real {
                return eta_red(t) / sqrt(reduced_weight(red_roots, t, bd.hi, bd.hi));
            };
            val = one_sided_integral(g, bd.lo, bd.hi, /*singular_at_hi=*/true);
        }
        out.mu[k - 1] = abs(val) / real_pi();
    }
    out.nodes_used = used;

    out.f.assign(d, Real(0));
    Real acc = 0;
    for (int i = 1; i <= d; ++i) {
        acc += out.mu[d - i]; // cumulative from the leftmost band (band d)
        out.f[i - 1] = acc;
    }
    return out;
}

Real rotation_number(const Real& a, const Real& b, const Real& lambda, const NumericConfig& cfg) {
    if (!(a > b && b > 0)) throw Error("rotation_number: need a > b > 0");
    if (!(lambda < a)) throw Error("rotation_number: need lambda < a");
    Real tiny = pow(Real(10), -(long)(precision_digits10() - 6));
    if (abs(lambda) < tiny * b || abs(lambda - b) < tiny * b)
        throw DegenerateCaustic("rotation_number: lambda at a degenerate value (0 or b)");

    auto absf = [&](const Real& t, const Real& r) { return abs(r - t); };
    // Numerator: integral from 0 to min(b, lambda) (or from lambda to 0 for
    // negative lambda), singular at the inner branch point only.
    Real num;
    {
        Real lo, hi, sing;
        bool at_hi;
        if (lambda > 0) {
            lo = 0;
            hi = std::min(b, lambda);
            sing = hi;
            at_hi = true;
        } else {
            lo = lambda;
            hi = 0;
            sing = lo;
            at_hi = false;
        }
        auto g = [&](const Real& t) -> Real {
            Real prod = 1;
            for (const Real& r : {lambda, b, a})
                if (r != sing) prod *= absf(t, r);
            return 1 / sqrt(prod);
        };
        num = one_sided_integral(g, lo, hi, at_hi);
    }
    // Denominator: integral from max(b, lambda) to a, singular at both ends.
    Real den;
    {
        Real lo = std::max(b, lambda);
        Real hi = a;
        Real other = (lambda > b) ? b : lambda; // the branch point away from [lo, hi]
        auto phi = [&](const Real& s) -> Real { return 1 / sqrt(abs(s - other)); };
        den = converged_chebyshev(phi, lo, hi, cfg);
    }
    return num / (2 * den);
}

InjectivityReport injectivity_probe(const ConfocalFamily& family,
                                    const std::vector<std::vector<Real>>& caustic_grid,
                                    const Real& collision_threshold, const NumericConfig& cfg) {
    InjectivityReport rep;
    for (auto& alphas : caustic_grid) {
        CausticSet cs = classify_caustics(family, alphas);
        rep.values.push_back(frequency(family, cs, cfg));
    }
    const int d = family.dim();
    Real min_dist = -1;
    for (std::size_t i = 0; i < rep.values.size(); ++i) {
        for (std::size_t j = i + 1; j < rep.values.size(); ++j) {
            Real dist = 0;
            for (int k = 0; k < d; ++k) {
                Real diff = rep.values[i].f[k] - rep.values[j].f[k];
                dist += diff * diff;
            }
            dist = sqrt(dist);
            if (min_dist < 0 || dist < min_dist) min_dist = dist;
            if (dist < collision_threshold) {
                ++rep.pairs_below_threshold;
                rep.collisions.emplace_back(i, j);
            }
        }
    }
    rep.min_pairwise_distance = min_dist < 0 ? Real(0) : min_dist;
    return rep;
}

std::optional<std::pair<long, long>> rational_fit(const Real& x, long max_den, const Real& tol) {
    // Continued-fraction convergents of x.
    Real v = x;
    long p0 = 1, q0 = 0, p1 = 0, q1 = 1; // convergents p/q
    for (int it = 0; it < 64; ++it) {
        Real fl = floor(v);
        long ai = static_cast<long>(to_double(fl));
        long p2 = ai * p1 + p0;
        long q2 = ai * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        if (abs(x - Real(p1) / Real(q1)) <= tol) return std::make_pair(p1, q1);
        Real frac = v - fl;
        if (frac == 0) break;
        v = 1 / frac;
    }
    if (q1 != 0 && abs(x - Real(p1) / Real(q1)) <= tol) return std::make_pair(p1, q1);
    return std::nullopt;
}

} // namespace cfb
