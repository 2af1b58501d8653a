#include "cfb/billiard.hpp"

#include "cfb/linalg.hpp"
#include "cfb/poly.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace cfb {

namespace {

Real dot(const Vec& a, const Vec& b) {
    Real s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Real norm(const Vec& a) { return sqrt(dot(a, a)); }

Real boundary_residual(const ConfocalFamily& family, const Vec& x) {
    Real s = -1;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * x[i] / family.a[i];
    return s;
}

void normalize(Vec& v) {
    Real n = norm(v);
    for (auto& vi : v) vi /= n;
}

} // namespace

Vec reflect(const ConfocalFamily& family, const Vec& point, const Vec& dir,
            const Real& boundary_tol) {
    if (abs(boundary_residual(family, point)) > boundary_tol)
        throw OffBoundary("reflect: point is not on the boundary ellipsoid");
    Vec nrm(point.size());
    for (std::size_t i = 0; i < point.size(); ++i) nrm[i] = point[i] / family.a[i];
    normalize(nrm);
    Real vn = dot(dir, nrm);
    Vec out(dir);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= 2 * vn * nrm[i];
    return out;
}

Vec next_impact(const ConfocalFamily& family, const Vec& point, const Vec& dir) {
    Real A = 0, B = 0;
    for (std::size_t i = 0; i < point.size(); ++i) {
        A += dir[i] * dir[i] / family.a[i];
        B += point[i] * dir[i] / family.a[i];
    }
    Real t = -2 * B / A;
    if (t < Real(1e-10) * sqrt(family.a.back()))
        throw TangentLine("next_impact: chord length vanishes (grazing start)");
    Vec x(point.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = point[i] + t * dir[i];
    // One Newton step along the line cleans the roundoff of the quadratic.
    Real f = boundary_residual(family, x);
    Real df = 0;
    for (std::size_t i = 0; i < x.size(); ++i) df += 2 * x[i] * dir[i] / family.a[i];
    if (df != 0) {
        t -= f / df;
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = point[i] + t * dir[i];
    }
    return x;
}

namespace {

// Tangency polynomial T(lambda) = sum_i v_i^2 prod_{k != i}(a_k - lambda)
//                               - sum_{i<j} L_ij^2 prod_{k != i,j}(a_k - lambda),
// L_ij = x_i v_j - x_j v_i. Its d-1 roots are the caustic parameters.
Poly<Real> tangency_poly(const ConfocalFamily& family, const Vec& x, const Vec& v) {
    const int d = family.dim();
    Poly<Real> T = Poly<Real>::constant(Real(0));
    for (int i = 0; i < d; ++i) {
        Poly<Real> part = Poly<Real>::constant(v[i] * v[i]);
        for (int k = 0; k < d; ++k)
            if (k != i) part = part * Poly<Real>(std::vector<Real>{family.a[k], Real(-1)});
        T = T + part;
    }
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            Real L = x[i] * v[j] - x[j] * v[i];
            Poly<Real> part = Poly<Real>::constant(-L * L);
            for (int k = 0; k < d; ++k)
                if (k != i && k != j)
                    part = part * Poly<Real>(std::vector<Real>{family.a[k], Real(-1)});
            T = T + part;
        }
    }
    return T;
}

} // namespace

std::vector<Real> line_caustics(const ConfocalFamily& family, const Vec& point, const Vec& dir) {
    Vec v(dir);
    normalize(v);
    Poly<Real> T = tangency_poly(family, point, v);
    if (T.degree() != family.dim() - 1)
        throw DegenerateLine("line_caustics: tangency polynomial degenerated");
    auto rep = real_roots(T);
    if (!rep.all_real || static_cast<int>(rep.roots.size()) != family.dim() - 1)
        throw DegenerateLine("line_caustics: tangency roots not all real");
    for (auto& r : rep.roots)
        for (auto& ak : family.a)
            if (abs(r - ak) < Real(1e-12) * ak)
                throw DegenerateLine("line_caustics: caustic degenerates to a focal quadric");
    return rep.roots;
}

Launch launch_from_caustics(const ConfocalFamily& family, const CausticSet& caustics,
                            std::uint64_t seed, const NumericConfig& cfg) {
    const int d = family.dim();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.12, 0.88);
    std::normal_distribution<double> gauss(0.0, 1.0);

    // Window endpoints for the Jacobi coordinates: bext = (0, b_1, ..., b_{2d-1}).
    std::vector<Real> bext;
    bext.push_back(Real(0));
    for (auto& bk : caustics.b) bext.push_back(bk);

    // Target polynomial (-1)^{d-1} prod(lambda - alpha_j), the leading
    // coefficient matching the tangency polynomial of a unit direction.
    std::vector<Real> ar(caustics.alpha);
    Poly<Real> target = Poly<Real>::from_roots(ar);
    if ((d - 1) % 2 == 1) target = -target;

    const Real newton_tol = pow(Real(10), -(long)(precision_digits10() * 4 / 5));

    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<Real> lam(d);
        lam[0] = 0;
        for (int j = 1; j < d; ++j) {
            const Real& lo = bext[2 * j];
            const Real& hi = bext[2 * j + 1];
            lam[j] = (lo == hi) ? lo : lo + Real(unif(rng)) * (hi - lo);
        }
        std::vector<int> signs(d, 1);
        Vec P;
        try {
            P = jacobi_to_cartesian(family, lam, signs);
        } catch (const Error&) {
            continue;
        }

        for (int inner = 0; inner < 8; ++inner) {
            Vec v(d);
            for (auto& vi : v) vi = Real(gauss(rng));
            normalize(v);

            bool converged = false;
            for (int it = 0; it < 80; ++it) {
                Poly<Real> T = tangency_poly(family, P, v);
                std::vector<Real> F(d);
                for (int r = 0; r < d - 1; ++r) F[r] = T.coeff(r) - target.coeff(r);
                F[d - 1] = dot(v, v) - 1;

                Real fn = 0;
                for (auto& fr : F) fn = std::max(fn, abs(fr));
                if (fn < newton_tol) {
                    converged = true;
                    break;
                }

                // Jacobian: dT/dv_m = 2 v_m A_m - 2 sum_{i != m} L_im B_im x_i-type terms.
                Matrix<Real> J(d, d);
                for (int mcol = 0; mcol < d; ++mcol) {
                    Poly<Real> dT = Poly<Real>::constant(Real(0));
                    {
                        Poly<Real> part = Poly<Real>::constant(2 * v[mcol]);
                        for (int k = 0; k < d; ++k)
                            if (k != mcol)
                                part = part * Poly<Real>(std::vector<Real>{family.a[k], Real(-1)});
                        dT = dT + part;
                    }
                    for (int i = 0; i < d; ++i) {
                        if (i == mcol) continue;
                        Real L = P[i] * v[mcol] - P[mcol] * v[i];
                        Poly<Real> part = Poly<Real>::constant(-2 * L * P[i]);
                        for (int k = 0; k < d; ++k)
                            if (k != i && k != mcol)
                                part = part * Poly<Real>(std::vector<Real>{family.a[k], Real(-1)});
                        dT = dT + part;
                    }
                    for (int r = 0; r < d - 1; ++r) J(r, mcol) = dT.coeff(r);
                    J(d - 1, mcol) = 2 * v[mcol];
                }
                std::vector<Real> step;
                if (!solve_dense(J, F, step, Real(0))) break;
                Real stepnorm = 0;
                for (int i = 0; i < d; ++i) {
                    v[i] -= step[i];
                    stepnorm += step[i] * step[i];
                }
                if (!(stepnorm < Real(1e12))) break;
            }
            if (!converged) continue;

            normalize(v);
            // Round-trip verification against the requested caustics.
            std::vector<Real> got;
            try {
                got = line_caustics(family, P, v);
            } catch (const Error&) {
                continue;
            }
            Real err = 0;
            for (int j = 0; j < d - 1; ++j) err = std::max(err, abs(got[j] - ar[j]));
            if (err > Real(1e-9) * family.a.back()) continue;

            // Point inward.
            Vec nrm(d);
            for (int i = 0; i < d; ++i) nrm[i] = P[i] / family.a[i];
            if (dot(v, nrm) > 0)
                for (auto& vi : v) vi = -vi;
            return Launch{std::move(P), std::move(v)};
        }
    }
    throw NoTangentDirection(
        "launch_from_caustics: no tangent direction found from the sampled boundary points");
}

Trajectory trace(const ConfocalFamily& family, const Vec& point, const Vec& dir, int n_max,
                 const Real& closure_tol) {
    Trajectory tr;
    Vec x(point);
    Vec v(dir);
    normalize(v);
    tr.impacts.push_back(x);

    std::vector<Real> ref_caustics;
    for (int bounce = 0; bounce < n_max; ++bounce) {
        auto ca = line_caustics(family, x, v);
        if (bounce == 0) {
            ref_caustics = ca;
        } else {
            for (std::size_t j = 0; j < ca.size(); ++j)
                tr.chasles_spread = std::max(tr.chasles_spread, abs(ca[j] - ref_caustics[j]));
        }
        tr.directions.push_back(v);
        tr.caustic_params.push_back(ca);

        x = next_impact(family, x, v);
        v = reflect(family, x, v);
        tr.impacts.push_back(x);

        Real err = 0;
        for (std::size_t i = 0; i < x.size(); ++i) err += (x[i] - point[i]) * (x[i] - point[i]);
        err = sqrt(err);
        {
            Vec v0(dir);
            normalize(v0);
            Real dverr = 0;
            for (std::size_t i = 0; i < v.size(); ++i) dverr += (v[i] - v0[i]) * (v[i] - v0[i]);
            err += sqrt(dverr);
        }
        if (err < closure_tol) {
            tr.closed = true;
            tr.closure_error = err;
            tr.period = bounce + 1;
            break;
        }
    }
    return tr;
}

std::vector<long> count_winding(const Trajectory& traj, const CausticSet& caustics) {
    if (!traj.closed) throw Error("count_winding: trajectory is not closed");
    const int d = caustics.d;
    const int n = traj.period;

    // Extract the axis values back from the tagged b-sequence.
    std::vector<Real> axis_vals;
    for (std::size_t i = 0; i < caustics.b.size(); ++i)
        if (caustics.b_is_axis[i]) axis_vals.push_back(caustics.b[i]);
    ConfocalFamily family(axis_vals);

    std::vector<Real> bext;
    bext.push_back(Real(0));
    for (auto& bk : caustics.b) bext.push_back(bk);

    std::vector<long> lower(d, 0), upper(d, 0);
    lower[0] = n;
    std::vector<bool> collapsed(d, false);
    for (int j = 1; j < d; ++j) collapsed[j] = (bext[2 * j] == bext[2 * j + 1]);

    const Real amb_rel = Real(1e-12);

    // One event record per b-entry: either a hyperplane crossing (axis value)
    // or a caustic tangency, attributed to the window having that endpoint.
    for (int seg = 0; seg < n; ++seg) {
        const Vec& P = traj.impacts[seg];
        const Vec& v = traj.directions[seg];
        Real t_end = 0;
        for (int i = 0; i < d; ++i) {
            Real diff = traj.impacts[seg + 1][i] - P[i];
            t_end += diff * diff;
        }
        t_end = sqrt(t_end);

        auto record = [&](std::size_t bpos_1based, const Real& tstar) {
            if (tstar <= 0 || tstar >= t_end) return;
            if (tstar < amb_rel * t_end || tstar > t_end * (1 - amb_rel)) {
                std::ostringstream os;
                os << "count_winding: event at t = " << to_double(tstar)
                   << " lies within tolerance of an impact (segment " << seg << ")";
                throw AmbiguousEvent(os.str());
            }
            std::size_t idx = bpos_1based; // position in bext
            if (idx % 2 == 0) ++lower[idx / 2];
            else ++upper[(idx - 1) / 2];
        };

        for (std::size_t pos = 1; pos < bext.size(); ++pos) {
            int window = static_cast<int>(pos / 2);
            if (window < d && collapsed[window] && !caustics.b_is_axis[pos - 1]) continue;
            if (caustics.b_is_axis[pos - 1]) {
                // Hyperplane crossing x_k = 0 for the axis a_k = bext[pos].
                int k = 0;
                while (family.a[k] != bext[pos]) ++k;
                if (abs(v[k]) == 0) continue;
                record(pos, -P[k] / v[k]);
            } else {
                // Tangency with the caustic Q_alpha, alpha = bext[pos].
                const Real& al = bext[pos];
                Real A = 0, B = 0, C = -1, scaleq = 0;
                for (int i = 0; i < d; ++i) {
                    Real den = family.a[i] - al;
                    A += v[i] * v[i] / den;
                    B += P[i] * v[i] / den;
                    C += P[i] * P[i] / den;
                    scaleq += abs(P[i] * P[i] / den);
                }
                Real contain = abs(A) * t_end * t_end + abs(B) * t_end + abs(C);
                if (contain < Real(1e-25) * (scaleq + 1)) continue; // segment lies on the quadric
                if (abs(A) == 0) continue;
                record(pos, -B / A);
            }
        }
    }

    std::vector<long> m(d, 0);
    m[0] = n;
    for (int j = 1; j < d; ++j) {
        if (collapsed[j]) continue;
        if (lower[j] != upper[j]) {
            std::ostringstream os;
            os << "count_winding: lower/upper touch counts disagree for window " << j << " ("
               << lower[j] << " vs " << upper[j] << ")";
            throw AmbiguousEvent(os.str());
        }
        m[j] = lower[j];
    }
    for (int j = 1; j < d; ++j) {
        if (!collapsed[j]) continue;
        long next = (j + 1 < d) ? m[j + 1] : 0;
        if (j + 1 < d && collapsed[j + 1])
            throw AmbiguousEvent("count_winding: adjacent collapsed windows");
        long sum = m[j - 1] + next;
        if (sum % 2 != 0)
            throw AmbiguousEvent("count_winding: collapsed window neighbours have odd sum");
        m[j] = sum / 2;
    }
    return m;
}

} // namespace cfb
