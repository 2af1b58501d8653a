#include "cfb/confocal.hpp"

#include <algorithm>
#include <sstream>

namespace cfb {

ConfocalFamily::ConfocalFamily(std::vector<Real> axes) : a(std::move(axes)) {
    if (a.size() < 2) throw Error("ConfocalFamily: dimension must be >= 2");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!(a[i] > 0)) throw Error("ConfocalFamily: semi-axes squared must be positive");
        if (i > 0 && !(a[i - 1] < a[i]))
            throw Error("ConfocalFamily: semi-axes squared must be strictly ascending");
    }
}

CausticSet classify_caustics(const ConfocalFamily& family, std::vector<Real> alpha,
                             const Real& degeneracy_rel_tol) {
    const int d = family.dim();
    if (static_cast<int>(alpha.size()) != d - 1)
        throw Error("classify_caustics: expected d-1 caustic parameters");
    std::sort(alpha.begin(), alpha.end());

    CausticSet cs;
    cs.d = d;
    for (auto& al : alpha) {
        if (!(al > 0)) throw DegenerateCaustic("caustic parameter must be positive");
        if (al > family.a.back())
            throw DegenerateCaustic("caustic parameter exceeds a_d");
        for (auto& ai : family.a)
            if (abs(al - ai) < degeneracy_rel_tol * ai)
                throw DegenerateCaustic("caustic parameter coincides with a semi-axis value");
        int sheets = 0;
        for (auto& ai : family.a)
            if (al > ai) ++sheets;
        cs.types.push_back({sheets});
    }
    // Stable merge, axes inserted after equal caustic values never occur
    // (degeneracy already rejected); equal caustic pairs stay adjacent.
    struct Tagged {
        Real v;
        bool axis;
    };
    std::vector<Tagged> merged;
    for (auto& al : alpha) merged.push_back({al, false});
    for (auto& ai : family.a) merged.push_back({ai, true});
    std::stable_sort(merged.begin(), merged.end(),
                     [](const Tagged& x, const Tagged& y) { return x.v < y.v; });
    for (auto& t : merged) {
        cs.b.push_back(t.v);
        cs.b_is_axis.push_back(t.axis);
    }
    cs.alpha = std::move(alpha);

    // Audin interleaving: alpha_j in {b_{2j-1}, b_{2j}} (1-based).
    {
        std::vector<bool> used(cs.b.size(), false);
        for (int j = 1; j <= d - 1; ++j) {
            const Real& aj = cs.alpha[j - 1];
            bool ok = false;
            for (int k : {2 * j - 2, 2 * j - 1}) { // 0-based positions of b_{2j-1}, b_{2j}
                if (!used[k] && !cs.b_is_axis[k] && cs.b[k] == aj) {
                    used[k] = true;
                    ok = true;
                    break;
                }
            }
            if (!ok) {
                std::ostringstream os;
                os << "caustic interleaving violated for alpha_" << j;
                throw AudinViolation(os.str());
            }
        }
    }
    return cs;
}

JacobiPoint jacobi_coordinates(const ConfocalFamily& family, const Vec& x) {
    const int d = family.dim();
    if (static_cast<int>(x.size()) != d)
        throw Error("jacobi_coordinates: dimension mismatch");
    bool all_zero = true;
    for (auto& xi : x)
        if (xi != 0) all_zero = false;
    if (all_zero) throw DegeneratePoint("jacobi_coordinates: the origin is excluded");

    // f(lambda) = sum_i x_i^2 prod_{k != i} (a_k - lambda) - prod_k (a_k - lambda)
    Poly<Real> f = Poly<Real>::constant(Real(0));
    Poly<Real> full = Poly<Real>::constant(Real(1));
    for (auto& ak : family.a) full = full * Poly<Real>(std::vector<Real>{ak, Real(-1)});
    for (int i = 0; i < d; ++i) {
        if (x[i] == 0) continue;
        Poly<Real> part = Poly<Real>::constant(x[i] * x[i]);
        for (int k = 0; k < d; ++k)
            if (k != i) part = part * Poly<Real>(std::vector<Real>{family.a[k], Real(-1)});
        f = f + part;
    }
    f = f - full;
    if (f.degree() != d)
        throw DegeneratePoint("jacobi_coordinates: defining polynomial degenerated");

    auto rep = real_roots(f);
    if (!rep.all_real || static_cast<int>(rep.roots.size()) != d)
        throw DegeneratePoint("jacobi_coordinates: repeated or non-real coordinates");
    for (std::size_t i = 0; i + 1 < rep.roots.size(); ++i) {
        Real sep = abs(rep.roots[i + 1] - rep.roots[i]);
        if (sep < Real(1e-13) * family.a.back())
            throw DegeneratePoint("jacobi_coordinates: coordinates collide (umbilic-type point)");
    }
    return JacobiPoint{std::move(rep.roots)};
}

Vec jacobi_to_cartesian(const ConfocalFamily& family, const std::vector<Real>& lambda,
                        const std::vector<int>& signs) {
    const int d = family.dim();
    if (static_cast<int>(lambda.size()) != d || static_cast<int>(signs.size()) != d)
        throw Error("jacobi_to_cartesian: dimension mismatch");
    Vec x(d);
    for (int i = 0; i < d; ++i) {
        Real num = 1;
        for (int j = 0; j < d; ++j) num *= family.a[i] - lambda[j];
        Real den = 1;
        for (int k = 0; k < d; ++k)
            if (k != i) den *= family.a[k] - family.a[i];
        Real sq = num / den; // x_i^2 = -prod(a_i - lambda_j)/prod_{k!=i}(a_k - a_i)
        if (sq < 0) {
            if (sq < Real(-1e-30) * family.a.back())
                throw Error("jacobi_to_cartesian: coordinates outside admissible box");
            sq = 0;
        }
        x[i] = Real(signs[i] >= 0 ? 1 : -1) * sqrt(sq);
    }
    return x;
}

IntervalSystem IntervalSystem::from_b_values(const std::vector<Real>& b) {
    if (b.empty() || b.size() % 2 == 0)
        throw Error("IntervalSystem: need an odd count 2d-1 of b-values");
    IntervalSystem sys;
    sys.d = static_cast<int>(b.size() + 1) / 2;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (!(b[i] > 0)) throw Error("IntervalSystem: b-values must be positive");
        if (i > 0 && b[i] < b[i - 1]) throw Error("IntervalSystem: b-values must ascend");
        sys.c.push_back(1 / b[i]);
    }
    std::reverse(sys.c.begin(), sys.c.end());
    sys.c.push_back(Real(0));
    return sys;
}

std::vector<Real> IntervalSystem::b_values() const {
    std::vector<Real> b;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) b.push_back(1 / c[i]);
    std::reverse(b.begin(), b.end());
    return b;
}

IntervalSystem interval_system(const CausticSet& caustics) {
    return IntervalSystem::from_b_values(caustics.b);
}

Poly<Real> pol_from_b(const std::vector<Real>& b) {
    Poly<Real> p = Poly<Real>::constant(Real(1));
    for (auto& bk : b) p = p * Poly<Real>(std::vector<Real>{bk, Real(-1)});
    return p;
}

} // namespace cfb
