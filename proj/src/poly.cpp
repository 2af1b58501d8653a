#include "cfb/poly.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>

namespace cfb {

std::optional<Real> polish_root(const Poly<Real>& p, Real x0, int max_iter) {
    const Poly<Real> dp = p.derivative();
    Real x = x0;
    Real last_step = 0;
    for (int it = 0; it < max_iter; ++it) {
        Real f = p(x);
        Real df = dp(x);
        if (df == 0) return std::nullopt;
        Real step = f / df;
        x -= step;
        Real astep = abs(step);
        if (it > 0 && astep <= abs(x) * pow(Real(2), -(long)(precision_digits10() * 3.2) + 8) + pow(Real(10), -(long)precision_digits10()))
            return x;
        if (it > 4 && last_step != 0 && astep > last_step * 4) return std::nullopt;
        last_step = astep;
    }
    return x;
}

static std::vector<std::complex<double>> companion_eigenvalues(const Poly<Real>& p) {
    int n = p.degree();
    if (n < 1) return {};
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
    double lead = to_double(p.c[n]);
    for (int i = 0; i < n; ++i) {
        C(i, n - 1) = -to_double(p.c[i]) / lead;
        if (i > 0) C(i, i - 1) = 1.0;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(C, /*computeEigenvectors=*/false);
    std::vector<std::complex<double>> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = es.eigenvalues()(i);
    return ev;
}

RootReport real_roots(const Poly<Real>& p) {
    RootReport rep;
    rep.max_residual_imag = 0.0;
    rep.all_real = true;
    int n = p.degree();
    if (n < 1) {
        rep.all_real = !p.is_zero();
        return rep;
    }

    auto ev = companion_eigenvalues(p);

    // Scale for deciding whether a double-precision eigenvalue looks real.
    double scale = 0.0;
    for (auto& z : ev) scale = std::max(scale, std::abs(z));
    if (scale == 0.0) scale = 1.0;

    const Poly<Real> dp = p.derivative();
    for (auto& z : ev) {
        if (std::abs(z.imag()) > 1e-6 * scale) {
            rep.max_residual_imag = std::max(rep.max_residual_imag, std::abs(z.imag()));
            rep.all_real = false;
            continue;
        }
        auto r = polish_root(p, Real(z.real()));
        if (!r) {
            // Bisection rescue: scan a small bracket around the seed.
            Real lo = Real(z.real()) - Real(1e-4) * Real(scale);
            Real hi = Real(z.real()) + Real(1e-4) * Real(scale);
            if (p(lo) * p(hi) < 0) {
                for (int it = 0; it < 8 + (int)(precision_digits10() * 3.33); ++it) {
                    Real mid = (lo + hi) / 2;
                    if (p(lo) * p(mid) <= 0) hi = mid; else lo = mid;
                }
                r = (lo + hi) / 2;
            }
        }
        if (r) {
            rep.roots.push_back(*r);
        } else {
            rep.max_residual_imag = std::max(rep.max_residual_imag, std::abs(z.imag()) + 1e-300);
            rep.all_real = false;
        }
    }
    std::sort(rep.roots.begin(), rep.roots.end());
    return rep;
}

Poly<Rational> chebyshev_t(int n) {
    Poly<Rational> t0 = Poly<Rational>::constant(Rational(1));
    if (n == 0) return t0;
    Poly<Rational> t1(std::vector<Rational>{Rational(0), Rational(1)});
    Poly<Rational> two_x(std::vector<Rational>{Rational(0), Rational(2)});
    for (int k = 2; k <= n; ++k) {
        Poly<Rational> t2 = two_x * t1 - t0;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    return t1;
}

} // namespace cfb
