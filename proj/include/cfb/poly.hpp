#ifndef CFB_POLY_HPP
#define CFB_POLY_HPP

#include "cfb/scalar.hpp"
#include "cfb/errors.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace cfb {

/// Dense univariate polynomial, coefficients ascending by degree.
template <class T>
struct Poly {
    std::vector<T> c;

    Poly() = default;
    explicit Poly(std::vector<T> coeffs) : c(std::move(coeffs)) { trim(); }
    static Poly constant(const T& v) { return Poly(std::vector<T>{v}); }
    static Poly x() { return Poly(std::vector<T>{T(0), T(1)}); }

    /// Monic product of (x - r) over the given roots.
    static Poly from_roots(const std::vector<T>& roots) {
        Poly p = constant(T(1));
        for (const auto& r : roots) p = p * Poly(std::vector<T>{-r, T(1)});
        return p;
    }

    void trim() {
        while (c.size() > 1 && field_traits<T>::is_zero(c.back())) c.pop_back();
        if (c.empty()) c.push_back(T(0));
    }

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.size() == 1 && field_traits<T>::is_zero(c[0]); }
    const T& operator[](std::size_t i) const { return c[i]; }
    T coeff(std::size_t i) const { return i < c.size() ? c[i] : T(0); }
    const T& leading() const { return c.back(); }

    T operator()(const T& x) const {
        T acc = c.back();
        for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * x + c[i];
        return acc;
    }

    Poly derivative() const {
        if (degree() == 0) return constant(T(0));
        std::vector<T> d(c.size() - 1);
        for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * T(static_cast<int>(i));
        return Poly(std::move(d));
    }

    /// Coefficient reversal: x^deg * p(1/x), padded to the given degree.
    Poly reversed(int deg) const {
        std::vector<T> r(static_cast<std::size_t>(deg) + 1, T(0));
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (static_cast<int>(i) <= deg) r[deg - i] = c[i];
        }
        return Poly(std::move(r));
    }

    Poly operator-() const {
        std::vector<T> r(c);
        for (auto& v : r) v = -v;
        return Poly(std::move(r));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<T> r(std::max(a.c.size(), b.c.size()), T(0));
        for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (std::size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        std::vector<T> r(a.c.size() + b.c.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
        return Poly(std::move(r));
    }
    friend Poly operator*(const T& s, const Poly& a) {
        std::vector<T> r(a.c);
        for (auto& v : r) v *= s;
        return Poly(std::move(r));
    }
    Poly& operator*=(const T& s) {
        for (auto& v : c) v *= s;
        trim();
        return *this;
    }

    /// Synthetic division by (x - r); remainder returned separately.
    std::pair<Poly, T> divide_linear(const T& r) const {
        std::vector<T> q(c.size() > 1 ? c.size() - 1 : 1, T(0));
        T carry = T(0);
        for (std::size_t i = c.size(); i-- > 0;) {
            T v = c[i] + carry;
            if (i == 0) return {Poly(std::move(q)), v};
            q[i - 1] = v;
            carry = v * r;
        }
        return {Poly(std::move(q)), carry};
    }

    T max_abs_coeff() const {
        T m = field_traits<T>::abs(c[0]);
        for (const auto& v : c) m = std::max(m, field_traits<T>::abs(v));
        return m;
    }
};

template <class T>
Poly<T> compose_affine(const Poly<T>& p, const T& scale, const T& shift) {
    // p(scale*x + shift) by Horner over polynomials
    Poly<T> lin(std::vector<T>{shift, scale});
    Poly<T> acc = Poly<T>::constant(p.c.back());
    for (std::size_t i = p.c.size() - 1; i-- > 0;) acc = acc * lin + Poly<T>::constant(p.c[i]);
    return acc;
}

template <class T>
Poly<Real> to_real_poly(const Poly<T>& p) {
    std::vector<Real> r(p.c.size());
    for (std::size_t i = 0; i < p.c.size(); ++i) {
        if constexpr (std::is_same_v<T, Rational>) r[i] = to_real(p.c[i]);
        else r[i] = Real(p.c[i]);
    }
    return Poly<Real>(std::move(r));
}

struct RootReport {
    std::vector<Real> roots;    // certified real roots, ascending
    double max_residual_imag;   // largest |imag| among companion eigenvalues not matched to a real root
    bool all_real;
};

/// All real roots of p, companion-matrix seeds polished by Newton at working
/// precision (bisection fallback when a sign-change bracket is found).
RootReport real_roots(const Poly<Real>& p);

/// Newton refinement of a simple root near x0; returns nullopt if it fails to settle.
std::optional<Real> polish_root(const Poly<Real>& p, Real x0, int max_iter = 80);

/// Chebyshev polynomial of the first kind, exact integer coefficients.
Poly<Rational> chebyshev_t(int n);

} // namespace cfb

#endif
