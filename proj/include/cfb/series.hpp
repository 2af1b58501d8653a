#ifndef CFB_SERIES_HPP
#define CFB_SERIES_HPP

#include "cfb/errors.hpp"
#include "cfb/linalg.hpp"
#include "cfb/poly.hpp"
#include "cfb/scalar.hpp"

#include <optional>
#include <sstream>
#include <vector>

namespace cfb {

/// Truncated Taylor series of sqrt(P)/divisor about 0, kept in normalized
/// form: coeff[0] == 1 and the constant factor sqrt(P(0))/divisor(0) is
/// recorded through its square, so rational inputs stay rational.
template <class T>
struct PowerSeries {
    std::vector<T> coeff; // normalized, coeff[0] == 1
    T scale_sq = T(1);    // (sqrt(P(0))/divisor(0))^2 = P(0)/divisor(0)^2

    int order() const { return static_cast<int>(coeff.size()) - 1; }
    const T& operator[](std::size_t k) const { return coeff[k]; }

    /// Coefficients of the series itself, constant factor multiplied back in.
    std::vector<Real> denormalized() const {
        Real s = sqrt(to_real_any(scale_sq));
        std::vector<Real> out(coeff.size());
        for (std::size_t k = 0; k < coeff.size(); ++k) out[k] = s * to_real_any(coeff[k]);
        return out;
    }

private:
    static Real to_real_any(const T& v) {
        if constexpr (std::is_same_v<T, Rational>) return to_real(v);
        else return Real(v);
    }
};

namespace detail {

template <class T>
std::vector<T> series_mul(const std::vector<T>& a, const std::vector<T>& b, int order) {
    std::vector<T> r(order + 1, T(0));
    for (int i = 0; i <= order && i < (int)a.size(); ++i) {
        if (field_traits<T>::is_zero(a[i])) continue;
        for (int j = 0; j + i <= order && j < (int)b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

/// 1/b as a series, requires b[0] != 0.
template <class T>
std::vector<T> series_inv(const std::vector<T>& b, int order) {
    std::vector<T> r(order + 1, T(0));
    r[0] = T(1) / b[0];
    for (int n = 1; n <= order; ++n) {
        T s(0);
        for (int k = 1; k <= n && k < (int)b.size(); ++k) s += b[k] * r[n - k];
        r[n] = -s / b[0];
    }
    return r;
}

} // namespace detail

/// Taylor coefficients of sqrt(P(x))/divisor(x) about x = 0 up to the given
/// order, by the convolution recurrence on the normalized polynomial.
template <class T>
PowerSeries<T> sqrt_series(const Poly<T>& P, int order,
                           const std::optional<Poly<T>>& divisor = std::nullopt) {
    if (order < 1) throw InsufficientOrder("sqrt_series: order must be >= 1");
    const T p0 = P.coeff(0);
    if (!(p0 > 0)) throw NonPositiveConstantTerm("sqrt_series: P(0) <= 0");

    // g = sqrt(P / P(0)): g0 = 1, g_n = (ptilde_n - sum_{k=1}^{n-1} g_k g_{n-k}) / 2.
    std::vector<T> g(order + 1, T(0));
    g[0] = T(1);
    for (int n = 1; n <= order; ++n) {
        T pn = (n <= P.degree()) ? P.coeff(n) / p0 : T(0);
        T s(0);
        for (int k = 1; k < n; ++k) s += g[k] * g[n - k];
        g[n] = (pn - s) / 2;
    }

    PowerSeries<T> out;
    out.scale_sq = p0;
    if (divisor) {
        const T d0 = divisor->coeff(0);
        if (field_traits<T>::is_zero(d0))
            throw NonPositiveConstantTerm("sqrt_series: divisor(0) == 0");
        std::vector<T> dn(divisor->c.begin(), divisor->c.end());
        for (auto& v : dn) v /= d0;
        out.coeff = detail::series_mul(g, detail::series_inv(dn, order), order);
        out.scale_sq = p0 / (d0 * d0);
    } else {
        out.coeff = std::move(g);
    }
    return out;
}

/// The C(m,d) Hankel window: entry (i,j) = C_{d+1+i+j}, shape (m-1) x (m-d+1).
template <class T>
Matrix<T> hankel_window(const PowerSeries<T>& s, int m, int d) {
    if (m < d) throw InsufficientOrder("hankel_window: need m >= d");
    if (s.order() < 2 * m - 1)
        throw InsufficientOrder("hankel_window: series order must be >= 2m-1");
    std::size_t rows = static_cast<std::size_t>(m - 1);
    std::size_t cols = static_cast<std::size_t>(m - d + 1);
    Matrix<T> h(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) h(i, j) = s.coeff[d + 1 + i + j];
    return h;
}

struct HankelResult {
    int rank = 0;
    bool satisfied = false;
    int rows = 0, cols = 0;
    std::vector<Real> sigma; // float mode only
};

/// Rank test of the C(m,d) window; satisfied when rank < m-d+1.
HankelResult hankel_condition(const PowerSeries<Real>& s, int m, int d,
                              const NumericConfig& cfg = {});
HankelResult hankel_condition(const PowerSeries<Rational>& s, int m, int d);

template <class T>
struct PadePair {
    Poly<T> p; // degree <= m
    Poly<T> q; // degree <= m-d
};

/// Right-null-vector construction of (p, q) with p + q * series = O(x^{2m}),
/// in the normalized series scale. Returns nullopt when the window has full
/// column rank.
std::optional<PadePair<Real>> pade_sqrt(const PowerSeries<Real>& s, int m, int d,
                                        const NumericConfig& cfg = {},
                                        bool* ill_conditioned = nullptr);
std::optional<PadePair<Rational>> pade_sqrt(const PowerSeries<Rational>& s, int m, int d,
                                            int* nullity = nullptr);

/// Hadamard-Hankel determinant H_{k,l} of the series (diagnostic; Pade-table
/// normality probe). Uses denormalized coefficients.
Real hadamard_hankel(const PowerSeries<Real>& s, int k, int l);

/// Square Hankel determinant |C_start ... | of the given size on normalized
/// coefficients (planar Cayley determinants).
Real hankel_det(const PowerSeries<Real>& s, int start, int size);

} // namespace cfb

#endif
