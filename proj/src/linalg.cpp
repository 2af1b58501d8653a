#include "cfb/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace cfb {

SvdResult jacobi_svd(const Matrix<Real>& m_in) {
    // Pad with zero rows so the matrix is at least square; right singular
    // vectors and singular values are unchanged.
    std::size_t rows = std::max(m_in.rows, m_in.cols);
    std::size_t cols = m_in.cols;
    Matrix<Real> A(rows, cols);
    for (std::size_t i = 0; i < m_in.rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) A(i, j) = m_in(i, j);

    Matrix<Real> V(cols, cols);
    for (std::size_t j = 0; j < cols; ++j) V(j, j) = 1;

    const Real eps = pow(Real(2), -(long)(precision_digits10() * 3.33) + 6);
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < cols; ++p) {
            for (std::size_t q = p + 1; q < cols; ++q) {
                Real app = 0, aqq = 0, apq = 0;
                for (std::size_t i = 0; i < rows; ++i) {
                    app += A(i, p) * A(i, p);
                    aqq += A(i, q) * A(i, q);
                    apq += A(i, p) * A(i, q);
                }
                if (abs(apq) <= eps * sqrt(app * aqq) || apq == 0) continue;
                rotated = true;
                Real tau = (aqq - app) / (2 * apq);
                Real t = (tau >= 0 ? Real(1) : Real(-1)) / (abs(tau) + sqrt(1 + tau * tau));
                Real cs = 1 / sqrt(1 + t * t);
                Real sn = cs * t;
                for (std::size_t i = 0; i < rows; ++i) {
                    Real aip = A(i, p), aiq = A(i, q);
                    A(i, p) = cs * aip - sn * aiq;
                    A(i, q) = sn * aip + cs * aiq;
                }
                for (std::size_t i = 0; i < cols; ++i) {
                    Real vip = V(i, p), viq = V(i, q);
                    V(i, p) = cs * vip - sn * viq;
                    V(i, q) = sn * vip + cs * viq;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<std::pair<Real, std::size_t>> order(cols);
    for (std::size_t j = 0; j < cols; ++j) {
        Real s = 0;
        for (std::size_t i = 0; i < rows; ++i) s += A(i, j) * A(i, j);
        order[j] = {sqrt(s), j};
    }
    std::sort(order.begin(), order.end(),
              [](const auto& x, const auto& y) { return x.first > y.first; });

    SvdResult res;
    res.sigma.reserve(cols);
    res.right.reserve(cols);
    for (auto& [s, j] : order) {
        res.sigma.push_back(s);
        std::vector<Real> v(cols);
        for (std::size_t i = 0; i < cols; ++i) v[i] = V(i, j);
        res.right.push_back(std::move(v));
    }
    return res;
}

ExactKernel rational_kernel(const Matrix<Rational>& m) {
    // Clear denominators row-wise (does not change rank or kernel).
    std::size_t rows = m.rows, cols = m.cols;
    Matrix<Integer> A(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        Integer l(1);
        for (std::size_t j = 0; j < cols; ++j) l = lcm(l, denominator(m(i, j)));
        for (std::size_t j = 0; j < cols; ++j)
            A(i, j) = numerator(m(i, j)) * (l / denominator(m(i, j)));
    }

    // Bareiss elimination with column pivot tracking.
    std::vector<std::size_t> pivot_col;
    Integer prev(1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && A(piv, c) == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(A(piv, j), A(r, j));
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                A(i, j) = (A(r, c) * A(i, j) - A(i, c) * A(r, j)) / prev;
            A(i, c) = 0;
        }
        prev = A(r, c);
        pivot_col.push_back(c);
        ++r;
    }

    ExactKernel out;
    out.rank = static_cast<int>(pivot_col.size());
    out.nullity = static_cast<int>(cols) - out.rank;
    if (out.nullity >= 1) {
        // Back-substitute with the first free column set to 1.
        std::vector<bool> is_pivot(cols, false);
        for (auto c : pivot_col) is_pivot[c] = true;
        std::size_t free_col = 0;
        while (free_col < cols && is_pivot[free_col]) ++free_col;
        std::vector<Rational> v(cols, Rational(0));
        v[free_col] = 1;
        for (std::size_t k = pivot_col.size(); k-- > 0;) {
            std::size_t c = pivot_col[k];
            Rational s(0);
            for (std::size_t j = c + 1; j < cols; ++j)
                if (v[j] != 0) s += Rational(A(k, j)) * v[j];
            v[c] = -s / Rational(A(k, c));
        }
        // Clear to a primitive integer vector for readability.
        Integer l(1);
        for (auto& x : v) l = lcm(l, denominator(x));
        for (auto& x : v) x *= Rational(l);
        out.null_vector = std::move(v);
    }
    return out;
}

bool solve_dense(Matrix<Real> m, std::vector<Real> rhs, std::vector<Real>& out,
                 const Real& pivot_tol) {
    std::size_t n = m.rows;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t i = c + 1; i < n; ++i)
            if (abs(m(i, c)) > abs(m(piv, c))) piv = i;
        if (abs(m(piv, c)) <= pivot_tol) return false;
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
            std::swap(rhs[piv], rhs[c]);
        }
        for (std::size_t i = c + 1; i < n; ++i) {
            Real f = m(i, c) / m(c, c);
            if (f == 0) continue;
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
            rhs[i] -= f * rhs[c];
        }
    }
    out.assign(n, Real(0));
    for (std::size_t i = n; i-- > 0;) {
        Real s = rhs[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= m(i, j) * out[j];
        out[i] = s / m(i, i);
    }
    return true;
}

Real determinant(Matrix<Real> m) {
    std::size_t n = m.rows;
    Real det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t i = c + 1; i < n; ++i)
            if (abs(m(i, c)) > abs(m(piv, c))) piv = i;
        if (m(piv, c) == 0) return Real(0);
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            Real f = m(i, c) / m(c, c);
            if (f == 0) continue;
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

Rational determinant(Matrix<Rational> m) {
    std::size_t n = m.rows;
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m(piv, c) == 0) ++piv;
        if (piv == n) return Rational(0);
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            Rational f = m(i, c) / m(c, c);
            if (f == 0) continue;
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

} // namespace cfb
