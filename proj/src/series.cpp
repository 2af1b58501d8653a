#include "cfb/series.hpp"

namespace cfb {

HankelResult hankel_condition(const PowerSeries<Real>& s, int m, int d,
                              const NumericConfig& cfg) {
    Matrix<Real> h = hankel_window(s, m, d);
    HankelResult res;
    res.rows = static_cast<int>(h.rows);
    res.cols = static_cast<int>(h.cols);
    auto svd = jacobi_svd(h);
    res.sigma = svd.sigma;
    Real smax = svd.sigma.empty() ? Real(0) : svd.sigma.front();
    if (smax == 0) {
        res.rank = 0;
    } else {
        Real tol = cfg.vanish_rel() * smax;
        for (auto& sg : svd.sigma)
            if (sg > tol) ++res.rank;
    }
    res.satisfied = res.rank < res.cols;
    return res;
}

HankelResult hankel_condition(const PowerSeries<Rational>& s, int m, int d) {
    Matrix<Rational> h = hankel_window(s, m, d);
    HankelResult res;
    res.rows = static_cast<int>(h.rows);
    res.cols = static_cast<int>(h.cols);
    auto ker = rational_kernel(h);
    res.rank = ker.rank;
    res.satisfied = res.rank < res.cols;
    return res;
}

namespace {

template <class T>
PadePair<T> pair_from_null(const PowerSeries<T>& s, int m, int d,
                           const std::vector<T>& v) {
    // The null vector is indexed by Hankel columns; q_j = v_{m-d-j}.
    int qd = m - d;
    std::vector<T> qc(static_cast<std::size_t>(qd) + 1);
    for (int j = 0; j <= qd; ++j) qc[j] = v[qd - j];
    Poly<T> q{std::move(qc)};
    // p_k = -(q * series)_k for k = 0..m
    std::vector<T> pc(static_cast<std::size_t>(m) + 1, T(0));
    for (int k = 0; k <= m; ++k) {
        T acc(0);
        for (int j = 0; j <= qd && j <= k; ++j) acc += q.coeff(j) * s.coeff[k - j];
        pc[k] = -acc;
    }
    return PadePair<T>{Poly<T>{std::move(pc)}, std::move(q)};
}

} // namespace

std::optional<PadePair<Real>> pade_sqrt(const PowerSeries<Real>& s, int m, int d,
                                        const NumericConfig& cfg, bool* ill_conditioned) {
    Matrix<Real> h = hankel_window(s, m, d);
    auto svd = jacobi_svd(h);
    std::size_t cols = h.cols;
    Real smax = svd.sigma.front();
    if (ill_conditioned) *ill_conditioned = false;
    if (smax != 0 && svd.sigma.back() > cfg.vanish_rel() * smax) return std::nullopt;
    if (cols >= 2 && smax != 0) {
        const Real& s_min = svd.sigma[cols - 1];
        const Real& s_next = svd.sigma[cols - 2];
        bool next_small = s_next < s_min * 1000000 || s_next < cfg.vanish_rel() * smax;
        if (next_small && ill_conditioned) *ill_conditioned = true;
    }
    return pair_from_null(s, m, d, svd.right.back());
}

std::optional<PadePair<Rational>> pade_sqrt(const PowerSeries<Rational>& s, int m, int d,
                                            int* nullity) {
    Matrix<Rational> h = hankel_window(s, m, d);
    auto ker = rational_kernel(h);
    if (nullity) *nullity = ker.nullity;
    if (!ker.null_vector) return std::nullopt;
    return pair_from_null(s, m, d, *ker.null_vector);
}

Real hadamard_hankel(const PowerSeries<Real>& s, int k, int l) {
    if (l <= 0) return Real(1);
    auto c = s.denormalized();
    if (k + l - 1 >= static_cast<int>(c.size()) || k - l + 1 < 0)
        throw InsufficientOrder("hadamard_hankel: series too short for H_{k,l}");
    Matrix<Real> mat(l, l);
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) mat(i, j) = c[k - l + 1 + i + j];
    return determinant(std::move(mat));
}

Real hankel_det(const PowerSeries<Real>& s, int start, int size) {
    if (size <= 0) return Real(1);
    if (start + 2 * (size - 1) > s.order())
        throw InsufficientOrder("hankel_det: series too short");
    Matrix<Real> mat(size, size);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) mat(i, j) = s.coeff[start + i + j];
    return determinant(std::move(mat));
}

} // namespace cfb
