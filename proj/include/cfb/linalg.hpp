#ifndef CFB_LINALG_HPP
#define CFB_LINALG_HPP

#include "cfb/scalar.hpp"

#include <optional>
#include <vector>

namespace cfb {

/// Row-major dense matrix, minimal surface for the rank/null-space work here.
template <class T>
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<T> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, T(0)) {}
    T& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

struct SvdResult {
    std::vector<Real> sigma;              // descending
    std::vector<std::vector<Real>> right; // right singular vectors, matching sigma
};

/// One-sided Jacobi SVD; exact enough at working precision for the small
/// Hankel windows used here.
SvdResult jacobi_svd(const Matrix<Real>& m);

struct ExactKernel {
    int rank;
    int nullity;
    std::optional<std::vector<Rational>> null_vector; // one kernel vector if nullity >= 1
};

/// Fraction-free (Bareiss) elimination over the integers after clearing
/// denominators row-wise; exact rank and a kernel vector.
ExactKernel rational_kernel(const Matrix<Rational>& m);

/// Solves a square dense system in place; returns false on a vanishing pivot.
bool solve_dense(Matrix<Real> m, std::vector<Real> rhs, std::vector<Real>& out,
                 const Real& pivot_tol);

Real determinant(Matrix<Real> m);
Rational determinant(Matrix<Rational> m);

} // namespace cfb

#endif
