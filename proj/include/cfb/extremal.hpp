#ifndef CFB_EXTREMAL_HPP
#define CFB_EXTREMAL_HPP

#include "cfb/confocal.hpp"
#include "cfb/poly.hpp"
#include "cfb/scalar.hpp"
#include "cfb/series.hpp"

#include <string>
#include <vector>

namespace cfb {

/// Solution of p^2(s) - hatP_{2d}(s) q^2(s) = 1 on the interval system,
/// normalized so p(0) = -1.
struct PellSolution {
    Poly<Real> p_hat;    // degree n
    Poly<Real> q_hat;    // degree n-d
    Real residual = 0;   // max |coefficient| of p^2 - hatP q^2 - 1
    Real norm_const = 0; // rescaling applied to reach Pell constant 1
    int n = 0;
    int d = 0;
};

/// Exact-backend result for rational band data; residual is checked
/// identically zero instead of thresholded.
struct PellSolutionExact {
    Poly<Rational> p_hat;
    Poly<Rational> q_hat;
    bool residual_zero = false;
    int n = 0;
    int d = 0;
};

PellSolution pell_solve(const IntervalSystem& sys, int n, const NumericConfig& cfg = {});
PellSolutionExact pell_solve_exact(const std::vector<Rational>& b_ascending, int n);

/// Monic hatP_{2d}(s) = s * prod(s - c_k) of the system.
Poly<Real> hat_p2d(const IntervalSystem& sys);

/// Pell unit power: p_k = T_k(p), q_k = U_{k-1}(p) q solves Pell at degree k*n.
PellSolution pell_power(const PellSolution& sol, int k, const IntervalSystem& sys);

struct WindingData {
    std::vector<long> m;             // m_0 .. m_{d-1}, m_0 = n
    std::vector<long> tau;           // tau_1 .. tau_d, zeros of q in band interiors
    std::vector<long> alternance;    // alternance points per band 1..d, sums to n+1
    std::vector<Real> q_roots;       // ascending
    long gcd_k = 1;                  // k = gcd(m)
    long elliptic_period = 0;        // m_0 / k
    std::vector<long> m_elliptic;    // m / k
    bool consistent = false;         // root placement reproduces m_0 = n
    long gap_roots = 0;              // should be 0 for true Pell solutions
};

WindingData analyze_alternance(const PellSolution& sol, const IntervalSystem& sys,
                               const NumericConfig& cfg = {});

/// The unique (d+1)-periodic caustic candidate of a family: gamma is the
/// critical point of r_{d+1}(s) = s prod(s - 1/a_j) in (0, 1/a_d) and the
/// caustics are the reciprocals of the remaining roots of r = r(gamma).
struct DPlus1Caustics {
    Real gamma;
    Real r_at_gamma;
    std::vector<Real> alpha; // ascending; empty when the roots are not all real
    bool admissible = false;
    std::string reason;
    Poly<Real> p_hat; // 2 r / r(gamma) - 1
};

DPlus1Caustics find_caustics_d_plus_1(const ConfocalFamily& family,
                                      const NumericConfig& cfg = {});

/// Closed form for 4-periodic trajectories along generatrices of a confocal
/// 1-sheeted hyperboloid (d = 3): a1 = a2 a3/(a2+a3), alpha = a2+a3-sqrt(a2^2+a3^2).
struct Hyperboloid4 {
    Real a1;
    Real alpha;
};
Hyperboloid4 hyperboloid_4periodic(const Real& a2, const Real& a3);

/// The unique ellipsoid/hyperboloid pair of a d = 3 confocal pencil carrying
/// such 4-periodic trajectories: lambda = a1 - sqrt((a3-a1)(a2-a1)), the
/// hyperboloid parameter reported in the original family coordinates.
struct UniquePair {
    Real lambda;
    Real hyperboloid_alpha;
};
UniquePair unique_pair_in_family(const ConfocalFamily& family);

} // namespace cfb

#endif
