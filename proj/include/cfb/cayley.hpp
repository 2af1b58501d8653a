#ifndef CFB_CAYLEY_HPP
#define CFB_CAYLEY_HPP

#include "cfb/confocal.hpp"
#include "cfb/extremal.hpp"
#include "cfb/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cfb {

struct PeriodicityVerdict {
    bool periodic = false;
    int elliptic_period = 0;           // impacts until closure in Jacobi coordinates
    int cartesian_period = 0;          // fundamental period in Cartesian coordinates
    std::optional<std::vector<long>> predicted_winding; // for the fundamental period
    std::optional<std::vector<long>> signature;
    std::string reason;
    std::optional<PellSolution> pell;  // witness at the elliptic period
};

/// Decides n-periodicity by the rank condition C(m,d) over the divisors
/// m >= d of n, then derives the Cartesian period from the Pell winding
/// numbers and the hyperplane-crossing parities.
PeriodicityVerdict check_periodicity(const ConfocalFamily& family, const CausticSet& caustics,
                                     int n, const NumericConfig& cfg = {});

/// Classical planar Cayley determinant for d = 2 (series of
/// sqrt((a1-x)(a2-x)(alpha-x))): |C_3 ... | for n = 2m, |C_2 ... | for n = 2m+1.
bool planar_cayley(const Real& a1, const Real& a2, const Real& alpha, int n,
                   const NumericConfig& cfg = {});

/// (d+1)-periodicity conditions: caustic type pattern plus the vanishing
/// coefficients of the divided series sqrt(Pol)/(product of alternate alphas).
bool check_d_plus_1(const ConfocalFamily& family, const CausticSet& caustics,
                    const NumericConfig& cfg = {});

/// 5-periodic conditions in dimension three: one ellipsoidal caustic and
/// C_3 = C_4 = 0 on sqrt(Pol)/(alpha_1 - x).
bool check_five_d3(const ConfocalFamily& family, const CausticSet& caustics,
                   const NumericConfig& cfg = {});

struct SixVerdict {
    bool satisfied = false;
    std::optional<std::pair<Poly<Real>, Poly<Real>>> witness; // (p2, p1) of the x^6 identity
    std::vector<long> winding;                                // winding realized by the parameters
    std::string note;
};

/// Six-periodic deciders for d = 3 by requested winding triple.
/// (6,4,2): C_4 = C_5 = 0 on sqrt(Pol); coinciding hyperboloid caustics are
/// cross-checked against |B3 B5 - B4^2| of sqrt((a1-x)(a2-x)(a3-x)).
/// Odd-m1 variants: both caustics 1-sheeted hyperboloids and the 6x5
/// resultant-type matrix drops rank; the witness pair is verified by direct
/// expansion of (alpha1-x)(alpha2-x)p2^2 - (a1-x)(a2-x)(a3-x)p1^2 = c x^6.
SixVerdict check_six_d3(const ConfocalFamily& family, const Real& alpha1, const Real& alpha2,
                        const std::vector<long>& variant, const NumericConfig& cfg = {});

/// Cartesian closure multiple over one elliptic period: 2 when some Jacobi
/// window adjacent to a coordinate hyperplane has an odd elliptic winding
/// number, 1 otherwise.
int cartesian_multiplier(const CausticSet& caustics, const std::vector<long>& m_elliptic);

} // namespace cfb

#endif
