#ifndef CFB_FREQMAP_HPP
#define CFB_FREQMAP_HPP

#include "cfb/confocal.hpp"
#include "cfb/poly.hpp"
#include "cfb/scalar.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace cfb {

/// Equilibrium-measure data of the band system and the frequency map
/// F = (mu(band d), mu(band d) + mu(band d-1), ..., total mass).
struct FrequencyVector {
    std::vector<Real> f;         // cumulative, size d; f_d is the total mass
    std::vector<Real> mu;        // per band, index 0 = band 1 (rightmost)
    Poly<Real> eta;              // monic third-kind numerator polynomial
    bool eta_roots_in_gaps = true;
    unsigned nodes_used = 0;
};

/// Integral of poly(s)/sqrt(|hatP(s)|) over band k (1-based) by the cosine
/// substitution with equally weighted nodes; node count doubles until the
/// result settles below 1e-12.
Real band_integral(const IntervalSystem& sys, const Poly<Real>& poly, int band_index,
                   const NumericConfig& cfg = {});
Real gap_integral(const IntervalSystem& sys, const Poly<Real>& poly, int gap_index,
                  const NumericConfig& cfg = {});

/// Monic eta of degree d-1 whose integral vanishes over every gap.
Poly<Real> third_kind_polynomial(const IntervalSystem& sys, const NumericConfig& cfg = {});

FrequencyVector frequency(const ConfocalFamily& family, const CausticSet& caustics,
                          const NumericConfig& cfg = {});

/// d = 2 rotation number as the ratio of the two singular integrals of
/// 1/sqrt((lambda-t)(b-t)(a-t)); strictly inside (0, 1/2) for elliptic
/// caustics lambda in (0, b).
Real rotation_number(const Real& a, const Real& b, const Real& lambda,
                     const NumericConfig& cfg = {});

struct InjectivityReport {
    Real min_pairwise_distance = 0;
    std::size_t pairs_below_threshold = 0;
    std::vector<std::pair<std::size_t, std::size_t>> collisions;
    std::vector<FrequencyVector> values;
};

/// Frequency map on a same-type grid of caustic sets; near-collisions of F
/// below the threshold are reported.
InjectivityReport injectivity_probe(const ConfocalFamily& family,
                                    const std::vector<std::vector<Real>>& caustic_grid,
                                    const Real& collision_threshold,
                                    const NumericConfig& cfg = {});

/// Continued-fraction rational fit |x - p/q| <= tol with q <= max_den.
std::optional<std::pair<long, long>> rational_fit(const Real& x, long max_den, const Real& tol);

} // namespace cfb

#endif
