#ifndef CFB_CONFOCAL_HPP
#define CFB_CONFOCAL_HPP

#include "cfb/errors.hpp"
#include "cfb/poly.hpp"
#include "cfb/scalar.hpp"

#include <string>
#include <vector>

namespace cfb {

using Vec = std::vector<Real>;

/// Ellipsoid sum x_i^2/a_i = 1 with 0 < a_1 < ... < a_d and its confocal
/// pencil Q_lambda: sum x_i^2/(a_i - lambda) = 1.
struct ConfocalFamily {
    std::vector<Real> a; // ascending semi-axes squared

    explicit ConfocalFamily(std::vector<Real> axes);
    int dim() const { return static_cast<int>(a.size()); }
};

/// Quadric type of Q_alpha: 0 sheets = ellipsoid, k = "k-sheeted hyperboloid"
/// for alpha in (a_k, a_{k+1}).
struct CausticType {
    int sheets = 0;
    std::string label() const {
        return sheets == 0 ? "ellipsoid" : std::to_string(sheets) + "-sheeted hyperboloid";
    }
};

struct CausticSet {
    std::vector<Real> alpha;       // ascending, size d-1 (equal pairs allowed)
    std::vector<CausticType> types;
    std::vector<Real> b;           // merged ascending {a} U {alpha}, size 2d-1
    std::vector<bool> b_is_axis;   // true where b[k] is one of the a_i
    int d = 0;

    bool has_ellipsoid_caustic() const {
        for (auto& t : types)
            if (t.sheets == 0) return true;
        return false;
    }
    bool has_double_caustic() const {
        for (std::size_t j = 0; j + 1 < alpha.size(); ++j)
            if (alpha[j] == alpha[j + 1]) return true;
        return false;
    }
};

/// Reciprocal interval system: c_1 > ... > c_{2d-1} > c_{2d} = 0 with
/// c_k = 1/b_k; d closed bands [c_{2k}, c_{2k-1}] and d-1 open gaps.
struct IntervalSystem {
    std::vector<Real> c; // descending, size 2d, last entry exactly 0
    int d = 0;

    struct Interval {
        Real lo, hi;
    };
    // 1-based to mirror the c-indexing; band 1 is the rightmost band.
    Interval band(int k) const { return {c[2 * k - 1], c[2 * k - 2]}; }
    Interval gap(int k) const { return {c[2 * k], c[2 * k - 1]}; }
    int bands() const { return d; }
    int gaps() const { return d - 1; }

    /// Direct construction from ascending positive b-values (odd count 2d-1).
    /// Used stand-alone for the degenerate d = 1 single-band system.
    static IntervalSystem from_b_values(const std::vector<Real>& b);

    /// b_k = 1/c_k recovered back (ascending).
    std::vector<Real> b_values() const;
};

struct JacobiPoint {
    std::vector<Real> lambda; // ascending
};

/// Classifies the d-1 caustic parameters against the family, checks the
/// Audin interleaving and builds the merged b-sequence.
CausticSet classify_caustics(const ConfocalFamily& family, std::vector<Real> alpha,
                             const Real& degeneracy_rel_tol = Real(1e-12));

/// Jacobi elliptic coordinates of a Cartesian point: the d roots of
/// Q_lambda(x) = 1 after clearing denominators.
JacobiPoint jacobi_coordinates(const ConfocalFamily& family, const Vec& x);

/// Inverse map: |x_i| from the Jacobi coordinates, signs chosen per orthant.
Vec jacobi_to_cartesian(const ConfocalFamily& family, const std::vector<Real>& lambda,
                        const std::vector<int>& signs);

IntervalSystem interval_system(const CausticSet& caustics);

/// Polynomial Pol(x) = prod (a_i - x) * prod (alpha_j - x), degree 2d-1.
Poly<Real> pol_from_b(const std::vector<Real>& b);

} // namespace cfb

#endif
