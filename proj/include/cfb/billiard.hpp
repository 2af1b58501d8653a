#ifndef CFB_BILLIARD_HPP
#define CFB_BILLIARD_HPP

#include "cfb/confocal.hpp"
#include "cfb/scalar.hpp"

#include <cstdint>
#include <vector>

namespace cfb {

struct Trajectory {
    std::vector<Vec> impacts;                      // size segments+1
    std::vector<Vec> directions;                   // unit, one per segment
    std::vector<std::vector<Real>> caustic_params; // per segment, ascending
    bool closed = false;
    Real closure_error = 0;
    int period = 0;
    Real chasles_spread = 0; // max deviation of any caustic parameter across segments
};

/// Specular reflection at the boundary point; involutive, |dir'| = 1.
Vec reflect(const ConfocalFamily& family, const Vec& point, const Vec& dir,
            const Real& boundary_tol = Real(1e-9));

/// Second intersection of the chord with the boundary, one Newton polish.
Vec next_impact(const ConfocalFamily& family, const Vec& point, const Vec& dir);

/// The d-1 confocal parameters of quadrics tangent to the line (Chasles).
std::vector<Real> line_caustics(const ConfocalFamily& family, const Vec& point, const Vec& dir);

struct Launch {
    Vec point;
    Vec dir;
};

/// Boundary point and inward unit direction whose line is tangent to all the
/// requested caustics; the point is drawn from the Jacobi-coordinate windows
/// using the seed, the direction solved by Newton on the tangency equations.
Launch launch_from_caustics(const ConfocalFamily& family, const CausticSet& caustics,
                            std::uint64_t seed, const NumericConfig& cfg = {});

Trajectory trace(const ConfocalFamily& family, const Vec& point, const Vec& dir, int n_max,
                 const Real& closure_tol);

/// Empirical winding numbers of a closed trajectory: m_0 is the period, m_j
/// counts the events where the (j+1)-th Jacobi coordinate reaches the lower
/// end of its window (caustic tangencies and hyperplane crossings located
/// per segment). A collapsed window (coinciding caustics) is filled by the
/// average of its neighbours, the continuity limit of the generic count.
std::vector<long> count_winding(const Trajectory& traj, const CausticSet& caustics);

} // namespace cfb

#endif
