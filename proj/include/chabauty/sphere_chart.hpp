#ifndef CHABAUTY_SPHERE_CHART_HPP
#define CHABAUTY_SPHERE_CHART_HPP

#include "chabauty/complex_subgroups.hpp"
#include "chabauty/errors.hpp"

#include <vector>

namespace chabauty
{

/// Point of C^2 or the point at infinity.
struct SpherePoint
{
    bool infinite = false;
    cplx a, b;

    static SpherePoint infinity() { return {true, 0.0, 0.0}; }
    static SpherePoint finite(cplx a, cplx b) { return {false, a, b}; }
    double norm() const;
    bool is_origin() const { return !infinite && a == 0.0 && b == 0.0; }
};

/// Distance in C^2; infinite points are at distance 0 from each other.
double sphere_distance(const SpherePoint &p, const SpherePoint &q);

namespace sigma
{
/// |a^3 - 27 b^2| / (|a|^3 + |b|^2).
double residual(const SpherePoint &p);
bool contains(const SpherePoint &p, double tol = 1e-9);
} // namespace sigma

/// Point of the orbit (t^-2 a, t^-3 b), t > 0, on the unit sphere.
SpherePoint pi_retract(const SpherePoint &p);
/// Point of the same orbit with the given norm.
SpherePoint orbit_point(const SpherePoint &p, double norm);

double phi_coarea(const SpherePoint &p);
double h_map(const SpherePoint &p);
SubgroupC gamma(const SpherePoint &p);
SubgroupC f_chart(const SpherePoint &p);
SpherePoint f_inverse(const SubgroupC &C);
SpherePoint inversion_delta(const SpherePoint &p);
std::vector<SpherePoint> trefoil_sample(int count);

} // namespace chabauty

#endif
