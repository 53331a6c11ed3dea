#ifndef CHABAUTY_HEIS_SUBGROUPS_HPP
#define CHABAUTY_HEIS_SUBGROUPS_HPP

#include "chabauty/heis.hpp"
#include "chabauty/metric.hpp"
#include "chabauty/sphere_chart.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace chabauty
{

struct TrivialH
{
    bool operator==(const TrivialH &) const = default;
};
/// Powers of gen; the first nonzero coordinate of gen is positive.
struct CyclicH
{
    HeisPoint gen;
    bool operator==(const CyclicH &) const = default;
};
/// {(s z0, s t0)}; dir scaled so its first nonzero coordinate is 1.
struct OneParamH
{
    HeisPoint dir;
    bool operator==(const OneParamH &) const = default;
};
/// p^-1(R d), d a unit vector with d.x > 0 or d = i.
struct PlaneH
{
    V2 dir;
    bool operator==(const PlaneH &) const = default;
};
/// Subgroup of the plane p^-1(R d) written in the coordinate (s d, t) -> t + i s.
/// inner is a LineCyclicC or a LatticeC.
struct InPlane
{
    V2 plane;
    SubgroupC inner;
    bool operator==(const InPlane &) const = default;
};
/// Generated by (w1, A r), (w2, A r') and (0, A / n), A = coarea(L).
struct LatticeN
{
    LatticeBasis L;
    Real r, r2;
    long n = 1;
    bool operator==(const LatticeN &) const = default;
};
struct PreimageLattice
{
    LatticeBasis L;
    bool operator==(const PreimageLattice &) const = default;
};
struct PreimageLineCyclic
{
    LineCyclicC inner;
    bool operator==(const PreimageLineCyclic &) const = default;
};
struct FullH
{
    bool operator==(const FullH &) const = default;
};

using SubgroupH = std::variant<TrivialH, CyclicH, OneParamH, PlaneH, InPlane, LatticeN, PreimageLattice,
                               PreimageLineCyclic, FullH>;

SubgroupH make_trivial_h();
SubgroupH make_full_h();
SubgroupH make_cyclic_h(const HeisPoint &gen);
SubgroupH make_one_param_h(const HeisPoint &dir);
SubgroupH make_plane_h(const V2 &dir);
/// inner is given in the coordinates of unit(plane); degenerate inners are
/// sent to the matching stratum.
SubgroupH make_in_plane(const V2 &plane, const SubgroupC &inner);
/// p^-1(C) for a closed subgroup C of the plane.
SubgroupH make_preimage(const SubgroupC &C);
/// Lambda_n and Lambda'_n.
SubgroupH lambda_n(long n);
SubgroupH lambda_prime_n(long n);

bool is_abelian(const SubgroupH &C);
bool contains_center(const SubgroupH &C);

/// Point of the plane p^-1(R d) with plane coordinate c = t + i s.
HeisPoint plane_point(const V2 &d, const V2 &c);
/// Plane coordinate of h; h must lie in the plane.
V2 plane_coord(const V2 &d, const HeisPoint &h);

bool membership_h(const SubgroupH &C, const HeisPoint &h, double eps);
/// Points of C with |z| + |t| <= R.
std::vector<HeisPoint> sample_ball_h(const SubgroupH &C, double R, double spacing);
/// Trace of C for the metric module, with an exact distance oracle where one is available.
SampledSet sampled_h(const SubgroupH &C, double R, double spacing);
/// Identity plus the exact oracle; enough when the other side is the whole group.
SampledSet oracle_only_h(const SubgroupH &C);
P3 to_p3(const HeisPoint &h);

SubgroupC p_star(const SubgroupH &C);

struct CenterData
{
    enum class Kind
    {
        trivial,
        cyclic,
        line
    };
    Kind kind = Kind::trivial;
    Real gen = 0;        ///< positive generator when cyclic
    Real commutator = 0; ///< generator of the commutator subgroup, 0 if abelian
    std::string str() const;
};
CenterData center_data(const SubgroupH &C);

/// Canonical LatticeN of <a, b> or <a, b, (0, c)>.
SubgroupH lattice_from_generators(const HeisPoint &a, const HeisPoint &b, const std::optional<Real> &central = {});
long index_n(const SubgroupH &C);

struct Fibration
{
    LatticeBasis L;
    Real r, r2;
    long n;
};
Fibration fibration_coords(const SubgroupH &C);
/// L is any positively oriented basis; r and r2 are read against it.
SubgroupH lattice_from_coords(const LatticeBasis &L, long n, const Real &r, const Real &r2);

struct Normalization
{
    HeisAut phi;
    long n;
};
Normalization normalize_lattice(const SubgroupH &C);
bool stabilizer_contains(const HeisAut &phi, long n, bool unimodular_only = false);
SubgroupH apply_aut_subgroup(const HeisAut &phi, const SubgroupH &C);

struct ThetaFiber
{
    LatticeBasis L;
    bool cone_point = false;
    long n = 0;
    Real cone = 0; ///< 1/n, or 0 at the cone point
    Real u = 0, v = 0;
};
ThetaFiber theta_bundle(const SubgroupH &C);
SubgroupH q_star(const SubgroupH &C);

struct StratumTag
{
    std::string tag;
    long n = 0;
    bool in_D_minus = false, in_D_plus = false, has_center = false;
};
StratumTag classify_stratum(const SubgroupH &C);
std::string classify_orbit(const SubgroupH &C);

struct AbelianChart
{
    SubgroupC inner;
    SpherePoint q, q_alt;
    double phi = 0, phi_alt = 0;
};
AbelianChart abelian_chart(const SubgroupH &A);
SpherePoint rho_twist(const SpherePoint &q, double phi);
SpherePoint center_chart(const SubgroupH &C);

struct WalkResult
{
    double best = 0;
    long steps = 0;
    std::uint64_t seed = 0;
    HeisAut phi = HeisAut::identity();
    std::vector<double> best_trace; ///< best distance after each step
};
WalkResult orbit_density_walk(const SubgroupH &start, const SubgroupH &target, long budget, const MetricConfig &cfg,
                              std::uint64_t seed);

/// Lattice over A_k = <(1,0), (-1/k, 1)> in L_n.
SubgroupH shear_lattice(long k, long n);
/// phi_s(C) for the dilation (z, t) -> (s z, s^2 t).
SubgroupH dilate(const SubgroupH &C, const Real &s);
/// J = 1/n on L_n, 0 on L-infinity.
Real j_value(const SubgroupH &C);

struct DisconnectionCertificate
{
    long N = 0;
    std::vector<SubgroupH> members;
    std::vector<Real> j_values;
    std::vector<double> distances;
    long distinct = 0;
};
/// Members of the neighbourhood basis element of C = p^-1(L) of radius eps at R.
DisconnectionCertificate disconnection_certificate(const SubgroupH &C, double eps, double R, double spacing);

} // namespace chabauty

#endif
