#ifndef CHABAUTY_COMPLEX_SUBGROUPS_HPP
#define CHABAUTY_COMPLEX_SUBGROUPS_HPP

#include "chabauty/linear.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace chabauty
{

/// Positively oriented basis, reduced: |w1| <= |w2|, tau = w2/w1 in the
/// closed fundamental domain with Re tau >= 0 on its boundary.
struct LatticeBasis
{
    V2 w1, w2;
    Real coarea() const { return cross(w1, w2); }
    bool is_exact() const { return w1.is_exact() && w2.is_exact(); }
    bool operator==(const LatticeBasis &) const = default;
};

struct TrivialC
{
    bool operator==(const TrivialC &) const = default;
};
struct CyclicC
{
    V2 w;
    bool operator==(const CyclicC &) const = default;
};
struct LineC
{
    V2 dir;
    bool operator==(const LineC &) const = default;
};
/// R.dir + Z.(step * i.dir)
struct LineCyclicC
{
    V2 dir;
    Real step;
    bool operator==(const LineCyclicC &) const = default;
};
struct LatticeC
{
    LatticeBasis basis;
    bool operator==(const LatticeC &) const = default;
};
struct FullC
{
    bool operator==(const FullC &) const = default;
};

using SubgroupC = std::variant<TrivialC, CyclicC, LineC, LineCyclicC, LatticeC, FullC>;

class UndefinedInvariant : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

class DegenerateLattice : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

LatticeBasis reduce_basis(const V2 &u, const V2 &v);

SubgroupC make_trivial_c();
SubgroupC make_full_c();
SubgroupC make_cyclic(const V2 &w);
SubgroupC make_line(const V2 &dir);
SubgroupC make_line_cyclic(const V2 &dir, const Real &step);
SubgroupC make_lattice(const V2 &u, const V2 &v);

/// Right half-plane representative of {v, -v}.
V2 half_plane_rep(const V2 &v);
/// Unit vector in the direction of v (exact when the norm is rational).
V2 unit(const V2 &v);

std::string stratum_name(const SubgroupC &C);

struct LatticeInvariants
{
    std::optional<double> ell1, ell2, kappa;
    /// +inf for {0} and Z, 0 for R+Z and C, empty for a line.
    std::optional<double> coarea;
};

LatticeInvariants lattice_invariants(const SubgroupC &C);
/// Throws UndefinedInvariant on a line.
double coarea(const SubgroupC &C);

SubgroupC dual(const SubgroupC &C);
SubgroupC scale_action(cplx s, const SubgroupC &C);
SubgroupC conjugate(const SubgroupC &C);
/// Image under a real-linear invertible map of the plane.
SubgroupC apply_linear(const Mat2 &m, const SubgroupC &C);

bool membership_c(const SubgroupC &C, const V2 &z, double eps);
/// Euclidean distance from z to the point set C.
double distance_c(const SubgroupC &C, cplx z);
std::vector<cplx> sample_ball_c(const SubgroupC &C, double R, double spacing);

SubgroupC closure_of_generators(const std::vector<V2> &gens);

/// Loose equality: same stratum and each generator within tol of the other set.
bool approx_equal(const SubgroupC &A, const SubgroupC &B, double tol);

struct LimitThresholds
{
    double big = 1e3;
    double small = 1e-3;
    int tail = 10;
    double settle = 1e-2;
};

struct LimitVerdict
{
    bool conclusive = false;
    std::string rule;
    SubgroupC limit = TrivialC{};
};

LimitVerdict classify_limit_c(const std::function<SubgroupC(int)> &family, int horizon,
                              const LimitThresholds &th = {});

} // namespace chabauty

#endif
