#ifndef CHABAUTY_EISENSTEIN_HPP
#define CHABAUTY_EISENSTEIN_HPP

#include "chabauty/complex_subgroups.hpp"

#include <utility>

namespace chabauty
{

struct EisensteinMode
{
    enum class Kind
    {
        direct,
        accelerated
    };
    Kind kind = Kind::accelerated;
    /// Truncation radius for direct mode, in units of the shortest vector.
    double radius = 2000;

    static EisensteinMode direct(double r) { return {Kind::direct, r}; }
    static EisensteinMode accelerated() { return {Kind::accelerated, 0}; }
    const char *name() const { return kind == Kind::direct ? "direct" : "accelerated"; }
};

struct EisensteinResult
{
    cplx g2, g3, delta;
    /// Bound on |error| of g2 and g3 (truncation only).
    double g2_bound = 0, g3_bound = 0;
    EisensteinMode mode;
};

/// g2 = 60 sum z^-4, g3 = 140 sum z^-6 over the nonzero elements; lattices and Z.w only.
EisensteinResult eisenstein_invariants(const SubgroupC &C, EisensteinMode mode = EisensteinMode::accelerated());

/// (4 pi^4 / 3 w^4, 8 pi^6 / 27 w^6).
std::pair<cplx, cplx> cyclic_closed_form(cplx w);

/// g2, g3 of Z + Z tau and their tau-derivatives, from the q-expansions.
struct TauSeries
{
    cplx g2, g3, dg2, dg3;
};
TauSeries eisenstein_tau(cplx tau);

cplx j_invariant(cplx tau);

} // namespace chabauty

#endif
