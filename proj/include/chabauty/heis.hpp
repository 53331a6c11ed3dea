#ifndef CHABAUTY_HEIS_HPP
#define CHABAUTY_HEIS_HPP

#include "chabauty/linear.hpp"

namespace chabauty
{

/// Element (z, t) of H = C x R with z = x + iy.
struct HeisPoint
{
    Real x, y, t;

    V2 z() const { return {x, y}; }
    static HeisPoint make(const V2 &z, Real t) { return {z.x, z.y, std::move(t)}; }
    bool is_exact() const { return x.is_exact() && y.is_exact() && t.is_exact(); }
    friend bool operator==(const HeisPoint &a, const HeisPoint &b)
    {
        return a.x == b.x && a.y == b.y && a.t == b.t;
    }
};

HeisPoint heis_identity();
HeisPoint heis_mul(const HeisPoint &a, const HeisPoint &b);
HeisPoint heis_inverse(const HeisPoint &a);
/// a^k; the exponent may be any integer-valued Real.
HeisPoint heis_pow(const HeisPoint &a, const Real &k);
HeisPoint heis_commutator(const HeisPoint &a, const HeisPoint &b);
V2 heis_project(const HeisPoint &a);

/// Automorphism Phi_{w,g}: the linear part g acts first, then the inner
/// automorphism Int_w : (z, t) -> (z, t + Im(conj(w) z)).
struct HeisAut
{
    V2 w;
    Mat2 g;

    static HeisAut identity() { return {V2{0, 0}, Mat2::identity()}; }
    friend bool operator==(const HeisAut &a, const HeisAut &b) { return a.w == b.w && a.g == b.g; }
};

HeisPoint aut_apply(const HeisAut &phi, const HeisPoint &h);
/// phi o psi, so that aut_apply(result, h) = aut_apply(phi, aut_apply(psi, h)).
HeisAut aut_compose(const HeisAut &phi, const HeisAut &psi);
HeisAut aut_inverse(const HeisAut &phi);
HeisAut psi_n(const HeisAut &phi, long n);
/// Dilation (z, t) -> (s z, s^2 t).
HeisAut heis_dilation(const Real &s);

} // namespace chabauty

#endif
