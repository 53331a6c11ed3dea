#include "chabauty/heis.hpp"

#include <stdexcept>

namespace chabauty
{

HeisPoint heis_identity()
{
    return {0, 0, 0};
}

HeisPoint heis_mul(const HeisPoint &a, const HeisPoint &b)
{
    return {a.x + b.x, a.y + b.y, a.t + b.t + Real::frac(1, 2) * (a.x * b.y - a.y * b.x)};
}

HeisPoint heis_inverse(const HeisPoint &a)
{
    return {-a.x, -a.y, -a.t};
}

HeisPoint heis_pow(const HeisPoint &a, const Real &k)
{
    // powers stay on the line through a, so no correction term appears
    return {k * a.x, k * a.y, k * a.t};
}

HeisPoint heis_commutator(const HeisPoint &a, const HeisPoint &b)
{
    return heis_mul(heis_mul(a, b), heis_mul(heis_inverse(a), heis_inverse(b)));
}

V2 heis_project(const HeisPoint &a)
{
    return a.z();
}

HeisPoint aut_apply(const HeisAut &phi, const HeisPoint &h)
{
    V2 gz = phi.g(h.z());
    Real t = phi.g.det() * h.t + cross(phi.w, gz);
    return HeisPoint::make(gz, t);
}

HeisAut aut_compose(const HeisAut &phi, const HeisAut &psi)
{
    return {phi.w + phi.g(psi.w), phi.g * psi.g};
}

HeisAut aut_inverse(const HeisAut &phi)
{
    Mat2 gi = phi.g.inverse();
    return {-gi(phi.w), gi};
}

HeisAut psi_n(const HeisAut &phi, long n)
{
    if (n < 1)
        throw std::domain_error("psi_n needs n >= 1");
    Real k(n);
    return {{phi.w.x / k, phi.w.y / k}, phi.g};
}

HeisAut heis_dilation(const Real &s)
{
    return {V2{0, 0}, Mat2{s, 0, 0, s}};
}

} // namespace chabauty
