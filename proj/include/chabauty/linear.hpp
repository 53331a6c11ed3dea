#ifndef CHABAUTY_LINEAR_HPP
#define CHABAUTY_LINEAR_HPP

#include "chabauty/real.hpp"

#include <complex>
#include <stdexcept>
#include <utility>

namespace chabauty
{

using cplx = std::complex<double>;

/// Point of the plane, read as a complex number x + iy.
struct V2
{
    Real x, y;

    V2() = default;
    V2(Real x_, Real y_) : x(std::move(x_)), y(std::move(y_)) {}

    static V2 from(cplx z) { return {Real(z.real()), Real(z.imag())}; }
    cplx c() const { return {x.to_double(), y.to_double()}; }
    bool is_exact() const { return x.is_exact() && y.is_exact(); }

    friend V2 operator+(const V2 &a, const V2 &b) { return {a.x + b.x, a.y + b.y}; }
    friend V2 operator-(const V2 &a, const V2 &b) { return {a.x - b.x, a.y - b.y}; }
    friend V2 operator*(const Real &s, const V2 &a) { return {s * a.x, s * a.y}; }
    V2 operator-() const { return {-x, -y}; }
    friend bool operator==(const V2 &a, const V2 &b) { return a.x == b.x && a.y == b.y; }
};

/// Im(conj(a) b), the symplectic form of the plane.
inline Real cross(const V2 &a, const V2 &b) { return a.x * b.y - a.y * b.x; }
inline Real dot(const V2 &a, const V2 &b) { return a.x * b.x + a.y * b.y; }
inline Real norm2(const V2 &a) { return dot(a, a); }
inline double norm(const V2 &a) { return std::abs(a.c()); }

/// Real 2x2 matrix [[a, b], [c, d]] acting on (x, y).
struct Mat2
{
    Real a, b, c, d;

    static Mat2 identity() { return {1, 0, 0, 1}; }
    Real det() const { return a * d - b * c; }
    Mat2 inverse() const;
    V2 operator()(const V2 &v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    friend Mat2 operator*(const Mat2 &m, const Mat2 &n)
    {
        return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
    }
    friend bool operator==(const Mat2 &m, const Mat2 &n)
    {
        return m.a == n.a && m.b == n.b && m.c == n.c && m.d == n.d;
    }
    /// Matrix with columns u, v.
    static Mat2 columns(const V2 &u, const V2 &v) { return {u.x, v.x, u.y, v.y}; }
};

inline Mat2 Mat2::inverse() const
{
    Real D = det();
    if (is_zero(D))
        throw std::domain_error("singular matrix");
    return {d / D, -b / D, -c / D, a / D};
}

} // namespace chabauty

#endif
