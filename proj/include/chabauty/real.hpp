#ifndef CHABAUTY_REAL_HPP
#define CHABAUTY_REAL_HPP

#include <gmpxx.h>

#include <compare>
#include <string>
#include <variant>

namespace chabauty
{

/// A scalar that is either an exact rational or a binary64 value.
/// Arithmetic between two exact values stays exact; anything touching a
/// double degrades to double.
class Real
{
public:
    Real() : v_(mpq_class(0)) {}
    Real(int x) : v_(mpq_class(x)) {}
    Real(long x) : v_(mpq_class(x)) {}
    Real(long long x) : v_(mpq_class(static_cast<long>(x))) {}
    Real(double x) : v_(x) {}
    Real(const mpq_class &q) : v_(q) { std::get<0>(v_).canonicalize(); }
    Real(const mpz_class &z) : v_(mpq_class(z)) {}

    static Real frac(long p, long q);

    bool is_exact() const { return v_.index() == 0; }
    const mpq_class &exact() const;
    double to_double() const;

    Real operator-() const;
    Real &operator+=(const Real &o);
    Real &operator-=(const Real &o);
    Real &operator*=(const Real &o);
    Real &operator/=(const Real &o);

    friend Real operator+(Real a, const Real &b) { return a += b; }
    friend Real operator-(Real a, const Real &b) { return a -= b; }
    friend Real operator*(Real a, const Real &b) { return a *= b; }
    friend Real operator/(Real a, const Real &b) { return a /= b; }

    friend bool operator==(const Real &a, const Real &b);
    friend std::partial_ordering operator<=>(const Real &a, const Real &b);

    /// Exact values print as "p/q" or "p"; doubles print shortest
    /// round-trip with a forced decimal point.
    std::string str() const;
    static Real parse(const std::string &s);

private:
    std::variant<mpq_class, double> v_;
};

int sign(const Real &x);
bool is_zero(const Real &x);
Real abs(const Real &x);
Real floor(const Real &x);
Real round_half_up(const Real &x);
bool is_integer(const Real &x);
/// Exact when both numerator and denominator are perfect squares.
Real sqrt(const Real &x);
/// x mod m into [0, m); m > 0.
Real mod(const Real &x, const Real &m);
Real to_inexact(const Real &x);

/// Sign with a tolerance band for doubles: |x| <= tol * scale counts as zero.
int sign_tol(const Real &x, double scale, double tol = 1e-12);

/// Rational approximation with bounded denominator (continued fractions).
/// Returns false when no convergent with denominator <= max_den is within tol.
bool rationalize(double x, double tol, long max_den, long &p, long &q);

} // namespace chabauty

#endif
