#include "chabauty/real.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace chabauty
{

Real Real::frac(long p, long q)
{
    if (q == 0)
        throw std::domain_error("zero denominator");
    mpq_class r(p, q);
    r.canonicalize();
    return Real(r);
}

const mpq_class &Real::exact() const
{
    if (!is_exact())
        throw std::logic_error("value is not exact");
    return std::get<0>(v_);
}

double Real::to_double() const
{
    return is_exact() ? std::get<0>(v_).get_d() : std::get<1>(v_);
}

Real Real::operator-() const
{
    if (is_exact())
        return Real(mpq_class(-std::get<0>(v_)));
    return Real(-std::get<1>(v_));
}

#define CHABAUTY_REAL_OP(OP)                                                   \
    Real &Real::operator OP##=(const Real &o)                                  \
    {                                                                          \
        if (is_exact() && o.is_exact())                                        \
            std::get<0>(v_) OP## = std::get<0>(o.v_);                          \
        else                                                                   \
            v_ = to_double() OP o.to_double();                                 \
        return *this;                                                          \
    }

CHABAUTY_REAL_OP(+)
CHABAUTY_REAL_OP(-)
CHABAUTY_REAL_OP(*)
#undef CHABAUTY_REAL_OP

Real &Real::operator/=(const Real &o)
{
    if (is_exact() && o.is_exact()) {
        if (sgn(std::get<0>(o.v_)) == 0)
            throw std::domain_error("exact division by zero");
        std::get<0>(v_) /= std::get<0>(o.v_);
    } else {
        v_ = to_double() / o.to_double();
    }
    return *this;
}

bool operator==(const Real &a, const Real &b)
{
    if (a.is_exact() && b.is_exact())
        return std::get<0>(a.v_) == std::get<0>(b.v_);
    return a.to_double() == b.to_double();
}

std::partial_ordering operator<=>(const Real &a, const Real &b)
{
    if (a.is_exact() && b.is_exact()) {
        int c = cmp(std::get<0>(a.v_), std::get<0>(b.v_));
        return c < 0 ? std::partial_ordering::less
                     : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
    }
    return a.to_double() <=> b.to_double();
}

std::string Real::str() const
{
    if (is_exact())
        return std::get<0>(v_).get_str();
    double x = std::get<1>(v_);
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    std::string s(buf, res.ptr);
    if (s.find_first_of(".e") == std::string::npos)
        s += ".0";
    return s;
}

Real Real::parse(const std::string &s)
{
    if (s.empty())
        throw std::invalid_argument("empty number");
    if (s == "inf")
        return Real(std::numeric_limits<double>::infinity());
    if (s == "-inf")
        return Real(-std::numeric_limits<double>::infinity());
    if (s.find_first_of(".eEn") != std::string::npos) {
        double x = 0;
        auto res = std::from_chars(s.data(), s.data() + s.size(), x);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size())
            throw std::invalid_argument("bad decimal: " + s);
        return Real(x);
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        bool ok = (c >= '0' && c <= '9') || c == '/' || (c == '-' && (i == 0 || s[i - 1] == '/'));
        if (!ok)
            throw std::invalid_argument("bad rational: " + s);
    }
    mpq_class q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0)
        throw std::invalid_argument("bad rational: " + s);
    return Real(q);
}

int sign(const Real &x)
{
    if (x.is_exact())
        return sgn(x.exact());
    double d = x.to_double();
    return (d > 0) - (d < 0);
}

bool is_zero(const Real &x)
{
    return sign(x) == 0;
}

Real abs(const Real &x)
{
    return sign(x) < 0 ? -x : x;
}

Real floor(const Real &x)
{
    if (x.is_exact()) {
        mpz_class f;
        mpz_fdiv_q(f.get_mpz_t(), x.exact().get_num_mpz_t(), x.exact().get_den_mpz_t());
        return Real(f);
    }
    return Real(std::floor(x.to_double()));
}

Real round_half_up(const Real &x)
{
    return floor(x + Real::frac(1, 2));
}

bool is_integer(const Real &x)
{
    if (x.is_exact())
        return x.exact().get_den() == 1;
    double d = x.to_double();
    return std::isfinite(d) && std::abs(d - std::round(d)) <= 1e-9 * std::max(1.0, std::abs(d));
}

Real sqrt(const Real &x)
{
    if (x.is_exact() && sgn(x.exact()) >= 0) {
        const mpq_class &q = x.exact();
        if (mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t())) {
            mpz_class n, d;
            mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
            mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
            return Real(mpq_class(n, d));
        }
    }
    return Real(std::sqrt(x.to_double()));
}

Real mod(const Real &x, const Real &m)
{
    Real r = x - m * floor(x / m);
    if (!r.is_exact()) {
        double d = r.to_double(), md = m.to_double();
        if (d >= md || d < 0)
            d = 0;
        return Real(d);
    }
    return r;
}

Real to_inexact(const Real &x)
{
    return Real(x.to_double());
}

int sign_tol(const Real &x, double scale, double tol)
{
    if (x.is_exact())
        return sign(x);
    double d = x.to_double();
    if (std::abs(d) <= tol * scale)
        return 0;
    return d > 0 ? 1 : -1;
}

bool rationalize(double x, double tol, long max_den, long &p, long &q)
{
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double r = x;
    for (int it = 0; it < 64; ++it) {
        double a = std::floor(r);
        if (std::abs(a) > 1e15)
            return false;
        long ai = static_cast<long>(a);
        long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > max_den)
            return false;
        if (std::abs(x - static_cast<double>(p2) / q2) <= tol) {
            p = p2;
            q = q2;
            return true;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double f = r - a;
        if (f == 0)
            return false;
        r = 1 / f;
    }
    return false;
}

} // namespace chabauty
