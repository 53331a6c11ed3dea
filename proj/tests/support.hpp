#ifndef CHABAUTY_TEST_SUPPORT_HPP
#define CHABAUTY_TEST_SUPPORT_HPP

#include "chabauty/heis.hpp"

#include <random>

namespace testing_support
{

using namespace chabauty;

struct Rng
{
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen); }
    Real rational(long num = 12, long den = 7)
    {
        return Real::frac(integer(-num, num), integer(1, den));
    }
    HeisPoint heis_double(double s = 3) { return {uniform(-s, s), uniform(-s, s), uniform(-s, s)}; }
    HeisPoint heis_rational() { return {rational(), rational(), rational()}; }
    Mat2 invertible_double()
    {
        for (;;) {
            Mat2 g{uniform(-2, 2), uniform(-2, 2), uniform(-2, 2), uniform(-2, 2)};
            if (std::abs(g.det().to_double()) > 0.2)
                return g;
        }
    }
    Mat2 invertible_rational()
    {
        for (;;) {
            Mat2 g{rational(4, 3), rational(4, 3), rational(4, 3), rational(4, 3)};
            if (!is_zero(g.det()))
                return g;
        }
    }
};

inline double gap(const HeisPoint &a, const HeisPoint &b)
{
    return std::abs((a.x - b.x).to_double()) + std::abs((a.y - b.y).to_double()) + std::abs((a.t - b.t).to_double());
}

} // namespace testing_support

#endif
