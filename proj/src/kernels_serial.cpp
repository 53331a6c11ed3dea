#include "kernel_detail.hpp"

namespace chabauty::kernels
{

double gauge(Space space, const P3 &p)
{
    switch (space) {
    case Space::complex_plane:
        return std::hypot(p.x, p.y);
    case Space::heisenberg:
        return std::hypot(p.x, p.y) + std::abs(p.t);
    case Space::aff:
        return std::max(std::abs(p.x), std::abs(p.y));
    }
    return 0;
}

double delta(Space space, const P3 &a, const P3 &b)
{
    switch (space) {
    case Space::complex_plane:
        return std::hypot(b.x - a.x, b.y - a.y);
    case Space::heisenberg:
        return detail::heis_delta(a, b);
    case Space::aff:
        return std::max(std::abs(b.x - a.x), std::abs(b.y - a.y));
    }
    return 0;
}

namespace serial
{

PowerSums lattice_power_sums(cplx w1, cplx w2, double radius)
{
    long N = detail::row_count(w1, w2, radius);
    PowerSums total;
    for (long n = -N; n <= N; ++n) {
        PowerSums r = detail::row_sum(w1, w2, radius, n);
        total.s4 += r.s4;
        total.s6 += r.s6;
        total.count += r.count;
    }
    return total;
}

double directed_deviation(const std::vector<P3> &from, const std::vector<P3> &to, double R, Space space)
{
    double worst = 0;
    for (const P3 &a : from) {
        if (gauge(space, a) > R)
            continue;
        double best = std::numeric_limits<double>::infinity();
        for (const P3 &b : to)
            best = std::min(best, delta(space, a, b));
        worst = std::max(worst, best);
    }
    return worst;
}

} // namespace serial
} // namespace chabauty::kernels
