#include "kernel_detail.hpp"

#include <vector>

namespace chabauty::kernels::omp
{

PowerSums lattice_power_sums(cplx w1, cplx w2, double radius)
{
    long N = detail::row_count(w1, w2, radius);
    std::vector<PowerSums> rows(static_cast<std::size_t>(2 * N + 1));
#pragma omp parallel for schedule(dynamic, 16)
    for (long n = -N; n <= N; ++n)
        rows[static_cast<std::size_t>(n + N)] = detail::row_sum(w1, w2, radius, n);
    // ordered reduction keeps the result independent of the schedule
    PowerSums total;
    for (const PowerSums &r : rows) {
        total.s4 += r.s4;
        total.s6 += r.s6;
        total.count += r.count;
    }
    return total;
}

double directed_deviation(const std::vector<P3> &from, const std::vector<P3> &to, double R, Space space)
{
    if (to.empty())
        return std::numeric_limits<double>::infinity();
    detail::GridIndex index(to, space);
    double worst = 0;
    long n = static_cast<long>(from.size());
#pragma omp parallel for reduction(max : worst) schedule(dynamic, 64)
    for (long i = 0; i < n; ++i) {
        const P3 &a = from[static_cast<std::size_t>(i)];
        if (gauge(space, a) > R)
            continue;
        worst = std::max(worst, index.nearest(a));
    }
    return worst;
}

} // namespace chabauty::kernels::omp
