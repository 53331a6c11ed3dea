#ifndef CHABAUTY_KERNELS_HPP
#define CHABAUTY_KERNELS_HPP

#include <complex>
#include <vector>

// Hot loops. Each kernel has a serial reference and an OpenMP version that
// must agree bit for bit (lattice sums) or exactly (max-of-min distances).

namespace chabauty::kernels
{

using cplx = std::complex<double>;

struct PowerSums
{
    cplx s4, s6; ///< sums of z^-4 and z^-6 over nonzero lattice points in the disc
    long count = 0;
};

struct P3
{
    double x = 0, y = 0, t = 0;
};

enum class Space
{
    complex_plane,
    heisenberg,
    aff
};

/// Size of a point: |z|, |z| + |t|, or max(|log lambda|, |tau|) with (x, y) = (log lambda, tau).
double gauge(Space space, const P3 &p);
/// Distance gauge between points; on H this is gauge(a^-1 b).
double delta(Space space, const P3 &a, const P3 &b);

namespace serial
{
PowerSums lattice_power_sums(cplx w1, cplx w2, double radius);
/// max over a in from with gauge(a) <= R of min over b in to of delta(a, b).
double directed_deviation(const std::vector<P3> &from, const std::vector<P3> &to, double R, Space space);
} // namespace serial

namespace omp
{
PowerSums lattice_power_sums(cplx w1, cplx w2, double radius);
double directed_deviation(const std::vector<P3> &from, const std::vector<P3> &to, double R, Space space);
} // namespace omp

} // namespace chabauty::kernels

#endif
