#ifndef CHABAUTY_KERNEL_DETAIL_HPP
#define CHABAUTY_KERNEL_DETAIL_HPP

#include "chabauty/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace chabauty::kernels::detail
{

inline long row_count(cplx w1, cplx w2, double radius)
{
    double A = std::abs((std::conj(w1) * w2).imag());
    return static_cast<long>(std::ceil(radius * std::abs(w1) / A)) + 1;
}

/// Sum over the row {m w1 + n w2} inside the disc, m ascending.
inline PowerSums row_sum(cplx w1, cplx w2, double radius, long n)
{
    PowerSums acc;
    cplx base = static_cast<double>(n) * w2;
    double a = std::norm(w1), b = (std::conj(w1) * base).real(), c = std::norm(base) - radius * radius;
    double disc = b * b - a * c;
    if (disc < 0)
        return acc;
    long m0 = static_cast<long>(std::floor((-b - std::sqrt(disc)) / a)) - 1;
    long m1 = static_cast<long>(std::ceil((-b + std::sqrt(disc)) / a)) + 1;
    double r2 = radius * radius;
    for (long m = m0; m <= m1; ++m) {
        cplx z = static_cast<double>(m) * w1 + base;
        double nz = std::norm(z);
        if (nz > r2 || (m == 0 && n == 0))
            continue;
        cplx u = 1.0 / z;
        cplx u2 = u * u;
        cplx u4 = u2 * u2;
        acc.s4 += u4;
        acc.s6 += u4 * u2;
        ++acc.count;
    }
    return acc;
}

inline double heis_delta(const P3 &a, const P3 &b)
{
    double dx = b.x - a.x, dy = b.y - a.y;
    double shear = 0.5 * (a.x * b.y - a.y * b.x);
    return std::hypot(dx, dy) + std::abs(b.t - a.t - shear);
}

/// Uniform grid over a point cloud for nearest-point queries under delta.
class GridIndex
{
public:
    GridIndex(const std::vector<P3> &pts, Space space) : pts_(pts), space_(space)
    {
        lo_[0] = lo_[1] = lo_[2] = std::numeric_limits<double>::infinity();
        double hi[3] = {-lo_[0], -lo_[0], -lo_[0]};
        for (const P3 &p : pts) {
            const double c[3] = {p.x, p.y, height(p)};
            for (int k = 0; k < 3; ++k) {
                lo_[k] = std::min(lo_[k], c[k]);
                hi[k] = std::max(hi[k], c[k]);
            }
        }
        double ext[3];
        int live = 0;
        double vol = 1;
        for (int k = 0; k < 3; ++k) {
            ext[k] = hi[k] - lo_[k];
            if (ext[k] > 1e-12) {
                ++live;
                vol *= ext[k];
            }
        }
        double n = static_cast<double>(std::max<std::size_t>(pts.size(), 1));
        h_ = live == 0 ? 1.0 : std::pow(vol / n, 1.0 / live) * 1.5;
        if (!(h_ > 0))
            h_ = 1.0;
        for (;;) {
            for (int k = 0; k < 3; ++k)
                dim_[k] = std::max<long>(1, static_cast<long>(ext[k] / h_) + 1);
            if (static_cast<double>(dim_[0]) * dim_[1] * dim_[2] <= 8 * n + 64)
                break;
            h_ *= 1.5;
        }
        std::vector<long> count(static_cast<std::size_t>(dim_[0] * dim_[1] * dim_[2]) + 1, 0);
        cell_of_.resize(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            cell_of_[i] = flat(cell_coord(pts[i]));
            ++count[cell_of_[i] + 1];
        }
        for (std::size_t c = 1; c < count.size(); ++c)
            count[c] += count[c - 1];
        start_ = count;
        order_.resize(pts.size());
        std::vector<long> fill(start_.begin(), start_.end() - 1);
        for (std::size_t i = 0; i < pts.size(); ++i)
            order_[fill[cell_of_[i]]++] = i;
    }

    double nearest(const P3 &q) const
    {
        auto c = cell_coord_unclamped(q);
        double best = std::numeric_limits<double>::infinity();
        double zq = std::hypot(q.x, q.y);
        double slope = space_ == Space::heisenberg ? std::min(1.0, 2.0 / std::max(zq, 1e-300)) : 1.0;
        long kmax = 0;
        for (int k = 0; k < 3; ++k)
            kmax = std::max({kmax, std::abs(c[k]), std::abs(c[k] - (dim_[k] - 1))});
        for (long ring = 0; ring <= kmax; ++ring) {
            visit_shell(c, ring, q, best);
            if (best <= static_cast<double>(ring) * h_ * slope)
                break;
        }
        return best;
    }

private:
    // only the Heisenberg gauge sees the third coordinate
    double height(const P3 &p) const { return space_ == Space::heisenberg ? p.t : 0.0; }

    std::array<long, 3> cell_coord_unclamped(const P3 &p) const
    {
        return {static_cast<long>(std::floor((p.x - lo_[0]) / h_)), static_cast<long>(std::floor((p.y - lo_[1]) / h_)),
                static_cast<long>(std::floor((height(p) - lo_[2]) / h_))};
    }
    std::array<long, 3> cell_coord(const P3 &p) const
    {
        auto c = cell_coord_unclamped(p);
        for (int k = 0; k < 3; ++k)
            c[k] = std::clamp<long>(c[k], 0, dim_[k] - 1);
        return c;
    }
    long flat(const std::array<long, 3> &c) const { return (c[2] * dim_[1] + c[1]) * dim_[0] + c[0]; }

    void scan_cell(long i, long j, long k, const P3 &q, double &best) const
    {
        long f = flat({i, j, k});
        for (long s = start_[f]; s < start_[f + 1]; ++s) {
            const P3 &p = pts_[order_[s]];
            double d = space_ == Space::heisenberg ? heis_delta(q, p) : delta(space_, q, p);
            best = std::min(best, d);
        }
    }

    void visit_shell(const std::array<long, 3> &c, long r, const P3 &q, double &best) const
    {
        long lo[3], hi[3];
        for (int k = 0; k < 3; ++k) {
            lo[k] = std::max<long>(0, c[k] - r);
            hi[k] = std::min<long>(dim_[k] - 1, c[k] + r);
            if (lo[k] > hi[k])
                return;
        }
        for (long k = lo[2]; k <= hi[2]; ++k)
            for (long j = lo[1]; j <= hi[1]; ++j) {
                bool edge = std::abs(k - c[2]) == r || std::abs(j - c[1]) == r;
                if (edge) {
                    for (long i = lo[0]; i <= hi[0]; ++i)
                        scan_cell(i, j, k, q, best);
                } else {
                    if (c[0] - r >= 0 && c[0] - r < dim_[0])
                        scan_cell(c[0] - r, j, k, q, best);
                    if (r > 0 && c[0] + r >= 0 && c[0] + r < dim_[0])
                        scan_cell(c[0] + r, j, k, q, best);
                }
            }
    }

    const std::vector<P3> &pts_;
    Space space_;
    double lo_[3];
    double h_;
    long dim_[3];
    std::vector<long> cell_of_, start_;
    std::vector<std::size_t> order_;
};

} // namespace chabauty::kernels::detail

#endif
