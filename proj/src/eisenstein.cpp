#include "chabauty/eisenstein.hpp"

#include "chabauty/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chabauty
{

namespace
{

using std::numbers::pi;

double divisor_sum(long n, int k)
{
    double s = 0;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d)
            continue;
        s += std::pow(static_cast<double>(d), k);
        long e = n / d;
        if (e != d)
            s += std::pow(static_cast<double>(e), k);
    }
    return s;
}

// sum_{n>=1} n^-k by Euler-Maclaurin from N = 10
double zeta_em(int k)
{
    const int N = 10;
    double s = 0;
    for (int n = N - 1; n >= 1; --n)
        s += std::pow(n, -k);
    double Nd = N;
    s += std::pow(Nd, 1 - k) / (k - 1) + 0.5 * std::pow(Nd, -k);
    const double B[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730};
    double fact = 1;   // (2j)!
    double rising = 1; // k (k+1) ... (k+2j-2)
    for (int j = 1; j <= 6; ++j) {
        fact *= (2 * j - 1) * (2 * j);
        rising *= (j == 1) ? k : (k + 2 * j - 3) * (k + 2 * j - 2);
        s += B[j - 1] / fact * rising * std::pow(Nd, -k - 2 * j + 1);
    }
    return s;
}

} // namespace

std::pair<cplx, cplx> cyclic_closed_form(cplx w)
{
    cplx w2 = w * w;
    return {4 * std::pow(pi, 4) / (3.0 * w2 * w2), 8 * std::pow(pi, 6) / (27.0 * w2 * w2 * w2)};
}

TauSeries eisenstein_tau(cplx tau)
{
    if (!(tau.imag() > 0))
        throw std::domain_error("tau must lie in the upper half plane");
    const cplx twopii(0, 2 * pi);
    cplx q = std::exp(twopii * tau);
    cplx e4 = 1, e6 = 1, de4 = 0, de6 = 0;
    cplx qn = 1;
    for (long n = 1; n < 400; ++n) {
        qn *= q;
        double s3 = divisor_sum(n, 3), s5 = divisor_sum(n, 5);
        cplx t4 = 240.0 * s3 * qn, t6 = -504.0 * s5 * qn;
        e4 += t4;
        e6 += t6;
        de4 += static_cast<double>(n) * t4;
        de6 += static_cast<double>(n) * t6;
        if (std::abs(qn) * s5 * n < 1e-18)
            break;
    }
    double c4 = 4 * std::pow(pi, 4) / 3, c6 = 8 * std::pow(pi, 6) / 27;
    return {c4 * e4, c6 * e6, c4 * twopii * de4, c6 * twopii * de6};
}

cplx j_invariant(cplx tau)
{
    TauSeries s = eisenstein_tau(tau);
    cplx a3 = s.g2 * s.g2 * s.g2;
    return 1728.0 * a3 / (a3 - 27.0 * s.g3 * s.g3);
}

EisensteinResult eisenstein_invariants(const SubgroupC &C, EisensteinMode mode)
{
    EisensteinResult res;
    res.mode = mode;
    bool direct = mode.kind == EisensteinMode::Kind::direct;
    if (direct && !(mode.radius >= 1))
        throw std::invalid_argument("direct mode needs radius >= 1");
    if (auto c = std::get_if<CyclicC>(&C)) {
        cplx w = c->w.c();
        double s4, s6;
        if (direct) {
            long N = static_cast<long>(std::floor(mode.radius));
            s4 = s6 = 0;
            for (long n = N; n >= 1; --n) {
                double x = static_cast<double>(n);
                s4 += 1 / (x * x * x * x);
                s6 += 1 / (x * x * x * x * x * x);
            }
            double Nd = static_cast<double>(N);
            res.g2_bound = 120 * std::pow(Nd, -3) / 3 / std::pow(std::abs(w), 4);
            res.g3_bound = 280 * std::pow(Nd, -5) / 5 / std::pow(std::abs(w), 6);
        } else {
            s4 = zeta_em(4);
            s6 = zeta_em(6);
        }
        cplx w2 = w * w;
        res.g2 = 120.0 * s4 / (w2 * w2);
        res.g3 = 280.0 * s6 / (w2 * w2 * w2);
    } else if (auto l = std::get_if<LatticeC>(&C)) {
        cplx w1 = l->basis.w1.c(), w2 = l->basis.w2.c();
        if (direct) {
            double R = mode.radius * std::abs(w1);
            kernels::PowerSums ps = kernels::omp::lattice_power_sums(w1, w2, R);
            res.g2 = 60.0 * ps.s4;
            res.g3 = 140.0 * ps.s6;
            double A = (std::conj(w1) * w2).imag();
            double Rd = std::max(R - std::abs(w1) - std::abs(w2), 1e-300);
            res.g2_bound = 60 * pi / (A * Rd * Rd);
            res.g3_bound = 140 * pi / (2 * A * Rd * Rd * Rd * Rd);
        } else {
            TauSeries s = eisenstein_tau(w2 / w1);
            cplx u = 1.0 / (w1 * w1);
            res.g2 = s.g2 * u * u;
            res.g3 = s.g3 * u * u * u;
        }
    } else {
        throw std::invalid_argument("Eisenstein invariants need a lattice or a cyclic subgroup");
    }
    res.delta = res.g2 * res.g2 * res.g2 - 27.0 * res.g3 * res.g3;
    return res;
}

} // namespace chabauty
