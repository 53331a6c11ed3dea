#include "chabauty/heis_subgroups.hpp"
#include "chabauty/metric.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace chabauty;

namespace
{

SampledSet raw(std::vector<P3> pts)
{
    return SampledSet{std::move(pts), {}};
}

std::vector<P3> integers_plus(double off, int N)
{
    std::vector<P3> out;
    for (int k = -N; k <= N; ++k)
        out.push_back({k + off, 0, 0});
    return out;
}

} // namespace

TEST_CASE("ball distance")
{
    MetricConfig cfg{3, 0.05, 1e-2};
    SampledSet Z = raw(integers_plus(0, 6));
    CHECK(ball_distance(Z, Z, cfg, AmbientSpace::complex_plane) == 0);

    // nearest-point brute force for Z versus Z + 0.1 on the ball of radius 3
    SampledSet Zs = raw(integers_plus(0.1, 6));
    double brute = 0;
    for (const auto *side : {&Z, &Zs}) {
        const auto &other = side == &Z ? Zs : Z;
        for (const P3 &p : side->points) {
            if (std::abs(p.x) > 3)
                continue;
            double best = INFINITY;
            for (const P3 &q : other.points)
                best = std::min(best, std::abs(p.x - q.x));
            brute = std::max(brute, best);
        }
    }
    double d = ball_distance(Z, Zs, cfg, AmbientSpace::complex_plane);
    CHECK(d == doctest::Approx(brute));
    CHECK(d == doctest::Approx(0.1));
    CHECK(ball_distance(Zs, Z, cfg, AmbientSpace::complex_plane) == d);

    SampledSet e = raw({P3{}});
    SampledSet five = sampled_c(make_cyclic(V2{5, 0}), 3.5, 0.05);
    CHECK(ball_distance(e, five, cfg, AmbientSpace::complex_plane) == 0);
    CHECK_THROWS(ball_distance(raw({}), e, cfg, AmbientSpace::complex_plane));
}

TEST_CASE("exact oracles match the samples")
{
    // directed deviations against a densely sampled set and against the oracle agree within the pitch
    MetricConfig cfg{4, 0.05, 1e-2};
    SubgroupC L = make_lattice(V2{1, 0}, V2{0.3, 1.1});
    SubgroupC line = make_line(V2{1, 1});
    SampledSet a = sampled_c(L, 5, 0.05);
    SampledSet b = sampled_c(line, 5, 0.01);
    SampledSet bn = b;
    bn.exact = nullptr;
    double with = directed_deviation(a, b, cfg.R, AmbientSpace::complex_plane);
    double without = directed_deviation(a, bn, cfg.R, AmbientSpace::complex_plane);
    CHECK(std::abs(with - without) <= 0.01);
}

TEST_CASE("min delta")
{
    CHECK(std::isinf(min_delta({P3{}}, AmbientSpace::complex_plane)));
    CHECK(min_delta(sampled_c(make_cyclic(V2{0.7, 0}), 2, 0.05).points, AmbientSpace::complex_plane) ==
          doctest::Approx(0.7));
    // generators and their short products all have gauge >= 1 in L1
    CHECK(min_delta(sampled_h(lambda_n(1), 2, 0.05).points, AmbientSpace::heisenberg) == doctest::Approx(1.0));
}

TEST_CASE("quasi-metric on H")
{
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> U(-3, 3);
    for (int k = 0; k < 1000; ++k) {
        P3 a{U(rng), U(rng), U(rng)}, b{U(rng), U(rng), U(rng)};
        double d = kernels::delta(AmbientSpace::heisenberg, a, b);
        CHECK(d == kernels::delta(AmbientSpace::heisenberg, b, a));
        CHECK(d > 0);
        CHECK(kernels::delta(AmbientSpace::heisenberg, a, a) == 0);
    }
}

TEST_CASE("serial and parallel kernels agree")
{
    std::mt19937_64 rng(52);
    std::uniform_real_distribution<double> U(-3, 3);
    std::vector<P3> a(3000), b(2000);
    for (P3 &p : a)
        p = {U(rng), U(rng), U(rng)};
    for (P3 &p : b)
        p = {U(rng), U(rng), U(rng)};
    for (auto space : {AmbientSpace::complex_plane, AmbientSpace::heisenberg, AmbientSpace::aff})
        CHECK(kernels::serial::directed_deviation(a, b, 2.5, space) ==
              kernels::omp::directed_deviation(a, b, 2.5, space));
    auto s = kernels::serial::lattice_power_sums({1, 0}, {0.2, 1.3}, 300);
    auto o = kernels::omp::lattice_power_sums({1, 0}, {0.2, 1.3}, 300);
    CHECK(s.count == o.count);
    CHECK(std::abs(s.s4 - o.s4) < 1e-12 * std::abs(s.s4));
    CHECK(std::abs(s.s6 - o.s6) < 1e-12 * std::abs(s.s6));
}

TEST_CASE("convergence oracle")
{
    std::vector<MetricConfig> sched{{2, 0.05, 1e-2}, {5, 0.05, 1e-2}};
    SubgroupC L = make_lattice(V2{1, 0}, V2{0, 1});
    TargetSampler tgt = [&](const MetricConfig &c) { return sampled_c(L, c.R + sample_margin(c.R), c.spacing); };
    FamilySampler same = [&](long, const MetricConfig &c) {
        return sampled_c(L, c.R + sample_margin(c.R), c.spacing);
    };
    ConvergenceReport r = converges_to(same, tgt, sched, {1, 2, 3, 4});
    CHECK(r.verdict == Verdict::converges);
    for (const TraceEntry &e : r.trace)
        CHECK(e.distance == 0);

    FamilySampler off = [&](long, const MetricConfig &c) {
        return sampled_c(make_lattice(V2{1, 0}, V2{0, 2}), c.R + sample_margin(c.R), c.spacing);
    };
    CHECK(converges_to(off, tgt, sched, {1, 2, 3, 4}).verdict == Verdict::diverges);

    FamilySampler shrink = [&](long k, const MetricConfig &c) {
        double s = 1.0 + 1.0 / double(k);
        return sampled_c(make_lattice(V2{s, 0}, V2{0, s}), c.R + sample_margin(c.R), c.spacing);
    };
    CHECK(converges_to(shrink, tgt, sched, {1, 2, 3, 1000, 2000, 4000}).verdict == Verdict::converges);
}

TEST_CASE("gauge consistency under refinement")
{
    MetricConfig coarse{4, 0.1, 1e-2}, fine{4, 0.05, 1e-2};
    SubgroupC A = make_lattice(V2{1, 0}, V2{0.4, 0.9});
    SubgroupC B = make_line_cyclic(V2{1, 0}, 0.9);
    auto dist = [&](const MetricConfig &c) {
        double Rs = c.R + sample_margin(c.R);
        return ball_distance(sampled_c(A, Rs, c.spacing), sampled_c(B, Rs, c.spacing), c, AmbientSpace::complex_plane);
    };
    CHECK(dist(fine) <= dist(coarse) + coarse.spacing);
}
