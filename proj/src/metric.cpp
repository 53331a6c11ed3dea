#include "chabauty/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace chabauty
{

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_nonempty(const SampledSet &s)
{
    if (s.points.empty())
        throw std::invalid_argument("sample must contain at least the identity");
}

} // namespace

double sample_margin(double R)
{
    return 0.5 + 0.1 * R;
}

double directed_deviation(const SampledSet &A, const SampledSet &B, double R, AmbientSpace space)
{
    if (!B.exact)
        return kernels::omp::directed_deviation(A.points, B.points, R, space);
    double worst = 0;
    long n = static_cast<long>(A.points.size());
#pragma omp parallel for reduction(max : worst) schedule(dynamic, 64)
    for (long i = 0; i < n; ++i) {
        const P3 &a = A.points[static_cast<std::size_t>(i)];
        if (kernels::gauge(space, a) > R)
            continue;
        worst = std::max(worst, B.exact(a));
    }
    return worst;
}

double ball_distance(const SampledSet &C, const SampledSet &D, const MetricConfig &cfg, AmbientSpace space)
{
    require_nonempty(C);
    require_nonempty(D);
    if (!(cfg.R > 0) || !(cfg.spacing > 0))
        throw std::invalid_argument("metric config needs positive radius and spacing");
    return std::max(directed_deviation(C, D, cfg.R, space), directed_deviation(D, C, cfg.R, space));
}

double min_delta(const std::vector<P3> &sample, AmbientSpace space)
{
    double best = kInf;
    for (const P3 &p : sample) {
        double g = kernels::gauge(space, p);
        if (g > 0)
            best = std::min(best, g);
    }
    return best;
}

P3 to_p3(cplx z)
{
    return {z.real(), z.imag(), 0};
}

P3 to_p3(const AffElement &g)
{
    return {std::log(g.lambda), g.tau, 0};
}

SampledSet sampled_c(const SubgroupC &C, double R, double spacing)
{
    SampledSet s;
    for (cplx z : sample_ball_c(C, R, spacing))
        s.points.push_back(to_p3(z));
    s.exact = [C](const P3 &p) { return distance_c(C, cplx(p.x, p.y)); };
    return s;
}

SampledSet sampled_aff(const SubgroupAff &C, double R, double spacing)
{
    SampledSet s;
    for (const AffElement &g : aff_sample_ball(C, R, spacing))
        s.points.push_back(to_p3(g));
    return s;
}

std::string verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::converges:
        return "converges";
    case Verdict::diverges:
        return "diverges";
    case Verdict::inconclusive:
        return "inconclusive";
    }
    return "";
}

ConvergenceReport converges_to(const FamilySampler &family, const TargetSampler &target,
                               const std::vector<MetricConfig> &schedule, const std::vector<long> &indices,
                               int tail, AmbientSpace space)
{
    if (schedule.empty() || indices.empty() || tail < 1)
        throw std::invalid_argument("converges_to needs a schedule, indices and a positive tail");
    ConvergenceReport rep;
    bool all_below = true, some_stuck = false;
    std::size_t t = std::min(static_cast<std::size_t>(tail), indices.size());
    for (const MetricConfig &cfg : schedule) {
        SampledSet D = target(cfg);
        std::vector<double> ds;
        for (long k : indices) {
            double d = ball_distance(family(k, cfg), D, cfg, space);
            ds.push_back(d);
            rep.trace.push_back({cfg.R, cfg.eps, k, d});
        }
        auto first = ds.end() - static_cast<std::ptrdiff_t>(t);
        bool below = std::all_of(first, ds.end(), [&](double d) { return d < cfg.eps; });
        bool above = std::all_of(first, ds.end(), [&](double d) { return d >= cfg.eps; });
        all_below = all_below && below;
        if (above && ds.back() >= *first)
            some_stuck = true;
    }
    rep.verdict = all_below ? Verdict::converges : some_stuck ? Verdict::diverges : Verdict::inconclusive;
    return rep;
}

} // namespace chabauty
