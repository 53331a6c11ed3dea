#ifndef CHABAUTY_METRIC_HPP
#define CHABAUTY_METRIC_HPP

#include "chabauty/aff.hpp"
#include "chabauty/complex_subgroups.hpp"
#include "chabauty/kernels.hpp"

#include <functional>
#include <string>
#include <vector>

namespace chabauty
{

using kernels::P3;
using AmbientSpace = kernels::Space;

struct MetricConfig
{
    double R = 10;
    double spacing = 0.05;
    double eps = 1e-2;
};

/// Finite trace of a closed subgroup. When `exact` is set it returns the
/// true distance from a point to the whole subgroup and is used in place of
/// the samples on the receiving side.
struct SampledSet
{
    std::vector<P3> points;
    std::function<double(const P3 &)> exact;
};

/// Extra radius to sample a target with, so nearest points just outside
/// the ball are seen.
double sample_margin(double R);

/// max over x in A within the ball of the distance to B.
double directed_deviation(const SampledSet &A, const SampledSet &B, double R, AmbientSpace space);
/// Symmetric ball-restricted Hausdorff gauge.
double ball_distance(const SampledSet &C, const SampledSet &D, const MetricConfig &cfg, AmbientSpace space);
/// Smallest displacement of a sampled non-identity element; +inf when none.
double min_delta(const std::vector<P3> &sample, AmbientSpace space);

SampledSet sampled_c(const SubgroupC &C, double R, double spacing);
SampledSet sampled_aff(const SubgroupAff &C, double R, double spacing);
P3 to_p3(cplx z);
P3 to_p3(const AffElement &g);

enum class Verdict
{
    converges,
    diverges,
    inconclusive
};
std::string verdict_name(Verdict v);

struct TraceEntry
{
    double R, eps;
    long index;
    double distance;
};

struct ConvergenceReport
{
    Verdict verdict = Verdict::inconclusive;
    std::vector<TraceEntry> trace;
};

using FamilySampler = std::function<SampledSet(long index, const MetricConfig &cfg)>;
using TargetSampler = std::function<SampledSet(const MetricConfig &cfg)>;

/// Evaluates ball_distance(C_k, target) for every k in indices and every cfg.
/// Converges when, for each cfg, the last `tail` distances are below eps;
/// diverges when some cfg keeps every tail distance at or above eps with no
/// decrease across the tail.
ConvergenceReport converges_to(const FamilySampler &family, const TargetSampler &target,
                               const std::vector<MetricConfig> &schedule, const std::vector<long> &indices,
                               int tail = 3, AmbientSpace space = AmbientSpace::complex_plane);

} // namespace chabauty

#endif
