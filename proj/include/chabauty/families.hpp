#ifndef CHABAUTY_FAMILIES_HPP
#define CHABAUTY_FAMILIES_HPP

#include "chabauty/heis_subgroups.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace chabauty
{

/// A scripted sequence of subgroups of H with its expected limit.
struct Family
{
    std::string id;
    std::string summary;
    std::vector<long> indices;
    std::function<SubgroupH(long)> member;
    SubgroupH limit;
    std::vector<MetricConfig> schedule;
};

std::vector<std::string> family_ids();
/// Throws DomainError on an unknown id.
Family make_family(const std::string &id);

struct TraceRow
{
    long index = 0;
    double R = 0, eps = 0, distance = 0;
    std::optional<double> ell1, ell2, kappa;
    std::optional<long> n;
    std::optional<Real> J;
};

struct FamilyTrace
{
    std::string id;
    std::uint64_t seed = 0;
    Verdict verdict = Verdict::inconclusive;
    std::vector<TraceRow> rows; ///< sorted by (index, R)
};

/// Runs converges_to on the family; an empty schedule selects the family default.
FamilyTrace trace_family(const Family &f, const std::vector<MetricConfig> &schedule, std::uint64_t seed, int tail = 3);

/// "R:eps,R:eps,..." with a shared spacing.
std::vector<MetricConfig> parse_schedule(const std::string &text, double spacing);

} // namespace chabauty

#endif
