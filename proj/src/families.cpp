#include "chabauty/families.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace chabauty
{

namespace
{

std::vector<MetricConfig> uniform_schedule(std::initializer_list<double> radii, double eps)
{
    std::vector<MetricConfig> out;
    for (double R : radii)
        out.push_back({R, 0.05, eps});
    return out;
}

Real power_of_two(long k)
{
    Real s = 1;
    for (long i = 0; i < std::abs(k); ++i)
        s *= Real(2);
    return k >= 0 ? s : Real(1) / s;
}

} // namespace

std::vector<std::string> family_ids()
{
    return {"dilate-up", "dilate-down", "shear", "fibre-collapse"};
}

Family make_family(const std::string &id)
{
    Family f;
    f.id = id;
    if (id == "dilate-up") {
        f.summary = "phi_s(L1) with s = 2^k, tending to the trivial group";
        f.indices = {1, 2, 3, 4, 5, 6};
        f.member = [](long k) { return dilate(lambda_n(1), power_of_two(k)); };
        f.limit = TrivialH{};
        f.schedule = uniform_schedule({2, 5, 10}, 1e-2);
    } else if (id == "dilate-down") {
        f.summary = "phi_s(L1) with s = 2^-k, tending to H";
        f.indices = {1, 2, 3, 4, 5, 6, 7, 8, 9};
        f.member = [](long k) { return dilate(lambda_n(1), power_of_two(-k)); };
        f.limit = FullH{};
        f.schedule = uniform_schedule({2, 5, 10}, 1e-2);
    } else if (id == "shear") {
        f.summary = "L1 over <1, -1/k + i>, tending to Z + iZ inside the plane over R";
        f.indices = {10, 25, 50, 100, 200, 400};
        f.member = [](long k) { return shear_lattice(k, 1); };
        f.limit = make_in_plane(V2{1, 0}, make_lattice(V2{1, 0}, V2{0, 1}));
        f.schedule = uniform_schedule({2, 5}, 5e-2);
    } else if (id == "fibre-collapse") {
        f.summary = "L_k over <1, i + 1/k^2>, tending to the preimage of Z[i]";
        f.indices = {25, 50, 100, 200, 400};
        f.member = [](long k) {
            return lattice_from_coords(LatticeBasis{V2{1, 0}, V2{Real::frac(1, k * k), 1}}, k, 0, 0);
        };
        f.limit = PreimageLattice{LatticeBasis{V2{1, 0}, V2{0, 1}}};
        f.schedule = uniform_schedule({2, 5, 10}, 1e-2);
    } else {
        throw DomainError("unknown family '" + id + "'");
    }
    return f;
}

FamilyTrace trace_family(const Family &f, const std::vector<MetricConfig> &schedule, std::uint64_t seed, int tail)
{
    const std::vector<MetricConfig> &sched = schedule.empty() ? f.schedule : schedule;
    const bool full_limit = std::holds_alternative<FullH>(f.limit);
    FamilySampler fam = [&](long k, const MetricConfig &cfg) {
        SubgroupH C = f.member(k);
        // any point is at distance 0 from H, so the family side needs no enumeration
        if (full_limit)
            return oracle_only_h(C);
        return sampled_h(C, cfg.R + sample_margin(cfg.R), cfg.spacing);
    };
    TargetSampler tgt = [&](const MetricConfig &cfg) {
        return sampled_h(f.limit, cfg.R + sample_margin(cfg.R), cfg.spacing);
    };
    ConvergenceReport rep = converges_to(fam, tgt, sched, f.indices, tail, AmbientSpace::heisenberg);

    FamilyTrace out;
    out.id = f.id;
    out.seed = seed;
    out.verdict = rep.verdict;
    for (const TraceEntry &e : rep.trace) {
        TraceRow row;
        row.index = e.index;
        row.R = e.R;
        row.eps = e.eps;
        row.distance = e.distance;
        SubgroupH C = f.member(e.index);
        LatticeInvariants inv = lattice_invariants(p_star(C));
        row.ell1 = inv.ell1;
        row.ell2 = inv.ell2;
        row.kappa = inv.kappa;
        if (std::holds_alternative<LatticeN>(C) || std::holds_alternative<PreimageLattice>(C)) {
            row.J = j_value(C);
            if (auto ln = std::get_if<LatticeN>(&C))
                row.n = ln->n;
        }
        out.rows.push_back(row);
    }
    std::stable_sort(out.rows.begin(), out.rows.end(), [](const TraceRow &a, const TraceRow &b) {
        return a.index != b.index ? a.index < b.index : a.R < b.R;
    });
    return out;
}

std::vector<MetricConfig> parse_schedule(const std::string &text, double spacing)
{
    std::vector<MetricConfig> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw DomainError("schedule entry '" + item + "' is not R:eps");
        double R = 0, eps = 0;
        try {
            R = std::stod(item.substr(0, colon));
            eps = std::stod(item.substr(colon + 1));
        } catch (const std::logic_error &) {
            throw DomainError("schedule entry '" + item + "' is not R:eps");
        }
        if (!(R > 0) || !(eps > 0))
            throw DomainError("schedule entries must be positive");
        out.push_back({R, spacing, eps});
    }
    if (out.empty())
        throw DomainError("empty schedule");
    return out;
}

} // namespace chabauty
