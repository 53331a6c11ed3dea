#include "chabauty/aff.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace chabauty
{

namespace
{

// (e^x - 1)/x with its limit at 0
double expm1_over(double x)
{
    return x == 0 ? 1.0 : std::expm1(x) / x;
}

std::vector<double> grid(double lo, double hi, double spacing)
{
    if (hi <= lo)
        return {lo};
    long N = static_cast<long>(std::ceil((hi - lo) / spacing));
    std::vector<double> out;
    for (long k = 0; k <= N; ++k)
        out.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(N));
    return out;
}

} // namespace

AffElement aff_mul(const AffElement &a, const AffElement &b)
{
    return {a.lambda * b.lambda, a.lambda * b.tau + a.tau};
}

AffElement aff_inverse(const AffElement &a)
{
    return {1 / a.lambda, -a.tau / a.lambda};
}

AffElement aff_exp(double x, double y)
{
    return {std::exp(x), y * expm1_over(x)};
}

std::pair<double, double> aff_log(const AffElement &g)
{
    double x = std::log(g.lambda);
    return {x, g.tau / expm1_over(x)};
}

SubgroupAff make_cyclic_aff(const AffElement &g)
{
    if (!(g.lambda > 0))
        throw std::invalid_argument("lambda must be positive");
    if (g.lambda == 1 && g.tau == 0)
        return TrivialAff{};
    if (g.lambda < 1 || (g.lambda == 1 && g.tau < 0))
        return CyclicAff{aff_inverse(g)};
    return CyclicAff{g};
}

SubgroupAff make_one_param_aff(double x, double y)
{
    double n = std::hypot(x, y);
    if (n == 0)
        return TrivialAff{};
    x /= n;
    y /= n;
    if (x < 0 || (x == 0 && y < 0)) {
        x = -x;
        y = -y;
    }
    return OneParamAff{x, y};
}

SubgroupAff make_trans_plus_scale(double lambda)
{
    if (!(lambda > 0) || lambda == 1)
        throw std::invalid_argument("scale factor must be positive and different from 1");
    return TransPlusScale{lambda > 1 ? lambda : 1 / lambda};
}

bool aff_membership(const SubgroupAff &C, const AffElement &g, double eps)
{
    double s = std::log(g.lambda);
    if (std::holds_alternative<TrivialAff>(C))
        return std::max(std::abs(s), std::abs(g.tau)) <= eps;
    if (std::holds_alternative<FullAff>(C))
        return true;
    if (auto ts = std::get_if<TransPlusScale>(&C)) {
        double L = std::log(ts->lambda);
        return std::abs(s - L * std::round(s / L)) <= eps;
    }
    if (auto op = std::get_if<OneParamAff>(&C)) {
        if (op->x == 0)
            return std::abs(s) <= eps;
        double par = s / op->x;
        double tau = op->y * par * expm1_over(s);
        return std::abs(tau - g.tau) <= eps;
    }
    auto cy = std::get<CyclicAff>(C);
    auto [x, y] = aff_log(cy.gen);
    double n = x != 0 ? std::round(s / x) : std::round(g.tau / cy.gen.tau);
    AffElement p = aff_exp(n * x, n * y);
    return std::max(std::abs(std::log(p.lambda) - s), std::abs(p.tau - g.tau)) <= eps;
}

std::vector<AffElement> aff_sample_ball(const SubgroupAff &C, double R, double spacing)
{
    if (!(R > 0) || !(spacing > 0))
        throw std::invalid_argument("aff_sample_ball needs positive radius and spacing");
    std::vector<AffElement> out;
    auto inside = [&](const AffElement &g) { return std::abs(std::log(g.lambda)) <= R && std::abs(g.tau) <= R; };
    if (std::holds_alternative<TrivialAff>(C)) {
        out.push_back({});
    } else if (std::holds_alternative<FullAff>(C)) {
        for (double s : grid(-R, R, spacing))
            for (double t : grid(-R, R, spacing))
                out.push_back({std::exp(s), t});
    } else if (auto ts = std::get_if<TransPlusScale>(&C)) {
        double L = std::log(ts->lambda);
        long N = static_cast<long>(std::floor(R / L));
        for (long n = -N; n <= N; ++n)
            for (double t : grid(-R, R, spacing))
                out.push_back({std::exp(static_cast<double>(n) * L), t});
    } else if (auto op = std::get_if<OneParamAff>(&C)) {
        // both coordinates are monotone along the curve, so walk outward until leaving the box
        for (int sgn : {1, -1}) {
            double par = 0;
            bool first = true;
            for (;;) {
                AffElement g = aff_exp(par * op->x, par * op->y);
                if (!inside(g))
                    break;
                if (sgn > 0 || !first)
                    out.push_back(g);
                first = false;
                double speed = std::max(std::abs(op->x), std::abs(op->y) * g.lambda);
                par += sgn * spacing / std::max(speed, 1e-12);
                if (std::abs(par) > 1e9)
                    break;
            }
        }
    } else {
        auto cy = std::get<CyclicAff>(C);
        auto [x, y] = aff_log(cy.gen);
        long N = x != 0 ? static_cast<long>(std::floor(R / std::abs(x))) : static_cast<long>(std::floor(R / std::abs(cy.gen.tau)));
        for (long n = -N; n <= N; ++n) {
            AffElement g = aff_exp(static_cast<double>(n) * x, static_cast<double>(n) * y);
            if (inside(g))
                out.push_back(g);
        }
    }
    return out;
}

std::string AffStratum::label() const
{
    switch (kind) {
    case Kind::vertex:
        return "vertex";
    case Kind::disc_interior:
        return "disc-interior";
    case Kind::disc_boundary:
        return "disc-boundary";
    case Kind::interval_interior:
        return "interval-interior";
    case Kind::interval_endpoint_T:
        return "interval-endpoint-T";
    case Kind::interval_endpoint_Aff:
        return "interval-endpoint-Aff";
    }
    return "";
}

AffStratum aff_classify_stratum(const SubgroupAff &C)
{
    AffStratum st;
    if (std::holds_alternative<TrivialAff>(C)) {
        st.kind = AffStratum::Kind::vertex;
    } else if (auto cy = std::get_if<CyclicAff>(&C)) {
        auto [x, y] = aff_log(cy->gen);
        double n = std::hypot(x, y);
        st.kind = AffStratum::Kind::disc_interior;
        st.dir_x = x / n;
        st.dir_y = y / n;
        st.r = 1 / n;
    } else if (auto op = std::get_if<OneParamAff>(&C)) {
        st.kind = AffStratum::Kind::disc_boundary;
        st.dir_x = op->x;
        st.dir_y = op->y;
        st.r = std::numeric_limits<double>::infinity();
        st.commutator_point = op->x == 0;
    } else if (auto ts = std::get_if<TransPlusScale>(&C)) {
        st.kind = AffStratum::Kind::interval_interior;
        st.lambda = ts->lambda;
    } else {
        st.kind = AffStratum::Kind::interval_endpoint_Aff;
        st.lambda = std::numeric_limits<double>::infinity();
    }
    return st;
}

} // namespace chabauty
