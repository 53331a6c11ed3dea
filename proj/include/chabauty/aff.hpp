#ifndef CHABAUTY_AFF_HPP
#define CHABAUTY_AFF_HPP

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace chabauty
{

/// x -> lambda x + tau, lambda > 0.
struct AffElement
{
    double lambda = 1, tau = 0;
    bool operator==(const AffElement &) const = default;
};

AffElement aff_mul(const AffElement &a, const AffElement &b);
AffElement aff_inverse(const AffElement &a);
AffElement aff_exp(double x, double y);
/// Inverse of aff_exp.
std::pair<double, double> aff_log(const AffElement &g);

struct TrivialAff
{
    bool operator==(const TrivialAff &) const = default;
};
struct CyclicAff
{
    AffElement gen;
    bool operator==(const CyclicAff &) const = default;
};
/// exp(s (x, y)), (x, y) a unit vector with x > 0 or (x = 0, y > 0)
struct OneParamAff
{
    double x, y;
    bool operator==(const OneParamAff &) const = default;
};
/// Translations together with powers of a scaling by lambda > 1.
struct TransPlusScale
{
    double lambda;
    bool operator==(const TransPlusScale &) const = default;
};
struct FullAff
{
    bool operator==(const FullAff &) const = default;
};

using SubgroupAff = std::variant<TrivialAff, CyclicAff, OneParamAff, TransPlusScale, FullAff>;

SubgroupAff make_cyclic_aff(const AffElement &g);
SubgroupAff make_one_param_aff(double x, double y);
SubgroupAff make_trans_plus_scale(double lambda);

bool aff_membership(const SubgroupAff &C, const AffElement &g, double eps);
/// Elements in the box |log lambda| <= R, |tau| <= R.
std::vector<AffElement> aff_sample_ball(const SubgroupAff &C, double R, double spacing);

struct AffStratum
{
    enum class Kind
    {
        vertex,
        disc_interior,
        disc_boundary,
        interval_interior,
        interval_endpoint_T,
        interval_endpoint_Aff
    };
    Kind kind = Kind::vertex;
    double dir_x = 0, dir_y = 0; ///< P^1 direction for disc points
    double r = 0;                ///< cone radius 1/|X| for cyclic groups exp(Z X)
    double lambda = 0;           ///< interval coordinate
    bool commutator_point = false;
    std::string label() const;
};

AffStratum aff_classify_stratum(const SubgroupAff &C);

} // namespace chabauty

#endif
