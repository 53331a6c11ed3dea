#include "chabauty/eisenstein.hpp"
#include "chabauty/metric.hpp"
#include "chabauty/sphere_chart.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace chabauty;
using std::numbers::pi;

namespace
{

SpherePoint random_ball_point(std::mt19937_64 &rng, double rmax = 1)
{
    std::normal_distribution<double> N;
    std::uniform_real_distribution<double> U(0, 1);
    double v[4];
    double n = 0;
    for (double &x : v) {
        x = N(rng);
        n += x * x;
    }
    double r = rmax * std::pow(U(rng), 0.25) / std::sqrt(n);
    return SpherePoint::finite({v[0] * r, v[1] * r}, {v[2] * r, v[3] * r});
}

// bisection on t > 0 for |(t^-2 a, t^-3 b)| = 1
SpherePoint bisect_retract(const SpherePoint &p)
{
    auto nrm = [&](double t) { return std::hypot(std::abs(p.a) / (t * t), std::abs(p.b) / (t * t * t)); };
    double lo = 1e-6, hi = 1e6;
    for (int k = 0; k < 300; ++k) {
        double mid = std::sqrt(lo * hi);
        (nrm(mid) > 1 ? lo : hi) = mid;
    }
    double t = std::sqrt(lo * hi);
    return SpherePoint::finite(p.a / (t * t), p.b / (t * t * t));
}

double chabauty_gap(const SubgroupC &A, const SubgroupC &B, double R = 10, double spacing = 0.02)
{
    MetricConfig cfg{R, spacing, 1e-6};
    double Rs = R + sample_margin(R);
    return ball_distance(sampled_c(A, Rs, spacing), sampled_c(B, Rs, spacing), cfg, AmbientSpace::complex_plane);
}

} // namespace

TEST_CASE("retraction")
{
    CHECK(sphere_distance(pi_retract(SpherePoint::finite(1.0, 0.0)), SpherePoint::finite(1.0, 0.0)) < 1e-15);
    CHECK(sphere_distance(pi_retract(SpherePoint::finite(4.0, 0.0)), SpherePoint::finite(1.0, 0.0)) < 1e-15);
    CHECK_THROWS_AS(pi_retract(SpherePoint::finite(0.0, 0.0)), DomainError);
    CHECK_THROWS_AS(pi_retract(SpherePoint::infinity()), DomainError);
    std::mt19937_64 rng(41);
    for (int k = 0; k < 100; ++k) {
        SpherePoint p = random_ball_point(rng, 5);
        SpherePoint q = pi_retract(p);
        CHECK(std::abs(q.norm() - 1) < 1e-12);
        CHECK(sphere_distance(q, bisect_retract(p)) < 1e-10);
    }
}

TEST_CASE("inversion")
{
    CHECK(inversion_delta(SpherePoint::finite(0.0, 0.0)).infinite);
    CHECK(inversion_delta(SpherePoint::infinity()).is_origin());
    CHECK(sphere_distance(inversion_delta(SpherePoint::finite(1.0, 0.0)), SpherePoint::finite(1.0, 0.0)) == 0);
    CHECK(sphere_distance(inversion_delta(SpherePoint::finite(2.0, 0.0)), SpherePoint::finite(0.5, 0.0)) == 0);
}

TEST_CASE("gamma inverts the invariants")
{
    EisensteinResult sq = eisenstein_invariants(make_lattice(V2{1, 0}, V2{0, 1}), EisensteinMode::direct(2000));
    SubgroupC L = gamma(SpherePoint::finite(sq.g2, 0.0));
    CHECK(approx_equal(L, make_lattice(V2{1, 0}, V2{0, 1}), 1e-6));

    auto [a, b] = cyclic_closed_form(1.0);
    CHECK(approx_equal(gamma(SpherePoint::finite(a, b)), make_cyclic(V2{1, 0}), 1e-9));

    cplx rho = std::polar(1.0, pi / 3);
    SubgroupC hex = make_lattice(V2{1, 0}, V2::from(rho));
    EisensteinResult eh = eisenstein_invariants(hex, EisensteinMode::direct(2000));
    CHECK(approx_equal(gamma(SpherePoint::finite(0.0, eh.g3)), hex, 1e-6));

    std::mt19937_64 rng(42);
    int done = 0;
    while (done < 200) {
        SpherePoint p = random_ball_point(rng, 3);
        if (sigma::residual(p) < 1e-3)
            continue;
        EisensteinResult e = eisenstein_invariants(gamma(p));
        double r = (std::abs(e.g2 - p.a) + std::abs(e.g3 - p.b)) / (std::abs(p.a) + std::abs(p.b));
        CHECK(r < 1e-8);
        ++done;
    }
}

TEST_CASE("coarea and h")
{
    auto [a, b] = cyclic_closed_form(cplx(0.7, 0.2));
    CHECK(std::isinf(phi_coarea(SpherePoint::finite(a, b))));
    EisensteinResult sq = eisenstein_invariants(make_lattice(V2{1, 0}, V2{0, 1}));
    SpherePoint q = SpherePoint::finite(sq.g2, 0.0);
    // the retraction lands on c Z[i] with c^4 = |g2(Z[i])|
    double c = std::pow(std::abs(sq.g2), 0.25);
    CHECK(phi_coarea(q) == doctest::Approx(c).epsilon(1e-9));
    CHECK(phi_coarea(SpherePoint::finite(q.a * 0.3, 0.0)) == doctest::Approx(c).epsilon(1e-9));
    CHECK(h_map(SpherePoint::finite(0.0, 0.0)) == 0);
    SpherePoint s = orbit_point(SpherePoint::finite(a, b), 0.5);
    CHECK(h_map(s) == doctest::Approx(1.0).epsilon(1e-12));
    SpherePoint u = pi_retract(SpherePoint::finite(cplx(1, 2), cplx(-0.5, 0.3)));
    CHECK(h_map(u) == doctest::Approx(phi_coarea(u)).epsilon(1e-12));
}

TEST_CASE("chart values")
{
    CHECK(f_chart(SpherePoint::finite(0.0, 0.0)) == SubgroupC(TrivialC{}));
    CHECK(f_chart(SpherePoint::infinity()) == SubgroupC(FullC{}));
    CHECK(f_inverse(TrivialC{}).is_origin());
    CHECK(f_inverse(FullC{}).infinite);
    for (const SpherePoint &t : trefoil_sample(12)) {
        SubgroupC C = f_chart(t);
        REQUIRE(std::holds_alternative<LineC>(C));
        auto w = std::get<CyclicC>(gamma(t)).w;
        CHECK(approx_equal(C, make_line(w), 1e-9));
    }
    std::mt19937_64 rng(43);
    for (int k = 0; k < 20; ++k) {
        SpherePoint p = pi_retract(random_ball_point(rng));
        if (sigma::residual(p) < 1e-3)
            continue;
        CHECK(coarea(f_chart(p)) == doctest::Approx(1.0).epsilon(1e-9));
    }
    EisensteinResult sq = eisenstein_invariants(make_lattice(V2{1, 0}, V2{0, 1}));
    SpherePoint target = pi_retract(SpherePoint::finite(sq.g2, 0.0));
    CHECK(sphere_distance(f_inverse(make_lattice(V2{1, 0}, V2{0, 1})), target) < 1e-9);
}

TEST_CASE("trefoil")
{
    auto pts = trefoil_sample(4);
    CHECK(sphere_distance(pts[0], pi_retract(SpherePoint::finite(3.0, 1.0))) < 1e-15);
    CHECK(sphere_distance(pts[1], pi_retract(SpherePoint::finite(-3.0, cplx(0, -1)))) < 1e-14);
    for (const SpherePoint &p : trefoil_sample(360)) {
        CHECK(sigma::contains(p));
        CHECK(std::abs(p.norm() - 1) < 1e-12);
    }
    CHECK_THROWS(trefoil_sample(0));
}

TEST_CASE("chart identities")
{
    std::mt19937_64 rng(44);
    std::uniform_real_distribution<double> T(0, 2 * pi);
    int done = 0;
    while (done < 25) {
        SpherePoint p = random_ball_point(rng);
        if (sigma::residual(p) < 1e-3)
            continue;
        ++done;
        SubgroupC C = f_chart(p);
        CHECK(sphere_distance(f_inverse(C), p) < 1e-6);
        // duality
        CHECK(approx_equal(f_chart(inversion_delta(p)), dual(C), 1e-9));
        // conjugation
        CHECK(approx_equal(f_chart(SpherePoint::finite(std::conj(p.a), std::conj(p.b))), conjugate(C), 1e-9));
        // equivariance with the printed half angle
        double th = T(rng);
        SpherePoint r = SpherePoint::finite(std::polar(1.0, -2 * th) * p.a, std::polar(1.0, -3 * th) * p.b);
        CHECK(chabauty_gap(f_chart(r), scale_action(std::polar(1.0, th), C), 5, 0.05) < 1e-6);
        // same ray as gamma
        auto tau_of = [](const SubgroupC &X) {
            auto &b = std::get<LatticeC>(X).basis;
            return b.w2.c() / b.w1.c();
        };
        CHECK(std::abs(tau_of(C) - tau_of(gamma(p))) < 1e-9);
    }
}
