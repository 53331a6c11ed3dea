#include "chabauty/eisenstein.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace chabauty;
using std::numbers::pi;

namespace
{

double rel(cplx a, cplx b)
{
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

// plain double loop over the square |m|, |n| <= N, symmetric so odd terms cancel
std::pair<cplx, cplx> naive_sums(cplx w1, cplx w2, int N)
{
    cplx s4 = 0, s6 = 0;
    for (int m = -N; m <= N; ++m)
        for (int n = -N; n <= N; ++n) {
            if (!m && !n)
                continue;
            cplx z = double(m) * w1 + double(n) * w2;
            cplx z2 = z * z;
            s4 += 1.0 / (z2 * z2);
            s6 += 1.0 / (z2 * z2 * z2);
        }
    return {60.0 * s4, 140.0 * s6};
}

} // namespace

TEST_CASE("cyclic closed form")
{
    auto [a, b] = cyclic_closed_form(1.0);
    CHECK(a.real() == doctest::Approx(4 * std::pow(pi, 4) / 3).epsilon(1e-14));
    CHECK(b.real() == doctest::Approx(8 * std::pow(pi, 6) / 27).epsilon(1e-14));
    CHECK(std::abs(a * a * a - 27.0 * b * b) <= 1e-12 * std::abs(a * a * a));
    EisensteinResult e = eisenstein_invariants(make_cyclic(V2{1, 0}));
    CHECK(rel(e.g2, a) < 1e-12);
    EisensteinResult d = eisenstein_invariants(make_cyclic(V2{1, 0}), EisensteinMode::direct(2000));
    CHECK(rel(d.g2, a) < 1e-5);
    CHECK(rel(d.g3, b) < 1e-5);
}

TEST_CASE("symmetric lattices")
{
    EisensteinResult sq = eisenstein_invariants(make_lattice(V2{1, 0}, V2{0, 1}));
    CHECK(std::abs(sq.g3) <= 1e-8 * std::abs(sq.g2));
    cplx rho = std::polar(1.0, pi / 3);
    EisensteinResult hx = eisenstein_invariants(make_lattice(V2{1, 0}, V2::from(rho)));
    CHECK(std::abs(hx.g2) <= 1e-8 * std::abs(hx.g3));
    // independent truncated sums
    auto [g2sq, g3sq] = naive_sums(1.0, cplx(0, 1), 300);
    CHECK(rel(sq.g2, g2sq) < 1e-4);
    auto [g2hx, g3hx] = naive_sums(1.0, rho, 300);
    CHECK(rel(hx.g3, g3hx) < 1e-4);
}

TEST_CASE("modes agree")
{
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> U(-0.5, 0.5), V(1.0, 2.0), A(0.5, 2.0), T(0, 2 * pi);
    for (int k = 0; k < 8; ++k) {
        cplx w1 = std::polar(A(rng), T(rng));
        cplx tau(U(rng), V(rng));
        SubgroupC L = make_lattice(V2::from(w1), V2::from(w1 * tau));
        EisensteinResult acc = eisenstein_invariants(L);
        EisensteinResult dir = eisenstein_invariants(L, EisensteinMode::direct(400));
        CHECK(rel(dir.g2, acc.g2) <= 1e-8 + dir.g2_bound / std::abs(acc.g2));
        CHECK(rel(dir.g3, acc.g3) <= 1e-8 + dir.g3_bound / std::abs(acc.g3));
    }
}

TEST_CASE("homogeneity, conjugation and the discriminant")
{
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> U(-0.5, 0.5), V(1.0, 3.0), A(0.3, 3.0), T(0, 2 * pi);
    for (int k = 0; k < 50; ++k) {
        cplx w1 = std::polar(A(rng), T(rng));
        cplx tau(U(rng), V(rng));
        SubgroupC L = make_lattice(V2::from(w1), V2::from(w1 * tau));
        EisensteinResult e = eisenstein_invariants(L);
        cplx s = std::polar(A(rng), T(rng));
        EisensteinResult es = eisenstein_invariants(make_lattice(V2::from(s * w1), V2::from(s * w1 * tau)));
        CHECK(rel(es.g2, e.g2 / std::pow(s, 4)) < 1e-8);
        CHECK(rel(es.g3, e.g3 / std::pow(s, 6)) < 1e-8);
        cplx sc = s * s;
        EisensteinResult ea = eisenstein_invariants(scale_action(sc, L));
        CHECK(rel(ea.g2, e.g2 / (sc * sc)) < 1e-8);
        EisensteinResult ec = eisenstein_invariants(conjugate(L));
        CHECK(rel(ec.g2, std::conj(e.g2)) < 1e-8);
        CHECK(rel(ec.g3, std::conj(e.g3)) < 1e-8);
        CHECK(std::abs(e.delta) > 1e-12 * (std::pow(std::abs(e.g2), 3) + std::norm(e.g3)));
    }
    CHECK_THROWS(eisenstein_invariants(make_line(V2{1, 0})));
}

TEST_CASE("j invariant")
{
    CHECK(std::abs(j_invariant(cplx(0, 1)) - 1728.0) < 1e-8);
    CHECK(std::abs(j_invariant(std::polar(1.0, pi / 3))) < 1e-8);
}
