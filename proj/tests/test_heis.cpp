#include "support.hpp"

#include <doctest.h>

using namespace chabauty;
using testing_support::gap;
using testing_support::Rng;

namespace
{

// Upper unitriangular 3x3 model; the isomorphism sends (x + iy, t) to
// [[1, x, t + xy/2], [0, 1, y], [0, 0, 1]].
struct Unitri
{
    double a, b, c;
};

Unitri to_matrix(const HeisPoint &h)
{
    double x = h.x.to_double(), y = h.y.to_double();
    return {x, y, h.t.to_double() + x * y / 2};
}

Unitri matmul(const Unitri &m, const Unitri &n)
{
    return {m.a + n.a, m.b + n.b, n.c + m.a * n.b + m.c};
}

HeisPoint from_matrix(const Unitri &m)
{
    return {m.a, m.b, m.c - m.a * m.b / 2};
}

} // namespace

TEST_CASE("product law")
{
    HeisPoint e = heis_identity();
    HeisPoint h{Real::frac(3, 2), -2, 5};
    CHECK(heis_mul(e, h) == h);
    CHECK(heis_mul(HeisPoint{1, 0, 0}, HeisPoint{0, 1, 0}) == HeisPoint{1, 1, Real::frac(1, 2)});

    Rng rng(11);
    for (int k = 0; k < 200; ++k) {
        HeisPoint a = rng.heis_double(), b = rng.heis_double(), c = rng.heis_double();
        CHECK(gap(heis_mul(heis_mul(a, b), c), heis_mul(a, heis_mul(b, c))) < 1e-12);
        CHECK(gap(heis_mul(a, heis_inverse(a)), e) < 1e-12);
        // the matrix model is an independent check of the product
        HeisPoint viaM = from_matrix(matmul(to_matrix(a), to_matrix(b)));
        CHECK(gap(heis_mul(a, b), viaM) < 1e-11);
    }
    for (int k = 0; k < 100; ++k) {
        HeisPoint a = rng.heis_rational(), b = rng.heis_rational(), c = rng.heis_rational();
        CHECK(heis_mul(heis_mul(a, b), c) == heis_mul(a, heis_mul(b, c)));
        CHECK(heis_mul(heis_inverse(a), a) == e);
    }
}

TEST_CASE("commutator and projection")
{
    CHECK(heis_commutator(HeisPoint{1, 0, 0}, HeisPoint{0, 1, 0}) == HeisPoint{0, 0, 1});
    HeisPoint a{2, 0, 5}, b{0, 3, -1};
    CHECK(heis_commutator(a, a) == heis_identity());
    HeisPoint word = heis_mul(heis_mul(heis_mul(a, b), heis_inverse(a)), heis_inverse(b));
    CHECK(heis_commutator(a, b) == word);
    CHECK(heis_commutator(a, b) == HeisPoint{0, 0, 6});

    CHECK(heis_project(HeisPoint{0, 0, 7}) == V2{0, 0});
    CHECK(heis_project(HeisPoint{1, 2, 3}) == V2{1, 2});
    Rng rng(12);
    for (int k = 0; k < 100; ++k) {
        HeisPoint p = rng.heis_rational(), q = rng.heis_rational();
        CHECK(heis_project(heis_mul(p, q)) == heis_project(p) + heis_project(q));
        HeisPoint cm = heis_commutator(p, q);
        CHECK(is_zero(cm.x));
        CHECK(is_zero(cm.y));
    }
}

TEST_CASE("automorphisms")
{
    Rng rng(13);
    HeisAut id = HeisAut::identity();
    for (int k = 0; k < 20; ++k) {
        HeisPoint h = rng.heis_rational();
        CHECK(aut_apply(id, h) == h);
    }

    HeisAut s = heis_dilation(Real(3));
    CHECK(aut_apply(s, HeisPoint{1, 2, 5}) == HeisPoint{3, 6, 45});

    // inner part expanded by hand: t - v x + u y
    Real u = Real::frac(2, 3), v = -5;
    HeisAut inner{V2{u, v}, Mat2::identity()};
    HeisPoint h{4, Real::frac(1, 2), 7};
    CHECK(aut_apply(inner, h) == HeisPoint{4, Real::frac(1, 2), Real(7) - v * Real(4) + u * Real::frac(1, 2)});

    CHECK(aut_compose(HeisAut{V2{1, 0}, Mat2::identity()}, HeisAut{V2{0, 1}, Mat2::identity()}) ==
          HeisAut{V2{1, 1}, Mat2::identity()});

    for (int k = 0; k < 1000; ++k) {
        HeisAut phi{V2{rng.uniform(-2, 2), rng.uniform(-2, 2)}, rng.invertible_double()};
        HeisPoint a = rng.heis_double(), b = rng.heis_double();
        CHECK(gap(aut_apply(phi, heis_mul(a, b)), heis_mul(aut_apply(phi, a), aut_apply(phi, b))) < 1e-10);
    }
    for (int k = 0; k < 100; ++k) {
        HeisAut phi{V2{rng.rational(), rng.rational()}, rng.invertible_rational()};
        HeisAut psi{V2{rng.rational(), rng.rational()}, rng.invertible_rational()};
        HeisAut chi{V2{rng.rational(), rng.rational()}, rng.invertible_rational()};
        HeisPoint p = rng.heis_rational();
        CHECK(aut_apply(aut_compose(phi, psi), p) == aut_apply(phi, aut_apply(psi, p)));
        CHECK(aut_compose(aut_compose(phi, psi), chi) == aut_compose(phi, aut_compose(psi, chi)));
        CHECK(aut_compose(phi, aut_inverse(phi)) == id);
        CHECK(aut_compose(phi, id) == phi);
        Real t = rng.rational();
        CHECK(aut_apply(phi, HeisPoint{0, 0, t}) == HeisPoint{0, 0, phi.g.det() * t});
    }
}

TEST_CASE("psi_n")
{
    Rng rng(14);
    Mat2 g{2, 1, 1, 1};
    CHECK(psi_n(HeisAut{V2{2, 4}, g}, 2) == HeisAut{V2{1, 2}, g});
    for (int k = 0; k < 50; ++k) {
        HeisAut phi{V2{rng.rational(), rng.rational()}, rng.invertible_rational()};
        HeisAut psi{V2{rng.rational(), rng.rational()}, rng.invertible_rational()};
        CHECK(psi_n(phi, 1) == phi);
        CHECK(psi_n(aut_compose(phi, psi), 3) == aut_compose(psi_n(phi, 3), psi_n(psi, 3)));
    }
}
