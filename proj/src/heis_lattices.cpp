#include "chabauty/heis_subgroups.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

namespace chabauty
{

namespace
{

Real rational_gcd(const mpq_class &a, const mpq_class &b)
{
    mpz_class num, den;
    mpz_gcd(num.get_mpz_t(), mpz_class(a.get_num() * b.get_den()).get_mpz_t(),
            mpz_class(b.get_num() * a.get_den()).get_mpz_t());
    den = a.get_den() * b.get_den();
    return Real(mpq_class(num, den));
}

// integer coefficient, rounded when the data are floating point
Real coefficient(const Real &x)
{
    return x.is_exact() ? x : round_half_up(x);
}

} // namespace

SubgroupH lattice_from_generators(const HeisPoint &a, const HeisPoint &b, const std::optional<Real> &central)
{
    V2 za = a.z(), zb = b.z();
    Real A0 = cross(za, zb);
    if (sign_tol(A0, norm(za) * norm(zb) + 1e-300) == 0)
        throw std::invalid_argument("generators have linearly dependent projections");
    Real A = abs(A0);
    Real d = A;
    long n = 1;
    if (central && !is_zero(*central)) {
        Real c = abs(*central);
        if (A.is_exact() && c.is_exact()) {
            d = rational_gcd(A.exact(), c.exact());
            mpq_class q = A.exact() / d.exact();
            n = q.get_num().get_si();
        } else {
            long p, q;
            if (!rationalize(A.to_double() / c.to_double(), 1e-9, 1000000, p, q))
                throw DomainError("central elements do not generate a discrete subgroup");
            n = p;
            d = c / Real(q);
        }
    }
    LatticeBasis L = reduce_basis(za, zb);
    Real a1 = coefficient(cross(L.w1, zb) / A0), b1 = coefficient(cross(za, L.w1) / A0);
    Real a2 = coefficient(cross(L.w2, zb) / A0), b2 = coefficient(cross(za, L.w2) / A0);
    HeisPoint l1 = heis_mul(heis_pow(a, a1), heis_pow(b, b1));
    HeisPoint l2 = heis_mul(heis_pow(a, a2), heis_pow(b, b2));
    Real step = Real(1) / Real(n);
    return LatticeN{L, mod(l1.t / A, step), mod(l2.t / A, step), n};
}

long index_n(const SubgroupH &C)
{
    auto ln = std::get_if<LatticeN>(&C);
    if (!ln)
        throw DomainError("index_n needs a lattice");
    Real A = ln->L.coarea();
    Real ratio = A / (A / Real(ln->n));
    if (!is_integer(ratio))
        throw DomainError("inconsistent lattice form");
    return ln->n;
}

Fibration fibration_coords(const SubgroupH &C)
{
    auto ln = std::get_if<LatticeN>(&C);
    if (!ln)
        throw DomainError("fibration_coords needs a lattice");
    return {ln->L, ln->r, ln->r2, ln->n};
}

SubgroupH lattice_from_coords(const LatticeBasis &L, long n, const Real &r, const Real &r2)
{
    if (n < 1)
        throw std::invalid_argument("n must be positive");
    Real A = L.coarea();
    if (sign(A) <= 0)
        throw std::invalid_argument("basis must be positively oriented");
    return lattice_from_generators(HeisPoint::make(L.w1, A * r), HeisPoint::make(L.w2, A * r2), A / Real(n));
}

Normalization normalize_lattice(const SubgroupH &C)
{
    auto ln = std::get_if<LatticeN>(&C);
    if (!ln)
        throw DomainError("normalize_lattice needs a lattice");
    Mat2 g = Mat2::columns(ln->L.w1, ln->L.w2).inverse();
    return {{V2{-ln->r2, ln->r}, g}, ln->n};
}

bool stabilizer_contains(const HeisAut &phi, long n, bool unimodular_only)
{
    if (n < 1)
        throw std::invalid_argument("n must be positive");
    Real nn(n);
    if (!is_integer(nn * phi.w.x) || !is_integer(nn * phi.w.y))
        return false;
    const Mat2 &g = phi.g;
    if (!is_integer(g.a) || !is_integer(g.b) || !is_integer(g.c) || !is_integer(g.d))
        return false;
    Real det = round_half_up(g.det());
    if (unimodular_only)
        return det == Real(1);
    return det == Real(1) || det == Real(-1);
}

SubgroupH apply_aut_subgroup(const HeisAut &phi, const SubgroupH &C)
{
    // renormalizing inexact directions would drift under the identity
    if (phi == HeisAut::identity() || std::holds_alternative<TrivialH>(C) || std::holds_alternative<FullH>(C))
        return C;
    if (auto c = std::get_if<CyclicH>(&C))
        return make_cyclic_h(aut_apply(phi, c->gen));
    if (auto o = std::get_if<OneParamH>(&C))
        return make_one_param_h(aut_apply(phi, o->dir));
    if (auto pl = std::get_if<PlaneH>(&C))
        return make_plane_h(phi.g(pl->dir));
    if (auto ip = std::get_if<InPlane>(&C)) {
        V2 gd = phi.g(ip->plane);
        V2 d = unit(half_plane_rep(gd));
        Real mu = dot(gd, d);
        Mat2 M{phi.g.det(), cross(phi.w, gd), 0, mu};
        return make_in_plane(d, apply_linear(M, ip->inner));
    }
    if (auto ln = std::get_if<LatticeN>(&C)) {
        Real A = ln->L.coarea();
        HeisPoint a = aut_apply(phi, HeisPoint::make(ln->L.w1, A * ln->r));
        HeisPoint b = aut_apply(phi, HeisPoint::make(ln->L.w2, A * ln->r2));
        HeisPoint c = aut_apply(phi, {0, 0, A / Real(ln->n)});
        return lattice_from_generators(a, b, c.t);
    }
    return make_preimage(apply_linear(phi.g, p_star(C)));
}

ThetaFiber theta_bundle(const SubgroupH &C)
{
    ThetaFiber th;
    if (auto pl = std::get_if<PreimageLattice>(&C)) {
        th.L = pl->L;
        th.cone_point = true;
        return th;
    }
    auto ln = std::get_if<LatticeN>(&C);
    if (!ln)
        throw DomainError("theta_bundle needs a lattice or the preimage of a lattice");
    Real n(ln->n);
    Real base = Real::frac(1, 2) - n / Real(2);
    th.L = ln->L;
    th.n = ln->n;
    th.cone = Real(1) / n;
    th.u = mod(base + n * ln->r, 1);
    th.v = mod(base + n * ln->r2, 1);
    return th;
}

SubgroupH shear_lattice(long k, long n)
{
    if (k < 1 || n < 1)
        throw std::invalid_argument("k and n must be positive");
    Real kk(k);
    return lattice_from_generators({Real(-1) / kk, 0, 1}, {0, Real(n) * kk * kk, 0}, kk);
}

SubgroupH dilate(const SubgroupH &C, const Real &s)
{
    return apply_aut_subgroup(heis_dilation(s), C);
}

Real j_value(const SubgroupH &C)
{
    if (auto ln = std::get_if<LatticeN>(&C))
        return Real(1) / Real(ln->n);
    if (std::holds_alternative<PreimageLattice>(C))
        return 0;
    throw DomainError("J is defined on lattices and their limits with full center");
}

DisconnectionCertificate disconnection_certificate(const SubgroupH &C, double eps, double R, double spacing)
{
    auto pl = std::get_if<PreimageLattice>(&C);
    if (!pl)
        throw DomainError("certificate needs the preimage of a lattice");
    DisconnectionCertificate cert;
    double eta = eps / (R + 2);
    double A = pl->L.coarea().to_double();
    cert.N = static_cast<long>(std::ceil(2 * A / eta));
    cert.members = {lattice_from_coords(pl->L, cert.N + 1, 0, 0), lattice_from_coords(pl->L, cert.N + 2, 0, 0), C};
    MetricConfig cfg{R, spacing, eps};
    SampledSet target = sampled_h(C, R, spacing);
    std::vector<double> seen;
    for (const SubgroupH &m : cert.members) {
        cert.distances.push_back(ball_distance(sampled_h(m, R, spacing), target, cfg, AmbientSpace::heisenberg));
        Real j = j_value(m);
        cert.j_values.push_back(j);
        if (std::find(seen.begin(), seen.end(), j.to_double()) == seen.end())
            seen.push_back(j.to_double());
    }
    cert.distinct = static_cast<long>(seen.size());
    return cert;
}

namespace
{

struct IMat
{
    long a, b, c, d;
    IMat operator*(const IMat &o) const
    {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
};

long ext_gcd(long a, long b, long &x, long &y)
{
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return std::abs(a);
    }
    long x1, y1;
    long g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

// (m1, m2) gamma = (0, 1) for a primitive row
IMat to_e2(long m1, long m2)
{
    long u, v;
    ext_gcd(m1, m2, u, v); // u m1 + v m2 = 1
    return {m2, u, -m1, v};
}

// (0, 1) gamma = (p, q)
IMat from_e2(long p, long q)
{
    long u, v;
    ext_gcd(q, -p, u, v); // u q - v p = 1
    return {u, v, p, q};
}

// primitive integer directions approximating the direction (a, b)
std::vector<std::pair<long, long>> directions(double a, double b, int depth)
{
    std::vector<std::pair<long, long>> out;
    if (b == 0 || a == 0) {
        out.push_back(b == 0 ? std::pair<long, long>{1, 0} : std::pair<long, long>{0, 1});
        return out;
    }
    double x = a / b;
    long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double rest = x;
    for (int i = 0; i < depth; ++i) {
        double fl = std::floor(rest);
        if (std::abs(fl) > 1e9)
            break;
        long ai = static_cast<long>(fl);
        long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        if (std::abs(h2) > 1000000000L || std::abs(k2) > 1000000000L)
            break;
        out.push_back({h2, k2});
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        double frac = rest - fl;
        if (frac < 1e-15)
            break;
        rest = 1 / frac;
    }
    return out;
}

struct PlaneFrame
{
    V2 d;
    std::array<double, 4> B; // rows (t1, t2), (s1, s2)
};

// inner lattice basis of an abelian subgroup, or of a lattice approximating it in the ball
PlaneFrame approximant(const SubgroupH &T, const V2 &fallback_plane, double R, double spacing)
{
    double K = 4 * R + 4, eta = std::min(spacing, 0.01);
    auto frame = [](const V2 &d, cplx u, cplx v) { return PlaneFrame{d, {u.real(), v.real(), u.imag(), v.imag()}}; };
    if (auto ip = std::get_if<InPlane>(&T)) {
        if (auto l = std::get_if<LatticeC>(&ip->inner))
            return frame(ip->plane, l->basis.w1.c(), l->basis.w2.c());
        const LineCyclicC &lc = std::get<LineCyclicC>(ip->inner);
        cplx dir = lc.dir.c();
        return frame(ip->plane, eta * dir, lc.step.to_double() * cplx(0, 1) * dir);
    }
    if (auto pl = std::get_if<PlaneH>(&T))
        return frame(pl->dir, eta, cplx(0, eta));
    if (auto c = std::get_if<CyclicH>(&T)) {
        if (is_zero(c->gen.x) && is_zero(c->gen.y))
            return frame(fallback_plane, c->gen.t.to_double(), cplx(0, K));
        V2 d = unit(half_plane_rep(c->gen.z()));
        cplx w = plane_coord(d, c->gen).c();
        return frame(d, w, K * cplx(0, 1) * w / std::abs(w));
    }
    if (auto o = std::get_if<OneParamH>(&T)) {
        if (is_zero(o->dir.x) && is_zero(o->dir.y))
            return frame(fallback_plane, eta, cplx(0, K));
        V2 d = unit(half_plane_rep(o->dir.z()));
        cplx w = plane_coord(d, o->dir).c();
        w /= std::abs(w);
        return frame(d, eta * w, K * cplx(0, 1) * w);
    }
    if (std::holds_alternative<TrivialH>(T))
        return frame(fallback_plane, K, cplx(0, K));
    throw DomainError("orbit_density_walk needs an abelian target");
}

} // namespace

WalkResult orbit_density_walk(const SubgroupH &start, const SubgroupH &target, long budget, const MetricConfig &cfg,
                              std::uint64_t seed)
{
    auto ip = std::get_if<InPlane>(&start);
    if (!ip || !std::holds_alternative<LatticeC>(ip->inner))
        throw DomainError("orbit_density_walk starts from a rank-two abelian subgroup");
    WalkResult res;
    res.seed = seed;
    double Rs = cfg.R + sample_margin(cfg.R);
    SampledSet tgt = sampled_h(target, Rs, cfg.spacing);
    auto eval = [&](const HeisAut &phi) {
        return ball_distance(sampled_h(apply_aut_subgroup(phi, start), Rs, cfg.spacing), tgt, cfg,
                             AmbientSpace::heisenberg);
    };

    PlaneFrame T = approximant(target, ip->plane, cfg.R, cfg.spacing);
    // rotate the start plane onto the target plane
    double th = std::atan2(T.d.y.to_double(), T.d.x.to_double()) -
                std::atan2(ip->plane.y.to_double(), ip->plane.x.to_double());
    HeisAut rot{V2{0, 0}, Mat2{std::cos(th), -std::sin(th), std::sin(th), std::cos(th)}};
    if (th == 0)
        rot = HeisAut::identity();
    SubgroupH S = apply_aut_subgroup(rot, start);
    const auto &sb = std::get<LatticeC>(std::get<InPlane>(S).inner).basis;
    std::array<double, 4> B0{sb.w1.x.to_double(), sb.w2.x.to_double(), sb.w1.y.to_double(), sb.w2.y.to_double()};
    V2 d = std::get<InPlane>(S).plane;
    double dx = d.x.to_double(), dy = d.y.to_double();

    res.phi = rot;
    res.best = eval(rot);
    auto candidate = [&](const IMat &g, HeisAut &out) {
        double gd[4] = {static_cast<double>(g.a), static_cast<double>(g.b), static_cast<double>(g.c),
                        static_cast<double>(g.d)};
        double B11 = B0[0] * gd[0] + B0[1] * gd[2], B12 = B0[0] * gd[1] + B0[1] * gd[3];
        double B21 = B0[2] * gd[0] + B0[3] * gd[2], B22 = B0[2] * gd[1] + B0[3] * gd[3];
        double nn = B21 * B21 + B22 * B22;
        double det = B11 * B22 - B12 * B21;
        if (nn == 0 || det == 0)
            return false;
        double mu = (T.B[2] * B21 + T.B[3] * B22) / nn;
        // T1j = alpha B1j + kappa B2j
        double alpha = (T.B[0] * B22 - T.B[1] * B21) / det;
        double kappa = (B11 * T.B[1] - B12 * T.B[0]) / det;
        double ex = -dy, ey = dx, nu = alpha / mu;
        // badly scaled maps are beyond any sampling pitch
        auto tame = [](double x) { return std::isfinite(x) && std::abs(x) > 1e-9 && std::abs(x) < 1e9; };
        if (!tame(mu) || !tame(nu) || !std::isfinite(kappa) || std::abs(kappa / mu) > 1e9)
            return false;
        Mat2 G{mu * dx * dx + nu * ex * ex, mu * dx * dy + nu * ex * ey, mu * dy * dx + nu * ey * ex,
               mu * dy * dy + nu * ey * ey};
        double c = -kappa / mu;
        out = aut_compose(HeisAut{V2{c * ex, c * ey}, G}, rot);
        return true;
    };

    std::vector<IMat> structured;
    std::vector<std::pair<long, long>> from = directions(B0[2], B0[3], 12);
    std::vector<std::pair<long, long>> to = directions(T.B[2], T.B[3], 40);
    for (auto [m1, m2] : from)
        for (auto [p, q] : to)
            for (int sg : {1, -1})
                structured.push_back(to_e2(m1, m2) * from_e2(sg * p, sg * q));

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> kdist(-3, 3);
    std::uniform_int_distribution<int> len(1, 6), coin(0, 1);
    IMat best_g{1, 0, 0, 1};
    for (long step = 0; step < budget; ++step) {
        IMat g;
        if (static_cast<std::size_t>(step) < structured.size()) {
            g = structured[static_cast<std::size_t>(step)];
        } else {
            g = best_g;
            int L = len(rng);
            for (int i = 0; i < L; ++i) {
                long k = kdist(rng);
                g = g * (coin(rng) ? IMat{1, k, 0, 1} : IMat{1, 0, k, 1});
            }
        }
        HeisAut phi;
        if (candidate(g, phi)) {
            double dist = eval(phi);
            if (dist < res.best) {
                res.best = dist;
                res.phi = phi;
                best_g = g;
            }
        }
        res.best_trace.push_back(res.best);
        res.steps = step + 1;
    }
    return res;
}

} // namespace chabauty
