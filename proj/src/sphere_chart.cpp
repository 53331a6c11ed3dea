#include "chabauty/sphere_chart.hpp"

#include "chabauty/eisenstein.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace chabauty
{

namespace
{

using std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_finite_nonzero(const SpherePoint &p, const char *what)
{
    if (p.infinite || p.is_origin())
        throw DomainError(std::string(what) + " needs a finite nonzero point");
}

// s > 0 with |a|^2 s^2 + |b|^2 s^3 = r^2
double orbit_parameter(double na2, double nb2, double r)
{
    double r2 = r * r;
    double hi = kInf;
    if (na2 > 0)
        hi = std::min(hi, r / std::sqrt(na2));
    if (nb2 > 0)
        hi = std::min(hi, std::cbrt(r2 / nb2));
    double lo = 0;
    auto F = [&](double s) { return na2 * s * s + nb2 * s * s * s - r2; };
    double s = hi;
    for (int it = 0; it < 200; ++it) {
        double f = F(s);
        if (f > 0)
            hi = s;
        else
            lo = s;
        double df = 2 * na2 * s + 3 * nb2 * s * s;
        double next = s - f / df;
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        if (std::abs(next - s) <= 1e-16 * s)
            return next;
        s = next;
    }
    return s;
}

SpherePoint act(const SpherePoint &p, double s)
{
    return SpherePoint::finite(s * p.a, s * std::sqrt(s) * p.b);
}

double retract_parameter(const SpherePoint &p)
{
    return orbit_parameter(std::norm(p.a), std::norm(p.b), 1.0);
}

struct Solve
{
    cplx tau, lambda;
    double residual;
};

double residual_of(const TauSeries &s, cplx lambda, cplx A, cplx B)
{
    cplx l2 = lambda * lambda;
    return std::abs(l2 * s.g2 - A) + std::abs(l2 * lambda * s.g3 - B);
}

cplx best_lambda(const TauSeries &s, cplx A, cplx B)
{
    std::vector<cplx> cands;
    if (std::abs(s.g2) > 1e-12) {
        cplx r = std::sqrt(A / s.g2);
        cands.push_back(r);
        cands.push_back(-r);
    }
    if (std::abs(s.g3) > 1e-12) {
        cplx r = std::pow(B / s.g3, 1.0 / 3);
        for (int k = 0; k < 3; ++k)
            cands.push_back(r * std::polar(1.0, 2 * pi * k / 3));
    }
    cplx best = cands.empty() ? cplx(1) : cands.front();
    double bres = kInf;
    for (cplx c : cands) {
        double r = residual_of(s, c, A, B);
        if (r < bres) {
            bres = r;
            best = c;
        }
    }
    return best;
}

// move (tau, lambda) back into the fundamental domain keeping the lattice
void renormalize(cplx &tau, cplx &lambda)
{
    cplx w1 = 1.0 / std::sqrt(lambda);
    cplx w2 = w1 * tau;
    LatticeBasis b = reduce_basis(V2::from(w1), V2::from(w2));
    cplx n1 = b.w1.c(), n2 = b.w2.c();
    tau = n2 / n1;
    lambda = 1.0 / (n1 * n1);
}

cplx seed_tau(cplx j)
{
    cplx best = cplx(0, 1);
    double bres = kInf;
    auto score = [&](cplx t) {
        double r = std::abs(j_invariant(t) - j) / (std::abs(j) + 1728);
        if (r < bres) {
            bres = r;
            best = t;
        }
    };
    for (int iy = 0; iy <= 40; ++iy) {
        double y = 0.87 * std::pow(7.0 / 0.87, iy / 40.0);
        for (int ix = -10; ix <= 10; ++ix) {
            double x = 0.05 * ix;
            if (x * x + y * y < 0.99)
                continue;
            score(cplx(x, y));
        }
    }
    if (std::abs(j) > 1e6) {
        cplx t = std::log(1.0 / (j - 744.0)) / cplx(0, 2 * pi);
        t -= std::floor(t.real() + 0.5);
        if (t.imag() > 0)
            score(t);
    }
    return best;
}

Solve solve_lattice(cplx A, cplx B)
{
    cplx a3 = A * A * A;
    cplx j = 1728.0 * a3 / (a3 - 27.0 * B * B);
    cplx tau = seed_tau(j);
    TauSeries s = eisenstein_tau(tau);
    cplx lambda = best_lambda(s, A, B);
    double res = residual_of(s, lambda, A, B);
    for (int it = 0; it < 100 && res > 1e-15; ++it) {
        cplx l2 = lambda * lambda;
        cplx f1 = l2 * s.g2 - A, f2 = l2 * lambda * s.g3 - B;
        cplx j11 = l2 * s.dg2, j12 = 2.0 * lambda * s.g2;
        cplx j21 = l2 * lambda * s.dg3, j22 = 3.0 * l2 * s.g3;
        cplx det = j11 * j22 - j12 * j21;
        cplx dt = (f1 * j22 - f2 * j12) / det;
        cplx dl = (j11 * f2 - j21 * f1) / det;
        double step = 1;
        bool moved = false;
        for (int h = 0; h < 40; ++h, step *= 0.5) {
            cplx nt = tau - step * dt, nl = lambda - step * dl;
            if (!(nt.imag() > 0.2))
                continue;
            if (std::abs(nt.real()) > 0.6 || std::norm(nt) < 0.8)
                renormalize(nt, nl);
            TauSeries ns = eisenstein_tau(nt);
            double nr = residual_of(ns, nl, A, B);
            if (nr < res) {
                tau = nt;
                lambda = nl;
                s = ns;
                res = nr;
                moved = true;
                break;
            }
        }
        if (!moved)
            break;
    }
    return {tau, lambda, res};
}

} // namespace

double SpherePoint::norm() const
{
    if (infinite)
        return kInf;
    return std::sqrt(std::norm(a) + std::norm(b));
}

double sphere_distance(const SpherePoint &p, const SpherePoint &q)
{
    if (p.infinite || q.infinite)
        return p.infinite == q.infinite ? 0 : kInf;
    return std::sqrt(std::norm(p.a - q.a) + std::norm(p.b - q.b));
}

namespace sigma
{
double residual(const SpherePoint &p)
{
    if (p.infinite)
        return kInf;
    double den = std::pow(std::abs(p.a), 3) + std::norm(p.b);
    if (den == 0)
        return 0;
    return std::abs(p.a * p.a * p.a - 27.0 * p.b * p.b) / den;
}

bool contains(const SpherePoint &p, double tol)
{
    return !p.infinite && residual(p) <= tol;
}
} // namespace sigma

SpherePoint pi_retract(const SpherePoint &p)
{
    require_finite_nonzero(p, "pi_retract");
    return act(p, retract_parameter(p));
}

SpherePoint orbit_point(const SpherePoint &p, double norm)
{
    require_finite_nonzero(p, "orbit_point");
    if (!(norm > 0))
        throw DomainError("orbit_point needs a positive norm");
    return act(p, orbit_parameter(std::norm(p.a), std::norm(p.b), norm));
}

SubgroupC gamma(const SpherePoint &p)
{
    if (p.infinite)
        throw DomainError("gamma is not defined at infinity");
    if (p.is_origin())
        return TrivialC{};
    if (sigma::contains(p)) {
        cplx w0 = std::pow(4 * std::pow(pi, 4) / (3.0 * p.a), 0.25);
        cplx best = w0;
        double bres = kInf;
        for (int k = 0; k < 4; ++k) {
            cplx w = w0 * std::pow(cplx(0, 1), k);
            double r = std::abs(cyclic_closed_form(w).second - p.b);
            if (r < bres) {
                bres = r;
                best = w;
            }
        }
        return make_cyclic(V2::from(best));
    }
    // work on the unit sphere: gamma(t.p) = sqrt(t) gamma(p) with t^-2 = s
    double s = retract_parameter(p);
    SpherePoint q = act(p, s);
    Solve sol = solve_lattice(q.a, q.b);
    if (!(sol.residual <= 1e-10))
        throw NumericFailure("lattice inversion did not converge", sol.residual);
    cplx w1 = std::pow(s, 0.25) / std::sqrt(sol.lambda);
    SubgroupC L = make_lattice(V2::from(w1), V2::from(w1 * sol.tau));
    EisensteinResult chk = eisenstein_invariants(L);
    double rel = (std::abs(chk.g2 - p.a) + std::abs(chk.g3 - p.b)) / (std::abs(p.a) + std::abs(p.b));
    if (!(rel <= 1e-8))
        throw NumericFailure("lattice inversion failed its post-check", rel);
    return L;
}

double phi_coarea(const SpherePoint &p)
{
    require_finite_nonzero(p, "phi_coarea");
    if (sigma::contains(p))
        return kInf;
    return std::sqrt(coarea(gamma(pi_retract(p))));
}

double h_map(const SpherePoint &p)
{
    if (p.infinite)
        throw DomainError("h_map needs a point of the closed ball");
    if (p.is_origin())
        return 0;
    double r = p.norm();
    double phi = phi_coarea(p);
    if (std::isinf(phi))
        return r >= 1 ? kInf : r / (1 - r);
    return r / (1 + (1 / phi - 1) * r);
}

SpherePoint inversion_delta(const SpherePoint &p)
{
    if (p.infinite)
        return SpherePoint::finite(0.0, 0.0);
    if (p.is_origin())
        return SpherePoint::infinity();
    double n2 = std::norm(p.a) + std::norm(p.b);
    return SpherePoint::finite(p.a / n2, p.b / n2);
}

SubgroupC f_chart(const SpherePoint &p)
{
    if (p.infinite)
        return FullC{};
    if (p.is_origin())
        return TrivialC{};
    double r = p.norm();
    if (r > 1 + 1e-14)
        return dual(f_chart(inversion_delta(p)));
    SubgroupC L0 = gamma(pi_retract(p));
    if (sigma::contains(p)) {
        V2 w = std::get<CyclicC>(L0).w;
        if (std::abs(r - 1) <= 1e-12)
            return make_line(w);
        double h = r / (1 - r);
        return make_cyclic(V2::from(w.c() / h));
    }
    double h = h_map(p);
    return scale_action(1 / (h * h), L0);
}

SpherePoint f_inverse(const SubgroupC &C)
{
    if (std::holds_alternative<TrivialC>(C))
        return SpherePoint::finite(0.0, 0.0);
    if (std::holds_alternative<FullC>(C))
        return SpherePoint::infinity();
    if (auto l = std::get_if<LineC>(&C)) {
        auto [a, b] = cyclic_closed_form(l->dir.c());
        return pi_retract(SpherePoint::finite(a, b));
    }
    if (auto c = std::get_if<CyclicC>(&C)) {
        auto [a, b] = cyclic_closed_form(c->w.c());
        SpherePoint g = SpherePoint::finite(a, b);
        double s = retract_parameter(g);
        double h = std::pow(s, -0.25);
        return orbit_point(g, h / (1 + h));
    }
    if (std::holds_alternative<LatticeC>(C)) {
        double A = coarea(C);
        if (A >= 1 - 1e-12) {
            EisensteinResult e = eisenstein_invariants(C);
            SpherePoint g = SpherePoint::finite(e.g2, e.g3);
            double s = retract_parameter(g);
            double h = std::pow(s, -0.25);
            double phi = h * std::sqrt(A);
            double r = h / (1 - h / phi + h);
            return orbit_point(g, std::min(r, 1.0));
        }
    }
    return inversion_delta(f_inverse(dual(C)));
}

std::vector<SpherePoint> trefoil_sample(int count)
{
    if (count < 1)
        throw DomainError("trefoil_sample needs count >= 1");
    std::vector<SpherePoint> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        cplx c = std::polar(1.0, 2 * pi * k / count);
        out.push_back(pi_retract(SpherePoint::finite(3.0 * c * c, c * c * c)));
    }
    return out;
}

} // namespace chabauty
