#include "chabauty/heis_subgroups.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace chabauty
{

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_zero_point(const HeisPoint &h)
{
    return is_zero(h.x) && is_zero(h.y) && is_zero(h.t);
}

const Real &first_nonzero(const HeisPoint &h)
{
    if (!is_zero(h.x))
        return h.x;
    if (!is_zero(h.y))
        return h.y;
    return h.t;
}

double ell(double x, double y, double t)
{
    return std::hypot(x, y) + std::abs(t);
}

bool central_line(const LineCyclicC &lc)
{
    return sign_tol(lc.dir.y, 1.0) == 0;
}

// primitive (m, k) with m a + k b = 0, when a/b is rational (or a, b exact)
bool integer_relation(const Real &a, const Real &b, long &m, long &k)
{
    if (is_zero(a) && is_zero(b))
        return false;
    if (is_zero(b)) {
        m = 0;
        k = 1;
        return true;
    }
    if (is_zero(a)) {
        m = 1;
        k = 0;
        return true;
    }
    if (a.is_exact() && b.is_exact()) {
        mpq_class q = a.exact() / b.exact(); // m q + k = 0
        mpz_class num = q.get_num(), den = q.get_den();
        m = den.get_si();
        k = -num.get_si();
        return true;
    }
    long p, q;
    if (!rationalize(a.to_double() / b.to_double(), 1e-12, 1000000, p, q))
        return false;
    m = q;
    k = -p;
    return true;
}

double one_param_distance(const HeisPoint &dir, double x, double y, double t)
{
    double x0 = dir.x.to_double(), y0 = dir.y.to_double(), t0 = dir.t.to_double();
    if (x0 == 0 && y0 == 0)
        return std::hypot(x, y);
    double c = t0 + 0.5 * (x0 * y - y0 * x);
    auto f = [&](double s) { return std::hypot(x - s * x0, y - s * y0) + std::abs(t - s * c); };
    double sb = (x * x0 + y * y0) / (x0 * x0 + y0 * y0);
    if (c == 0)
        return f(sb);
    double sa = t / c;
    double lo = std::min(sa, sb), hi = std::max(sa, sb);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1 + std::abs(lo)); ++it) {
        double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        if (f(m1) <= f(m2))
            hi = m2;
        else
            lo = m1;
    }
    return std::min({f(lo), f(sa), f(sb)});
}

struct LatticeD
{
    double x1, y1, x2, y2, A, r, r2, step;
};

LatticeD to_double(const LatticeN &C)
{
    LatticeD l;
    l.x1 = C.L.w1.x.to_double();
    l.y1 = C.L.w1.y.to_double();
    l.x2 = C.L.w2.x.to_double();
    l.y2 = C.L.w2.y.to_double();
    l.A = C.L.coarea().to_double();
    l.r = C.r.to_double();
    l.r2 = C.r2.to_double();
    l.step = l.A / static_cast<double>(C.n);
    return l;
}

double lattice_n_distance(const LatticeN &C, double x, double y, double t)
{
    LatticeD l = to_double(C);
    double m0 = (x * l.y2 - y * l.x2) / l.A, k0 = (l.x1 * y - l.y1 * x) / l.A;
    double dmin = distance_c(LatticeC{C.L}, cplx(x, y));
    double rho = dmin + l.step / 2 + 1e-12;
    double n1 = std::hypot(l.x1, l.y1), n2 = std::hypot(l.x2, l.y2);
    long mlo = static_cast<long>(std::floor(m0 - rho * n2 / l.A)), mhi = static_cast<long>(std::ceil(m0 + rho * n2 / l.A));
    long klo = static_cast<long>(std::floor(k0 - rho * n1 / l.A)), khi = static_cast<long>(std::ceil(k0 + rho * n1 / l.A));
    double best = kInf;
    for (long m = mlo; m <= mhi; ++m)
        for (long k = klo; k <= khi; ++k) {
            double md = static_cast<double>(m), kd = static_cast<double>(k);
            double gx = md * l.x1 + kd * l.x2, gy = md * l.y1 + kd * l.y2;
            double dz = std::hypot(x - gx, y - gy);
            if (dz > rho)
                continue;
            double tb = l.A * (md * l.r + kd * l.r2 + md * kd / 2);
            double rest = t - 0.5 * (gx * y - gy * x) - tb;
            double res = std::abs(rest - l.step * std::round(rest / l.step));
            best = std::min(best, dz + res);
        }
    return best;
}

std::vector<double> sym_grid(double half, double spacing)
{
    long N = static_cast<long>(std::floor(half / spacing + 1e-9));
    std::vector<double> out;
    for (long j = -N; j <= N; ++j)
        out.push_back(static_cast<double>(j) * spacing);
    return out;
}

std::vector<P3> sample_p3(const SubgroupH &C, double R, double spacing)
{
    if (!(R > 0) || !(spacing > 0))
        throw std::invalid_argument("sampling needs positive radius and spacing");
    std::vector<P3> out;
    const double slack = 1e-12 * (1 + R);
    if (std::holds_alternative<TrivialH>(C)) {
        out.push_back({});
    } else if (auto c = std::get_if<CyclicH>(&C)) {
        double x = c->gen.x.to_double(), y = c->gen.y.to_double(), t = c->gen.t.to_double();
        long K = static_cast<long>(std::floor(R / ell(x, y, t) + 1e-12));
        for (long k = -K; k <= K; ++k) {
            double kd = static_cast<double>(k);
            out.push_back({kd * x, kd * y, kd * t});
        }
    } else if (auto o = std::get_if<OneParamH>(&C)) {
        double x = o->dir.x.to_double(), y = o->dir.y.to_double(), t = o->dir.t.to_double();
        double l = ell(x, y, t);
        long N = static_cast<long>(std::ceil(R / spacing));
        for (long j = -N; j <= N; ++j) {
            double s = static_cast<double>(j) * R / (static_cast<double>(N) * l);
            out.push_back({s * x, s * y, s * t});
        }
    } else if (auto pl = std::get_if<PlaneH>(&C)) {
        double dx = pl->dir.x.to_double(), dy = pl->dir.y.to_double();
        for (double s : sym_grid(R, spacing))
            for (double t : sym_grid(R - std::abs(s) + slack, spacing))
                out.push_back({s * dx, s * dy, t});
    } else if (auto ip = std::get_if<InPlane>(&C)) {
        double dx = ip->plane.x.to_double(), dy = ip->plane.y.to_double();
        for (cplx c : sample_ball_c(ip->inner, R, spacing))
            if (std::abs(c.real()) + std::abs(c.imag()) <= R + slack)
                out.push_back({c.imag() * dx, c.imag() * dy, c.real()});
    } else if (auto ln = std::get_if<LatticeN>(&C)) {
        LatticeD l = to_double(*ln);
        for (cplx z : sample_ball_c(LatticeC{ln->L}, R, spacing)) {
            double md = std::round((z.real() * l.y2 - z.imag() * l.x2) / l.A);
            double kd = std::round((l.x1 * z.imag() - l.y1 * z.real()) / l.A);
            double room = R - std::abs(z);
            double tb = l.A * (md * l.r + kd * l.r2 + md * kd / 2);
            long jlo = static_cast<long>(std::ceil((-room - tb) / l.step - 1e-12));
            long jhi = static_cast<long>(std::floor((room - tb) / l.step + 1e-12));
            for (long j = jlo; j <= jhi; ++j)
                out.push_back({z.real(), z.imag(), tb + static_cast<double>(j) * l.step});
        }
    } else if (std::holds_alternative<PreimageLattice>(C) || std::holds_alternative<PreimageLineCyclic>(C)) {
        SubgroupC base = std::holds_alternative<PreimageLattice>(C) ? SubgroupC(LatticeC{std::get<PreimageLattice>(C).L})
                                                                     : SubgroupC(std::get<PreimageLineCyclic>(C).inner);
        for (cplx z : sample_ball_c(base, R, spacing))
            for (double t : sym_grid(R - std::abs(z) + slack, spacing))
                out.push_back({z.real(), z.imag(), t});
    } else {
        // a full 3D grid at the requested pitch is out of reach for large R; the
        // pitch is capped so the count stays near 10^5
        double h = std::max(spacing, R / 40);
        for (double x : sym_grid(R, h))
            for (double y : sym_grid(std::sqrt(std::max(0.0, R * R - x * x)), h)) {
                double room = R - std::hypot(x, y);
                for (double t : sym_grid(room + slack, h))
                    out.push_back({x, y, t});
            }
    }
    return out;
}

} // namespace

SubgroupH make_trivial_h()
{
    return TrivialH{};
}

SubgroupH make_full_h()
{
    return FullH{};
}

SubgroupH make_cyclic_h(const HeisPoint &gen)
{
    if (is_zero_point(gen))
        return TrivialH{};
    if (sign(first_nonzero(gen)) < 0)
        return CyclicH{heis_inverse(gen)};
    return CyclicH{gen};
}

SubgroupH make_one_param_h(const HeisPoint &dir)
{
    if (is_zero_point(dir))
        return TrivialH{};
    Real f = first_nonzero(dir);
    return OneParamH{{dir.x / f, dir.y / f, dir.t / f}};
}

SubgroupH make_plane_h(const V2 &dir)
{
    if (is_zero(dir.x) && is_zero(dir.y))
        throw std::invalid_argument("plane direction must be nonzero");
    return PlaneH{unit(half_plane_rep(dir))};
}

HeisPoint plane_point(const V2 &d, const V2 &c)
{
    return {c.y * d.x, c.y * d.y, c.x};
}

V2 plane_coord(const V2 &d, const HeisPoint &h)
{
    return {h.t, dot(h.z(), d)};
}

SubgroupH make_in_plane(const V2 &plane, const SubgroupC &inner_in)
{
    if (is_zero(plane.x) && is_zero(plane.y))
        throw std::invalid_argument("plane direction must be nonzero");
    V2 d0 = unit(plane);
    V2 d = unit(half_plane_rep(plane));
    SubgroupC inner = d == d0 ? inner_in : conjugate(inner_in);
    if (std::holds_alternative<TrivialC>(inner))
        return TrivialH{};
    if (auto c = std::get_if<CyclicC>(&inner))
        return make_cyclic_h(plane_point(d, c->w));
    if (auto l = std::get_if<LineC>(&inner))
        return make_one_param_h(plane_point(d, l->dir));
    if (std::holds_alternative<FullC>(inner))
        return PlaneH{d};
    return InPlane{d, inner};
}

SubgroupH make_preimage(const SubgroupC &C)
{
    if (std::holds_alternative<TrivialC>(C))
        return OneParamH{{0, 0, 1}};
    if (auto c = std::get_if<CyclicC>(&C))
        return make_in_plane(c->w, make_line_cyclic(V2{1, 0}, sqrt(norm2(c->w))));
    if (auto l = std::get_if<LineC>(&C))
        return make_plane_h(l->dir);
    if (auto lc = std::get_if<LineCyclicC>(&C))
        return PreimageLineCyclic{*lc};
    if (auto l = std::get_if<LatticeC>(&C))
        return PreimageLattice{l->basis};
    return FullH{};
}

SubgroupH lambda_n(long n)
{
    return lattice_from_coords({V2{1, 0}, V2{0, 1}}, n, 0, 0);
}

SubgroupH lambda_prime_n(long n)
{
    return lattice_from_generators({1, 0, Real::frac(1, 2)}, {0, 1, Real::frac(1, 2)}, Real::frac(1, n));
}

bool is_abelian(const SubgroupH &C)
{
    return C.index() <= 4;
}

bool contains_center(const SubgroupH &C)
{
    if (auto o = std::get_if<OneParamH>(&C))
        return is_zero(o->dir.x) && is_zero(o->dir.y);
    if (auto ip = std::get_if<InPlane>(&C)) {
        auto lc = std::get_if<LineCyclicC>(&ip->inner);
        return lc && central_line(*lc);
    }
    return std::holds_alternative<PlaneH>(C) || C.index() >= 6;
}

P3 to_p3(const HeisPoint &h)
{
    return {h.x.to_double(), h.y.to_double(), h.t.to_double()};
}

namespace
{

std::function<double(const P3 &)> exact_oracle(const SubgroupH &C)
{
    if (std::holds_alternative<TrivialH>(C))
        return [](const P3 &p) { return ell(p.x, p.y, p.t); };
    if (std::holds_alternative<FullH>(C))
        return [](const P3 &) { return 0.0; };
    if (auto o = std::get_if<OneParamH>(&C)) {
        HeisPoint dir = o->dir;
        return [dir](const P3 &p) { return one_param_distance(dir, p.x, p.y, p.t); };
    }
    if (auto pl = std::get_if<PlaneH>(&C)) {
        double dx = pl->dir.x.to_double(), dy = pl->dir.y.to_double();
        return [dx, dy](const P3 &p) { return std::abs(dx * p.y - dy * p.x); };
    }
    if (auto ln = std::get_if<LatticeN>(&C)) {
        LatticeN l = *ln;
        return [l](const P3 &p) { return lattice_n_distance(l, p.x, p.y, p.t); };
    }
    if (auto pl = std::get_if<PreimageLattice>(&C)) {
        SubgroupC base = LatticeC{pl->L};
        return [base](const P3 &p) { return distance_c(base, cplx(p.x, p.y)); };
    }
    if (auto pl = std::get_if<PreimageLineCyclic>(&C)) {
        SubgroupC base = pl->inner;
        return [base](const P3 &p) { return distance_c(base, cplx(p.x, p.y)); };
    }
    return {};
}

} // namespace

bool membership_h(const SubgroupH &C, const HeisPoint &h, double eps)
{
    if (eps < 0)
        throw std::invalid_argument("eps must be nonnegative");
    bool exact = eps == 0 && h.is_exact();
    double x = h.x.to_double(), y = h.y.to_double(), t = h.t.to_double();
    if (std::holds_alternative<TrivialH>(C))
        return exact ? is_zero_point(h) : ell(x, y, t) <= eps;
    if (std::holds_alternative<FullH>(C))
        return true;
    if (auto c = std::get_if<CyclicH>(&C)) {
        const HeisPoint &g = c->gen;
        Real k = !is_zero(g.x) ? h.x / g.x : !is_zero(g.y) ? h.y / g.y : h.t / g.t;
        if (exact && g.is_exact())
            return is_integer(k) && heis_pow(g, k) == h;
        double kd = std::round(k.to_double());
        return ell(x - kd * g.x.to_double(), y - kd * g.y.to_double(), t - kd * g.t.to_double()) <= eps;
    }
    if (auto o = std::get_if<OneParamH>(&C)) {
        const HeisPoint &d = o->dir;
        if (exact && d.is_exact()) {
            Real s = !is_zero(d.x) ? h.x / d.x : !is_zero(d.y) ? h.y / d.y : h.t / d.t;
            return heis_pow(d, s) == h;
        }
        return one_param_distance(d, x, y, t) <= eps;
    }
    if (auto pl = std::get_if<PlaneH>(&C)) {
        if (exact && pl->dir.is_exact())
            return is_zero(cross(pl->dir, h.z()));
        return std::abs(cross(pl->dir, h.z()).to_double()) <= eps;
    }
    if (auto ip = std::get_if<InPlane>(&C)) {
        Real u = cross(ip->plane, h.z());
        V2 c = plane_coord(ip->plane, h);
        if (exact && ip->plane.is_exact())
            return is_zero(u) && membership_c(ip->inner, c, 0);
        return std::abs(u.to_double()) <= eps && membership_c(ip->inner, V2::from(c.c()), eps);
    }
    if (auto ln = std::get_if<LatticeN>(&C)) {
        if (exact && ln->L.is_exact() && ln->r.is_exact() && ln->r2.is_exact()) {
            Real A = ln->L.coarea();
            Real m = cross(h.z(), ln->L.w2) / A, k = cross(ln->L.w1, h.z()) / A;
            if (!is_integer(m) || !is_integer(k))
                return false;
            Real tb = A * (m * ln->r + k * ln->r2 + m * k / 2);
            return is_integer((h.t - tb) * Real(ln->n) / A);
        }
        return lattice_n_distance(*ln, x, y, t) <= eps;
    }
    if (auto pl = std::get_if<PreimageLattice>(&C))
        return membership_c(LatticeC{pl->L}, h.z(), eps);
    return membership_c(std::get<PreimageLineCyclic>(C).inner, h.z(), eps);
}

std::vector<HeisPoint> sample_ball_h(const SubgroupH &C, double R, double spacing)
{
    std::vector<HeisPoint> out;
    for (const P3 &p : sample_p3(C, R, spacing))
        out.push_back({p.x, p.y, p.t});
    return out;
}

SampledSet sampled_h(const SubgroupH &C, double R, double spacing)
{
    SampledSet s;
    s.points = sample_p3(C, R, spacing);
    s.exact = exact_oracle(C);
    return s;
}

SampledSet oracle_only_h(const SubgroupH &C)
{
    SampledSet s;
    s.points = {P3{}};
    s.exact = exact_oracle(C);
    return s;
}

SubgroupC p_star(const SubgroupH &C)
{
    if (auto ln = std::get_if<LatticeN>(&C))
        return LatticeC{ln->L};
    if (auto pl = std::get_if<PreimageLattice>(&C))
        return LatticeC{pl->L};
    if (auto pl = std::get_if<PreimageLineCyclic>(&C))
        return pl->inner;
    if (std::holds_alternative<FullH>(C))
        return FullC{};
    throw DomainError("p_star is defined off the abelian subgroups; an abelian projection need not be closed");
}

std::string CenterData::str() const
{
    switch (kind) {
    case Kind::trivial:
        return "{0}";
    case Kind::line:
        return "R";
    case Kind::cyclic:
        return "(" + gen.str() + ")Z";
    }
    return "";
}

CenterData center_data(const SubgroupH &C)
{
    CenterData cd;
    using K = CenterData::Kind;
    if (auto c = std::get_if<CyclicH>(&C)) {
        if (is_zero(c->gen.x) && is_zero(c->gen.y)) {
            cd.kind = K::cyclic;
            cd.gen = abs(c->gen.t);
        }
    } else if (std::holds_alternative<OneParamH>(C) || std::holds_alternative<PlaneH>(C)) {
        if (contains_center(C))
            cd.kind = K::line;
    } else if (auto ip = std::get_if<InPlane>(&C)) {
        if (auto lc = std::get_if<LineCyclicC>(&ip->inner)) {
            if (central_line(*lc)) {
                cd.kind = K::line;
            } else {
                cd.kind = K::cyclic;
                cd.gen = lc->step / abs(lc->dir.y);
            }
        } else {
            const LatticeBasis &b = std::get<LatticeC>(ip->inner).basis;
            long m, k;
            if (integer_relation(b.w1.y, b.w2.y, m, k)) {
                cd.kind = K::cyclic;
                cd.gen = abs(Real(m) * b.w1.x + Real(k) * b.w2.x);
            }
        }
    } else if (auto ln = std::get_if<LatticeN>(&C)) {
        cd.kind = K::cyclic;
        cd.commutator = ln->L.coarea();
        cd.gen = cd.commutator / Real(ln->n);
    } else if (auto pl = std::get_if<PreimageLattice>(&C)) {
        cd.kind = K::line;
        cd.commutator = pl->L.coarea();
    } else if (!std::holds_alternative<TrivialH>(C)) {
        cd.kind = K::line;
    }
    return cd;
}

SubgroupH q_star(const SubgroupH &C)
{
    if (is_abelian(C))
        throw DomainError("q_star is not defined on abelian subgroups");
    if (auto ln = std::get_if<LatticeN>(&C))
        return PreimageLattice{ln->L};
    return C;
}

StratumTag classify_stratum(const SubgroupH &C)
{
    static const char *names[] = {"trivial", "Z", "R", "R2", "", "Ln", "L-infinity", "preimage-RZ", "full"};
    StratumTag st;
    st.tag = names[C.index()];
    if (auto ip = std::get_if<InPlane>(&C))
        st.tag = std::holds_alternative<LatticeC>(ip->inner) ? "Z2" : "RZ";
    if (auto ln = std::get_if<LatticeN>(&C))
        st.n = ln->n;
    st.has_center = contains_center(C);
    bool plane = std::holds_alternative<PlaneH>(C);
    st.in_D_minus = st.has_center && is_abelian(C);
    st.in_D_plus = plane || std::holds_alternative<PreimageLineCyclic>(C) || std::holds_alternative<FullH>(C);
    return st;
}

std::string classify_orbit(const SubgroupH &C)
{
    StratumTag st = classify_stratum(C);
    if (st.tag == "Z") {
        const HeisPoint &g = std::get<CyclicH>(C).gen;
        return is_zero(g.x) && is_zero(g.y) ? "central Z" : "non-central Z";
    }
    if (st.tag == "R")
        return st.has_center ? "central R" : "non-central R";
    if (st.tag == "RZ")
        return st.has_center ? "central identity component" : "non-central identity component";
    if (st.tag == "Z2")
        return "continuum family";
    if (st.tag == "Ln")
        return "L" + std::to_string(st.n) + " single orbit";
    return st.tag;
}

AbelianChart abelian_chart(const SubgroupH &A)
{
    if (!is_abelian(A))
        throw DomainError("abelian_chart needs an abelian subgroup");
    AbelianChart ch;
    V2 d;
    if (auto c = std::get_if<CyclicH>(&A)) {
        if (is_zero(c->gen.x) && is_zero(c->gen.y))
            throw DomainError("abelian_chart refuses subgroups of the center");
        d = unit(half_plane_rep(c->gen.z()));
        ch.inner = make_cyclic(plane_coord(d, c->gen));
    } else if (auto o = std::get_if<OneParamH>(&A)) {
        if (is_zero(o->dir.x) && is_zero(o->dir.y))
            throw DomainError("abelian_chart refuses subgroups of the center");
        d = unit(half_plane_rep(o->dir.z()));
        ch.inner = make_line(plane_coord(d, o->dir));
    } else if (auto pl = std::get_if<PlaneH>(&A)) {
        d = pl->dir;
        ch.inner = FullC{};
    } else if (auto ip = std::get_if<InPlane>(&A)) {
        d = ip->plane;
        ch.inner = ip->inner;
    } else {
        throw DomainError("abelian_chart refuses subgroups of the center");
    }
    ch.phi = std::atan2(d.y.to_double(), d.x.to_double());
    ch.phi_alt = ch.phi + std::numbers::pi;
    ch.q = f_inverse(ch.inner);
    ch.q_alt = ch.q;
    if (!ch.q.infinite) {
        ch.q_alt.a = std::conj(ch.q.a);
        ch.q_alt.b = std::conj(ch.q.b);
    }
    return ch;
}

SpherePoint rho_twist(const SpherePoint &q, double phi)
{
    if (q.infinite)
        return q;
    double c = std::cos(phi), s = std::sin(phi);
    double a2 = q.a.imag(), b2 = q.b.imag();
    return SpherePoint::finite({q.a.real(), a2 * c - b2 * s}, {q.b.real(), a2 * s + b2 * c});
}

SpherePoint center_chart(const SubgroupH &C)
{
    if (!contains_center(C))
        throw DomainError("center_chart needs a subgroup containing the center");
    if (std::holds_alternative<OneParamH>(C))
        return f_inverse(TrivialC{});
    if (auto pl = std::get_if<PlaneH>(&C))
        return f_inverse(make_line(pl->dir));
    if (auto ip = std::get_if<InPlane>(&C)) {
        const LineCyclicC &lc = std::get<LineCyclicC>(ip->inner);
        return f_inverse(make_cyclic(lc.step * ip->plane));
    }
    return f_inverse(p_star(C));
}

} // namespace chabauty
