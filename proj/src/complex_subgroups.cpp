#include "chabauty/complex_subgroups.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <optional>
#include <cmath>
#include <numeric>

namespace chabauty
{

namespace
{

constexpr double kTieTol = 1e-12;

V2 rot90(const V2 &v)
{
    return {-v.y, v.x};
}

// Ordering key for |arg w|, smallest first; second slot breaks ties toward Im w > 0.
struct ArgKey
{
    int half;
    Real slope;
};

ArgKey arg_key(const V2 &w)
{
    double scale = norm(w);
    int sx = sign_tol(w.x, scale, kTieTol);
    if (sx > 0)
        return {0, abs(w.y) / w.x};
    if (sx == 0)
        return {1, 0};
    return {2, abs(w.y) / w.x};
}

// true when a should be preferred over b as canonical w1
bool arg_before(const V2 &a, const V2 &b)
{
    ArgKey ka = arg_key(a), kb = arg_key(b);
    if (ka.half != kb.half)
        return ka.half < kb.half;
    int c = sign_tol(ka.slope - kb.slope, 1.0 + abs(ka.slope).to_double(), kTieTol);
    if (c != 0)
        return c < 0;
    return sign_tol(a.y, norm(a), kTieTol) > sign_tol(b.y, norm(b), kTieTol);
}

} // namespace

V2 unit(const V2 &v)
{
    Real n = sqrt(norm2(v));
    if (is_zero(n))
        throw std::domain_error("zero vector has no direction");
    return {v.x / n, v.y / n};
}

V2 half_plane_rep(const V2 &v)
{
    double scale = norm(v);
    int sx = sign_tol(v.x, scale, kTieTol);
    if (sx > 0)
        return v;
    if (sx < 0)
        return -v;
    return sign(v.y) >= 0 ? v : -v;
}

LatticeBasis reduce_basis(const V2 &u0, const V2 &v0)
{
    V2 u = u0, v = v0;
    Real A = cross(u, v);
    double scale = norm2(u).to_double() + norm2(v).to_double();
    if (sign_tol(A, scale, 1e-13) == 0)
        throw DegenerateLattice("basis vectors are linearly dependent over R");
    if (sign(A) < 0)
        v = -v;
    if (norm2(v) < norm2(u)) {
        V2 t = v;
        v = -u;
        u = t;
    }
    for (int it = 0; it < 10000; ++it) {
        Real mu = round_half_up(dot(u, v) / norm2(u));
        if (!is_zero(mu))
            v = v - mu * u;
        if (norm2(v) < norm2(u) && sign_tol(norm2(v) - norm2(u), norm2(u).to_double(), kTieTol) != 0) {
            V2 t = v;
            v = -u;
            u = t;
            continue;
        }
        break;
    }
    Real nu = norm2(u);
    // boundary tie-breaks: Re tau = -1/2 goes to +1/2, |tau| = 1 goes to Re tau >= 0
    if (sign_tol(Real(2) * dot(u, v) + nu, nu.to_double(), kTieTol) == 0)
        v = v + u;
    bool unit_circle = sign_tol(norm2(v) - nu, nu.to_double(), kTieTol) == 0;
    if (unit_circle && sign_tol(dot(u, v), nu.to_double(), kTieTol) < 0) {
        V2 t = v;
        v = -u;
        u = t;
    }
    // automorphisms of the lattice that fix tau pick the representative w1
    std::vector<LatticeBasis> cands{{u, v}, {-u, -v}};
    if (unit_circle && sign_tol(dot(u, v), nu.to_double(), kTieTol) == 0) {
        cands = {{u, v}, {v, -u}, {-u, -v}, {-v, u}};
    } else if (unit_circle && sign_tol(Real(2) * dot(u, v) - nu, nu.to_double(), kTieTol) == 0) {
        cands.clear();
        V2 a = u, b = v;
        for (int k = 0; k < 6; ++k) {
            cands.push_back({a, b});
            V2 na = b, nb = b - a;
            a = na;
            b = nb;
        }
    }
    LatticeBasis best = cands[0];
    for (std::size_t k = 1; k < cands.size(); ++k)
        if (arg_before(cands[k].w1, best.w1))
            best = cands[k];
    return best;
}

SubgroupC make_trivial_c()
{
    return TrivialC{};
}

SubgroupC make_full_c()
{
    return FullC{};
}

SubgroupC make_cyclic(const V2 &w)
{
    if (is_zero(w.x) && is_zero(w.y))
        return TrivialC{};
    return CyclicC{half_plane_rep(w)};
}

SubgroupC make_line(const V2 &dir)
{
    return LineC{half_plane_rep(unit(dir))};
}

SubgroupC make_line_cyclic(const V2 &dir, const Real &step)
{
    if (sign(step) <= 0)
        throw std::invalid_argument("line-cyclic step must be positive");
    return LineCyclicC{half_plane_rep(unit(dir)), step};
}

SubgroupC make_lattice(const V2 &u, const V2 &v)
{
    return LatticeC{reduce_basis(u, v)};
}

std::string stratum_name(const SubgroupC &C)
{
    static const char *names[] = {"trivial", "Z", "R", "RZ", "Z2", "full"};
    return names[C.index()];
}

LatticeInvariants lattice_invariants(const SubgroupC &C)
{
    LatticeInvariants inv;
    const double inf = std::numeric_limits<double>::infinity();
    if (std::holds_alternative<TrivialC>(C)) {
        inv.coarea = inf;
    } else if (auto c = std::get_if<CyclicC>(&C)) {
        inv.ell1 = norm(c->w);
        inv.coarea = inf;
    } else if (auto lc = std::get_if<LineCyclicC>(&C)) {
        inv.ell2 = lc->step.to_double();
        inv.coarea = 0.0;
    } else if (auto l = std::get_if<LatticeC>(&C)) {
        inv.ell1 = norm(l->basis.w1);
        inv.ell2 = norm(l->basis.w2);
        inv.kappa = *inv.ell2 / *inv.ell1;
        inv.coarea = l->basis.coarea().to_double();
    } else if (std::holds_alternative<FullC>(C)) {
        inv.coarea = 0.0;
    }
    return inv;
}

double coarea(const SubgroupC &C)
{
    auto inv = lattice_invariants(C);
    if (!inv.coarea)
        throw UndefinedInvariant("coarea is undefined on a line");
    return *inv.coarea;
}

SubgroupC dual(const SubgroupC &C)
{
    return std::visit(
        [](const auto &c) -> SubgroupC {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, TrivialC>) {
                return FullC{};
            } else if constexpr (std::is_same_v<T, FullC>) {
                return TrivialC{};
            } else if constexpr (std::is_same_v<T, CyclicC>) {
                return make_line_cyclic(c.w, Real(1) / sqrt(norm2(c.w)));
            } else if constexpr (std::is_same_v<T, LineCyclicC>) {
                return make_cyclic({c.dir.x / c.step, c.dir.y / c.step});
            } else if constexpr (std::is_same_v<T, LineC>) {
                return c;
            } else {
                Real s = Real(1) / c.basis.coarea();
                return make_lattice(s * c.basis.w1, s * c.basis.w2);
            }
        },
        C);
}

SubgroupC apply_linear(const Mat2 &m, const SubgroupC &C)
{
    if (is_zero(m.det()))
        throw std::domain_error("singular linear map");
    return std::visit(
        [&](const auto &c) -> SubgroupC {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, TrivialC> || std::is_same_v<T, FullC>) {
                return c;
            } else if constexpr (std::is_same_v<T, CyclicC>) {
                return make_cyclic(m(c.w));
            } else if constexpr (std::is_same_v<T, LineC>) {
                return make_line(m(c.dir));
            } else if constexpr (std::is_same_v<T, LineCyclicC>) {
                V2 line = m(c.dir);
                V2 off = m(c.step * rot90(c.dir));
                return make_line_cyclic(line, abs(cross(unit(line), off)));
            } else {
                return make_lattice(m(c.basis.w1), m(c.basis.w2));
            }
        },
        C);
}

SubgroupC scale_action(cplx s, const SubgroupC &C)
{
    cplx r = std::sqrt(s);
    return apply_linear(Mat2{r.real(), -r.imag(), r.imag(), r.real()}, C);
}

SubgroupC conjugate(const SubgroupC &C)
{
    return apply_linear(Mat2{1, 0, 0, -1}, C);
}

double distance_c(const SubgroupC &C, cplx z)
{
    return std::visit(
        [&](const auto &c) -> double {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, TrivialC>) {
                return std::abs(z);
            } else if constexpr (std::is_same_v<T, FullC>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, CyclicC>) {
                cplx w = c.w.c();
                double n = std::round((z * std::conj(w)).real() / std::norm(w));
                return std::abs(z - n * w);
            } else if constexpr (std::is_same_v<T, LineC>) {
                return std::abs((std::conj(c.dir.c()) * z).imag());
            } else if constexpr (std::is_same_v<T, LineCyclicC>) {
                double off = (std::conj(c.dir.c()) * z).imag();
                double st = c.step.to_double();
                return std::abs(off - st * std::round(off / st));
            } else {
                cplx w1 = c.basis.w1.c(), w2 = c.basis.w2.c();
                double A = (std::conj(w1) * w2).imag();
                double a = (std::conj(z) * w2).imag() / A;
                double b = (std::conj(w1) * z).imag() / A;
                double best = std::numeric_limits<double>::infinity();
                double ra = std::round(a), rb = std::round(b);
                for (int i = -2; i <= 2; ++i)
                    for (int j = -2; j <= 2; ++j)
                        best = std::min(best, std::abs(z - (ra + i) * w1 - (rb + j) * w2));
                return best;
            }
        },
        C);
}

bool membership_c(const SubgroupC &C, const V2 &z, double eps)
{
    if (eps < 0)
        throw std::invalid_argument("negative tolerance");
    if (eps == 0 && z.is_exact()) {
        if (std::holds_alternative<TrivialC>(C))
            return is_zero(z.x) && is_zero(z.y);
        if (std::holds_alternative<FullC>(C))
            return true;
        if (auto c = std::get_if<CyclicC>(&C); c && c->w.is_exact())
            return is_zero(cross(z, c->w)) && is_integer(dot(z, c->w) / norm2(c->w));
        if (auto l = std::get_if<LatticeC>(&C); l && l->basis.is_exact()) {
            Real A = l->basis.coarea();
            return is_integer(cross(z, l->basis.w2) / A) && is_integer(cross(l->basis.w1, z) / A);
        }
        if (auto l = std::get_if<LineC>(&C); l && l->dir.is_exact())
            return is_zero(cross(l->dir, z));
        if (auto l = std::get_if<LineCyclicC>(&C); l && l->dir.is_exact() && l->step.is_exact())
            return is_integer(cross(l->dir, z) / (l->step * norm2(l->dir)));
    }
    return distance_c(C, z.c()) <= eps;
}

namespace
{

// grid of points on [-L, L] with pitch <= spacing, endpoints included
std::vector<double> segment_grid(double L, double spacing)
{
    if (L <= 0)
        return {0.0};
    long N = static_cast<long>(std::ceil(2 * L / spacing));
    std::vector<double> out;
    out.reserve(N + 1);
    for (long k = 0; k <= N; ++k)
        out.push_back(-L + 2 * L * static_cast<double>(k) / static_cast<double>(N));
    return out;
}

} // namespace

std::vector<cplx> sample_ball_c(const SubgroupC &C, double R, double spacing)
{
    if (!(R > 0) || !(spacing > 0))
        throw std::invalid_argument("sample_ball_c needs positive radius and spacing");
    std::vector<cplx> out;
    std::visit(
        [&](const auto &c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, TrivialC>) {
                out.push_back(0.0);
            } else if constexpr (std::is_same_v<T, FullC>) {
                double p = spacing / 2;
                long N = static_cast<long>(std::ceil(R / p));
                for (long i = -N; i <= N; ++i)
                    for (long j = -N; j <= N; ++j) {
                        cplx z(i * p, j * p);
                        if (std::abs(z) <= R)
                            out.push_back(z);
                    }
            } else if constexpr (std::is_same_v<T, CyclicC>) {
                cplx w = c.w.c();
                long N = static_cast<long>(std::floor(R / std::abs(w)));
                for (long n = -N; n <= N; ++n)
                    out.push_back(static_cast<double>(n) * w);
            } else if constexpr (std::is_same_v<T, LineC>) {
                for (double s : segment_grid(R, spacing))
                    out.push_back(s * c.dir.c());
            } else if constexpr (std::is_same_v<T, LineCyclicC>) {
                cplx d = c.dir.c(), off = cplx(0, 1) * d * c.step.to_double();
                long K = static_cast<long>(std::floor(R / std::abs(off)));
                for (long k = -K; k <= K; ++k) {
                    double h = std::abs(static_cast<double>(k) * std::abs(off));
                    double L = std::sqrt(std::max(0.0, R * R - h * h));
                    for (double s : segment_grid(L, spacing)) {
                        cplx z = static_cast<double>(k) * off + s * d;
                        if (std::abs(z) <= R)
                            out.push_back(z);
                    }
                }
            } else {
                cplx w1 = c.basis.w1.c(), w2 = c.basis.w2.c();
                double A = (std::conj(w1) * w2).imag();
                long N = static_cast<long>(std::ceil(R * std::abs(w1) / A)) + 1;
                for (long n = -N; n <= N; ++n) {
                    // |m w1 + n w2| <= R is a quadratic condition on m
                    cplx base = static_cast<double>(n) * w2;
                    double a = std::norm(w1), b = (std::conj(w1) * base).real(), cc = std::norm(base) - R * R;
                    double disc = b * b - a * cc;
                    if (disc < 0)
                        continue;
                    long m0 = static_cast<long>(std::floor((-b - std::sqrt(disc)) / a)) - 1;
                    long m1 = static_cast<long>(std::ceil((-b + std::sqrt(disc)) / a)) + 1;
                    for (long m = m0; m <= m1; ++m) {
                        cplx z = static_cast<double>(m) * w1 + base;
                        if (std::abs(z) <= R)
                            out.push_back(z);
                    }
                }
            }
        },
        C);
    return out;
}

SubgroupC closure_of_generators(const std::vector<V2> &gens)
{
    mpz_class D = 1;
    for (const V2 &g : gens) {
        if (!g.is_exact())
            throw std::invalid_argument("closure_of_generators needs rational input");
        mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), g.x.exact().get_den_mpz_t());
        mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), g.y.exact().get_den_mpz_t());
    }
    std::vector<std::array<mpz_class, 2>> rows;
    for (const V2 &g : gens) {
        mpq_class x = g.x.exact() * D, y = g.y.exact() * D;
        if (x != 0 || y != 0)
            rows.push_back({x.get_num(), y.get_num()});
    }
    // Euclid on the first column
    std::optional<std::array<mpz_class, 2>> pivot;
    for (;;) {
        std::size_t best = rows.size();
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (rows[i][0] != 0 && (best == rows.size() || abs(rows[i][0]) < abs(rows[best][0])))
                best = i;
        if (best == rows.size())
            break;
        bool others = false;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == best || rows[i][0] == 0)
                continue;
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), rows[i][0].get_mpz_t(), rows[best][0].get_mpz_t());
            rows[i][0] -= q * rows[best][0];
            rows[i][1] -= q * rows[best][1];
            others = others || rows[i][0] != 0;
        }
        if (!others) {
            pivot = rows[best];
            rows.erase(rows.begin() + static_cast<long>(best));
            break;
        }
    }
    mpz_class g = 0;
    for (auto &r : rows)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r[1].get_mpz_t());
    auto toV2 = [&](const mpz_class &x, const mpz_class &y) {
        return V2{Real(mpq_class(x, D)), Real(mpq_class(y, D))};
    };
    if (pivot && g != 0)
        return make_lattice(toV2((*pivot)[0], (*pivot)[1]), toV2(0, g));
    if (pivot)
        return make_cyclic(toV2((*pivot)[0], (*pivot)[1]));
    if (g != 0)
        return make_cyclic(toV2(0, g));
    return TrivialC{};
}

bool approx_equal(const SubgroupC &A, const SubgroupC &B, double tol)
{
    if (A.index() != B.index())
        return false;
    auto close = [&](const SubgroupC &S, const V2 &v) { return distance_c(S, v.c()) <= tol * std::max(1.0, norm(v)); };
    if (auto a = std::get_if<CyclicC>(&A)) {
        auto b = std::get<CyclicC>(B);
        return close(B, a->w) && close(A, b.w);
    }
    if (auto a = std::get_if<LineC>(&A))
        return std::abs(cross(a->dir, std::get<LineC>(B).dir).to_double()) <= tol;
    if (auto a = std::get_if<LineCyclicC>(&A)) {
        auto b = std::get<LineCyclicC>(B);
        return std::abs(cross(a->dir, b.dir).to_double()) <= tol &&
               std::abs((a->step - b.step).to_double()) <= tol * std::max(1.0, b.step.to_double());
    }
    if (auto a = std::get_if<LatticeC>(&A)) {
        auto b = std::get<LatticeC>(B);
        return close(B, a->basis.w1) && close(B, a->basis.w2) && close(A, b.basis.w1) && close(A, b.basis.w2);
    }
    return true;
}

namespace
{

bool tends_to_infinity(const std::vector<double> &v, const LimitThresholds &th)
{
    if (static_cast<int>(v.size()) < th.tail || v.back() <= th.big)
        return false;
    for (std::size_t i = v.size() - th.tail + 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1]))
            return false;
    return true;
}

bool tends_to_zero(const std::vector<double> &v, const LimitThresholds &th)
{
    if (static_cast<int>(v.size()) < th.tail || v.back() >= th.small)
        return false;
    for (std::size_t i = v.size() - th.tail + 1; i < v.size(); ++i)
        if (!(v[i] < v[i - 1]))
            return false;
    return true;
}

bool settles(const std::vector<double> &v, const LimitThresholds &th)
{
    if (static_cast<int>(v.size()) < th.tail)
        return false;
    auto first = v.end() - th.tail;
    auto [lo, hi] = std::minmax_element(first, v.end());
    // a slow power law looks flat on a short tail, so also look back to half the horizon
    double mid = v[v.size() / 2];
    return *lo > th.small && *hi < th.big && (*hi - *lo) <= th.settle * *hi &&
           std::abs(mid - v.back()) <= th.settle * std::max(mid, v.back());
}

bool direction_settles(const std::vector<cplx> &v, const LimitThresholds &th)
{
    if (static_cast<int>(v.size()) < th.tail)
        return false;
    cplx last = v.back() / std::abs(v.back());
    for (auto it = v.end() - th.tail; it != v.end(); ++it) {
        cplx u = *it / std::abs(*it);
        if (std::abs((std::conj(u) * last).imag()) > th.settle)
            return false;
    }
    return true;
}

} // namespace

LimitVerdict classify_limit_c(const std::function<SubgroupC(int)> &family, int horizon, const LimitThresholds &th)
{
    std::vector<double> l1, l2, kap;
    std::vector<cplx> w1s, w2s;
    for (int k = 1; k <= horizon; ++k) {
        SubgroupC C = family(k);
        auto l = std::get_if<LatticeC>(&C);
        if (!l)
            throw std::invalid_argument("classify_limit_c family must yield lattices");
        w1s.push_back(l->basis.w1.c());
        w2s.push_back(l->basis.w2.c());
        l1.push_back(std::abs(w1s.back()));
        l2.push_back(std::abs(w2s.back()));
        kap.push_back(l2.back() / l1.back());
    }
    LimitVerdict v;
    v.conclusive = true;
    cplx a = w1s.back(), b = w2s.back();
    if (tends_to_infinity(l1, th)) {
        v.rule = "ell1 -> inf";
        v.limit = TrivialC{};
    } else if (tends_to_zero(l2, th)) {
        v.rule = "ell2 -> 0";
        v.limit = FullC{};
    } else if (tends_to_zero(l1, th) && tends_to_infinity(l2, th) && direction_settles(w1s, th)) {
        v.rule = "ell1 -> 0, ell2 -> inf, [w1] settles";
        v.limit = make_line(V2::from(a));
    } else if (tends_to_infinity(kap, th) && settles(l1, th) && direction_settles(w1s, th)) {
        v.rule = "kappa -> inf, w1 -> v";
        v.limit = make_cyclic(V2::from(a));
    } else if (tends_to_infinity(kap, th) && settles(l2, th) && direction_settles(w2s, th)) {
        v.rule = "kappa -> inf, w2 -> iv";
        cplx d = a / std::abs(a);
        v.limit = make_line_cyclic(V2::from(d), Real(std::abs((std::conj(d) * b).imag())));
    } else if (settles(l1, th) && settles(l2, th) && direction_settles(w1s, th) && direction_settles(w2s, th)) {
        v.rule = "lattice limit";
        v.limit = make_lattice(V2::from(a), V2::from(b));
    } else {
        v.conclusive = false;
        v.rule = "inconclusive";
    }
    return v;
}

} // namespace chabauty
