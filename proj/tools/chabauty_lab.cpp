// chabauty-lab: dataset emission and invariant queries for closed subgroups
// of C, H and Aff.

#include "chabauty/eisenstein.hpp"
#include "chabauty/families.hpp"
#include "chabauty/serialize.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

using namespace chabauty;
using ojson = nlohmann::ordered_json;

namespace
{

class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct Settings
{
    double radius = 10;
    double spacing = 0.05;
    double eps = 1e-2;
    double truncation = 2000;
    std::uint64_t seed = 1;
    std::string schedule;
    std::string mode = "accelerated";
};

struct Flags
{
    std::string config;
    std::optional<double> radius, spacing, eps, truncation;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> schedule, mode;
    std::string out;
};

std::string fmt(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string fmt(const std::optional<double> &x)
{
    return x ? fmt(*x) : "";
}

std::string read_all(const std::string &path)
{
    std::stringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read '" + path + "'");
    ss << in.rdbuf();
    return ss.str();
}

/// Flags override the config file, which overrides the defaults.
Settings resolve(const Flags &f)
{
    Settings s;
    if (!f.config.empty()) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(read_all(f.config));
        } catch (const nlohmann::json::parse_error &e) {
            throw SchemaError(std::string("config is not valid JSON: ") + e.what());
        }
        if (!j.is_object())
            throw SchemaError("config must be a JSON object");
        for (auto it = j.begin(); it != j.end(); ++it) {
            const std::string &k = it.key();
            const auto &v = it.value();
            auto num = [&]() {
                if (!v.is_number())
                    throw SchemaError("config key '" + k + "' must be a number");
                return v.get<double>();
            };
            if (k == "radius")
                s.radius = num();
            else if (k == "spacing")
                s.spacing = num();
            else if (k == "eps")
                s.eps = num();
            else if (k == "truncation_radius")
                s.truncation = num();
            else if (k == "seed" && v.is_number_unsigned())
                s.seed = v.get<std::uint64_t>();
            else if ((k == "schedule" || k == "mode") && v.is_string())
                (k == "mode" ? s.mode : s.schedule) = v.get<std::string>();
            else
                throw SchemaError("unknown or mistyped config key '" + k + "'");
        }
    }
    if (f.radius)
        s.radius = *f.radius;
    if (f.spacing)
        s.spacing = *f.spacing;
    if (f.eps)
        s.eps = *f.eps;
    if (f.truncation)
        s.truncation = *f.truncation;
    if (f.seed)
        s.seed = *f.seed;
    if (f.schedule)
        s.schedule = *f.schedule;
    if (f.mode)
        s.mode = *f.mode;
    if (s.mode != "direct" && s.mode != "accelerated")
        throw SchemaError("mode must be direct or accelerated");
    if (!(s.radius > 0) || !(s.spacing > 0) || !(s.eps > 0) || !(s.truncation > 0))
        throw SchemaError("radius, spacing, eps and truncation_radius must be positive");
    return s;
}

class Output
{
public:
    explicit Output(const std::string &path) : path_(path)
    {
        if (!path.empty()) {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_)
                throw IoError("cannot write '" + path + "'");
        }
    }
    std::ostream &os() { return path_.empty() ? std::cout : file_; }
    void close()
    {
        os().flush();
        if (!os())
            throw IoError("write failed");
    }

private:
    std::string path_;
    std::ofstream file_;
};

void write_json(const Flags &f, const ojson &j)
{
    Output out(f.out);
    out.os() << j.dump(2) << '\n';
    out.close();
}

SubgroupDocument load(const std::string &path)
{
    return parse_document(read_all(path));
}

template <class T> const T &expect(const AnySubgroup &g, const char *space)
{
    if (auto p = std::get_if<T>(&g))
        return *p;
    throw SchemaError(std::string("this command needs a document of space ") + space);
}

EisensteinMode mode_of(const Settings &s)
{
    return s.mode == "direct" ? EisensteinMode::direct(s.truncation) : EisensteinMode::accelerated();
}

ojson invariants_c(const SubgroupC &C, const Settings &s)
{
    ojson j;
    j["space"] = "C";
    j["stratum"] = stratum_name(C);
    LatticeInvariants inv = lattice_invariants(C);
    j["ell1"] = fmt(inv.ell1);
    j["ell2"] = fmt(inv.ell2);
    j["kappa"] = fmt(inv.kappa);
    if (auto l = std::get_if<LatticeC>(&C); l && l->basis.is_exact())
        j["coarea"] = l->basis.coarea().str();
    else
        j["coarea"] = fmt(inv.coarea);
    if (std::holds_alternative<LatticeC>(C) || std::holds_alternative<CyclicC>(C)) {
        EisensteinResult e = eisenstein_invariants(C, mode_of(s));
        ojson g;
        g["g2_re"] = fmt(e.g2.real());
        g["g2_im"] = fmt(e.g2.imag());
        g["g3_re"] = fmt(e.g3.real());
        g["g3_im"] = fmt(e.g3.imag());
        g["delta_re"] = fmt(e.delta.real());
        g["delta_im"] = fmt(e.delta.imag());
        g["g2_bound"] = fmt(e.g2_bound);
        g["g3_bound"] = fmt(e.g3_bound);
        g["mode"] = e.mode.name();
        g["truncation_radius"] = e.mode.kind == EisensteinMode::Kind::direct ? fmt(e.mode.radius) : "none";
        j["eisenstein"] = g;
    }
    return j;
}

ojson invariants_h(const SubgroupH &C)
{
    ojson j;
    StratumTag tag = classify_stratum(C);
    j["space"] = "H";
    j["stratum"] = tag.tag;
    if (auto ln = std::get_if<LatticeN>(&C)) {
        j["n"] = ln->n;
        j["coarea"] = ln->L.coarea().str();
    } else if (auto pl = std::get_if<PreimageLattice>(&C)) {
        j["coarea"] = pl->L.coarea().str();
    }
    CenterData cd = center_data(C);
    j["center"] = cd.str();
    j["commutator"] = cd.commutator.str();
    j["orbit"] = classify_orbit(C);
    j["projection"] = stratum_name(p_star(C));
    return j;
}

ojson classify_json(const AnySubgroup &g)
{
    ojson j;
    j["space"] = space_name(g);
    j["stratum"] = stratum_tag(g);
    if (auto h = std::get_if<SubgroupH>(&g)) {
        StratumTag tag = classify_stratum(*h);
        j["orbit"] = classify_orbit(*h);
        j["abelian"] = is_abelian(*h);
        j["in_D_minus"] = tag.in_D_minus;
        j["in_D_plus"] = tag.in_D_plus;
        j["contains_center"] = tag.has_center;
    } else if (auto a = std::get_if<SubgroupAff>(&g)) {
        j["chart"] = aff_classify_stratum(*a).label();
    }
    return j;
}

ojson point_json(const SpherePoint &p)
{
    ojson j;
    j["infinite"] = p.infinite;
    if (!p.infinite) {
        j["a_re"] = fmt(p.a.real());
        j["a_im"] = fmt(p.a.imag());
        j["b_re"] = fmt(p.b.real());
        j["b_im"] = fmt(p.b.imag());
    }
    return j;
}

SpherePoint parse_point(const std::string &text)
{
    if (text == "inf")
        return SpherePoint::infinity();
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double x = 0;
        auto res = std::from_chars(item.data(), item.data() + item.size(), x);
        if (res.ec != std::errc() || res.ptr != item.data() + item.size())
            throw SchemaError("point coordinate '" + item + "' is not a number");
        v.push_back(x);
    }
    if (v.size() != 4)
        throw SchemaError("a point is 'a_re,a_im,b_re,b_im' or 'inf'");
    return SpherePoint::finite({v[0], v[1]}, {v[2], v[3]});
}

ojson trace_json(const FamilyTrace &t, const std::vector<MetricConfig> &sched)
{
    ojson j;
    j["family"] = t.id;
    j["seed"] = t.seed;
    j["verdict"] = verdict_name(t.verdict);
    ojson s = ojson::array();
    for (const MetricConfig &c : sched)
        s.push_back(fmt(c.R) + ":" + fmt(c.eps));
    j["schedule"] = s;
    ojson rows = ojson::array();
    for (const TraceRow &r : t.rows) {
        ojson row;
        row["index"] = r.index;
        row["R"] = fmt(r.R);
        row["distance"] = fmt(r.distance);
        row["ell1"] = fmt(r.ell1);
        row["ell2"] = fmt(r.ell2);
        row["kappa"] = fmt(r.kappa);
        if (r.n)
            row["n"] = *r.n;
        if (r.J)
            row["J"] = r.J->str();
        rows.push_back(row);
    }
    j["rows"] = rows;
    return j;
}

std::vector<MetricConfig> schedule_of(const Settings &s)
{
    return s.schedule.empty() ? std::vector<MetricConfig>{} : parse_schedule(s.schedule, s.spacing);
}

void emit_trefoil(std::ostream &os, int count)
{
    os << "index,re_a,im_a,re_b,im_b,sigma_residual\n";
    auto pts = trefoil_sample(count);
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const SpherePoint &p = pts[k];
        os << k << ',' << fmt(p.a.real()) << ',' << fmt(p.a.imag()) << ',' << fmt(p.b.real()) << ','
           << fmt(p.b.imag()) << ',' << fmt(sigma::residual(p)) << '\n';
    }
}

void emit_chart_grid(std::ostream &os, int count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-1, 1);
    os << "index,re_a,im_a,re_b,im_b,norm,stratum,roundtrip_residual\n";
    for (int k = 0; k < count;) {
        double v[4];
        for (double &x : v)
            x = U(rng);
        if (v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3] > 1)
            continue;
        SpherePoint p = SpherePoint::finite({v[0], v[1]}, {v[2], v[3]});
        SubgroupC C = f_chart(p);
        double res = sphere_distance(f_inverse(C), p);
        os << k << ',' << fmt(v[0]) << ',' << fmt(v[1]) << ',' << fmt(v[2]) << ',' << fmt(v[3]) << ','
           << fmt(p.norm()) << ',' << stratum_name(C) << ',' << fmt(res) << '\n';
        ++k;
    }
}

void emit_orbit_walk(std::ostream &os, const SubgroupH &target, long budget, const Settings &s)
{
    SubgroupH start = make_in_plane(V2{1, 0}, make_lattice(V2{1, 0}, V2{0, 1}));
    MetricConfig cfg{s.radius, s.spacing, s.eps};
    WalkResult w = orbit_density_walk(start, target, budget, cfg, s.seed);
    os << "step,best,seed\n";
    if (w.best_trace.empty())
        os << 0 << ',' << fmt(w.best) << ',' << s.seed << '\n';
    for (std::size_t k = 0; k < w.best_trace.size(); ++k)
        os << k + 1 << ',' << fmt(w.best_trace[k]) << ',' << s.seed << '\n';
}

void emit_convergence(std::ostream &os, const std::string &family, const Settings &s)
{
    Family f = make_family(family);
    FamilyTrace t = trace_family(f, schedule_of(s), s.seed);
    os << "family,index,R,eps,distance,ell1,ell2,kappa,n,J,verdict,seed\n";
    for (const TraceRow &r : t.rows)
        os << t.id << ',' << r.index << ',' << fmt(r.R) << ',' << fmt(r.eps) << ',' << fmt(r.distance) << ','
           << fmt(r.ell1) << ',' << fmt(r.ell2) << ',' << fmt(r.kappa) << ',' << (r.n ? std::to_string(*r.n) : "")
           << ',' << (r.J ? r.J->str() : "") << ',' << verdict_name(t.verdict) << ',' << t.seed << '\n';
}

int fail(int code, const char *kind, const std::string &msg)
{
    ojson j;
    j["error"] = kind;
    j["message"] = msg;
    std::cerr << j.dump() << '\n';
    return code;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Closed subgroups of C, H and Aff: charts, invariants and Chabauty traces"};
    app.require_subcommand(1);
    Flags flags;
    app.add_option("--config", flags.config, "JSON config file");
    app.add_option("--seed", flags.seed, "pseudo-random seed");
    app.add_option("--radius", flags.radius, "ball radius R of the metric");
    app.add_option("--spacing", flags.spacing, "sampling pitch");
    app.add_option("--eps", flags.eps, "convergence threshold");
    app.add_option("--schedule", flags.schedule, "metric schedule R:eps,...");
    app.add_option("--truncation", flags.truncation, "truncation radius of direct Eisenstein sums");
    app.add_option("--mode", flags.mode, "direct or accelerated");
    app.add_option("--out", flags.out, "output path (stdout when absent)");

    std::string input = "-";
    auto with_input = [&](CLI::App *sub) {
        sub->fallthrough();
        sub->add_option("input", input, "subgroup document, - for stdin");
        return sub;
    };
    auto *inv = with_input(app.add_subcommand("invariants", "report invariants of a subgroup"));
    auto *cls = with_input(app.add_subcommand("classify", "stratum and orbit of a subgroup"));
    auto *nrm = with_input(app.add_subcommand("normalize", "bring a lattice of H to its normal form"));
    auto *dua = with_input(app.add_subcommand("dual", "dual of a subgroup of C"));
    auto *cinv = with_input(app.add_subcommand("chart-inv", "point of the sphere for a subgroup of C"));

    std::string point;
    auto *cht = app.add_subcommand("chart", "subgroup of C for a point of the sphere");
    cht->fallthrough();
    cht->add_option("--point", point, "a_re,a_im,b_re,b_im or inf")->required();

    std::string what, family, target;
    int count = -1;
    long budget = 10000;
    auto *emt = app.add_subcommand("emit", "write a CSV dataset");
    emt->fallthrough();
    emt->add_option("what", what, "trefoil, chart-grid, orbit-walk or convergence")
        ->required()
        ->check(CLI::IsMember({"trefoil", "chart-grid", "orbit-walk", "convergence"}));
    emt->add_option("--count", count, "number of points");
    emt->add_option("--budget", budget, "orbit walk steps");
    emt->add_option("--family", family, "family id for convergence");
    emt->add_option("--target", target, "target document for orbit-walk");

    std::string trace_what;
    auto *trc = app.add_subcommand("trace", "convergence trace of a family, or a disconnection certificate");
    trc->fallthrough();
    trc->add_option("family", trace_what, "family id or 'certificate'")->required();
    trc->add_option("--input", input, "document for the certificate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        return fail(2, "usage", e.what());
    }

    try {
        Settings s = resolve(flags);
        if (inv->parsed()) {
            SubgroupDocument d = load(input);
            ojson j;
            if (auto c = std::get_if<SubgroupC>(&d.value))
                j = invariants_c(*c, s);
            else if (auto h = std::get_if<SubgroupH>(&d.value))
                j = invariants_h(*h);
            else
                j = classify_json(d.value);
            write_json(flags, j);
        } else if (cls->parsed()) {
            write_json(flags, classify_json(load(input).value));
        } else if (nrm->parsed()) {
            const SubgroupH C = expect<SubgroupH>(load(input).value, "H");
            Normalization nz = normalize_lattice(C);
            ojson j;
            j["n"] = nz.n;
            ojson phi;
            phi["w_re"] = nz.phi.w.x.str();
            phi["w_im"] = nz.phi.w.y.str();
            phi["g"] = {nz.phi.g.a.str(), nz.phi.g.b.str(), nz.phi.g.c.str(), nz.phi.g.d.str()};
            j["phi"] = phi;
            j["image"] = to_json({apply_aut_subgroup(nz.phi, C), ""});
            write_json(flags, j);
        } else if (dua->parsed()) {
            const SubgroupC C = expect<SubgroupC>(load(input).value, "C");
            write_json(flags, to_json({dual(C), ""}));
        } else if (cinv->parsed()) {
            const SubgroupC C = expect<SubgroupC>(load(input).value, "C");
            write_json(flags, point_json(f_inverse(C)));
        } else if (cht->parsed()) {
            write_json(flags, to_json({f_chart(parse_point(point)), ""}));
        } else if (emt->parsed()) {
            // read inputs before truncating the output file
            std::optional<SubgroupH> tgt;
            if (what == "orbit-walk") {
                if (target.empty())
                    throw SchemaError("orbit-walk needs --target");
                tgt = expect<SubgroupH>(load(target).value, "H");
            }
            if (what == "convergence")
                make_family(family);
            Output out(flags.out);
            if (what == "trefoil")
                emit_trefoil(out.os(), count < 0 ? 360 : count);
            else if (what == "chart-grid")
                emit_chart_grid(out.os(), count < 0 ? 100 : count, s.seed);
            else if (what == "orbit-walk")
                emit_orbit_walk(out.os(), *tgt, budget, s);
            else
                emit_convergence(out.os(), family, s);
            out.close();
        } else if (trc->parsed()) {
            if (trace_what == "certificate") {
                const SubgroupH C = expect<SubgroupH>(load(input).value, "H");
                DisconnectionCertificate cert = disconnection_certificate(C, s.eps, s.radius, s.spacing);
                ojson j;
                j["certificate"] = "disconnection";
                j["eps"] = fmt(s.eps);
                j["R"] = fmt(s.radius);
                j["N"] = cert.N;
                ojson members = ojson::array(), js = ojson::array(), ds = ojson::array();
                for (const SubgroupH &m : cert.members)
                    members.push_back(to_json({m, ""}));
                for (const Real &v : cert.j_values)
                    js.push_back(v.str());
                for (double d : cert.distances)
                    ds.push_back(fmt(d));
                j["members"] = members;
                j["j_values"] = js;
                j["distances"] = ds;
                j["distinct_j"] = cert.distinct;
                write_json(flags, j);
            } else {
                Family f = make_family(trace_what);
                std::vector<MetricConfig> sched = schedule_of(s);
                FamilyTrace t = trace_family(f, sched, s.seed);
                write_json(flags, trace_json(t, sched.empty() ? f.schedule : sched));
            }
        }
    } catch (const SchemaError &e) {
        return fail(2, "schema", e.what());
    } catch (const IoError &e) {
        return fail(4, "io", e.what());
    } catch (const NumericFailure &e) {
        return fail(3, "numeric", e.what());
    } catch (const std::logic_error &e) {
        return fail(2, "domain", e.what());
    }
    return 0;
}
