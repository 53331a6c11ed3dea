#include "chabauty/serialize.hpp"

#include <set>

namespace chabauty
{

namespace
{

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

std::string s(const Real &x)
{
    return x.str();
}

std::string s(double x)
{
    return Real(x).str();
}

void put_v2(ojson &p, const char *re, const char *im, const V2 &v)
{
    p[re] = s(v.x);
    p[im] = s(v.y);
}

void put_c(ojson &p, const SubgroupC &C)
{
    if (auto c = std::get_if<CyclicC>(&C)) {
        put_v2(p, "w_re", "w_im", c->w);
    } else if (auto l = std::get_if<LineC>(&C)) {
        put_v2(p, "dir_re", "dir_im", l->dir);
    } else if (auto lc = std::get_if<LineCyclicC>(&C)) {
        put_v2(p, "dir_re", "dir_im", lc->dir);
        p["step"] = s(lc->step);
    } else if (auto l = std::get_if<LatticeC>(&C)) {
        put_v2(p, "w1_re", "w1_im", l->basis.w1);
        put_v2(p, "w2_re", "w2_im", l->basis.w2);
    }
}

ojson payload(const AnySubgroup &g)
{
    ojson p = ojson::object();
    if (auto c = std::get_if<SubgroupC>(&g)) {
        put_c(p, *c);
    } else if (auto h = std::get_if<SubgroupH>(&g)) {
        if (auto c = std::get_if<CyclicH>(h)) {
            p["x"] = s(c->gen.x);
            p["y"] = s(c->gen.y);
            p["t"] = s(c->gen.t);
        } else if (auto o = std::get_if<OneParamH>(h)) {
            p["x"] = s(o->dir.x);
            p["y"] = s(o->dir.y);
            p["t"] = s(o->dir.t);
        } else if (auto pl = std::get_if<PlaneH>(h)) {
            put_v2(p, "dir_re", "dir_im", pl->dir);
        } else if (auto ip = std::get_if<InPlane>(h)) {
            put_v2(p, "plane_re", "plane_im", ip->plane);
            put_c(p, ip->inner);
        } else if (auto ln = std::get_if<LatticeN>(h)) {
            p["n"] = ln->n;
            put_v2(p, "w1_re", "w1_im", ln->L.w1);
            put_v2(p, "w2_re", "w2_im", ln->L.w2);
            p["r"] = s(ln->r);
            p["r2"] = s(ln->r2);
        } else if (auto pl = std::get_if<PreimageLattice>(h)) {
            put_c(p, LatticeC{pl->L});
        } else if (auto pl = std::get_if<PreimageLineCyclic>(h)) {
            put_c(p, pl->inner);
        }
    } else {
        const SubgroupAff &a = std::get<SubgroupAff>(g);
        if (auto c = std::get_if<CyclicAff>(&a)) {
            p["lambda"] = s(c->gen.lambda);
            p["tau"] = s(c->gen.tau);
        } else if (auto o = std::get_if<OneParamAff>(&a)) {
            p["x"] = s(o->x);
            p["y"] = s(o->y);
        } else if (auto ts = std::get_if<TransPlusScale>(&a)) {
            p["lambda"] = s(ts->lambda);
        }
    }
    return p;
}

class Reader
{
public:
    explicit Reader(const json &p) : p_(p)
    {
        if (!p.is_object())
            throw SchemaError("payload must be an object");
    }

    Real real(const std::string &key)
    {
        used_.insert(key);
        if (!p_.contains(key))
            throw SchemaError("payload is missing field '" + key + "'");
        const json &v = p_.at(key);
        if (!v.is_string())
            throw SchemaError("field '" + key + "' must be a decimal string");
        try {
            return Real::parse(v.get<std::string>());
        } catch (const std::exception &e) {
            throw SchemaError("field '" + key + "': " + e.what());
        }
    }

    double dbl(const std::string &key) { return real(key).to_double(); }
    V2 v2(const std::string &re, const std::string &im) { return {real(re), real(im)}; }

    long integer(const std::string &key)
    {
        used_.insert(key);
        if (!p_.contains(key) || !p_.at(key).is_number_integer())
            throw SchemaError("field '" + key + "' must be an integer");
        return p_.at(key).get<long>();
    }

    void finish() const
    {
        for (auto it = p_.begin(); it != p_.end(); ++it)
            if (!used_.count(it.key()))
                throw SchemaError("unknown payload field '" + it.key() + "'");
    }

private:
    const json &p_;
    std::set<std::string> used_;
};

LatticeBasis read_basis(Reader &r)
{
    LatticeBasis b{r.v2("w1_re", "w1_im"), r.v2("w2_re", "w2_im")};
    if (sign(b.coarea()) <= 0)
        throw SchemaError("lattice basis must be positively oriented");
    return b;
}

SubgroupC read_c(const std::string &tag, Reader &r)
{
    if (tag == "trivial")
        return TrivialC{};
    if (tag == "full")
        return FullC{};
    if (tag == "Z")
        return CyclicC{r.v2("w_re", "w_im")};
    if (tag == "R")
        return LineC{r.v2("dir_re", "dir_im")};
    if (tag == "RZ")
        return LineCyclicC{r.v2("dir_re", "dir_im"), r.real("step")};
    if (tag == "Z2")
        return LatticeC{read_basis(r)};
    throw SchemaError("unknown stratum '" + tag + "' for space C");
}

SubgroupH read_h(const std::string &tag, Reader &r)
{
    if (tag == "trivial")
        return TrivialH{};
    if (tag == "full")
        return FullH{};
    if (tag == "Z")
        return CyclicH{{r.real("x"), r.real("y"), r.real("t")}};
    if (tag == "R")
        return OneParamH{{r.real("x"), r.real("y"), r.real("t")}};
    if (tag == "R2")
        return PlaneH{r.v2("dir_re", "dir_im")};
    if (tag == "RZ" || tag == "Z2") {
        V2 plane = r.v2("plane_re", "plane_im");
        return InPlane{plane, read_c(tag, r)};
    }
    if (tag == "Ln") {
        long n = r.integer("n");
        if (n < 1)
            throw SchemaError("n must be positive");
        LatticeBasis b = read_basis(r);
        Real r1 = r.real("r"), r2 = r.real("r2");
        Real top = Real(1) / Real(n);
        if (r1 < Real(0) || !(r1 < top) || r2 < Real(0) || !(r2 < top))
            throw SchemaError("r and r2 must lie in [0, 1/n)");
        return LatticeN{b, r1, r2, n};
    }
    if (tag == "L-infinity")
        return PreimageLattice{read_basis(r)};
    if (tag == "preimage-RZ")
        return PreimageLineCyclic{std::get<LineCyclicC>(read_c("RZ", r))};
    throw SchemaError("unknown stratum '" + tag + "' for space H");
}

SubgroupAff read_aff(const std::string &tag, Reader &r)
{
    if (tag == "trivial")
        return TrivialAff{};
    if (tag == "full")
        return FullAff{};
    if (tag == "Z")
        return CyclicAff{{r.dbl("lambda"), r.dbl("tau")}};
    if (tag == "R")
        return OneParamAff{r.dbl("x"), r.dbl("y")};
    if (tag == "TS")
        return TransPlusScale{r.dbl("lambda")};
    throw SchemaError("unknown stratum '" + tag + "' for space Aff");
}

} // namespace

std::string space_name(const AnySubgroup &g)
{
    static const char *names[] = {"C", "H", "Aff"};
    return names[g.index()];
}

std::string stratum_tag(const AnySubgroup &g)
{
    if (auto c = std::get_if<SubgroupC>(&g))
        return stratum_name(*c);
    if (auto h = std::get_if<SubgroupH>(&g))
        return classify_stratum(*h).tag;
    static const char *names[] = {"trivial", "Z", "R", "TS", "full"};
    return names[std::get<SubgroupAff>(g).index()];
}

nlohmann::ordered_json to_json(const SubgroupDocument &doc)
{
    ojson j;
    j["version"] = kSchemaVersion;
    j["space"] = space_name(doc.value);
    j["stratum"] = stratum_tag(doc.value);
    j["payload"] = payload(doc.value);
    if (!doc.note.empty())
        j["note"] = doc.note;
    return j;
}

SubgroupDocument document_from_json(const nlohmann::json &j)
{
    if (!j.is_object())
        throw SchemaError("document must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "version" && it.key() != "space" && it.key() != "stratum" && it.key() != "payload" &&
            it.key() != "note")
            throw SchemaError("unknown field '" + it.key() + "'");
    auto str = [&](const char *key) {
        if (!j.contains(key) || !j.at(key).is_string())
            throw SchemaError(std::string("field '") + key + "' must be a string");
        return j.at(key).get<std::string>();
    };
    if (str("version") != kSchemaVersion)
        throw SchemaError("unsupported schema version");
    std::string space = str("space"), tag = str("stratum");
    if (!j.contains("payload"))
        throw SchemaError("document has no payload");
    Reader r(j.at("payload"));
    SubgroupDocument doc;
    if (j.contains("note"))
        doc.note = str("note");
    if (space == "C")
        doc.value = read_c(tag, r);
    else if (space == "H")
        doc.value = read_h(tag, r);
    else if (space == "Aff")
        doc.value = read_aff(tag, r);
    else
        throw SchemaError("unknown space '" + space + "'");
    r.finish();
    return doc;
}

SubgroupDocument parse_document(const std::string &text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
    return document_from_json(j);
}

std::string dump_document(const SubgroupDocument &doc)
{
    return to_json(doc).dump(2);
}

} // namespace chabauty
