#include "chabauty/serialize.hpp"
#include "support.hpp"

#include <doctest.h>

#include <functional>
#include <map>

using namespace chabauty;
using testing_support::Rng;

namespace
{

Real coord(Rng &rng, bool exact)
{
    return exact ? rng.rational(9, 5) : Real(rng.uniform(-3, 3));
}

V2 nonzero(Rng &rng, bool exact)
{
    for (;;) {
        V2 v{coord(rng, exact), coord(rng, exact)};
        if (!is_zero(v.x) || !is_zero(v.y))
            return v;
    }
}

Real positive(Rng &rng, bool exact)
{
    return exact ? Real::frac(rng.integer(1, 9), rng.integer(1, 5)) : Real(rng.uniform(0.05, 3));
}

SubgroupC lattice(Rng &rng, bool exact)
{
    for (;;) {
        V2 u = nonzero(rng, exact), v = nonzero(rng, exact);
        if (std::abs(cross(u, v).to_double()) > 1e-3)
            return make_lattice(u, v);
    }
}

using Gen = std::function<AnySubgroup(Rng &, bool)>;

std::vector<Gen> generators()
{
    return {
        [](Rng &, bool) { return AnySubgroup(SubgroupC(TrivialC{})); },
        [](Rng &r, bool e) { return AnySubgroup(make_cyclic(nonzero(r, e))); },
        [](Rng &r, bool e) { return AnySubgroup(make_line(nonzero(r, e))); },
        [](Rng &r, bool e) { return AnySubgroup(make_line_cyclic(nonzero(r, e), positive(r, e))); },
        [](Rng &r, bool e) { return AnySubgroup(lattice(r, e)); },
        [](Rng &, bool) { return AnySubgroup(SubgroupC(FullC{})); },

        [](Rng &, bool) { return AnySubgroup(SubgroupH(TrivialH{})); },
        [](Rng &r, bool e) { return AnySubgroup(make_cyclic_h(HeisPoint::make(nonzero(r, e), coord(r, e)))); },
        [](Rng &r, bool e) { return AnySubgroup(make_one_param_h(HeisPoint::make(nonzero(r, e), coord(r, e)))); },
        [](Rng &r, bool e) { return AnySubgroup(make_plane_h(nonzero(r, e))); },
        [](Rng &r, bool e) {
            return AnySubgroup(make_in_plane(nonzero(r, e), make_line_cyclic(nonzero(r, e), positive(r, e))));
        },
        [](Rng &r, bool e) { return AnySubgroup(make_in_plane(nonzero(r, e), lattice(r, e))); },
        [](Rng &r, bool e) {
            long n = r.integer(1, 6);
            Real top = Real::frac(1, n);
            auto L = std::get<LatticeC>(lattice(r, e)).basis;
            return AnySubgroup(lattice_from_coords(L, n, mod(coord(r, true), top), mod(coord(r, true), top)));
        },
        [](Rng &r, bool e) { return AnySubgroup(make_preimage(lattice(r, e))); },
        [](Rng &r, bool e) { return AnySubgroup(make_preimage(make_line_cyclic(nonzero(r, e), positive(r, e)))); },
        [](Rng &, bool) { return AnySubgroup(SubgroupH(FullH{})); },

        [](Rng &, bool) { return AnySubgroup(SubgroupAff(TrivialAff{})); },
        [](Rng &r, bool) {
            return AnySubgroup(make_cyclic_aff(AffElement{r.uniform(0.2, 5), r.uniform(-3, 3)}));
        },
        [](Rng &r, bool) { return AnySubgroup(make_one_param_aff(r.uniform(-2, 2), r.uniform(0.1, 2))); },
        [](Rng &r, bool) { return AnySubgroup(make_trans_plus_scale(r.uniform(1.1, 6))); },
        [](Rng &, bool) { return AnySubgroup(SubgroupAff(FullAff{})); },
    };
}

nlohmann::json doc_of(const AnySubgroup &g)
{
    return nlohmann::json::parse(dump_document({g, ""}));
}

void expect_schema_error(nlohmann::json j)
{
    CHECK_THROWS_AS(document_from_json(j), SchemaError);
}

} // namespace

TEST_CASE("every stratum survives a round trip")
{
    Rng rng(81);
    std::map<std::string, int> per_tag;
    int mismatches = 0;
    for (const Gen &gen : generators())
        for (int k = 0; k < 1000; ++k) {
            AnySubgroup g = gen(rng, k % 2 == 0);
            std::string text = dump_document({g, k % 7 == 0 ? "sample" : ""});
            SubgroupDocument back = parse_document(text);
            mismatches += !(back.value == g);
            mismatches += dump_document(back) != text;
            per_tag[space_name(g) + "/" + stratum_tag(g)] += 1;
        }
    CHECK(mismatches == 0);
    CHECK(per_tag.size() == 21);
    for (const auto &[tag, count] : per_tag) {
        CAPTURE(tag);
        CHECK(count >= 1000);
    }
}

TEST_CASE("document layout")
{
    nlohmann::json j = doc_of(lambda_n(2));
    CHECK(j["version"] == kSchemaVersion);
    CHECK(j["space"] == "H");
    CHECK(j["stratum"] == "Ln");
    CHECK(j["payload"]["n"] == 2);
    CHECK(j["payload"]["w1_re"] == "1");
    CHECK(j["payload"]["r"] == "0");
    CHECK_FALSE(j.contains("note"));
    CHECK(doc_of(SubgroupC(FullC{}))["payload"].empty());
    SubgroupDocument noted = parse_document(dump_document({SubgroupC(TrivialC{}), "origin"}));
    CHECK(noted.note == "origin");
}

TEST_CASE("malformed documents are rejected")
{
    nlohmann::json good = doc_of(lambda_n(3));
    CHECK_NOTHROW(document_from_json(good));

    auto with = [&](auto edit) {
        nlohmann::json j = good;
        edit(j);
        return j;
    };
    expect_schema_error(with([](auto &j) { j["extra"] = 1; }));
    expect_schema_error(with([](auto &j) { j["payload"]["extra"] = "1"; }));
    expect_schema_error(with([](auto &j) { j["stratum"] = "Lm"; }));
    expect_schema_error(with([](auto &j) { j["space"] = "G"; }));
    expect_schema_error(with([](auto &j) { j["version"] = "chabauty-lab/0"; }));
    expect_schema_error(with([](auto &j) { j.erase("payload"); }));
    expect_schema_error(with([](auto &j) { j["payload"].erase("r2"); }));
    expect_schema_error(with([](auto &j) { j["payload"]["r"] = 0.5; }));
    expect_schema_error(with([](auto &j) { j["payload"]["r"] = "half"; }));
    expect_schema_error(with([](auto &j) { j["payload"]["n"] = 0; }));
    expect_schema_error(with([](auto &j) { j["payload"]["r"] = "1/3"; }));
    // swapping the basis reverses its orientation
    expect_schema_error(with([](auto &j) {
        std::swap(j["payload"]["w1_re"], j["payload"]["w2_re"]);
        std::swap(j["payload"]["w1_im"], j["payload"]["w2_im"]);
    }));
    CHECK_THROWS_AS(parse_document("{not json"), SchemaError);
    CHECK_THROWS_AS(parse_document("[]"), SchemaError);
}
