#include <catch_amalgamated.hpp>

#include "cosimplex/generators.hpp"
#include "cosimplex/json_io.hpp"

using namespace cosimplex;
using namespace cosimplex::json_io;

namespace {
/// Round trip through text, not just through json values.
json reparse(const json& j) { return json::parse(j.dump()); }
}  // namespace

TEST_CASE("groups and homomorphisms round trip") {
    auto G = FGAbGroup::from_orders({0, 6, 2});
    auto G2 = read_group(reparse(write_group(G)));
    CHECK(G2.invariants() == G.invariants());
    CHECK(G2.generators() == 3);

    auto f = AbHom(FGAbGroup::free(2), G, Matrix::from_columns(3, {{1, 2, 0}, {0, 3, 1}}));
    auto f2 = read_hom(reparse(write_hom(f)), f.source(), f.target());
    CHECK(hom_equal(f, f2));

    Int big("123456789012345678901234567890");
    CHECK(read_int(write_int(big)) == big);
    CHECK(write_int(big).is_string());
    CHECK(write_int(Int(-7)) == json(-7));

    CHECK_THROWS_AS(read_hom(json{{"matrix", {{1, 0}}}}, FGAbGroup::free(2), G), ParseError);
    // Z/2 -> Z is not well defined
    CHECK_THROWS_AS(read_hom(json{{"matrix", {{1}}}}, FGAbGroup::cyclic(2), FGAbGroup::free(1)), ValidationError);
}

TEST_CASE("groupoids round trip and missing composites are rejected") {
    for (const auto& G : {cyclic_groupoid(3), contractible_groupoid({"a", "b", "c"}), discrete_groupoid({"p", "q"})}) {
        auto H = read_groupoid(reparse(write_groupoid(G)));
        CHECK(H.object_labels() == G.object_labels());
        CHECK(H.morphism_labels() == G.morphism_labels());
        CHECK(H.comp_table() == G.comp_table());
    }
    auto j = write_groupoid(cyclic_groupoid(3));
    j.erase("inv");
    CHECK(read_groupoid(j).num_morphisms() == 3);
    j["comp"].erase(j["comp"].begin());
    CHECK_THROWS_AS(read_groupoid(j), ParseError);
}

TEST_CASE("graded objects round trip") {
    auto X = delta_vertices(3);
    CHECK(read_cosimplicial_set(reparse(write_cosimplicial_set(X))).all_labels() == X.all_labels());
    auto Xs = read_cosimplicial_set(write_cosimplicial_set(X));
    for (int n = 1; n <= 3; ++n)
        for (int i = 0; i <= n; ++i) CHECK(Xs.coface(n, i) == X.coface(n, i));

    Rng rng(5);
    for (int t = 0; t < 10; ++t) {
        auto A = random_cosimplicial_ab(rng, 3, 3, {0, 2, 3});
        auto B = read_cosimplicial_ab(reparse(write_cosimplicial_ab(A)));
        for (int n = 0; n <= 3; ++n) CHECK(B.level(n).invariants() == A.level(n).invariants());
        for (int n = 1; n <= 3; ++n)
            for (int i = 0; i <= n; ++i) CHECK(hom_equal(B.coface(n, i), A.coface(n, i)));

        auto H = random_cosimplicial_gpd(rng, 2, 3);
        auto K = read_cosimplicial_gpd(reparse(write_cosimplicial_gpd(H)));
        for (int n = 1; n <= 2; ++n)
            for (int i = 0; i <= n; ++i) CHECK(K.coface(n, i) == H.coface(n, i));
    }

    auto S = boundary_simplex(2, 3);
    auto S2 = read_simplicial_set(reparse(write_simplicial_set(S)));
    CHECK(S2.all_labels() == S.all_labels());
    for (int m = 0; m + 1 <= 3; ++m)
        for (int i = 0; i <= m; ++i) CHECK(S2.degen(m, i) == S.degen(m, i));

    auto [ZS, h] = hurewicz(S);
    auto ZS2 = read_simplicial_ab(reparse(write_simplicial_ab(ZS)));
    for (int m = 0; m <= 2; ++m) CHECK(homology(ZS2, m) == homology(ZS, m));
}

TEST_CASE("corrupted tables name the violated identity") {
    auto j = write_cosimplicial_set(delta_vertices(2));
    // d^0 = d^1 : X^0 -> X^1
    j["d^i"]["(1,0)"] = j["d^i"]["(1,1)"];
    try {
        read_cosimplicial_set(j);
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK_FALSE(e.law().empty());
    }

    auto k = write_cosimplicial_set(delta_vertices(2));
    k["d^i"].erase("(2,1)");
    CHECK_THROWS_AS(read_cosimplicial_set(k), ParseError);
    k = write_cosimplicial_set(delta_vertices(2));
    k["d^i"]["(1,0)"]["zz"] = "0";
    CHECK_THROWS_AS(read_cosimplicial_set(k), ParseError);
    k = write_cosimplicial_set(delta_vertices(2));
    k["trunc"] = 5;
    CHECK_THROWS_AS(read_cosimplicial_set(k), ParseError);
}

TEST_CASE("bundles") {
    auto b = parse_bundle(make_bundle("cosimplicial-set", "vertices", write_cosimplicial_set(delta_vertices(2))).dump());
    CHECK(b.name == "vertices");
    auto X = load(b, "cosimplicial-set", read_cosimplicial_set);
    CHECK(X.size(2) == 3);
    CHECK_THROWS_AS(load(b, "cosimplicial-ab", read_cosimplicial_ab), ParseError);
    CHECK_THROWS_AS(parse_bundle("{\"kind\": "), ParseError);
    CHECK_THROWS_AS(parse_bundle("{\"kind\": \"sheaf\", \"payload\": {}}"), ParseError);
    CHECK_THROWS_AS(parse_bundle("[1, 2]"), ParseError);
    auto bad = parse_bundle(R"({"kind": "cosimplicial-set", "payload": {"levels": 3}})");
    CHECK_THROWS_AS(load(bad, "cosimplicial-set", read_cosimplicial_set), ParseError);
}

TEST_CASE("diagram bundles round trip") {
    auto S = boundary_simplex(3, 3);
    auto [U, incl] = generated_subset(S, {{0, 0}});
    auto I = arrow_category();
    DiagramBundle b{SSetDiagram{I, {U, U}, {identity_map(U), identity_map(U), identity_map(U)}},
                    SSetDiagram{I, {S, S}, {identity_map(S), identity_map(S), identity_map(S)}},
                    SSetDiagram{I, {S, S}, {identity_map(S), identity_map(S), identity_map(S)}},
                    {incl, incl},
                    {identity_map(S), identity_map(S)},
                    2};
    auto c = read_diagram_bundle(reparse(write_diagram_bundle(b)));
    CHECK(c.n == 2);
    CHECK(c.inclusion == b.inclusion);
    CHECK(c.V.arrows == b.V.arrows);
    auto r = em_model(c.U, c.V, c.inclusion, c.F, c.comparison, c.n);
    CHECK(r.pass());
}
