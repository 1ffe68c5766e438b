#include <catch_amalgamated.hpp>

#include "cosimplex/simplicial.hpp"

using namespace cosimplex;

TEST_CASE("nerve level sizes") {
    auto Z2 = cyclic_groupoid(2);
    auto N = nerve(Z2, 2);
    CHECK(N.size(0) == 1);
    CHECK(N.size(1) == 2);
    CHECK(N.size(2) == 4);

    auto D = discrete_groupoid({"a", "b", "c"});
    auto ND = nerve(D, 3);
    for (int m = 0; m <= 3; ++m) CHECK(ND.size(m) == 3);
    for (int m = 1; m <= 3; ++m) CHECK(ND.nondegenerate(m).empty());

    auto C = contractible_groupoid({"x", "y"});
    CHECK(nerve(C, 1).size(1) == 4);
}

TEST_CASE("contractibility") {
    CHECK(is_contractible(contractible_groupoid({"a", "b", "c"})));
    CHECK_FALSE(is_contractible(cyclic_groupoid(2)));
    CHECK_FALSE(is_contractible(empty_groupoid()));
}

TEST_CASE("groupoid axioms hold for products") {
    auto G = product(cyclic_groupoid(2), contractible_groupoid({"a", "b"}));
    CHECK(G.num_objects() == 2);
    CHECK(G.num_morphisms() == 8);
    for (std::size_t f = 0; f < G.num_morphisms(); ++f) {
        CHECK(G.inv(G.inv(int(f))) == int(f));
        CHECK(G.comp(int(f), G.inv(int(f))) == G.id(G.src(int(f))));
    }
}

TEST_CASE("equivalences") {
    auto C = std::make_shared<const FinGroupoid>(contractible_groupoid({"a", "b"}));
    auto P = std::make_shared<const FinGroupoid>(trivial_groupoid());
    auto id = GpdFunctor(C, C, identity_functor_data(*C));
    CHECK(is_equivalence(id));
    // point -> C picking "a"
    FunctorData incl{{0}, {C->id(0)}};
    CHECK(is_equivalence(GpdFunctor(P, C, incl)));
    auto Z2 = std::make_shared<const FinGroupoid>(cyclic_groupoid(2));
    FunctorData collapse{{0}, {0, 0}};
    CHECK_FALSE(is_equivalence(GpdFunctor(Z2, P, collapse)));
}

TEST_CASE("translation groupoids") {
    auto Z3 = std::make_shared<const FinGroupoid>(cyclic_groupoid(3));
    // representable Hom(*, -): Z/3 acting on itself by translation
    std::vector<IndexMap> act;
    for (int g = 0; g < 3; ++g) {
        IndexMap a;
        for (int x = 0; x < 3; ++x) a.push_back(Z3->comp(x, g));
        act.push_back(a);
    }
    SetFunctor rep(Z3, {3}, act);
    CHECK(is_contractible(translation_groupoid(rep)));

    auto P = std::make_shared<const FinGroupoid>(trivial_groupoid());
    SetFunctor two(P, {2}, {identity_index(2)});
    auto T = translation_groupoid(two);
    CHECK(T.num_objects() == 2);
    CHECK(T.num_morphisms() == 2);

    auto Z2 = std::make_shared<const FinGroupoid>(cyclic_groupoid(2));
    SetFunctor empty(Z2, {0}, {IndexMap{}, IndexMap{}});
    CHECK(translation_groupoid(empty).num_objects() == 0);
}

TEST_CASE("comma groupoids are contractible") {
    auto [C, proj] = comma_to_object(cyclic_groupoid(2), 0);
    CHECK(C.num_objects() == 2);
    CHECK(is_contractible(C));
    auto G = product(cyclic_groupoid(3), contractible_groupoid({"a", "b"}));
    for (std::size_t x = 0; x < G.num_objects(); ++x) CHECK(is_contractible(comma_to_object(G, int(x)).first));
    CHECK(comma_to_object(trivial_groupoid(), 0).first.num_morphisms() == 1);
}

TEST_CASE("invalid categories are rejected") {
    // e declared the identity but e then a = e
    CHECK_THROWS_AS(FinCategory::build({"*"}, {"e", "a"}, {0, 0}, {0, 0}, {0}, [](int f, int g) { return f * g; }),
                    ValidationError);
}
