#include <catch_amalgamated.hpp>

#include "cosimplex/simplicial.hpp"

using namespace cosimplex;

namespace {
long long binom(int n, int k) {
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}
}  // namespace

TEST_CASE("standard simplex level sizes follow the monotone-map count") {
    for (int k = 0; k <= 3; ++k)
        for (int M = 0; M <= 3; ++M) {
            auto D = standard_simplex(k, M);
            for (int m = 0; m <= M; ++m) CHECK(D.size(m) == std::size_t(binom(m + k + 1, m + 1)));
        }
    auto D1 = standard_simplex(1, 1);
    CHECK(D1.size(0) == 2);
    CHECK(D1.size(1) == 3);
}

TEST_CASE("skeleta") {
    auto s0 = skeleton(standard_simplex(1, 1), 0);
    CHECK(s0.size(0) == 2);
    CHECK(s0.size(1) == 2);
    CHECK(s0.nondegenerate(1).empty());
    auto D = standard_simplex(2, 2);
    CHECK(skeleton(D, 2).size(2) == D.size(2));
    auto s1 = skeleton(D, 1);
    CHECK(s1.size(2) == 9);
    CHECK(s1.nondegenerate(2).empty());
}

TEST_CASE("homology of simplices and the circle") {
    for (int k = 0; k <= 3; ++k)
        for (int M = 1; M <= 4; ++M) {
            auto D = standard_simplex(k, M);
            CHECK(homology(D, 0).str() == "Z");
            for (int n = 1; n <= M - 1; ++n) CHECK(homology(D, n).is_trivial());
        }
    auto circle = boundary_simplex(2, 2);
    CHECK(homology(circle, 1).str() == "Z");
    CHECK(homology(discrete_simplicial_set({"p", "q"}, 1), 0).str() == "Z^2");
    CHECK_THROWS_AS(homology(circle, 2), DegreeRangeError);
}

TEST_CASE("negative simplicial fixture is rejected") {
    auto D = standard_simplex(1, 1);
    auto faces = D.faces();
    faces[1][0] = IndexMap(faces[1][0].size(), 0);
    CHECK_THROWS_AS(TruncSimpSet(D.all_labels(), faces, D.degens()), ValidationError);
}

TEST_CASE("fundamental groupoids") {
    auto P = fundamental_groupoid(standard_simplex(2, 2));
    auto G = complete_groupoid(P, 100);
    CHECK(G.num_objects() == 3);
    CHECK(is_contractible(G));

    auto circle = fundamental_groupoid(boundary_simplex(2, 2));
    CHECK_THROWS_AS(complete_groupoid(circle, 100), CapExceeded);

    auto disc = complete_groupoid(fundamental_groupoid(discrete_simplicial_set({"a", "b", "c"}, 2)), 10);
    CHECK(disc.num_morphisms() == 3);
}

TEST_CASE("presented groupoid completion") {
    PresentedGroupoid two;
    two.objects = {"a", "b"};
    two.generators = {{"e", 0, 1}};
    CHECK(complete_groupoid(two, 10).num_morphisms() == 4);

    PresentedGroupoid z2;
    z2.objects = {"*"};
    z2.generators = {{"a", 0, 0}};
    z2.relations = {{0, {{0, false}, {0, false}}, {}}};
    auto G = complete_groupoid(z2, 10);
    CHECK(G.num_morphisms() == 2);

    PresentedGroupoid free1;
    free1.objects = {"*"};
    free1.generators = {{"a", 0, 0}};
    CHECK_THROWS_AS(complete_groupoid(free1, 100), CapExceeded);

    // S3 = <a, b | a^2, b^3, (ab)^2>
    PresentedGroupoid s3;
    s3.objects = {"*"};
    s3.generators = {{"a", 0, 0}, {"b", 0, 0}};
    s3.relations = {{0, {{0}, {0}}, {}}, {0, {{1}, {1}, {1}}, {}}, {0, {{0}, {1}, {0}, {1}}, {}}};
    CHECK(complete_groupoid(s3, 100).num_morphisms() == 6);
}

TEST_CASE("nerve round trip through the fundamental groupoid") {
    std::vector<FinGroupoid> cases = {cyclic_groupoid(2), cyclic_groupoid(3), contractible_groupoid({"a", "b", "c"}),
                                      product(cyclic_groupoid(2), contractible_groupoid({"a", "b"})),
                                      discrete_groupoid({"p", "q"})};
    for (const auto& G : cases) {
        auto N = nerve(G, 2);
        auto P = fundamental_groupoid(N);
        auto C = complete_groupoid_with_images(P, 100);
        // functor G -> completion: nondegenerate edges go to their generators
        FunctorData F;
        F.obj = identity_index(G.num_objects());
        std::map<int, int> gen_of_edge;
        auto nd = N.nondegenerate(1);
        for (std::size_t k = 0; k < nd.size(); ++k) gen_of_edge[nd[k]] = int(k);
        for (std::size_t f = 0; f < G.num_morphisms(); ++f) {
            auto it = gen_of_edge.find(int(f));
            F.mor.push_back(it == gen_of_edge.end() ? C.groupoid.id(G.src(int(f))) : C.generator_morphism[it->second]);
        }
        REQUIRE_FALSE(functor_violation(G, C.groupoid, F).has_value());
        CHECK(is_equivalence(G, C.groupoid, F));
    }
}

TEST_CASE("hurewicz") {
    auto [ZX, h] = hurewicz(standard_simplex(1, 2));
    CHECK(ZX.level(1).generators() == 3);
    auto [Zp, hp] = hurewicz(discrete_simplicial_set({"a", "b"}, 2));
    CHECK(homology(Zp, 0).str() == "Z^2");
    CHECK(homology(Zp, 1).is_trivial());
}
