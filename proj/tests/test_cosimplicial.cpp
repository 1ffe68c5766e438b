#include <catch_amalgamated.hpp>

#include "cosimplex/cosimplicial.hpp"
#include "cosimplex/generators.hpp"

using namespace cosimplex;

TEST_CASE("vertices of Delta have four matching objects at level 2") {
    auto X = delta_vertices(2);
    CHECK(X.size(2) == 3);
    auto M = matching_set(X, 2);
    CHECK(M.tuples.size() == 4);
    CHECK_FALSE(matching_surjective(X, 2));
}

TEST_CASE("vertices of Delta have empty limit") {
    for (int N = 1; N <= 3; ++N) {
        auto X = delta_vertices(N);
        CHECK(maximal_augmentation(X).empty());
        CHECK(inverse_limit_trunc(X).empty());
    }
}

TEST_CASE("constant cosimplicial sets") {
    auto X = constant_cosimplicial_set({"a", "b", "c"}, 3);
    CHECK(maximal_augmentation(X).size() == 3);
    auto cones = inverse_limit_trunc(X);
    REQUIRE(cones.size() == 3);
    for (const auto& c : cones) CHECK(std::all_of(c.begin(), c.end(), [&](int v) { return v == c[0]; }));
    for (int n = 1; n <= 3; ++n) {
        CHECK(matching_set(X, n).tuples.size() == 3);
        CHECK(matching_surjective(X, n));
    }
}

TEST_CASE("matching set at n = 1 is X^0") {
    auto X = representable_cosimplicial_set(1, 2);
    auto M = matching_set(X, 1);
    CHECK(M.tuples.size() == X.size(0));
    for (std::size_t x = 0; x < X.size(1); ++x) CHECK(M.tuples[M.s[x]][0] == X.codeg(0, 0)[x]);
}

TEST_CASE("augmentation selects the equalizer") {
    // X^0 = {a, b}, X^1 = {a, b, b'}; d^0 = d^1 on a only.
    TruncCosimpSet X({{"a", "b"}, {"a", "b", "b'"}}, {{}, {{0, 1}, {0, 2}}}, {{{0, 1, 1}}, {}});
    auto aug = maximal_augmentation(X);
    REQUIRE(aug.size() == 1);
    CHECK(aug[0] == 0);
    CHECK(inverse_limit_trunc(X).size() == 1);
    CHECK(tot_discrete(X).size() == 1);
}

TEST_CASE("broken cosimplicial identities are rejected") {
    auto X = delta_vertices(2);
    auto cof = X.cofaces();
    std::swap(cof[2][0], cof[2][2]);
    CHECK_THROWS_AS(TruncCosimpSet(X.all_labels(), cof, X.codegs()), ValidationError);
    auto cod = X.codegs();
    cod[0][0] = {0, 0};
    cof = X.cofaces();
    cof[1][0] = {0};
    CHECK_THROWS_AS(TruncCosimpSet(X.all_labels(), cof, cod), ValidationError);
}

TEST_CASE("limit equals augmentation on random instances") {
    Rng rng(7);
    for (int t = 0; t < 60; ++t) {
        int N = rng.range(1, 3);
        auto X = random_cosimplicial_set(rng, N, 5);
        for (int n = 0; n <= N; ++n) CHECK(X.size(n) <= 5);
        auto aug = maximal_augmentation(X);
        auto cones = inverse_limit_trunc(X);
        REQUIRE(aug.size() == cones.size());
        for (std::size_t k = 0; k < aug.size(); ++k) CHECK(cones[k][0] == aug[k]);
    }
}

TEST_CASE("matching maps are natural") {
    Rng rng(11);
    for (int t = 0; t < 30; ++t) {
        int N = rng.range(1, 3);
        CosimpSetMap q;
        auto [X, Y] = random_cosimplicial_pair(rng, N, 5, &q);
        REQUIRE_FALSE(cosimplicial_map_violation(X, Y, q));
        for (int n = 1; n <= N; ++n) {
            auto MX = matching_set(X, n), MY = matching_set(Y, n);
            auto Mq = induced_matching_map(MX, MY, q, n);
            CHECK(compose_index(Mq, MX.s) == compose_index(MY.s, q[n]));
        }
    }
}

TEST_CASE("Delta as a cosimplicial space") {
    auto D = delta_space(3, 3);
    CHECK(D.level(2).size(0) == 3);
    auto sk = cosimplicial_skeleton(D, 1);
    CHECK(sk.level(2).nondegenerate(2).empty());
}

TEST_CASE("extensions along skeleta of Delta") {
    for (int n = 1; n <= 3; ++n) {
        auto D = delta_space(n, n);
        SkeletalFamily f;
        for (int k = 0; k < n; ++k) {
            auto all = monotone_maps(k, k);
            f.push_back(int(std::find(all.begin(), all.end(), ordinal_identity(k)) - all.begin()));
        }
        auto c = extension_candidates(D, f, n);
        auto all = monotone_maps(n, n);
        int id = int(std::find(all.begin(), all.end(), ordinal_identity(n)) - all.begin());
        CHECK(std::find(c.begin(), c.end(), id) != c.end());
        // oracle: filter every n-simplex by its faces and codegeneracies
        std::vector<int> expect;
        for (std::size_t x = 0; x < all.size(); ++x) {
            bool ok = true;
            for (int j = 0; j <= n; ++j) ok = ok && compose(all[x], coface_map(n, j)) == coface_map(n, j);
            for (int i = 0; i < n; ++i)
                ok = ok && compose(codegeneracy_map(n - 1, i), all[x]) == codegeneracy_map(n - 1, i);
            if (ok) expect.push_back(int(x));
        }
        CHECK(c == expect);
    }
}

TEST_CASE("extensions into a point and into the 0-skeleton") {
    auto P = discrete_space(constant_cosimplicial_set({"*"}, 2), 2);
    CHECK(extension_candidates(P, {0, 0}, 2).size() == 1);
    auto sk0 = cosimplicial_skeleton(delta_space(1, 1), 0);
    CHECK(extension_candidates(sk0, {0}, 1).empty());
    CHECK_THROWS_AS(extension_candidates(delta_space(2, 2), {0, 0}, 2), ValidationError);
}
