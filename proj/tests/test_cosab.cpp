#include <catch_amalgamated.hpp>

#include "cosimplex/cosab.hpp"
#include "cosimplex/generators.hpp"

using namespace cosimplex;

namespace {
AbInvariants inv(const FGAbGroup& G) { return G.invariants(); }
AbInvariants Z() { return FGAbGroup::free(1).invariants(); }
AbInvariants zero() { return AbInvariants{}; }
const std::vector<int> kTorsion{0, 2, 3, 4};
}  // namespace

TEST_CASE("constant Z has alternating Moore differentials") {
    auto A = constant_cosimplicial_ab(FGAbGroup::free(1), 4);
    auto C = moore_complex(A);
    for (int n = 0; n < 4; ++n) CHECK(C.differential(n).matrix()(0, 0) == (n % 2 == 0 ? 0 : 1));
    CHECK(inv(cohomology_H(A, 0)) == Z());
    for (int n = 1; n <= 3; ++n) CHECK(inv(cohomology_H(A, n)) == zero());
    CHECK_THROWS_AS(cohomology_H(A, 4), DegreeRangeError);
}

TEST_CASE("constant Z/2 cohomology") {
    auto A = constant_cosimplicial_ab(FGAbGroup::cyclic(2), 3);
    CHECK(cohomology_H(A, 0).invariants().str() == "Z/2");
    CHECK(inv(cohomology_H(A, 1)) == zero());
    CHECK(inv(cohomology_H(A, 2)) == zero());
}

TEST_CASE("normalized complex of a constant group") {
    auto A = constant_cosimplicial_ab(FGAbGroup::free(1), 3);
    auto cn = cn_subcomplex(A, kAllCodegeneracies);
    CHECK(inv(cn.complex.group(0)) == Z());
    for (int n = 1; n <= 3; ++n) CHECK(cn.complex.group(n).invariants().is_trivial());
    auto full = cn_subcomplex(A, -1);
    for (int n = 0; n <= 3; ++n) CHECK(inv(full.complex.group(n)) == Z());
}

TEST_CASE("matching splitting on constant groups") {
    auto A = constant_cosimplicial_ab(FGAbGroup::free(2), 3);
    for (int n = 1; n <= 3; ++n) {
        auto M = matching_group(A, n);
        CHECK(M.sub.group.invariants().free_rank == 2);
        auto j = matching_splitting(A, n);
        // diagonal (a, ..., a) goes to a
        IntVector a{3, -5}, t;
        for (int i = 0; i < n; ++i) t.insert(t.end(), a.begin(), a.end());
        LatticeSolver solver(M.sub.lattice);
        auto coords = solver.solve(t);
        REQUIRE(coords);
        CHECK(j(*coords) == a);
    }
}

TEST_CASE("random cosimplicial abelian groups: splitting, normalization, homotopy") {
    Rng rng(2024);
    for (int t = 0; t < 25; ++t) {
        int N = rng.range(1, 4);
        auto A = random_cosimplicial_ab(rng, N, 3, kTorsion);
        for (int n = 1; n <= N; ++n) CHECK_NOTHROW(matching_splitting(A, n));
        for (int k = -1; k <= N; ++k) {
            auto cn = cn_subcomplex(A, k);
            for (int n = 0; n <= N - 1; ++n) CHECK(inv(cn.complex.cohomology_subquotient(n).group()) == inv(cohomology_H(A, n)));
            if (k <= N - 2) CHECK_FALSE(contracting_homotopy_violation(A, k));
        }
        auto all = cn_subcomplex(A, kAllCodegeneracies);
        for (int n = 0; n <= N - 1; ++n) CHECK(inv(all.complex.cohomology_subquotient(n).group()) == inv(cohomology_H(A, n)));
    }
}

TEST_CASE("homotopy of maps into Eilenberg-MacLane objects") {
    auto A = constant_cosimplicial_ab(FGAbGroup::free(1), 3);
    CHECK(inv(pi0_hom_delta_K(A, 0)) == Z());
    CHECK(inv(pi0_hom_delta_K(A, 1)) == zero());
    CHECK(inv(pi_k_hom_delta_K(A, 2, 2)) == Z());
    CHECK(inv(pi_k_hom_delta_K(A, 2, 3)) == zero());
    CHECK(inv(pi_k_hom_delta_K(A, 1, 0)) == inv(pi0_hom_delta_K(A, 1)));
}

TEST_CASE("brute-force cochain maps") {
    auto A = constant_cosimplicial_ab(FGAbGroup::cyclic(2), 3);
    CHECK(enumerate_cochain_maps(A, 1).classes == 1);
    CHECK(enumerate_cochain_maps(A, 0).classes == 2);
    auto Zero = constant_cosimplicial_ab(FGAbGroup::zero(), 2);
    auto c = enumerate_cochain_maps(Zero, 1);
    CHECK(c.maps == 1);
    CHECK(c.classes == 1);
    CHECK_THROWS_AS(enumerate_cochain_maps(constant_cosimplicial_ab(FGAbGroup::free(1), 2), 0), InfiniteGroup);
    Rng rng(5);
    for (int t = 0; t < 15; ++t) {
        int N = rng.range(1, 3);
        auto B = random_cosimplicial_ab(rng, N, 3, {2, 3});
        for (int n = 0; n <= N - 1; ++n) CHECK(enumerate_cochain_maps(B, n).classes == pi0_hom_delta_K(B, n).invariants().order());
    }
}

TEST_CASE("finite element enumeration") {
    FGAbGroup G(2, Matrix{{2, 1}, {0, 3}});
    FiniteGroupElements E(G);
    CHECK(E.all().size() == 6);
    CHECK(E.is_zero({2, 0}));
    CHECK_FALSE(E.is_zero({1, 0}));
}

TEST_CASE("derived limits") {
    auto A = constant_cosimplicial_ab(FGAbGroup::free(1), 2);
    CHECK(inv(derived_limit_cobar(A, 0)) == Z());
    DerivedLimitOptions cobar;
    cobar.method = DerivedLimitMethod::cobar;
    DerivedLimitOptions res;
    res.method = DerivedLimitMethod::resolution;
    Rng rng(99);
    for (int t = 0; t < 10; ++t) {
        int N = rng.range(2, 3);
        auto B = random_cosimplicial_ab(rng, N, 2, kTorsion);
        auto lim = inverse_limit_group(B).group.invariants();
        CHECK(inv(derived_limit_cobar(B, 0, cobar)) == lim);
        CHECK(inv(derived_limit_cobar(B, 0, res)) == lim);
        CHECK(lim == inv(cohomology_H(B, 0)));
    }
    DerivedLimitOptions tiny;
    tiny.method = DerivedLimitMethod::cobar;
    tiny.chain_cap = 10;
    CHECK_THROWS_AS(derived_limit_cobar(A, 0, tiny), CapExceeded);
    CHECK_THROWS_AS(derived_limit_cobar(A, 1), DegreeRangeError);
}

TEST_CASE("higher derived limits agree with cohomology at N = 4") {
    Rng rng(4);
    for (int t = 0; t < 3; ++t) {
        auto B = random_cosimplicial_ab(rng, 4, 3, kTorsion);
        for (int n = 0; n <= 2; ++n) CHECK(inv(derived_limit_cobar(B, n)) == inv(cohomology_H(B, n)));
    }
}

TEST_CASE("fibration check on free cosimplicial simplicial groups") {
    auto D = delta_space(2, 2);
    auto P = discrete_space(constant_cosimplicial_set({"*"}, 2), 2);
    auto ZD = free_cosimplicial_simp_ab(D);
    auto ZP = free_cosimplicial_simp_ab(P);
    std::vector<SimplicialMap> to_point;
    for (int n = 0; n <= 2; ++n) {
        SimplicialMap f;
        for (int m = 0; m <= 2; ++m) f.levels.push_back(IndexMap(D.level(n).size(m), 0));
        to_point.push_back(f);
    }
    CHECK(bk_fibration_check(ZD, ZP, free_cosimplicial_map(D, P, to_point)));
    CosimpSimpAbMap id;
    for (int n = 0; n <= 2; ++n) {
        SimpAbMap f;
        for (int m = 0; m <= 2; ++m) f.levels.push_back(AbHom::identity(ZD.level(n).level(m)));
        id.push_back(f);
    }
    CHECK(bk_fibration_check(ZD, ZD, id));
    CosimpSimpAbMap zero;
    for (int n = 0; n <= 2; ++n) {
        SimpAbMap f;
        for (int m = 0; m <= 2; ++m) f.levels.push_back(AbHom::zero(ZP.level(n).level(m), ZD.level(n).level(m)));
        zero.push_back(f);
    }
    CHECK_FALSE(bk_fibration_check(ZP, ZD, zero));
}

TEST_CASE("free resolution of the constant functor is exact") {
    for (int N = 1; N <= 4; ++N) {
        const auto& R = FreeResolution::cached(N, 3);
        for (int n = 0; n <= N; ++n) {
            for (int k = 0; k + 1 <= 3; ++k) {
                Matrix e0 = R.augmentation(k, n), e1 = R.augmentation(k + 1, n);
                CHECK((e0 * e1).is_zero());
                // image of e1 is the full kernel of e0
                Matrix K = integer_kernel(e0);
                LatticeSolver image(e1);
                for (std::size_t c = 0; c < K.cols(); ++c) CHECK(image.contains(K.column(c)));
            }
        }
    }
}
