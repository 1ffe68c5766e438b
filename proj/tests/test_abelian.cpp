#include <catch_amalgamated.hpp>

#include "cosimplex/abelian.hpp"

using namespace cosimplex;

namespace {

bool is_diagonal_chain(const Matrix& S, std::size_t rank) {
    for (std::size_t i = 0; i < S.rows(); ++i)
        for (std::size_t j = 0; j < S.cols(); ++j)
            if (i != j && S(i, j) != 0) return false;
    for (std::size_t i = 0; i < rank; ++i) {
        if (S(i, i) <= 0) return false;
        if (i + 1 < rank && S(i + 1, i + 1) % S(i, i) != 0) return false;
    }
    for (std::size_t i = rank; i < std::min(S.rows(), S.cols()); ++i)
        if (S(i, i) != 0) return false;
    return true;
}

void check_snf(const Matrix& M) {
    SmithOptions opt;
    opt.left_inverse = opt.right_inverse = true;
    SmithResult r = smith_normal_form(M, opt);
    CHECK(r.U * M * r.V == r.S);
    CHECK(is_diagonal_chain(r.S, r.rank));
    CHECK(abs(determinant(r.U)) == 1);
    CHECK(abs(determinant(r.V)) == 1);
    CHECK(r.U * r.U_inv == Matrix::identity(M.rows()));
    CHECK(r.V * r.V_inv == Matrix::identity(M.cols()));
}

}  // namespace

TEST_CASE("smith normal form of diag(2,3)") {
    Matrix M{{2, 0}, {0, 3}};
    check_snf(M);
    SmithResult r = smith_normal_form(M);
    CHECK(r.S == Matrix{{1, 0}, {0, 6}});
}

TEST_CASE("smith normal form of identity and a gcd-2 matrix") {
    CHECK(smith_normal_form(Matrix::identity(3)).S == Matrix::identity(3));
    Matrix M{{4, 6}, {2, 2}};
    check_snf(M);
    CHECK(smith_normal_form(M).S == Matrix{{2, 0}, {0, 2}});
}

TEST_CASE("smith normal form on pseudo-random matrices") {
    std::uint64_t state = 12345;
    auto next = [&] {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<long long>((state >> 33) % 21) - 10;
    };
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t r = 1 + trial % 5, c = 1 + (trial / 5) % 5;
        Matrix M(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) M(i, j) = next();
        check_snf(M);
    }
}

TEST_CASE("large entries do not overflow") {
    Matrix M{{1000000007LL * 3, 999999937LL}, {999999937LL * 5, 1000000007LL}};
    M(0, 0) *= Int("123456789123456789");
    check_snf(M);
}

TEST_CASE("cohomology of multiplication by two") {
    FGAbGroup Z = FGAbGroup::free(1);
    AbHom two(Z, Z, Matrix{{2}});
    CochainComplex C(0, {Z, Z, FGAbGroup::zero()}, {two, AbHom::zero(Z, FGAbGroup::zero())});
    CHECK(cohomology(C, 1).str() == "Z/2");
    CHECK(cohomology(C, 0).is_trivial());
    CHECK_THROWS_AS(cohomology(C, 2), DegreeRangeError);
}

TEST_CASE("zero differentials give back the groups") {
    FGAbGroup A = FGAbGroup::from_orders({0, 4});
    FGAbGroup B = FGAbGroup::from_orders({6, 2});
    CochainComplex C(0, {A, B, A}, {AbHom::zero(A, B), AbHom::zero(B, A)});
    CHECK(cohomology(C, 0) == A.invariants());
    CHECK(cohomology(C, 1) == B.invariants());
    CHECK(cohomology(C, 1).str() == "Z/2 + Z/6");
}

TEST_CASE("hom_equal respects target relations") {
    FGAbGroup Z = FGAbGroup::free(1);
    FGAbGroup Z2 = FGAbGroup::cyclic(2);
    CHECK(hom_equal(AbHom(Z, Z2, Matrix{{1}}), AbHom(Z, Z2, Matrix{{3}})));
    CHECK_FALSE(hom_equal(AbHom(Z, Z, Matrix{{1}}), AbHom(Z, Z, Matrix{{2}})));
    CHECK_THROWS_AS(hom_equal(AbHom(Z, Z, Matrix{{1}}), AbHom(Z, direct_sum(Z, Z), Matrix{{1}, {0}})),
                    ShapeMismatch);
}

TEST_CASE("ill-defined homomorphisms and non-complexes are rejected") {
    FGAbGroup Z = FGAbGroup::free(1);
    FGAbGroup Z2 = FGAbGroup::cyclic(2);
    CHECK_THROWS_AS(AbHom(Z2, Z, Matrix{{1}}), ValidationError);
    AbHom id = AbHom::identity(Z);
    CHECK_THROWS_AS(CochainComplex(0, {Z, Z, Z}, {id, id}), ValidationError);
}

TEST_CASE("cohomology does not depend on the presentation") {
    // Z --(x2)--> Z + Z/4 --(0, 1)--> Z/4
    FGAbGroup Z = FGAbGroup::free(1);
    FGAbGroup B = FGAbGroup::from_orders({0, 4});
    FGAbGroup C4 = FGAbGroup::cyclic(4);
    AbHom d0(Z, B, Matrix{{2}, {0}});
    AbHom d1(B, C4, Matrix{{0, 1}});
    CochainComplex C(0, {Z, B, C4}, {d0, d1});
    auto h1 = cohomology(C, 1);
    CHECK(h1.str() == "Z/2");

    // Change generators of B by the unimodular P = [[1,1],[0,1]] (new = P^{-1} old).
    Matrix P{{1, 1}, {0, 1}};
    Matrix Pinv{{1, -1}, {0, 1}};
    FGAbGroup B2(2, Pinv * B.relations());
    AbHom e0(Z, B2, Pinv * d0.matrix());
    AbHom e1(B2, C4, d1.matrix() * P);
    CochainComplex C2(0, {Z, B2, C4}, {e0, e1});
    CHECK(cohomology(C2, 1) == h1);
    CHECK(cohomology(C2, 0) == cohomology(C, 0));
}

TEST_CASE("kernel, cokernel and inverse") {
    FGAbGroup Z2 = FGAbGroup::free(2);
    FGAbGroup Z = FGAbGroup::free(1);
    AbHom f(Z2, Z, Matrix{{2, 4}});
    CHECK(kernel(f).group.invariants().str() == "Z");
    CHECK(cokernel(f).first.invariants().str() == "Z/2");
    CHECK_FALSE(is_surjective(f));
    AbHom g(Z2, Z2, Matrix{{2, 1}, {1, 1}});
    AbHom gi = inverse(g);
    CHECK(hom_equal(compose(g, gi), AbHom::identity(Z2)));
}
