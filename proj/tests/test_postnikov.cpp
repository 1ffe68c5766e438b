#include <catch_amalgamated.hpp>

#include "cosimplex/generators.hpp"
#include "cosimplex/postnikov.hpp"

using namespace cosimplex;

namespace {
AbInvariants Z() { return FGAbGroup::free(1).invariants(); }
AbInvariants zero() { return AbInvariants{}; }
const std::vector<int> kTorsion{0, 2, 3};

/// Homology read off the pieces of a random complex, independent of Smith forms.
AbInvariants expected_homology(const std::vector<ChainPiece>& pieces, int m) {
    IntVector orders;
    for (const auto& p : pieces) {
        if (p.mult == 0 && p.degree == m) orders.push_back(p.torsion);
        if (p.mult > 1 && p.degree == m) orders.push_back(p.mult);
    }
    return FGAbGroup::from_orders(orders).invariants();
}

bool levelwise_iso(const SimpAbMap& f) {
    for (const auto& h : f.levels)
        if (!is_isomorphism(h)) return false;
    return true;
}

Int binomial(int n, int k) {
    Int r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

ChainComplex Z_in_degree(int n) {
    std::vector<FGAbGroup> g(n + 1, FGAbGroup::zero());
    g[n] = FGAbGroup::free(1);
    std::vector<AbHom> b;
    for (int m = 1; m <= n; ++m) b.push_back(AbHom::zero(g[m], g[m - 1]));
    return ChainComplex(g, b);
}

SSetDiagram point_diagram(const TruncSimpSet& X) {
    auto I = discrete_groupoid({"*"});
    return SSetDiagram{I, {X}, {identity_map(X)}};
}
}  // namespace

TEST_CASE("epi-mono factorization") {
    OrdinalMap f{4, {1, 1, 3, 3, 4}};
    auto [e, m] = epi_mono(f);
    CHECK(e.is_surjective());
    CHECK(m.is_injective());
    CHECK(compose(m, e) == f);
    CHECK(e.cod == 2);
}

TEST_CASE("normalization of constant and free simplicial groups") {
    auto [ZP, h0] = hurewicz(standard_simplex(0, 3));
    auto N0 = normalize_dk(ZP);
    CHECK(N0.homology(0) == Z());
    for (int m = 1; m <= 3; ++m) CHECK(N0.group(m).generators() == 0);

    auto [ZD, h1] = hurewicz(standard_simplex(1, 3));
    auto N1 = normalize_dk(ZD);
    CHECK(N1.group(0).invariants().free_rank == 2);
    CHECK(N1.group(1).invariants().free_rank == 1);
    for (int m = 2; m <= 3; ++m) CHECK(N1.group(m).is_trivial());
    // the edge goes to (vertex 1) - (vertex 0) up to sign
    auto img = image(compose(normalized_dk_data(ZD).parts[0].inclusion, N1.boundary(1)));
    LatticeSolver solver(img.lattice);
    CHECK(solver.contains(IntVector{-1, 1}));
    CHECK_FALSE(solver.contains(IntVector{1, 0}));
}

TEST_CASE("Eilenberg-Mac Lane levels count surjections") {
    for (int n = 0; n <= 3; ++n) {
        auto K = gamma_dk(Z_in_degree(n), 4);
        for (int m = 0; m <= 4; ++m) {
            Int surj = m >= n ? binomial(m, n) : Int(0);
            CHECK(Int(K.level(m).generators()) == surj);
        }
        for (int m = 0; m <= 3; ++m) CHECK(homology(K, m) == (m == n ? Z() : zero()));
    }
    auto K0 = gamma_dk(Z_in_degree(0), 3);
    for (int m = 0; m <= 3; ++m) CHECK(K0.level(m).invariants() == Z());
}

TEST_CASE("Dold-Kan round trips on random complexes") {
    Rng rng(17);
    for (int t = 0; t < 30; ++t) {
        int top = rng.range(0, 3), M = rng.range(top, 4);
        auto R = random_chain_complex(rng, top, kTorsion);
        auto G = gamma_dk(R.complex, M);
        auto unit = dk_unit(R.complex, M);
        REQUIRE_FALSE(unit.map.violation(truncate_complex(R.complex, M), unit.normalized));
        for (const auto& c : unit.map.components) CHECK(is_isomorphism(c));
        for (int m = 0; m + 1 <= M; ++m) {
            CHECK(homology(G, m) == expected_homology(R.pieces, m));
            CHECK(R.complex.homology(m) == expected_homology(R.pieces, m));
        }
        auto eps = dk_counit(G);
        CHECK_FALSE(simp_ab_map_violation(eps.gamma, G, eps.map));
        CHECK(levelwise_iso(eps.map));
    }
}

TEST_CASE("Dold-Kan counit on free simplicial groups") {
    std::vector<TruncSimpSet> shapes{standard_simplex(1, 3), standard_simplex(2, 3), boundary_simplex(2, 3), boundary_simplex(3, 3),
                                     nerve(cyclic_groupoid(2), 3), nerve(contractible_groupoid({"p", "q"}), 3)};
    for (const auto& X : shapes) {
        auto [ZX, h] = hurewicz(X);
        auto eps = dk_counit(ZX);
        CHECK_FALSE(simp_ab_map_violation(eps.gamma, ZX, eps.map));
        CHECK(levelwise_iso(eps.map));
        auto N = normalize_dk(ZX);
        for (int m = 0; m + 1 <= X.trunc(); ++m) CHECK(N.homology(m) == homology(X, m));
    }
}

TEST_CASE("gamma of a chain map is simplicial") {
    Rng rng(3);
    for (int t = 0; t < 10; ++t) {
        auto R = random_chain_complex(rng, 3, kTorsion);
        auto T = good_truncation(R.complex, rng.range(0, 2));
        REQUIRE_FALSE(T.projection.violation(R.complex, T.complex));
        auto f = gamma_dk_map(R.complex, T.complex, T.projection, 3);
        CHECK_FALSE(simp_ab_map_violation(gamma_dk(R.complex, 3), gamma_dk(T.complex, 3), f));
    }
}

TEST_CASE("postnikov sections") {
    auto [ZD, h] = hurewicz(standard_simplex(1, 3));
    auto P0 = postnikov_section_ab(ZD, 0);
    CHECK_FALSE(simp_ab_map_violation(ZD, P0.section, P0.map));
    for (int m = 0; m <= 3; ++m) CHECK(P0.section.level(m).invariants() == Z());
    CHECK_FALSE(postnikov_window_violation(ZD, P0, 0));
    CHECK_THROWS_AS(postnikov_section_ab(ZD, 3), DegreeRangeError);

    auto [ZS, hs] = hurewicz(boundary_simplex(3, 4));
    auto P3 = postnikov_section_ab(ZS, 3);
    CHECK_FALSE(postnikov_window_violation(ZS, P3, 3));
    auto P1 = postnikov_section_ab(ZS, 1);
    CHECK_FALSE(postnikov_window_violation(ZS, P1, 1));
    CHECK(homology(P1.section, 2) == zero());
    CHECK(homology(ZS, 2) == Z());

    Rng rng(8);
    for (int t = 0; t < 20; ++t) {
        int M = rng.range(2, 4);
        auto R = random_chain_complex(rng, M, kTorsion);
        auto A = gamma_dk(R.complex, M);
        int n = rng.range(0, M - 1);
        auto P = postnikov_section_ab(A, n);
        CHECK_FALSE(simp_ab_map_violation(A, P.section, P.map));
        CHECK_FALSE(postnikov_window_violation(A, P, n));
        for (int m = 0; m <= M - 1; ++m) CHECK(homology(P.section, m) == (m <= n ? expected_homology(R.pieces, m) : zero()));
    }
}

TEST_CASE("k-invariant of a two-stage complex") {
    Rng rng(0);
    auto R = complex_from_pieces(rng, {{2, 0, 0}, {3, 0, 0}}, 4);
    auto r = k_invariant_chain(R.complex, 3);
    CHECK(r.top_class == Z());
    CHECK(r.fibre_class == Z());
    CHECK(r.pass());
    CHECK(r.target.homology(4) == Z());
    for (int m = 0; m <= 5; ++m)
        if (m != 4) CHECK(r.target.homology(m) == zero());

    auto single = complex_from_pieces(rng, {{3, 2, 0}}, 4);
    auto s = k_invariant_chain(single.complex, 3);
    CHECK(s.pass());
    CHECK(s.top_class.str() == "Z/2");
    for (int m = 0; m <= 4; ++m) CHECK(s.Pn1.homology(m) == zero());

    auto low = complex_from_pieces(rng, {{1, 0, 0}, {3, 0, 0}}, 4);
    CHECK_THROWS_AS(k_invariant_chain(low.complex, 3), HypothesisFailed);
    CHECK_THROWS_AS(k_invariant_chain(R.complex, 1), DegreeRangeError);
}

TEST_CASE("k-invariant exactness on random two-stage complexes") {
    Rng rng(25);
    for (int t = 0; t < 20; ++t) {
        int n = rng.range(3, 4);
        auto R = random_two_stage_complex(rng, n, kTorsion);
        auto r = k_invariant_chain(R.complex, n);
        INFO("case " << t);
        CHECK(r.pass());
        CHECK(r.top_class == expected_homology(R.pieces, n));
        CHECK(r.Pn1.homology(n - 1) == expected_homology(R.pieces, n - 1));
    }
}

TEST_CASE("k-invariant of a simplicial abelian group") {
    Rng rng(1);
    auto R = complex_from_pieces(rng, {{2, 0, 0}, {3, 3, 0}}, 4);
    auto A = gamma_dk(R.complex, 4);
    auto r = k_invariant_ab(A, 3);
    CHECK(r.pass());
    CHECK(r.top_class.str() == "Z/3");
    CHECK_FALSE(simp_ab_map_violation(*r.Pn_simp, *r.Pn1_simp, *r.q_simp));
    CHECK_FALSE(simp_ab_map_violation(*r.Pn1_simp, *r.target_simp, *r.k_simp));
    CHECK_THROWS_AS(k_invariant_ab(A, 4), DegreeRangeError);
}

TEST_CASE("Eilenberg-Mac Lane model of the 2-sphere") {
    auto S = boundary_simplex(3, 3);
    auto [U, incl] = generated_subset(S, {{0, 0}});
    auto V = point_diagram(S);
    auto r = em_model(point_diagram(U), V, {incl}, V, {identity_map(S)}, 2);
    REQUIRE(r.coefficients.size() == 1);
    CHECK(r.coefficients[0] == Z());
    CHECK(r.window == 2);
    CHECK(r.functorial);
    for (const auto& a : r.arrows) {
        INFO(a.arrow);
        CHECK(a.iso);
    }
    CHECK(r.pass());
    CHECK(r.arrows.size() == 5);

    // U = V on a contractible model: the quotient is acyclic
    auto D = standard_simplex(2, 3);
    auto VD = point_diagram(D);
    auto all = em_model(VD, VD, {identity_map(D)}, VD, {identity_map(D)}, 2);
    CHECK(all.coefficients[0] == zero());
    CHECK(all.pass());

    CHECK_THROWS_AS(em_model(point_diagram(U), V, {incl}, V, {identity_map(S)}, 3), DegreeRangeError);
    auto [U2, incl2] = generated_subset(S, {{0, 0}, {0, 1}});
    CHECK_THROWS_AS(em_model(point_diagram(U2), V, {incl2}, V, {identity_map(S)}, 2), HypothesisFailed);
}

TEST_CASE("Eilenberg-Mac Lane model over the arrow category") {
    auto S = boundary_simplex(3, 3);
    auto [U, incl] = generated_subset(S, {{0, 0}});
    auto I = arrow_category();
    SSetDiagram V{I, {S, S}, {identity_map(S), identity_map(S), identity_map(S)}};
    SSetDiagram UD{I, {U, U}, {identity_map(U), identity_map(U), identity_map(U)}};
    auto r = em_model(UD, V, {incl, incl}, V, {identity_map(S), identity_map(S)}, 2);
    CHECK(r.pass());
    CHECK(r.coefficients[0] == r.coefficients[1]);
    CHECK(is_isomorphism(r.transitions[2]));
}
