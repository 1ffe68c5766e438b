#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cosimplex/generators.hpp"
#include "cosimplex/hdelta.hpp"
#include "cosimplex/postnikov.hpp"

namespace cosimplex {

struct CaseResult {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    bool pass = false;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::size_t count = 0;
    std::vector<CaseResult> cases;

    std::size_t passed() const {
        std::size_t k = 0;
        for (const auto& c : cases) k += c.pass;
        return k;
    }
    bool pass() const { return passed() == cases.size(); }
};

/// Case i of a suite draws from mt19937_64 seeded with seed * 0x9E3779B97F4A7C15 + i.
inline std::uint64_t case_seed(std::uint64_t seed, std::size_t i) { return seed * 0x9E3779B97F4A7C15ull + i; }

namespace suites {

/// A failed case carries a short description; an empty optional is a pass.
using Case = std::function<std::optional<std::string>(Rng&)>;


inline std::optional<std::string> limit_is_augmentation(Rng& rng) {
    int N = rng.range(1, 3);
    auto X = random_cosimplicial_set(rng, N, 5);
    auto aug = maximal_augmentation(X);
    auto cones = inverse_limit_trunc(X);
    if (aug.size() != cones.size()) return "augmentation has " + std::to_string(aug.size()) + " points, limit " + std::to_string(cones.size());
    for (std::size_t k = 0; k < aug.size(); ++k)
        if (cones[k][0] != aug[k]) return "limit point " + std::to_string(k) + " differs from the augmentation";
    return std::nullopt;
}

inline const std::vector<int>& ab_torsion() {
    static const std::vector<int> t{0, 2, 3, 4};
    return t;
}

inline std::optional<std::string> matching_splits(Rng& rng) {
    int N = rng.range(1, 4);
    auto A = random_cosimplicial_ab(rng, N, 3, ab_torsion());
    for (int n = 1; n <= N; ++n) {
        auto M = matching_group(A, n);
        auto j = matching_splitting(A, n);
        if (!hom_equal(compose(M.s, j), AbHom::identity(M.sub.group))) return "s o j != id at level " + std::to_string(n);
    }
    return std::nullopt;
}

inline std::optional<std::string> normalization_preserves_cohomology(Rng& rng) {
    int N = rng.range(1, 4);
    auto A = random_cosimplicial_ab(rng, N, 3, ab_torsion());
    std::vector<AbInvariants> H;
    for (int n = 0; n <= N - 1; ++n) H.push_back(cohomology_H(A, n).invariants());
    for (int k = -1; k <= N; ++k) {
        auto cn = cn_subcomplex(A, k);
        for (int n = 0; n <= N - 1; ++n)
            if (cn.complex.cohomology_subquotient(n).invariants() != H[n])
                return "cN_" + std::to_string(k) + " differs in degree " + std::to_string(n);
        if (k <= N - 2)
            if (auto bad = contracting_homotopy_violation(A, k)) return "k = " + std::to_string(k) + ": " + *bad;
    }
    auto all = cn_subcomplex(A, kAllCodegeneracies);
    for (int n = 0; n <= N - 1; ++n)
        if (all.complex.cohomology_subquotient(n).invariants() != H[n]) return "cN differs in degree " + std::to_string(n);
    return std::nullopt;
}

inline std::optional<std::string> homotopy_classes_match_brute_force(Rng& rng) {
    int N = rng.range(1, 3);
    auto A = random_cosimplicial_ab(rng, N, 3, {2, 3});
    for (int n = 0; n <= N - 1; ++n) {
        Int brute = enumerate_cochain_maps(A, n).classes;
        Int snf = pi0_hom_delta_K(A, n).invariants().order();
        if (brute != snf) return "degree " + std::to_string(n) + ": " + brute.str() + " classes by enumeration, " + snf.str() + " by SNF";
    }
    return std::nullopt;
}

inline std::optional<std::string> derived_limits_match_cohomology(Rng& rng) {
    auto A = random_cosimplicial_ab(rng, 4, 3, ab_torsion());
    for (int n = 0; n <= 2; ++n) {
        auto lhs = derived_limit_cobar(A, n).invariants(), rhs = cohomology_H(A, n).invariants();
        if (lhs != rhs) return "degree " + std::to_string(n) + ": " + lhs.str() + " vs " + rhs.str();
    }
    return std::nullopt;
}

inline std::optional<std::string> levelwise_surjection_is_fibration(Rng& rng) {
    int N = rng.range(1, 3), M = rng.range(1, 2);
    CosimpSetMap q;
    auto [X, Y] = random_cosimplicial_pair(rng, N, 3, &q);
    auto DX = discrete_space(X, M), DY = discrete_space(Y, M);
    std::vector<SimplicialMap> f;
    for (int n = 0; n <= N; ++n) {
        SimplicialMap g;
        for (int m = 0; m <= M; ++m) g.levels.push_back(q[n]);
        f.push_back(g);
    }
    auto A = free_cosimplicial_simp_ab(DX), B = free_cosimplicial_simp_ab(DY);
    auto F = free_cosimplicial_map(DX, DY, f);
    for (int n = 0; n <= N; ++n)
        for (int m = 1; m <= M; ++m)
            if (!is_surjective(F[n].levels[m])) return "generated map is not levelwise surjective";
    if (!bk_fibration_check(A, B, F)) return "matching map is not onto";
    return std::nullopt;
}

inline CosimpGpdPtr share(TruncCosimpGpd H) { return std::make_shared<const TruncCosimpGpd>(std::move(H)); }

inline std::optional<std::string> contractible_hdelta_is_level_zero(Rng& rng) {
    int N = rng.range(1, 3);
    if (rng.coin()) {
        if (!lemma11_check(contractible_cosimplicial_gpd(random_cosimplicial_set(rng, N, 4)))) return "C(X) fails";
        return std::nullopt;
    }
    auto H = share(random_cosimplicial_gpd(rng, N, 3));
    auto T = enumerate_torsors(H);
    if (T.torsors.empty()) return "no torsor to translate";
    if (!lemma11_check(translation_cosimp_gpd(T.torsors.front()).groupoid)) return "translation groupoid fails";
    return std::nullopt;
}

inline std::optional<std::string> torsors_match_hdelta(Rng& rng) {
    auto H = share(random_cosimplicial_gpd(rng, rng.range(1, 3), 3));
    auto r = theorem12_check(H);
    if (!r.pass()) {
        std::ostringstream os;
        os << "fully faithful " << r.fully_faithful << ", essentially surjective " << r.essentially_surjective << ", functorial "
           << r.functorial << ", round trip " << r.round_trip;
        return os.str();
    }
    if (r.torsor_classes != r.hdelta_components) return "torsor classes differ from components";
    return std::nullopt;
}

inline std::optional<std::string> equivalence_induces_equivalence(Rng& rng) {
    int N = rng.range(1, 3);
    FinGroupoid gamma = random_small_groupoid(rng);
    auto Gamma = constant_cosimplicial_gpd(gamma, N);
    CosimpSetMap q;
    auto [X, Y] = random_cosimplicial_pair(rng, N, 3, &q);
    TruncCosimpSet source, target;
    CosimpSetMap inc;
    if (rng.coin()) {
        auto [S, i] = generated_subobject(Y, {{0, int(rng.below(Y.size(0)))}});
        source = S, target = Y, inc = i;
    } else {
        source = X, target = Y, inc = q;
    }
    auto CS = contractible_cosimplicial_gpd(source), CT = contractible_cosimplicial_gpd(target);
    auto G = product(Gamma, CS), H = product(Gamma, CT);
    CosimpGpdMap f;
    for (int n = 0; n <= N; ++n)
        f.push_back(product_functor(gamma, CS.level(n), CT.level(n), identity_functor_data(gamma),
                                    contractible_functor(inc[n], target.size(n))));
    if (auto bad = cosimp_gpd_map_violation(G, H, f)) return "generated map: " + *bad;
    for (int n = 0; n <= N; ++n)
        if (!is_equivalence(G.level(n), H.level(n), f[n])) return "generated map is not a levelwise equivalence";
    auto HG = h_delta(G), HH = h_delta(H);
    auto F = induced_hdelta_functor(G, H, f, HG, HH);
    if (auto bad = functor_violation(HG.groupoid, HH.groupoid, F)) return "induced functor: " + *bad;
    if (!is_equivalence(HG.groupoid, HH.groupoid, F)) return "induced functor is not an equivalence";
    return std::nullopt;
}

/// Homology of a random complex read off its pieces.
inline AbInvariants piece_homology(const std::vector<ChainPiece>& pieces, int m) {
    IntVector orders;
    for (const auto& p : pieces)
        if (p.degree == m && (p.mult == 0 || p.mult > 1)) orders.push_back(p.mult == 0 ? p.torsion : p.mult);
    return FGAbGroup::from_orders(orders).invariants();
}

inline std::optional<std::string> dold_kan_round_trip(Rng& rng) {
    int top = rng.range(0, 3), M = rng.range(std::max(top, 2), 4);
    auto R = random_chain_complex(rng, top, {0, 2, 3});
    auto G = gamma_dk(R.complex, M);
    auto unit = dk_unit(R.complex, M);
    if (auto bad = unit.map.violation(truncate_complex(R.complex, M), unit.normalized)) return "unit: " + *bad;
    for (const auto& c : unit.map.components)
        if (!is_isomorphism(c)) return "N(Gamma C) is not isomorphic to C";
    auto eps = dk_counit(G);
    if (auto bad = simp_ab_map_violation(eps.gamma, G, eps.map)) return "counit: " + *bad;
    for (const auto& c : eps.map.levels)
        if (!is_isomorphism(c)) return "Gamma(N A) is not isomorphic to A";
    int n = rng.range(0, M - 1);
    auto P = postnikov_section_ab(G, n);
    if (auto bad = simp_ab_map_violation(G, P.section, P.map)) return "section map: " + *bad;
    if (auto bad = postnikov_window_violation(G, P, n)) return *bad;
    for (int m = 0; m <= M - 1; ++m) {
        auto want = m <= n ? piece_homology(R.pieces, m) : AbInvariants{};
        if (homology(P.section, m) != want) return "H_" + std::to_string(m) + "(P_" + std::to_string(n) + ") is wrong";
    }
    return std::nullopt;
}

inline std::optional<std::string> k_invariant_sequence_exact(Rng& rng) {
    int n = rng.range(3, 4);
    auto R = random_two_stage_complex(rng, n, {0, 2, 3});
    auto r = k_invariant_chain(R.complex, n);
    if (r.failure) return *r.failure;
    if (!r.top_matches()) return "H_{n+1} of the target differs from H_n(P_n)";
    if (r.top_class != piece_homology(R.pieces, n)) return "H_{n+1} of the target is " + r.top_class.str();
    return std::nullopt;
}

struct SuiteDef {
    const char* name;
    const char* description;
    Case run;
};

inline const std::vector<SuiteDef>& registry() {
    static const std::vector<SuiteDef> defs{
        {"lemma1", "limit of a truncated cosimplicial set equals its maximal augmentation", limit_is_augmentation},
        {"lemma11", "h_delta of a levelwise contractible cosimplicial groupoid is its level 0", contractible_hdelta_is_level_zero},
        {"lemma15", "matching splitting j satisfies s o j = id", matching_splits},
        {"lemma18", "normalized subcomplexes have the cohomology of the Moore complex", normalization_preserves_cohomology},
        {"lemma19", "chain homotopy classes of cochain maps agree with the SNF count", homotopy_classes_match_brute_force},
        {"lemma22", "derived limits over Delta_{<=4} agree with cosimplicial cohomology", derived_limits_match_cohomology},
        {"cor14", "levelwise equivalences induce equivalences of h_delta", equivalence_induces_equivalence},
        {"cor16", "levelwise surjections of cosimplicial simplicial groups are fibrations", levelwise_surjection_is_fibration},
        {"theorem12", "torsor classes and h_delta are equivalent", torsors_match_hdelta},
        {"dold-kan", "Dold-Kan round trips and Postnikov homology windows", dold_kan_round_trip},
        {"remark25", "the k-invariant fibre sequence is exact on homology", k_invariant_sequence_exact},
    };
    return defs;
}

}  // namespace suites

inline std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (const auto& d : suites::registry()) out.push_back(d.name);
    return out;
}

inline bool has_suite(const std::string& name) {
    for (const auto& d : suites::registry())
        if (name == d.name) return true;
    return false;
}

inline SuiteReport run_suite(const std::string& name, std::uint64_t seed, std::size_t count) {
    for (const auto& d : suites::registry()) {
        if (name != d.name) continue;
        SuiteReport r{name, seed, count, {}};
        for (std::size_t i = 0; i < count; ++i) {
            CaseResult c{i, case_seed(seed, i), false, {}};
            Rng rng(c.seed);
            try {
                auto bad = d.run(rng);
                c.pass = !bad;
                if (bad) c.detail = *bad;
            } catch (const std::exception& e) {
                c.detail = std::string("exception: ") + e.what();
            }
            r.cases.push_back(std::move(c));
        }
        return r;
    }
    throw Error("unknown suite: " + name);
}

}  // namespace cosimplex
