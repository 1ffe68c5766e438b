#pragma once

#include <tuple>
#include <vector>

#include "cosimplex/cosab.hpp"
#include "cosimplex/cosimp_groupoid.hpp"
#include "cosimplex/cosimplicial.hpp"
#include "cosimplex/postnikov.hpp"
#include "cosimplex/rng.hpp"

namespace cosimplex {

/// Random truncated cosimplicial set with every level of size <= max_size:
/// a coproduct of representables Hom([k], -) and constants, cut down by
/// random congruences.
inline std::pair<TruncCosimpSet, TruncCosimpSet> random_cosimplicial_pair(Rng& rng, int N, std::size_t max_size,
                                                                          CosimpSetMap* projection = nullptr) {
    TruncCosimpSet X;
    int parts = rng.range(1, 3);
    for (int p = 0; p < parts; ++p) {
        TruncCosimpSet part;
        switch (rng.below(3)) {
            case 0: part = representable_cosimplicial_set(0, N); break;
            case 1: part = representable_cosimplicial_set(1, N); break;
            default: {
                std::vector<std::string> pts;
                for (int k = rng.range(1, 2); k > 0; --k) pts.push_back("c" + std::to_string(k));
                part = constant_cosimplicial_set(pts, N);
            }
        }
        X = p == 0 ? part : coproduct(X, part);
    }
    auto biggest = [&](const TruncCosimpSet& Y) {
        int best = 0;
        for (int n = 0; n <= N; ++n)
            if (Y.size(n) > Y.size(best)) best = n;
        return best;
    };
    CosimpSetMap proj;
    for (int n = 0; n <= N; ++n) proj.push_back(identity_index(X.size(n)));
    TruncCosimpSet Y = X;
    auto merge = [&](int n) {
        int a = int(rng.below(Y.size(n)));
        int b = int(rng.below(Y.size(n)));
        auto [Q, q] = quotient_by_congruence(Y, {{n, a, b}});
        for (int m = 0; m <= N; ++m) proj[m] = compose_index(q[m], proj[m]);
        Y = Q;
    };
    while (Y.size(biggest(Y)) > max_size) merge(biggest(Y));
    if (rng.chance(1, 3)) merge(int(rng.below(std::size_t(N + 1))));
    if (projection) *projection = proj;
    return {X, Y};
}

inline TruncCosimpSet random_cosimplicial_set(Rng& rng, int N, std::size_t max_size) {
    return random_cosimplicial_pair(rng, N, max_size).second;
}

/// Random cosimplicial abelian group with at most max_rank generators per level:
/// Z/t[X] for a random X, sometimes plus a constant cyclic summand. Coefficients
/// t are drawn from `torsion` (0 meaning Z).
inline TruncCosimpAb random_cosimplicial_ab(Rng& rng, int N, std::size_t max_rank, const std::vector<int>& torsion) {
    bool split = max_rank >= 2 && rng.chance(1, 4);
    TruncCosimpAb A = free_cosimplicial_ab(random_cosimplicial_set(rng, N, split ? max_rank - 1 : max_rank), rng.pick(torsion));
    if (split) {
        int t = rng.pick(torsion);
        A = direct_sum(A, constant_cosimplicial_ab(t == 0 ? FGAbGroup::free(1) : FGAbGroup::cyclic(t), N));
    }
    return A;
}

/// One of a few small groupoids: trivial, Z/2, Z/3, two discrete points, two connected points.
inline FinGroupoid random_small_groupoid(Rng& rng) {
    switch (rng.below(5)) {
        case 0: return trivial_groupoid();
        case 1: return cyclic_groupoid(2);
        case 2: return cyclic_groupoid(3);
        case 3: return discrete_groupoid({"p", "q"});
        default: return contractible_groupoid({"p", "q"});
    }
}

/// Gamma x C(X): a constant groupoid times the contractible groupoid on a random cosimplicial set.
inline TruncCosimpGpd random_cosimplicial_gpd(Rng& rng, int N, std::size_t max_size) {
    return product(constant_cosimplicial_gpd(random_small_groupoid(rng), N),
                   contractible_cosimplicial_gpd(random_cosimplicial_set(rng, N, max_size)));
}

/// Building block of a random chain complex: Z/t in degree `degree` (t = 0 for Z) when
/// mult == 0, otherwise Z -mult-> Z from degree + 1 to degree.
struct ChainPiece {
    int degree = 0;
    int torsion = 0;
    int mult = 0;
};

struct RandomComplex {
    ChainComplex complex;
    std::vector<ChainPiece> pieces;
};

/// Direct sum of pieces, with every degree scrambled by a random unimodular change of basis.
inline RandomComplex complex_from_pieces(Rng& rng, const std::vector<ChainPiece>& pieces, int top) {
    std::vector<std::vector<int>> gens(top + 1);
    std::vector<std::vector<Int>> rel_orders(top + 1);
    std::vector<std::tuple<int, int, int, int>> arrows;  // degree, source gen, target gen, mult
    for (const auto& p : pieces) {
        if (p.mult == 0) {
            gens[p.degree].push_back(p.torsion);
        } else {
            gens[p.degree + 1].push_back(0);
            gens[p.degree].push_back(0);
            arrows.emplace_back(p.degree + 1, int(gens[p.degree + 1].size()) - 1, int(gens[p.degree].size()) - 1, p.mult);
        }
    }
    std::vector<Matrix> U, Uinv;
    std::vector<FGAbGroup> groups;
    for (int m = 0; m <= top; ++m) {
        const std::size_t g = gens[m].size();
        Matrix u = Matrix::identity(g), ui = Matrix::identity(g);
        for (int step = 0; g >= 2 && step < 6; ++step) {
            std::size_t i = rng.below(g), j = rng.below(g);
            if (i == j) continue;
            Int k = rng.range(-2, 2);
            u.add_row(i, j, k);
            ui.add_col(j, i, -k);
        }
        std::vector<IntVector> rels;
        for (std::size_t c = 0; c < g; ++c)
            if (gens[m][c] != 0) {
                IntVector r(g);
                r[c] = gens[m][c];
                rels.push_back(r);
            }
        groups.push_back(FGAbGroup(g, u * Matrix::from_columns(g, rels)));
        U.push_back(u);
        Uinv.push_back(ui);
    }
    std::vector<AbHom> bd;
    for (int m = 1; m <= top; ++m) {
        Matrix d(gens[m - 1].size(), gens[m].size());
        for (const auto& [deg, s, t, k] : arrows)
            if (deg == m) d(t, s) = k;
        bd.push_back(AbHom(groups[m], groups[m - 1], U[m - 1] * d * Uinv[m]));
    }
    return {ChainComplex(groups, bd), pieces};
}

/// Random complex in degrees 0..top with torsion drawn from `torsion`.
inline RandomComplex random_chain_complex(Rng& rng, int top, const std::vector<int>& torsion) {
    std::vector<ChainPiece> pieces;
    int count = rng.range(1, 4);
    for (int c = 0; c < count; ++c) {
        int deg = rng.range(0, top);
        if (deg < top && rng.coin()) pieces.push_back({deg, 0, rng.range(1, 3)});
        else pieces.push_back({deg, rng.pick(torsion), 0});
    }
    return complex_from_pieces(rng, pieces, top);
}

/// Homology only in degrees n - 1 and n (free or torsion), plus acyclic noise up to n + 1.
inline RandomComplex random_two_stage_complex(Rng& rng, int n, const std::vector<int>& torsion) {
    std::vector<ChainPiece> pieces;
    for (int d : {n - 1, n}) {
        int t = rng.pick(torsion);
        if (t == 0 || d == n) pieces.push_back({d, t, 0});
        else pieces.push_back({d, 0, t});
    }
    int noise = rng.range(0, 2);
    for (int c = 0; c < noise; ++c) pieces.push_back({rng.range(0, n), 0, 1});
    return complex_from_pieces(rng, pieces, n + 1);
}

}  // namespace cosimplex
