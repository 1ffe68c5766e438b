#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cosimplex/cosimp_groupoid.hpp"

namespace cosimplex {

using CosimpGpdPtr = std::shared_ptr<const TruncCosimpGpd>;

/// H-diagram, internal form: a cosimplicial set over Ob(H) with an action of Mor(H).
struct HDiagram {
    CosimpGpdPtr base;
    TruncCosimpSet total;
    CosimpSetMap proj;
    /// act[n][alpha][x] = m(alpha, x), or -1 when src(alpha) != proj(x).
    std::vector<std::vector<IndexMap>> act;

    int trunc() const { return total.trunc(); }
};

inline bool same_base(const TruncCosimpGpd& G, const TruncCosimpGpd& H) {
    if (&G == &H) return true;
    if (G.trunc() != H.trunc()) return false;
    for (int n = 0; n <= G.trunc(); ++n) {
        const FinGroupoid &a = G.level(n), &b = H.level(n);
        if (a.object_labels() != b.object_labels() || a.morphism_labels() != b.morphism_labels() ||
            a.comp_table() != b.comp_table())
            return false;
    }
    return G.cofaces() == H.cofaces() && G.codegs() == H.codegs();
}

inline std::optional<std::string> hdiagram_violation(const HDiagram& X) {
    if (!X.base) return "diagram base";
    const TruncCosimpGpd& H = *X.base;
    const int N = H.trunc();
    if (X.total.trunc() != N) return "diagram truncation";
    if (auto bad = cosimplicial_map_violation(X.total, H.objects(), X.proj)) return "projection: " + *bad;
    if (int(X.act.size()) != N + 1) return "action table levels";
    for (int n = 0; n <= N; ++n) {
        const FinGroupoid& G = H.level(n);
        const auto& m = X.act[n];
        const auto& p = X.proj[n];
        const std::size_t sz = X.total.size(n);
        const std::string at = " at level " + std::to_string(n);
        if (m.size() != G.num_morphisms()) return "action table size" + at;
        for (std::size_t a = 0; a < m.size(); ++a) {
            if (m[a].size() != sz) return "action table size" + at;
            for (std::size_t x = 0; x < sz; ++x) {
                bool defined = G.src(int(a)) == p[x];
                if (defined != (m[a][x] >= 0)) return "action defined exactly where src(alpha) = proj(x)" + at;
                if (!defined) continue;
                if (m[a][x] >= int(sz)) return "action range" + at;
                if (p[m[a][x]] != G.tgt(int(a))) return "proj(m(alpha, x)) = tgt(alpha)" + at;
            }
        }
        for (std::size_t x = 0; x < sz; ++x)
            if (m[G.id(p[x])][x] != int(x)) return "identities act trivially" + at;
        for (std::size_t a = 0; a < m.size(); ++a)
            for (int b : G.hom_out(G.tgt(int(a))))
                for (std::size_t x = 0; x < sz; ++x)
                    if (m[a][x] >= 0 && m[G.comp(int(a), b)][x] != m[b][m[a][x]]) return "action respects composition" + at;
    }
    auto compatible = [&](int from, int to, const FunctorData& F, const IndexMap& f) {
        const FinGroupoid& G = H.level(from);
        for (std::size_t a = 0; a < G.num_morphisms(); ++a)
            for (std::size_t x = 0; x < X.total.size(from); ++x) {
                int y = X.act[from][a][x];
                if (y >= 0 && f[y] != X.act[to][F.mor[a]][f[x]]) return false;
            }
        return true;
    };
    for (int n = 1; n <= N; ++n)
        for (int i = 0; i <= n; ++i)
            if (!compatible(n - 1, n, H.coface(n, i), X.total.coface(n, i)))
                return "action commutes with d^" + std::to_string(i) + " at level " + std::to_string(n);
    for (int n = 0; n + 1 <= N; ++n)
        for (int i = 0; i <= n; ++i)
            if (!compatible(n + 1, n, H.codeg(n, i), X.total.codeg(n, i)))
                return "action commutes with s^" + std::to_string(i) + " at level " + std::to_string(n);
    return std::nullopt;
}

inline void validate(const HDiagram& X) {
    if (auto bad = hdiagram_violation(X)) throw ValidationError(*bad);
}

/// H-diagram, functorial form: per-level functors X^n: H^n -> Set with transitions
/// h_theta: X^m -> X^n o H(theta) for the elementary ordinal maps.
struct FunctorialHDiagram {
    CosimpGpdPtr base;
    std::vector<SetFunctor> levels;
    /// cofaces[n][i][j]: X^{n-1}(j) -> X^n(d^i j); codegs[n][i][j]: X^{n+1}(j) -> X^n(s^i j).
    std::vector<std::vector<std::vector<IndexMap>>> cofaces, codegs;
};

/// A transition h_theta together with H(theta).
struct Transition {
    FunctorData functor;
    std::vector<IndexMap> maps;
};

namespace detail {
struct TransitionOps {
    const FunctorialHDiagram* X;
    Transition face(int n, int i) const { return {X->base->coface(n, i), X->cofaces[n][i]}; }
    Transition codeg(int n, int i) const { return {X->base->codeg(n, i), X->codegs[n][i]}; }
    Transition id(int n) const {
        const SetFunctor& F = X->levels[n];
        Transition t{identity_functor_data(F.source()), {}};
        for (std::size_t j = 0; j < F.source().num_objects(); ++j) t.maps.push_back(identity_index(F.size(int(j))));
        return t;
    }
    Transition comp(const Transition& g, const Transition& f) const {
        Transition t{compose(g.functor, f.functor), {}};
        for (std::size_t j = 0; j < f.maps.size(); ++j) t.maps.push_back(compose_index(g.maps[f.functor.obj[j]], f.maps[j]));
        return t;
    }
    bool eq(const Transition& a, const Transition& b) const { return a.maps == b.maps; }
};
}  // namespace detail

inline Transition transition(const FunctorialHDiagram& X, const OrdinalMap& theta) {
    detail::TransitionOps ops{&X};
    return cosimplicial_operator(ops, theta);
}

inline std::optional<std::string> functorial_violation(const FunctorialHDiagram& X) {
    if (!X.base) return "diagram base";
    const TruncCosimpGpd& H = *X.base;
    const int N = H.trunc();
    if (int(X.levels.size()) != N + 1 || int(X.cofaces.size()) != N + 1 || int(X.codegs.size()) != N + 1)
        return "diagram truncation";
    for (int n = 0; n <= N; ++n)
        if (X.levels[n].source().num_objects() != H.level(n).num_objects() ||
            X.levels[n].source().num_morphisms() != H.level(n).num_morphisms())
            return "level functor source at level " + std::to_string(n);
    auto natural = [&](int from, int to, const FunctorData& F, const std::vector<IndexMap>& h) -> bool {
        const SetFunctor &A = X.levels[from], &B = X.levels[to];
        const FinGroupoid& G = H.level(from);
        if (h.size() != G.num_objects()) return false;
        for (std::size_t j = 0; j < G.num_objects(); ++j) {
            if (h[j].size() != A.size(int(j))) return false;
            for (int v : h[j])
                if (v < 0 || std::size_t(v) >= B.size(F.obj[j])) return false;
        }
        for (std::size_t a = 0; a < G.num_morphisms(); ++a) {
            int ai = int(a);
            for (std::size_t x = 0; x < A.size(G.src(ai)); ++x)
                if (h[G.tgt(ai)][A.act(ai, int(x))] != B.act(F.mor[a], h[G.src(ai)][x])) return false;
        }
        return true;
    };
    for (int n = 0; n <= N; ++n) {
        if (X.cofaces[n].size() != (n >= 1 ? std::size_t(n + 1) : 0) || X.codegs[n].size() != (n < N ? std::size_t(n + 1) : 0))
            return "transition counts at level " + std::to_string(n);
        for (std::size_t i = 0; i < X.cofaces[n].size(); ++i)
            if (!natural(n - 1, n, H.coface(n, int(i)), X.cofaces[n][i]))
                return "transition d^" + std::to_string(i) + " natural at level " + std::to_string(n);
        for (std::size_t i = 0; i < X.codegs[n].size(); ++i)
            if (!natural(n + 1, n, H.codeg(n, int(i)), X.codegs[n][i]))
                return "transition s^" + std::to_string(i) + " natural at level " + std::to_string(n);
    }
    detail::TransitionOps ops{&X};
    if (auto bad = first_cosimplicial_violation(ops, N)) return "transition pasting: " + *bad;
    return std::nullopt;
}

inline bool operator==(const FunctorialHDiagram& a, const FunctorialHDiagram& b) {
    if (a.levels.size() != b.levels.size()) return false;
    for (std::size_t n = 0; n < a.levels.size(); ++n)
        if (a.levels[n].sizes() != b.levels[n].sizes() || a.levels[n].actions() != b.levels[n].actions()) return false;
    return a.cofaces == b.cofaces && a.codegs == b.codegs;
}

namespace detail {
/// Elements of each fibre in increasing order, and the position of each element in its fibre.
struct FibreIndex {
    std::vector<std::vector<int>> elems;
    IndexMap pos;
};

inline FibreIndex fibre_index(const IndexMap& proj, std::size_t objects) {
    FibreIndex f{std::vector<std::vector<int>>(objects), IndexMap(proj.size())};
    for (std::size_t x = 0; x < proj.size(); ++x) {
        f.pos[x] = int(f.elems[proj[x]].size());
        f.elems[proj[x]].push_back(int(x));
    }
    return f;
}
}  // namespace detail

/// Internal form to functorial form: fibres X^n(i) = proj^{-1}(i), alpha acting by m.
inline FunctorialHDiagram to_functorial(const HDiagram& X) {
    validate(X);
    const TruncCosimpGpd& H = *X.base;
    const int N = H.trunc();
    std::vector<detail::FibreIndex> fi;
    for (int n = 0; n <= N; ++n) fi.push_back(detail::fibre_index(X.proj[n], H.level(n).num_objects()));
    FunctorialHDiagram F{X.base, {}, std::vector<std::vector<std::vector<IndexMap>>>(N + 1),
                         std::vector<std::vector<std::vector<IndexMap>>>(N + 1)};
    for (int n = 0; n <= N; ++n) {
        const FinGroupoid& G = H.level(n);
        std::vector<std::size_t> sizes;
        for (const auto& e : fi[n].elems) sizes.push_back(e.size());
        std::vector<IndexMap> actions;
        for (std::size_t a = 0; a < G.num_morphisms(); ++a) {
            IndexMap act;
            for (int x : fi[n].elems[G.src(int(a))]) act.push_back(fi[n].pos[X.act[n][a][x]]);
            actions.push_back(act);
        }
        F.levels.emplace_back(H.level_ptr(n), sizes, actions);
    }
    auto restrict_to_fibres = [&](int from, int to, const IndexMap& f) {
        std::vector<IndexMap> out;
        for (const auto& fibre : fi[from].elems) {
            IndexMap h;
            for (int x : fibre) h.push_back(fi[to].pos[f[x]]);
            out.push_back(h);
        }
        return out;
    };
    for (int n = 1; n <= N; ++n)
        for (int i = 0; i <= n; ++i) F.cofaces[n].push_back(restrict_to_fibres(n - 1, n, X.total.coface(n, i)));
    for (int n = 0; n + 1 <= N; ++n)
        for (int i = 0; i <= n; ++i) F.codegs[n].push_back(restrict_to_fibres(n + 1, n, X.total.codeg(n, i)));
    return F;
}

/// Functorial form to internal form; elements ordered by (object, position in fibre).
inline HDiagram to_internal(const FunctorialHDiagram& F) {
    if (auto bad = functorial_violation(F)) throw ValidationError(*bad);
    const TruncCosimpGpd& H = *F.base;
    const int N = H.trunc();
    std::vector<std::vector<std::size_t>> offset(N + 1);
    std::vector<std::vector<std::string>> labels(N + 1);
    CosimpSetMap proj(N + 1);
    for (int n = 0; n <= N; ++n) {
        const FinGroupoid& G = H.level(n);
        offset[n].assign(G.num_objects() + 1, 0);
        for (std::size_t j = 0; j < G.num_objects(); ++j) {
            offset[n][j + 1] = offset[n][j] + F.levels[n].size(int(j));
            for (std::size_t p = 0; p < F.levels[n].size(int(j)); ++p) {
                labels[n].push_back("(" + G.object_label(int(j)) + "," + std::to_string(p) + ")");
                proj[n].push_back(int(j));
            }
        }
    }
    auto glue = [&](int to, const FunctorData& Hf, const std::vector<IndexMap>& h) {
        IndexMap out;
        for (std::size_t j = 0; j < h.size(); ++j)
            for (int v : h[j]) out.push_back(int(offset[to][Hf.obj[j]] + v));
        return out;
    };
    std::vector<std::vector<IndexMap>> cf(N + 1), cd(N + 1);
    for (int n = 1; n <= N; ++n)
        for (int i = 0; i <= n; ++i) cf[n].push_back(glue(n, H.coface(n, i), F.cofaces[n][i]));
    for (int n = 0; n + 1 <= N; ++n)
        for (int i = 0; i <= n; ++i) cd[n].push_back(glue(n, H.codeg(n, i), F.codegs[n][i]));
    HDiagram X{F.base, TruncCosimpSet(labels, cf, cd), proj, std::vector<std::vector<IndexMap>>(N + 1)};
    for (int n = 0; n <= N; ++n) {
        const FinGroupoid& G = H.level(n);
        for (std::size_t a = 0; a < G.num_morphisms(); ++a) {
            int s = G.src(int(a)), t = G.tgt(int(a));
            IndexMap m(X.total.size(n), -1);
            for (std::size_t p = 0; p < F.levels[n].size(s); ++p)
                m[offset[n][s] + p] = int(offset[n][t] + F.levels[n].act(int(a), int(p)));
            X.act[n].push_back(m);
        }
    }
    validate(X);
    return X;
}

// ---------------------------------------------------------------------------
// Translation groupoids and homotopy colimits

/// E_H X: levelwise translation groupoids with the induced structure functors.
struct TranslationData {
    TruncCosimpGpd groupoid;
    CosimpGpdMap projection;
    /// object of E^n -> element of X^n
    std::vector<IndexMap> element_of_object;
};

inline TranslationData translation_cosimp_gpd(const HDiagram& X) {
    FunctorialHDiagram F = to_functorial(X);
    const TruncCosimpGpd& H = *X.base;
    const int N = H.trunc();
    std::vector<GroupoidPtr> levels;
    std::vector<std::vector<std::size_t>> obj_off(N + 1), mor_off(N + 1);
    TranslationData T;
    for (int n = 0; n <= N; ++n) {
        const FinGroupoid& G = H.level(n);
        const SetFunctor& S = F.levels[n];
        levels.push_back(std::make_shared<const FinGroupoid>(translation_groupoid(S)));
        obj_off[n].assign(G.num_objects() + 1, 0);
        for (std::size_t j = 0; j < G.num_objects(); ++j) obj_off[n][j + 1] = obj_off[n][j] + S.size(int(j));
        mor_off[n].assign(G.num_morphisms() + 1, 0);
        for (std::size_t a = 0; a < G.num_morphisms(); ++a) mor_off[n][a + 1] = mor_off[n][a] + S.size(G.src(int(a)));
        FunctorData p;
        for (std::size_t j = 0; j < G.num_objects(); ++j) p.obj.insert(p.obj.end(), S.size(int(j)), int(j));
        for (std::size_t a = 0; a < G.num_morphisms(); ++a) p.mor.insert(p.mor.end(), S.size(G.src(int(a))), int(a));
        T.projection.push_back(p);
        auto fi = detail::fibre_index(X.proj[n], G.num_objects());
        IndexMap elem;
        for (const auto& fibre : fi.elems) elem.insert(elem.end(), fibre.begin(), fibre.end());
        T.element_of_object.push_back(elem);
    }
    auto induced = [&](int from, int to, const FunctorData& Hf, const std::vector<IndexMap>& h) {
        const FinGroupoid& G = H.level(from);
        FunctorData E;
        for (std::size_t j = 0; j < G.num_objects(); ++j)
            for (int v : h[j]) E.obj.push_back(int(obj_off[to][Hf.obj[j]] + v));
        for (std::size_t a = 0; a < G.num_morphisms(); ++a)
            for (int v : h[G.src(int(a))]) E.mor.push_back(int(mor_off[to][Hf.mor[a]] + v));
        return E;
    };
    std::vector<std::vector<FunctorData>> cf(N + 1), cd(N + 1);
    for (int n = 1; n <= N; ++n)
        for (int i = 0; i <= n; ++i) cf[n].push_back(induced(n - 1, n, H.coface(n, i), F.cofaces[n][i]));
    for (int n = 0; n + 1 <= N; ++n)
        for (int i = 0; i <= n; ++i) cd[n].push_back(induced(n + 1, n, H.codeg(n, i), F.codegs[n][i]));
    T.groupoid = TruncCosimpGpd(levels, cf, cd);
    return T;
}

/// hocolim_H X as the levelwise nerve of E_H X, with its map to BH.
inline std::pair<TruncCosimpSpace, std::vector<SimplicialMap>> hocolim_diagram(const HDiagram& X, int M) {
    TranslationData T = translation_cosimp_gpd(X);
    return {classifying_space(T.groupoid, M), classifying_map(T.groupoid, *X.base, T.projection, M)};
}

/// Every level's translation groupoid is contractible.
inline bool is_torsor(const HDiagram& X) {
    validate(X);
    const TruncCosimpGpd& H = *X.base;
    for (int n = 0; n <= H.trunc(); ++n) {
        const FinGroupoid& G = H.level(n);
        const std::size_t sz = X.total.size(n);
        if (sz == 0) return false;
        for (std::size_t x = 0; x < sz; ++x) {
            std::vector<int> hits(sz, 0);
            for (int a : G.hom_out(X.proj[n][x])) ++hits[X.act[n][a][x]];
            for (int h : hits)
                if (h != 1) return false;
        }
    }
    return true;
}

/// All maps of H-diagrams X -> Y between torsors. Each is checked to be an isomorphism.
inline std::vector<CosimpSetMap> torsor_morphisms(const HDiagram& X, const HDiagram& Y) {
    if (!same_base(*X.base, *Y.base)) throw ShapeMismatch("torsor maps need a common base");
    if (!is_torsor(X) || !is_torsor(Y)) throw NotATorsor("torsor_morphisms expects torsors");
    const TruncCosimpGpd& H = *X.base;
    const int N = H.trunc();
    std::vector<CosimpSetMap> out;
    for (std::size_t y0 = 0; y0 < Y.total.size(0); ++y0) {
        if (Y.proj[0][y0] != X.proj[0][0]) continue;
        CosimpSetMap f(N + 1);
        for (int n = 0; n <= N; ++n) f[n].assign(X.total.size(n), -1);
        // a torsor is generated by any one element; propagate along the action
        auto extend = [&](int n, int z, int w) {
            for (int a : H.level(n).hom_out(X.proj[n][z])) f[n][X.act[n][a][z]] = Y.act[n][a][w];
        };
        extend(0, 0, int(y0));
        for (int n = 1; n <= N; ++n) {
            int z = X.total.coface(n, 0)[0];
            extend(n, z, Y.total.coface(n, 0)[f[n - 1][0]]);
        }
        bool ok = true;
        for (int n = 0; n <= N && ok; ++n)
            for (std::size_t x = 0; x < X.total.size(n) && ok; ++x) {
                ok = f[n][x] >= 0 && Y.proj[n][f[n][x]] == X.proj[n][x];
                for (int a : H.level(n).hom_out(X.proj[n][x]))
                    ok = ok && f[n][X.act[n][a][x]] == Y.act[n][a][f[n][x]];
            }
        if (!ok || cosimplicial_map_violation(X.total, Y.total, f)) continue;
        for (int n = 0; n <= N; ++n) {
            IndexMap s = f[n];
            std::sort(s.begin(), s.end());
            if (X.total.size(n) != Y.total.size(n) || std::adjacent_find(s.begin(), s.end()) != s.end())
                throw ValidationError("map of torsors is an isomorphism");
        }
        out.push_back(f);
    }
    return out;
}

/// Mor(H) over Ob(H) via the target, acted on by postcomposition: the coproduct of all representables.
inline HDiagram arrow_diagram(const CosimpGpdPtr& base) {
    const TruncCosimpGpd& H = *base;
    const int N = H.trunc();
    TruncCosimpSet M = H.morphisms();
    HDiagram X{base, M, CosimpSetMap(N + 1), std::vector<std::vector<IndexMap>>(N + 1)};
    for (int n = 0; n <= N; ++n) {
        const FinGroupoid& G = H.level(n);
        X.proj[n] = G.tgt_map();
        for (std::size_t a = 0; a < G.num_morphisms(); ++a) {
            IndexMap m(G.num_morphisms(), -1);
            for (std::size_t b = 0; b < G.num_morphisms(); ++b)
                if (G.tgt(int(b)) == G.src(int(a))) m[b] = G.comp(int(b), int(a));
            X.act[n].push_back(m);
        }
    }
    validate(X);
    return X;
}

/// X x Z for a cosimplicial set Z, with H acting on the first factor.
inline HDiagram diagram_product(const HDiagram& X, const TruncCosimpSet& Z) {
    const int N = X.trunc();
    if (Z.trunc() != N) throw ShapeMismatch("diagram_product truncations");
    auto pair = [&](int n, int x, int z) { return int(x * Z.size(n) + z); };
    std::vector<std::vector<std::string>> labels(N + 1);
    CosimpSetMap proj(N + 1);
    for (int n = 0; n <= N; ++n)
        for (std::size_t x = 0; x < X.total.size(n); ++x)
            for (std::size_t z = 0; z < Z.size(n); ++z) {
                labels[n].push_back("(" + X.total.labels(n)[x] + "," + Z.labels(n)[z] + ")");
                proj[n].push_back(X.proj[n][x]);
            }
    auto both = [&](int from, int to, const IndexMap& f, const IndexMap& g) {
        IndexMap out;
        for (std::size_t x = 0; x < X.total.size(from); ++x)
            for (std::size_t z = 0; z < Z.size(from); ++z) out.push_back(pair(to, f[x], g[z]));
        return out;
    };
    std::vector<std::vector<IndexMap>> cf(N + 1), cd(N + 1);
    for (int n = 1; n <= N; ++n)
        for (int i = 0; i <= n; ++i) cf[n].push_back(both(n - 1, n, X.total.coface(n, i), Z.coface(n, i)));
    for (int n = 0; n + 1 <= N; ++n)
        for (int i = 0; i <= n; ++i) cd[n].push_back(both(n + 1, n, X.total.codeg(n, i), Z.codeg(n, i)));
    HDiagram P{X.base, TruncCosimpSet(labels, cf, cd), proj, std::vector<std::vector<IndexMap>>(N + 1)};
    for (int n = 0; n <= N; ++n)
        for (const auto& m : X.act[n]) {
            IndexMap a;
            for (std::size_t x = 0; x < X.total.size(n); ++x)
                for (std::size_t z = 0; z < Z.size(n); ++z) a.push_back(m[x] < 0 ? -1 : pair(n, m[x], int(z)));
            P.act[n].push_back(a);
        }
    validate(P);
    return P;
}

// ---------------------------------------------------------------------------
// Enumeration

/// Representable diagram: X^n = Hom(v_n, -), transitions x -> g_theta then H(theta)(x).
/// g_face[n][i] in Hom_{H^n}(v_n, d^i v_{n-1}); g_codeg[n][i] in Hom_{H^n}(v_n, s^i v_{n+1}).
inline HDiagram representable_diagram(const CosimpGpdPtr& base, const std::vector<int>& v,
                                      const std::vector<std::vector<int>>& g_face,
                                      const std::vector<std::vector<int>>& g_codeg) {
    const TruncCosimpGpd& H = *base;
    const int N = H.trunc();
    std::vector<std::vector<int>> elems(N + 1);
    std::vector<IndexMap> index(N + 1);
    std::vector<std::vector<std::string>> labels(N + 1);
    CosimpSetMap proj(N + 1);
    for (int n = 0; n <= N; ++n) {
        const FinGroupoid& G = H.level(n);
        elems[n] = G.hom_out(v[n]);
        index[n].assign(G.num_morphisms(), -1);
        for (std::size_t k = 0; k < elems[n].size(); ++k) {
            index[n][elems[n][k]] = int(k);
            labels[n].push_back(G.morphism_label(elems[n][k]));
            proj[n].push_back(G.tgt(elems[n][k]));
        }
    }
    auto structure = [&](int from, int to, const FunctorData& F, int g) {
        IndexMap out;
        for (int b : elems[from]) out.push_back(index[to][H.level(to).comp(g, F.mor[b])]);
        return out;
    };
    std::vector<std::vector<IndexMap>> cf(N + 1), cd(N + 1);
    for (int n = 1; n <= N; ++n)
        for (int i = 0; i <= n; ++i) cf[n].push_back(structure(n - 1, n, H.coface(n, i), g_face[n][i]));
    for (int n = 0; n + 1 <= N; ++n)
        for (int i = 0; i <= n; ++i) cd[n].push_back(structure(n + 1, n, H.codeg(n, i), g_codeg[n][i]));
    HDiagram X{base, TruncCosimpSet(labels, cf, cd), proj, std::vector<std::vector<IndexMap>>(N + 1)};
    for (int n = 0; n <= N; ++n) {
        const FinGroupoid& G = H.level(n);
        for (std::size_t a = 0; a < G.num_morphisms(); ++a) {
            IndexMap m(elems[n].size(), -1);
            for (std::size_t k = 0; k < elems[n].size(); ++k)
                if (G.tgt(elems[n][k]) == G.src(int(a))) m[k] = index[n][G.comp(elems[n][k], int(a))];
            X.act[n].push_back(m);
        }
    }
    validate(X);
    return X;
}

struct TorsorEnumeration {
    std::vector<HDiagram> torsors;  // one per isomorphism class
    std::size_t candidates = 0;     // transition data satisfying every identity
    std::size_t nodes = 0;          // search nodes visited
};

namespace detail {
/// Calls visit(digits) for every tuple with digits[k] < radix[k]; visit returns false to stop.
template <class F>
bool odometer(const std::vector<std::size_t>& radix, F&& visit) {
    for (std::size_t r : radix)
        if (r == 0) return true;
    std::vector<std::size_t> d(radix.size(), 0);
    while (true) {
        if (!visit(d)) return false;
        std::size_t k = 0;
        while (k < d.size() && ++d[k] == radix[k]) d[k++] = 0;
        if (k == d.size()) return true;
    }
}

/// Yoneda data g_theta in Hom(v_n, H(theta) v_m) under pasting g_{gamma theta} = gamma(g_theta) o g_gamma.
struct YonedaArrow {
    int level;
    int g;
    FunctorData functor;
};

struct YonedaOps {
    const TruncCosimpGpd* H;
    const std::vector<int>* v;
    const std::vector<std::vector<int>>* g_face;
    const std::vector<std::vector<int>>* g_codeg;
    YonedaArrow face(int n, int i) const { return {n, (*g_face)[n][i], H->coface(n, i)}; }
    YonedaArrow codeg(int n, int i) const { return {n, (*g_codeg)[n][i], H->codeg(n, i)}; }
    YonedaArrow id(int n) const { return {n, H->level(n).id((*v)[n]), identity_functor_data(H->level(n))}; }
    YonedaArrow comp(const YonedaArrow& G, const YonedaArrow& F) const {
        return {G.level, H->level(G.level).comp(G.g, G.functor.mor[F.g]), compose(G.functor, F.functor)};
    }
    bool eq(const YonedaArrow& a, const YonedaArrow& b) const { return a.g == b.g; }
};

inline void add_if_new(std::vector<HDiagram>& reps, HDiagram X) {
    for (const auto& R : reps)
        if (!torsor_morphisms(R, X).empty()) return;
    reps.push_back(std::move(X));
}

/// One elementary structure map, applied as a step of a composite.
struct Step {
    bool face;
    int level;
    int index;
    int source() const { return face ? level - 1 : level + 1; }
};

/// lhs = rhs as composites applied left to right; an empty rhs is the identity of `level`.
struct CosimplicialLaw {
    std::vector<Step> lhs, rhs;
    int level;
};

/// The cosimplicial identities within truncation N, as in first_cosimplicial_violation.
inline std::vector<CosimplicialLaw> cosimplicial_laws(int N) {
    std::vector<CosimplicialLaw> out;
    for (int n = 1; n + 1 <= N; ++n)
        for (int j = 1; j <= n + 1; ++j)
            for (int i = 0; i < j; ++i)
                out.push_back({{{true, n, i}, {true, n + 1, j}}, {{true, n, j - 1}, {true, n + 1, i}}, n - 1});
    for (int n = 0; n + 2 <= N; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= j; ++i)
                out.push_back({{{false, n + 1, i}, {false, n, j}}, {{false, n + 1, j + 1}, {false, n, i}}, n + 2});
    for (int n = 0; n + 1 <= N; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n + 1; ++i) {
                CosimplicialLaw law{{{true, n + 1, i}, {false, n, j}}, {}, n};
                if (i < j)
                    law.rhs = {{false, n - 1, j - 1}, {true, n, i}};
                else if (i > j + 1)
                    law.rhs = {{false, n - 1, j}, {true, n, i - 1}};
                out.push_back(law);
            }
    return out;
}

/// Levelwise representable search. Isomorphism classes are unchanged by taking v_n least in its
/// component and g for d^0 into each level to be the first morphism of its hom-set (rescale level n
/// by an automorphism of v_n); identities are checked as soon as their slots are filled.
inline void representable_search(const CosimpGpdPtr& base, std::size_t cap, TorsorEnumeration& out) {
    const TruncCosimpGpd& H = *base;
    const int N = H.trunc();
    std::vector<int> v(N + 1, -1);
    std::vector<std::vector<int>> g_face(N + 1), g_codeg(N + 1);
    for (int n = 0; n <= N; ++n) {
        g_face[n].assign(n >= 1 ? n + 1 : 0, -1);
        g_codeg[n].assign(n + 1 <= N ? n + 1 : 0, -1);
    }
    // items: vertex n, then d^i into n, then s^i from n to n - 1
    struct Item {
        bool vertex;
        Step step;
    };
    std::vector<Item> items;
    for (int n = 0; n <= N; ++n) {
        items.push_back({true, {true, n, -1}});
        for (int i = 0; n >= 1 && i <= n; ++i) items.push_back({false, {true, n, i}});
        for (int i = 0; i + 1 <= n; ++i) items.push_back({false, {false, n - 1, i}});
    }
    auto position = [&](const Step& s) {
        for (std::size_t k = 0; k < items.size(); ++k)
            if (!items[k].vertex && items[k].step.face == s.face && items[k].step.level == s.level &&
                items[k].step.index == s.index)
                return k;
        throw Error("unknown structure map");
    };
    std::vector<std::vector<CosimplicialLaw>> trigger(items.size());
    for (const auto& law : cosimplicial_laws(N)) {
        std::size_t last = 0;
        for (const auto& s : law.lhs) last = std::max(last, position(s));
        for (const auto& s : law.rhs) last = std::max(last, position(s));
        trigger[last].push_back(law);
    }
    std::vector<std::vector<int>> roots(N + 1);
    for (int n = 0; n <= N; ++n) {
        IndexMap c = components(H.level(n));
        std::vector<char> seen(H.level(n).num_objects(), 0);
        for (std::size_t x = 0; x < c.size(); ++x)
            if (!seen[c[x]]) {
                seen[c[x]] = 1;
                roots[n].push_back(int(x));
            }
    }
    YonedaOps ops{&H, &v, &g_face, &g_codeg};
    auto arrow = [&](const Step& s) { return s.face ? ops.face(s.level, s.index) : ops.codeg(s.level, s.index); };
    auto evaluate = [&](const std::vector<Step>& path, int level) {
        YonedaArrow acc = ops.id(path.empty() ? level : path.front().source());
        for (const auto& s : path) acc = ops.comp(arrow(s), acc);
        return acc.g;
    };
    auto tick = [&] {
        if (++out.nodes > cap) throw CapExceeded("torsor search exceeded " + std::to_string(cap) + " nodes");
    };
    std::function<void(std::size_t)> fill = [&](std::size_t k) {
        if (k == items.size()) {
            ++out.candidates;
            add_if_new(out.torsors, representable_diagram(base, v, g_face, g_codeg));
            return;
        }
        const Item& it = items[k];
        const int n = it.step.level;
        if (it.vertex) {
            for (int r : roots[n]) {
                tick();
                v[n] = r;
                fill(k + 1);
            }
            return;
        }
        const std::vector<int>& choices =
            it.step.face ? H.level(n).hom(v[n], H.coface(n, it.step.index).obj[v[n - 1]])
                         : H.level(n).hom(v[n], H.codeg(n, it.step.index).obj[v[n + 1]]);
        int& slot = it.step.face ? g_face[n][it.step.index] : g_codeg[n][it.step.index];
        const std::size_t limit = it.step.face && it.step.index == 0 ? std::min<std::size_t>(1, choices.size()) : choices.size();
        for (std::size_t c = 0; c < limit; ++c) {
            tick();
            slot = choices[c];
            bool ok = true;
            for (const auto& law : trigger[k]) {
                ok = evaluate(law.lhs, law.level) == evaluate(law.rhs, law.level);
                if (!ok) break;
            }
            if (ok) fill(k + 1);
        }
        slot = -1;
    };
    fill(0);
}

/// All maps from->to, as IndexMaps.
inline std::vector<IndexMap> all_functions(std::size_t from, std::size_t to) {
    std::vector<IndexMap> out;
    odometer(std::vector<std::size_t>(from, to), [&](const std::vector<std::size_t>& d) {
        out.emplace_back(d.begin(), d.end());
        return true;
    });
    return out;
}

/// Set functors on G with total size <= bound whose translation groupoid is contractible.
inline std::vector<SetFunctor> torsor_levels(const GroupoidPtr& G, std::size_t bound, const std::function<void()>& tick) {
    std::vector<SetFunctor> out;
    const std::size_t k = G->num_objects();
    std::vector<std::size_t> sizes(k, 0);
    std::function<void(std::size_t, std::size_t)> choose_sizes = [&](std::size_t j, std::size_t used) {
        if (j == k) {
            if (used == 0) return;
            // each morphism acts by an arbitrary bijection; filtered by the functor laws
            std::vector<std::vector<IndexMap>> options;
            std::vector<std::size_t> radix;
            for (std::size_t a = 0; a < G->num_morphisms(); ++a) {
                std::size_t s = sizes[G->src(int(a))], t = sizes[G->tgt(int(a))];
                std::vector<IndexMap> bij;
                if (s == t) {
                    IndexMap p = identity_index(s);
                    do bij.push_back(p);
                    while (std::next_permutation(p.begin(), p.end()));
                }
                radix.push_back(bij.size());
                options.push_back(std::move(bij));
            }
            odometer(radix, [&](const std::vector<std::size_t>& d) {
                tick();
                std::vector<IndexMap> act;
                for (std::size_t a = 0; a < d.size(); ++a) act.push_back(options[a][d[a]]);
                try {
                    SetFunctor F(G, sizes, act);
                    if (is_contractible(translation_groupoid(F))) out.push_back(std::move(F));
                } catch (const ValidationError&) {
                }
                return true;
            });
            return;
        }
        for (std::size_t s = 0; used + s <= bound; ++s) {
            sizes[j] = s;
            choose_sizes(j + 1, used + s);
        }
    };
    choose_sizes(0, 0);
    return out;
}

/// Natural transformations A -> B o F.
inline std::vector<std::vector<IndexMap>> natural_maps(const SetFunctor& A, const SetFunctor& B, const FunctorData& F,
                                                       const std::function<void()>& tick) {
    const FinGroupoid& G = A.source();
    std::vector<std::vector<IndexMap>> per_object;
    std::vector<std::size_t> radix;
    for (std::size_t j = 0; j < G.num_objects(); ++j) {
        per_object.push_back(all_functions(A.size(int(j)), B.size(F.obj[j])));
        radix.push_back(per_object.back().size());
    }
    std::vector<std::vector<IndexMap>> out;
    odometer(radix, [&](const std::vector<std::size_t>& d) {
        tick();
        std::vector<IndexMap> h;
        for (std::size_t j = 0; j < d.size(); ++j) h.push_back(per_object[j][d[j]]);
        for (std::size_t a = 0; a < G.num_morphisms(); ++a) {
            int ai = int(a);
            for (std::size_t x = 0; x < A.size(G.src(ai)); ++x)
                if (h[G.tgt(ai)][A.act(ai, int(x))] != B.act(F.mor[a], h[G.src(ai)][x])) return true;
        }
        out.push_back(std::move(h));
        return true;
    });
    return out;
}

inline void general_search(const CosimpGpdPtr& base, std::size_t cap, TorsorEnumeration& out) {
    const TruncCosimpGpd& H = *base;
    const int N = H.trunc();
    auto tick = [&] {
        if (++out.nodes > cap) throw CapExceeded("torsor search exceeded " + std::to_string(cap) + " nodes");
    };
    std::vector<std::vector<SetFunctor>> candidates;
    for (int n = 0; n <= N; ++n) candidates.push_back(torsor_levels(H.level_ptr(n), H.level(n).num_morphisms(), tick));
    FunctorialHDiagram F{base, {}, std::vector<std::vector<std::vector<IndexMap>>>(N + 1),
                         std::vector<std::vector<std::vector<IndexMap>>>(N + 1)};
    std::function<void(int)> level = [&](int n) {
        for (const SetFunctor& Xn : candidates[n]) {
            F.levels.erase(F.levels.begin() + n, F.levels.end());
            F.levels.push_back(Xn);
            std::vector<std::vector<std::vector<IndexMap>>> options;
            std::vector<std::size_t> radix;
            for (int i = 0; n >= 1 && i <= n; ++i)
                options.push_back(natural_maps(F.levels[n - 1], Xn, H.coface(n, i), tick));
            for (int i = 0; i + 1 <= n; ++i) options.push_back(natural_maps(Xn, F.levels[n - 1], H.codeg(n - 1, i), tick));
            for (const auto& o : options) radix.push_back(o.size());
            F.cofaces[n].assign(n >= 1 ? n + 1 : 0, {});
            if (n >= 1) F.codegs[n - 1].assign(n, {});
            odometer(radix, [&](const std::vector<std::size_t>& d) {
                tick();
                std::size_t k = 0;
                for (int i = 0; n >= 1 && i <= n; ++i, ++k) F.cofaces[n][i] = options[k][d[k]];
                for (int i = 0; i + 1 <= n; ++i, ++k) F.codegs[n - 1][i] = options[k][d[k]];
                TransitionOps ops{&F};
                if (first_cosimplicial_violation(ops, n)) return true;
                if (n < N) {
                    level(n + 1);
                } else {
                    ++out.candidates;
                    add_if_new(out.torsors, to_internal(F));
                }
                return true;
            });
        }
    };
    level(0);
}
}  // namespace detail

/// Torsors over H up to isomorphism. The default search runs over levelwise
/// representable diagrams; `general` searches all levelwise torsor functors instead.
inline TorsorEnumeration enumerate_torsors(const CosimpGpdPtr& H, std::size_t cap = 1'000'000, bool general = false) {
    TorsorEnumeration out;
    if (general)
        detail::general_search(H, cap, out);
    else
        detail::representable_search(H, cap, out);
    return out;
}

}  // namespace cosimplex
