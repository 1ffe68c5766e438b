#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "cosimplex/torsors.hpp"

namespace cosimplex {

/// Object of H^Delta: a cosimplicial functor n -> H^n, determined by a in Ob H^0
/// and u: d^1 a -> d^0 a in H^1 (u = -1 when N = 0).
struct HDeltaObject {
    int a = -1;
    int u = -1;
    friend bool operator==(const HDeltaObject&, const HDeltaObject&) = default;
    friend auto operator<=>(const HDeltaObject&, const HDeltaObject&) = default;
};

/// Level n of such a functor: tau(i) and tau(i <= j) (mor[i][j], -1 below the diagonal).
struct OrdinalFunctor {
    IndexMap obj;
    std::vector<IndexMap> mor;
};

inline OrdinalFunctor ordinal_functor(const TruncCosimpGpd& H, const HDeltaObject& x, int n) {
    const FinGroupoid& G = H.level(n);
    OrdinalFunctor t{IndexMap(n + 1), std::vector<IndexMap>(n + 1, IndexMap(n + 1, -1))};
    for (int i = 0; i <= n; ++i) t.obj[i] = H.op(OrdinalMap{n, {i}}).obj[x.a];
    for (int i = 0; i <= n; ++i) {
        t.mor[i][i] = G.id(t.obj[i]);
        for (int j = i + 1; j <= n; ++j) t.mor[i][j] = H.op(OrdinalMap{n, {i, j}}).mor[x.u];
    }
    return t;
}

namespace detail {
/// H(theta) for every theta: [m] -> [n] within truncation.
struct OperatorTable {
    std::vector<std::pair<OrdinalMap, FunctorData>> ops;
    explicit OperatorTable(const TruncCosimpGpd& H) {
        for (int m = 0; m <= H.trunc(); ++m)
            for (int n = 0; n <= H.trunc(); ++n)
                for (const auto& theta : monotone_maps(m, n)) ops.emplace_back(theta, H.op(theta));
    }
};

inline bool is_cosimplicial_functor(const TruncCosimpGpd& H, const OperatorTable& T, const HDeltaObject& x) {
    const int N = H.trunc();
    std::vector<OrdinalFunctor> tau;
    for (int n = 0; n <= N; ++n) {
        const FinGroupoid& G = H.level(n);
        tau.push_back(ordinal_functor(H, x, n));
        const auto& t = tau.back();
        for (int i = 0; i <= n; ++i)
            for (int j = i; j <= n; ++j) {
                if (G.src(t.mor[i][j]) != t.obj[i] || G.tgt(t.mor[i][j]) != t.obj[j]) return false;
                for (int k = j; k <= n; ++k)
                    if (t.mor[i][k] != G.comp(t.mor[i][j], t.mor[j][k])) return false;
            }
    }
    for (const auto& [theta, F] : T.ops) {
        const int m = theta.dom(), n = theta.cod;
        for (int i = 0; i <= m; ++i) {
            if (F.obj[tau[m].obj[i]] != tau[n].obj[theta(i)]) return false;
            for (int j = i; j <= m; ++j)
                if (F.mor[tau[m].mor[i][j]] != tau[n].mor[theta(i)][theta(j)]) return false;
        }
    }
    return true;
}

/// g in H^0(x.a, y.a) induces a natural transformation tau_x -> tau_y.
inline bool is_cosimplicial_transformation(const TruncCosimpGpd& H, const OperatorTable& T, const HDeltaObject& x,
                                           const HDeltaObject& y, int g) {
    const int N = H.trunc();
    std::vector<IndexMap> eta(N + 1);
    for (int n = 0; n <= N; ++n) {
        const FinGroupoid& G = H.level(n);
        for (int i = 0; i <= n; ++i) eta[n].push_back(H.op(OrdinalMap{n, {i}}).mor[g]);
        auto tx = ordinal_functor(H, x, n), ty = ordinal_functor(H, y, n);
        for (int i = 0; i <= n; ++i) {
            if (G.src(eta[n][i]) != tx.obj[i] || G.tgt(eta[n][i]) != ty.obj[i]) return false;
            for (int j = i; j <= n; ++j)
                if (G.comp(tx.mor[i][j], eta[n][j]) != G.comp(eta[n][i], ty.mor[i][j])) return false;
        }
    }
    for (const auto& [theta, F] : T.ops)
        for (int i = 0; i <= theta.dom(); ++i)
            if (F.mor[eta[theta.dom()][i]] != eta[theta.cod][theta(i)]) return false;
    return true;
}
}  // namespace detail

/// The groupoid H^Delta at truncation N, with its objects and underlying H^0 morphisms.
struct HDelta {
    FinGroupoid groupoid;
    std::vector<HDeltaObject> objects;
    IndexMap base;  // morphism -> morphism of H^0

    std::optional<int> find(const HDeltaObject& x) const {
        auto it = std::lower_bound(objects.begin(), objects.end(), x);
        if (it == objects.end() || !(*it == x)) return std::nullopt;
        return int(it - objects.begin());
    }
    std::optional<int> find_morphism(int src, int tgt, int g) const {
        for (int f : groupoid.hom(src, tgt))
            if (base[f] == g) return f;
        return std::nullopt;
    }
};

inline HDelta h_delta(const TruncCosimpGpd& H, std::size_t cap = 1'000'000) {
    const int N = H.trunc();
    const FinGroupoid& G0 = H.level(0);
    const std::size_t search = G0.num_objects() * (N >= 1 ? H.level(1).num_morphisms() : 1);
    if (search > cap) throw CapExceeded("H^Delta search needs " + std::to_string(search) + " candidates");
    detail::OperatorTable T(H);
    HDelta out;
    for (std::size_t a = 0; a < G0.num_objects(); ++a) {
        if (N == 0) {
            out.objects.push_back({int(a), -1});
            continue;
        }
        const FinGroupoid& G1 = H.level(1);
        for (int u : G1.hom(H.coface(1, 1).obj[a], H.coface(1, 0).obj[a])) {
            HDeltaObject x{int(a), u};
            if (detail::is_cosimplicial_functor(H, T, x)) out.objects.push_back(x);
        }
    }
    std::sort(out.objects.begin(), out.objects.end());
    auto obj_label = [&](const HDeltaObject& x) {
        std::string s = "(" + G0.object_label(x.a);
        if (x.u >= 0) s += "," + H.level(1).morphism_label(x.u);
        return s + ")";
    };
    std::vector<std::string> objs, mors;
    IndexMap src, tgt, id(out.objects.size(), -1);
    std::map<std::tuple<int, int, int>, int> index;
    for (const auto& x : out.objects) objs.push_back(obj_label(x));
    for (std::size_t p = 0; p < out.objects.size(); ++p)
        for (std::size_t q = 0; q < out.objects.size(); ++q)
            for (int g : G0.hom(out.objects[p].a, out.objects[q].a)) {
                if (!detail::is_cosimplicial_transformation(H, T, out.objects[p], out.objects[q], g)) continue;
                index[{int(p), int(q), g}] = int(mors.size());
                mors.push_back(G0.morphism_label(g) + ":" + objs[p] + "->" + objs[q]);
                src.push_back(int(p));
                tgt.push_back(int(q));
                out.base.push_back(g);
                if (p == q && g == G0.id(out.objects[p].a)) id[p] = int(mors.size()) - 1;
            }
    FinCategory cat = FinCategory::build(objs, mors, src, tgt, id, [&](int f, int h) {
        return index.at({src[f], tgt[h], G0.comp(out.base[f], out.base[h])});
    });
    IndexMap inv(mors.size());
    for (std::size_t f = 0; f < mors.size(); ++f) inv[f] = index.at({tgt[f], src[f], G0.inv(out.base[f])});
    out.groupoid = FinGroupoid(std::move(cat), std::move(inv));
    return out;
}

/// Object and morphism counts of H^Delta at truncations N - 1 and N.
struct HDeltaStabilization {
    std::size_t objects_before = 0, morphisms_before = 0, objects = 0, morphisms = 0;
    bool stabilized = false;
};

inline HDeltaStabilization h_delta_stabilization(const TruncCosimpGpd& H, std::size_t cap = 1'000'000) {
    if (H.trunc() < 1) throw DegreeRangeError("stabilization needs N >= 1");
    HDelta a = h_delta(H.truncate(H.trunc() - 1), cap), b = h_delta(H, cap);
    HDeltaStabilization s{a.groupoid.num_objects(), a.groupoid.num_morphisms(), b.groupoid.num_objects(),
                          b.groupoid.num_morphisms(), false};
    s.stabilized = s.objects_before == s.objects && s.morphisms_before == s.morphisms;
    return s;
}

/// The functor h_delta(G) -> h_delta(H) induced by a map of cosimplicial groupoids.
inline FunctorData induced_hdelta_functor(const TruncCosimpGpd& G, const TruncCosimpGpd& H, const CosimpGpdMap& f,
                                          const HDelta& HG, const HDelta& HH) {
    if (auto bad = cosimp_gpd_map_violation(G, H, f)) throw ValidationError(*bad);
    FunctorData F;
    for (const auto& x : HG.objects) {
        auto y = HH.find({f[0].obj[x.a], x.u >= 0 ? f[1].mor[x.u] : -1});
        if (!y) throw ValidationError("image of a cosimplicial functor is cosimplicial");
        F.obj.push_back(*y);
    }
    for (std::size_t m = 0; m < HG.groupoid.num_morphisms(); ++m) {
        int s = HG.groupoid.src(int(m)), t = HG.groupoid.tgt(int(m));
        auto g = HH.find_morphism(F.obj[s], F.obj[t], f[0].mor[HG.base[m]]);
        if (!g) throw ValidationError("image of a natural transformation is natural");
        F.mor.push_back(*g);
    }
    return F;
}

inline void require_contractible_levels(const TruncCosimpGpd& U, const char* what) {
    for (int n = 0; n <= U.trunc(); ++n)
        if (!is_contractible(U.level(n)))
            throw HypothesisFailed(std::string(what) + ": level " + std::to_string(n) + " is not contractible");
}

/// For levelwise contractible U, builds h_delta(U) -> U^0, (a, u) -> a, and checks it is an isomorphism
/// whose objects are exactly the unique extensions of the objects of U^0.
inline bool lemma11_check(const TruncCosimpGpd& U) {
    require_contractible_levels(U, "lemma11_check");
    HDelta D = h_delta(U);
    const FinGroupoid& U0 = U.level(0);
    if (D.objects.size() != U0.num_objects()) return false;
    for (std::size_t a = 0; a < U0.num_objects(); ++a) {
        HDeltaObject x{int(a), -1};
        if (U.trunc() >= 1) x.u = U.level(1).hom(U.coface(1, 1).obj[a], U.coface(1, 0).obj[a]).at(0);
        if (!D.find(x)) return false;
    }
    FunctorData P;
    for (const auto& x : D.objects) P.obj.push_back(x.a);
    P.mor = D.base;
    if (functor_violation(D.groupoid, U0, P)) return false;
    auto bijective = [](IndexMap f, std::size_t n) {
        std::sort(f.begin(), f.end());
        return f == identity_index(n);
    };
    return bijective(P.obj, U0.num_objects()) && bijective(P.mor, U0.num_morphisms());
}

// ---------------------------------------------------------------------------
// Torsors and H^Delta

/// The object f x_E of H^Delta for E = E_H X, with x_E generated by the least object of E^0.
inline HDeltaObject torsor_to_hdelta(const HDiagram& X) {
    if (!is_torsor(X)) throw NotATorsor("torsor_to_hdelta expects a torsor");
    TranslationData T = translation_cosimp_gpd(X);
    HDeltaObject x{T.projection[0].obj[0], -1};
    if (X.trunc() >= 1) {
        const TruncCosimpGpd& E = T.groupoid;
        int uE = E.level(1).hom(E.coface(1, 1).obj[0], E.coface(1, 0).obj[0]).at(0);
        x.u = T.projection[1].mor[uE];
    }
    return x;
}

/// g_*: the underlying H^0 morphism of the image of a torsor map g: X -> Y.
inline int torsor_map_to_hdelta(const HDiagram& X, const HDiagram& Y, const CosimpSetMap& g) {
    if (!is_torsor(X) || !is_torsor(Y)) throw NotATorsor("torsor_map_to_hdelta expects torsors");
    int xX = translation_cosimp_gpd(X).element_of_object[0][0];
    int xY = translation_cosimp_gpd(Y).element_of_object[0][0];
    int y = g[0][xX];
    const FinGroupoid& G = X.base->level(0);
    for (int a : G.hom_out(Y.proj[0][y]))
        if (Y.act[0][a][y] == xY) return a;
    throw ValidationError("torsor map lands in the torsor");
}

/// Groupoid cocycle: levelwise contractible U with a map f: U -> H.
struct GroupoidCocycle {
    CosimpGpdPtr U;
    CosimpGpdMap f;
};

/// tau viewed as a cocycle on C(Ob Delta), extending i <= j to inverses for i > j.
inline GroupoidCocycle cocycle_from_hdelta(const TruncCosimpGpd& H, const HDeltaObject& x) {
    const int N = H.trunc();
    auto U = std::make_shared<const TruncCosimpGpd>(contractible_cosimplicial_gpd(delta_vertices(N)));
    GroupoidCocycle c{U, {}};
    for (int n = 0; n <= N; ++n) {
        auto t = ordinal_functor(H, x, n);
        FunctorData F{t.obj, {}};
        for (int a = 0; a <= n; ++a)
            for (int b = 0; b <= n; ++b) F.mor.push_back(a <= b ? t.mor[a][b] : H.level(n).inv(t.mor[b][a]));
        c.f.push_back(F);
    }
    if (auto bad = cosimp_gpd_map_violation(*U, H, c.f)) throw ValidationError("cocycle: " + *bad);
    return c;
}

/// X(n, x) = pi_0 of pairs (u in U^n, alpha: f(u) -> x). With U^n contractible each class has a
/// unique representative with u the least object, so X^n = Hom(f(u_0), -).
inline HDiagram pb_cocycle(const CosimpGpdPtr& H, const GroupoidCocycle& c) {
    const TruncCosimpGpd& U = *c.U;
    require_contractible_levels(U, "pb_cocycle");
    if (auto bad = cosimp_gpd_map_violation(U, *H, c.f)) throw ValidationError("cocycle: " + *bad);
    const int N = H->trunc();
    std::vector<int> v;
    for (int n = 0; n <= N; ++n) v.push_back(c.f[n].obj[0]);
    // g_theta = f(the morphism u_0 -> U(theta) u_0)
    auto g = [&](int n, const FunctorData& Utheta) { return c.f[n].mor[U.level(n).hom(0, Utheta.obj[0]).at(0)]; };
    std::vector<std::vector<int>> g_face(N + 1), g_codeg(N + 1);
    for (int n = 1; n <= N; ++n)
        for (int i = 0; i <= n; ++i) g_face[n].push_back(g(n, U.coface(n, i)));
    for (int n = 0; n + 1 <= N; ++n)
        for (int i = 0; i <= n; ++i) g_codeg[n].push_back(g(n, U.codeg(n, i)));
    HDiagram X = representable_diagram(H, v, g_face, g_codeg);
    if (!is_torsor(X)) throw ValidationError("pullback of a cocycle is a torsor");
    return X;
}

inline HDiagram pb_cocycle(const CosimpGpdPtr& H, const HDeltaObject& x) { return pb_cocycle(H, cocycle_from_hdelta(*H, x)); }

/// Exhaustive check that torsors -> H^Delta is an equivalence.
struct Theorem12Report {
    std::size_t torsor_classes = 0;
    std::size_t hdelta_objects = 0, hdelta_morphisms = 0, hdelta_components = 0;
    std::vector<std::size_t> torsor_automorphisms;  // per torsor class
    std::vector<std::size_t> hdelta_vertex_orders;  // per image object
    bool fully_faithful = false, essentially_surjective = false, functorial = false, round_trip = false;
    bool pass() const { return fully_faithful && essentially_surjective && functorial && round_trip; }
};

inline Theorem12Report theorem12_check(const CosimpGpdPtr& H, std::size_t cap = 1'000'000) {
    Theorem12Report r;
    TorsorEnumeration T = enumerate_torsors(H, cap);
    HDelta D = h_delta(*H, cap);
    r.torsor_classes = T.torsors.size();
    r.hdelta_objects = D.groupoid.num_objects();
    r.hdelta_morphisms = D.groupoid.num_morphisms();
    r.hdelta_components = count_components(D.groupoid);
    std::vector<int> image;
    for (const auto& X : T.torsors) {
        auto x = D.find(torsor_to_hdelta(X));
        if (!x) return r;
        image.push_back(*x);
        r.hdelta_vertex_orders.push_back(D.groupoid.hom(*x, *x).size());
    }
    r.fully_faithful = r.functorial = r.round_trip = true;
    for (std::size_t k = 0; k < T.torsors.size(); ++k) {
        for (std::size_t l = 0; l < T.torsors.size(); ++l) {
            auto maps = torsor_morphisms(T.torsors[k], T.torsors[l]);
            if (k == l) r.torsor_automorphisms.push_back(maps.size());
            std::vector<int> imgs;
            for (const auto& g : maps) {
                auto m = D.find_morphism(image[k], image[l], torsor_map_to_hdelta(T.torsors[k], T.torsors[l], g));
                if (!m) {
                    r.fully_faithful = false;
                    continue;
                }
                imgs.push_back(*m);
            }
            std::sort(imgs.begin(), imgs.end());
            if (std::adjacent_find(imgs.begin(), imgs.end()) != imgs.end() ||
                imgs.size() != D.groupoid.hom(image[k], image[l]).size() || imgs.size() != maps.size())
                r.fully_faithful = false;
            if (k != l) continue;
            const FinGroupoid& G0 = H->level(0);
            for (const auto& g : maps)
                for (const auto& h : maps) {
                    CosimpSetMap gh;
                    for (std::size_t n = 0; n < g.size(); ++n) gh.push_back(compose_index(h[n], g[n]));
                    int lhs = torsor_map_to_hdelta(T.torsors[k], T.torsors[k], gh);
                    int rhs = G0.comp(torsor_map_to_hdelta(T.torsors[k], T.torsors[k], g),
                                      torsor_map_to_hdelta(T.torsors[k], T.torsors[k], h));
                    if (lhs != rhs) r.functorial = false;
                }
        }
        HDiagram back = pb_cocycle(H, D.objects[image[k]]);
        if (torsor_morphisms(back, T.torsors[k]).empty()) r.round_trip = false;
    }
    IndexMap comp = components(D.groupoid);
    std::vector<char> hit(r.hdelta_components, 0);
    for (int x : image) hit[comp[x]] = 1;
    r.essentially_surjective = std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
    return r;
}

}  // namespace cosimplex
