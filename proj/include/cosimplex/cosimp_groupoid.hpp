#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "cosimplex/cosimplicial.hpp"
#include "cosimplex/groupoid.hpp"
#include "cosimplex/simplicial.hpp"

namespace cosimplex {

using GroupoidPtr = std::shared_ptr<const FinGroupoid>;

/// N-truncated cosimplicial groupoid with structure functors indexed as TruncCosimpSet.
class TruncCosimpGpd {
public:
    TruncCosimpGpd() = default;
    TruncCosimpGpd(std::vector<GroupoidPtr> levels, std::vector<std::vector<FunctorData>> cofaces,
                   std::vector<std::vector<FunctorData>> codegs)
        : levels_(std::move(levels)), cofaces_(std::move(cofaces)), codegs_(std::move(codegs)) {
        if (auto bad = violation()) throw ValidationError(*bad);
    }

    int trunc() const noexcept { return static_cast<int>(levels_.size()) - 1; }
    const FinGroupoid& level(int n) const { return *levels_.at(n); }
    const GroupoidPtr& level_ptr(int n) const { return levels_.at(n); }
    const std::vector<GroupoidPtr>& levels() const noexcept { return levels_; }
    const FunctorData& coface(int n, int i) const { return cofaces_.at(n).at(i); }
    const FunctorData& codeg(int n, int i) const { return codegs_.at(n).at(i); }
    const std::vector<std::vector<FunctorData>>& cofaces() const noexcept { return cofaces_; }
    const std::vector<std::vector<FunctorData>>& codegs() const noexcept { return codegs_; }

    FunctorData op(const OrdinalMap& theta) const {
        Ops ops{this};
        return cosimplicial_operator(ops, theta);
    }

    std::optional<std::string> violation() const {
        const int N = trunc();
        if (N < 0) return "at least one level";
        if (cofaces_.size() != levels_.size() || codegs_.size() != levels_.size()) return "coface/codegeneracy table sizes";
        for (int n = 0; n <= N; ++n) {
            std::size_t nf = n >= 1 ? std::size_t(n + 1) : 0;
            std::size_t nd = n + 1 <= N ? std::size_t(n + 1) : 0;
            if (cofaces_[n].size() != nf || codegs_[n].size() != nd)
                return "coface/codegeneracy counts at level " + std::to_string(n);
            for (std::size_t i = 0; i < nf; ++i)
                if (auto bad = functor_violation(*levels_[n - 1], *levels_[n], cofaces_[n][i]))
                    return "d^" + std::to_string(i) + " at level " + std::to_string(n) + ": " + *bad;
            for (std::size_t i = 0; i < nd; ++i)
                if (auto bad = functor_violation(*levels_[n + 1], *levels_[n], codegs_[n][i]))
                    return "s^" + std::to_string(i) + " at level " + std::to_string(n) + ": " + *bad;
        }
        Ops ops{this};
        return first_cosimplicial_violation(ops, N);
    }

    /// Ob(H) and Mor(H) as cosimplicial sets.
    TruncCosimpSet objects() const { return underlying(true); }
    TruncCosimpSet morphisms() const { return underlying(false); }

    /// The first k + 1 levels.
    TruncCosimpGpd truncate(int k) const {
        if (k < 0 || k > trunc()) throw DegreeRangeError("truncation outside range");
        std::vector<GroupoidPtr> lv(levels_.begin(), levels_.begin() + k + 1);
        std::vector<std::vector<FunctorData>> cf(cofaces_.begin(), cofaces_.begin() + k + 1);
        std::vector<std::vector<FunctorData>> cd(codegs_.begin(), codegs_.begin() + k + 1);
        cd[k].clear();
        return TruncCosimpGpd(lv, cf, cd);
    }

private:
    TruncCosimpSet underlying(bool obj) const {
        const int N = trunc();
        std::vector<std::vector<std::string>> labels;
        for (int n = 0; n <= N; ++n) labels.push_back(obj ? levels_[n]->object_labels() : levels_[n]->morphism_labels());
        std::vector<std::vector<IndexMap>> cf(N + 1), cd(N + 1);
        for (int n = 0; n <= N; ++n) {
            for (const auto& f : cofaces_[n]) cf[n].push_back(obj ? f.obj : f.mor);
            for (const auto& s : codegs_[n]) cd[n].push_back(obj ? s.obj : s.mor);
        }
        return TruncCosimpSet(labels, cf, cd);
    }

    struct Ops {
        const TruncCosimpGpd* H;
        FunctorData face(int n, int i) const { return H->coface(n, i); }
        FunctorData codeg(int n, int i) const { return H->codeg(n, i); }
        FunctorData id(int n) const { return identity_functor_data(H->level(n)); }
        FunctorData comp(const FunctorData& g, const FunctorData& f) const { return compose(g, f); }
        bool eq(const FunctorData& a, const FunctorData& b) const { return a == b; }
    };

    std::vector<GroupoidPtr> levels_;
    std::vector<std::vector<FunctorData>> cofaces_, codegs_;
};

/// Levelwise functors G^n -> H^n commuting with the structure functors.
using CosimpGpdMap = std::vector<FunctorData>;

inline std::optional<std::string> cosimp_gpd_map_violation(const TruncCosimpGpd& G, const TruncCosimpGpd& H,
                                                           const CosimpGpdMap& f) {
    if (G.trunc() != H.trunc() || int(f.size()) != G.trunc() + 1) return "map truncation";
    for (int n = 0; n <= G.trunc(); ++n)
        if (auto bad = functor_violation(G.level(n), H.level(n), f[n])) return "level " + std::to_string(n) + ": " + *bad;
    for (int n = 1; n <= G.trunc(); ++n)
        for (int i = 0; i <= n; ++i)
            if (compose(H.coface(n, i), f[n - 1]) != compose(f[n], G.coface(n, i)))
                return "map commutes with d^" + std::to_string(i) + " at level " + std::to_string(n);
    for (int n = 0; n + 1 <= G.trunc(); ++n)
        for (int i = 0; i <= n; ++i)
            if (compose(H.codeg(n, i), f[n + 1]) != compose(f[n], G.codeg(n, i)))
                return "map commutes with s^" + std::to_string(i) + " at level " + std::to_string(n);
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Constructions

inline TruncCosimpGpd constant_cosimplicial_gpd(const FinGroupoid& G, int N) {
    auto p = std::make_shared<const FinGroupoid>(G);
    FunctorData id = identity_functor_data(G);
    std::vector<std::vector<FunctorData>> cf(N + 1), cd(N + 1);
    for (int n = 0; n <= N; ++n) {
        if (n >= 1) cf[n].assign(n + 1, id);
        if (n + 1 <= N) cd[n].assign(n + 1, id);
    }
    return TruncCosimpGpd(std::vector<GroupoidPtr>(N + 1, p), cf, cd);
}

/// Functor between contractible groupoids induced by a map of object sets.
inline FunctorData contractible_functor(const IndexMap& f, std::size_t target_size) {
    FunctorData F{f, {}};
    const std::size_t k = f.size();
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) F.mor.push_back(static_cast<int>(f[a] * target_size + f[b]));
    return F;
}

/// C(X): the levelwise contractible groupoid on a cosimplicial set.
inline TruncCosimpGpd contractible_cosimplicial_gpd(const TruncCosimpSet& X) {
    const int N = X.trunc();
    std::vector<GroupoidPtr> levels;
    for (int n = 0; n <= N; ++n) levels.push_back(std::make_shared<const FinGroupoid>(contractible_groupoid(X.labels(n))));
    std::vector<std::vector<FunctorData>> cf(N + 1), cd(N + 1);
    for (int n = 1; n <= N; ++n)
        for (int i = 0; i <= n; ++i) cf[n].push_back(contractible_functor(X.coface(n, i), X.size(n)));
    for (int n = 0; n + 1 <= N; ++n)
        for (int i = 0; i <= n; ++i) cd[n].push_back(contractible_functor(X.codeg(n, i), X.size(n)));
    return TruncCosimpGpd(levels, cf, cd);
}

/// The levelwise discrete groupoid on a cosimplicial set.
inline TruncCosimpGpd discrete_cosimplicial_gpd(const TruncCosimpSet& X) {
    const int N = X.trunc();
    std::vector<GroupoidPtr> levels;
    for (int n = 0; n <= N; ++n) levels.push_back(std::make_shared<const FinGroupoid>(discrete_groupoid(X.labels(n))));
    std::vector<std::vector<FunctorData>> cf(N + 1), cd(N + 1);
    for (int n = 1; n <= N; ++n)
        for (const auto& f : X.cofaces()[n]) cf[n].push_back({f, f});
    for (int n = 0; n + 1 <= N; ++n)
        for (const auto& f : X.codegs()[n]) cd[n].push_back({f, f});
    return TruncCosimpGpd(levels, cf, cd);
}

/// Functor on products: (F x G)(a, b) = (F a, G b), indices as in product().
inline FunctorData product_functor(const FinGroupoid& A, const FinGroupoid& B, const FinGroupoid& B2,
                                   const FunctorData& F, const FunctorData& G) {
    FunctorData P;
    for (std::size_t x = 0; x < A.num_objects(); ++x)
        for (std::size_t y = 0; y < B.num_objects(); ++y)
            P.obj.push_back(static_cast<int>(F.obj[x] * B2.num_objects() + G.obj[y]));
    for (std::size_t f = 0; f < A.num_morphisms(); ++f)
        for (std::size_t g = 0; g < B.num_morphisms(); ++g)
            P.mor.push_back(static_cast<int>(F.mor[f] * B2.num_morphisms() + G.mor[g]));
    return P;
}

inline TruncCosimpGpd product(const TruncCosimpGpd& G, const TruncCosimpGpd& H) {
    if (G.trunc() != H.trunc()) throw ShapeMismatch("product of different truncations");
    const int N = G.trunc();
    std::vector<GroupoidPtr> levels;
    for (int n = 0; n <= N; ++n) levels.push_back(std::make_shared<const FinGroupoid>(product(G.level(n), H.level(n))));
    std::vector<std::vector<FunctorData>> cf(N + 1), cd(N + 1);
    for (int n = 1; n <= N; ++n)
        for (int i = 0; i <= n; ++i)
            cf[n].push_back(product_functor(G.level(n - 1), H.level(n - 1), H.level(n), G.coface(n, i), H.coface(n, i)));
    for (int n = 0; n + 1 <= N; ++n)
        for (int i = 0; i <= n; ++i)
            cd[n].push_back(product_functor(G.level(n + 1), H.level(n + 1), H.level(n), G.codeg(n, i), H.codeg(n, i)));
    return TruncCosimpGpd(levels, cf, cd);
}

/// Grothendieck construction over Delta_{<=N}: objects (n, x), morphisms (gamma, f) with
/// gamma : [n] -> [m] and f : gamma(x) -> y in H^m; (gamma, f) then (delta, g) is
/// (delta gamma, delta(f) then g).
inline FinCategory grothendieck(const TruncCosimpGpd& H, int N) {
    if (N < 0 || N > H.trunc()) throw DegreeRangeError("grothendieck: truncation exceeded");
    std::vector<std::string> objects;
    std::vector<int> first_object;
    for (int n = 0; n <= N; ++n) {
        first_object.push_back(static_cast<int>(objects.size()));
        for (std::size_t x = 0; x < H.level(n).num_objects(); ++x)
            objects.push_back("(" + std::to_string(n) + "," + H.level(n).object_label(int(x)) + ")");
    }
    struct Arrow {
        OrdinalMap gamma;
        int x;
        int f;
    };
    std::vector<Arrow> arrows;
    std::vector<std::string> labels;
    IndexMap src, tgt, identity(objects.size(), -1);
    std::map<std::tuple<OrdinalMap, int, int>, int> index;
    std::map<OrdinalMap, FunctorData> ops;
    auto op = [&](const OrdinalMap& g) -> const FunctorData& {
        auto it = ops.find(g);
        if (it == ops.end()) it = ops.emplace(g, H.op(g)).first;
        return it->second;
    };
    for (int n = 0; n <= N; ++n)
        for (int m = 0; m <= N; ++m)
            for (const auto& g : monotone_maps(n, m)) {
                const FunctorData& G = op(g);
                for (std::size_t x = 0; x < H.level(n).num_objects(); ++x)
                    for (int f : H.level(m).hom_out(G.obj[x])) {
                        int a = static_cast<int>(arrows.size());
                        index[{g, int(x), f}] = a;
                        arrows.push_back({g, int(x), f});
                        labels.push_back("(" + g.str() + "," + H.level(n).object_label(int(x)) + "," +
                                         H.level(m).morphism_label(f) + ")");
                        src.push_back(first_object[n] + int(x));
                        tgt.push_back(first_object[m] + H.level(m).tgt(f));
                        if (g.is_identity() && H.level(m).is_identity(f)) identity[first_object[n] + x] = a;
                    }
            }
    return FinCategory::build(objects, labels, src, tgt, identity, [&](int a, int b) {
        const auto& [gamma, x, f] = arrows[a];
        const auto& [delta, y, g] = arrows[b];
        const FinGroupoid& Hk = H.level(delta.cod);
        return index.at({compose(delta, gamma), x, Hk.comp(op(delta).mor[f], g)});
    });
}

/// Levelwise nerve at simplicial truncation M.
inline TruncCosimpSpace classifying_space(const TruncCosimpGpd& H, int M) {
    const int N = H.trunc();
    std::vector<TruncSimpSet> levels;
    for (int n = 0; n <= N; ++n) levels.push_back(nerve(H.level(n), M));
    std::vector<std::vector<SimplicialMap>> cf(N + 1), cd(N + 1);
    for (int n = 1; n <= N; ++n)
        for (int i = 0; i <= n; ++i) cf[n].push_back(nerve_map(H.level(n - 1), H.level(n), H.coface(n, i), M));
    for (int n = 0; n + 1 <= N; ++n)
        for (int i = 0; i <= n; ++i) cd[n].push_back(nerve_map(H.level(n + 1), H.level(n), H.codeg(n, i), M));
    return TruncCosimpSpace(levels, cf, cd);
}

/// Levelwise nerve of a map.
inline std::vector<SimplicialMap> classifying_map(const TruncCosimpGpd& G, const TruncCosimpGpd& H, const CosimpGpdMap& f,
                                                  int M) {
    std::vector<SimplicialMap> out;
    for (int n = 0; n <= G.trunc(); ++n) out.push_back(nerve_map(G.level(n), H.level(n), f[n], M));
    return out;
}

}  // namespace cosimplex
