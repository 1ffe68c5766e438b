#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cosimplex/error.hpp"
#include "cosimplex/ordinal.hpp"

namespace cosimplex {

/// Finite category with a dense composition table. comp(f, g) is "f then g",
/// i.e. g o f, defined exactly when tgt(f) == src(g).
class FinCategory {
public:
    FinCategory() = default;

    FinCategory(std::vector<std::string> objects, std::vector<std::string> morphisms, IndexMap src,
                IndexMap tgt, IndexMap identity, std::vector<int> comp_table)
        : objects_(std::move(objects)),
          morphisms_(std::move(morphisms)),
          src_(std::move(src)),
          tgt_(std::move(tgt)),
          id_(std::move(identity)),
          comp_(std::move(comp_table)) {
        index();
        if (auto bad = category_violation()) throw ValidationError(*bad);
    }

    /// Build with the composition supplied as a function on composable pairs.
    template <class Comp>
    static FinCategory build(std::vector<std::string> objects, std::vector<std::string> morphisms,
                             IndexMap src, IndexMap tgt, IndexMap identity, Comp&& comp) {
        const std::size_t m = morphisms.size();
        std::vector<int> table(m * m, -1);
        for (std::size_t f = 0; f < m; ++f)
            for (std::size_t g = 0; g < m; ++g)
                if (tgt[f] == src[g]) table[f * m + g] = comp(static_cast<int>(f), static_cast<int>(g));
        return FinCategory(std::move(objects), std::move(morphisms), std::move(src), std::move(tgt),
                           std::move(identity), std::move(table));
    }

    std::size_t num_objects() const noexcept { return objects_.size(); }
    std::size_t num_morphisms() const noexcept { return morphisms_.size(); }
    const std::vector<std::string>& object_labels() const noexcept { return objects_; }
    const std::vector<std::string>& morphism_labels() const noexcept { return morphisms_; }
    const std::string& object_label(int x) const { return objects_.at(x); }
    const std::string& morphism_label(int f) const { return morphisms_.at(f); }

    int src(int f) const { return src_[f]; }
    int tgt(int f) const { return tgt_[f]; }
    int id(int x) const { return id_[x]; }
    const IndexMap& src_map() const noexcept { return src_; }
    const IndexMap& tgt_map() const noexcept { return tgt_; }
    const IndexMap& id_map() const noexcept { return id_; }

    /// f then g
    int comp(int f, int g) const {
        int h = comp_[static_cast<std::size_t>(f) * morphisms_.size() + g];
        if (h < 0) throw ShapeMismatch("composition of non-composable morphisms " + morphisms_[f] + ", " + morphisms_[g]);
        return h;
    }
    const std::vector<int>& comp_table() const noexcept { return comp_; }

    /// Morphisms with source x.
    const std::vector<int>& hom_out(int x) const { return out_[x]; }
    const std::vector<int>& hom(int x, int y) const { return hom_[static_cast<std::size_t>(x) * objects_.size() + y]; }

    std::optional<int> find_object(const std::string& label) const {
        auto it = obj_index_.find(label);
        if (it == obj_index_.end()) return std::nullopt;
        return it->second;
    }
    std::optional<int> find_morphism(const std::string& label) const {
        auto it = mor_index_.find(label);
        if (it == mor_index_.end()) return std::nullopt;
        return it->second;
    }

    bool is_identity(int f) const { return id_[src_[f]] == f; }

protected:
    std::optional<std::string> category_violation() const {
        const std::size_t k = objects_.size(), m = morphisms_.size();
        if (src_.size() != m || tgt_.size() != m || id_.size() != k || comp_.size() != m * m)
            return "table sizes";
        for (std::size_t f = 0; f < m; ++f)
            if (src_[f] < 0 || src_[f] >= static_cast<int>(k) || tgt_[f] < 0 || tgt_[f] >= static_cast<int>(k))
                return "src/tgt in range (" + morphisms_[f] + ")";
        for (std::size_t x = 0; x < k; ++x)
            if (id_[x] < 0 || id_[x] >= static_cast<int>(m) || src_[id_[x]] != static_cast<int>(x) ||
                tgt_[id_[x]] != static_cast<int>(x))
                return "identity is an endomorphism (" + objects_[x] + ")";
        for (std::size_t f = 0; f < m; ++f)
            for (std::size_t g = 0; g < m; ++g) {
                int h = comp_[f * m + g];
                bool composable = tgt_[f] == src_[g];
                if (composable != (h >= 0)) return "composition defined exactly on composable pairs";
                if (!composable) continue;
                if (h >= static_cast<int>(m) || src_[h] != src_[f] || tgt_[h] != tgt_[g])
                    return "composite has the right endpoints (" + morphisms_[f] + ", " + morphisms_[g] + ")";
            }
        for (std::size_t f = 0; f < m; ++f) {
            if (comp_[static_cast<std::size_t>(id_[src_[f]]) * m + f] != static_cast<int>(f) ||
                comp_[f * m + id_[tgt_[f]]] != static_cast<int>(f))
                return "identity law (" + morphisms_[f] + ")";
        }
        for (std::size_t f = 0; f < m; ++f)
            for (int g : hom_out(tgt_[f]))
                for (int h : hom_out(tgt_[g])) {
                    int left = comp_[static_cast<std::size_t>(comp_[f * m + g]) * m + h];
                    int right = comp_[f * m + comp_[static_cast<std::size_t>(g) * m + h]];
                    if (left != right)
                        return "associativity (" + morphisms_[f] + ", " + morphisms_[g] + ", " + morphisms_[h] + ")";
                }
        return std::nullopt;
    }

private:
    void index() {
        const std::size_t k = objects_.size();
        if (src_.size() != morphisms_.size() || tgt_.size() != morphisms_.size() || id_.size() != k ||
            comp_.size() != morphisms_.size() * morphisms_.size())
            throw ValidationError("category table sizes");
        hom_.assign(k * k, {});
        out_.assign(k, {});
        for (std::size_t f = 0; f < morphisms_.size(); ++f) {
            if (src_[f] < 0 || tgt_[f] < 0 || src_[f] >= static_cast<int>(k) || tgt_[f] >= static_cast<int>(k))
                throw ValidationError("src/tgt in range", morphisms_[f]);
            hom_[static_cast<std::size_t>(src_[f]) * k + tgt_[f]].push_back(static_cast<int>(f));
            out_[src_[f]].push_back(static_cast<int>(f));
        }
        for (std::size_t x = 0; x < k; ++x)
            if (!obj_index_.emplace(objects_[x], static_cast<int>(x)).second)
                throw ValidationError("distinct object labels", objects_[x]);
        for (std::size_t f = 0; f < morphisms_.size(); ++f)
            if (!mor_index_.emplace(morphisms_[f], static_cast<int>(f)).second)
                throw ValidationError("distinct morphism labels", morphisms_[f]);
    }

    std::vector<std::string> objects_, morphisms_;
    IndexMap src_, tgt_, id_;
    std::vector<int> comp_;
    std::vector<std::vector<int>> hom_, out_;
    std::map<std::string, int> obj_index_, mor_index_;
};

/// Finite groupoid: a finite category with an inverse table.
class FinGroupoid : public FinCategory {
public:
    FinGroupoid() = default;
    FinGroupoid(FinCategory cat, IndexMap inverse) : FinCategory(std::move(cat)), inv_(std::move(inverse)) {
        if (inv_.size() != num_morphisms()) throw ValidationError("inverse table size");
        for (std::size_t f = 0; f < num_morphisms(); ++f) {
            int g = inv_[f];
            int fi = static_cast<int>(f);
            if (g < 0 || g >= static_cast<int>(num_morphisms()) || src(g) != tgt(fi) || tgt(g) != src(fi))
                throw ValidationError("inverse has swapped endpoints", morphism_label(fi));
            if (comp(fi, g) != id(src(fi)) || comp(g, fi) != id(tgt(fi)))
                throw ValidationError("two-sided inverse", morphism_label(fi));
            if (inv_[g] != fi) throw ValidationError("inv(inv(f)) = f", morphism_label(fi));
        }
    }

    /// Groupoid from a category, deducing inverses; fails if some morphism is not invertible.
    static FinGroupoid from_category(FinCategory cat) {
        IndexMap inv(cat.num_morphisms(), -1);
        for (std::size_t f = 0; f < cat.num_morphisms(); ++f) {
            int fi = static_cast<int>(f);
            for (int g : cat.hom(cat.tgt(fi), cat.src(fi)))
                if (cat.comp(fi, g) == cat.id(cat.src(fi)) && cat.comp(g, fi) == cat.id(cat.tgt(fi))) {
                    inv[f] = g;
                    break;
                }
            if (inv[f] < 0) throw ValidationError("every morphism is invertible", cat.morphism_label(fi));
        }
        return FinGroupoid(std::move(cat), std::move(inv));
    }

    int inv(int f) const { return inv_[f]; }
    const IndexMap& inv_map() const noexcept { return inv_; }

private:
    IndexMap inv_;
};

/// Object and morphism maps of a functor (unvalidated data).
struct FunctorData {
    IndexMap obj, mor;
    friend bool operator==(const FunctorData&, const FunctorData&) = default;
};

inline FunctorData compose(const FunctorData& g, const FunctorData& f) {
    return {compose_index(g.obj, f.obj), compose_index(g.mor, f.mor)};
}

inline FunctorData identity_functor_data(const FinCategory& c) {
    return {identity_index(c.num_objects()), identity_index(c.num_morphisms())};
}

/// First functor law violated by F: s -> t, if any.
inline std::optional<std::string> functor_violation(const FinCategory& s, const FinCategory& t, const FunctorData& F) {
    if (F.obj.size() != s.num_objects() || F.mor.size() != s.num_morphisms()) return "functor table sizes";
    for (int x : F.obj)
        if (x < 0 || x >= static_cast<int>(t.num_objects())) return "object image in range";
    for (int f : F.mor)
        if (f < 0 || f >= static_cast<int>(t.num_morphisms())) return "morphism image in range";
    for (std::size_t f = 0; f < s.num_morphisms(); ++f) {
        int fi = static_cast<int>(f);
        if (t.src(F.mor[f]) != F.obj[s.src(fi)] || t.tgt(F.mor[f]) != F.obj[s.tgt(fi)])
            return "functor preserves src/tgt (" + s.morphism_label(fi) + ")";
    }
    for (std::size_t x = 0; x < s.num_objects(); ++x)
        if (F.mor[s.id(static_cast<int>(x))] != t.id(F.obj[x]))
            return "functor preserves identities (" + s.object_label(static_cast<int>(x)) + ")";
    for (std::size_t f = 0; f < s.num_morphisms(); ++f) {
        int fi = static_cast<int>(f);
        for (std::size_t y = 0; y < s.num_objects(); ++y)
            for (int g : s.hom(s.tgt(fi), static_cast<int>(y)))
                if (F.mor[s.comp(fi, g)] != t.comp(F.mor[f], F.mor[g]))
                    return "functor preserves composition (" + s.morphism_label(fi) + ", " + s.morphism_label(g) + ")";
    }
    return std::nullopt;
}

/// Validated functor between finite groupoids.
class GpdFunctor {
public:
    GpdFunctor(std::shared_ptr<const FinGroupoid> source, std::shared_ptr<const FinGroupoid> target, FunctorData data)
        : source_(std::move(source)), target_(std::move(target)), data_(std::move(data)) {
        if (auto bad = functor_violation(*source_, *target_, data_)) throw ValidationError(*bad);
    }

    const FinGroupoid& source() const { return *source_; }
    const FinGroupoid& target() const { return *target_; }
    std::shared_ptr<const FinGroupoid> source_ptr() const { return source_; }
    std::shared_ptr<const FinGroupoid> target_ptr() const { return target_; }
    const FunctorData& data() const noexcept { return data_; }
    int obj(int x) const { return data_.obj[x]; }
    int mor(int f) const { return data_.mor[f]; }

private:
    std::shared_ptr<const FinGroupoid> source_, target_;
    FunctorData data_;
};

/// Covariant functor G -> Set on a finite groupoid. Elements of value(x) are 0..size-1.
class SetFunctor {
public:
    SetFunctor(std::shared_ptr<const FinGroupoid> source, std::vector<std::size_t> sizes, std::vector<IndexMap> action)
        : source_(std::move(source)), sizes_(std::move(sizes)), action_(std::move(action)) {
        const FinGroupoid& G = *source_;
        if (sizes_.size() != G.num_objects() || action_.size() != G.num_morphisms())
            throw ValidationError("set functor table sizes");
        for (std::size_t f = 0; f < G.num_morphisms(); ++f) {
            int fi = static_cast<int>(f);
            const IndexMap& a = action_[f];
            if (a.size() != sizes_[G.src(fi)]) throw ValidationError("action defined on the source fibre", G.morphism_label(fi));
            std::vector<char> hit(sizes_[G.tgt(fi)], 0);
            for (int v : a) {
                if (v < 0 || v >= static_cast<int>(hit.size()) || hit[v])
                    throw ValidationError("action is a bijection", G.morphism_label(fi));
                hit[v] = 1;
            }
            if (a.size() != hit.size()) throw ValidationError("action is a bijection", G.morphism_label(fi));
        }
        for (std::size_t x = 0; x < G.num_objects(); ++x)
            if (action_[G.id(static_cast<int>(x))] != identity_index(sizes_[x]))
                throw ValidationError("action preserves identities", G.object_label(static_cast<int>(x)));
        for (std::size_t f = 0; f < G.num_morphisms(); ++f) {
            int fi = static_cast<int>(f);
            for (std::size_t y = 0; y < G.num_objects(); ++y)
                for (int g : G.hom(G.tgt(fi), static_cast<int>(y)))
                    if (action_[G.comp(fi, g)] != compose_index(action_[g], action_[f]))
                        throw ValidationError("action preserves composition",
                                              G.morphism_label(fi) + ", " + G.morphism_label(g));
        }
    }

    const FinGroupoid& source() const { return *source_; }
    std::shared_ptr<const FinGroupoid> source_ptr() const { return source_; }
    std::size_t size(int x) const { return sizes_[x]; }
    const std::vector<std::size_t>& sizes() const noexcept { return sizes_; }
    const IndexMap& action(int f) const { return action_[f]; }
    const std::vector<IndexMap>& actions() const noexcept { return action_; }
    int act(int f, int x) const { return action_[f][x]; }

private:
    std::shared_ptr<const FinGroupoid> source_;
    std::vector<std::size_t> sizes_;
    std::vector<IndexMap> action_;
};

// ---------------------------------------------------------------------------
// Standard groupoids

/// Groupoid with one object and the given group law table (table[a][b] = a then b).
inline FinGroupoid group_groupoid(const std::vector<std::vector<int>>& table, std::vector<std::string> labels = {},
                                  int identity = 0) {
    const std::size_t n = table.size();
    if (labels.empty())
        for (std::size_t a = 0; a < n; ++a) labels.push_back("g" + std::to_string(a));
    FinCategory cat = FinCategory::build({"*"}, labels, IndexMap(n, 0), IndexMap(n, 0), {identity},
                                         [&](int f, int g) { return table[f][g]; });
    return FinGroupoid::from_category(std::move(cat));
}

/// One object with automorphism group Z/n.
inline FinGroupoid cyclic_groupoid(int n) {
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
    return group_groupoid(table);
}

/// Exactly one morphism between any two objects.
inline FinGroupoid contractible_groupoid(const std::vector<std::string>& objects) {
    const std::size_t k = objects.size();
    std::vector<std::string> names;
    IndexMap src, tgt, id(k);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
            names.push_back(objects[a] + "->" + objects[b]);
            src.push_back(static_cast<int>(a));
            tgt.push_back(static_cast<int>(b));
            if (a == b) id[a] = static_cast<int>(a * k + b);
        }
    FinCategory cat = FinCategory::build(objects, names, src, tgt, id, [&](int f, int g) {
        return static_cast<int>(src[f] * k + tgt[g]);
    });
    IndexMap inv(k * k);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) inv[a * k + b] = static_cast<int>(b * k + a);
    return FinGroupoid(std::move(cat), std::move(inv));
}

inline FinGroupoid discrete_groupoid(const std::vector<std::string>& objects) {
    const std::size_t k = objects.size();
    std::vector<std::string> names;
    for (const auto& o : objects) names.push_back("1_" + o);
    IndexMap idx = identity_index(k);
    FinCategory cat = FinCategory::build(objects, names, idx, idx, idx, [](int f, int) { return f; });
    return FinGroupoid(std::move(cat), idx);
}

inline FinGroupoid trivial_groupoid() { return discrete_groupoid({"*"}); }

inline FinGroupoid empty_groupoid() { return discrete_groupoid({}); }

inline FinGroupoid product(const FinGroupoid& A, const FinGroupoid& B) {
    const std::size_t ka = A.num_objects(), kb = B.num_objects();
    const std::size_t ma = A.num_morphisms(), mb = B.num_morphisms();
    std::vector<std::string> objs, mors;
    IndexMap src, tgt, id(ka * kb), inv(ma * mb);
    for (std::size_t x = 0; x < ka; ++x)
        for (std::size_t y = 0; y < kb; ++y) objs.push_back("(" + A.object_label(int(x)) + "," + B.object_label(int(y)) + ")");
    for (std::size_t f = 0; f < ma; ++f)
        for (std::size_t g = 0; g < mb; ++g) {
            mors.push_back("(" + A.morphism_label(int(f)) + "," + B.morphism_label(int(g)) + ")");
            src.push_back(static_cast<int>(A.src(int(f)) * kb + B.src(int(g))));
            tgt.push_back(static_cast<int>(A.tgt(int(f)) * kb + B.tgt(int(g))));
            inv[f * mb + g] = static_cast<int>(A.inv(int(f)) * mb + B.inv(int(g)));
        }
    for (std::size_t x = 0; x < ka; ++x)
        for (std::size_t y = 0; y < kb; ++y) id[x * kb + y] = static_cast<int>(A.id(int(x)) * mb + B.id(int(y)));
    FinCategory cat = FinCategory::build(objs, mors, src, tgt, id, [&](int p, int q) {
        return static_cast<int>(A.comp(p / int(mb), q / int(mb)) * mb + B.comp(p % int(mb), q % int(mb)));
    });
    return FinGroupoid(std::move(cat), std::move(inv));
}

// ---------------------------------------------------------------------------
// Invariants

/// Connected component index per object.
inline IndexMap components(const FinCategory& G) {
    const std::size_t k = G.num_objects();
    IndexMap parent = identity_index(k);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (std::size_t f = 0; f < G.num_morphisms(); ++f) {
        int a = find(G.src(int(f))), b = find(G.tgt(int(f)));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    IndexMap label(k, -1), out(k);
    int next = 0;
    for (std::size_t x = 0; x < k; ++x) {
        int r = find(int(x));
        if (label[r] < 0) label[r] = next++;
        out[x] = label[r];
    }
    return out;
}

inline std::size_t count_components(const FinCategory& G) {
    IndexMap c = components(G);
    return c.empty() ? 0 : static_cast<std::size_t>(*std::max_element(c.begin(), c.end()) + 1);
}

/// Nonempty, connected and with trivial vertex groups.
inline bool is_contractible(const FinGroupoid& G) {
    const std::size_t k = G.num_objects();
    if (k == 0) return false;
    for (std::size_t x = 0; x < k; ++x)
        for (std::size_t y = 0; y < k; ++y)
            if (G.hom(int(x), int(y)).size() != 1) return false;
    return true;
}

/// Fully faithful and essentially surjective, checked exhaustively.
inline bool is_equivalence(const FinGroupoid& S, const FinGroupoid& T, const FunctorData& F) {
    for (std::size_t x = 0; x < S.num_objects(); ++x)
        for (std::size_t y = 0; y < S.num_objects(); ++y) {
            const auto& hs = S.hom(int(x), int(y));
            const auto& ht = T.hom(F.obj[x], F.obj[y]);
            if (hs.size() != ht.size()) return false;
            std::vector<int> img;
            for (int f : hs) img.push_back(F.mor[f]);
            std::sort(img.begin(), img.end());
            if (std::adjacent_find(img.begin(), img.end()) != img.end()) return false;
        }
    for (std::size_t y = 0; y < T.num_objects(); ++y) {
        bool reached = false;
        for (std::size_t x = 0; x < S.num_objects() && !reached; ++x)
            reached = !T.hom(F.obj[x], int(y)).empty();
        if (!reached) return false;
    }
    return true;
}

inline bool is_equivalence(const GpdFunctor& F) { return is_equivalence(F.source(), F.target(), F.data()); }

/// Translation groupoid of a set-valued functor: objects (i, x), morphisms (alpha, x).
inline FinGroupoid translation_groupoid(const SetFunctor& F) {
    const FinGroupoid& G = F.source();
    std::vector<std::size_t> obj_offset(G.num_objects() + 1, 0);
    for (std::size_t i = 0; i < G.num_objects(); ++i) obj_offset[i + 1] = obj_offset[i] + F.size(int(i));
    std::vector<std::size_t> mor_offset(G.num_morphisms() + 1, 0);
    for (std::size_t a = 0; a < G.num_morphisms(); ++a) mor_offset[a + 1] = mor_offset[a] + F.size(G.src(int(a)));

    std::vector<std::string> objs, mors;
    IndexMap src, tgt, id(obj_offset.back()), inv(mor_offset.back());
    std::vector<int> mor_base(mor_offset.back()), mor_elem(mor_offset.back());
    for (std::size_t i = 0; i < G.num_objects(); ++i)
        for (std::size_t x = 0; x < F.size(int(i)); ++x)
            objs.push_back("(" + G.object_label(int(i)) + "," + std::to_string(x) + ")");
    for (std::size_t a = 0; a < G.num_morphisms(); ++a) {
        int ai = int(a);
        for (std::size_t x = 0; x < F.size(G.src(ai)); ++x) {
            mors.push_back("(" + G.morphism_label(ai) + "," + std::to_string(x) + ")");
            src.push_back(static_cast<int>(obj_offset[G.src(ai)] + x));
            tgt.push_back(static_cast<int>(obj_offset[G.tgt(ai)] + F.act(ai, int(x))));
            std::size_t idx = mor_offset[a] + x;
            mor_base[idx] = ai;
            mor_elem[idx] = int(x);
        }
    }
    auto mor_index = [&](int a, int x) { return static_cast<int>(mor_offset[a] + x); };
    for (std::size_t i = 0; i < G.num_objects(); ++i)
        for (std::size_t x = 0; x < F.size(int(i)); ++x) id[obj_offset[i] + x] = mor_index(G.id(int(i)), int(x));
    for (std::size_t p = 0; p < mor_base.size(); ++p)
        inv[p] = mor_index(G.inv(mor_base[p]), F.act(mor_base[p], mor_elem[p]));
    FinCategory cat = FinCategory::build(objs, mors, src, tgt, id, [&](int p, int q) {
        return mor_index(G.comp(mor_base[p], mor_base[q]), mor_elem[p]);
    });
    return FinGroupoid(std::move(cat), std::move(inv));
}

/// Comma groupoid G/x: objects are morphisms y -> x, morphisms are commuting triangles.
inline std::pair<FinGroupoid, FunctorData> comma_to_object(const FinGroupoid& G, int x) {
    if (x < 0 || x >= static_cast<int>(G.num_objects())) throw Error("comma_to_object: missing object");
    std::vector<int> into;  // objects of G/x as morphisms of G
    for (std::size_t f = 0; f < G.num_morphisms(); ++f)
        if (G.tgt(int(f)) == x) into.push_back(int(f));
    const std::size_t k = into.size();
    std::vector<std::string> objs, mors;
    IndexMap src, tgt, id(k);
    std::vector<int> base;  // underlying morphism of G
    std::map<std::pair<int, int>, int> index_of;
    for (int f : into) objs.push_back(G.morphism_label(f));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
            // the unique h with h then into[b] = into[a]
            int h = G.comp(into[a], G.inv(into[b]));
            index_of[{int(a), int(b)}] = static_cast<int>(mors.size());
            mors.push_back(G.morphism_label(h) + ":" + objs[a] + "->" + objs[b]);
            src.push_back(int(a));
            tgt.push_back(int(b));
            base.push_back(h);
            if (a == b) id[a] = static_cast<int>(mors.size() - 1);
        }
    FinCategory cat = FinCategory::build(objs, mors, src, tgt, id,
                                         [&](int p, int q) { return index_of.at({src[p], tgt[q]}); });
    IndexMap inv(mors.size());
    for (std::size_t p = 0; p < mors.size(); ++p) inv[p] = index_of.at({tgt[p], src[p]});
    FunctorData proj;
    for (int f : into) proj.obj.push_back(G.src(f));
    proj.mor = base;
    return {FinGroupoid(std::move(cat), std::move(inv)), std::move(proj)};
}

}  // namespace cosimplex
