#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cosimplex/abelian.hpp"
#include "cosimplex/groupoid.hpp"
#include "cosimplex/ordinal.hpp"

namespace cosimplex {

/// M-truncated simplicial set. face(m, i): X_m -> X_{m-1} for 1 <= m <= M,
/// degen(m, i): X_m -> X_{m+1} for m + 1 <= M, with 0 <= i <= m.
class TruncSimpSet {
public:
    TruncSimpSet() = default;
    TruncSimpSet(std::vector<std::vector<std::string>> levels, std::vector<std::vector<IndexMap>> faces,
                 std::vector<std::vector<IndexMap>> degens)
        : levels_(std::move(levels)), faces_(std::move(faces)), degens_(std::move(degens)) {
        if (auto bad = violation()) throw ValidationError(*bad);
    }

    int trunc() const noexcept { return static_cast<int>(levels_.size()) - 1; }
    std::size_t size(int m) const { return levels_.at(m).size(); }
    const std::vector<std::string>& labels(int m) const { return levels_.at(m); }
    const std::vector<std::vector<std::string>>& all_labels() const noexcept { return levels_; }
    const IndexMap& face(int m, int i) const { return faces_.at(m).at(i); }
    const IndexMap& degen(int m, int i) const { return degens_.at(m).at(i); }
    const std::vector<std::vector<IndexMap>>& faces() const noexcept { return faces_; }
    const std::vector<std::vector<IndexMap>>& degens() const noexcept { return degens_; }

    /// theta^* : X_n -> X_m for theta : [m] -> [n].
    IndexMap op(const OrdinalMap& theta) const {
        Ops ops{this};
        return simplicial_operator(ops, theta);
    }
    int apply(const OrdinalMap& theta, int x) const { return op(theta)[x]; }

    /// x is degenerate iff x = s_i d_i x for some i.
    bool is_degenerate(int m, int x) const {
        if (m == 0) return false;
        for (int i = 0; i < m; ++i)
            if (degen(m - 1, i)[face(m, i)[x]] == x) return true;
        return false;
    }

    std::vector<int> nondegenerate(int m) const {
        std::vector<int> out;
        for (std::size_t x = 0; x < size(m); ++x)
            if (!is_degenerate(m, int(x))) out.push_back(int(x));
        return out;
    }

    std::optional<std::string> violation() const {
        const int M = trunc();
        if (M < 0) return "at least one level";
        if (faces_.size() != levels_.size() || degens_.size() != levels_.size()) return "face/degeneracy table sizes";
        for (int m = 0; m <= M; ++m) {
            std::size_t nf = m >= 1 ? std::size_t(m + 1) : 0;
            std::size_t nd = m + 1 <= M ? std::size_t(m + 1) : 0;
            if (faces_[m].size() != nf || degens_[m].size() != nd) return "face/degeneracy counts at level " + std::to_string(m);
            for (const auto& f : faces_[m])
                if (!map_ok(f, size(m), size(m - 1))) return "face map shape at level " + std::to_string(m);
            for (const auto& s : degens_[m])
                if (!map_ok(s, size(m), size(m + 1))) return "degeneracy map shape at level " + std::to_string(m);
        }
        Ops ops{this};
        return first_simplicial_violation(ops, M);
    }

private:
    static bool map_ok(const IndexMap& f, std::size_t from, std::size_t to) {
        if (f.size() != from) return false;
        for (int v : f)
            if (v < 0 || static_cast<std::size_t>(v) >= to) return false;
        return true;
    }

    struct Ops {
        const TruncSimpSet* X;
        IndexMap face(int m, int i) const { return X->face(m, i); }
        IndexMap degen(int m, int i) const { return X->degen(m, i); }
        IndexMap id(int m) const { return identity_index(X->size(m)); }
        IndexMap comp(const IndexMap& g, const IndexMap& f) const { return compose_index(g, f); }
        bool eq(const IndexMap& a, const IndexMap& b) const { return a == b; }
    };

    std::vector<std::vector<std::string>> levels_;
    std::vector<std::vector<IndexMap>> faces_, degens_;
};

/// Levelwise maps f_m : X_m -> Y_m.
struct SimplicialMap {
    std::vector<IndexMap> levels;
    friend bool operator==(const SimplicialMap&, const SimplicialMap&) = default;
};

inline SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f) {
    SimplicialMap h;
    for (std::size_t m = 0; m < f.levels.size(); ++m) h.levels.push_back(compose_index(g.levels[m], f.levels[m]));
    return h;
}

inline SimplicialMap identity_map(const TruncSimpSet& X) {
    SimplicialMap h;
    for (int m = 0; m <= X.trunc(); ++m) h.levels.push_back(identity_index(X.size(m)));
    return h;
}

inline std::optional<std::string> simplicial_map_violation(const TruncSimpSet& X, const TruncSimpSet& Y,
                                                          const SimplicialMap& f) {
    if (X.trunc() != Y.trunc() || static_cast<int>(f.levels.size()) != X.trunc() + 1)
        return "simplicial map truncation";
    for (int m = 0; m <= X.trunc(); ++m) {
        if (f.levels[m].size() != X.size(m)) return "simplicial map shape at level " + std::to_string(m);
        for (int v : f.levels[m])
            if (v < 0 || static_cast<std::size_t>(v) >= Y.size(m)) return "simplicial map range at level " + std::to_string(m);
    }
    for (int m = 1; m <= X.trunc(); ++m)
        for (int i = 0; i <= m; ++i)
            if (compose_index(Y.face(m, i), f.levels[m]) != compose_index(f.levels[m - 1], X.face(m, i)))
                return "map commutes with d_" + std::to_string(i) + " at level " + std::to_string(m);
    for (int m = 0; m + 1 <= X.trunc(); ++m)
        for (int i = 0; i <= m; ++i)
            if (compose_index(Y.degen(m, i), f.levels[m]) != compose_index(f.levels[m + 1], X.degen(m, i)))
                return "map commutes with s_" + std::to_string(i) + " at level " + std::to_string(m);
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Constructions

inline std::string ordinal_label(const OrdinalMap& t) {
    std::string s;
    for (int v : t.values) s += std::to_string(v);
    return s;
}

/// Delta^k: level m = monotone maps [m] -> [k], structure maps by precomposition.
inline TruncSimpSet standard_simplex(int k, int M) {
    std::vector<std::vector<OrdinalMap>> simp(M + 1);
    std::vector<std::map<OrdinalMap, int>> index(M + 1);
    std::vector<std::vector<std::string>> labels(M + 1);
    for (int m = 0; m <= M; ++m) {
        simp[m] = monotone_maps(m, k);
        for (std::size_t x = 0; x < simp[m].size(); ++x) {
            index[m][simp[m][x]] = int(x);
            labels[m].push_back(ordinal_label(simp[m][x]));
        }
    }
    std::vector<std::vector<IndexMap>> faces(M + 1), degens(M + 1);
    for (int m = 0; m <= M; ++m) {
        if (m >= 1)
            for (int i = 0; i <= m; ++i) {
                IndexMap f;
                for (const auto& t : simp[m]) f.push_back(index[m - 1].at(compose(t, coface_map(m, i))));
                faces[m].push_back(f);
            }
        if (m + 1 <= M)
            for (int i = 0; i <= m; ++i) {
                IndexMap s;
                for (const auto& t : simp[m]) s.push_back(index[m + 1].at(compose(t, codegeneracy_map(m, i))));
                degens[m].push_back(s);
            }
    }
    return TruncSimpSet(labels, faces, degens);
}

/// Constant simplicial set on a finite set.
inline TruncSimpSet discrete_simplicial_set(const std::vector<std::string>& points, int M) {
    std::vector<std::vector<std::string>> labels(M + 1, points);
    std::vector<std::vector<IndexMap>> faces(M + 1), degens(M + 1);
    IndexMap id = identity_index(points.size());
    for (int m = 0; m <= M; ++m) {
        if (m >= 1) faces[m].assign(m + 1, id);
        if (m + 1 <= M) degens[m].assign(m + 1, id);
    }
    return TruncSimpSet(labels, faces, degens);
}

/// Sub-simplicial set given by membership flags per level (must be closed).
inline std::pair<TruncSimpSet, SimplicialMap> restrict_to(const TruncSimpSet& X, const std::vector<std::vector<char>>& keep) {
    const int M = X.trunc();
    std::vector<IndexMap> old_to_new(M + 1);
    SimplicialMap incl;
    std::vector<std::vector<std::string>> labels(M + 1);
    for (int m = 0; m <= M; ++m) {
        old_to_new[m].assign(X.size(m), -1);
        incl.levels.emplace_back();
        for (std::size_t x = 0; x < X.size(m); ++x)
            if (keep[m][x]) {
                old_to_new[m][x] = int(labels[m].size());
                labels[m].push_back(X.labels(m)[x]);
                incl.levels[m].push_back(int(x));
            }
    }
    auto restrict_map = [&](const IndexMap& f, int from, int to) {
        IndexMap g;
        for (int x : incl.levels[from]) {
            int y = old_to_new[to][f[x]];
            if (y < 0) throw ValidationError("subobject closed under structure maps");
            g.push_back(y);
        }
        return g;
    };
    std::vector<std::vector<IndexMap>> faces(M + 1), degens(M + 1);
    for (int m = 0; m <= M; ++m) {
        if (m >= 1)
            for (int i = 0; i <= m; ++i) faces[m].push_back(restrict_map(X.face(m, i), m, m - 1));
        if (m + 1 <= M)
            for (int i = 0; i <= m; ++i) degens[m].push_back(restrict_map(X.degen(m, i), m, m + 1));
    }
    return {TruncSimpSet(labels, faces, degens), incl};
}

/// Smallest sub-simplicial set containing the given simplices (level, index).
inline std::pair<TruncSimpSet, SimplicialMap> generated_subset(const TruncSimpSet& X,
                                                               const std::vector<std::pair<int, int>>& seeds) {
    const int M = X.trunc();
    std::vector<std::vector<char>> keep(M + 1);
    for (int m = 0; m <= M; ++m) keep[m].assign(X.size(m), 0);
    std::deque<std::pair<int, int>> todo(seeds.begin(), seeds.end());
    while (!todo.empty()) {
        auto [m, x] = todo.front();
        todo.pop_front();
        if (keep[m][x]) continue;
        keep[m][x] = 1;
        if (m >= 1)
            for (int i = 0; i <= m; ++i) todo.push_back({m - 1, X.face(m, i)[x]});
        if (m + 1 <= M)
            for (int i = 0; i <= m; ++i) todo.push_back({m + 1, X.degen(m, i)[x]});
    }
    return restrict_to(X, keep);
}

/// sk_n X: generated by the simplices of dimension <= n.
inline TruncSimpSet skeleton(const TruncSimpSet& X, int n) {
    if (n < 0 || n > X.trunc()) throw DegreeRangeError("skeleton dimension outside truncation");
    std::vector<std::pair<int, int>> seeds;
    for (int m = 0; m <= n; ++m)
        for (std::size_t x = 0; x < X.size(m); ++x) seeds.push_back({m, int(x)});
    return generated_subset(X, seeds).first;
}

/// Boundary of Delta^k, as its (k-1)-skeleton.
inline TruncSimpSet boundary_simplex(int k, int M) { return skeleton(standard_simplex(k, M), k - 1); }

/// Nerve of a finite category: level m = composable strings (f_1, ..., f_m).
inline TruncSimpSet nerve(const FinCategory& C, int M) {
    std::vector<std::vector<std::vector<int>>> simp(M + 1);
    std::vector<std::map<std::vector<int>, int>> index(M + 1);
    std::vector<std::vector<std::string>> labels(M + 1);
    for (std::size_t x = 0; x < C.num_objects(); ++x) {
        simp[0].push_back({int(x)});  // level 0 stores the object
        labels[0].push_back(C.object_label(int(x)));
    }
    if (M >= 1)
        for (std::size_t f = 0; f < C.num_morphisms(); ++f) simp[1].push_back({int(f)});
    for (int m = 2; m <= M; ++m)
        for (const auto& t : simp[m - 1])
            for (std::size_t g = 0; g < C.num_morphisms(); ++g)
                if (C.src(int(g)) == C.tgt(t.back())) {
                    auto u = t;
                    u.push_back(int(g));
                    simp[m].push_back(u);
                }
    for (int m = 0; m <= M; ++m)
        for (std::size_t x = 0; x < simp[m].size(); ++x) {
            index[m][simp[m][x]] = int(x);
            if (m >= 1) {
                std::string s = "(";
                for (std::size_t k = 0; k < simp[m][x].size(); ++k) s += (k ? "," : "") + C.morphism_label(simp[m][x][k]);
                labels[m].push_back(s + ")");
            }
        }
    std::vector<std::vector<IndexMap>> faces(M + 1), degens(M + 1);
    for (int m = 1; m <= M; ++m)
        for (int i = 0; i <= m; ++i) {
            IndexMap d;
            for (const auto& t : simp[m]) {
                std::vector<int> u;
                if (m == 1) {
                    u = {i == 0 ? C.tgt(t[0]) : C.src(t[0])};
                } else if (i == 0) {
                    u.assign(t.begin() + 1, t.end());
                } else if (i == m) {
                    u.assign(t.begin(), t.end() - 1);
                } else {
                    u.assign(t.begin(), t.begin() + (i - 1));
                    u.push_back(C.comp(t[i - 1], t[i]));
                    u.insert(u.end(), t.begin() + (i + 1), t.end());
                }
                d.push_back(index[m - 1].at(u));
            }
            faces[m].push_back(d);
        }
    for (int m = 0; m + 1 <= M; ++m)
        for (int j = 0; j <= m; ++j) {
            IndexMap s;
            for (const auto& t : simp[m]) {
                std::vector<int> u;
                if (m == 0) {
                    u = {C.id(t[0])};
                } else {
                    int obj = j == 0 ? C.src(t[0]) : C.tgt(t[j - 1]);
                    u.assign(t.begin(), t.begin() + j);
                    u.push_back(C.id(obj));
                    u.insert(u.end(), t.begin() + j, t.end());
                }
                s.push_back(index[m + 1].at(u));
            }
            degens[m].push_back(s);
        }
    return TruncSimpSet(labels, faces, degens);
}

/// Levelwise nerve of a functor.
inline SimplicialMap nerve_map(const FinCategory& C, const FinCategory& D, const FunctorData& F, int M) {
    TruncSimpSet NC = nerve(C, M), ND = nerve(D, M);
    // Rebuild the string tables to translate indices.
    std::vector<std::map<std::string, int>> index(M + 1);
    for (int m = 0; m <= M; ++m)
        for (std::size_t x = 0; x < ND.size(m); ++x) index[m][ND.labels(m)[x]] = int(x);
    SimplicialMap out;
    out.levels.emplace_back();
    for (std::size_t x = 0; x < C.num_objects(); ++x) out.levels[0].push_back(index[0].at(D.object_label(F.obj[x])));
    for (int m = 1; m <= M; ++m) {
        out.levels.emplace_back();
        // level m of NC enumerates strings in the same order as nerve() builds them
        std::vector<std::vector<int>> strings;
        for (std::size_t f = 0; f < C.num_morphisms(); ++f) strings.push_back({int(f)});
        for (int k = 2; k <= m; ++k) {
            std::vector<std::vector<int>> next;
            for (const auto& t : strings)
                for (std::size_t g = 0; g < C.num_morphisms(); ++g)
                    if (C.src(int(g)) == C.tgt(t.back())) {
                        auto u = t;
                        u.push_back(int(g));
                        next.push_back(u);
                    }
            strings = std::move(next);
        }
        for (const auto& t : strings) {
            std::string s = "(";
            for (std::size_t k = 0; k < t.size(); ++k) s += (k ? "," : "") + D.morphism_label(F.mor[t[k]]);
            out.levels[m].push_back(index[m].at(s + ")"));
        }
    }
    if (auto bad = simplicial_map_violation(NC, ND, out)) throw ValidationError(*bad);
    return out;
}

// ---------------------------------------------------------------------------
// Simplicial abelian groups

/// M-truncated simplicial abelian group.
class TruncSimpAb {
public:
    TruncSimpAb() = default;
    TruncSimpAb(std::vector<FGAbGroup> levels, std::vector<std::vector<AbHom>> faces, std::vector<std::vector<AbHom>> degens)
        : levels_(std::move(levels)), faces_(std::move(faces)), degens_(std::move(degens)) {
        if (auto bad = violation()) throw ValidationError(*bad);
    }

    int trunc() const noexcept { return static_cast<int>(levels_.size()) - 1; }
    const FGAbGroup& level(int m) const { return levels_.at(m); }
    const std::vector<FGAbGroup>& levels() const noexcept { return levels_; }
    const AbHom& face(int m, int i) const { return faces_.at(m).at(i); }
    const AbHom& degen(int m, int i) const { return degens_.at(m).at(i); }

    AbHom op(const OrdinalMap& theta) const {
        Ops ops{this};
        return simplicial_operator(ops, theta);
    }

    std::optional<std::string> violation() const {
        const int M = trunc();
        if (M < 0) return "at least one level";
        if (faces_.size() != levels_.size() || degens_.size() != levels_.size()) return "face/degeneracy table sizes";
        for (int m = 0; m <= M; ++m) {
            std::size_t nf = m >= 1 ? std::size_t(m + 1) : 0;
            std::size_t nd = m + 1 <= M ? std::size_t(m + 1) : 0;
            if (faces_[m].size() != nf || degens_[m].size() != nd) return "face/degeneracy counts at level " + std::to_string(m);
            for (const auto& f : faces_[m])
                if (f.source().generators() != levels_[m].generators() || f.target().generators() != levels_[m - 1].generators())
                    return "face shape at level " + std::to_string(m);
            for (const auto& s : degens_[m])
                if (s.source().generators() != levels_[m].generators() || s.target().generators() != levels_[m + 1].generators())
                    return "degeneracy shape at level " + std::to_string(m);
        }
        Ops ops{this};
        return first_simplicial_violation(ops, M);
    }

private:
    struct Ops {
        const TruncSimpAb* A;
        AbHom face(int m, int i) const { return A->face(m, i); }
        AbHom degen(int m, int i) const { return A->degen(m, i); }
        AbHom id(int m) const { return AbHom::identity(A->level(m)); }
        AbHom comp(const AbHom& g, const AbHom& f) const { return compose(g, f); }
        bool eq(const AbHom& a, const AbHom& b) const { return hom_equal(a, b); }
    };

    std::vector<FGAbGroup> levels_;
    std::vector<std::vector<AbHom>> faces_, degens_;
};

/// Levelwise homomorphisms between simplicial abelian groups.
struct SimpAbMap {
    std::vector<AbHom> levels;
};

inline std::optional<std::string> simp_ab_map_violation(const TruncSimpAb& A, const TruncSimpAb& B, const SimpAbMap& f) {
    if (A.trunc() != B.trunc() || static_cast<int>(f.levels.size()) != A.trunc() + 1) return "map truncation";
    for (int m = 1; m <= A.trunc(); ++m)
        for (int i = 0; i <= m; ++i)
            if (!hom_equal(compose(B.face(m, i), f.levels[m]), compose(f.levels[m - 1], A.face(m, i))))
                return "map commutes with d_" + std::to_string(i) + " at level " + std::to_string(m);
    for (int m = 0; m + 1 <= A.trunc(); ++m)
        for (int i = 0; i <= m; ++i)
            if (!hom_equal(compose(B.degen(m, i), f.levels[m]), compose(f.levels[m + 1], A.degen(m, i))))
                return "map commutes with s_" + std::to_string(i) + " at level " + std::to_string(m);
    return std::nullopt;
}

inline Matrix index_map_matrix(const IndexMap& f, std::size_t target_size) {
    Matrix m(target_size, f.size());
    for (std::size_t x = 0; x < f.size(); ++x) m(f[x], x) += 1;
    return m;
}

/// Free simplicial abelian group ZX and the Hurewicz map (simplex -> generator).
inline std::pair<TruncSimpAb, std::vector<IndexMap>> hurewicz(const TruncSimpSet& X) {
    const int M = X.trunc();
    std::vector<FGAbGroup> levels;
    for (int m = 0; m <= M; ++m) levels.push_back(FGAbGroup::free(X.size(m)));
    std::vector<std::vector<AbHom>> faces(M + 1), degens(M + 1);
    for (int m = 1; m <= M; ++m)
        for (int i = 0; i <= m; ++i)
            faces[m].push_back(AbHom(levels[m], levels[m - 1], index_map_matrix(X.face(m, i), X.size(m - 1)), AbHom::Unchecked{}));
    for (int m = 0; m + 1 <= M; ++m)
        for (int i = 0; i <= m; ++i)
            degens[m].push_back(AbHom(levels[m], levels[m + 1], index_map_matrix(X.degen(m, i), X.size(m + 1)), AbHom::Unchecked{}));
    std::vector<IndexMap> h;
    for (int m = 0; m <= M; ++m) h.push_back(identity_index(X.size(m)));
    return {TruncSimpAb(levels, faces, degens), h};
}

/// Z[f] for a simplicial map.
inline SimpAbMap free_map(const TruncSimpSet& X, const TruncSimpSet& Y, const SimplicialMap& f) {
    SimpAbMap out;
    for (int m = 0; m <= X.trunc(); ++m)
        out.levels.push_back(AbHom(FGAbGroup::free(X.size(m)), FGAbGroup::free(Y.size(m)),
                                   index_map_matrix(f.levels[m], Y.size(m)), AbHom::Unchecked{}));
    return out;
}

/// Unnormalized Moore chain complex: d = sum (-1)^i d_i, degrees 0..M.
inline ChainComplex moore_chain_complex(const TruncSimpAb& A) {
    std::vector<AbHom> bd;
    for (int m = 1; m <= A.trunc(); ++m) {
        AbHom d = AbHom::zero(A.level(m), A.level(m - 1));
        for (int i = 0; i <= m; ++i) d = (i % 2 == 0) ? d + A.face(m, i) : d - A.face(m, i);
        bd.push_back(d);
    }
    return ChainComplex(A.levels(), bd);
}

inline ChainMap moore_chain_map(const SimpAbMap& f) { return ChainMap{f.levels}; }

/// H_n of a truncated simplicial abelian group; needs n <= trunc - 1.
inline AbInvariants homology(const TruncSimpAb& A, int n) {
    if (n < 0 || n > A.trunc() - 1) throw DegreeRangeError("homology degree needs n <= trunc - 1");
    return moore_chain_complex(A).homology(n);
}

/// Normalized integral chains of a simplicial set: free on nondegenerate simplices.
inline ChainComplex normalized_chains(const TruncSimpSet& X) {
    std::vector<FGAbGroup> groups;
    std::vector<std::vector<int>> nd;
    std::vector<std::map<int, int>> pos(X.trunc() + 1);
    for (int m = 0; m <= X.trunc(); ++m) {
        nd.push_back(X.nondegenerate(m));
        for (std::size_t k = 0; k < nd[m].size(); ++k) pos[m][nd[m][k]] = int(k);
        groups.push_back(FGAbGroup::free(nd[m].size()));
    }
    std::vector<AbHom> bd;
    for (int m = 1; m <= X.trunc(); ++m) {
        Matrix d(nd[m - 1].size(), nd[m].size());
        for (std::size_t k = 0; k < nd[m].size(); ++k)
            for (int i = 0; i <= m; ++i) {
                auto it = pos[m - 1].find(X.face(m, i)[nd[m][k]]);
                if (it != pos[m - 1].end()) d(it->second, k) += (i % 2 == 0) ? 1 : -1;
            }
        bd.push_back(AbHom(groups[m], groups[m - 1], d, AbHom::Unchecked{}));
    }
    return ChainComplex(groups, bd);
}

/// Integral homology H_n(X), n <= trunc - 1.
inline AbInvariants homology(const TruncSimpSet& X, int n) {
    if (n < 0 || n > X.trunc() - 1) throw DegreeRangeError("homology degree needs n <= trunc - 1");
    return normalized_chains(X).homology(n);
}

/// Path components of a simplicial set (component index per vertex).
inline IndexMap pi0(const TruncSimpSet& X) {
    const std::size_t k = X.size(0);
    IndexMap parent = identity_index(k);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    if (X.trunc() >= 1)
        for (std::size_t e = 0; e < X.size(1); ++e) {
            int a = find(X.face(1, 0)[e]), b = find(X.face(1, 1)[e]);
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

// ---------------------------------------------------------------------------
// Presented groupoids and the fundamental groupoid

struct PathLetter {
    int gen;
    bool inverse = false;
    friend bool operator==(const PathLetter&, const PathLetter&) = default;
};

/// Words read in path order (first letter traversed first).
struct PathRelation {
    int base;  // starting object
    std::vector<PathLetter> lhs, rhs;
};

struct PresentedGroupoid {
    struct Generator {
        std::string name;
        int src, tgt;
    };
    std::vector<std::string> objects;
    std::vector<Generator> generators;
    std::vector<PathRelation> relations;

    /// End object of a word starting at `from`, or nullopt if not composable.
    std::optional<int> trace(int from, const std::vector<PathLetter>& w) const {
        int at = from;
        for (const auto& l : w) {
            const auto& g = generators.at(l.gen);
            int s = l.inverse ? g.tgt : g.src, t = l.inverse ? g.src : g.tgt;
            if (s != at) return std::nullopt;
            at = t;
        }
        return at;
    }

    std::optional<std::string> violation() const {
        for (const auto& g : generators)
            if (g.src < 0 || g.tgt < 0 || g.src >= int(objects.size()) || g.tgt >= int(objects.size()))
                return "generator endpoints are objects (" + g.name + ")";
        for (std::size_t r = 0; r < relations.size(); ++r) {
            auto a = trace(relations[r].base, relations[r].lhs), b = trace(relations[r].base, relations[r].rhs);
            if (!a || !b || *a != *b) return "relation " + std::to_string(r) + " is a pair of parallel paths";
        }
        return std::nullopt;
    }
};

/// Edge-path presentation of pi(X): generators are nondegenerate edges, one
/// relation [d_2 s, d_0 s] = [d_1 s] per nondegenerate 2-simplex s.
inline PresentedGroupoid fundamental_groupoid(const TruncSimpSet& X) {
    if (X.trunc() < 2) throw DegreeRangeError("fundamental groupoid needs truncation >= 2");
    PresentedGroupoid P;
    P.objects = X.labels(0);
    std::map<int, int> gen_of_edge;
    for (int e : X.nondegenerate(1)) {
        gen_of_edge[e] = int(P.generators.size());
        P.generators.push_back({X.labels(1)[e], X.face(1, 1)[e], X.face(1, 0)[e]});
    }
    auto word = [&](int e) {
        std::vector<PathLetter> w;
        if (auto it = gen_of_edge.find(e); it != gen_of_edge.end()) w.push_back({it->second, false});
        return w;
    };
    for (int s : X.nondegenerate(2)) {
        PathRelation r;
        int e2 = X.face(2, 2)[s], e0 = X.face(2, 0)[s], e1 = X.face(2, 1)[s];
        r.base = X.face(1, 1)[e2];
        r.lhs = word(e2);
        auto tail = word(e0);
        r.lhs.insert(r.lhs.end(), tail.begin(), tail.end());
        r.rhs = word(e1);
        P.relations.push_back(r);
    }
    if (auto bad = P.violation()) throw ValidationError(*bad);
    return P;
}

namespace detail {

/// Todd-Coxeter enumeration of the cosets of the trivial subgroup
/// (HLT strategy with coincidence processing).
class CosetEnumerator {
public:
    CosetEnumerator(int gens, std::vector<std::vector<int>> relators, std::size_t limit)
        : ncols_(2 * gens), relators_(std::move(relators)), limit_(limit) {
        new_coset();
    }

    /// Returns the completed table over live cosets, renumbered from 0.
    std::vector<std::vector<int>> run() {
        for (int a = 0; a < int(parent_.size()); ++a) {
            if (!alive(a)) continue;
            for (const auto& w : relators_) {
                scan_and_fill(a, w);
                if (!alive(a)) break;
            }
            if (!alive(a)) continue;
            for (int x = 0; x < ncols_; ++x)
                if (table_[a][x] < 0) define(a, x);
        }
        std::vector<int> renum(parent_.size(), -1);
        int n = 0;
        for (std::size_t a = 0; a < parent_.size(); ++a)
            if (alive(int(a))) renum[a] = n++;
        std::vector<std::vector<int>> out;
        for (std::size_t a = 0; a < parent_.size(); ++a)
            if (alive(int(a))) {
                std::vector<int> row(ncols_);
                for (int x = 0; x < ncols_; ++x) row[x] = renum[rep(table_[a][x])];
                out.push_back(row);
            }
        return out;
    }

    static int inv(int x) { return x ^ 1; }

private:
    bool alive(int a) const { return parent_[a] == a; }

    int rep(int a) {
        int r = a;
        while (parent_[r] != r) r = parent_[r];
        while (parent_[a] != r) {
            int n = parent_[a];
            parent_[a] = r;
            a = n;
        }
        return r;
    }

    int new_coset() {
        if (parent_.size() >= limit_) throw CapExceeded("coset enumeration exceeded its budget");
        int n = int(parent_.size());
        parent_.push_back(n);
        table_.emplace_back(ncols_, -1);
        return n;
    }

    void define(int a, int x) {
        int n = new_coset();
        table_[a][x] = n;
        table_[n][inv(x)] = a;
    }

    void merge(int a, int b, std::deque<int>& q) {
        a = rep(a);
        b = rep(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        parent_[b] = a;
        q.push_back(b);
    }

    void coincidence(int a, int b) {
        std::deque<int> q;
        merge(a, b, q);
        while (!q.empty()) {
            int e = q.front();
            q.pop_front();
            for (int x = 0; x < ncols_; ++x) {
                int f = table_[e][x];
                if (f < 0) continue;
                if (table_[f][inv(x)] == e) table_[f][inv(x)] = -1;
                int e1 = rep(e), f1 = rep(f);
                if (table_[e1][x] >= 0)
                    merge(f1, table_[e1][x], q);
                else if (table_[f1][inv(x)] >= 0)
                    merge(e1, table_[f1][inv(x)], q);
                else {
                    table_[e1][x] = f1;
                    table_[f1][inv(x)] = e1;
                }
            }
        }
    }

    void scan_and_fill(int a, const std::vector<int>& w) {
        if (w.empty()) return;
        int f = a, b = a;
        int i = 0, j = int(w.size()) - 1;
        while (true) {
            while (i <= j && table_[f][w[i]] >= 0) f = table_[f][w[i++]];
            if (i > j) {
                if (f != b) coincidence(f, b);
                return;
            }
            while (j >= i && table_[b][inv(w[j])] >= 0) b = table_[b][inv(w[j--])];
            if (j < i) {
                coincidence(f, b);
                return;
            }
            if (i == j) {
                table_[f][w[i]] = b;
                table_[b][inv(w[i])] = f;
                return;
            }
            define(f, w[i]);
        }
    }

    int ncols_;
    std::vector<std::vector<int>> relators_;
    std::size_t limit_;
    std::vector<int> parent_;
    std::vector<std::vector<int>> table_;
};

}  // namespace detail

struct CompletedGroupoid {
    FinGroupoid groupoid;
    std::vector<int> generator_morphism;  // morphism represented by each generator
};

/// Finite groupoid presented by P, if every vertex group has at most `cap` elements.
inline CompletedGroupoid complete_groupoid_with_images(const PresentedGroupoid& P, std::size_t cap) {
    if (auto bad = P.violation()) throw ValidationError(*bad);
    const std::size_t k = P.objects.size();
    // Spanning forest: tree[v] = word from the component root to v.
    std::vector<int> root(k, -1);
    std::vector<std::vector<PathLetter>> tree(k);
    std::vector<char> tree_edge(P.generators.size(), 0);
    for (std::size_t r = 0; r < k; ++r) {
        if (root[r] >= 0) continue;
        root[r] = int(r);
        std::deque<int> q{int(r)};
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (std::size_t g = 0; g < P.generators.size(); ++g) {
                const auto& G = P.generators[g];
                for (int dir = 0; dir < 2; ++dir) {
                    int from = dir ? G.tgt : G.src, to = dir ? G.src : G.tgt;
                    if (from != v || root[to] >= 0) continue;
                    root[to] = int(r);
                    tree[to] = tree[v];
                    tree[to].push_back({int(g), dir == 1});
                    tree_edge[g] = 1;
                    q.push_back(to);
                }
            }
        }
    }
    // Component roots and their vertex-group presentations.
    std::vector<int> roots;
    for (std::size_t v = 0; v < k; ++v)
        if (root[v] == int(v)) roots.push_back(int(v));

    struct Component {
        int root;
        std::vector<int> gen_col;                 // generator -> group generator index or -1
        std::vector<std::vector<int>> table;      // regular coset table
        std::vector<std::vector<int>> words;      // word (columns) reaching each element from 1
        std::vector<int> objects;
    };
    std::vector<Component> comps;
    std::vector<int> comp_of(k);
    for (int r : roots) {
        Component c;
        c.root = r;
        c.gen_col.assign(P.generators.size(), -1);
        int ng = 0;
        for (std::size_t g = 0; g < P.generators.size(); ++g)
            if (root[P.generators[g].src] == r && !tree_edge[g]) c.gen_col[g] = ng++;
        auto to_cols = [&](const std::vector<PathLetter>& w, bool invert) {
            std::vector<int> out;
            for (const auto& l : w)
                if (c.gen_col[l.gen] >= 0) out.push_back(2 * c.gen_col[l.gen] + (l.inverse ? 1 : 0));
            if (invert) {
                std::reverse(out.begin(), out.end());
                for (int& x : out) x ^= 1;
            }
            return out;
        };
        std::vector<std::vector<int>> relators;
        for (const auto& rel : P.relations) {
            if (root[rel.base] != r) continue;
            auto w = to_cols(rel.lhs, false);
            auto v = to_cols(rel.rhs, true);
            w.insert(w.end(), v.begin(), v.end());
            relators.push_back(w);
        }
        detail::CosetEnumerator te(ng, relators, 16 * cap + 64);
        c.table = te.run();
        if (c.table.size() > cap) throw CapExceeded("vertex group larger than cap");
        c.words.assign(c.table.size(), {});
        std::vector<char> seen(c.table.size(), 0);
        seen[0] = 1;
        std::deque<int> q{0};
        while (!q.empty()) {
            int a = q.front();
            q.pop_front();
            for (int x = 0; x < 2 * ng; ++x) {
                int b = c.table[a][x];
                if (seen[b]) continue;
                seen[b] = 1;
                c.words[b] = c.words[a];
                c.words[b].push_back(x);
                q.push_back(b);
            }
        }
        for (std::size_t v = 0; v < k; ++v)
            if (root[v] == r) {
                c.objects.push_back(int(v));
                comp_of[v] = int(comps.size());
            }
        comps.push_back(std::move(c));
    }

    // Morphisms u -> v in a component <-> group elements g, read as
    // (path u -> root) then g then (path root -> v).
    std::vector<std::string> names;
    IndexMap src, tgt, id(k, -1);
    std::vector<int> elem;
    std::map<std::tuple<int, int, int>, int> index_of;
    for (const auto& c : comps)
        for (int u : c.objects)
            for (int v : c.objects)
                for (std::size_t g = 0; g < c.table.size(); ++g) {
                    index_of[{u, int(g), v}] = int(names.size());
                    names.push_back(P.objects[u] + "-[" + std::to_string(g) + "]->" + P.objects[v]);
                    src.push_back(u);
                    tgt.push_back(v);
                    elem.push_back(int(g));
                    if (u == v && g == 0) id[u] = int(names.size()) - 1;
                }
    auto mult = [&](const Component& c, int a, int b) {
        for (int x : c.words[b]) a = c.table[a][x];
        return a;
    };
    FinCategory cat = FinCategory::build(P.objects, names, src, tgt, id, [&](int f, int g) {
        const Component& c = comps[comp_of[src[f]]];
        return index_of.at({src[f], mult(c, elem[f], elem[g]), tgt[g]});
    });
    IndexMap inv(names.size());
    for (std::size_t f = 0; f < names.size(); ++f) {
        const Component& c = comps[comp_of[src[f]]];
        int gi = 0;
        while (mult(c, elem[f], gi) != 0) ++gi;
        inv[f] = index_of.at({tgt[f], gi, src[f]});
    }
    std::vector<int> images;
    for (std::size_t g = 0; g < P.generators.size(); ++g) {
        const auto& G = P.generators[g];
        const Component& c = comps[comp_of[G.src]];
        int e = c.gen_col[g] >= 0 ? c.table[0][2 * c.gen_col[g]] : 0;
        images.push_back(index_of.at({G.src, e, G.tgt}));
    }
    return {FinGroupoid(std::move(cat), std::move(inv)), std::move(images)};
}

inline FinGroupoid complete_groupoid(const PresentedGroupoid& P, std::size_t cap) {
    return complete_groupoid_with_images(P, cap).groupoid;
}

/// Image of a word of P in the completed groupoid (the morphism it represents).
inline int evaluate_path(const PresentedGroupoid& P, const FinGroupoid& G, int from, const std::vector<PathLetter>& w,
                         const std::vector<int>& generator_morphism) {
    int acc = G.id(from);
    for (const auto& l : w) {
        int m = generator_morphism[l.gen];
        acc = G.comp(acc, l.inverse ? G.inv(m) : m);
    }
    (void)P;
    return acc;
}

}  // namespace cosimplex
