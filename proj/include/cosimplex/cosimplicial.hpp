#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cosimplex/ordinal.hpp"
#include "cosimplex/simplicial.hpp"

namespace cosimplex {

/// N-truncated cosimplicial set. coface(n, i): X^{n-1} -> X^n for 1 <= n <= N,
/// codeg(n, i): X^{n+1} -> X^n for n + 1 <= N, with 0 <= i <= n.
class TruncCosimpSet {
public:
    TruncCosimpSet() = default;
    TruncCosimpSet(std::vector<std::vector<std::string>> levels, std::vector<std::vector<IndexMap>> cofaces,
                   std::vector<std::vector<IndexMap>> codegs)
        : levels_(std::move(levels)), cofaces_(std::move(cofaces)), codegs_(std::move(codegs)) {
        if (auto bad = violation()) throw ValidationError(*bad);
    }

    int trunc() const noexcept { return static_cast<int>(levels_.size()) - 1; }
    std::size_t size(int n) const { return levels_.at(n).size(); }
    const std::vector<std::string>& labels(int n) const { return levels_.at(n); }
    const std::vector<std::vector<std::string>>& all_labels() const noexcept { return levels_; }
    const IndexMap& coface(int n, int i) const { return cofaces_.at(n).at(i); }
    const IndexMap& codeg(int n, int i) const { return codegs_.at(n).at(i); }
    const std::vector<std::vector<IndexMap>>& cofaces() const noexcept { return cofaces_; }
    const std::vector<std::vector<IndexMap>>& codegs() const noexcept { return codegs_; }

    /// X(theta) : X^m -> X^n for theta : [m] -> [n].
    IndexMap op(const OrdinalMap& theta) const {
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
            for (const auto& f : cofaces_[n])
                if (!map_ok(f, size(n - 1), size(n))) return "coface shape at level " + std::to_string(n);
            for (const auto& s : codegs_[n])
                if (!map_ok(s, size(n + 1), size(n))) return "codegeneracy shape at level " + std::to_string(n);
        }
        Ops ops{this};
        return first_cosimplicial_violation(ops, N);
    }

private:
    static bool map_ok(const IndexMap& f, std::size_t from, std::size_t to) {
        if (f.size() != from) return false;
        for (int v : f)
            if (v < 0 || static_cast<std::size_t>(v) >= to) return false;
        return true;
    }

    struct Ops {
        const TruncCosimpSet* X;
        IndexMap face(int n, int i) const { return X->coface(n, i); }
        IndexMap codeg(int n, int i) const { return X->codeg(n, i); }
        IndexMap id(int n) const { return identity_index(X->size(n)); }
        IndexMap comp(const IndexMap& g, const IndexMap& f) const { return compose_index(g, f); }
        bool eq(const IndexMap& a, const IndexMap& b) const { return a == b; }
    };

    std::vector<std::vector<std::string>> levels_;
    std::vector<std::vector<IndexMap>> cofaces_, codegs_;
};

/// Levelwise maps of cosimplicial sets.
using CosimpSetMap = std::vector<IndexMap>;

inline std::optional<std::string> cosimplicial_map_violation(const TruncCosimpSet& X, const TruncCosimpSet& Y,
                                                            const CosimpSetMap& f) {
    if (X.trunc() != Y.trunc() || static_cast<int>(f.size()) != X.trunc() + 1) return "map truncation";
    for (int n = 0; n <= X.trunc(); ++n) {
        if (f[n].size() != X.size(n)) return "map shape at level " + std::to_string(n);
        for (int v : f[n])
            if (v < 0 || static_cast<std::size_t>(v) >= Y.size(n)) return "map range at level " + std::to_string(n);
    }
    for (int n = 1; n <= X.trunc(); ++n)
        for (int i = 0; i <= n; ++i)
            if (compose_index(Y.coface(n, i), f[n - 1]) != compose_index(f[n], X.coface(n, i)))
                return "map commutes with d^" + std::to_string(i) + " at level " + std::to_string(n);
    for (int n = 0; n + 1 <= X.trunc(); ++n)
        for (int i = 0; i <= n; ++i)
            if (compose_index(Y.codeg(n, i), f[n + 1]) != compose_index(f[n], X.codeg(n, i)))
                return "map commutes with s^" + std::to_string(i) + " at level " + std::to_string(n);
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Constructions

/// Smallest cosimplicial subset containing the given (level, element) pairs, with its inclusion.
inline std::pair<TruncCosimpSet, CosimpSetMap> generated_subobject(const TruncCosimpSet& X,
                                                                   const std::vector<std::pair<int, int>>& gens) {
    const int N = X.trunc();
    std::vector<std::vector<char>> in(N + 1);
    for (int n = 0; n <= N; ++n) in[n].assign(X.size(n), 0);
    std::vector<std::pair<int, int>> stack;
    auto add = [&](int n, int x) {
        if (!in[n][x]) {
            in[n][x] = 1;
            stack.emplace_back(n, x);
        }
    };
    for (auto [n, x] : gens) add(n, x);
    while (!stack.empty()) {
        auto [n, x] = stack.back();
        stack.pop_back();
        if (n + 1 <= N)
            for (const auto& f : X.cofaces()[n + 1]) add(n + 1, f[x]);
        if (n >= 1)
            for (const auto& s : X.codegs()[n - 1]) add(n - 1, s[x]);
    }
    CosimpSetMap inc(N + 1);
    std::vector<IndexMap> back(N + 1);
    std::vector<std::vector<std::string>> labels(N + 1);
    for (int n = 0; n <= N; ++n) {
        back[n].assign(X.size(n), -1);
        for (std::size_t x = 0; x < X.size(n); ++x)
            if (in[n][x]) {
                back[n][x] = int(inc[n].size());
                inc[n].push_back(int(x));
                labels[n].push_back(X.labels(n)[x]);
            }
    }
    auto restrict_map = [&](int from, int to, const IndexMap& f) {
        IndexMap out;
        for (int x : inc[from]) out.push_back(back[to][f[x]]);
        return out;
    };
    std::vector<std::vector<IndexMap>> cf(N + 1), cd(N + 1);
    for (int n = 1; n <= N; ++n)
        for (int i = 0; i <= n; ++i) cf[n].push_back(restrict_map(n - 1, n, X.coface(n, i)));
    for (int n = 0; n + 1 <= N; ++n)
        for (int i = 0; i <= n; ++i) cd[n].push_back(restrict_map(n + 1, n, X.codeg(n, i)));
    return {TruncCosimpSet(labels, cf, cd), inc};
}



/// Build a cosimplicial set whose level n is an explicit list of values and
/// whose structure maps act through a function on values.
template <class Value, class Act>
TruncCosimpSet cosimplicial_set_from(const std::vector<std::vector<Value>>& levels, Act&& act,
                                     std::function<std::string(const Value&)> label) {
    const int N = static_cast<int>(levels.size()) - 1;
    std::vector<std::map<Value, int>> index(N + 1);
    std::vector<std::vector<std::string>> labels(N + 1);
    for (int n = 0; n <= N; ++n)
        for (std::size_t x = 0; x < levels[n].size(); ++x) {
            index[n][levels[n][x]] = int(x);
            labels[n].push_back(label(levels[n][x]));
        }
    std::vector<std::vector<IndexMap>> cofaces(N + 1), codegs(N + 1);
    for (int n = 1; n <= N; ++n)
        for (int i = 0; i <= n; ++i) {
            IndexMap f;
            for (const auto& v : levels[n - 1]) f.push_back(index[n].at(act(coface_map(n, i), v)));
            cofaces[n].push_back(f);
        }
    for (int n = 0; n + 1 <= N; ++n)
        for (int i = 0; i <= n; ++i) {
            IndexMap s;
            for (const auto& v : levels[n + 1]) s.push_back(index[n].at(act(codegeneracy_map(n, i), v)));
            codegs[n].push_back(s);
        }
    return TruncCosimpSet(labels, cofaces, codegs);
}

/// Hom([k], -) truncated at N: level n = monotone maps [k] -> [n], acting by postcomposition.
inline TruncCosimpSet representable_cosimplicial_set(int k, int N) {
    std::vector<std::vector<OrdinalMap>> levels;
    for (int n = 0; n <= N; ++n) levels.push_back(monotone_maps(k, n));
    return cosimplicial_set_from<OrdinalMap>(
        levels, [](const OrdinalMap& theta, const OrdinalMap& v) { return compose(theta, v); }, ordinal_label);
}

/// The vertices of Delta: level n = {0, ..., n}.
inline TruncCosimpSet delta_vertices(int N) { return representable_cosimplicial_set(0, N); }

inline TruncCosimpSet constant_cosimplicial_set(const std::vector<std::string>& points, int N) {
    std::vector<std::vector<std::string>> labels(N + 1, points);
    std::vector<std::vector<IndexMap>> cofaces(N + 1), codegs(N + 1);
    IndexMap id = identity_index(points.size());
    for (int n = 0; n <= N; ++n) {
        if (n >= 1) cofaces[n].assign(n + 1, id);
        if (n + 1 <= N) codegs[n].assign(n + 1, id);
    }
    return TruncCosimpSet(labels, cofaces, codegs);
}

inline TruncCosimpSet coproduct(const TruncCosimpSet& A, const TruncCosimpSet& B) {
    if (A.trunc() != B.trunc()) throw ShapeMismatch("coproduct of different truncations");
    const int N = A.trunc();
    std::vector<std::vector<std::string>> labels(N + 1);
    for (int n = 0; n <= N; ++n) {
        for (const auto& l : A.labels(n)) labels[n].push_back("0:" + l);
        for (const auto& l : B.labels(n)) labels[n].push_back("1:" + l);
    }
    auto join = [](const IndexMap& f, const IndexMap& g, int shift) {
        IndexMap h = f;
        for (int v : g) h.push_back(v + shift);
        return h;
    };
    std::vector<std::vector<IndexMap>> cofaces(N + 1), codegs(N + 1);
    for (int n = 1; n <= N; ++n)
        for (int i = 0; i <= n; ++i) cofaces[n].push_back(join(A.coface(n, i), B.coface(n, i), int(A.size(n))));
    for (int n = 0; n + 1 <= N; ++n)
        for (int i = 0; i <= n; ++i) codegs[n].push_back(join(A.codeg(n, i), B.codeg(n, i), int(A.size(n))));
    return TruncCosimpSet(labels, cofaces, codegs);
}

/// Quotient by the smallest congruence containing the given identifications
/// (level, x, y). Returns the quotient and the projection.
inline std::pair<TruncCosimpSet, CosimpSetMap> quotient_by_congruence(
    const TruncCosimpSet& X, const std::vector<std::tuple<int, int, int>>& pairs) {
    const int N = X.trunc();
    std::vector<IndexMap> parent(N + 1);
    for (int n = 0; n <= N; ++n) parent[n] = identity_index(X.size(n));
    std::function<int(int, int)> find = [&](int n, int x) {
        return parent[n][x] == x ? x : parent[n][x] = find(n, parent[n][x]);
    };
    auto unite = [&](int n, int a, int b) {
        a = find(n, a);
        b = find(n, b);
        if (a == b) return false;
        parent[n][std::max(a, b)] = std::min(a, b);
        return true;
    };
    for (auto [n, a, b] : pairs) unite(n, a, b);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int n = 1; n <= N; ++n)
            for (int i = 0; i <= n; ++i)
                for (std::size_t x = 0; x < X.size(n - 1); ++x)
                    changed |= unite(n, X.coface(n, i)[x], X.coface(n, i)[find(n - 1, int(x))]);
        for (int n = 0; n + 1 <= N; ++n)
            for (int i = 0; i <= n; ++i)
                for (std::size_t x = 0; x < X.size(n + 1); ++x)
                    changed |= unite(n, X.codeg(n, i)[x], X.codeg(n, i)[find(n + 1, int(x))]);
    }
    CosimpSetMap proj(N + 1);
    std::vector<std::vector<std::string>> labels(N + 1);
    std::vector<IndexMap> cls(N + 1);
    for (int n = 0; n <= N; ++n) {
        cls[n].assign(X.size(n), -1);
        for (std::size_t x = 0; x < X.size(n); ++x) {
            int r = find(n, int(x));
            if (cls[n][r] < 0) {
                cls[n][r] = int(labels[n].size());
                labels[n].push_back(X.labels(n)[r]);
            }
            proj[n].push_back(cls[n][r]);
        }
    }
    auto descend = [&](const IndexMap& f, int from, int to) {
        IndexMap g(labels[from].size());
        for (std::size_t x = 0; x < X.size(from); ++x) g[proj[from][x]] = proj[to][f[x]];
        return g;
    };
    std::vector<std::vector<IndexMap>> cofaces(N + 1), codegs(N + 1);
    for (int n = 1; n <= N; ++n)
        for (int i = 0; i <= n; ++i) cofaces[n].push_back(descend(X.coface(n, i), n - 1, n));
    for (int n = 0; n + 1 <= N; ++n)
        for (int i = 0; i <= n; ++i) codegs[n].push_back(descend(X.codeg(n, i), n + 1, n));
    return {TruncCosimpSet(labels, cofaces, codegs), proj};
}

// ---------------------------------------------------------------------------
// Limits and matching sets

/// {x in X^0 : d^0 x = d^1 x}
inline std::vector<int> maximal_augmentation(const TruncCosimpSet& X) {
    if (X.trunc() < 1) throw DegreeRangeError("maximal augmentation needs truncation >= 1");
    std::vector<int> out;
    for (std::size_t x = 0; x < X.size(0); ++x)
        if (X.coface(1, 0)[x] == X.coface(1, 1)[x]) out.push_back(int(x));
    return out;
}

/// All cones (x_0, ..., x_N) with X(theta)(x_m) = x_n for every theta : [m] -> [n], n, m <= N.
inline std::vector<std::vector<int>> inverse_limit_trunc(const TruncCosimpSet& X) {
    const int N = X.trunc();
    if (N < 1) throw DegreeRangeError("inverse limit needs truncation >= 1");
    // operators between every pair of levels
    std::vector<std::vector<std::vector<IndexMap>>> ops(N + 1, std::vector<std::vector<IndexMap>>(N + 1));
    for (int m = 0; m <= N; ++m)
        for (int n = 0; n <= N; ++n)
            for (const auto& theta : monotone_maps(m, n)) ops[m][n].push_back(X.op(theta));
    std::vector<std::vector<int>> cones;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int n) {
        if (n > N) {
            cones.push_back(cur);
            return;
        }
        for (std::size_t x = 0; x < X.size(n); ++x) {
            bool ok = true;
            for (int m = 0; m <= n && ok; ++m) {
                int xm = m == n ? int(x) : cur[m];
                for (const auto& f : ops[m][n])
                    if (f[xm] != int(x)) ok = false;
                if (m < n)
                    for (const auto& g : ops[n][m])
                        if (g[x] != cur[m]) ok = false;
            }
            if (!ok) continue;
            cur.push_back(int(x));
            rec(n + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return cones;
}

/// Tot of a discrete cosimplicial space is its inverse limit.
inline std::vector<std::vector<int>> tot_discrete(const TruncCosimpSet& X) { return inverse_limit_trunc(X); }

/// M^{n-1}X with the canonical map s = (s^0, ..., s^{n-1}) : X^n -> M^{n-1}X.
struct MatchingSet {
    std::vector<std::vector<int>> tuples;  // elements of (X^{n-1})^n
    IndexMap s;                            // X^n -> index into tuples
};

/// Tuples (x_0, ..., x_{n-1}) of a family of sets with s^i x_j = s^{j-1} x_i for
/// i < j, where codeg(i) : X^{n-1} -> X^{n-2}.
template <class Codeg>
std::vector<std::vector<int>> matching_tuples(int n, std::size_t level_size, Codeg&& codeg) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void()> rec = [&] {
        int j = int(cur.size());
        if (j == n) {
            out.push_back(cur);
            return;
        }
        for (std::size_t x = 0; x < level_size; ++x) {
            bool ok = true;
            for (int i = 0; i < j && ok; ++i)
                if (codeg(i, int(x)) != codeg(j - 1, cur[i])) ok = false;
            if (!ok) continue;
            cur.push_back(int(x));
            rec();
            cur.pop_back();
        }
    };
    rec();
    return out;
}

inline MatchingSet matching_set(const TruncCosimpSet& X, int n) {
    if (n < 1 || n > X.trunc()) throw DegreeRangeError("matching set needs 1 <= n <= trunc");
    MatchingSet M;
    M.tuples = matching_tuples(n, X.size(n - 1), [&](int i, int x) { return X.codeg(n - 2, i)[x]; });
    std::map<std::vector<int>, int> index;
    for (std::size_t t = 0; t < M.tuples.size(); ++t) index[M.tuples[t]] = int(t);
    for (std::size_t x = 0; x < X.size(n); ++x) {
        std::vector<int> t;
        for (int i = 0; i < n; ++i) t.push_back(X.codeg(n - 1, i)[x]);
        M.s.push_back(index.at(t));
    }
    return M;
}

inline bool matching_surjective(const TruncCosimpSet& X, int n) {
    MatchingSet M = matching_set(X, n);
    std::vector<char> hit(M.tuples.size(), 0);
    for (int t : M.s) hit[t] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

/// Map M^{n-1}X -> M^{n-1}Y induced by f (as tuple indices).
inline IndexMap induced_matching_map(const MatchingSet& MX, const MatchingSet& MY, const CosimpSetMap& f, int n) {
    std::map<std::vector<int>, int> index;
    for (std::size_t t = 0; t < MY.tuples.size(); ++t) index[MY.tuples[t]] = int(t);
    IndexMap out;
    for (const auto& t : MX.tuples) {
        std::vector<int> u;
        for (int x : t) u.push_back(f[n - 1][x]);
        out.push_back(index.at(u));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Cosimplicial spaces

/// N-truncated cosimplicial object in M-truncated simplicial sets.
class TruncCosimpSpace {
public:
    TruncCosimpSpace() = default;
    TruncCosimpSpace(std::vector<TruncSimpSet> levels, std::vector<std::vector<SimplicialMap>> cofaces,
                     std::vector<std::vector<SimplicialMap>> codegs)
        : levels_(std::move(levels)), cofaces_(std::move(cofaces)), codegs_(std::move(codegs)) {
        if (auto bad = violation()) throw ValidationError(*bad);
    }

    int trunc() const noexcept { return static_cast<int>(levels_.size()) - 1; }
    int simplicial_trunc() const { return levels_.at(0).trunc(); }
    const TruncSimpSet& level(int n) const { return levels_.at(n); }
    const SimplicialMap& coface(int n, int i) const { return cofaces_.at(n).at(i); }
    const SimplicialMap& codeg(int n, int i) const { return codegs_.at(n).at(i); }

    SimplicialMap op(const OrdinalMap& theta) const {
        Ops ops{this};
        return cosimplicial_operator(ops, theta);
    }

    std::optional<std::string> violation() const {
        const int N = trunc();
        if (N < 0) return "at least one level";
        if (cofaces_.size() != levels_.size() || codegs_.size() != levels_.size()) return "coface/codegeneracy table sizes";
        for (int n = 0; n <= N; ++n) {
            if (levels_[n].trunc() != levels_[0].trunc()) return "common simplicial truncation";
            std::size_t nf = n >= 1 ? std::size_t(n + 1) : 0;
            std::size_t nd = n + 1 <= N ? std::size_t(n + 1) : 0;
            if (cofaces_[n].size() != nf || codegs_[n].size() != nd)
                return "coface/codegeneracy counts at level " + std::to_string(n);
            for (std::size_t i = 0; i < nf; ++i)
                if (auto bad = simplicial_map_violation(levels_[n - 1], levels_[n], cofaces_[n][i]))
                    return "d^" + std::to_string(i) + " at level " + std::to_string(n) + ": " + *bad;
            for (std::size_t i = 0; i < nd; ++i)
                if (auto bad = simplicial_map_violation(levels_[n + 1], levels_[n], codegs_[n][i]))
                    return "s^" + std::to_string(i) + " at level " + std::to_string(n) + ": " + *bad;
        }
        Ops ops{this};
        return first_cosimplicial_violation(ops, N);
    }

private:
    struct Ops {
        const TruncCosimpSpace* X;
        SimplicialMap face(int n, int i) const { return X->coface(n, i); }
        SimplicialMap codeg(int n, int i) const { return X->codeg(n, i); }
        SimplicialMap id(int n) const { return identity_map(X->level(n)); }
        SimplicialMap comp(const SimplicialMap& g, const SimplicialMap& f) const { return compose(g, f); }
        bool eq(const SimplicialMap& a, const SimplicialMap& b) const { return a == b; }
    };

    std::vector<TruncSimpSet> levels_;
    std::vector<std::vector<SimplicialMap>> cofaces_, codegs_;
};

/// The cosimplicial space n -> Delta^n, cosimplicial truncation N, simplicial truncation M.
inline TruncCosimpSpace delta_space(int N, int M) {
    std::vector<TruncSimpSet> levels;
    for (int n = 0; n <= N; ++n) levels.push_back(standard_simplex(n, M));
    auto post = [&](const OrdinalMap& theta, int from) {
        SimplicialMap f;
        for (int m = 0; m <= M; ++m) {
            std::map<OrdinalMap, int> index;
            auto target = monotone_maps(m, theta.cod);
            for (std::size_t x = 0; x < target.size(); ++x) index[target[x]] = int(x);
            IndexMap g;
            for (const auto& t : monotone_maps(m, from)) g.push_back(index.at(compose(theta, t)));
            f.levels.push_back(g);
        }
        return f;
    };
    std::vector<std::vector<SimplicialMap>> cofaces(N + 1), codegs(N + 1);
    for (int n = 1; n <= N; ++n)
        for (int i = 0; i <= n; ++i) cofaces[n].push_back(post(coface_map(n, i), n - 1));
    for (int n = 0; n + 1 <= N; ++n)
        for (int i = 0; i <= n; ++i) codegs[n].push_back(post(codegeneracy_map(n, i), n + 1));
    return TruncCosimpSpace(levels, cofaces, codegs);
}

/// Levelwise constant simplicial sets on a cosimplicial set.
inline TruncCosimpSpace discrete_space(const TruncCosimpSet& X, int M) {
    std::vector<TruncSimpSet> levels;
    for (int n = 0; n <= X.trunc(); ++n) levels.push_back(discrete_simplicial_set(X.labels(n), M));
    auto lift = [&](const IndexMap& f) { return SimplicialMap{std::vector<IndexMap>(M + 1, f)}; };
    std::vector<std::vector<SimplicialMap>> cofaces(X.trunc() + 1), codegs(X.trunc() + 1);
    for (int n = 1; n <= X.trunc(); ++n)
        for (int i = 0; i <= n; ++i) cofaces[n].push_back(lift(X.coface(n, i)));
    for (int n = 0; n + 1 <= X.trunc(); ++n)
        for (int i = 0; i <= n; ++i) codegs[n].push_back(lift(X.codeg(n, i)));
    return TruncCosimpSpace(levels, cofaces, codegs);
}

/// Levelwise k-skeleton; structure maps restrict since simplicial maps preserve skeleta.
inline TruncCosimpSpace cosimplicial_skeleton(const TruncCosimpSpace& X, int k) {
    const int N = X.trunc(), M = X.simplicial_trunc();
    std::vector<TruncSimpSet> levels;
    std::vector<std::vector<IndexMap>> incl(N + 1), back(N + 1);
    for (int n = 0; n <= N; ++n) {
        std::vector<std::pair<int, int>> seeds;
        for (int m = 0; m <= std::min(k, M); ++m)
            for (std::size_t x = 0; x < X.level(n).size(m); ++x) seeds.push_back({m, int(x)});
        auto [S, inc] = generated_subset(X.level(n), seeds);
        levels.push_back(S);
        incl[n] = inc.levels;
        back[n].resize(M + 1);
        for (int m = 0; m <= M; ++m) {
            back[n][m].assign(X.level(n).size(m), -1);
            for (std::size_t y = 0; y < inc.levels[m].size(); ++y) back[n][m][inc.levels[m][y]] = int(y);
        }
    }
    auto restrict = [&](const SimplicialMap& f, int from, int to) {
        SimplicialMap g;
        for (int m = 0; m <= M; ++m) {
            IndexMap h;
            for (int x : incl[from][m]) h.push_back(back[to][m][f.levels[m][x]]);
            g.levels.push_back(h);
        }
        return g;
    };
    std::vector<std::vector<SimplicialMap>> cofaces(N + 1), codegs(N + 1);
    for (int n = 1; n <= N; ++n)
        for (int i = 0; i <= n; ++i) cofaces[n].push_back(restrict(X.coface(n, i), n - 1, n));
    for (int n = 0; n + 1 <= N; ++n)
        for (int i = 0; i <= n; ++i) codegs[n].push_back(restrict(X.codeg(n, i), n + 1, n));
    return TruncCosimpSpace(levels, cofaces, codegs);
}

/// A map sk_{n-1}Delta -> X as the images x_k in X^k_k of the top simplices, k < n.
using SkeletalFamily = std::vector<int>;

/// First naturality failure X(theta)_k(x_k) = theta^*(x_l) for theta : [k] -> [l], k, l < levels.
inline std::optional<std::string> skeletal_family_violation(const TruncCosimpSpace& X, const SkeletalFamily& x) {
    const int top = static_cast<int>(x.size()) - 1;
    for (int k = 0; k <= top; ++k)
        for (int l = 0; l <= top; ++l)
            for (const auto& theta : monotone_maps(k, l)) {
                int lhs = X.op(theta).levels[k][x[k]];
                int rhs = X.level(l).apply(theta, x[l]);
                if (lhs != rhs) return "family natural along " + theta.str();
            }
    return std::nullopt;
}

/// All n-simplices f' of X^n extending the family: d_j f' = X(d^j)(x_{n-1}) and
/// s^i f' = s_i x_{n-1}. Each candidate is checked to give a natural family on [0, n].
inline std::vector<int> extension_candidates(const TruncCosimpSpace& X, const SkeletalFamily& f, int n) {
    if (n < 1 || n > X.trunc() || n > X.simplicial_trunc()) throw DegreeRangeError("extension degree outside truncation");
    if (static_cast<int>(f.size()) != n) throw ShapeMismatch("family must have one simplex per level below n");
    if (auto bad = skeletal_family_violation(X, f)) throw ValidationError(*bad);
    const TruncSimpSet& Xn = X.level(n);
    const TruncSimpSet& Xn1 = X.level(n - 1);
    std::vector<int> out;
    for (std::size_t c = 0; c < Xn.size(n); ++c) {
        bool ok = true;
        for (int j = 0; j <= n && ok; ++j)
            ok = Xn.face(n, j)[c] == X.coface(n, j).levels[n - 1][f[n - 1]];
        for (int i = 0; i < n && ok; ++i)
            ok = X.codeg(n - 1, i).levels[n][c] == Xn1.degen(n - 1, i)[f[n - 1]];
        if (!ok) continue;
        SkeletalFamily g = f;
        g.push_back(int(c));
        if (auto bad = skeletal_family_violation(X, g))
            throw ValidationError("extension is natural", *bad);
        out.push_back(int(c));
    }
    return out;
}

}  // namespace cosimplex
