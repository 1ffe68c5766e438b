#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cosimplex/error.hpp"

namespace cosimplex {

/// Order-preserving map [m] -> [n], stored as its values theta(0..m).
struct OrdinalMap {
    int cod = 0;
    std::vector<int> values;

    int dom() const { return static_cast<int>(values.size()) - 1; }
    int operator()(int j) const { return values[static_cast<std::size_t>(j)]; }

    bool is_identity() const {
        if (dom() != cod) return false;
        for (int j = 0; j <= cod; ++j)
            if (values[j] != j) return false;
        return true;
    }
    bool is_injective() const {
        for (int j = 0; j < dom(); ++j)
            if (values[j] == values[j + 1]) return false;
        return true;
    }
    bool is_surjective() const {
        if (values.empty()) return cod < 0;
        if (values.front() != 0 || values.back() != cod) return false;
        for (int j = 0; j < dom(); ++j)
            if (values[j + 1] - values[j] > 1) return false;
        return true;
    }

    std::string str() const {
        std::ostringstream os;
        os << '[';
        for (std::size_t j = 0; j < values.size(); ++j) os << (j ? "," : "") << values[j];
        os << "]->" << cod;
        return os.str();
    }

    friend bool operator==(const OrdinalMap&, const OrdinalMap&) = default;
    friend auto operator<=>(const OrdinalMap& a, const OrdinalMap& b) {
        if (auto c = a.cod <=> b.cod; c != 0) return c;
        return a.values <=> b.values;
    }
};

inline OrdinalMap ordinal_identity(int n) {
    OrdinalMap t{n, std::vector<int>(static_cast<std::size_t>(n + 1))};
    for (int j = 0; j <= n; ++j) t.values[j] = j;
    return t;
}

/// d^i : [n-1] -> [n], skipping i.
inline OrdinalMap coface_map(int n, int i) {
    OrdinalMap t{n, {}};
    for (int j = 0; j < n; ++j) t.values.push_back(j < i ? j : j + 1);
    return t;
}

/// s^i : [n+1] -> [n], hitting i twice.
inline OrdinalMap codegeneracy_map(int n, int i) {
    OrdinalMap t{n, {}};
    for (int j = 0; j <= n + 1; ++j) t.values.push_back(j <= i ? j : j - 1);
    return t;
}

/// g o f
inline OrdinalMap compose(const OrdinalMap& g, const OrdinalMap& f) {
    if (f.cod != g.dom()) throw ShapeMismatch("ordinal maps are not composable");
    OrdinalMap t{g.cod, {}};
    for (int v : f.values) t.values.push_back(g(v));
    return t;
}

/// All order-preserving maps [m] -> [n] in lexicographic order of values.
inline std::vector<OrdinalMap> monotone_maps(int m, int n) {
    std::vector<OrdinalMap> out;
    if (m < 0 || n < 0) return out;
    std::vector<int> v(static_cast<std::size_t>(m + 1), 0);
    while (true) {
        out.push_back({n, v});
        int k = m;
        while (k >= 0 && v[k] == n) --k;
        if (k < 0) break;
        ++v[k];
        for (int j = k + 1; j <= m; ++j) v[j] = v[k];
    }
    return out;
}

inline std::vector<OrdinalMap> surjections(int m, int k) {
    std::vector<OrdinalMap> out;
    for (auto& t : monotone_maps(m, k))
        if (t.is_surjective()) out.push_back(t);
    return out;
}

/// Elementary cosimplicial operator: a coface d^i : [n-1] -> [n] or a
/// codegeneracy s^i : [n+1] -> [n]; `level` is n in both cases.
struct Elementary {
    bool face;
    int level;
    int index;
};

/// Factor theta as e_k o ... o e_1; returned in application order e_1, ..., e_k.
inline std::vector<Elementary> elementary_factorization(OrdinalMap theta) {
    std::vector<Elementary> pre;   // applied first (codegeneracies)
    std::vector<Elementary> post;  // applied last (cofaces), collected outermost first
    // Peel codegeneracies from the right: theta = theta' o s^i.
    while (!theta.is_injective()) {
        int i = 0;
        while (theta.values[i] != theta.values[i + 1]) ++i;
        pre.push_back({false, theta.dom() - 1, i});
        theta.values.erase(theta.values.begin() + i + 1);
    }
    // Peel cofaces from the left: theta = d^v o theta'.
    while (!theta.is_surjective()) {
        int v = 0;
        std::size_t p = 0;
        while (p < theta.values.size() && theta.values[p] == v) {
            ++v;
            ++p;
        }
        post.push_back({true, theta.cod, v});
        for (int& x : theta.values)
            if (x > v) --x;
        --theta.cod;
    }
    for (auto it = post.rbegin(); it != post.rend(); ++it) pre.push_back(*it);
    return pre;
}

/// X(theta) for a covariant (cosimplicial) structure given by
/// ops.face(n, i), ops.codeg(n, i), ops.id(n), ops.comp(g, f) = g o f.
template <class Ops>
auto cosimplicial_operator(Ops& ops, const OrdinalMap& theta) -> decltype(ops.id(0)) {
    auto acc = ops.id(theta.dom());
    for (const Elementary& e : elementary_factorization(theta))
        acc = ops.comp(e.face ? ops.face(e.level, e.index) : ops.codeg(e.level, e.index), acc);
    return acc;
}

/// theta^* : X_n -> X_m for a contravariant (simplicial) structure given by
/// ops.face(m, i): X_m -> X_{m-1}, ops.degen(m, i): X_m -> X_{m+1}.
template <class Ops>
auto simplicial_operator(Ops& ops, const OrdinalMap& theta) -> decltype(ops.id(0)) {
    auto acc = ops.id(theta.cod);
    auto fac = elementary_factorization(theta);
    for (auto it = fac.rbegin(); it != fac.rend(); ++it) {
        const Elementary& e = *it;
        // d^i: [n-1] -> [n] induces d_i: X_n -> X_{n-1}; s^i: [n+1] -> [n] induces s_i: X_n -> X_{n+1}.
        acc = ops.comp(e.face ? ops.face(e.level, e.index) : ops.degen(e.level, e.index), acc);
    }
    return acc;
}

namespace detail {
inline std::string law_name(const char* law, int n, int i, int j) {
    return std::string(law) + " (n=" + std::to_string(n) + ", i=" + std::to_string(i) +
           ", j=" + std::to_string(j) + ")";
}
}  // namespace detail

/// First violated cosimplicial identity within truncation N, if any.
template <class Ops>
std::optional<std::string> first_cosimplicial_violation(Ops& ops, int N) {
    // d^j d^i = d^i d^{j-1}, i < j, on X^{n-1} -> X^{n+1}
    for (int n = 1; n + 1 <= N; ++n)
        for (int j = 1; j <= n + 1; ++j)
            for (int i = 0; i < j; ++i)
                if (!ops.eq(ops.comp(ops.face(n + 1, j), ops.face(n, i)),
                            ops.comp(ops.face(n + 1, i), ops.face(n, j - 1))))
                    return detail::law_name("d^j d^i = d^i d^{j-1}", n, i, j);
    // s^j s^i = s^i s^{j+1}, i <= j, on X^{n+2} -> X^n
    for (int n = 0; n + 2 <= N; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= j; ++i)
                if (!ops.eq(ops.comp(ops.codeg(n, j), ops.codeg(n + 1, i)),
                            ops.comp(ops.codeg(n, i), ops.codeg(n + 1, j + 1))))
                    return detail::law_name("s^j s^i = s^i s^{j+1}", n, i, j);
    // s^j d^i on X^n -> X^n
    for (int n = 0; n + 1 <= N; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n + 1; ++i) {
                auto lhs = ops.comp(ops.codeg(n, j), ops.face(n + 1, i));
                if (i < j) {
                    if (!ops.eq(lhs, ops.comp(ops.face(n, i), ops.codeg(n - 1, j - 1))))
                        return detail::law_name("s^j d^i = d^i s^{j-1}", n, i, j);
                } else if (i == j || i == j + 1) {
                    if (!ops.eq(lhs, ops.id(n))) return detail::law_name("s^j d^i = id", n, i, j);
                } else {
                    if (!ops.eq(lhs, ops.comp(ops.face(n, i - 1), ops.codeg(n - 1, j))))
                        return detail::law_name("s^j d^i = d^{i-1} s^j", n, i, j);
                }
            }
    return std::nullopt;
}

/// First violated simplicial identity within truncation M, if any.
template <class Ops>
std::optional<std::string> first_simplicial_violation(Ops& ops, int M) {
    // d_i d_j = d_{j-1} d_i, i < j, on X_m -> X_{m-2}
    for (int m = 2; m <= M; ++m)
        for (int j = 1; j <= m; ++j)
            for (int i = 0; i < j; ++i)
                if (!ops.eq(ops.comp(ops.face(m - 1, i), ops.face(m, j)),
                            ops.comp(ops.face(m - 1, j - 1), ops.face(m, i))))
                    return detail::law_name("d_i d_j = d_{j-1} d_i", m, i, j);
    // s_i s_j = s_{j+1} s_i, i <= j, on X_m -> X_{m+2}
    for (int m = 0; m + 2 <= M; ++m)
        for (int j = 0; j <= m; ++j)
            for (int i = 0; i <= j; ++i)
                if (!ops.eq(ops.comp(ops.degen(m + 1, i), ops.degen(m, j)),
                            ops.comp(ops.degen(m + 1, j + 1), ops.degen(m, i))))
                    return detail::law_name("s_i s_j = s_{j+1} s_i", m, i, j);
    // d_i s_j on X_m -> X_m
    for (int m = 0; m + 1 <= M; ++m)
        for (int j = 0; j <= m; ++j)
            for (int i = 0; i <= m + 1; ++i) {
                auto lhs = ops.comp(ops.face(m + 1, i), ops.degen(m, j));
                if (i < j) {
                    if (!ops.eq(lhs, ops.comp(ops.degen(m - 1, j - 1), ops.face(m, i))))
                        return detail::law_name("d_i s_j = s_{j-1} d_i", m, i, j);
                } else if (i == j || i == j + 1) {
                    if (!ops.eq(lhs, ops.id(m))) return detail::law_name("d_i s_j = id", m, i, j);
                } else {
                    if (!ops.eq(lhs, ops.comp(ops.degen(m - 1, j), ops.face(m, i - 1))))
                        return detail::law_name("d_i s_j = s_j d_{i-1}", m, i, j);
                }
            }
    return std::nullopt;
}

/// Maps of finite sets as index tables; g o f.
using IndexMap = std::vector<int>;

inline IndexMap compose_index(const IndexMap& g, const IndexMap& f) {
    IndexMap h(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) h[k] = g.at(static_cast<std::size_t>(f[k]));
    return h;
}

inline IndexMap identity_index(std::size_t n) {
    IndexMap h(n);
    for (std::size_t k = 0; k < n; ++k) h[k] = static_cast<int>(k);
    return h;
}

}  // namespace cosimplex
