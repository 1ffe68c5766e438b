#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cosimplex/cosab.hpp"
#include "cosimplex/cosimp_groupoid.hpp"
#include "cosimplex/postnikov.hpp"

namespace cosimplex::json_io {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Primitives

inline void require(bool ok, const std::string& what) {
    if (!ok) throw ParseError(what);
}

inline const json& field(const json& j, const std::string& key) {
    require(j.is_object(), "expected an object holding \"" + key + "\"");
    auto it = j.find(key);
    require(it != j.end(), "missing field \"" + key + "\"");
    return *it;
}

inline Int read_int(const json& j) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    throw ParseError("expected an integer");
}

/// Integers that fit in 64 bits are numbers, larger ones decimal strings.
inline json write_int(const Int& x) {
    if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
        return json(static_cast<long long>(x));
    return json(x.str());
}

inline int read_small(const json& j, const std::string& what) {
    require(j.is_number_integer(), what + " must be an integer");
    long long v = j.get<long long>();
    require(v >= 0 && v <= 1'000'000, what + " out of range");
    return static_cast<int>(v);
}

/// "(a,b)" -> (a, b).
inline std::pair<int, int> read_key(const std::string& key) {
    int a = 0, b = 0;
    char tail = 0;
    require(std::sscanf(key.c_str(), "(%d,%d%c", &a, &b, &tail) == 3 && tail == ')', "bad index key " + key);
    return {a, b};
}

inline std::string write_key(int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

inline std::map<std::string, int> label_index(const std::vector<std::string>& labels, const std::string& what) {
    std::map<std::string, int> out;
    for (std::size_t i = 0; i < labels.size(); ++i)
        require(out.emplace(labels[i], int(i)).second, "duplicate " + what + " label " + labels[i]);
    return out;
}

inline std::vector<std::string> read_labels(const json& j, const std::string& what) {
    require(j.is_array(), what + " must be a list of labels");
    std::vector<std::string> out;
    for (const auto& x : j) {
        require(x.is_string(), what + " labels must be strings");
        out.push_back(x.get<std::string>());
    }
    return out;
}

/// {"x": "y", ...} over the given label sets, total on the source.
inline IndexMap read_function(const json& j, const std::vector<std::string>& from, const std::vector<std::string>& to,
                              const std::string& what) {
    require(j.is_object(), what + " must map labels to labels");
    auto src = label_index(from, what), tgt = label_index(to, what);
    IndexMap f(from.size(), -1);
    for (auto it = j.begin(); it != j.end(); ++it) {
        auto s = src.find(it.key());
        require(s != src.end(), what + ": unknown source label " + it.key());
        require(it.value().is_string(), what + ": image of " + it.key() + " must be a label");
        auto t = tgt.find(it.value().get<std::string>());
        require(t != tgt.end(), what + ": unknown target label " + it.value().get<std::string>());
        f[s->second] = t->second;
    }
    for (std::size_t x = 0; x < f.size(); ++x) require(f[x] >= 0, what + ": no image for " + from[x]);
    return f;
}

inline json write_function(const IndexMap& f, const std::vector<std::string>& from, const std::vector<std::string>& to) {
    json j = json::object();
    for (std::size_t x = 0; x < f.size(); ++x) j[from[x]] = to[f[x]];
    return j;
}

// ---------------------------------------------------------------------------
// Abelian groups

inline FGAbGroup read_group(const json& j) {
    int g = read_small(field(j, "generators"), "generators");
    std::vector<IntVector> cols;
    if (j.contains("relations")) {
        const json& rel = j["relations"];
        require(rel.is_array(), "relations must be a list of columns");
        for (const auto& c : rel) {
            require(c.is_array() && c.size() == std::size_t(g), "each relation needs one entry per generator");
            IntVector v;
            for (const auto& x : c) v.push_back(read_int(x));
            cols.push_back(v);
        }
    }
    return FGAbGroup(std::size_t(g), Matrix::from_columns(std::size_t(g), cols));
}

inline json write_group(const FGAbGroup& G) {
    json rel = json::array();
    for (std::size_t c = 0; c < G.relations().cols(); ++c) {
        json col = json::array();
        for (std::size_t r = 0; r < G.generators(); ++r) col.push_back(write_int(G.relations()(r, c)));
        rel.push_back(col);
    }
    return {{"generators", G.generators()}, {"relations", rel}};
}

inline AbHom read_hom(const json& j, const FGAbGroup& source, const FGAbGroup& target) {
    const json& m = field(j, "matrix");
    require(m.is_array() && m.size() == target.generators(), "matrix needs one row per target generator");
    Matrix A(target.generators(), source.generators());
    for (std::size_t r = 0; r < A.rows(); ++r) {
        require(m[r].is_array() && m[r].size() == A.cols(), "matrix needs one column per source generator");
        for (std::size_t c = 0; c < A.cols(); ++c) A(r, c) = read_int(m[r][c]);
    }
    return AbHom(source, target, A);
}

inline json write_hom(const AbHom& f) {
    json rows = json::array();
    for (std::size_t r = 0; r < f.matrix().rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < f.matrix().cols(); ++c) row.push_back(write_int(f.matrix()(r, c)));
        rows.push_back(row);
    }
    return {{"matrix", rows}};
}

inline json write_invariants(const AbInvariants& a) { return a.str(); }

// ---------------------------------------------------------------------------
// Categories and groupoids

/// {"objects", "morphisms": [{"name","src","tgt"}], "identities": {x: f}, "comp": {"(f,g)": h}}.
/// comp(f, g) is "f then g"; pairs involving an identity may be omitted.
inline FinCategory read_category(const json& j) {
    auto objects = read_labels(field(j, "objects"), "objects");
    auto obj = label_index(objects, "object");
    const json& ms = field(j, "morphisms");
    require(ms.is_array(), "morphisms must be a list");
    std::vector<std::string> names;
    IndexMap src, tgt;
    for (const auto& m : ms) {
        names.push_back(field(m, "name").get<std::string>());
        auto s = obj.find(field(m, "src").get<std::string>());
        auto t = obj.find(field(m, "tgt").get<std::string>());
        require(s != obj.end() && t != obj.end(), "morphism " + names.back() + " has an unknown endpoint");
        src.push_back(s->second);
        tgt.push_back(t->second);
    }
    auto mor = label_index(names, "morphism");
    IndexMap id = read_function(field(j, "identities"), objects, names, "identities");
    const std::size_t m = names.size();
    std::vector<int> table(m * m, -1);
    std::vector<char> is_id(m, 0);
    for (int f : id) is_id[f] = 1;
    for (std::size_t f = 0; f < m; ++f)
        for (std::size_t g = 0; g < m; ++g) {
            if (tgt[f] != src[g]) continue;
            if (is_id[f]) table[f * m + g] = int(g);
            else if (is_id[g]) table[f * m + g] = int(f);
        }
    if (j.contains("comp")) {
        const json& c = j["comp"];
        require(c.is_object(), "comp must be an object");
        for (auto it = c.begin(); it != c.end(); ++it) {
            const std::string& key = it.key();
            require(key.size() >= 5 && key.front() == '(' && key.back() == ')', "bad composition key " + key);
            // labels may contain commas: split where both halves are known
            auto f = mor.end(), g = mor.end();
            int splits = 0;
            for (auto comma = key.find(','); comma != std::string::npos; comma = key.find(',', comma + 1)) {
                auto a = mor.find(key.substr(1, comma - 1)), b = mor.find(key.substr(comma + 1, key.size() - comma - 2));
                if (a != mor.end() && b != mor.end()) f = a, g = b, ++splits;
            }
            require(splits > 0, "composition key names an unknown morphism: " + key);
            require(splits == 1, "ambiguous composition key " + key);
            auto h = mor.find(it.value().get<std::string>());
            require(h != mor.end(), "composite of " + key + " is unknown");
            table[std::size_t(f->second) * m + g->second] = h->second;
        }
    }
    for (std::size_t f = 0; f < m; ++f)
        for (std::size_t g = 0; g < m; ++g)
            require(tgt[f] != src[g] || table[f * m + g] >= 0, "missing composite (" + names[f] + "," + names[g] + ")");
    return FinCategory(objects, names, src, tgt, id, table);
}

inline FinGroupoid read_groupoid(const json& j) {
    FinCategory C = read_category(j);
    if (!j.contains("inv")) return FinGroupoid::from_category(std::move(C));
    IndexMap inv = read_function(j["inv"], C.morphism_labels(), C.morphism_labels(), "inv");
    return FinGroupoid(std::move(C), inv);
}

inline json write_category(const FinCategory& C) {
    json ms = json::array();
    for (std::size_t f = 0; f < C.num_morphisms(); ++f)
        ms.push_back({{"name", C.morphism_label(int(f))}, {"src", C.object_label(C.src(int(f)))}, {"tgt", C.object_label(C.tgt(int(f)))}});
    json comp = json::object();
    for (std::size_t f = 0; f < C.num_morphisms(); ++f)
        for (std::size_t g = 0; g < C.num_morphisms(); ++g)
            if (C.tgt(int(f)) == C.src(int(g)) && !C.is_identity(int(f)) && !C.is_identity(int(g)))
                comp["(" + C.morphism_label(int(f)) + "," + C.morphism_label(int(g)) + ")"] = C.morphism_label(C.comp(int(f), int(g)));
    return {{"objects", C.object_labels()}, {"morphisms", ms},
            {"identities", write_function(C.id_map(), C.object_labels(), C.morphism_labels())}, {"comp", comp}};
}

inline json write_groupoid(const FinGroupoid& G) {
    json j = write_category(G);
    IndexMap inv;
    for (std::size_t f = 0; f < G.num_morphisms(); ++f) inv.push_back(G.inv(int(f)));
    j["inv"] = write_function(inv, G.morphism_labels(), G.morphism_labels());
    return j;
}

// ---------------------------------------------------------------------------
// Graded objects. Simplicial tables "d"/"s" are keyed "(m,i)" with d_i : X_m -> X_{m-1} and
// s_i : X_m -> X_{m+1}; cosimplicial tables "d^i"/"s^i" are keyed "(n,i)" with
// d^i : X^{n-1} -> X^n and s^i : X^{n+1} -> X^n.

inline int read_trunc(const json& j, std::size_t levels) {
    require(levels >= 1, "at least one level");
    if (j.contains("trunc")) require(read_small(j["trunc"], "trunc") + 1 == int(levels), "trunc does not match the level count");
    return int(levels) - 1;
}

/// Table entries per (level, i), shaped as the constructors expect.
template <class Read>
auto read_table(const json& j, const std::string& key, int top, bool faces, Read&& read) {
    using T = decltype(read(0, 0, json()));
    std::vector<std::vector<T>> out(top + 1);
    std::vector<std::vector<char>> seen(top + 1);
    for (int n = 0; n <= top; ++n) {
        std::size_t count = faces ? (n >= 1 ? n + 1 : 0) : (n + 1 <= top ? n + 1 : 0);
        out[n].resize(count);
        seen[n].assign(count, 0);
    }
    const json& t = field(j, key);
    require(t.is_object(), key + " must be an object");
    for (auto it = t.begin(); it != t.end(); ++it) {
        auto [n, i] = read_key(it.key());
        require(n >= 0 && n <= top && i >= 0 && std::size_t(i) < out[n].size(), key + " has no slot " + it.key());
        out[n][i] = read(n, i, it.value());
        seen[n][i] = 1;
    }
    for (int n = 0; n <= top; ++n)
        for (std::size_t i = 0; i < seen[n].size(); ++i) require(seen[n][i], key + " is missing " + write_key(n, int(i)));
    return out;
}

inline std::vector<std::vector<std::string>> read_level_labels(const json& j) {
    const json& lv = field(j, "levels");
    require(lv.is_array(), "levels must be a list");
    std::vector<std::vector<std::string>> out;
    for (const auto& l : lv) out.push_back(read_labels(l, "level"));
    return out;
}

inline TruncSimpSet read_simplicial_set(const json& j) {
    auto L = read_level_labels(j);
    int M = read_trunc(j, L.size());
    auto d = read_table(j, "d", M, true, [&](int m, int i, const json& v) {
        return read_function(v, L[m], L[m - 1], "d" + write_key(m, i));
    });
    auto s = read_table(j, "s", M, false, [&](int m, int i, const json& v) {
        return read_function(v, L[m], L[m + 1], "s" + write_key(m, i));
    });
    return TruncSimpSet(L, d, s);
}

inline json write_simplicial_set(const TruncSimpSet& X) {
    json d = json::object(), s = json::object();
    for (int m = 1; m <= X.trunc(); ++m)
        for (int i = 0; i <= m; ++i) d[write_key(m, i)] = write_function(X.face(m, i), X.labels(m), X.labels(m - 1));
    for (int m = 0; m + 1 <= X.trunc(); ++m)
        for (int i = 0; i <= m; ++i) s[write_key(m, i)] = write_function(X.degen(m, i), X.labels(m), X.labels(m + 1));
    return {{"trunc", X.trunc()}, {"levels", X.all_labels()}, {"d", d}, {"s", s}};
}

inline SimplicialMap read_simplicial_map(const json& j, const TruncSimpSet& X, const TruncSimpSet& Y) {
    const json& lv = field(j, "levels");
    require(lv.is_array() && int(lv.size()) == X.trunc() + 1, "simplicial map needs one table per level");
    SimplicialMap f;
    for (int m = 0; m <= X.trunc(); ++m) f.levels.push_back(read_function(lv[m], X.labels(m), Y.labels(m), "map level " + std::to_string(m)));
    if (auto bad = simplicial_map_violation(X, Y, f)) throw ValidationError(*bad);
    return f;
}

inline json write_simplicial_map(const SimplicialMap& f, const TruncSimpSet& X, const TruncSimpSet& Y) {
    json lv = json::array();
    for (int m = 0; m <= X.trunc(); ++m) lv.push_back(write_function(f.levels[m], X.labels(m), Y.labels(m)));
    return {{"levels", lv}};
}

inline TruncCosimpSet read_cosimplicial_set(const json& j) {
    auto L = read_level_labels(j);
    int N = read_trunc(j, L.size());
    auto d = read_table(j, "d^i", N, true, [&](int n, int i, const json& v) {
        return read_function(v, L[n - 1], L[n], "d^i" + write_key(n, i));
    });
    auto s = read_table(j, "s^i", N, false, [&](int n, int i, const json& v) {
        return read_function(v, L[n + 1], L[n], "s^i" + write_key(n, i));
    });
    return TruncCosimpSet(L, d, s);
}

inline json write_cosimplicial_set(const TruncCosimpSet& X) {
    json d = json::object(), s = json::object();
    for (int n = 1; n <= X.trunc(); ++n)
        for (int i = 0; i <= n; ++i) d[write_key(n, i)] = write_function(X.coface(n, i), X.labels(n - 1), X.labels(n));
    for (int n = 0; n + 1 <= X.trunc(); ++n)
        for (int i = 0; i <= n; ++i) s[write_key(n, i)] = write_function(X.codeg(n, i), X.labels(n + 1), X.labels(n));
    return {{"trunc", X.trunc()}, {"levels", X.all_labels()}, {"d^i", d}, {"s^i", s}};
}

inline std::vector<FGAbGroup> read_groups(const json& j) {
    const json& lv = field(j, "levels");
    require(lv.is_array(), "levels must be a list");
    std::vector<FGAbGroup> out;
    for (const auto& g : lv) out.push_back(read_group(g));
    return out;
}

inline TruncCosimpAb read_cosimplicial_ab(const json& j) {
    auto G = read_groups(j);
    int N = read_trunc(j, G.size());
    auto d = read_table(j, "d^i", N, true, [&](int n, int, const json& v) { return read_hom(v, G[n - 1], G[n]); });
    auto s = read_table(j, "s^i", N, false, [&](int n, int, const json& v) { return read_hom(v, G[n + 1], G[n]); });
    return TruncCosimpAb(G, d, s);
}

inline json write_cosimplicial_ab(const TruncCosimpAb& A) {
    json lv = json::array(), d = json::object(), s = json::object();
    for (int n = 0; n <= A.trunc(); ++n) lv.push_back(write_group(A.level(n)));
    for (int n = 1; n <= A.trunc(); ++n)
        for (int i = 0; i <= n; ++i) d[write_key(n, i)] = write_hom(A.coface(n, i));
    for (int n = 0; n + 1 <= A.trunc(); ++n)
        for (int i = 0; i <= n; ++i) s[write_key(n, i)] = write_hom(A.codeg(n, i));
    return {{"trunc", A.trunc()}, {"levels", lv}, {"d^i", d}, {"s^i", s}};
}

inline TruncSimpAb read_simplicial_ab(const json& j) {
    auto G = read_groups(j);
    int M = read_trunc(j, G.size());
    auto d = read_table(j, "d", M, true, [&](int m, int, const json& v) { return read_hom(v, G[m], G[m - 1]); });
    auto s = read_table(j, "s", M, false, [&](int m, int, const json& v) { return read_hom(v, G[m], G[m + 1]); });
    return TruncSimpAb(G, d, s);
}

inline json write_simplicial_ab(const TruncSimpAb& A) {
    json lv = json::array(), d = json::object(), s = json::object();
    for (int m = 0; m <= A.trunc(); ++m) lv.push_back(write_group(A.level(m)));
    for (int m = 1; m <= A.trunc(); ++m)
        for (int i = 0; i <= m; ++i) d[write_key(m, i)] = write_hom(A.face(m, i));
    for (int m = 0; m + 1 <= A.trunc(); ++m)
        for (int i = 0; i <= m; ++i) s[write_key(m, i)] = write_hom(A.degen(m, i));
    return {{"trunc", A.trunc()}, {"levels", lv}, {"d", d}, {"s", s}};
}

inline FunctorData read_functor(const json& j, const FinGroupoid& A, const FinGroupoid& B, const std::string& what) {
    FunctorData F{read_function(field(j, "objects"), A.object_labels(), B.object_labels(), what + " objects"),
                  read_function(field(j, "morphisms"), A.morphism_labels(), B.morphism_labels(), what + " morphisms")};
    if (auto bad = functor_violation(A, B, F)) throw ValidationError(what + " is a functor", *bad);
    return F;
}

inline json write_functor(const FunctorData& F, const FinGroupoid& A, const FinGroupoid& B) {
    return {{"objects", write_function(F.obj, A.object_labels(), B.object_labels())},
            {"morphisms", write_function(F.mor, A.morphism_labels(), B.morphism_labels())}};
}

inline TruncCosimpGpd read_cosimplicial_gpd(const json& j) {
    const json& lv = field(j, "levels");
    require(lv.is_array(), "levels must be a list");
    std::vector<GroupoidPtr> G;
    for (const auto& g : lv) G.push_back(std::make_shared<const FinGroupoid>(read_groupoid(g)));
    int N = read_trunc(j, G.size());
    auto d = read_table(j, "d^i", N, true, [&](int n, int i, const json& v) {
        return read_functor(v, *G[n - 1], *G[n], "d^i" + write_key(n, i));
    });
    auto s = read_table(j, "s^i", N, false, [&](int n, int i, const json& v) {
        return read_functor(v, *G[n + 1], *G[n], "s^i" + write_key(n, i));
    });
    return TruncCosimpGpd(G, d, s);
}

inline json write_cosimplicial_gpd(const TruncCosimpGpd& H) {
    json lv = json::array(), d = json::object(), s = json::object();
    for (int n = 0; n <= H.trunc(); ++n) lv.push_back(write_groupoid(H.level(n)));
    for (int n = 1; n <= H.trunc(); ++n)
        for (int i = 0; i <= n; ++i) d[write_key(n, i)] = write_functor(H.coface(n, i), H.level(n - 1), H.level(n));
    for (int n = 0; n + 1 <= H.trunc(); ++n)
        for (int i = 0; i <= n; ++i) s[write_key(n, i)] = write_functor(H.codeg(n, i), H.level(n + 1), H.level(n));
    return {{"trunc", H.trunc()}, {"levels", lv}, {"d^i", d}, {"s^i", s}};
}

// ---------------------------------------------------------------------------
// Diagram bundles for the Eilenberg-Mac Lane model

struct DiagramBundle {
    SSetDiagram U, V, F;
    DiagramMap inclusion, comparison;
    int n = 2;
};

/// {"objects": {x: simplicial set}, "arrows": {f: simplicial map}}; identity arrows may be omitted.
inline SSetDiagram read_diagram(const json& j, const FinCategory& I) {
    SSetDiagram D{I, {}, {}};
    const json& obs = field(j, "objects");
    for (std::size_t x = 0; x < I.num_objects(); ++x) D.objects.push_back(read_simplicial_set(field(obs, I.object_label(int(x)))));
    const json empty = json::object();
    const json& ars = j.contains("arrows") ? j["arrows"] : empty;
    for (std::size_t f = 0; f < I.num_morphisms(); ++f) {
        const auto& X = D.objects[I.src(int(f))];
        const auto& Y = D.objects[I.tgt(int(f))];
        if (ars.contains(I.morphism_label(int(f)))) D.arrows.push_back(read_simplicial_map(ars[I.morphism_label(int(f))], X, Y));
        else if (I.is_identity(int(f))) D.arrows.push_back(identity_map(X));
        else throw ParseError("diagram is missing arrow " + I.morphism_label(int(f)));
    }
    if (auto bad = diagram_violation(D)) throw ValidationError("diagram", *bad);
    return D;
}

inline json write_diagram(const SSetDiagram& D) {
    json obs = json::object(), ars = json::object();
    for (std::size_t x = 0; x < D.objects.size(); ++x) obs[D.shape.object_label(int(x))] = write_simplicial_set(D.objects[x]);
    for (std::size_t f = 0; f < D.arrows.size(); ++f)
        if (!D.shape.is_identity(int(f)))
            ars[D.shape.morphism_label(int(f))] =
                write_simplicial_map(D.arrows[f], D.objects[D.shape.src(int(f))], D.objects[D.shape.tgt(int(f))]);
    return {{"objects", obs}, {"arrows", ars}};
}

inline DiagramMap read_diagram_map(const json& j, const SSetDiagram& D, const SSetDiagram& E) {
    DiagramMap f;
    for (std::size_t x = 0; x < D.objects.size(); ++x)
        f.push_back(read_simplicial_map(field(j, D.shape.object_label(int(x))), D.objects[x], E.objects[x]));
    return f;
}

inline json write_diagram_map(const DiagramMap& f, const SSetDiagram& D, const SSetDiagram& E) {
    json j = json::object();
    for (std::size_t x = 0; x < f.size(); ++x) j[D.shape.object_label(int(x))] = write_simplicial_map(f[x], D.objects[x], E.objects[x]);
    return j;
}

inline DiagramBundle read_diagram_bundle(const json& j) {
    FinCategory I = read_category(field(j, "shape"));
    DiagramBundle b{read_diagram(field(j, "U"), I), read_diagram(field(j, "V"), I), read_diagram(field(j, "F"), I), {}, {}, 2};
    b.inclusion = read_diagram_map(field(j, "inclusion"), b.U, b.V);
    b.comparison = read_diagram_map(field(j, "comparison"), b.V, b.F);
    if (auto bad = diagram_map_violation(b.U, b.V, b.inclusion)) throw ValidationError("inclusion is natural", *bad);
    if (auto bad = diagram_map_violation(b.V, b.F, b.comparison)) throw ValidationError("comparison is natural", *bad);
    if (j.contains("n")) b.n = read_small(j["n"], "n");
    return b;
}

inline json write_diagram_bundle(const DiagramBundle& b) {
    return {{"shape", write_category(b.V.shape)},
            {"U", write_diagram(b.U)},
            {"V", write_diagram(b.V)},
            {"F", write_diagram(b.F)},
            {"inclusion", write_diagram_map(b.inclusion, b.U, b.V)},
            {"comparison", write_diagram_map(b.comparison, b.V, b.F)},
            {"n", b.n}};
}

// ---------------------------------------------------------------------------
// Bundles: {"kind": ..., "name": ..., "payload": ...}

inline const std::vector<std::string>& bundle_kinds() {
    static const std::vector<std::string> k{"cosimplicial-set", "cosimplicial-ab", "cosimplicial-gpd",
                                            "simplicial-set",   "simplicial-ab",   "diagram-bundle"};
    return k;
}

struct Bundle {
    std::string kind;
    std::string name;
    json payload;
};

inline Bundle read_bundle(const json& j) {
    Bundle b;
    b.kind = field(j, "kind").get<std::string>();
    bool known = false;
    for (const auto& k : bundle_kinds()) known = known || k == b.kind;
    require(known, "unknown bundle kind " + b.kind);
    b.name = j.contains("name") ? j["name"].get<std::string>() : std::string();
    b.payload = field(j, "payload");
    return b;
}

inline Bundle parse_bundle(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    try {
        return read_bundle(j);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad bundle: ") + e.what());
    }
}

inline json make_bundle(const std::string& kind, const std::string& name, json payload) {
    return {{"kind", kind}, {"name", name}, {"payload", std::move(payload)}};
}

/// Builds the payload with its validating constructor; nlohmann type errors become parse errors.
template <class Read>
auto load(const Bundle& b, const std::string& kind, Read&& read) {
    if (b.kind != kind) throw ParseError("expected a " + kind + " bundle, got " + b.kind);
    try {
        return read(b.payload);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad payload: ") + e.what());
    }
}

}  // namespace cosimplex::json_io
