#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cosimplex/abelian.hpp"
#include "cosimplex/groupoid.hpp"
#include "cosimplex/ordinal.hpp"
#include "cosimplex/simplicial.hpp"

namespace cosimplex {

/// Non-negatively graded chain complex; the existing type already has the right shape.
using NNChainComplex = ChainComplex;

/// The first top + 1 degrees of C.
inline ChainComplex truncate_complex(const ChainComplex& C, int top) {
    std::vector<FGAbGroup> groups;
    std::vector<AbHom> bd;
    for (int m = 0; m <= top; ++m) groups.push_back(C.group(m));
    for (int m = 1; m <= top; ++m) bd.push_back(C.boundary(m));
    return ChainComplex(groups, bd);
}

inline ChainMap identity_chain_map(const ChainComplex& C) {
    ChainMap f;
    for (int m = 0; m <= C.top(); ++m) f.components.push_back(AbHom::identity(C.group(m)));
    return f;
}

/// g o f, degreewise over the degrees of the source of f.
inline ChainMap compose(const ChainMap& g, const ChainMap& f) {
    ChainMap h;
    for (std::size_t m = 0; m < f.components.size(); ++m) {
        const AbHom& fm = f.components[m];
        if (m < g.components.size()) h.components.push_back(compose(g.components[m], fm));
        else h.components.push_back(AbHom::zero(fm.source(), FGAbGroup::zero()));
    }
    return h;
}

// ---------------------------------------------------------------------------
// Dold-Kan

struct NormalizedDK {
    ChainComplex complex;
    std::vector<Subgroup> parts;  // parts[m] <= A_m
};

/// N_m = intersection of ker d_i for i >= 1, differential d_0, with the inclusions kept.
inline NormalizedDK normalized_dk_data(const TruncSimpAb& A) {
    NormalizedDK out;
    out.parts.push_back(subgroup_from_lattice(A.level(0), Matrix::identity(A.level(0).generators())));
    for (int m = 1; m <= A.trunc(); ++m) {
        std::vector<AbHom> faces;
        for (int i = 1; i <= m; ++i) faces.push_back(A.face(m, i));
        out.parts.push_back(kernel(stack_homs(A.level(m), faces)));
    }
    std::vector<FGAbGroup> groups;
    std::vector<AbHom> bd;
    for (const auto& S : out.parts) groups.push_back(S.group);
    for (int m = 1; m <= A.trunc(); ++m) bd.push_back(restrict_hom(A.face(m, 0), out.parts[m], out.parts[m - 1]));
    out.complex = ChainComplex(groups, bd);
    return out;
}

inline NNChainComplex normalize_dk(const TruncSimpAb& A) { return normalized_dk_data(A).complex; }

struct EpiMono {
    OrdinalMap epi;
    OrdinalMap mono;
};

/// f = mono o epi through the image of f.
inline EpiMono epi_mono(const OrdinalMap& f) {
    std::vector<int> image;
    for (int v : f.values)
        if (image.empty() || image.back() != v) image.push_back(v);
    EpiMono out{{static_cast<int>(image.size()) - 1, {}}, {f.cod, image}};
    int r = 0;
    for (std::size_t j = 0; j < f.values.size(); ++j) {
        if (j > 0 && f.values[j] != f.values[j - 1]) ++r;
        out.epi.values.push_back(r);
    }
    return out;
}

/// Summands of Gamma(C)_m: one copy of C_k per surjection [m] -> [k].
class GammaLayout {
public:
    struct Summand {
        OrdinalMap sigma;
        int offset;
    };

    GammaLayout(const ChainComplex& C, int M) : C_(&C) {
        for (int m = 0; m <= M; ++m) {
            std::vector<Summand> row;
            std::map<OrdinalMap, int> idx;
            int off = 0;
            for (int k = 0; k <= std::min(m, C.top()); ++k)
                for (auto& s : surjections(m, k)) {
                    idx[s] = static_cast<int>(row.size());
                    row.push_back({s, off});
                    off += static_cast<int>(C.group(k).generators());
                }
            summands_.push_back(std::move(row));
            index_.push_back(std::move(idx));
            sizes_.push_back(off);
        }
    }

    int trunc() const { return static_cast<int>(summands_.size()) - 1; }
    const std::vector<Summand>& summands(int m) const { return summands_.at(m); }
    std::size_t size(int m) const { return static_cast<std::size_t>(sizes_.at(m)); }
    std::optional<int> offset(int m, const OrdinalMap& sigma) const {
        auto it = index_.at(m).find(sigma);
        if (it == index_.at(m).end()) return std::nullopt;
        return summands_[m][it->second].offset;
    }

    FGAbGroup group(int m) const {
        std::vector<FGAbGroup> parts;
        for (const auto& s : summands_.at(m)) parts.push_back(C_->group(s.sigma.cod));
        return direct_sum(parts);
    }

private:
    const ChainComplex* C_;
    std::vector<std::vector<Summand>> summands_;
    std::vector<std::map<OrdinalMap, int>> index_;
    std::vector<int> sizes_;
};

namespace detail {

inline void add_block(Matrix& out, std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out(r0 + i, c0 + j) += b(i, j);
}

/// theta^* : Gamma_m -> Gamma_{m'} for theta : [m'] -> [m]. On the summand of sigma,
/// factor sigma theta = delta tau; delta = id keeps x, delta = d^0 applies the boundary,
/// anything else kills x.
inline Matrix gamma_operator(const ChainComplex& C, const GammaLayout& L, const OrdinalMap& theta) {
    const int m = theta.cod, mp = theta.dom();
    Matrix out(L.size(mp), L.size(m));
    for (const auto& s : L.summands(m)) {
        const int k = s.sigma.cod;
        auto [tau, delta] = epi_mono(compose(s.sigma, theta));
        if (delta.is_identity()) {
            detail::add_block(out, *L.offset(mp, tau), s.offset, Matrix::identity(C.group(k).generators()));
        } else if (tau.cod == k - 1 && delta == coface_map(k, 0)) {
            detail::add_block(out, *L.offset(mp, tau), s.offset, C.boundary(k).matrix());
        }
    }
    return out;
}

}  // namespace detail

/// Gamma(C) truncated at M.
inline TruncSimpAb gamma_dk(const NNChainComplex& C, int M) {
    GammaLayout L(C, M);
    std::vector<FGAbGroup> levels;
    for (int m = 0; m <= M; ++m) levels.push_back(L.group(m));
    std::vector<std::vector<AbHom>> faces(M + 1), degens(M + 1);
    for (int m = 1; m <= M; ++m)
        for (int i = 0; i <= m; ++i)
            faces[m].push_back(AbHom(levels[m], levels[m - 1], detail::gamma_operator(C, L, coface_map(m, i))));
    for (int m = 0; m + 1 <= M; ++m)
        for (int i = 0; i <= m; ++i)
            degens[m].push_back(AbHom(levels[m], levels[m + 1], detail::gamma_operator(C, L, codegeneracy_map(m, i))));
    return TruncSimpAb(levels, faces, degens);
}

/// Gamma(f): f_k on every summand of shape k.
inline SimpAbMap gamma_dk_map(const ChainComplex& C, const ChainComplex& D, const ChainMap& f, int M) {
    GammaLayout LC(C, M), LD(D, M);
    SimpAbMap out;
    for (int m = 0; m <= M; ++m) {
        Matrix A(LD.size(m), LC.size(m));
        for (const auto& s : LC.summands(m)) {
            auto t = LD.offset(m, s.sigma);
            if (t) detail::add_block(A, *t, s.offset, f.components.at(s.sigma.cod).matrix());
        }
        out.levels.push_back(AbHom(LC.group(m), LD.group(m), A));
    }
    return out;
}

struct DoldKanCounit {
    TruncSimpAb gamma;  // Gamma(N A)
    SimpAbMap map;      // Gamma(N A) -> A, levelwise isomorphisms
};

/// (sigma, x) |-> sigma^* x.
inline DoldKanCounit dk_counit(const TruncSimpAb& A) {
    const int M = A.trunc();
    auto N = normalized_dk_data(A);
    GammaLayout L(N.complex, M);
    DoldKanCounit out{gamma_dk(N.complex, M), {}};
    for (int m = 0; m <= M; ++m) {
        Matrix E(A.level(m).generators(), L.size(m));
        for (const auto& s : L.summands(m))
            detail::add_block(E, 0, s.offset, A.op(s.sigma).matrix() * N.parts[s.sigma.cod].inclusion.matrix());
        out.map.levels.push_back(AbHom(out.gamma.level(m), A.level(m), E));
    }
    return out;
}

struct DoldKanUnit {
    ChainComplex normalized;  // N(Gamma C)
    ChainMap map;             // C -> N(Gamma C), degreewise isomorphisms
};

/// C_m onto the summand of id_[m].
inline DoldKanUnit dk_unit(const ChainComplex& C, int M) {
    ChainComplex Ct = truncate_complex(C, M);
    auto N = normalized_dk_data(gamma_dk(Ct, M));
    GammaLayout L(Ct, M);
    DoldKanUnit out{N.complex, {}};
    for (int m = 0; m <= M; ++m) {
        Matrix inc(L.size(m), Ct.group(m).generators());
        if (auto off = L.offset(m, ordinal_identity(m)))
            detail::add_block(inc, *off, 0, Matrix::identity(Ct.group(m).generators()));
        LatticeSolver solver(N.parts[m].lattice);
        out.map.components.push_back(AbHom(Ct.group(m), N.parts[m].group, lattice_coordinates(solver, inc)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Postnikov sections

struct GoodTruncation {
    ChainComplex complex;  // top n
    ChainMap projection;   // C -> complex
};

/// Degrees below n unchanged, C_n / im d_{n+1} in degree n, zero above.
inline GoodTruncation good_truncation(const ChainComplex& C, int n) {
    if (n < 0) throw DegreeRangeError("good truncation below degree 0");
    auto [top, proj] = cokernel(C.boundary(n + 1));
    std::vector<FGAbGroup> groups;
    std::vector<AbHom> bd;
    for (int m = 0; m < n; ++m) groups.push_back(C.group(m));
    groups.push_back(top);
    for (int m = 1; m < n; ++m) bd.push_back(C.boundary(m));
    if (n >= 1) bd.push_back(AbHom(top, C.group(n - 1), C.boundary(n).matrix()));
    GoodTruncation out{ChainComplex(groups, bd), {}};
    for (int m = 0; m <= C.top(); ++m) {
        if (m < n) out.projection.components.push_back(AbHom::identity(C.group(m)));
        else if (m == n) out.projection.components.push_back(proj);
        else out.projection.components.push_back(AbHom::zero(C.group(m), FGAbGroup::zero()));
    }
    return out;
}

struct PostnikovSection {
    TruncSimpAb section;    // P_n A
    SimpAbMap map;          // A -> P_n A
    ChainComplex chains;    // good truncation of N A at n
    int window = 0;         // homology is meaningful in degrees 0..window
};

inline PostnikovSection postnikov_section_ab(const TruncSimpAb& A, int n) {
    const int M = A.trunc();
    if (n < 0 || n > M - 1) throw DegreeRangeError("postnikov section needs 0 <= n <= trunc - 1");
    auto eps = dk_counit(A);
    auto N = normalize_dk(A);
    auto T = good_truncation(N, n);
    PostnikovSection out{gamma_dk(T.complex, M), {}, T.complex, M - 1};
    SimpAbMap proj = gamma_dk_map(N, T.complex, T.projection, M);
    for (int m = 0; m <= M; ++m) out.map.levels.push_back(compose(proj.levels[m], inverse(eps.map.levels[m])));
    return out;
}

/// First degree where the section disagrees with the expected homology of P_n A.
inline std::optional<std::string> postnikov_window_violation(const TruncSimpAb& A, const PostnikovSection& P, int n) {
    ChainComplex CA = moore_chain_complex(A), CP = moore_chain_complex(P.section);
    ChainMap f = moore_chain_map(P.map);
    for (int m = 0; m <= P.window; ++m) {
        if (m <= n) {
            if (!is_isomorphism(f.induced_on_homology(CA, CP, m)))
                return "A -> P_n A is not a homology isomorphism in degree " + std::to_string(m);
        } else if (!CP.homology(m).is_trivial()) {
            return "P_n A has homology in degree " + std::to_string(m);
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// k-invariant

/// Mapping cone of f: C -> D: Cone_m = C_{m-1} + D_m, d(x, y) = (-dx, f x + dy).
inline ChainComplex mapping_cone(const ChainComplex& C, const ChainComplex& D, const ChainMap& f) {
    const int top = std::max(C.top() + 1, D.top());
    std::vector<FGAbGroup> groups;
    std::vector<AbHom> bd;
    for (int m = 0; m <= top; ++m) groups.push_back(direct_sum(m >= 1 ? C.group(m - 1) : FGAbGroup::zero(), D.group(m)));
    for (int m = 1; m <= top; ++m) {
        const std::size_t c1 = C.group(m - 1).generators(), d0 = D.group(m).generators();
        const std::size_t c2 = m >= 2 ? C.group(m - 2).generators() : 0, d1 = D.group(m - 1).generators();
        Matrix B(c2 + d1, c1 + d0);
        if (m >= 2) detail::add_block(B, 0, 0, -C.boundary(m - 1).matrix());
        if (m - 1 <= C.top() && m - 1 < static_cast<int>(f.components.size()))
            detail::add_block(B, c2, 0, f.components[m - 1].matrix());
        detail::add_block(B, c2, c1, D.boundary(m).matrix());
        bd.push_back(AbHom(groups[m], groups[m - 1], B));
    }
    return ChainComplex(groups, bd);
}

/// im f = ker g at the middle group of X -f-> Y -g-> Z.
inline bool is_exact_at(const AbHom& f, const AbHom& g) {
    if (!is_zero_hom(compose(g, f))) return false;
    Matrix K = kernel(g).lattice;
    for (std::size_t j = 0; j < K.cols(); ++j)
        if (!in_image(f, K.column(j))) return false;
    return true;
}

struct KInvariantReport {
    int n = 0;
    int window = 0;               // the sequence is checked in degrees 0..window
    ChainComplex Pn, Pn1, cone, target;
    ChainMap q, k;                // P_n -> P_{n-1}, P_{n-1} -> P_{n+1}(cofibre)
    std::optional<TruncSimpAb> Pn_simp, Pn1_simp, target_simp;
    std::optional<SimpAbMap> q_simp, k_simp;
    AbInvariants fibre_class;     // H_n(P_n)
    AbInvariants top_class;       // H_{n+1}(target)
    std::vector<std::string> exact_positions;
    std::optional<std::string> failure;

    bool top_matches() const { return fibre_class == top_class; }
    bool pass() const { return top_matches() && !failure; }
};

namespace detail {

/// delta : H_m(cone) -> H_{m-1}(C), (x, y) |-> x.
inline AbHom cone_connecting_map(const ChainComplex& cone, const ChainComplex& C, int m) {
    auto Hc = cone.homology_subquotient(m);
    if (m == 0) return AbHom::zero(Hc.group(), FGAbGroup::zero());
    auto Hx = C.homology_subquotient(m - 1);
    const std::size_t cx = C.group(m - 1).generators();
    Matrix images(Hx.group().generators(), Hc.cycles().cols());
    for (std::size_t j = 0; j < Hc.cycles().cols(); ++j) {
        IntVector x(cx);
        for (std::size_t i = 0; i < cx; ++i) x[i] = Hc.cycles()(i, j);
        auto cls = Hx.class_of(x);
        for (std::size_t i = 0; i < cls.size(); ++i) images(i, j) = cls[i];
    }
    return AbHom(Hc.group(), Hx.group(), images);
}

inline AbHom homology_map(const ChainMap& f, const ChainComplex& C, const ChainComplex& D, int m) {
    if (m > C.top()) return AbHom::zero(FGAbGroup::zero(), D.homology_subquotient(m).group());
    return f.induced_on_homology(C, D, m);
}

}  // namespace detail

/// Chain-level form: C is a normalized complex with H_0 = H_1 = 0 and n >= 2.
inline KInvariantReport k_invariant_chain(const ChainComplex& C, int n) {
    if (n < 2) throw DegreeRangeError("k-invariant needs n >= 2");
    for (int m = 0; m <= 1; ++m)
        if (!C.homology(m).is_trivial())
            throw HypothesisFailed("k-invariant: nontrivial homology in degree " + std::to_string(m));
    KInvariantReport r;
    r.n = n;
    auto Tn = good_truncation(C, n);
    r.Pn = Tn.complex;
    auto Tn1 = good_truncation(r.Pn, n - 1);
    r.Pn1 = Tn1.complex;
    r.q = Tn1.projection;
    // q is onto, so its cofibre is the cokernel of P_n -> Cyl(q), which is the cone
    r.cone = mapping_cone(r.Pn, r.Pn1, r.q);
    auto Tc = good_truncation(r.cone, n + 1);
    r.target = Tc.complex;
    for (int m = 0; m <= r.Pn1.top(); ++m) {
        Matrix inc(r.cone.group(m).generators(), r.Pn1.group(m).generators());
        detail::add_block(inc, m >= 1 ? r.Pn.group(m - 1).generators() : 0, 0, Matrix::identity(r.Pn1.group(m).generators()));
        AbHom to_cone(r.Pn1.group(m), r.cone.group(m), inc);
        r.k.components.push_back(compose(Tc.projection.components[m], to_cone));
    }
    if (auto bad = r.q.violation(r.Pn, r.Pn1)) throw ValidationError("q is a chain map", *bad);
    if (auto bad = r.k.violation(r.Pn1, r.target)) throw ValidationError("k is a chain map", *bad);
    r.fibre_class = r.Pn.homology(n);
    r.top_class = r.target.homology(n + 1);

    // ... -> H_m(P_n) -> H_m(P_{n-1}) -> H_m(T) -> H_{m-1}(P_n) -> ...
    // T = cone in every degree <= n + 1 and both have top n + 1, so delta is read off the cone
    r.window = n + 2;
    struct Arrow {
        AbHom map;
        std::string at;  // label of the target group
    };
    std::vector<Arrow> seq;
    for (int m = r.window; m >= 0; --m) {
        seq.push_back({detail::homology_map(r.q, r.Pn, r.Pn1, m), "H_" + std::to_string(m) + "(P_{n-1})"});
        seq.push_back({detail::homology_map(r.k, r.Pn1, r.target, m), "H_" + std::to_string(m) + "(target)"});
        if (m >= 1) seq.push_back({detail::cone_connecting_map(r.target, r.Pn, m), "H_" + std::to_string(m - 1) + "(P_n)"});
    }
    // leading zero into H_window(P_n) and trailing zero out of H_0(target)
    auto head = r.Pn.homology_subquotient(r.window).group();
    seq.insert(seq.begin(), {AbHom::zero(FGAbGroup::zero(), head), "H_" + std::to_string(r.window) + "(P_n)"});
    seq.push_back({AbHom::zero(seq.back().map.target(), FGAbGroup::zero()), "0"});
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        r.exact_positions.push_back(seq[i].at);
        if (!r.failure && !is_exact_at(seq[i].map, seq[i + 1].map)) r.failure = "not exact at " + seq[i].at;
    }
    return r;
}

/// k_q for a simplicial abelian group, with Gamma of every chain-level piece at the truncation of A.
inline KInvariantReport k_invariant_ab(const TruncSimpAb& A, int n) {
    const int M = A.trunc();
    if (n > M - 1) throw DegreeRangeError("k-invariant needs n <= trunc - 1");
    auto r = k_invariant_chain(normalize_dk(A), n);
    r.Pn_simp = gamma_dk(r.Pn, M);
    r.Pn1_simp = gamma_dk(r.Pn1, M);
    r.target_simp = gamma_dk(truncate_complex(r.target, std::min(r.target.top(), M)), M);
    r.q_simp = gamma_dk_map(r.Pn, r.Pn1, r.q, M);
    r.k_simp = gamma_dk_map(r.Pn1, truncate_complex(r.target, std::min(r.target.top(), M)), r.k, M);
    return r;
}

// ---------------------------------------------------------------------------
// Eilenberg-Mac Lane models of diagrams

/// A functor from a finite category to truncated simplicial sets.
struct SSetDiagram {
    FinCategory shape;
    std::vector<TruncSimpSet> objects;   // per object of shape
    std::vector<SimplicialMap> arrows;   // per morphism of shape
};

inline std::optional<std::string> diagram_violation(const SSetDiagram& D) {
    const auto& I = D.shape;
    if (D.objects.size() != I.num_objects() || D.arrows.size() != I.num_morphisms()) return "diagram sizes";
    for (std::size_t x = 0; x < D.objects.size(); ++x)
        if (D.objects[x].trunc() != D.objects[0].trunc()) return "objects share one truncation";
    for (std::size_t f = 0; f < D.arrows.size(); ++f) {
        const auto& src = D.objects[I.src(int(f))];
        const auto& tgt = D.objects[I.tgt(int(f))];
        if (auto bad = simplicial_map_violation(src, tgt, D.arrows[f])) return "arrow " + I.morphism_label(int(f)) + ": " + *bad;
    }
    for (std::size_t x = 0; x < D.objects.size(); ++x)
        if (D.arrows[I.id(int(x))].levels != identity_map(D.objects[x]).levels) return "identity at " + I.object_label(int(x));
    for (std::size_t f = 0; f < D.arrows.size(); ++f)
        for (std::size_t g = 0; g < D.arrows.size(); ++g)
            if (I.tgt(int(f)) == I.src(int(g)) &&
                D.arrows[I.comp(int(f), int(g))].levels != compose(D.arrows[g], D.arrows[f]).levels)
                return "composition " + I.morphism_label(int(f)) + ", " + I.morphism_label(int(g));
    return std::nullopt;
}

/// Objectwise maps, one per object of the shape.
using DiagramMap = std::vector<SimplicialMap>;

inline std::optional<std::string> diagram_map_violation(const SSetDiagram& D, const SSetDiagram& E, const DiagramMap& f) {
    if (f.size() != D.objects.size() || E.objects.size() != D.objects.size()) return "diagram map sizes";
    for (std::size_t x = 0; x < f.size(); ++x)
        if (auto bad = simplicial_map_violation(D.objects[x], E.objects[x], f[x]))
            return "component at " + D.shape.object_label(int(x)) + ": " + *bad;
    for (std::size_t a = 0; a < D.arrows.size(); ++a) {
        int s = D.shape.src(int(a)), t = D.shape.tgt(int(a));
        if (compose(E.arrows[a], f[s]).levels != compose(f[t], D.arrows[a]).levels)
            return "naturality at " + D.shape.morphism_label(int(a));
    }
    return std::nullopt;
}

/// The one-arrow category 0 -> 1.
inline FinCategory arrow_category() {
    return FinCategory::build({"0", "1"}, {"id0", "id1", "a"}, {0, 1, 0}, {0, 1, 1}, {0, 1},
                              [](int f, int g) { return f == 0 ? g : f; });
}

struct ZigZagCheck {
    int object = 0;
    std::string arrow;
    int low = 0, high = 0;              // degrees compared
    std::vector<AbInvariants> source;   // homology of the source, degrees low..high
    std::vector<AbInvariants> target;
    bool iso = false;
};

struct EMModelReport {
    int n = 0;
    int window = 0;
    std::vector<AbInvariants> coefficients;  // H_n(ZV/ZU) per object
    std::vector<AbHom> transitions;          // H_n of each morphism
    std::vector<TruncSimpAb> quotients;      // ZV/ZU
    std::vector<PostnikovSection> sections;  // P_n(ZV/ZU)
    std::vector<ZigZagCheck> arrows;
    bool functorial = false;

    bool pass() const {
        if (!functorial) return false;
        for (const auto& a : arrows)
            if (!a.iso) return false;
        return true;
    }
};

namespace detail {

/// Normalized chains of X included into the Moore complex of ZX.
inline ChainMap hurewicz_chain_map(const TruncSimpSet& X) {
    ChainMap f;
    for (int m = 0; m <= X.trunc(); ++m) {
        auto nd = X.nondegenerate(m);
        Matrix A(X.size(m), nd.size());
        for (std::size_t k = 0; k < nd.size(); ++k) A(nd[k], k) = 1;
        f.components.push_back(AbHom(FGAbGroup::free(nd.size()), FGAbGroup::free(X.size(m)), A));
    }
    return f;
}

inline ZigZagCheck compare_homology(int object, std::string arrow, const ChainMap& f, const ChainComplex& C,
                                    const ChainComplex& D, int low, int high) {
    ZigZagCheck c{object, std::move(arrow), low, high, {}, {}, true};
    for (int m = low; m <= high; ++m) {
        c.source.push_back(C.homology(m));
        c.target.push_back(D.homology(m));
        if (!is_isomorphism(f.induced_on_homology(C, D, m))) c.iso = false;
    }
    return c;
}

inline std::string at(const FinCategory& I, int x, int m) {
    return "object " + I.object_label(x) + ", degree " + std::to_string(m);
}

}  // namespace detail

/// Objectwise F <- V -> ZV -> ZV/ZU -> P_n(ZV/ZU), with K(H_n, n) -> P_n checked as well.
inline EMModelReport em_model(const SSetDiagram& U, const SSetDiagram& V, const DiagramMap& incl, const SSetDiagram& F,
                              const DiagramMap& p, int n) {
    for (const auto* D : {&U, &V, &F})
        if (auto bad = diagram_violation(*D)) throw ValidationError("diagram", *bad);
    if (auto bad = diagram_map_violation(U, V, incl)) throw ValidationError("inclusion", *bad);
    if (auto bad = diagram_map_violation(V, F, p)) throw ValidationError("comparison map", *bad);
    const FinCategory& I = V.shape;
    const int M = V.objects.empty() ? 0 : V.objects[0].trunc();
    for (const auto* D : {&U, &F})
        if (!D->objects.empty() && D->objects[0].trunc() != M) throw ShapeMismatch("diagrams share one truncation");
    const int W = M - 1;
    if (n < 2 || n > W) throw DegreeRangeError("em model needs 2 <= n <= trunc - 1");

    EMModelReport r;
    r.n = n;
    r.window = W;
    const AbInvariants Z = FGAbGroup::free(1).invariants();
    for (std::size_t x = 0; x < I.num_objects(); ++x) {
        for (int m = 0; m <= M; ++m) {
            const auto& f = incl[x].levels[m];
            std::vector<int> seen(V.objects[x].size(m), 0);
            for (int v : f)
                if (seen[v]++) throw ValidationError("inclusion", "not injective at " + detail::at(I, int(x), m));
        }
        auto CU = normalized_chains(U.objects[x]);
        for (int m = 0; m <= W; ++m)
            if (CU.homology(m) != (m == 0 ? Z : AbInvariants{}))
                throw HypothesisFailed("U is not acyclic at " + detail::at(I, int(x), m));
        auto CV = normalized_chains(V.objects[x]), CF = normalized_chains(F.objects[x]);
        auto [ZV, hv] = hurewicz(V.objects[x]);
        auto [ZF, hf] = hurewicz(F.objects[x]);
        ChainComplex MV = moore_chain_complex(ZV), MF = moore_chain_complex(ZF);
        ChainMap pz = moore_chain_map(free_map(V.objects[x], F.objects[x], p[x]));
        for (int m = 0; m <= W; ++m)
            if (!is_isomorphism(pz.induced_on_homology(MV, MF, m)))
                throw HypothesisFailed("V -> F is not a homology isomorphism at " + detail::at(I, int(x), m));
        for (int m = 0; m <= W; ++m)
            if (m != n && CF.homology(m) != (m == 0 ? Z : AbInvariants{}))
                throw HypothesisFailed("F has reduced homology outside degree n at " + detail::at(I, int(x), m));
    }

    std::vector<ChainComplex> MQ;
    for (std::size_t x = 0; x < I.num_objects(); ++x) {
        const auto& Vx = V.objects[x];
        auto [ZV, hv] = hurewicz(Vx);
        SimpAbMap zi = free_map(U.objects[x], Vx, incl[x]);
        std::vector<FGAbGroup> levels;
        for (int m = 0; m <= M; ++m) levels.push_back(cokernel(zi.levels[m]).first);
        std::vector<std::vector<AbHom>> faces(M + 1), degens(M + 1);
        for (int m = 1; m <= M; ++m)
            for (int i = 0; i <= m; ++i) faces[m].push_back(AbHom(levels[m], levels[m - 1], ZV.face(m, i).matrix()));
        for (int m = 0; m + 1 <= M; ++m)
            for (int i = 0; i <= m; ++i) degens[m].push_back(AbHom(levels[m], levels[m + 1], ZV.degen(m, i).matrix()));
        TruncSimpAb Q(levels, faces, degens);
        SimpAbMap proj;
        for (int m = 0; m <= M; ++m) proj.levels.push_back(cokernel(zi.levels[m]).second);
        auto P = postnikov_section_ab(Q, n);

        ChainComplex CV = normalized_chains(Vx), CF = normalized_chains(F.objects[x]);
        ChainComplex MV = moore_chain_complex(ZV), MQx = moore_chain_complex(Q), MP = moore_chain_complex(P.section);
        auto [ZF, hf] = hurewicz(F.objects[x]);
        ChainComplex MF = moore_chain_complex(ZF);
        ChainMap pz = moore_chain_map(free_map(Vx, F.objects[x], p[x]));
        r.arrows.push_back(detail::compare_homology(int(x), "V -> F", pz, MV, MF, 0, W));
        r.arrows.push_back(detail::compare_homology(int(x), "V -> ZV", detail::hurewicz_chain_map(Vx), CV, MV, 0, W));
        // reduced homology: degree 0 of ZV/ZU vanishes and V is connected
        auto c = detail::compare_homology(int(x), "ZV -> ZV/ZU", moore_chain_map(proj), MV, MQx, 1, W);
        if (CV.homology(0) != Z || !MQx.homology(0).is_trivial()) c.iso = false;
        r.arrows.push_back(c);
        r.arrows.push_back(detail::compare_homology(int(x), "ZV/ZU -> P_n", moore_chain_map(P.map), MQx, MP, 0, n));
        bool vanish = true;
        for (int m = n + 1; m <= W; ++m) vanish = vanish && MP.homology(m).is_trivial();
        if (!vanish) r.arrows.back().iso = false;

        // K(H_n, n) -> P_n: H_n sits inside the top group of the good truncation
        auto Hn = MQx.homology_subquotient(n);
        auto NQ = normalized_dk_data(Q);
        auto Hn_norm = NQ.complex.homology_subquotient(n);
        std::vector<FGAbGroup> kg(n + 1, FGAbGroup::zero());
        kg[n] = Hn_norm.group();
        std::vector<AbHom> kb;
        for (int m = 1; m <= n; ++m) kb.push_back(AbHom::zero(kg[m], kg[m - 1]));
        ChainComplex K(kg, kb);
        ChainMap into;
        for (int m = 0; m < n; ++m) into.components.push_back(AbHom::zero(kg[m], P.chains.group(m)));
        into.components.push_back(AbHom(kg[n], P.chains.group(n), Hn_norm.cycles()));
        SimpAbMap kmap = gamma_dk_map(K, P.chains, into, M);
        TruncSimpAb KS = gamma_dk(K, M);
        if (auto bad = simp_ab_map_violation(KS, P.section, kmap)) throw ValidationError("K(H_n, n) -> P_n", *bad);
        r.arrows.push_back(detail::compare_homology(int(x), "K(H_n, n) -> P_n", moore_chain_map(kmap), moore_chain_complex(KS),
                                                    MP, 0, W));

        r.coefficients.push_back(Hn.invariants());
        r.quotients.push_back(Q);
        r.sections.push_back(P);
        MQ.push_back(MQx);
    }

    for (std::size_t a = 0; a < I.num_morphisms(); ++a) {
        int s = I.src(int(a)), t = I.tgt(int(a));
        SimpAbMap za = free_map(V.objects[s], V.objects[t], V.arrows[a]);
        ChainMap fa;
        for (int m = 0; m <= M; ++m) fa.components.push_back(AbHom(r.quotients[s].level(m), r.quotients[t].level(m), za.levels[m].matrix()));
        r.transitions.push_back(fa.induced_on_homology(MQ[s], MQ[t], n));
    }
    r.functorial = true;
    for (std::size_t x = 0; x < I.num_objects(); ++x)
        if (!hom_equal(r.transitions[I.id(int(x))], AbHom::identity(r.transitions[I.id(int(x))].source()))) r.functorial = false;
    for (std::size_t f = 0; f < I.num_morphisms(); ++f)
        for (std::size_t g = 0; g < I.num_morphisms(); ++g)
            if (I.tgt(int(f)) == I.src(int(g)) &&
                !hom_equal(r.transitions[I.comp(int(f), int(g))], compose(r.transitions[g], r.transitions[f])))
                r.functorial = false;
    return r;
}

}  // namespace cosimplex
