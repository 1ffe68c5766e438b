#pragma once

#include <climits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cosimplex/abelian.hpp"
#include "cosimplex/cosimplicial.hpp"
#include "cosimplex/simplicial.hpp"

namespace cosimplex {

/// N-truncated cosimplicial abelian group, indexed as TruncCosimpSet.
class TruncCosimpAb {
public:
    TruncCosimpAb() = default;
    TruncCosimpAb(std::vector<FGAbGroup> levels, std::vector<std::vector<AbHom>> cofaces,
                  std::vector<std::vector<AbHom>> codegs)
        : levels_(std::move(levels)), cofaces_(std::move(cofaces)), codegs_(std::move(codegs)) {
        if (auto bad = violation()) throw ValidationError(*bad);
    }

    int trunc() const noexcept { return static_cast<int>(levels_.size()) - 1; }
    const FGAbGroup& level(int n) const { return levels_.at(n); }
    const std::vector<FGAbGroup>& levels() const noexcept { return levels_; }
    const AbHom& coface(int n, int i) const { return cofaces_.at(n).at(i); }
    const AbHom& codeg(int n, int i) const { return codegs_.at(n).at(i); }
    const std::vector<std::vector<AbHom>>& cofaces() const noexcept { return cofaces_; }
    const std::vector<std::vector<AbHom>>& codegs() const noexcept { return codegs_; }

    AbHom op(const OrdinalMap& theta) const {
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
                if (f.source().generators() != levels_[n - 1].generators() || f.target().generators() != levels_[n].generators())
                    return "coface shape at level " + std::to_string(n);
            for (const auto& s : codegs_[n])
                if (s.source().generators() != levels_[n + 1].generators() || s.target().generators() != levels_[n].generators())
                    return "codegeneracy shape at level " + std::to_string(n);
        }
        Ops ops{this};
        return first_cosimplicial_violation(ops, N);
    }

private:
    struct Ops {
        const TruncCosimpAb* A;
        AbHom face(int n, int i) const { return A->coface(n, i); }
        AbHom codeg(int n, int i) const { return A->codeg(n, i); }
        AbHom id(int n) const { return AbHom::identity(A->level(n)); }
        AbHom comp(const AbHom& g, const AbHom& f) const { return compose(g, f); }
        bool eq(const AbHom& a, const AbHom& b) const { return hom_equal(a, b); }
    };

    std::vector<FGAbGroup> levels_;
    std::vector<std::vector<AbHom>> cofaces_, codegs_;
};

/// Z/t[X] (t = 0 gives the free cosimplicial abelian group Z[X]).
inline TruncCosimpAb free_cosimplicial_ab(const TruncCosimpSet& X, const Int& t = 0) {
    const int N = X.trunc();
    std::vector<FGAbGroup> levels;
    for (int n = 0; n <= N; ++n) {
        std::size_t r = X.size(n);
        levels.push_back(t == 0 ? FGAbGroup::free(r) : FGAbGroup(r, scaled(Matrix::identity(r), t)));
    }
    std::vector<std::vector<AbHom>> cofaces(N + 1), codegs(N + 1);
    for (int n = 1; n <= N; ++n)
        for (int i = 0; i <= n; ++i)
            cofaces[n].push_back(AbHom(levels[n - 1], levels[n], index_map_matrix(X.coface(n, i), X.size(n)), AbHom::Unchecked{}));
    for (int n = 0; n + 1 <= N; ++n)
        for (int i = 0; i <= n; ++i)
            codegs[n].push_back(AbHom(levels[n + 1], levels[n], index_map_matrix(X.codeg(n, i), X.size(n)), AbHom::Unchecked{}));
    return TruncCosimpAb(levels, cofaces, codegs);
}

inline TruncCosimpAb constant_cosimplicial_ab(const FGAbGroup& G, int N) {
    std::vector<std::vector<AbHom>> cofaces(N + 1), codegs(N + 1);
    AbHom id = AbHom::identity(G);
    for (int n = 0; n <= N; ++n) {
        if (n >= 1) cofaces[n].assign(n + 1, id);
        if (n + 1 <= N) codegs[n].assign(n + 1, id);
    }
    return TruncCosimpAb(std::vector<FGAbGroup>(N + 1, G), cofaces, codegs);
}

inline TruncCosimpAb direct_sum(const TruncCosimpAb& A, const TruncCosimpAb& B) {
    if (A.trunc() != B.trunc()) throw ShapeMismatch("direct sum of different truncations");
    const int N = A.trunc();
    std::vector<FGAbGroup> levels;
    for (int n = 0; n <= N; ++n) levels.push_back(direct_sum(A.level(n), B.level(n)));
    std::vector<std::vector<AbHom>> cofaces(N + 1), codegs(N + 1);
    for (int n = 1; n <= N; ++n)
        for (int i = 0; i <= n; ++i) cofaces[n].push_back(direct_sum(A.coface(n, i), B.coface(n, i)));
    for (int n = 0; n + 1 <= N; ++n)
        for (int i = 0; i <= n; ++i) codegs[n].push_back(direct_sum(A.codeg(n, i), B.codeg(n, i)));
    return TruncCosimpAb(levels, cofaces, codegs);
}

// ---------------------------------------------------------------------------
// Moore complex and cohomology

inline AbHom alternating_sum(const std::vector<AbHom>& maps, const FGAbGroup& s, const FGAbGroup& t) {
    AbHom d = AbHom::zero(s, t);
    for (std::size_t i = 0; i < maps.size(); ++i) d = (i % 2 == 0) ? d + maps[i] : d - maps[i];
    return d;
}

/// delta^n = sum_i (-1)^i d^i : A^n -> A^{n+1}, degrees 0..N.
inline CochainComplex moore_complex(const TruncCosimpAb& A) {
    std::vector<AbHom> diffs;
    for (int n = 0; n < A.trunc(); ++n) diffs.push_back(alternating_sum(A.cofaces()[n + 1], A.level(n), A.level(n + 1)));
    return CochainComplex(0, A.levels(), diffs);
}

inline FGAbGroup cohomology_H(const TruncCosimpAb& A, int n) {
    if (n < 0 || n > A.trunc() - 1) throw DegreeRangeError("cohomology degree needs 0 <= n <= N-1");
    return moore_complex(A).cohomology_subquotient(n).group();
}

// ---------------------------------------------------------------------------
// Matching groups

/// M^{n-1}A inside (A^{n-1})^n, with s : A^n -> M^{n-1}A.
struct MatchingGroup {
    FGAbGroup ambient;  // (A^{n-1})^n
    Subgroup sub;       // M^{n-1}A
    AbHom s_ambient;    // A^n -> ambient
    AbHom s;            // A^n -> sub.group
};

/// Corestriction of f to a subgroup of its target containing its image.
inline AbHom corestrict(const AbHom& f, const Subgroup& T) {
    LatticeSolver solver(T.lattice);
    return AbHom(f.source(), T.group, lattice_coordinates(solver, f.matrix()), AbHom::Unchecked{});
}

/// Block of a direct-sum projection: ambient = parts[0] + ... ; returns projection onto part k.
inline AbHom sum_projection(const std::vector<FGAbGroup>& parts, std::size_t k) {
    FGAbGroup total = direct_sum(parts);
    std::size_t off = 0;
    for (std::size_t p = 0; p < k; ++p) off += parts[p].generators();
    Matrix m(parts[k].generators(), total.generators());
    for (std::size_t r = 0; r < parts[k].generators(); ++r) m(r, off + r) = 1;
    return AbHom(total, parts[k], m, AbHom::Unchecked{});
}

inline AbHom sum_injection(const std::vector<FGAbGroup>& parts, std::size_t k) {
    FGAbGroup total = direct_sum(parts);
    std::size_t off = 0;
    for (std::size_t p = 0; p < k; ++p) off += parts[p].generators();
    Matrix m(total.generators(), parts[k].generators());
    for (std::size_t r = 0; r < parts[k].generators(); ++r) m(off + r, r) = 1;
    return AbHom(parts[k], total, m, AbHom::Unchecked{});
}

/// Map (A^{n-1})^n -> prod_{i<j} A^{n-2}, (x) -> (s^i x_j - s^{j-1} x_i); zero target when n = 1.
inline AbHom matching_conditions(const TruncCosimpAb& A, int n) {
    std::vector<FGAbGroup> parts(n, A.level(n - 1));
    FGAbGroup ambient = direct_sum(parts);
    std::vector<AbHom> rows;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < j; ++i)
            rows.push_back(compose(A.codeg(n - 2, i), sum_projection(parts, j)) -
                           compose(A.codeg(n - 2, j - 1), sum_projection(parts, i)));
    return stack_homs(ambient, rows);
}

inline MatchingGroup matching_group(const TruncCosimpAb& A, int n) {
    if (n < 1 || n > A.trunc()) throw DegreeRangeError("matching group needs 1 <= n <= trunc");
    std::vector<FGAbGroup> parts(n, A.level(n - 1));
    MatchingGroup M;
    M.ambient = direct_sum(parts);
    M.sub = kernel(matching_conditions(A, n));
    std::vector<AbHom> comps;
    for (int i = 0; i < n; ++i) comps.push_back(A.codeg(n - 1, i));
    M.s_ambient = stack_homs(A.level(n), comps);
    M.s = corestrict(M.s_ambient, M.sub);
    return M;
}

/// The splitting j : M^{n-1}A -> A^n: for i = 0..n-1, add d^{i+1} of the current
/// i-th component and subtract its image under s. Verifies s o j = id.
inline AbHom matching_splitting(const TruncCosimpAb& A, int n) {
    MatchingGroup M = matching_group(A, n);
    std::vector<FGAbGroup> parts(n, A.level(n - 1));
    // J on the ambient product, kept as (x in A^n, current tuple)
    AbHom x = AbHom::zero(M.ambient, A.level(n));
    AbHom cur = AbHom::identity(M.ambient);
    for (int i = 0; i < n; ++i) {
        AbHom y = compose(A.coface(n, i + 1), compose(sum_projection(parts, i), cur));
        x = x + y;
        cur = cur - compose(M.s_ambient, y);
    }
    AbHom j = compose(x, M.sub.inclusion);
    if (!hom_equal(compose(M.s_ambient, j), M.sub.inclusion))
        throw ValidationError("s o j = id", "matching splitting at level " + std::to_string(n));
    return j;
}

// ---------------------------------------------------------------------------
// Normalized subcomplexes

constexpr int kAllCodegeneracies = INT_MAX;

struct NormalizedComplex {
    CochainComplex complex;
    std::vector<Subgroup> parts;  // cN_k A^n as subgroups of A^n
};

/// cN_k A^n = intersection of ker s^i, 0 <= i <= min(k, n-1), inside A^n.
inline Subgroup normalized_part(const TruncCosimpAb& A, int n, int k) {
    std::vector<AbHom> comps;
    int top = std::min(k, n - 1);
    for (int i = 0; i <= top; ++i) comps.push_back(A.codeg(n - 1, i));
    if (comps.empty()) return subgroup_from_lattice(A.level(n), Matrix::identity(A.level(n).generators()));
    return kernel(stack_homs(A.level(n), comps));
}

/// cN_k A with k = -1 the full Moore complex and kAllCodegeneracies giving cNA.
inline NormalizedComplex cn_subcomplex(const TruncCosimpAb& A, int k) {
    CochainComplex moore = moore_complex(A);
    NormalizedComplex out;
    std::vector<FGAbGroup> groups;
    for (int n = 0; n <= A.trunc(); ++n) {
        out.parts.push_back(normalized_part(A, n, k));
        groups.push_back(out.parts.back().group);
    }
    std::vector<AbHom> diffs;
    for (int n = 0; n < A.trunc(); ++n) {
        const AbHom& d = moore.differential(n);
        LatticeSolver target(out.parts[n + 1].lattice);
        Matrix images = d.matrix() * out.parts[n].lattice;
        for (std::size_t c = 0; c < images.cols(); ++c)
            if (!target.contains(images.column(c)))
                throw ValidationError("delta restricts to the normalized subcomplex", "degree " + std::to_string(n));
        diffs.push_back(restrict_hom(d, out.parts[n], out.parts[n + 1]));
    }
    out.complex = CochainComplex(0, groups, diffs);
    return out;
}

/// delta_* = sum_{j=k+2}^{p+1} (-1)^{j+1} d^j : A^p -> A^{p+1}
inline AbHom quotient_differential(const TruncCosimpAb& A, int k, int p) {
    AbHom d = AbHom::zero(A.level(p), A.level(p + 1));
    for (int j = k + 2; j <= p + 1; ++j) d = ((j + 1) % 2 == 0) ? d + A.coface(p + 1, j) : d - A.coface(p + 1, j);
    return d;
}

/// Checks, for -1 <= k <= N-2, the identities behind cN_{k+1}A -> cN_k A being a
/// cohomology isomorphism: s^{k+1} delta = delta_* s^{k+1} on cN_k A^n, d^{k+2}
/// splits s^{k+1}, and s^{k+1} delta_* + delta_* s^{k+1} = (-1)^{k+1} on cN_k A^p.
inline std::optional<std::string> contracting_homotopy_violation(const TruncCosimpAb& A, int k) {
    const int N = A.trunc();
    CochainComplex moore = moore_complex(A);
    auto where = [&](const char* what, int deg) {
        return std::string(what) + " (k=" + std::to_string(k) + ", degree " + std::to_string(deg) + ")";
    };
    for (int n = k + 2; n + 1 <= N; ++n) {
        AbHom inc = normalized_part(A, n, k).inclusion;
        AbHom lhs = compose(A.codeg(n, k + 1), compose(moore.differential(n), inc));
        AbHom rhs = compose(quotient_differential(A, k, n - 1), compose(A.codeg(n - 1, k + 1), inc));
        if (!hom_equal(lhs, rhs)) return where("s^{k+1} delta = delta_* s^{k+1}", n);
    }
    for (int p = k + 1; p + 1 <= N; ++p) {
        AbHom inc = normalized_part(A, p, k).inclusion;
        if (!hom_equal(compose(A.codeg(p, k + 1), compose(A.coface(p + 1, k + 2), inc)), inc))
            return where("s^{k+1} d^{k+2} = id", p);
        AbHom h = compose(A.codeg(p, k + 1), compose(quotient_differential(A, k, p), inc));
        if (p >= k + 2) h = h + compose(quotient_differential(A, k, p - 1), compose(A.codeg(p - 1, k + 1), inc));
        AbHom expect = (k + 1) % 2 == 0 ? inc : -inc;
        if (!hom_equal(h, expect)) return where("s^{k+1} delta_* + delta_* s^{k+1} = (-1)^{k+1}", p);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Maps Delta -> K(A, n)

inline FGAbGroup pi0_hom_delta_K(const TruncCosimpAb& A, int n) {
    if (n < 0 || n > A.trunc() - 1) throw DegreeRangeError("degree needs 0 <= n <= N-1");
    return cn_subcomplex(A, kAllCodegeneracies).complex.cohomology_subquotient(n).group();
}

inline FGAbGroup pi_k_hom_delta_K(const TruncCosimpAb& A, int n, int k) {
    if (k < 0) throw DegreeRangeError("homotopy degree must be non-negative");
    if (k > n) return FGAbGroup::zero();
    if (n - k > A.trunc() - 1) throw DegreeRangeError("degree needs n - k <= N-1");
    return cohomology_H(A, n - k);
}

/// Element arithmetic in a finite group through a Hermite basis of its
/// relation lattice; canonical representatives satisfy 0 <= x_i < h_ii.
class FiniteGroupElements {
public:
    explicit FiniteGroupElements(const FGAbGroup& G) : g_(G.generators()) {
        Matrix R = G.relations();
        h_ = Matrix(g_, g_);
        std::size_t lead = 0;
        for (std::size_t i = 0; i < g_; ++i) {
            // make row i zero in every column after `lead`
            while (true) {
                std::size_t best = R.cols();
                for (std::size_t c = lead; c < R.cols(); ++c)
                    if (R(i, c) != 0 && (best == R.cols() || abs(R(i, c)) < abs(R(i, best)))) best = c;
                if (best == R.cols()) throw InfiniteGroup("group has positive free rank");
                R.swap_cols(lead, best);
                bool clean = true;
                for (std::size_t c = lead + 1; c < R.cols(); ++c)
                    if (R(i, c) != 0) {
                        Int q = R(i, c) / R(i, lead);
                        R.add_col(c, lead, -q);
                        if (R(i, c) != 0) clean = false;
                    }
                if (clean) break;
            }
            if (R(i, lead) < 0) R.negate_col(lead);
            for (std::size_t r = 0; r < g_; ++r) h_(r, i) = R(r, lead);
            ++lead;
        }
    }

    IntVector reduce(IntVector x) const {
        for (std::size_t i = 0; i < g_; ++i) {
            Int q = x[i] / h_(i, i);
            if (x[i] - q * h_(i, i) < 0) q -= 1;
            if (q != 0)
                for (std::size_t r = i; r < g_; ++r) x[r] -= q * h_(r, i);
        }
        return x;
    }

    bool is_zero(const IntVector& x) const {
        IntVector y = reduce(x);
        for (const Int& v : y)
            if (v != 0) return false;
        return true;
    }

    std::vector<IntVector> all() const {
        std::vector<IntVector> out;
        IntVector x(g_, 0);
        while (true) {
            out.push_back(x);
            std::size_t i = 0;
            while (i < g_ && x[i] + 1 == h_(i, i)) x[i++] = 0;
            if (i == g_) break;
            x[i] += 1;
        }
        return out;
    }

private:
    std::size_t g_;
    Matrix h_;
};

struct CochainMapCount {
    Int maps;
    Int classes;
};

/// Brute force over elements: z in cNA^n with delta z = 0, modulo delta(cNA^{n-1}).
inline CochainMapCount enumerate_cochain_maps(const TruncCosimpAb& A, int n) {
    if (n < 0 || n > A.trunc() - 1) throw DegreeRangeError("degree needs 0 <= n <= N-1");
    for (int p = 0; p <= A.trunc(); ++p)
        if (!A.level(p).invariants().is_finite()) throw InfiniteGroup("level " + std::to_string(p) + " is infinite");
    CochainMapCount out{0, 0};
    std::vector<FiniteGroupElements> E;
    for (int p = 0; p <= A.trunc(); ++p) E.emplace_back(A.level(p));
    auto normalized = [&](int p, const IntVector& x) {
        for (int i = 0; i < p; ++i)
            if (!E[p - 1].is_zero(A.codeg(p - 1, i)(x))) return false;
        return true;
    };
    CochainComplex moore = moore_complex(A);
    const FiniteGroupElements& En = E[n];
    std::set<IntVector> cocycles;
    for (const auto& z : En.all())
        if (normalized(n, z) && E[n + 1].is_zero(moore.differential(n)(z))) cocycles.insert(z);
    std::set<IntVector> boundaries{En.reduce(IntVector(A.level(n).generators(), 0))};
    if (n >= 1) {
        for (const auto& y : E[n - 1].all())
            if (normalized(n - 1, y)) boundaries.insert(En.reduce(moore.differential(n - 1)(y)));
    }
    out.maps = Int(cocycles.size());
    // partition cocycles into cosets of the boundary subgroup
    std::set<IntVector> seen;
    for (const auto& z : cocycles) {
        if (seen.count(z)) continue;
        out.classes += 1;
        for (const auto& b : boundaries) {
            IntVector w = z;
            for (std::size_t r = 0; r < w.size(); ++r) w[r] += b[r];
            seen.insert(En.reduce(w));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Derived limits over the truncated simplex category

/// lim A = ker(d^0 - d^1) inside A^0.
inline Subgroup inverse_limit_group(const TruncCosimpAb& A) {
    if (A.trunc() < 1) throw DegreeRangeError("limit needs truncation >= 1");
    return kernel(A.coface(1, 0) - A.coface(1, 1));
}

namespace detail {

/// Composable chains c_0 -> ... -> c_p of non-identity maps in Delta_{<=N}.
struct CobarChain {
    int start;
    std::vector<OrdinalMap> maps;
    int end() const { return maps.empty() ? start : maps.back().cod; }
    friend auto operator<=>(const CobarChain&, const CobarChain&) = default;
};

inline std::vector<std::vector<std::vector<OrdinalMap>>> nonidentity_maps(int N) {
    std::vector<std::vector<std::vector<OrdinalMap>>> out(N + 1, std::vector<std::vector<OrdinalMap>>(N + 1));
    for (int a = 0; a <= N; ++a)
        for (int b = 0; b <= N; ++b)
            for (auto& t : monotone_maps(a, b))
                if (!t.is_identity()) out[a][b].push_back(t);
    return out;
}

class AbOpCache {
public:
    explicit AbOpCache(const TruncCosimpAb& A) : A_(A) {}
    const AbHom& operator()(const OrdinalMap& t) {
        auto it = cache_.find(t);
        if (it == cache_.end()) it = cache_.emplace(t, A_.op(t)).first;
        return it->second;
    }

private:
    const TruncCosimpAb& A_;
    std::map<OrdinalMap, AbHom> cache_;
};

inline void add_block(Matrix& M, std::size_t r0, std::size_t c0, const Matrix& B, const Int& sign) {
    for (std::size_t r = 0; r < B.rows(); ++r)
        for (std::size_t c = 0; c < B.cols(); ++c)
            if (B(r, c) != 0) M(r0 + r, c0 + c) += sign * B(r, c);
}

}  // namespace detail

/// Number of chains of length 0..max_len of non-identity maps in Delta_{<=N}.
inline std::vector<Int> cobar_chain_counts(int N, int max_len) {
    auto maps = detail::nonidentity_maps(N);
    std::vector<Int> ending(N + 1, 1), totals{Int(N + 1)};
    for (int p = 1; p <= max_len; ++p) {
        std::vector<Int> next(N + 1, 0);
        for (int a = 0; a <= N; ++a)
            for (int b = 0; b <= N; ++b) next[b] += ending[a] * Int(maps[a][b].size());
        ending = next;
        Int t = 0;
        for (const Int& v : ending) t += v;
        totals.push_back(t);
    }
    return totals;
}

/// Reduced cobar complex of A over Delta_{<=N} in degrees 0..top:
/// degree p = product over non-identity p-chains of A at the final object.
inline CochainComplex cobar_complex(const TruncCosimpAb& A, int top, std::size_t cap) {
    const int N = A.trunc();
    Int total = 0;
    for (const Int& c : cobar_chain_counts(N, top)) total += c;
    if (total > Int(cap)) throw CapExceeded("cobar complex needs " + total.str() + " chains, cap " + std::to_string(cap));
    auto maps = detail::nonidentity_maps(N);
    detail::AbOpCache op(A);
    std::vector<std::vector<detail::CobarChain>> chains(top + 1);
    for (int c = 0; c <= N; ++c) chains[0].push_back({c, {}});
    for (int p = 1; p <= top; ++p)
        for (const auto& ch : chains[p - 1])
            for (int b = 0; b <= N; ++b)
                for (const auto& f : maps[ch.end()][b]) {
                    auto next = ch;
                    next.maps.push_back(f);
                    chains[p].push_back(std::move(next));
                }
    std::vector<FGAbGroup> groups;
    std::vector<std::vector<std::size_t>> offset(top + 1);
    std::vector<std::map<detail::CobarChain, std::size_t>> index(top + 1);
    for (int p = 0; p <= top; ++p) {
        std::vector<FGAbGroup> parts;
        std::size_t off = 0;
        for (std::size_t k = 0; k < chains[p].size(); ++k) {
            offset[p].push_back(off);
            index[p][chains[p][k]] = k;
            parts.push_back(A.level(chains[p][k].end()));
            off += parts.back().generators();
        }
        groups.push_back(direct_sum(parts));
    }
    std::vector<AbHom> diffs;
    for (int p = 1; p <= top; ++p) {
        Matrix D(groups[p].generators(), groups[p - 1].generators());
        for (std::size_t k = 0; k < chains[p].size(); ++k) {
            const auto& ch = chains[p][k];
            std::size_t row = offset[p][k];
            for (int i = 0; i <= p; ++i) {
                detail::CobarChain face;
                Matrix transport;
                if (i == 0) {
                    face.start = ch.maps[0].cod;
                    face.maps.assign(ch.maps.begin() + 1, ch.maps.end());
                } else if (i < p) {
                    face.start = ch.start;
                    face.maps = ch.maps;
                    face.maps[i - 1] = compose(ch.maps[i], ch.maps[i - 1]);
                    face.maps.erase(face.maps.begin() + i);
                } else {
                    face.start = ch.start;
                    face.maps.assign(ch.maps.begin(), ch.maps.end() - 1);
                    transport = op(ch.maps.back()).matrix();
                }
                std::size_t col = offset[p - 1][index[p - 1].at(face)];
                Int sign = i % 2 == 0 ? 1 : -1;
                if (i < p)
                    detail::add_block(D, row, col, Matrix::identity(A.level(ch.end()).generators()), sign);
                else
                    detail::add_block(D, row, col, transport, sign);
            }
        }
        diffs.push_back(AbHom(groups[p - 1], groups[p], D, AbHom::Unchecked{}));
    }
    return CochainComplex(0, groups, diffs);
}

/// A projective resolution of the constant functor Z on Delta_{<=N} by sums of
/// representables Z Hom([c], -). Generator g of P_k sits at object c_g with
/// image in P_{k-1}([c_g]) (for k = 0, the unit of Z).
class FreeResolution {
public:
    struct Generator {
        int obj;
        IntVector image;
    };
    using BasisElement = std::pair<int, OrdinalMap>;

    FreeResolution(int N, int length) : N_(N) {
        add_degree({{0, IntVector{1}}});
        for (int k = 1; k <= length; ++k) add_degree(next_generators(k - 1));
    }

    /// Shared instance per (N, length); the resolution depends only on these.
    static const FreeResolution& cached(int N, int length) {
        static std::mutex mu;
        static std::map<std::pair<int, int>, std::unique_ptr<FreeResolution>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto& slot = cache[{N, length}];
        if (!slot) slot = std::make_unique<FreeResolution>(N, length);
        return *slot;
    }

    int trunc() const noexcept { return N_; }
    const std::vector<Generator>& generators(int k) const { return gens_.at(k); }

    /// Basis of P_k([n]) as (generator, map [c_g] -> [n]).
    const std::vector<BasisElement>& basis(int k, int n) const { return basis_.at(k).at(n); }

    /// P_k(alpha) applied to a vector of P_k([alpha.dom]); k = -1 is the constant Z.
    IntVector apply(int k, const OrdinalMap& alpha, const IntVector& v) const {
        if (k < 0) return v;
        const auto& from = basis(k, alpha.dom());
        const auto& index = index_.at(k).at(alpha.cod);
        IntVector out(basis(k, alpha.cod).size(), 0);
        for (std::size_t j = 0; j < from.size(); ++j)
            if (v[j] != 0) out[index.at({from[j].first, compose(alpha, from[j].second)})] += v[j];
        return out;
    }

    /// epsilon_k : P_k([n]) -> P_{k-1}([n]).
    Matrix augmentation(int k, int n) const {
        std::vector<IntVector> cols;
        for (const auto& [g, a] : basis(k, n)) cols.push_back(apply(k - 1, a, gens_[k][g].image));
        std::size_t rows = k == 0 ? 1 : basis(k - 1, n).size();
        return Matrix::from_columns(rows, cols);
    }

private:
    void add_degree(std::vector<Generator> gens) {
        gens_.push_back(std::move(gens));
        const auto& g = gens_.back();
        basis_.emplace_back(N_ + 1);
        index_.emplace_back(N_ + 1);
        for (int n = 0; n <= N_; ++n)
            for (std::size_t h = 0; h < g.size(); ++h)
                for (auto& a : monotone_maps(g[h].obj, n)) {
                    index_.back()[n][{int(h), a}] = basis_.back()[n].size();
                    basis_.back()[n].push_back({int(h), a});
                }
    }

    std::vector<Generator> next_generators(int k) {
        std::vector<Generator> out;
        for (int n = 0; n <= N_; ++n) {
            Matrix K = integer_kernel(augmentation(k, n));
            std::vector<IntVector> span;
            for (const auto& h : out)
                for (auto& a : monotone_maps(h.obj, n)) span.push_back(apply(k, a, h.image));
            for (std::size_t c = 0; c < K.cols(); ++c) {
                IntVector v = K.column(c);
                if (!span.empty() && LatticeSolver(Matrix::from_columns(K.rows(), span)).contains(v)) continue;
                out.push_back({n, v});
                for (auto& a : monotone_maps(n, n)) span.push_back(apply(k, a, v));
            }
        }
        return out;
    }

    int N_;
    std::vector<std::vector<Generator>> gens_;
    std::vector<std::vector<std::vector<BasisElement>>> basis_;
    std::vector<std::vector<std::map<BasisElement, std::size_t>>> index_;
};

/// Hom(P_*, A) for the free resolution, degrees 0..top.
inline CochainComplex resolution_complex(const TruncCosimpAb& A, int top) {
    const FreeResolution& R = FreeResolution::cached(A.trunc(), top);
    detail::AbOpCache op(A);
    std::vector<FGAbGroup> groups;
    std::vector<std::vector<std::size_t>> offset(top + 1);
    for (int k = 0; k <= top; ++k) {
        std::vector<FGAbGroup> parts;
        std::size_t off = 0;
        for (const auto& g : R.generators(k)) {
            offset[k].push_back(off);
            parts.push_back(A.level(g.obj));
            off += parts.back().generators();
        }
        groups.push_back(direct_sum(parts));
    }
    std::vector<AbHom> diffs;
    for (int k = 0; k < top; ++k) {
        Matrix D(groups[k + 1].generators(), groups[k].generators());
        const auto& next = R.generators(k + 1);
        for (std::size_t h = 0; h < next.size(); ++h) {
            auto b = R.basis(k, next[h].obj);
            for (std::size_t j = 0; j < b.size(); ++j)
                if (next[h].image[j] != 0)
                    detail::add_block(D, offset[k + 1][h], offset[k][b[j].first], op(b[j].second).matrix(), next[h].image[j]);
        }
        diffs.push_back(AbHom(groups[k], groups[k + 1], D, AbHom::Unchecked{}));
    }
    return CochainComplex(0, groups, diffs);
}

enum class DerivedLimitMethod { automatic, cobar, resolution };

struct DerivedLimitOptions {
    std::size_t chain_cap = 1'000'000;
    DerivedLimitMethod method = DerivedLimitMethod::automatic;
    /// automatic mode uses the cobar complex only below this many generators
    std::size_t cobar_generator_limit = 400;
};

/// R^n lim A over Delta_{<=N}, for n <= N - 2.
inline FGAbGroup derived_limit_cobar(const TruncCosimpAb& A, int n, const DerivedLimitOptions& opt = {}) {
    if (n < 0 || n > A.trunc() - 2) throw DegreeRangeError("derived limit degree needs 0 <= n <= N-2");
    DerivedLimitMethod method = opt.method;
    if (method == DerivedLimitMethod::automatic) {
        auto counts = cobar_chain_counts(A.trunc(), n + 1);
        std::size_t widest = 0;
        for (int p = 0; p <= A.trunc(); ++p) widest = std::max(widest, A.level(p).generators());
        Int chains = 0;
        for (const Int& c : counts) chains += c;
        bool small = chains <= Int(opt.chain_cap) && chains * Int(widest) <= Int(opt.cobar_generator_limit);
        method = small ? DerivedLimitMethod::cobar : DerivedLimitMethod::resolution;
    }
    CochainComplex C = method == DerivedLimitMethod::cobar ? cobar_complex(A, n + 1, opt.chain_cap)
                                                           : resolution_complex(A, n + 1);
    return C.cohomology_subquotient(n).group();
}

// ---------------------------------------------------------------------------
// Cosimplicial simplicial abelian groups

class TruncCosimpSimpAb {
public:
    TruncCosimpSimpAb() = default;
    TruncCosimpSimpAb(std::vector<TruncSimpAb> levels, std::vector<std::vector<SimpAbMap>> cofaces,
                      std::vector<std::vector<SimpAbMap>> codegs)
        : levels_(std::move(levels)), cofaces_(std::move(cofaces)), codegs_(std::move(codegs)) {
        if (auto bad = violation()) throw ValidationError(*bad);
    }

    int trunc() const noexcept { return static_cast<int>(levels_.size()) - 1; }
    int simplicial_trunc() const { return levels_.at(0).trunc(); }
    const TruncSimpAb& level(int n) const { return levels_.at(n); }
    const SimpAbMap& coface(int n, int i) const { return cofaces_.at(n).at(i); }
    const SimpAbMap& codeg(int n, int i) const { return codegs_.at(n).at(i); }

    /// The cosimplicial abelian group in simplicial degree m.
    TruncCosimpAb slice(int m) const {
        const int N = trunc();
        std::vector<FGAbGroup> groups;
        for (int n = 0; n <= N; ++n) groups.push_back(levels_[n].level(m));
        std::vector<std::vector<AbHom>> cf(N + 1), cd(N + 1);
        for (int n = 1; n <= N; ++n)
            for (const auto& f : cofaces_[n]) cf[n].push_back(f.levels.at(m));
        for (int n = 0; n + 1 <= N; ++n)
            for (const auto& s : codegs_[n]) cd[n].push_back(s.levels.at(m));
        return TruncCosimpAb(groups, cf, cd);
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
                if (auto bad = simp_ab_map_violation(levels_[n - 1], levels_[n], cofaces_[n][i]))
                    return "d^" + std::to_string(i) + " at level " + std::to_string(n) + ": " + *bad;
            for (std::size_t i = 0; i < nd; ++i)
                if (auto bad = simp_ab_map_violation(levels_[n + 1], levels_[n], codegs_[n][i]))
                    return "s^" + std::to_string(i) + " at level " + std::to_string(n) + ": " + *bad;
        }
        for (int m = 0; m <= simplicial_trunc(); ++m) {
            try {
                (void)slice(m);
            } catch (const ValidationError& e) {
                return std::string(e.what()) + " (simplicial degree " + std::to_string(m) + ")";
            }
        }
        return std::nullopt;
    }

private:
    std::vector<TruncSimpAb> levels_;
    std::vector<std::vector<SimpAbMap>> cofaces_, codegs_;
};

/// Cosimplicial level n -> simplicial map.
using CosimpSimpAbMap = std::vector<SimpAbMap>;

inline std::optional<std::string> cosimp_simp_ab_map_violation(const TruncCosimpSimpAb& A, const TruncCosimpSimpAb& B,
                                                               const CosimpSimpAbMap& f) {
    if (A.trunc() != B.trunc() || A.simplicial_trunc() != B.simplicial_trunc() || int(f.size()) != A.trunc() + 1)
        return "map truncations";
    for (int n = 0; n <= A.trunc(); ++n)
        if (auto bad = simp_ab_map_violation(A.level(n), B.level(n), f[n])) return "level " + std::to_string(n) + ": " + *bad;
    for (int m = 0; m <= A.simplicial_trunc(); ++m) {
        for (int n = 1; n <= A.trunc(); ++n)
            for (int i = 0; i <= n; ++i)
                if (!hom_equal(compose(B.coface(n, i).levels[m], f[n - 1].levels[m]),
                               compose(f[n].levels[m], A.coface(n, i).levels[m])))
                    return "map commutes with d^" + std::to_string(i) + " at level " + std::to_string(n);
        for (int n = 0; n + 1 <= A.trunc(); ++n)
            for (int i = 0; i <= n; ++i)
                if (!hom_equal(compose(B.codeg(n, i).levels[m], f[n + 1].levels[m]),
                               compose(f[n].levels[m], A.codeg(n, i).levels[m])))
                    return "map commutes with s^" + std::to_string(i) + " at level " + std::to_string(n);
    }
    return std::nullopt;
}

/// Z applied levelwise to a cosimplicial space.
inline TruncCosimpSimpAb free_cosimplicial_simp_ab(const TruncCosimpSpace& X) {
    const int N = X.trunc();
    std::vector<TruncSimpAb> levels;
    for (int n = 0; n <= N; ++n) levels.push_back(hurewicz(X.level(n)).first);
    std::vector<std::vector<SimpAbMap>> cofaces(N + 1), codegs(N + 1);
    for (int n = 1; n <= N; ++n)
        for (int i = 0; i <= n; ++i) cofaces[n].push_back(free_map(X.level(n - 1), X.level(n), X.coface(n, i)));
    for (int n = 0; n + 1 <= N; ++n)
        for (int i = 0; i <= n; ++i) codegs[n].push_back(free_map(X.level(n + 1), X.level(n), X.codeg(n, i)));
    return TruncCosimpSimpAb(levels, cofaces, codegs);
}

inline CosimpSimpAbMap free_cosimplicial_map(const TruncCosimpSpace& X, const TruncCosimpSpace& Y,
                                             const std::vector<SimplicialMap>& f) {
    CosimpSimpAbMap out;
    for (int n = 0; n <= X.trunc(); ++n) out.push_back(free_map(X.level(n), Y.level(n), f[n]));
    return out;
}

/// Is f : A -> B a Bousfield-Kan fibration within the truncation: for n + 1 <= N and
/// 1 <= m <= M, A^{n+1}_m -> B^{n+1}_m x_{M^n B_m} M^n A_m is onto.
inline bool bk_fibration_check(const TruncCosimpSimpAb& A, const TruncCosimpSimpAb& B, const CosimpSimpAbMap& f) {
    if (auto bad = cosimp_simp_ab_map_violation(A, B, f)) throw ShapeMismatch(*bad);
    for (int m = 1; m <= A.simplicial_trunc(); ++m) {
        TruncCosimpAb Am = A.slice(m), Bm = B.slice(m);
        for (int n = 0; n + 1 <= A.trunc(); ++n) {
            MatchingGroup MA = matching_group(Am, n + 1), MB = matching_group(Bm, n + 1);
            std::vector<FGAbGroup> pA(n + 1, Am.level(n)), pB(n + 1, Bm.level(n));
            // F : (A^n)^{n+1} -> (B^n)^{n+1}
            std::vector<AbHom> Fparts;
            for (int i = 0; i <= n; ++i) Fparts.push_back(compose(f[n].levels[m], sum_projection(pA, i)));
            AbHom F = stack_homs(MA.ambient, Fparts);
            std::vector<FGAbGroup> P{Bm.level(n + 1), MA.ambient};
            AbHom cond = matching_conditions(Am, n + 1);
            AbHom phi = stack_homs(direct_sum(P), {compose(MB.s_ambient, sum_projection(P, 0)) - compose(F, sum_projection(P, 1)),
                                                   compose(cond, sum_projection(P, 1))});
            Subgroup fibre = kernel(phi);
            AbHom psi = stack_homs(Am.level(n + 1), {f[n + 1].levels[m], MA.s_ambient});
            if (!is_surjective(corestrict(psi, fibre))) return false;
        }
    }
    return true;
}

}  // namespace cosimplex
