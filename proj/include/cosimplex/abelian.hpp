#pragma once

#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cosimplex/smith.hpp"

namespace cosimplex {

/// Canonical form of a finitely generated abelian group:
/// Z^free_rank + Z/t_1 + ... + Z/t_k with 1 < t_1 | t_2 | ... | t_k.
struct AbInvariants {
    std::size_t free_rank = 0;
    IntVector torsion;

    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    bool is_finite() const { return free_rank == 0; }

    /// Order of a finite group.
    Int order() const {
        if (!is_finite()) throw InfiniteGroup("order of an infinite group");
        Int n = 1;
        for (const Int& t : torsion) n *= t;
        return n;
    }

    std::string str() const {
        if (is_trivial()) return "0";
        std::ostringstream os;
        bool first = true;
        auto sep = [&] {
            if (!first) os << " + ";
            first = false;
        };
        if (free_rank == 1) {
            sep();
            os << "Z";
        } else if (free_rank > 1) {
            sep();
            os << "Z^" << free_rank;
        }
        for (const Int& t : torsion) {
            sep();
            os << "Z/" << t;
        }
        return os.str();
    }

    friend bool operator==(const AbInvariants&, const AbInvariants&) = default;
};

/// Z^g modulo the column span of a g x r relations matrix.
class FGAbGroup {
public:
    FGAbGroup() = default;
    FGAbGroup(std::size_t generators, Matrix relations)
        : gens_(generators), rel_(std::move(relations)) {
        if (rel_.rows() != gens_) {
            if (rel_.rows() == 0 && rel_.cols() == 0)
                rel_ = Matrix(gens_, 0);
            else
                throw ShapeMismatch("relations must have one row per generator");
        }
    }

    static FGAbGroup free(std::size_t rank) { return FGAbGroup(rank, Matrix(rank, 0)); }
    static FGAbGroup zero() { return free(0); }
    static FGAbGroup cyclic(const Int& n) {
        Matrix r(1, 1);
        r(0, 0) = n;
        return FGAbGroup(1, r);
    }
    /// One generator per cyclic factor; an order of 0 means a free factor.
    static FGAbGroup from_orders(const IntVector& orders) {
        std::vector<IntVector> cols;
        for (std::size_t i = 0; i < orders.size(); ++i) {
            if (orders[i] == 0) continue;
            IntVector c(orders.size());
            c[i] = orders[i];
            cols.push_back(std::move(c));
        }
        return FGAbGroup(orders.size(), Matrix::from_columns(orders.size(), cols));
    }
    static FGAbGroup from_invariants(const AbInvariants& inv) {
        IntVector orders(inv.free_rank, Int(0));
        orders.insert(orders.end(), inv.torsion.begin(), inv.torsion.end());
        return from_orders(orders);
    }

    std::size_t generators() const noexcept { return gens_; }
    const Matrix& relations() const noexcept { return rel_; }

    AbInvariants invariants() const {
        SmithOptions opt;
        opt.left = opt.right = false;
        SmithResult r = smith_normal_form(rel_, opt);
        AbInvariants inv;
        inv.free_rank = gens_ - r.rank;
        for (std::size_t i = 0; i < r.rank; ++i)
            if (r.S(i, i) != 1) inv.torsion.push_back(r.S(i, i));
        return inv;
    }

    bool is_trivial() const { return invariants().is_trivial(); }

    LatticeSolver relation_solver() const { return LatticeSolver(rel_); }

    bool is_zero_element(const IntVector& x) const { return relation_solver().contains(x); }

    /// Per-generator orders when the presentation is a direct sum of cyclic
    /// groups on the generators (each relation column is k * e_i); 0 = free.
    std::optional<IntVector> diagonal_orders() const {
        IntVector orders(gens_, Int(0));
        for (std::size_t j = 0; j < rel_.cols(); ++j) {
            std::size_t nonzero = 0, at = 0;
            for (std::size_t i = 0; i < gens_; ++i)
                if (rel_(i, j) != 0) {
                    ++nonzero;
                    at = i;
                }
            if (nonzero == 0) continue;
            if (nonzero > 1) return std::nullopt;
            Int v = abs(rel_(at, j));
            orders[at] = orders[at] == 0 ? v : Int(gcd(orders[at], v));
        }
        return orders;
    }

private:
    std::size_t gens_ = 0;
    Matrix rel_;
};

inline FGAbGroup direct_sum(const FGAbGroup& a, const FGAbGroup& b) {
    return FGAbGroup(a.generators() + b.generators(), block_diagonal(a.relations(), b.relations()));
}

inline FGAbGroup direct_sum(const std::vector<FGAbGroup>& parts) {
    FGAbGroup acc = FGAbGroup::zero();
    for (const auto& p : parts) acc = direct_sum(acc, p);
    return acc;
}

/// Homomorphism given by the images of the source generators (matrix columns).
class AbHom {
public:
    AbHom() = default;
    /// Validates that every source relation maps into the target relations.
    AbHom(FGAbGroup source, FGAbGroup target, Matrix matrix)
        : AbHom(std::move(source), std::move(target), std::move(matrix), Unchecked{}) {
        Matrix image = matrix_ * source_.relations();
        if (image.cols() == 0) return;
        LatticeSolver solver = target_.relation_solver();
        for (std::size_t j = 0; j < image.cols(); ++j)
            if (!solver.contains(image.column(j)))
                throw ValidationError("homomorphism well-definedness",
                                      "source relation " + std::to_string(j) + " is not killed");
    }

    struct Unchecked {};
    AbHom(FGAbGroup source, FGAbGroup target, Matrix matrix, Unchecked)
        : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
        if (matrix_.rows() == 0 && matrix_.cols() == 0)
            matrix_ = Matrix(target_.generators(), source_.generators());
        if (matrix_.rows() != target_.generators() || matrix_.cols() != source_.generators())
            throw ShapeMismatch("homomorphism matrix shape does not match groups");
    }

    static AbHom zero(const FGAbGroup& s, const FGAbGroup& t) {
        return AbHom(s, t, Matrix(t.generators(), s.generators()), Unchecked{});
    }
    static AbHom identity(const FGAbGroup& g) {
        return AbHom(g, g, Matrix::identity(g.generators()), Unchecked{});
    }

    const FGAbGroup& source() const noexcept { return source_; }
    const FGAbGroup& target() const noexcept { return target_; }
    const Matrix& matrix() const noexcept { return matrix_; }

    IntVector operator()(const IntVector& x) const { return matrix_ * x; }

private:
    FGAbGroup source_, target_;
    Matrix matrix_;
};

/// g o f
inline AbHom compose(const AbHom& g, const AbHom& f) {
    if (g.source().generators() != f.target().generators())
        throw ShapeMismatch("composition of non-composable homomorphisms");
    return AbHom(f.source(), g.target(), g.matrix() * f.matrix(), AbHom::Unchecked{});
}

inline AbHom operator+(const AbHom& f, const AbHom& g) {
    return AbHom(f.source(), f.target(), f.matrix() + g.matrix(), AbHom::Unchecked{});
}
inline AbHom operator-(const AbHom& f) {
    return AbHom(f.source(), f.target(), -f.matrix(), AbHom::Unchecked{});
}
inline AbHom operator-(const AbHom& f, const AbHom& g) { return f + (-g); }
inline AbHom scaled(const AbHom& f, const Int& k) {
    return AbHom(f.source(), f.target(), scaled(f.matrix(), k), AbHom::Unchecked{});
}

/// True iff f - g sends every generator into the target relations.
inline bool hom_equal(const AbHom& f, const AbHom& g) {
    if (f.source().generators() != g.source().generators() ||
        f.target().generators() != g.target().generators())
        throw ShapeMismatch("hom_equal on homomorphisms of different shape");
    Matrix diff = f.matrix() - g.matrix();
    if (diff.is_zero()) return true;
    LatticeSolver solver = f.target().relation_solver();
    for (std::size_t j = 0; j < diff.cols(); ++j)
        if (!solver.contains(diff.column(j))) return false;
    return true;
}

inline bool is_zero_hom(const AbHom& f) { return hom_equal(f, AbHom::zero(f.source(), f.target())); }

/// A -> A + B and friends for binary sums.
inline AbHom direct_sum(const AbHom& f, const AbHom& g) {
    return AbHom(direct_sum(f.source(), g.source()), direct_sum(f.target(), g.target()),
                 block_diagonal(f.matrix(), g.matrix()), AbHom::Unchecked{});
}

/// (f_1, ..., f_k): A -> B_1 + ... + B_k
inline AbHom stack_homs(const FGAbGroup& source, const std::vector<AbHom>& parts) {
    std::vector<FGAbGroup> targets;
    Matrix m(0, source.generators());
    for (const auto& p : parts) {
        targets.push_back(p.target());
        m = vstack(m, p.matrix());
    }
    return AbHom(source, direct_sum(targets), m, AbHom::Unchecked{});
}

/// [f_1 ... f_k]: A_1 + ... + A_k -> B
inline AbHom sum_homs(const FGAbGroup& target, const std::vector<AbHom>& parts) {
    std::vector<FGAbGroup> sources;
    Matrix m(target.generators(), 0);
    for (const auto& p : parts) {
        sources.push_back(p.source());
        m = hstack(m, p.matrix());
    }
    return AbHom(direct_sum(sources), target, m, AbHom::Unchecked{});
}

/// A subgroup S of G presented on a lattice basis L with relations(G) in span(L).
struct Subgroup {
    FGAbGroup group;    // abstract presentation of S
    AbHom inclusion;    // S -> G, injective
    Matrix lattice;     // basis of the preimage lattice in Z^{gens(G)}
};

/// Express the columns of `vectors` in coordinates of the lattice basis L.
inline Matrix lattice_coordinates(const LatticeSolver& L, const Matrix& vectors) {
    Matrix out(L.cols(), vectors.cols());
    for (std::size_t j = 0; j < vectors.cols(); ++j) {
        auto y = L.solve(vectors.column(j));
        if (!y) throw ValidationError("lattice membership", "vector outside subgroup lattice");
        for (std::size_t i = 0; i < L.cols(); ++i) out(i, j) = (*y)[i];
    }
    return out;
}

/// The subgroup of G whose preimage lattice is spanned by `generators` and the relations of G.
inline Subgroup subgroup_from_lattice(const FGAbGroup& G, const Matrix& generators) {
    Matrix gens = hstack(generators, G.relations());
    Matrix L = column_lattice_basis(gens);
    LatticeSolver solver(L);
    FGAbGroup S(L.cols(), lattice_coordinates(solver, G.relations()));
    return Subgroup{S, AbHom(S, G, L, AbHom::Unchecked{}), L};
}

/// Preimage lattice { x : M x in span(R_target) } as a generating matrix.
inline Matrix preimage_lattice_generators(const AbHom& f) {
    const std::size_t g = f.source().generators();
    Matrix big = hstack(f.matrix(), f.target().relations());
    Matrix N = integer_kernel(big);
    return row_slice(N, 0, g);
}

inline Subgroup kernel(const AbHom& f) {
    return subgroup_from_lattice(f.source(), preimage_lattice_generators(f));
}

inline Subgroup image(const AbHom& f) { return subgroup_from_lattice(f.target(), f.matrix()); }

/// Cokernel with its projection.
inline std::pair<FGAbGroup, AbHom> cokernel(const AbHom& f) {
    FGAbGroup Q(f.target().generators(), hstack(f.target().relations(), f.matrix()));
    return {Q, AbHom(f.target(), Q, Matrix::identity(Q.generators()), AbHom::Unchecked{})};
}

inline bool is_surjective(const AbHom& f) { return cokernel(f).first.is_trivial(); }
inline bool is_injective(const AbHom& f) { return kernel(f).group.is_trivial(); }
inline bool is_isomorphism(const AbHom& f) { return is_injective(f) && is_surjective(f); }

/// Is y (target coordinates) in the image of f, modulo target relations?
inline bool in_image(const AbHom& f, const IntVector& y) {
    return LatticeSolver(hstack(f.matrix(), f.target().relations())).contains(y);
}

/// Factor f: A -> B through subgroups S <= A and T <= B (f(S) must lie in T).
inline AbHom restrict_hom(const AbHom& f, const Subgroup& S, const Subgroup& T) {
    Matrix images = f.matrix() * S.lattice;
    LatticeSolver solver(T.lattice);
    return AbHom(S.group, T.group, lattice_coordinates(solver, images), AbHom::Unchecked{});
}

/// Inverse of an isomorphism.
inline AbHom inverse(const AbHom& f) {
    if (!is_isomorphism(f)) throw Error("inverse of a non-isomorphism");
    const std::size_t n = f.target().generators();
    LatticeSolver solver(hstack(f.matrix(), f.target().relations()));
    Matrix inv(f.source().generators(), n);
    for (std::size_t j = 0; j < n; ++j) {
        IntVector e(n);
        e[j] = 1;
        auto y = solver.solve(e);
        for (std::size_t i = 0; i < inv.rows(); ++i) inv(i, j) = (*y)[i];
    }
    return AbHom(f.target(), f.source(), inv, AbHom::Unchecked{});
}

/// ker(out) / im(in) at a group G, with the cycle lattice retained so that
/// ambient cycles can be mapped to classes.
class Subquotient {
public:
    /// `in` ends at G (or is absent), `out` starts at G (or is absent).
    Subquotient(const FGAbGroup& G, const AbHom* in, const AbHom* out) : ambient_(G) {
        const std::size_t g = G.generators();
        Matrix cycle_gens = out ? preimage_lattice_generators(*out) : Matrix::identity(g);
        cycles_ = column_lattice_basis(hstack(cycle_gens, G.relations()));
        solver_ = LatticeSolver(cycles_);
        Matrix boundaries = G.relations();
        if (in) {
            if (in->target().generators() != g) throw ShapeMismatch("incoming map does not end at group");
            boundaries = hstack(in->matrix(), boundaries);
        }
        group_ = FGAbGroup(cycles_.cols(), lattice_coordinates(solver_, boundaries));
    }

    const FGAbGroup& group() const noexcept { return group_; }
    const FGAbGroup& ambient() const noexcept { return ambient_; }
    /// Cycle representatives of the generators of group(), as ambient columns.
    const Matrix& cycles() const noexcept { return cycles_; }
    AbInvariants invariants() const { return group_.invariants(); }

    bool is_cycle(const IntVector& z) const { return solver_.contains(z); }

    /// Class of an ambient cycle, in coordinates of group().
    IntVector class_of(const IntVector& z) const {
        auto y = solver_.solve(z);
        if (!y) throw ValidationError("cycle membership", "vector is not a cycle");
        return *y;
    }

    /// Map induced by an ambient map f: ambient() -> other.ambient() carrying cycles to cycles.
    AbHom induced(const AbHom& f, const Subquotient& other) const {
        Matrix images = f.matrix() * cycles_;
        return AbHom(group_, other.group_, lattice_coordinates(other.solver_, images),
                     AbHom::Unchecked{});
    }

    AbHom inclusion() const { return AbHom(group_, ambient_, cycles_, AbHom::Unchecked{}); }

private:
    FGAbGroup ambient_;
    Matrix cycles_;
    LatticeSolver solver_;
    FGAbGroup group_;
};

/// Cochain complex C^lo -> C^{lo+1} -> ... -> C^hi, zero below lo.
class CochainComplex {
public:
    CochainComplex() = default;
    CochainComplex(int lowest, std::vector<FGAbGroup> groups, std::vector<AbHom> differentials)
        : lo_(lowest), groups_(std::move(groups)), diffs_(std::move(differentials)) {
        if (groups_.empty()) throw ShapeMismatch("cochain complex needs at least one group");
        if (diffs_.size() + 1 != groups_.size())
            throw ShapeMismatch("cochain complex needs one differential between consecutive groups");
        for (std::size_t k = 0; k < diffs_.size(); ++k)
            if (diffs_[k].source().generators() != groups_[k].generators() ||
                diffs_[k].target().generators() != groups_[k + 1].generators())
                throw ShapeMismatch("differential " + std::to_string(k) + " has wrong shape");
        for (std::size_t k = 0; k + 1 < diffs_.size(); ++k)
            if (!is_zero_hom(compose(diffs_[k + 1], diffs_[k])))
                throw ValidationError("delta o delta = 0",
                                      "at degree " + std::to_string(lo_ + static_cast<int>(k)));
    }

    int lowest() const noexcept { return lo_; }
    int highest() const noexcept { return lo_ + static_cast<int>(groups_.size()) - 1; }
    const FGAbGroup& group(int n) const { return groups_.at(index(n)); }
    /// delta^n : C^n -> C^{n+1}
    const AbHom& differential(int n) const { return diffs_.at(index(n)); }
    const std::vector<FGAbGroup>& groups() const noexcept { return groups_; }
    const std::vector<AbHom>& differentials() const noexcept { return diffs_; }

    bool has_cohomology(int n) const { return n >= lo_ && n < highest(); }

    Subquotient cohomology_subquotient(int n) const {
        if (!has_cohomology(n))
            throw DegreeRangeError("cohomology degree " + std::to_string(n) + " outside [" +
                                   std::to_string(lo_) + ", " + std::to_string(highest() - 1) + "]");
        const AbHom* in = n > lo_ ? &diffs_[index(n - 1)] : nullptr;
        return Subquotient(groups_[index(n)], in, &diffs_[index(n)]);
    }

private:
    std::size_t index(int n) const {
        if (n < lo_ || n > highest()) throw DegreeRangeError("degree " + std::to_string(n) + " not in complex");
        return static_cast<std::size_t>(n - lo_);
    }

    int lo_ = 0;
    std::vector<FGAbGroup> groups_;
    std::vector<AbHom> diffs_;
};

/// Non-negatively graded chain complex C_0 <- C_1 <- ... <- C_top, zero above top.
class ChainComplex {
public:
    ChainComplex() = default;
    /// boundaries[m - 1] is d_m : C_m -> C_{m-1}.
    ChainComplex(std::vector<FGAbGroup> groups, std::vector<AbHom> boundaries)
        : groups_(std::move(groups)), bd_(std::move(boundaries)) {
        if (groups_.empty()) groups_.push_back(FGAbGroup::zero());
        if (bd_.size() + 1 != groups_.size())
            throw ShapeMismatch("chain complex needs one boundary between consecutive groups");
        for (std::size_t m = 1; m < groups_.size(); ++m)
            if (bd_[m - 1].source().generators() != groups_[m].generators() ||
                bd_[m - 1].target().generators() != groups_[m - 1].generators())
                throw ShapeMismatch("boundary " + std::to_string(m) + " has wrong shape");
        for (std::size_t m = 2; m < groups_.size(); ++m)
            if (!is_zero_hom(compose(bd_[m - 2], bd_[m - 1])))
                throw ValidationError("d o d = 0", "at degree " + std::to_string(m));
    }

    int top() const noexcept { return static_cast<int>(groups_.size()) - 1; }
    /// Zero group above top.
    FGAbGroup group(int m) const {
        if (m < 0) throw DegreeRangeError("negative chain degree");
        return m <= top() ? groups_[m] : FGAbGroup::zero();
    }
    /// d_m : C_m -> C_{m-1}; zero outside 1..top.
    AbHom boundary(int m) const {
        if (m >= 1 && m <= top()) return bd_[m - 1];
        return AbHom::zero(group(m), m >= 1 ? group(m - 1) : FGAbGroup::zero());
    }
    const std::vector<FGAbGroup>& groups() const noexcept { return groups_; }
    const std::vector<AbHom>& boundaries() const noexcept { return bd_; }

    Subquotient homology_subquotient(int n) const {
        if (n < 0) throw DegreeRangeError("negative homology degree");
        AbHom in = boundary(n + 1);
        AbHom out = boundary(n);
        return Subquotient(group(n), &in, n >= 1 ? &out : nullptr);
    }
    AbInvariants homology(int n) const { return homology_subquotient(n).invariants(); }

private:
    std::vector<FGAbGroup> groups_;
    std::vector<AbHom> bd_;
};

/// Degreewise maps f_m : C_m -> D_m for m = 0..top(C).
struct ChainMap {
    std::vector<AbHom> components;

    /// Checks d f = f d in every degree where both sides are defined.
    std::optional<std::string> violation(const ChainComplex& C, const ChainComplex& D) const {
        if (static_cast<int>(components.size()) != C.top() + 1) return "chain map needs one component per degree";
        for (int m = 1; m <= C.top(); ++m) {
            AbHom lhs = compose(D.boundary(m), components[m]);
            AbHom rhs = compose(components[m - 1], C.boundary(m));
            if (m > D.top()) lhs = AbHom::zero(C.group(m), D.group(m - 1));
            if (!hom_equal(lhs, rhs)) return "chain map commutes with boundary in degree " + std::to_string(m);
        }
        return std::nullopt;
    }

    AbHom induced_on_homology(const ChainComplex& C, const ChainComplex& D, int n) const {
        return C.homology_subquotient(n).induced(components.at(n), D.homology_subquotient(n));
    }
};

/// H^n = ker(delta^n) / im(delta^{n-1}) in invariant-factor form.
inline AbInvariants cohomology(const CochainComplex& C, int n) {
    return C.cohomology_subquotient(n).invariants();
}

}  // namespace cosimplex
