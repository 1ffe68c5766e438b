#pragma once

#include <string>
#include <vector>

#include "cosimplex/generators.hpp"
#include "cosimplex/json_io.hpp"

namespace cosimplex::samples {

struct Sample {
    const char* name;
    const char* description;
    json_io::json (*build)();
};

inline json_io::json constant_z() {
    return json_io::make_bundle("cosimplicial-ab", "constant-z",
                                json_io::write_cosimplicial_ab(constant_cosimplicial_ab(FGAbGroup::free(1), 4)));
}

inline json_io::json free_delta_vertices() {
    return json_io::make_bundle("cosimplicial-ab", "free-delta-vertices",
                                json_io::write_cosimplicial_ab(free_cosimplicial_ab(delta_vertices(3))));
}

inline json_io::json delta_vertices_set() {
    return json_io::make_bundle("cosimplicial-set", "delta-vertices", json_io::write_cosimplicial_set(delta_vertices(2)));
}

inline json_io::json constant_gpd(const FinGroupoid& G, const std::string& name) {
    return json_io::make_bundle("cosimplicial-gpd", name, json_io::write_cosimplicial_gpd(constant_cosimplicial_gpd(G, 3)));
}

inline json_io::json constant_z2_gpd() { return constant_gpd(cyclic_groupoid(2), "constant-z2"); }
inline json_io::json constant_z3_gpd() { return constant_gpd(cyclic_groupoid(3), "constant-z3"); }
inline json_io::json constant_trivial_gpd() { return constant_gpd(trivial_groupoid(), "constant-trivial"); }

inline json_io::json sphere_set() {
    return json_io::make_bundle("simplicial-set", "sphere-2", json_io::write_simplicial_set(boundary_simplex(3, 3)));
}

/// Gamma of a complex with H_2 = Z and H_3 = Z/2.
inline json_io::json two_stage() {
    Rng rng(0);
    auto R = complex_from_pieces(rng, {{2, 0, 0}, {3, 2, 0}}, 4);
    return json_io::make_bundle("simplicial-ab", "two-stage", json_io::write_simplicial_ab(gamma_dk(R.complex, 4)));
}

/// S^2 = boundary of Delta^3 with U its first vertex, as a one-object diagram.
inline json_io::json sphere_model() {
    auto S = boundary_simplex(3, 3);
    auto [U, incl] = generated_subset(S, {{0, 0}});
    auto I = discrete_groupoid({"*"});
    json_io::DiagramBundle b{SSetDiagram{I, {U}, {identity_map(U)}},
                             SSetDiagram{I, {S}, {identity_map(S)}},
                             SSetDiagram{I, {S}, {identity_map(S)}},
                             {incl},
                             {identity_map(S)},
                             2};
    return json_io::make_bundle("diagram-bundle", "sphere-model", json_io::write_diagram_bundle(b));
}

inline const std::vector<Sample>& registry() {
    static const std::vector<Sample> s{
        {"constant-z", "constant cosimplicial Z at N = 4", constant_z},
        {"free-delta-vertices", "free abelian group on the vertex cosimplicial set, N = 3", free_delta_vertices},
        {"delta-vertices", "vertex cosimplicial set of Delta at N = 2", delta_vertices_set},
        {"constant-z2", "constant cosimplicial groupoid on Z/2 at N = 3", constant_z2_gpd},
        {"constant-z3", "constant cosimplicial groupoid on Z/3 at N = 3", constant_z3_gpd},
        {"constant-trivial", "constant cosimplicial groupoid on the point at N = 3", constant_trivial_gpd},
        {"sphere-2", "boundary of Delta^3 truncated at 3", sphere_set},
        {"two-stage", "simplicial abelian group with H_2 = Z and H_3 = Z/2", two_stage},
        {"sphere-model", "U -> V -> F data for the 2-sphere", sphere_model},
    };
    return s;
}

inline const Sample* find(const std::string& name) {
    for (const auto& s : registry())
        if (name == s.name) return &s;
    return nullptr;
}

}  // namespace cosimplex::samples
