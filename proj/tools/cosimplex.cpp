#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cosimplex/cosimplex.hpp"

namespace {

using namespace cosimplex;
using json = json_io::json;

enum ExitCode { kPass = 0, kInternal = 1, kViolation = 2, kParse = 3, kBudget = 4, kUsage = 5 };

class UsageError : public Error {
public:
    using Error::Error;
};

struct Output {
    json report = json::object();
    std::vector<std::string> lines;
    std::vector<std::string> warnings;
    int code = kPass;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t budget(const std::optional<std::size_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("COSIMPLEX_BUDGET")) {
        try {
            std::size_t pos = 0;
            unsigned long long v = std::stoull(env, &pos);
            if (pos == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        throw UsageError(std::string("COSIMPLEX_BUDGET must be a non-negative integer, got ") + env);
    }
    return 1'000'000;
}

std::string join(const std::vector<std::string>& xs, const std::string& sep = " ") {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
    return out;
}

template <class T>
std::string join_numbers(const std::vector<T>& xs) {
    std::vector<std::string> s;
    for (const auto& x : xs) s.push_back(std::to_string(x));
    return join(s);
}

std::vector<std::string> invariants(const std::vector<AbInvariants>& xs) {
    std::vector<std::string> out;
    for (const auto& x : xs) out.push_back(x.str());
    return out;
}

// ---------------------------------------------------------------------------
// check

json summarize(const json_io::Bundle& b) {
    json s = json::object();
    auto sizes = [&](int top, auto&& size) {
        std::vector<std::size_t> v;
        for (int n = 0; n <= top; ++n) v.push_back(size(n));
        s["trunc"] = top;
        s["level_sizes"] = v;
    };
    auto groups = [&](int top, auto&& level) {
        std::vector<std::string> v;
        for (int n = 0; n <= top; ++n) v.push_back(level(n).invariants().str());
        s["trunc"] = top;
        s["levels"] = v;
    };
    if (b.kind == "cosimplicial-set") {
        auto X = json_io::load(b, b.kind, json_io::read_cosimplicial_set);
        sizes(X.trunc(), [&](int n) { return X.size(n); });
    } else if (b.kind == "simplicial-set") {
        auto X = json_io::load(b, b.kind, json_io::read_simplicial_set);
        sizes(X.trunc(), [&](int n) { return X.size(n); });
    } else if (b.kind == "cosimplicial-ab") {
        auto A = json_io::load(b, b.kind, json_io::read_cosimplicial_ab);
        groups(A.trunc(), [&](int n) { return A.level(n); });
    } else if (b.kind == "simplicial-ab") {
        auto A = json_io::load(b, b.kind, json_io::read_simplicial_ab);
        groups(A.trunc(), [&](int n) { return A.level(n); });
    } else if (b.kind == "cosimplicial-gpd") {
        auto H = json_io::load(b, b.kind, json_io::read_cosimplicial_gpd);
        std::vector<std::size_t> obs, mors;
        for (int n = 0; n <= H.trunc(); ++n) {
            obs.push_back(H.level(n).num_objects());
            mors.push_back(H.level(n).num_morphisms());
        }
        s["trunc"] = H.trunc();
        s["level_objects"] = obs;
        s["level_morphisms"] = mors;
    } else {
        auto D = json_io::load(b, b.kind, json_io::read_diagram_bundle);
        s["shape_objects"] = D.V.shape.num_objects();
        s["shape_morphisms"] = D.V.shape.num_morphisms();
        s["n"] = D.n;
    }
    return s;
}

Output cmd_check(const std::string& path) {
    auto b = json_io::parse_bundle(read_file(path));
    Output out;
    out.report = {{"command", "check"}, {"kind", b.kind}, {"name", b.name}};
    auto violation = [&](const std::string& identity, const std::string& message) {
        out.report["status"] = "violation";
        out.report["identity"] = identity;
        out.report["message"] = message;
        out.lines.push_back("violation: " + identity);
        out.lines.push_back(message);
        out.code = kViolation;
    };
    try {
        json s = summarize(b);
        out.report["status"] = "pass";
        out.report["summary"] = s;
        out.lines.push_back("pass: " + b.kind + (b.name.empty() ? "" : " '" + b.name + "'"));
        for (auto it = s.begin(); it != s.end(); ++it) out.lines.push_back("  " + it.key() + ": " + it.value().dump());
    } catch (const ValidationError& e) {
        violation(e.law(), e.what());
    } catch (const ShapeMismatch& e) {
        violation("shape", e.what());
    }
    return out;
}

// ---------------------------------------------------------------------------
// cohomology

std::pair<int, int> parse_degrees(const std::string& s) {
    int a = 0, b = 0;
    char tail = 0;
    if (std::sscanf(s.c_str(), "%d..%d%c", &a, &b, &tail) == 2) {
    } else if (std::sscanf(s.c_str(), "%d%c", &a, &tail) == 1) {
        b = a;
    } else {
        throw UsageError("--degrees expects a..b or a single degree, got " + s);
    }
    if (a < 0 || b < a) throw UsageError("--degrees needs 0 <= a <= b");
    return {a, b};
}

Output cmd_cohomology(const std::string& path, const std::string& degrees, std::size_t cap) {
    auto b = json_io::parse_bundle(read_file(path));
    auto A = json_io::load(b, "cosimplicial-ab", json_io::read_cosimplicial_ab);
    auto [lo, hi] = parse_degrees(degrees);
    const int N = A.trunc();
    auto cn = cn_subcomplex(A, kAllCodegeneracies).complex;
    DerivedLimitOptions opt;
    opt.chain_cap = cap;

    Output out;
    out.report = {{"command", "cohomology"}, {"name", b.name}, {"trunc", N}};
    out.lines.push_back("degree: moore cN cobar");
    json rows = json::array();
    for (int n = lo; n <= hi; ++n) {
        std::vector<std::optional<std::string>> cells(3);
        if (n <= N - 1) {
            cells[0] = cohomology_H(A, n).invariants().str();
            cells[1] = cn.cohomology_subquotient(n).invariants().str();
        } else {
            out.warnings.push_back("degree " + std::to_string(n) + ": Moore and cN columns need n <= N-1 = " + std::to_string(N - 1));
        }
        if (n <= N - 2) cells[2] = derived_limit_cobar(A, n, opt).invariants().str();
        else out.warnings.push_back("degree " + std::to_string(n) + ": cobar column needs n <= N-2 = " + std::to_string(N - 2));

        std::optional<std::string> seen;
        bool agree = true;
        for (const auto& c : cells)
            if (c) {
                if (seen && *seen != *c) agree = false;
                seen = c;
            }
        json row = {{"degree", n}, {"agree", agree}};
        const char* keys[] = {"moore", "cN", "cobar"};
        std::vector<std::string> text;
        for (int k = 0; k < 3; ++k) {
            row[keys[k]] = cells[k] ? json(*cells[k]) : json("n/a");
            text.push_back(cells[k].value_or("n/a"));
        }
        rows.push_back(row);
        out.lines.push_back(std::to_string(n) + ": " + join(text) + (agree ? "" : "  MISMATCH"));
        if (!agree) out.code = kViolation;
    }
    out.report["rows"] = rows;
    return out;
}

// ---------------------------------------------------------------------------
// torsors and hdelta

Output cmd_inventory(const std::string& path, std::size_t cap, bool list_torsors) {
    auto b = json_io::parse_bundle(read_file(path));
    auto H = std::make_shared<const TruncCosimpGpd>(json_io::load(b, "cosimplicial-gpd", json_io::read_cosimplicial_gpd));
    const int N = H->trunc();
    auto T = enumerate_torsors(H, cap);
    auto D = h_delta(*H, cap);
    auto r = theorem12_check(H, cap);

    Output out;
    out.report = {{"command", list_torsors ? "torsors" : "hdelta"}, {"name", b.name}, {"trunc", N}};
    out.report["torsor_classes"] = T.torsors.size();
    out.report["hdelta"] = {{"objects", D.groupoid.num_objects()},
                            {"morphisms", D.groupoid.num_morphisms()},
                            {"components", count_components(D.groupoid)},
                            {"vertex_orders", r.hdelta_vertex_orders}};
    out.report["theorem12"] = {{"pass", r.pass()},
                               {"fully_faithful", r.fully_faithful},
                               {"essentially_surjective", r.essentially_surjective},
                               {"functorial", r.functorial},
                               {"round_trip", r.round_trip},
                               {"torsor_automorphisms", r.torsor_automorphisms}};
    out.lines.push_back("pi0(torsors) = " + std::to_string(T.torsors.size()) + ", pi0(h_delta) = " + std::to_string(r.hdelta_components));
    out.lines.push_back("h_delta: " + std::to_string(D.groupoid.num_objects()) + " objects, " +
                        std::to_string(D.groupoid.num_morphisms()) + " morphisms, vertex group orders " +
                        join_numbers(r.hdelta_vertex_orders));
    if (N >= 1) {
        auto s = h_delta_stabilization(*H, cap);
        out.report["stabilization"] = {{"objects_before", s.objects_before},
                                       {"morphisms_before", s.morphisms_before},
                                       {"objects", s.objects},
                                       {"morphisms", s.morphisms},
                                       {"stabilized", s.stabilized}};
        out.lines.push_back(std::string("stabilized from N-1 to N: ") + (s.stabilized ? "yes" : "no"));
    } else {
        out.report["stabilization"] = nullptr;
        out.warnings.push_back("stabilization needs N >= 1");
    }
    out.lines.push_back(std::string("theorem12: ") + (r.pass() ? "pass" : "fail"));
    if (list_torsors) {
        json reps = json::array();
        for (std::size_t k = 0; k < T.torsors.size(); ++k) {
            const auto& X = T.torsors[k];
            auto x = torsor_to_hdelta(X);
            std::vector<std::size_t> sizes;
            for (int n = 0; n <= N; ++n) sizes.push_back(X.total.size(n));
            json rep = {{"index", k},
                        {"level_sizes", sizes},
                        {"base_object", H->level(0).object_label(x.a)},
                        {"transition", x.u >= 0 ? json(H->level(1).morphism_label(x.u)) : json(nullptr)}};
            if (k < r.torsor_automorphisms.size()) rep["automorphisms"] = r.torsor_automorphisms[k];
            reps.push_back(rep);
            out.lines.push_back("torsor " + std::to_string(k) + ": level sizes " + join_numbers(sizes) + ", base " +
                                rep["base_object"].get<std::string>() +
                                (x.u >= 0 ? ", transition " + rep["transition"].get<std::string>() : std::string()));
        }
        out.report["torsors"] = reps;
    }
    if (!r.pass()) out.code = kViolation;
    return out;
}

// ---------------------------------------------------------------------------
// verify

Output cmd_verify(const std::string& suite, std::uint64_t seed, std::size_t count) {
    if (!has_suite(suite)) throw UsageError("unknown suite " + suite + "; known suites: " + join(suite_names(), ", "));
    auto r = run_suite(suite, seed, count);
    Output out;
    json cases = json::array();
    for (const auto& c : r.cases) {
        json jc = {{"index", c.index}, {"seed", c.seed}, {"pass", c.pass}};
        if (!c.pass) jc["detail"] = c.detail;
        cases.push_back(jc);
        out.lines.push_back("case " + std::to_string(c.index) + " (seed " + std::to_string(c.seed) + "): " +
                            (c.pass ? "pass" : "FAIL " + c.detail));
    }
    out.report = {{"command", "verify"}, {"suite", suite}, {"seed", seed}, {"count", count},
                  {"passed", r.passed()}, {"pass", r.pass()}, {"cases", cases}};
    out.lines.push_back(suite + ": " + std::to_string(r.passed()) + "/" + std::to_string(count) + " passed");
    if (!r.pass()) out.code = kViolation;
    return out;
}

// ---------------------------------------------------------------------------
// em-model and k-invariant

json hom_matrix(const AbHom& f) { return json_io::write_hom(f)["matrix"]; }

Output cmd_em_model(const std::string& path, std::optional<int> degree) {
    auto b = json_io::parse_bundle(read_file(path));
    auto D = json_io::load(b, "diagram-bundle", json_io::read_diagram_bundle);
    int n = degree.value_or(D.n);
    auto r = em_model(D.U, D.V, D.inclusion, D.F, D.comparison, n);
    const FinCategory& I = D.V.shape;

    Output out;
    json coeff = json::object(), trans = json::object(), arrows = json::array();
    for (std::size_t x = 0; x < r.coefficients.size(); ++x) coeff[I.object_label(int(x))] = r.coefficients[x].str();
    for (std::size_t f = 0; f < r.transitions.size(); ++f)
        trans[I.morphism_label(int(f))] = {{"matrix", hom_matrix(r.transitions[f])}, {"iso", is_isomorphism(r.transitions[f])}};
    out.lines.push_back("window: degrees 0.." + std::to_string(r.window) + ", n = " + std::to_string(r.n));
    for (std::size_t x = 0; x < r.coefficients.size(); ++x)
        out.lines.push_back("H_n at " + I.object_label(int(x)) + ": " + r.coefficients[x].str());
    for (const auto& a : r.arrows) {
        arrows.push_back({{"object", I.object_label(a.object)},
                          {"arrow", a.arrow},
                          {"low", a.low},
                          {"high", a.high},
                          {"source", invariants(a.source)},
                          {"target", invariants(a.target)},
                          {"iso", a.iso}});
        out.lines.push_back(I.object_label(a.object) + " " + a.arrow + " [" + std::to_string(a.low) + ".." + std::to_string(a.high) +
                            "]: " + (a.iso ? "iso" : "NOT iso") + " (" + join(invariants(a.source), ", ") + " -> " +
                            join(invariants(a.target), ", ") + ")");
    }
    out.lines.push_back(std::string("functorial: ") + (r.functorial ? "yes" : "no"));
    out.lines.push_back(std::string("em-model: ") + (r.pass() ? "pass" : "fail"));
    out.report = {{"command", "em-model"}, {"name", b.name},   {"n", r.n},         {"window", r.window},
                  {"coefficients", coeff}, {"transitions", trans}, {"arrows", arrows}, {"functorial", r.functorial},
                  {"pass", r.pass()}};
    if (!r.pass()) out.code = kViolation;
    return out;
}

std::vector<std::string> homology_list(const ChainComplex& C, int top) {
    std::vector<std::string> out;
    for (int m = 0; m <= top; ++m) out.push_back(C.homology(m).str());
    return out;
}

Output cmd_k_invariant(const std::string& path, int degree) {
    auto b = json_io::parse_bundle(read_file(path));
    auto A = json_io::load(b, "simplicial-ab", json_io::read_simplicial_ab);
    auto r = k_invariant_ab(A, degree);
    Output out;
    json hom = {{"P_n", homology_list(r.Pn, r.window)},
                {"P_n-1", homology_list(r.Pn1, r.window)},
                {"target", homology_list(r.target, r.window)}};
    out.report = {{"command", "k-invariant"}, {"name", b.name},         {"n", r.n},
                  {"window", r.window},       {"fibre_class", r.fibre_class.str()}, {"top_class", r.top_class.str()},
                  {"exact_positions", r.exact_positions}, {"homology", hom}, {"pass", r.pass()}};
    out.report["failure"] = r.failure ? json(*r.failure) : json(nullptr);
    out.lines.push_back("n = " + std::to_string(r.n) + ", exactness checked in degrees 0.." + std::to_string(r.window));
    for (auto it = hom.begin(); it != hom.end(); ++it) {
        std::vector<std::string> xs = it.value();
        out.lines.push_back("H_*(" + it.key() + "): " + join(xs, ", "));
    }
    out.lines.push_back("H_n(P_n) = " + r.fibre_class.str() + ", H_{n+1} of the target = " + r.top_class.str());
    out.lines.push_back("exact at " + std::to_string(r.exact_positions.size()) + " positions");
    if (r.failure) out.lines.push_back("failure: " + *r.failure);
    out.lines.push_back(std::string("k-invariant: ") + (r.pass() ? "pass" : "fail"));
    if (!r.pass()) out.code = kViolation;
    return out;
}

// ---------------------------------------------------------------------------
// example

Output cmd_example(const std::string& name) {
    Output out;
    if (name.empty()) {
        json list = json::object();
        for (const auto& s : samples::registry()) {
            list[s.name] = s.description;
            out.lines.push_back(std::string(s.name) + ": " + s.description);
        }
        out.report = {{"command", "example"}, {"examples", list}};
        return out;
    }
    const auto* s = samples::find(name);
    if (!s) throw UsageError("unknown example " + name);
    out.report = s->build();
    out.lines.push_back(out.report.dump(2));
    return out;
}

void emit(const Output& out, bool as_json, bool raw) {
    for (const auto& w : out.warnings) std::cerr << "warning: " << w << "\n";
    if (raw) {
        std::cout << out.report.dump(2) << "\n";
        return;
    }
    if (as_json) {
        json r = out.report;
        if (!out.warnings.empty()) r["warnings"] = out.warnings;
        std::cout << r.dump(2) << "\n";
        return;
    }
    for (const auto& l : out.lines) std::cout << l << "\n";
}

int fail(int code, const std::string& kind, const std::string& message, bool as_json) {
    std::cerr << "error: " << message << "\n";
    if (as_json) std::cout << json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump(2) << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations with truncated (co)simplicial sets, groups and groupoids"};
    app.require_subcommand(1);
    bool as_json = false, as_table = false;
    auto* json_flag = app.add_flag("--json", as_json, "emit deterministic JSON");
    auto* table_flag = app.add_flag("--table", as_table, "emit a plain text table (default)");
    json_flag->excludes(table_flag);

    std::string path, degrees = "0..2", suite, example;
    std::optional<std::size_t> cap;
    std::uint64_t seed = 0;
    std::size_t count = 20;
    std::optional<int> degree;

    auto file_arg = [&](CLI::App* sub) { sub->add_option("file", path, "bundle JSON file")->required(); };

    auto* check = app.add_subcommand("check", "validate a bundle against its identities");
    file_arg(check);
    auto* cohom = app.add_subcommand("cohomology", "Moore, normalized and cobar cohomology of a cosimplicial abelian group");
    file_arg(cohom);
    cohom->add_option("--degrees", degrees, "degree range a..b");
    cohom->add_option("--cap", cap, "cobar chain budget");
    auto* torsors = app.add_subcommand("torsors", "torsor representatives and the comparison with h_delta");
    file_arg(torsors);
    torsors->add_option("--cap", cap, "enumeration budget");
    auto* hdelta = app.add_subcommand("hdelta", "h_delta counts, stabilization and the torsor comparison");
    file_arg(hdelta);
    hdelta->add_option("--cap", cap, "enumeration budget");
    auto* verify = app.add_subcommand("verify", "run a seeded verification suite");
    verify->add_option("--suite", suite, "suite name")->required();
    verify->add_option("--seed", seed, "seed");
    verify->add_option("--count", count, "number of cases");
    auto* em = app.add_subcommand("em-model", "Eilenberg-Mac Lane model of a diagram bundle");
    file_arg(em);
    em->add_option("--degree", degree, "homology degree n (defaults to the bundle's n)");
    auto* kinv = app.add_subcommand("k-invariant", "k-invariant fibre sequence of a simplicial abelian group");
    file_arg(kinv);
    kinv->add_option("--degree", degree, "degree n")->required();
    auto* ex = app.add_subcommand("example", "print a sample bundle, or list them");
    ex->add_option("name", example, "sample name");
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        Output out;
        bool raw = false;
        if (check->parsed()) out = cmd_check(path);
        else if (cohom->parsed()) out = cmd_cohomology(path, degrees, budget(cap));
        else if (torsors->parsed()) out = cmd_inventory(path, budget(cap), true);
        else if (hdelta->parsed()) out = cmd_inventory(path, budget(cap), false);
        else if (verify->parsed()) out = cmd_verify(suite, seed, count);
        else if (em->parsed()) out = cmd_em_model(path, degree);
        else if (kinv->parsed()) out = cmd_k_invariant(path, *degree);
        else {
            out = cmd_example(example);
            raw = !example.empty();
        }
        emit(out, as_json, raw);
        return out.code;
    } catch (const UsageError& e) {
        return fail(kUsage, "usage", e.what(), as_json);
    } catch (const DegreeRangeError& e) {
        return fail(kUsage, "degree range", e.what(), as_json);
    } catch (const ParseError& e) {
        return fail(kParse, "parse", e.what(), as_json);
    } catch (const ValidationError& e) {
        return fail(kViolation, "validation", e.what(), as_json);
    } catch (const ShapeMismatch& e) {
        return fail(kViolation, "validation", e.what(), as_json);
    } catch (const HypothesisFailed& e) {
        return fail(kViolation, "hypothesis", e.what(), as_json);
    } catch (const NotATorsor& e) {
        return fail(kViolation, "validation", e.what(), as_json);
    } catch (const CapExceeded& e) {
        return fail(kBudget, "budget", e.what(), as_json);
    } catch (const std::exception& e) {
        return fail(kInternal, "internal", e.what(), as_json);
    }
}
