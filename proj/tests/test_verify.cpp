#include <catch_amalgamated.hpp>

#include "cosimplex/verify.hpp"

using namespace cosimplex;

TEST_CASE("every suite passes a few seeded cases") {
    for (const auto& name : suite_names()) {
        auto r = run_suite(name, 1, 3);
        INFO(name);
        for (const auto& c : r.cases) {
            INFO("case " << c.index << ": " << c.detail);
            CHECK(c.pass);
        }
        CHECK(r.cases.size() == 3);
    }
}

TEST_CASE("suite runs are deterministic") {
    auto a = run_suite("lemma1", 9, 5), b = run_suite("lemma1", 9, 5);
    REQUIRE(a.cases.size() == b.cases.size());
    for (std::size_t i = 0; i < a.cases.size(); ++i) CHECK(a.cases[i].seed == b.cases[i].seed);
    CHECK(case_seed(9, 0) != case_seed(10, 0));
    CHECK_THROWS_AS(run_suite("lemma99", 0, 1), Error);
    CHECK_FALSE(has_suite("lemma99"));
}
