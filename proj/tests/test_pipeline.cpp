#include "doctest.h"

#include "mconv/pipeline.hpp"
#include "support.hpp"

using namespace testing;

namespace {

std::size_t blocks_of(const JordanData<CF>& j, const CF& f, const CyclotomicElement& z, std::size_t size) {
    for (const auto& b : j.blocks)
        if (f.equal(b.eigenvalue, z) && b.size == size) return b.multiplicity;
    return 0;
}

} // namespace

TEST_CASE("family ranks at r = 9") {
    CHECK(build_family(1, 4, 9).n == 27);
    CHECK(build_family(4, 4, 9).n == 24);
    CHECK(family_rank(2, 9) == 25);
    CHECK(family_rank(3, 9) == 26);
}

TEST_CASE("configuration hypotheses") {
    PipelineConfig c;
    c.r = 8;
    CHECK_THROWS_WITH_AS(check_config(c), doctest::Contains("HypothesisViolation"), Error);
    c.r = 9;
    CHECK_NOTHROW(check_config(c));
    c.m = 5;
    c.r = 20;
    CHECK_THROWS_WITH_AS(check_config(c), doctest::Contains("HypothesisViolation"), Error);
    c.m = 4;
    c.q = 7;
    CHECK_THROWS_WITH_AS(check_config(c), doctest::Contains("HypothesisViolation"), Error);
    c.m = 6;
    c.r = 10;
    CHECK_NOTHROW(check_config(c));
    c.family = 5;
    CHECK_THROWS_AS(check_config(c), Error);
    CHECK_THROWS_WITH_AS(build_family(1, 4, 8), doctest::Contains("ConditionAViolated"), Error);
}

TEST_CASE("oracle instantiation examples") {
    const CF f(4);
    const auto one = f.one(), minus_one = f.from_int(-1);
    const auto f1 = instantiate_oracle(1, 4, 9);
    REQUIRE(f1.size() == 10);
    CHECK(f1[6].blocks.size() == 2);
    CHECK(blocks_of(f1[6], f, one, 2) == 12);
    CHECK(blocks_of(f1[6], f, one, 3) == 1);
    CHECK(blocks_of(f1[7], f, one, 1) == 1);
    CHECK(blocks_of(f1[7], f, minus_one, 1) == 26);
    const auto f3 = instantiate_oracle(3, 4, 9);
    CHECK(f3[9].blocks.size() == 1);
    CHECK(blocks_of(f3[9], f, minus_one, 1) == 26);
    const auto f2 = instantiate_oracle(2, 4, 9);
    CHECK(blocks_of(f2[6], f, one, 3) == 1);
    CHECK(blocks_of(f2[6], f, one, 2) == 10);
    CHECK(blocks_of(f2[6], f, one, 1) == 2);
    for (int family = 1; family <= 4; ++family)
        for (const auto& j : instantiate_oracle(family, 6, 11)) CHECK(j.dim == family_rank(family, 11));
}

TEST_CASE("ranks and Jordan tables over the test grid") {
    for (unsigned m : {4u, 6u}) {
        for (std::size_t r : {9u, 10u, 11u}) {
            for (int family = 1; family <= 4; ++family) {
                CAPTURE(m);
                CAPTURE(r);
                CAPTURE(family);
                const auto g = build_family(family, m, r);
                CHECK(g.n == family_rank(family, r));
                const auto oracle = instantiate_oracle(family, m, r);
                const std::vector<unsigned> orders{static_cast<unsigned>(arith::lcm(4, m))};
                for (std::size_t i = 0; i < g.entries.size(); ++i) {
                    CAPTURE(i + 1);
                    CHECK(jordan_data(g.entries[i], orders) == oracle[i]);
                }
                // determinants: -1 exactly at r-2, r-1 for families 3 and 4
                for (std::size_t i = 1; i <= r + 1; ++i) {
                    const bool negative = family >= 3 && (i == r - 2 || i == r - 1);
                    CHECK(g.field.equal(determinant(g.entry(i)), g.field.from_int(negative ? -1 : 1)));
                }
            }
        }
    }
}

TEST_CASE("pipeline report for family 1 at q = 5") {
    PipelineConfig c;
    c.q = 5;
    const auto rep = run_pipeline(c);
    CHECK_FALSE(rep.failed);
    CHECK(rep.oracle_match);
    REQUIRE(rep.verdict);
    CHECK(*rep.verdict);
    const auto& d = rep.doc;
    CHECK(d["schema"] == "mconv-report/1");
    CHECK(d["certificate"]["mode"] == "SL");
    CHECK(d["certificate"]["verdict"] == true);
    CHECK(d["residual"]["oracle_match"] == true);
    CHECK(d["base_change"]["pass"] == true);
    CHECK(d["base_change"]["rank_mc_then_reduce"] == 14);
    CHECK(d["theorem_bound"]["bound"] == 27);
    CHECK(d["theorem_bound"]["n_exceeds_bound"] == false);
    CHECK(d["stages"].size() == 5);
    CHECK(d["stages"][1]["selfcheck"]["pass"] == true);
    CHECK(nlohmann::json::parse(d.dump()) == d);

    auto again = run_pipeline(c).doc;
    auto first = d;
    first.erase("timings");
    again.erase("timings");
    CHECK(first.dump() == again.dump());
}

TEST_CASE("pipeline report without q") {
    const auto rep = run_pipeline(PipelineConfig{});
    CHECK(rep.oracle_match);
    CHECK_FALSE(rep.verdict);
    CHECK_FALSE(rep.doc.contains("certificate"));
}

TEST_CASE("pipeline for m = 6 over F_49") {
    PipelineConfig c;
    c.m = 6;
    c.r = 10;
    c.q = 7;
    const auto rep = run_pipeline(c);
    CHECK(rep.oracle_match);
    CHECK(rep.doc["rank"] == 31);
    CHECK(rep.doc["residual"]["field"]["k"] == 2);
    CHECK(rep.doc["certificate"]["q"] == 7);
    CHECK(rep.doc["certificate"]["field_order"] == 49);
    CHECK(rep.verdict == true);
}

TEST_CASE("pipeline SL+- for families 3 and 4") {
    for (int family : {3, 4}) {
        PipelineConfig c;
        c.family = family;
        c.q = 5;
        const auto rep = run_pipeline(c);
        CHECK(rep.oracle_match);
        CHECK(rep.doc["certificate"]["mode"] == "SL_plus_minus");
        CHECK(rep.verdict == true);
    }
}
