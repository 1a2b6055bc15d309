#include "doctest.h"

#include "support.hpp"

using namespace testing;

namespace {

const CF Q = CyclotomicField::rational();

MonodromyTuple<CF> scalar_tuple(std::initializer_list<mpq_class> values) {
    std::vector<Matrix<CF>> entries;
    for (const auto& v : values) entries.push_back(Matrix<CF>::scalar(Q, 1, Q.from_rational(v)));
    return make_tuple(std::move(entries));
}

} // namespace

TEST_CASE("rank-one hypergeometric example") {
    // finite entries 2, 3, -1/6 and -1 at infinity
    const auto t = scalar_tuple({2, 3, mpq_class(-1, 6), -1});
    const auto minus_one = Q.from_int(-1);
    const auto ws = build_ambient(t, minus_one);
    CHECK(ws.ambient.size() == 3);
    CHECK(ws.ambient[0].rows() == 3);
    CHECK(ws.K.dim() == 0);
    CHECK(ws.L.dim() == 1);
    const auto out = mc(t, minus_one);
    CHECK(out.n == 2);
    CHECK(expected_rank(t, minus_one) == 2);
}

TEST_CASE("three finite points, rank one") {
    const auto t = scalar_tuple({2, 3, 5, mpq_class(1, 30)});
    const auto minus_one = Q.from_int(-1);
    const auto ws = build_ambient(t, minus_one);
    CHECK(ws.K.dim() == 0);
    CHECK(ws.L.dim() == 0);
    const auto out = mc(t, minus_one);
    CHECK(out.n == 3);
    CHECK(expected_rank(t, minus_one) == 3);
    CHECK(ordered_product(out.entries, out.entries.size()).is_identity());
}

TEST_CASE("workspace of T_{4,9}") {
    const auto t = construct_T(4, 9);
    const auto minus_one = t.field.from_int(-1);
    const auto ws = build_ambient(t, minus_one);
    CHECK(ws.ambient.size() == 9);
    CHECK(ws.ambient[0].rows() == 18);
    CHECK(ws.K.dim() == 2);
    CHECK(ws.L.dim() == 2);
    for (const auto& b : ws.ambient) CHECK(is_invertible(b));
    const auto brute = build_ambient_bruteforce(t, minus_one);
    CHECK(brute.L == ws.L);
    CHECK(brute.K == ws.K);
    const auto out = mc(t, minus_one);
    CHECK(out.n == 14);
    CHECK(expected_rank(t, minus_one) == 14);
    CHECK(out.labels == t.labels);
}

TEST_CASE("convolution input errors") {
    const auto t = construct_T(4, 9);
    const auto& f = t.field;
    CHECK_THROWS_WITH_AS(mc(t, f.one()), doctest::Contains("InvalidCharacter"), Error);
    CHECK_THROWS_WITH_AS(mc(t, f.zero()), doctest::Contains("InvalidCharacter"), Error);
    const auto short_tuple = scalar_tuple({2, 3, mpq_class(1, 6)});
    // two finite points only
    CHECK_THROWS_WITH_AS(mc(short_tuple, Q.from_int(-1)), doctest::Contains("TooFewPoints"), Error);
}

TEST_CASE("selfcheck of T_{4,9}") {
    const auto t = construct_T(4, 9);
    const auto report = mc_selfcheck(t, t.field.from_int(-1));
    CHECK(report.passed());
    CHECK(report.checks.size() == 3);
}

TEST_CASE("K and L meet trivially, so the rank formula holds for reducible input too") {
    const auto a = scalar_tuple({2, 3, mpq_class(-1, 6), -1});
    const auto b = scalar_tuple({5, 1, mpq_class(-1, 5), -1});
    const auto s = direct_sum(a, b);
    const auto minus_one = Q.from_int(-1);
    const auto ws = build_ambient(s, minus_one);
    CHECK(subspace_sum(ws.K, ws.L).dim() == ws.K.dim() + ws.L.dim());
    const auto out = mc(s, minus_one);
    CHECK(static_cast<long>(out.n) == expected_rank(s, minus_one));
    CHECK(burnside_dimension(out.entries) < out.n * out.n);
    CHECK(mc_selfcheck(s, minus_one).passed());
}

TEST_CASE("MC on random irreducible tuples") {
    std::mt19937_64 rng(11);
    const CF f(4);
    const auto minus_one = f.from_int(-1);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 2 + rng() % 2, r = 3 + rng() % 3;
        const auto tuple = random_irreducible_tuple(rng, n, r);
        const auto ws = build_ambient(tuple, minus_one);
        const auto brute = build_ambient_bruteforce(tuple, minus_one);
        CHECK(ws.L == brute.L);
        const auto out = mc(tuple, minus_one);
        CHECK(static_cast<long>(out.n) == expected_rank(tuple, minus_one));
        CHECK(out.n == r * n - subspace_sum(brute.K, brute.L).dim());
        CHECK(ordered_product(out.entries, out.entries.size()).is_identity());
        CHECK(burnside_dimension(out.entries) == out.n * out.n);
        const auto back = mc(out, minus_one);
        const auto w = simultaneous_conjugacy(back.entries, tuple.entries);
        REQUIRE(w);
        for (std::size_t k = 0; k < w->rows() && k < back.entries.size(); ++k)
            CHECK(*w * back.entries[k] == tuple.entries[k] * *w);
    }
}

TEST_CASE("MC over a finite field agrees with the closed form") {
    const auto t = construct_T(4, 9);
    const auto map = make_residue_map(t.field, 5);
    const auto r = reduce_tuple(t, map);
    const auto minus_one = r.field.from_int(-1);
    CHECK(build_ambient(r, minus_one).L == build_ambient_bruteforce(r, minus_one).L);
    const auto report = mc_selfcheck(r, minus_one);
    CHECK(report.passed());
}

TEST_CASE("base change commutes with MC") {
    const auto t = construct_T(4, 9);
    const auto result = base_change_check(t, make_residue_map(t.field, 5));
    CHECK(result.rank_mc_then_reduce == 14);
    CHECK(result.rank_reduce_then_mc == 14);
    CHECK(result.conjugate);
    CHECK(result.passed());
}
