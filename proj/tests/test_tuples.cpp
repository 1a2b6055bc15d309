#include "doctest.h"

#include "support.hpp"

using namespace testing;

namespace {

const CF Q = CyclotomicField::rational();

std::vector<long> signs(const RankOneTuple<CF>& c) {
    std::vector<long> out;
    for (const auto& s : c.scalars) out.push_back(c.field.coeffs(s).front().get_num().get_si());
    return out;
}

} // namespace

TEST_CASE("construct_T at m = 4, r = 9") {
    const auto t = construct_T(4, 9);
    const auto& f = t.field;
    CHECK(f.order() == 4);
    CHECK(t.n == 2);
    CHECK(t.r == 9);
    CHECK(t.entries.size() == 10);
    const auto i = f.root_of_unity(4, 1);
    const auto mi = f.inv(i);
    CHECK(t.entry(1) == Matrix<CF>::diagonal(f, {i, mi}));
    CHECK(t.entry(2) == Matrix<CF>::diagonal(f, {mi, i}));
    CHECK(t.entry(3) == Matrix<CF>::diagonal(f, {i, mi}));
    CHECK(t.entry(4) == Matrix<CF>::diagonal(f, {mi, i}));
    const auto minus_id = Matrix<CF>::scalar(f, 2, f.from_int(-1));
    CHECK(t.entry(5) == minus_id);
    CHECK(t.entry(6) == minus_id);
    CHECK(t.entry(7) == Matrix<CF>::from_ints(f, {{1, 0}, {0, -1}}));
    CHECK(t.entry(8) == Matrix<CF>::from_ints(f, {{0, 1}, {1, 0}}));
    const auto rot = Matrix<CF>::from_ints(f, {{0, -1}, {1, 0}});
    CHECK((t.entry(9) == rot || t.entry(9) == -rot));
    CHECK(kernel(t.entry(9) - Matrix<CF>::identity(f, 2)).dim() == 0);
    CHECK(t.entry(10) == minus_id);
    CHECK(t.labels.back() == "infinity");
}

TEST_CASE("construct_T hypotheses") {
    CHECK_THROWS_WITH_AS(construct_T(4, 8), doctest::Contains("ConditionAViolated"), Error);
    CHECK_THROWS_WITH_AS(construct_T(2, 20), doctest::Contains("InvalidM"), Error);
    CHECK(lambda_exponents(4) == std::vector<unsigned>{1, 3, 1, 3});
    CHECK(lambda_exponents(6) == std::vector<unsigned>{1, 5, 1, 5});
}

TEST_CASE("construct_T invariants over a grid") {
    for (unsigned m : {4u, 6u, 8u}) {
        for (std::size_t r = 9; r <= 14; ++r) {
            if (!(2 * arith::euler_phi(m) + 4 < r)) continue;
            CAPTURE(m);
            CAPTURE(r);
            const auto t = construct_T(m, r);
            const auto& f = t.field;
            CHECK(f.order() == arith::lcm(4, m));
            CHECK_NOTHROW(validate(t));
            const auto rot = Matrix<CF>::from_ints(f, {{0, -1}, {1, 0}});
            CHECK((t.entry(r) == rot || t.entry(r) == -rot));
            CHECK(t.infinity() == Matrix<CF>::scalar(f, 2, f.from_int(-1)));
            const auto census = entry_census(t, 4 * m);
            std::vector<std::size_t> with_fixed;
            for (const auto& row : census)
                if (row.rank_minus_one < 2) with_fixed.push_back(row.index);
            CHECK(with_fixed == std::vector<std::size_t>{r - 2, r - 1});
            CHECK(census[r - 3].is_reflection);
            CHECK(census[r - 2].is_reflection);
        }
    }
}

TEST_CASE("validate") {
    CHECK_NOTHROW(validate(construct_T(4, 9)));
    auto bad = make_tuple<CF>({Matrix<CF>::from_ints(Q, {{2}}), Matrix<CF>::from_ints(Q, {{3}})});
    CHECK_THROWS_WITH_AS(validate(bad), doctest::Contains("ProductRelationViolated"), Error);
    auto singular = construct_T(4, 9);
    singular.entries[3] = Matrix<CF>(singular.field, 2, 2);
    CHECK_THROWS_WITH_AS(validate(singular), doctest::Contains("SingularEntry"), Error);
}

TEST_CASE("rank-one patterns") {
    CHECK(signs(construct_rank_one(RankOnePattern::N1, 9, Q)) == std::vector<long>{1, 1, 1, 1, 1, 1, -1, 1, -1, 1});
    CHECK(signs(construct_rank_one(RankOnePattern::N3, 9, Q)) == std::vector<long>{1, 1, 1, 1, 1, -1, -1, 1, 1, 1});
    CHECK(signs(construct_rank_one(RankOnePattern::N2, 9, Q)) == std::vector<long>{1, 1, 1, 1, 1, 1, 1, -1, 1, -1});
    CHECK(signs(construct_rank_one(RankOnePattern::N5, 9, Q)) == std::vector<long>{1, 1, 1, 1, 1, -1, 1, 1, -1, 1});
    CHECK(signs(construct_rank_one(RankOnePattern::L5, 9, Q)) == std::vector<long>{1, 1, 1, 1, 1, 1, 1, 1, -1, -1});
    for (auto p : {RankOnePattern::N1, RankOnePattern::N2, RankOnePattern::N3, RankOnePattern::N4, RankOnePattern::N5,
                   RankOnePattern::L5}) {
        for (std::size_t r = 6; r <= 12; ++r) {
            const auto c = construct_rank_one(p, r, Q);
            CHECK(c.scalars.size() == r + 1);
            auto prod = Q.one();
            for (const auto& s : c.scalars) prod = Q.mul(prod, s);
            CHECK(Q.is_one(prod));
        }
        CHECK(parse_pattern(to_string(p)) == p);
    }
    CHECK_FALSE(parse_pattern("N6"));
    CHECK_THROWS_WITH_AS(rank_one_from_signs(Q, {1, -1, 1}), doctest::Contains("ProductRelationViolated"), Error);
    CHECK_THROWS_WITH_AS(construct_rank_one(RankOnePattern::N1, 5, Q), doctest::Contains("TooFewPoints"), Error);
}

TEST_CASE("tensor with rank-one tuples") {
    const auto t = construct_T(4, 9);
    const auto& f = t.field;
    const auto ones = rank_one_from_signs(f, std::vector<int>(10, 1));
    CHECK(tensor_rank_one(t, ones).entries == t.entries);
    const auto n1 = construct_rank_one(RankOnePattern::N1, 9, f);
    const auto n3 = construct_rank_one(RankOnePattern::N3, 9, f);
    const auto tw = tensor_rank_one(t, n1);
    CHECK(tensor_rank_one(tw, n1).entries == t.entries);
    CHECK(tensor_rank_one(tw, n3).entries == tensor_rank_one(tensor_rank_one(t, n3), n1).entries);
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
        const auto c = n1.scalars[i];
        CHECK(f.equal(determinant(tw.entries[i]), f.mul(f.mul(c, c), determinant(t.entries[i]))));
    }
    CHECK_THROWS_WITH_AS(tensor_rank_one(t, construct_rank_one(RankOnePattern::N1, 10, f)),
                         doctest::Contains("ArityMismatch"), Error);
}

TEST_CASE("entry census") {
    const auto t = construct_T(4, 9);
    const auto census = entry_census(t, 16);
    CHECK(census[8].order == 4u);
    CHECK(census[8].rank_minus_one == 2);
    CHECK(census[8].is_bireflection);
    for (const auto& row : census) CHECK(row.is_reflection == (row.index == 7 || row.index == 8));
    CHECK(census[9].is_scalar);
    CHECK(census[9].order == 2u);
    const auto id_row = census_row(Matrix<CF>::identity(t.field, 3), 1, 10);
    CHECK(id_row.is_scalar);
    CHECK(id_row.order == 1u);
    CHECK(id_row.rank_minus_one == 0);
    const auto big = census_row(Matrix<CF>::from_ints(Q, {{2}}), 1, 10);
    CHECK_FALSE(big.order);
}

TEST_CASE("local self-duality") {
    const CF f(8);
    const auto z = f.root_of_unity(8, 1);
    CHECK(is_locally_selfdual(f, jordan_data(Matrix<CF>::diagonal(f, {z, f.inv(z)}), {8})));
    CHECK_FALSE(is_locally_selfdual(f, jordan_data(Matrix<CF>::diagonal(f, {z, z}), {8})));
    const auto flags = local_selfdual_check(construct_T(4, 9), {4});
    CHECK(std::all_of(flags.begin(), flags.end(), [](bool b) { return b; }));
}

TEST_CASE("direct sums") {
    const auto t = construct_T(4, 9);
    const auto s = direct_sum(t, t);
    CHECK(s.n == 4);
    CHECK_NOTHROW(validate(s));
}
