#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "mconv/io.hpp"
#include "support.hpp"

using namespace testing;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) { return fs::temp_directory_path() / ("mconv_io_" + name); }

} // namespace

TEST_CASE("field descriptors round trip") {
    for (const auto& fh : std::vector<FieldHandle>{CyclotomicField::rational(), CyclotomicField(12), FiniteField(5, 2),
                                                   FiniteField(7, 1)}) {
        const auto j = std::visit([](const auto& f) { return io::field_to_json(f); }, fh);
        const auto back = io::field_from_json(j);
        CHECK(std::visit([](const auto& f) { return io::field_to_json(f); }, back) == j);
    }
    CHECK(io::field_to_json(FiniteField(5, 2)) == nlohmann::json::parse(R"({"kind":"finite","l":5,"k":2,"modulus":[2,0]})"));
    CHECK(io::field_to_json(CyclotomicField::rational()) == nlohmann::json::parse(R"({"kind":"rational"})"));
    CHECK_THROWS_WITH_AS(io::field_from_json(nlohmann::json::parse(R"({"kind":"padic"})")), doctest::Contains("ParseError"),
                         Error);
}

TEST_CASE("element encodings") {
    const CF f(12);
    const auto e = f.from_coeffs({mpq_class(1, 2), -3, 0, mpq_class(5, 7)});
    const auto j = io::element_to_json(f, e);
    CHECK(j == nlohmann::json::parse(R"(["1/2","-3","0","5/7"])"));
    CHECK(f.equal(io::element_from_json(f, j, "x"), e));
    CHECK_THROWS_WITH_AS(io::element_from_json(f, nlohmann::json::parse(R"(["1/0","0","0","0"])"), "x"),
                         doctest::Contains("ParseError"), Error);
    CHECK_THROWS_WITH_AS(io::element_from_json(f, nlohmann::json::parse(R"(["1","0"])"), "entry"),
                         doctest::Contains("entry"), Error);
    const FF g(5, 2);
    CHECK(io::element_to_json(g, g.from_coeffs(std::vector<std::uint32_t>{3, 4})) == nlohmann::json::parse("[3,4]"));
    CHECK_THROWS_AS(io::element_from_json(g, nlohmann::json::parse("[5,0]"), "x"), Error);
}

TEST_CASE("tuple round trips") {
    const auto t = construct_T(4, 9);
    const auto j = io::tuple_to_json(t);
    const auto back = std::get<MonodromyTuple<CF>>(io::tuple_from_json(j));
    CHECK(back.entries == t.entries);
    CHECK(back.labels == t.labels);
    CHECK(back.n == 2);
    CHECK(back.r == 9);

    const auto r = reduce_tuple(t, make_residue_map(t.field, 5));
    const auto rb = std::get<MonodromyTuple<FF>>(io::tuple_from_json(io::tuple_to_json(r)));
    CHECK(rb.entries == r.entries);

    const auto c = construct_rank_one(RankOnePattern::N2, 9, t.field);
    const auto cb = std::get<RankOneTuple<CF>>(io::rank_one_from_json(io::rank_one_to_json(c)));
    CHECK(cb.scalars == c.scalars);
}

TEST_CASE("files and parse errors") {
    const auto path = temp_file("t49.json");
    io::write_json_file(path, io::tuple_to_json(construct_T(4, 9)));
    const auto back = std::get<MonodromyTuple<CF>>(io::tuple_from_json(io::read_json_file(path)));
    CHECK(back.entries == construct_T(4, 9).entries);

    std::string text;
    {
        std::ifstream in(path);
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    const auto cut = temp_file("truncated.json");
    {
        std::ofstream out(cut);
        out << text.substr(0, text.size() / 2);
    }
    CHECK_THROWS_WITH_AS(io::read_json_file(cut), doctest::Contains("byte"), Error);
    CHECK_THROWS_WITH_AS(io::read_json_file(cut), doctest::Contains("ParseError"), Error);
    CHECK_THROWS_WITH_AS(io::read_json_file(temp_file("missing.json")), doctest::Contains("ParseError"), Error);
    fs::remove(path);
    fs::remove(cut);
}

TEST_CASE("a product-relation violation parses but does not validate") {
    auto j = io::tuple_to_json(construct_T(4, 9));
    j["entries"][0] = j["entries"][7];
    CHECK_NOTHROW(io::parse_tuple(j));
    CHECK_THROWS_WITH_AS(io::tuple_from_json(j), doctest::Contains("ProductRelationViolated"), Error);
    CHECK_THROWS_WITH_AS(validate(std::get<MonodromyTuple<CF>>(io::parse_tuple(j))),
                         doctest::Contains("ProductRelationViolated"), Error);
}

TEST_CASE("malformed tuples name the location") {
    auto j = io::tuple_to_json(construct_T(4, 9));
    j["entries"][2]["entries"][1][0] = "oops";
    CHECK_THROWS_WITH_AS(io::parse_tuple(j), doctest::Contains("tuple.entries[2].entries[1][0]"), Error);
    auto k = io::tuple_to_json(construct_T(4, 9));
    k.erase("r");
    CHECK_THROWS_WITH_AS(io::parse_tuple(k), doctest::Contains("missing \"r\""), Error);
    auto m = io::tuple_to_json(construct_T(4, 9));
    m["entries"].erase(m["entries"].size() - 1);
    CHECK_THROWS_WITH_AS(io::parse_tuple(m), doctest::Contains("ArityMismatch"), Error);
}

TEST_CASE("selfcheck report JSON") {
    SelfcheckReport r;
    r.checks.push_back({"rank_formula", true, "ok"});
    const auto j = io::selfcheck_to_json(r);
    CHECK(j["checks"][0]["name"] == "rank_formula");
    CHECK(j["pass"] == true);
}
