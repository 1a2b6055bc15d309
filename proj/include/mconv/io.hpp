#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include "json.hpp"

#include "mconv/convolution.hpp"
#include "mconv/fields.hpp"
#include "mconv/tuples.hpp"

// JSON documents for fields, elements, matrices and tuples.
//
//   field:   {"kind":"cyclotomic","order":N} | {"kind":"rational"}
//            | {"kind":"finite","l":l,"k":k,"modulus":[c_0,...,c_{k-1}]}
//   element: cyclotomic -> array of phi(N) strings "p/q"; finite -> array of k ints
//   matrix:  {"field", "rows", "cols", "entries": [[elem, ...], ...]}
//   tuple:   {"field", "n", "r", "entries": [matrix, ...], "labels": [...]}
//   rank-one: {"field", "r", "scalars": [elem, ...]}

namespace mconv::io {

using json = nlohmann::json;

using AnyTuple = std::variant<MonodromyTuple<CyclotomicField>, MonodromyTuple<FiniteField>>;
using AnyRankOne = std::variant<RankOneTuple<CyclotomicField>, RankOneTuple<FiniteField>>;

json field_to_json(const CyclotomicField& f);
json field_to_json(const FiniteField& f);
FieldHandle field_from_json(const json& j, const std::string& where = "field");

json element_to_json(const CyclotomicField& f, const CyclotomicElement& e);
json element_to_json(const FiniteField& f, FiniteField::Element e);
CyclotomicElement element_from_json(const CyclotomicField& f, const json& j, const std::string& where);
FiniteField::Element element_from_json(const FiniteField& f, const json& j, const std::string& where);

template <ExactField F>
json matrix_to_json(const Matrix<F>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(element_to_json(m.field(), m(i, j)));
        rows.push_back(std::move(row));
    }
    return {{"field", field_to_json(m.field())}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

/// Reads a matrix over a known field; the embedded descriptor must agree.
template <ExactField F>
Matrix<F> matrix_from_json(const F& field, const json& j, const std::string& where);

template <ExactField F>
json tuple_to_json(const MonodromyTuple<F>& t) {
    json entries = json::array();
    for (const auto& m : t.entries) entries.push_back(matrix_to_json(m));
    return {{"field", field_to_json(t.field)}, {"n", t.n}, {"r", t.r}, {"entries", entries}, {"labels", t.labels}};
}

template <ExactField F>
json rank_one_to_json(const RankOneTuple<F>& c) {
    json scalars = json::array();
    for (const auto& s : c.scalars) scalars.push_back(element_to_json(c.field, s));
    return {{"field", field_to_json(c.field)}, {"r", c.r}, {"scalars", scalars}};
}

/// Parses a tuple document without checking the product relation.
AnyTuple parse_tuple(const json& j);
/// Parses and validates a tuple document.
AnyTuple tuple_from_json(const json& j);
AnyRankOne rank_one_from_json(const json& j);

json any_tuple_to_json(const AnyTuple& t);

json selfcheck_to_json(const SelfcheckReport& r);

/// Reads a JSON file; syntax errors become ParseError with the byte offset.
json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

} // namespace mconv::io
