#include "mconv/io.hpp"

#include <fstream>
#include <sstream>

namespace mconv::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw Error(ErrorKind::ParseError, where + ": " + what);
}

const json& member(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(where, std::string("missing \"") + key + "\"");
    return *it;
}

std::uint64_t unsigned_member(const json& j, const char* key, const std::string& where) {
    const auto& v = member(j, key, where);
    if (!v.is_number_unsigned()) fail(where + "." + key, "expected a non-negative integer");
    return v.get<std::uint64_t>();
}

} // namespace

json field_to_json(const CyclotomicField& f) {
    if (f.is_rational()) return {{"kind", "rational"}};
    return {{"kind", "cyclotomic"}, {"order", f.order()}};
}

json field_to_json(const FiniteField& f) {
    const auto& mod = f.modulus();
    return {{"kind", "finite"},
            {"l", f.characteristic()},
            {"k", f.degree()},
            {"modulus", std::vector<std::uint32_t>(mod.begin(), mod.end() - 1)}};
}

FieldHandle field_from_json(const json& j, const std::string& where) {
    const auto& kind = member(j, "kind", where);
    if (!kind.is_string()) fail(where + ".kind", "expected a string");
    const auto k = kind.get<std::string>();
    if (k == "rational") return CyclotomicField::rational();
    if (k == "cyclotomic") {
        const auto order = unsigned_member(j, "order", where);
        if (order == 0) fail(where + ".order", "must be positive");
        return CyclotomicField(static_cast<unsigned>(order));
    }
    if (k == "finite") {
        const auto ell = unsigned_member(j, "l", where);
        const auto deg = unsigned_member(j, "k", where);
        const auto& mod = member(j, "modulus", where);
        if (!mod.is_array() || mod.size() != deg) fail(where + ".modulus", "expected " + std::to_string(deg) + " coefficients");
        std::vector<std::uint32_t> low;
        for (const auto& c : mod) {
            if (!c.is_number_unsigned() || c.get<std::uint64_t>() >= ell) fail(where + ".modulus", "coefficient out of range");
            low.push_back(c.get<std::uint32_t>());
        }
        return FiniteField(static_cast<std::uint32_t>(ell), std::move(low));
    }
    fail(where + ".kind", "unknown field kind \"" + k + "\"");
}

json element_to_json(const CyclotomicField& f, const CyclotomicElement& e) {
    json out = json::array();
    for (const auto& c : f.coeffs(e)) out.push_back(c.get_str());
    return out;
}

json element_to_json(const FiniteField& f, FiniteField::Element e) { return f.coeffs(e); }

CyclotomicElement element_from_json(const CyclotomicField& f, const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != f.degree())
        fail(where, "expected an array of " + std::to_string(f.degree()) + " rationals");
    std::vector<mpq_class> coeffs;
    for (const auto& c : j) {
        std::string s;
        if (c.is_string())
            s = c.get<std::string>();
        else if (c.is_number_integer())
            s = std::to_string(c.get<long long>());
        else
            fail(where, "coefficient must be a string \"p/q\" or an integer");
        mpq_class v;
        if (s.empty() || v.set_str(s, 10) != 0) fail(where, "bad rational \"" + s + "\"");
        if (v.get_den() == 0) fail(where, "zero denominator in \"" + s + "\"");
        v.canonicalize();
        coeffs.push_back(v);
    }
    return f.from_coeffs(std::move(coeffs));
}

FiniteField::Element element_from_json(const FiniteField& f, const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != f.degree())
        fail(where, "expected an array of " + std::to_string(f.degree()) + " integers");
    std::vector<std::uint32_t> coeffs;
    for (const auto& c : j) {
        if (!c.is_number_unsigned() || c.get<std::uint64_t>() >= f.characteristic())
            fail(where, "coefficient outside [0, " + std::to_string(f.characteristic()) + ")");
        coeffs.push_back(c.get<std::uint32_t>());
    }
    return f.from_coeffs(coeffs);
}

template <ExactField F>
Matrix<F> matrix_from_json(const F& field, const json& j, const std::string& where) {
    const auto fh = field_from_json(member(j, "field", where), where + ".field");
    const F* declared = std::get_if<F>(&fh);
    if (!declared || !(*declared == field)) throw Error(ErrorKind::FieldMismatch, where + ": matrix field differs");
    const auto rows = unsigned_member(j, "rows", where);
    const auto cols = unsigned_member(j, "cols", where);
    const auto& entries = member(j, "entries", where);
    if (!entries.is_array() || entries.size() != rows) fail(where + ".entries", "expected " + std::to_string(rows) + " rows");
    Matrix<F> m(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const auto& row = entries[i];
        const auto rw = where + ".entries[" + std::to_string(i) + "]";
        if (!row.is_array() || row.size() != cols) fail(rw, "expected " + std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c)
            m(i, c) = element_from_json(field, row[c], rw + "[" + std::to_string(c) + "]");
    }
    return m;
}

template Matrix<CyclotomicField> matrix_from_json(const CyclotomicField&, const json&, const std::string&);
template Matrix<FiniteField> matrix_from_json(const FiniteField&, const json&, const std::string&);

namespace {

template <ExactField F>
MonodromyTuple<F> read_tuple(const F& field, const json& j, bool check) {
    const auto n = unsigned_member(j, "n", "tuple");
    const auto r = unsigned_member(j, "r", "tuple");
    const auto& entries = member(j, "entries", "tuple");
    if (!entries.is_array()) fail("tuple.entries", "expected an array");
    if (entries.size() != r + 1)
        throw Error(ErrorKind::ArityMismatch, "tuple.entries: expected " + std::to_string(r + 1) + " matrices, found " +
                                                  std::to_string(entries.size()));
    MonodromyTuple<F> t{field, n, r, {}, {}};
    for (std::size_t i = 0; i < entries.size(); ++i)
        t.entries.push_back(matrix_from_json(field, entries[i], "tuple.entries[" + std::to_string(i) + "]"));
    if (auto it = j.find("labels"); it != j.end()) {
        if (!it->is_array()) fail("tuple.labels", "expected an array of strings");
        for (const auto& l : *it) {
            if (!l.is_string()) fail("tuple.labels", "expected an array of strings");
            t.labels.push_back(l.get<std::string>());
        }
    }
    if (check) validate(t);
    return t;
}

template <ExactField F>
RankOneTuple<F> read_rank_one(const F& field, const json& j) {
    const auto r = unsigned_member(j, "r", "rank_one");
    const auto& scalars = member(j, "scalars", "rank_one");
    if (!scalars.is_array() || scalars.size() != r + 1)
        fail("rank_one.scalars", "expected " + std::to_string(r + 1) + " scalars");
    std::vector<typename F::Element> values;
    for (std::size_t i = 0; i < scalars.size(); ++i)
        values.push_back(element_from_json(field, scalars[i], "rank_one.scalars[" + std::to_string(i) + "]"));
    return rank_one_from_scalars(field, std::move(values));
}

} // namespace

AnyTuple parse_tuple(const json& j) {
    const auto fh = field_from_json(member(j, "field", "tuple"), "tuple.field");
    return std::visit([&](const auto& f) -> AnyTuple { return read_tuple(f, j, false); }, fh);
}

AnyTuple tuple_from_json(const json& j) {
    const auto fh = field_from_json(member(j, "field", "tuple"), "tuple.field");
    return std::visit([&](const auto& f) -> AnyTuple { return read_tuple(f, j, true); }, fh);
}

AnyRankOne rank_one_from_json(const json& j) {
    const auto fh = field_from_json(member(j, "field", "rank_one"), "rank_one.field");
    return std::visit([&](const auto& f) -> AnyRankOne { return read_rank_one(f, j); }, fh);
}

json any_tuple_to_json(const AnyTuple& t) {
    return std::visit([](const auto& x) { return tuple_to_json(x); }, t);
}

json selfcheck_to_json(const SelfcheckReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return {{"checks", checks}, {"pass", r.passed()}};
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, path.string() + ": cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ParseError, path.string() + ": byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::ParseError, path.string() + ": cannot write file");
    out << j.dump(2) << "\n";
}

} // namespace mconv::io
