#include "mconv/tuples.hpp"

#include "mconv/arith.hpp"

namespace mconv {

std::vector<unsigned> lambda_exponents(unsigned m) {
    std::vector<unsigned> out;
    for (int pass = 0; pass < 2; ++pass)
        for (auto d : arith::units_mod(m)) out.push_back(static_cast<unsigned>(d));
    return out;
}

MonodromyTuple<CyclotomicField> construct_T(unsigned m, std::size_t r) {
    if (m <= 2) throw Error(ErrorKind::InvalidM, "m must exceed 2, got " + std::to_string(m));
    const auto phi = arith::euler_phi(m);
    if (!(2 * phi + 4 < r))
        throw Error(ErrorKind::ConditionAViolated, "need 2*phi(m) < r - 4; phi(" + std::to_string(m) +
                                                       ") = " + std::to_string(phi) + ", r = " + std::to_string(r));
    const CyclotomicField field(static_cast<unsigned>(arith::lcm(4, m)));
    using M = Matrix<CyclotomicField>;

    std::vector<M> entries;
    const auto exponents = lambda_exponents(m);
    for (std::size_t i = 0; i + 3 < r; ++i) {
        const auto lambda = i < exponents.size() ? field.root_of_unity(m, exponents[i]) : field.from_int(-1);
        entries.push_back(M::diagonal(field, {lambda, field.inv(lambda)}));
    }
    entries.push_back(M::from_ints(field, {{1, 0}, {0, -1}}));
    entries.push_back(M::from_ints(field, {{0, 1}, {1, 0}}));
    entries.push_back(-inverse(ordered_product(entries, entries.size())));
    entries.push_back(M::scalar(field, 2, field.from_int(-1)));

    auto t = make_tuple(std::move(entries));
    for (std::size_t i = 1; i <= r; ++i) t.labels.push_back("z" + std::to_string(i));
    t.labels.push_back("infinity");
    validate(t);
    return t;
}

std::optional<RankOnePattern> parse_pattern(std::string_view name) {
    if (name == "N1") return RankOnePattern::N1;
    if (name == "N2") return RankOnePattern::N2;
    if (name == "N3") return RankOnePattern::N3;
    if (name == "N4") return RankOnePattern::N4;
    if (name == "N5") return RankOnePattern::N5;
    if (name == "L5") return RankOnePattern::L5;
    return std::nullopt;
}

std::string_view to_string(RankOnePattern p) {
    switch (p) {
    case RankOnePattern::N1: return "N1";
    case RankOnePattern::N2: return "N2";
    case RankOnePattern::N3: return "N3";
    case RankOnePattern::N4: return "N4";
    case RankOnePattern::N5: return "N5";
    case RankOnePattern::L5: return "L5";
    }
    return "?";
}

// The printed sign patterns are anchored at the right end (position r+1).
std::vector<std::size_t> pattern_negative_positions(RankOnePattern p, std::size_t r) {
    switch (p) {
    case RankOnePattern::N1: return {r - 2, r};
    case RankOnePattern::N2:
    case RankOnePattern::N4: return {r - 1, r + 1};
    case RankOnePattern::N3: return {r - 3, r - 2};
    case RankOnePattern::N5: return {r - 3, r};
    case RankOnePattern::L5: return {r, r + 1};
    }
    return {};
}

} // namespace mconv
