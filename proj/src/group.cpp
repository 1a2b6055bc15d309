#include "mconv/group.hpp"

#include <set>
#include <unordered_set>

#include "mconv/arith.hpp"

namespace mconv {

MonodromyTuple<FiniteField> reduce_tuple(const MonodromyTuple<CyclotomicField>& t, const ResidueMap& map) {
    if (!(map.source == t.field))
        throw Error(ErrorKind::FieldMismatch, "residue map source is Q(zeta_" + std::to_string(map.source.order()) +
                                                  "), tuple field is Q(zeta_" + std::to_string(t.field.order()) + ")");
    std::vector<Matrix<FiniteField>> entries;
    entries.reserve(t.entries.size());
    for (const auto& m : t.entries)
        entries.push_back(map_entries(m, map.target, [&](const CyclotomicElement& x) { return map.apply(x); }));
    auto out = make_tuple(std::move(entries));
    out.labels = t.labels;
    try {
        validate(out);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::SingularEntry)
            throw Error(ErrorKind::BadReductionPrime, std::string("reduction at ") + std::to_string(map.ell) +
                                                          " degenerates: " + e.what());
        throw;
    }
    return out;
}

BaseChangeResult base_change_check(const MonodromyTuple<CyclotomicField>& t, const ResidueMap& map) {
    BaseChangeResult out;
    const auto& f = map.target;
    const auto upstairs = reduce_tuple(mc(t, t.field.from_int(-1)), map);
    const auto downstairs = mc(reduce_tuple(t, map), f.from_int(-1));
    out.rank_mc_then_reduce = upstairs.n;
    out.rank_reduce_then_mc = downstairs.n;
    if (upstairs.n != downstairs.n) {
        out.detail = "ranks differ";
        return out;
    }
    out.conjugate = simultaneous_conjugacy(upstairs.entries, downstairs.entries).has_value();
    out.detail = out.conjugate ? "conjugate, witness verified" : "no conjugating matrix found";
    return out;
}

std::string_view to_string(FormKind k) {
    switch (k) {
    case FormKind::Symmetric: return "symmetric";
    case FormKind::Alternating: return "alternating";
    case FormKind::Neither: return "neither";
    }
    return "?";
}

std::uint64_t subfield_minimality(const FiniteField& field, FiniteField::Element eigenvalue, std::uint64_t q) {
    if (q == 0) q = field.order();
    const std::uint64_t ell = field.characteristic();
    unsigned k = 0;
    for (std::uint64_t p = 1; p < q; p *= ell) ++k;
    const auto inv = field.inv(eigenvalue);
    for (auto d : arith::divisors(k)) {
        std::uint64_t qd = 1;
        for (decltype(d) i = 0; i < d; ++i) qd *= ell;
        const auto image = field.pow(eigenvalue, static_cast<std::int64_t>(qd));
        if (image == eigenvalue || image == inv) return qd;
    }
    return q;
}

namespace {

struct WordHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const {
        std::uint64_t h = 1469598103934665603ULL;
        for (auto x : v) h = (h ^ x) * 1099511628211ULL;
        return static_cast<std::size_t>(h);
    }
};

} // namespace

std::optional<std::size_t> enumerate_group(const std::vector<Matrix<FiniteField>>& gens, std::size_t bound) {
    if (gens.empty()) return 1;
    const auto& f = gens.front().field();
    const auto id = Matrix<FiniteField>::identity(f, gens.front().rows());
    auto key = [](const Matrix<FiniteField>& m) { return std::vector<std::uint32_t>(m.data().begin(), m.data().end()); };
    std::unordered_set<std::vector<std::uint32_t>, WordHash> seen{key(id)};
    std::deque<Matrix<FiniteField>> queue{id};
    while (!queue.empty()) {
        const auto x = std::move(queue.front());
        queue.pop_front();
        for (const auto& g : gens) {
            auto y = x * g;
            if (!seen.insert(key(y)).second) continue;
            if (seen.size() > bound) return std::nullopt;
            queue.push_back(std::move(y));
        }
    }
    return seen.size();
}

std::string_view to_string(CertificateMode m) { return m == CertificateMode::SL ? "SL" : "SL_plus_minus"; }

std::optional<CertificateMode> parse_mode(std::string_view s) {
    if (s == "sl" || s == "SL") return CertificateMode::SL;
    if (s == "slpm" || s == "SL_plus_minus" || s == "sl_plus_minus") return CertificateMode::SLPlusMinus;
    return std::nullopt;
}

namespace {

using FF = FiniteField;
using FMat = Matrix<FF>;

nlohmann::json element_json(const FF& f, FF::Element e) { return f.to_string(e); }

CertificateCheck check_product(const MonodromyTuple<FF>& t) {
    const bool ok = ordered_product(t.entries, t.entries.size()).is_identity();
    return {"product_relation", ok, {{"holds", ok}}};
}

CertificateCheck check_determinants(const MonodromyTuple<FF>& t, CertificateMode mode) {
    const auto& f = t.field;
    std::set<FF::Element> dets;
    for (const auto& m : t.entries) dets.insert(determinant(m));
    const auto minus_one = f.from_int(-1);
    bool ok;
    if (mode == CertificateMode::SL) {
        ok = dets == std::set<FF::Element>{f.one()};
    } else {
        ok = dets == std::set<FF::Element>{f.one(), minus_one};
    }
    nlohmann::json spectrum = nlohmann::json::array();
    for (auto d : dets) spectrum.push_back(element_json(f, d));
    return {"determinant_spectrum", ok, {{"determinants", spectrum}}};
}

// Non-1 eigenvalue pair {z, z^-1} of a bireflection with ord z = order, if any.
std::optional<FF::Element> bireflection_eigenvalue(const FMat& m, std::uint64_t order) {
    const auto& f = m.field();
    const auto id = FMat::identity(f, m.rows());
    if (rank(m - id) != 2) return std::nullopt;
    if ((f.order() - 1) % order != 0) return std::nullopt;
    for (std::uint64_t j = 1; j < order; ++j) {
        if (std::gcd(j, order) != 1) continue;
        const auto z = f.root_of_unity(static_cast<unsigned>(order), static_cast<long>(j));
        if (rank(m - FMat::scalar(f, m.rows(), z)) == m.rows()) continue;
        if (rank(m - FMat::scalar(f, m.rows(), f.inv(z))) == m.rows()) continue;
        return z;
    }
    return std::nullopt;
}

bool selfdual_entry(const FMat& m) {
    const auto& f = m.field();
    try {
        const auto j = jordan_data(m, {static_cast<unsigned>(f.order() - 1)});
        return is_locally_selfdual(f, j);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::EigenvalueOutsideField) throw;
    }
    // conjugacy over the field is equivalent to conjugacy over any extension
    return simultaneous_conjugacy<FF>({m}, {inverse(m)}).has_value();
}

} // namespace

Certificate sl_certificate(const MonodromyTuple<FF>& t, CertificateMode mode, std::uint64_t q) {
    Certificate c;
    c.n = t.n;
    c.field_order = t.field.order();
    c.q = q == 0 ? c.field_order : q;
    c.mode = mode;
    c.assumed_external = {"primitivity: DR99 Prop 6.6"};
    const auto& f = t.field;
    const auto id = FMat::identity(f, t.n);

    c.checks.push_back(check_product(t));
    c.checks.push_back(check_determinants(t, mode));

    const auto burnside = burnside_dimension(t.entries);
    c.checks.push_back({"absolutely_irreducible", burnside == t.n * t.n,
                        {{"burnside_dimension", burnside}, {"required", t.n * t.n}}});

    const auto forms = invariant_bilinear_forms(t.entries);
    nlohmann::json kinds = nlohmann::json::array();
    for (auto k : forms.kinds) kinds.push_back(to_string(k));
    c.checks.push_back({"no_invariant_bilinear_form", forms.dim == 0, {{"dimension", forms.dim}, {"kinds", kinds}}});

    std::optional<std::size_t> bireflection_index;
    std::optional<FF::Element> zeta;
    for (std::size_t i = 0; i < t.entries.size() && !zeta; ++i) {
        if (auto z = bireflection_eigenvalue(t.entries[i], c.q - 1)) {
            bireflection_index = i + 1;
            zeta = z;
        }
    }
    nlohmann::json bire = {{"eigenvalue_order", c.q - 1}};
    if (zeta) {
        bire["witness_index"] = *bireflection_index;
        bire["eigenvalue"] = element_json(f, *zeta);
    } else {
        bire["witness_index"] = nullptr;
    }
    c.checks.push_back({"has_bireflection", zeta.has_value(), bire});

    // An entry with rk(T + 1) = 1, or a scalar -1 entry times a reflection.
    nlohmann::json neg = {{"witness_index", nullptr}};
    bool has_neg = false;
    for (std::size_t i = 0; i < t.entries.size() && !has_neg; ++i) {
        if (rank(t.entries[i] + id) == 1) {
            has_neg = true;
            neg = {{"witness_index", i + 1}, {"via", "entry"}};
        }
    }
    if (!has_neg) {
        const auto minus_one = FMat::scalar(f, t.n, f.from_int(-1));
        for (std::size_t s = 0; s < t.entries.size() && !has_neg; ++s) {
            if (!(t.entries[s] == minus_one)) continue;
            for (std::size_t i = 0; i < t.entries.size(); ++i) {
                if (rank(t.entries[i] - id) == 1) {
                    has_neg = true;
                    neg = {{"witness_index", i + 1}, {"via", "scalar entry " + std::to_string(s + 1) + " times reflection"}};
                    break;
                }
            }
        }
    }
    c.checks.push_back({"has_negated_reflection", has_neg, neg});

    if (zeta) {
        const auto qmin = subfield_minimality(f, *zeta, c.q);
        c.checks.push_back({"bireflection_subfield_minimal", qmin == c.q, {{"smallest_q", qmin}, {"required", c.q}}});
    } else {
        c.checks.push_back({"bireflection_subfield_minimal", false, {{"smallest_q", nullptr}, {"required", c.q}}});
    }

    nlohmann::json failing = nlohmann::json::array();
    for (std::size_t i = 0; i < t.entries.size(); ++i)
        if (!selfdual_entry(t.entries[i])) failing.push_back(i + 1);
    c.checks.push_back({"local_selfdual", failing.empty(), {{"failing_indices", failing}}});

    FF::Element value{};
    const bool scalar = t.infinity().is_scalar(&value);
    nlohmann::json inf = {{"scalar", scalar}};
    if (scalar) inf["value"] = element_json(f, value);
    c.checks.push_back({"infinity_scalar", scalar, inf});
    return c;
}

nlohmann::json to_json(const Certificate& c) {
    nlohmann::json checks = nlohmann::json::object();
    for (const auto& ch : c.checks) checks[ch.name] = {{"pass", ch.pass}, {"evidence", ch.evidence}};
    return {{"n", c.n},
            {"q", c.q},
            {"field_order", c.field_order},
            {"mode", to_string(c.mode)},
            {"checks", checks},
            {"assumed_external", c.assumed_external},
            {"scope", "residual hypothesis battery; group equality is not enumerated"},
            {"verdict", c.verdict()}};
}

} // namespace mconv
