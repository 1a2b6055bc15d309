#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "json.hpp"

#include "mconv/convolution.hpp"

namespace mconv {

/// Entrywise reduction of a cyclotomic tuple through a residue map.
/// Throws NotIntegralAtPrime, or BadReductionPrime if an entry degenerates.
MonodromyTuple<FiniteField> reduce_tuple(const MonodromyTuple<CyclotomicField>& t, const ResidueMap& map);

struct BaseChangeResult {
    std::size_t rank_reduce_then_mc = 0;
    std::size_t rank_mc_then_reduce = 0;
    bool conjugate = false;
    std::string detail;

    bool passed() const { return rank_reduce_then_mc == rank_mc_then_reduce && conjugate; }
};

/// Compares reduce(mc(T, -1)) with mc(reduce(T), -1) up to simultaneous conjugacy.
BaseChangeResult base_change_check(const MonodromyTuple<CyclotomicField>& t, const ResidueMap& map);

/// Dimension of the matrix algebra spanned by all words in the generators.
/// Equals n^2 exactly when the generators act absolutely irreducibly.
template <ExactField F>
std::size_t burnside_dimension(const std::vector<Matrix<F>>& gens) {
    using Element = typename F::Element;
    if (gens.empty()) return 0;
    const F& f = gens.front().field();
    const std::size_t n = gens.front().rows();
    const std::size_t full = n * n;
    std::vector<std::vector<Element>> rows;
    std::vector<std::size_t> pivots;
    auto insert = [&](const Matrix<F>& x) {
        std::vector<Element> v(x.data().begin(), x.data().end());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto c = v[pivots[i]];
            if (!f.is_zero(c)) sub_scaled(f, std::span<Element>(v), c, std::span<const Element>(rows[i]));
        }
        std::size_t p = 0;
        while (p < full && f.is_zero(v[p])) ++p;
        if (p == full) return false;
        const auto s = f.inv(v[p]);
        for (auto& e : v)
            if (!f.is_zero(e)) e = f.mul(e, s);
        rows.push_back(std::move(v));
        pivots.push_back(p);
        return true;
    };
    std::deque<Matrix<F>> queue;
    const auto id = Matrix<F>::identity(f, n);
    insert(id);
    queue.push_back(id);
    while (!queue.empty() && rows.size() < full) {
        const Matrix<F> x = std::move(queue.front());
        queue.pop_front();
        for (const auto& g : gens) {
            auto y = g * x;
            if (insert(y)) queue.push_back(std::move(y));
            if (rows.size() == full) break;
        }
    }
    return rows.size();
}

enum class FormKind { Symmetric, Alternating, Neither };

std::string_view to_string(FormKind k);

template <ExactField F>
struct FormSpace {
    std::size_t dim = 0;
    std::vector<Matrix<F>> basis;
    std::vector<FormKind> kinds;
};

template <ExactField F>
FormKind classify_form(const Matrix<F>& g) {
    const auto t = transpose(g);
    if (t == g) return FormKind::Symmetric;
    if (t == -g) return FormKind::Alternating;
    return FormKind::Neither;
}

/// Basis of {G : T^t G T = G for every generator T}.
template <ExactField F>
FormSpace<F> invariant_bilinear_forms(const std::vector<Matrix<F>>& gens) {
    FormSpace<F> out;
    if (gens.empty()) return out;
    const std::size_t n = gens.front().rows();
    auto basis = elementary_basis(gens.front().field(), n, n);
    for (const auto& t : gens) {
        if (basis.empty()) break;
        const auto tt = transpose(t);
        basis = restrict_solutions(basis, [&](const Matrix<F>& g) { return tt * g * t - g; });
    }
    for (const auto& g : basis)
        for (const auto& t : gens)
            if (!(transpose(t) * g * t == g))
                throw Error(ErrorKind::NotInvariant, "computed form fails an invariance equation");
    out.dim = basis.size();
    for (const auto& g : basis) out.kinds.push_back(classify_form(g));
    out.basis = std::move(basis);
    return out;
}

/// Smallest q' = l^d (d | log_l q) with {z^q', z^-q'} = {z, z^-1}; q = 0
/// means the order of the field.
std::uint64_t subfield_minimality(const FiniteField& field, FiniteField::Element eigenvalue, std::uint64_t q = 0);

/// Order of the group generated by gens, or nothing if it exceeds bound.
std::optional<std::size_t> enumerate_group(const std::vector<Matrix<FiniteField>>& gens, std::size_t bound);

enum class CertificateMode { SL, SLPlusMinus };

std::string_view to_string(CertificateMode m);
std::optional<CertificateMode> parse_mode(std::string_view s);

struct CertificateCheck {
    std::string name;
    bool pass = false;
    nlohmann::json evidence;
};

/// Residual hypothesis battery for SL_n(F_q) (or SL^+-) generation.
struct Certificate {
    std::size_t n = 0;
    std::uint64_t q = 0;
    std::uint64_t field_order = 0; // order of the coefficient field of the matrices
    CertificateMode mode = CertificateMode::SL;
    std::vector<CertificateCheck> checks;
    std::vector<std::string> assumed_external;

    bool verdict() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return !checks.empty();
    }
    const CertificateCheck* find(std::string_view name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

/// q = 0 uses the order of the tuple's field.
Certificate sl_certificate(const MonodromyTuple<FiniteField>& t, CertificateMode mode, std::uint64_t q = 0);

nlohmann::json to_json(const Certificate& c);

} // namespace mconv
