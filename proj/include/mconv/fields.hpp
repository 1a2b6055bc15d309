#pragma once

#include <concepts>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "mconv/error.hpp"

namespace mconv {

/// Exact field interface shared by every scalar type in the library.
///
/// A field is a cheap-to-copy handle; its Element type is a plain value whose
/// default-constructed state is the zero element.
template <class F>
concept ExactField = std::copy_constructible<F> && requires(const F& f, const typename F::Element& a, long n) {
    typename F::Element;
    { f.zero() } -> std::same_as<typename F::Element>;
    { f.one() } -> std::same_as<typename F::Element>;
    { f.from_int(n) } -> std::same_as<typename F::Element>;
    { f.add(a, a) } -> std::same_as<typename F::Element>;
    { f.sub(a, a) } -> std::same_as<typename F::Element>;
    { f.neg(a) } -> std::same_as<typename F::Element>;
    { f.mul(a, a) } -> std::same_as<typename F::Element>;
    { f.inv(a) } -> std::same_as<typename F::Element>;
    { f.is_zero(a) } -> std::same_as<bool>;
    { f.equal(a, a) } -> std::same_as<bool>;
    { f.to_string(a) } -> std::same_as<std::string>;
    { f.has_root_of_unity(1u) } -> std::same_as<bool>;
    { f.root_of_unity(1u, n) } -> std::same_as<typename F::Element>;
    { f == f } -> std::same_as<bool>;
};

// ---------------------------------------------------------------------------
// Cyclotomic fields Q(zeta_N), power basis modulo Phi_N.

/// Element of Q(zeta_N) in the power basis; trailing zero coefficients are
/// trimmed so the zero element is the empty vector.
struct CyclotomicElement {
    std::vector<mpq_class> coeffs;

    friend bool operator==(const CyclotomicElement&, const CyclotomicElement&) = default;
};

/// N-th cyclotomic polynomial with integer coefficients, low degree first.
std::vector<mpz_class> cyclotomic_polynomial(unsigned n);

namespace detail {
struct CyclotomicData;
}

class CyclotomicField {
public:
    using Element = CyclotomicElement;

    /// Q(zeta_N); N = 1 gives the rationals.
    explicit CyclotomicField(unsigned order = 1);
    /// Q, carrying the "rational" descriptor.
    static CyclotomicField rational();

    unsigned order() const;
    std::size_t degree() const;
    bool is_rational() const;
    /// Phi_N, monic, low degree first (length degree + 1).
    const std::vector<mpz_class>& modulus() const;

    Element zero() const { return {}; }
    Element one() const { return from_int(1); }
    Element from_int(long v) const;
    Element from_rational(const mpq_class& v) const;
    /// Reduces an arbitrary-length coefficient vector modulo Phi_N.
    Element from_coeffs(std::vector<mpq_class> coeffs) const;
    /// Full coefficient vector of length degree().
    std::vector<mpq_class> coeffs(const Element& a) const;

    /// zeta_N^e for any integer e.
    Element zeta_power(long e) const;
    /// Roots of unity of every order dividing N (or 2N when N is odd, since
    /// -zeta_N is then a primitive 2N-th root).
    bool has_root_of_unity(unsigned order) const;
    /// zeta_order^exponent with zeta_d = zeta_N^(N/d).
    Element root_of_unity(unsigned order, long exponent) const;
    /// Image of a under the automorphism zeta_N -> zeta_N^j, gcd(j, N) = 1.
    Element galois_conjugate(const Element& a, unsigned j) const;

    Element add(const Element& a, const Element& b) const;
    Element sub(const Element& a, const Element& b) const;
    Element neg(const Element& a) const;
    Element mul(const Element& a, const Element& b) const;
    Element inv(const Element& a) const;
    Element pow(const Element& a, long e) const;
    bool is_zero(const Element& a) const { return a.coeffs.empty(); }
    bool is_one(const Element& a) const;
    bool equal(const Element& a, const Element& b) const { return a == b; }
    /// True when every coefficient is an integer.
    bool is_integral(const Element& a) const;
    std::string to_string(const Element& a) const;

    friend bool operator==(const CyclotomicField& a, const CyclotomicField& b) { return a.order() == b.order(); }

private:
    std::shared_ptr<const detail::CyclotomicData> data_;
};

// ---------------------------------------------------------------------------
// Finite fields F_{l^k}, l odd prime.

namespace detail {
struct FiniteFieldData;
}

class FiniteField {
public:
    /// Integer encoding sum c_i l^i of the power-basis coefficients.
    using Element = std::uint32_t;

    /// F_{l^k} with the smallest monic irreducible modulus (by integer encoding
    /// of its non-leading coefficients).
    FiniteField(std::uint32_t ell, unsigned k);
    /// F_{l^k} with an explicit modulus [c_0, ..., c_{k-1}] (leading 1 implied);
    /// irreducibility is verified.
    FiniteField(std::uint32_t ell, std::vector<std::uint32_t> modulus_low);

    std::uint32_t characteristic() const;
    unsigned degree() const;
    std::uint64_t order() const;
    /// Monic modulus, low degree first, length degree + 1.
    const std::vector<std::uint32_t>& modulus() const;
    Element primitive_root() const;

    Element zero() const { return 0; }
    Element one() const { return 1; }
    Element from_int(long v) const;
    Element from_coeffs(std::span<const std::uint32_t> coeffs) const;
    std::vector<std::uint32_t> coeffs(Element a) const;

    Element add(Element a, Element b) const;
    Element sub(Element a, Element b) const;
    Element neg(Element a) const;
    Element mul(Element a, Element b) const;
    Element inv(Element a) const;
    Element pow(Element a, std::int64_t e) const;
    bool is_zero(Element a) const { return a == 0; }
    bool is_one(Element a) const { return a == 1; }
    bool equal(Element a, Element b) const { return a == b; }
    std::string to_string(Element a) const;

    /// Discrete logarithm base primitive_root(); a != 0.
    std::uint64_t log(Element a) const;
    std::uint64_t element_order(Element a) const;
    bool has_root_of_unity(unsigned order) const { return (this->order() - 1) % order == 0; }
    /// g^((q-1)/order * exponent) with g the fixed primitive root.
    Element root_of_unity(unsigned order, long exponent) const;

    /// dst[i] -= c * src[i] for i in range; the hot loop of elimination.
    void sub_scaled(std::span<Element> dst, Element c, std::span<const Element> src) const;

    friend bool operator==(const FiniteField& a, const FiniteField& b);

private:
    std::shared_ptr<const detail::FiniteFieldData> data_;
};

/// dst -= c * src over any field; FiniteField has a faster overload.
template <ExactField F>
void sub_scaled(const F& field, std::span<typename F::Element> dst, const typename F::Element& c,
                std::span<const typename F::Element> src) {
    if (field.is_zero(c)) return;
    for (std::size_t i = 0; i < dst.size(); ++i)
        if (!field.is_zero(src[i])) dst[i] = field.sub(dst[i], field.mul(c, src[i]));
}

inline void sub_scaled(const FiniteField& field, std::span<FiniteField::Element> dst, FiniteField::Element c,
                       std::span<const FiniteField::Element> src) {
    field.sub_scaled(dst, c, src);
}

static_assert(ExactField<CyclotomicField>);
static_assert(ExactField<FiniteField>);

/// Any supported coefficient field, for I/O and the CLI.
using FieldHandle = std::variant<CyclotomicField, FiniteField>;

inline CyclotomicField make_cyclotomic_field(unsigned order) { return CyclotomicField(order); }
FiniteField make_finite_field(std::uint32_t ell, unsigned k);

// ---------------------------------------------------------------------------

/// Ring homomorphism from the l-integral elements of Q(zeta_N) onto F_{l^f}.
struct ResidueMap {
    CyclotomicField source;
    FiniteField target;
    FiniteField::Element image_of_root;
    std::uint32_t ell;

    FiniteField::Element apply(const CyclotomicElement& x) const;
};

/// k = 0 selects the minimal residue degree f = ord_N(l).
ResidueMap make_residue_map(const CyclotomicField& source, std::uint32_t ell, unsigned k = 0);

inline FiniteField::Element apply_residue(const ResidueMap& map, const CyclotomicElement& x) { return map.apply(x); }

} // namespace mconv
