#pragma once

#include <string>
#include <vector>

#include "mconv/tuples.hpp"

// Matrix-level middle convolution MC_lambda of a monodromy tuple.
//
// For T = (A_1, ..., A_r, A_{r+1}) of rank n, the ambient space is F^{rn} and
//
//   B_k = 1 except block row k = (lambda(A_1 - 1), ..., lambda(A_{k-1} - 1),
//                                 lambda A_k, A_{k+1} - 1, ..., A_r - 1).
//
// K = sum_k (block k embedding of ker(A_k - 1)) and L = intersection of
// ker(B_k - 1) are invariant; MC_lambda(T) is the action on F^{rn} / (K + L).

namespace mconv {

template <ExactField F>
struct ConvolutionWorkspace {
    typename F::Element lambda;
    std::size_t n = 0; // rank of the input tuple
    std::vector<Matrix<F>> ambient;
    Subspace<F> K;
    Subspace<F> L;
};

namespace detail {

template <ExactField F>
void check_convolution_input(const MonodromyTuple<F>& t, const typename F::Element& lambda) {
    const F& f = t.field;
    if (f.is_zero(lambda) || f.is_one(lambda))
        throw Error(ErrorKind::InvalidCharacter, "lambda must differ from 0 and 1, got " + f.to_string(lambda));
    if (t.r < 3) throw Error(ErrorKind::TooFewPoints, "middle convolution needs r >= 3 finite points");
    validate(t);
}

template <ExactField F>
std::vector<Matrix<F>> ambient_matrices(const MonodromyTuple<F>& t, const typename F::Element& lambda) {
    const F& f = t.field;
    const std::size_t n = t.n, r = t.r, dim = r * n;
    const auto id = Matrix<F>::identity(f, n);
    std::vector<Matrix<F>> blocks_minus_one;
    for (std::size_t j = 0; j < r; ++j) blocks_minus_one.push_back(t.entries[j] - id);
    std::vector<Matrix<F>> out;
    out.reserve(r);
    for (std::size_t k = 0; k < r; ++k) {
        auto b = Matrix<F>::identity(f, dim);
        for (std::size_t j = 0; j < r; ++j) {
            const Matrix<F> block = j < k    ? lambda * blocks_minus_one[j]
                                    : j == k ? lambda * t.entries[j]
                                             : blocks_minus_one[j];
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t c = 0; c < n; ++c) b(k * n + a, j * n + c) = block(a, c);
        }
        out.push_back(std::move(b));
    }
    return out;
}

template <ExactField F>
Subspace<F> kernel_part(const MonodromyTuple<F>& t) {
    const F& f = t.field;
    const std::size_t n = t.n, dim = t.r * n;
    const auto id = Matrix<F>::identity(f, n);
    Matrix<F> rows(f, 0, dim);
    std::vector<typename F::Element> v(dim);
    for (std::size_t k = 0; k < t.r; ++k) {
        const auto ker = kernel(t.entries[k] - id);
        for (std::size_t i = 0; i < ker.dim(); ++i) {
            std::fill(v.begin(), v.end(), f.zero());
            for (std::size_t a = 0; a < n; ++a) v[k * n + a] = ker.basis()(i, a);
            rows.append_row(v);
        }
    }
    if (rows.rows() == 0) return Subspace<F>::zero(f, dim);
    return Subspace<F>::span(rows);
}

// Closed form of the common fixed space of the B_k:
// L = {(A_2...A_r u, A_3...A_r u, ..., A_r u, u) : (lambda A_1...A_r - 1) u = 0}.
template <ExactField F>
Subspace<F> fixed_part(const MonodromyTuple<F>& t, const typename F::Element& lambda) {
    const F& f = t.field;
    const std::size_t n = t.n, r = t.r, dim = r * n;
    const auto id = Matrix<F>::identity(f, n);
    // tails[k] = A_{k+2} ... A_r (0-based k), tails[r-1] = 1
    std::vector<Matrix<F>> tails(r, id);
    for (std::size_t k = r - 1; k-- > 0;) tails[k] = t.entries[k + 1] * tails[k + 1];
    const auto full = t.entries[0] * tails[0];
    const auto u_space = kernel(lambda * full - id);
    Matrix<F> rows(f, 0, dim);
    std::vector<typename F::Element> v(dim);
    for (std::size_t i = 0; i < u_space.dim(); ++i) {
        const auto u = u_space.basis().row(i);
        for (std::size_t k = 0; k < r; ++k) {
            const auto part = mat_vec(tails[k], u);
            for (std::size_t a = 0; a < n; ++a) v[k * n + a] = part[a];
        }
        rows.append_row(v);
    }
    if (rows.rows() == 0) return Subspace<F>::zero(f, dim);
    return Subspace<F>::span(rows);
}

template <ExactField F>
void check_invariant(const std::vector<Matrix<F>>& mats, const Subspace<F>& s, const char* name) {
    for (std::size_t k = 0; k < mats.size(); ++k)
        for (std::size_t i = 0; i < s.dim(); ++i)
            if (!s.contains(mat_vec(mats[k], s.basis().row(i))))
                throw Error(ErrorKind::NotInvariant,
                            std::string(name) + " is not invariant under B_" + std::to_string(k + 1));
}

} // namespace detail

template <ExactField F>
ConvolutionWorkspace<F> build_ambient(const MonodromyTuple<F>& t, const typename F::Element& lambda) {
    detail::check_convolution_input(t, lambda);
    ConvolutionWorkspace<F> ws{lambda, t.n, detail::ambient_matrices(t, lambda), detail::kernel_part(t),
                               detail::fixed_part(t, lambda)};
    detail::check_invariant(ws.ambient, ws.K, "K");
    detail::check_invariant(ws.ambient, ws.L, "L");
    return ws;
}

/// Same workspace with L found as the kernel of the stacked B_k - 1, without
/// the closed form. Used to cross-check build_ambient.
template <ExactField F>
ConvolutionWorkspace<F> build_ambient_bruteforce(const MonodromyTuple<F>& t, const typename F::Element& lambda) {
    detail::check_convolution_input(t, lambda);
    auto ambient = detail::ambient_matrices(t, lambda);
    const F& f = t.field;
    const std::size_t n = t.n, dim = t.r * n;
    // B_k - 1 vanishes outside block row k, so stacking those rows gives
    // a dim x dim system whose kernel is the intersection.
    Matrix<F> stacked(f, dim, dim);
    for (std::size_t k = 0; k < t.r; ++k)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t c = 0; c < dim; ++c) {
                const std::size_t row = k * n + a;
                stacked(row, c) = row == c ? f.sub(ambient[k](row, c), f.one()) : ambient[k](row, c);
            }
    auto l = kernel(stacked);
    ConvolutionWorkspace<F> ws{lambda, n, std::move(ambient), detail::kernel_part(t), std::move(l)};
    detail::check_invariant(ws.ambient, ws.K, "K");
    detail::check_invariant(ws.ambient, ws.L, "L");
    return ws;
}

/// MC_lambda(T): finite entries are the induced actions on F^{rn}/(K+L); the
/// entry at infinity is the inverse of their product.
template <ExactField F>
MonodromyTuple<F> mc(const MonodromyTuple<F>& t, const typename F::Element& lambda) {
    const auto ws = build_ambient(t, lambda);
    const auto s = subspace_sum(ws.K, ws.L);
    auto entries = induced_quotient_action(ws.ambient, s);
    if (entries.front().rows() == 0) throw Error(ErrorKind::RankMismatch, "middle convolution has rank 0");
    entries.push_back(inverse(ordered_product(entries, entries.size())));
    auto out = make_tuple(std::move(entries));
    out.labels = t.labels;
    validate(out);
    return out;
}

/// sum_k rk(T_k - 1) + rk(lambda T_{r+1}^-1 - 1) - n; exact for irreducible input.
template <ExactField F>
long expected_rank(const MonodromyTuple<F>& t, const typename F::Element& lambda) {
    const F& f = t.field;
    const auto id = Matrix<F>::identity(f, t.n);
    long total = 0;
    for (std::size_t k = 0; k < t.r; ++k) total += static_cast<long>(rank(t.entries[k] - id));
    total += static_cast<long>(rank(lambda * inverse(t.infinity()) - id));
    return total - static_cast<long>(t.n);
}

struct SelfcheckItem {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SelfcheckReport {
    std::vector<SelfcheckItem> checks;

    bool passed() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

/// Runs mc and checks its rank against the closed formula, the product
/// relation, and (for lambda^2 = 1) MC_lambda(MC_lambda(T)) ~ T.
template <ExactField F>
SelfcheckReport mc_selfcheck(const MonodromyTuple<F>& t, const typename F::Element& lambda, bool involution = true) {
    const F& f = t.field;
    SelfcheckReport report;
    MonodromyTuple<F> out{f, 0, 0, {}, {}};
    try {
        out = mc(t, lambda);
    } catch (const Error& e) {
        report.checks.push_back({"mc", false, e.what()});
        return report;
    }
    const long expected = expected_rank(t, lambda);
    report.checks.push_back({"rank_formula", static_cast<long>(out.n) == expected,
                             "mc rank " + std::to_string(out.n) + ", closed formula " + std::to_string(expected)});
    const bool product_ok = ordered_product(out.entries, out.entries.size()).is_identity();
    report.checks.push_back({"product_relation", product_ok, product_ok ? "holds" : "violated"});
    if (involution && f.is_one(f.mul(lambda, lambda))) {
        try {
            const auto back = mc(out, lambda);
            const auto witness = simultaneous_conjugacy(back.entries, t.entries);
            report.checks.push_back({"involution", witness.has_value(),
                                     witness ? "MC(MC(T)) conjugate to T, witness verified"
                                             : "no conjugating matrix found (rank " + std::to_string(back.n) + ")"});
        } catch (const Error& e) {
            report.checks.push_back({"involution", false, e.what()});
        }
    }
    return report;
}

} // namespace mconv
