#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mconv/arith.hpp"
#include "mconv/matrix.hpp"

namespace mconv {

template <ExactField F>
struct RrefResult {
    Matrix<F> echelon;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

/// Gauss-Jordan elimination; the pivot in each column is the first nonzero
/// entry at or below the current row.
template <ExactField F>
RrefResult<F> rref(Matrix<F> m) {
    const F& f = m.field();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && f.is_zero(m(p, c))) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(p, r);
        const auto scale = f.inv(m(r, c));
        for (std::size_t j = c; j < m.cols(); ++j)
            if (!f.is_zero(m(r, j))) m(r, j) = f.mul(m(r, j), scale);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || f.is_zero(m(i, c))) continue;
            const auto factor = m(i, c);
            sub_scaled(f, m.row(i), factor, std::span<const typename F::Element>(m.row(r)));
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), r, std::move(pivots)};
}

template <ExactField F>
std::size_t rank(const Matrix<F>& m) {
    return rref(m).rank;
}

/// Subspace of F^n stored as its reduced row echelon basis (canonical form).
template <ExactField F>
class Subspace {
public:
    using Element = typename F::Element;

    static Subspace zero(const F& field, std::size_t n) { return Subspace(Matrix<F>(field, 0, n), {}); }

    static Subspace full(const F& field, std::size_t n) {
        std::vector<std::size_t> piv(n);
        for (std::size_t i = 0; i < n; ++i) piv[i] = i;
        return Subspace(Matrix<F>::identity(field, n), std::move(piv));
    }

    /// Row span of the given matrix.
    static Subspace span(const Matrix<F>& rows) {
        auto red = rref(rows);
        Matrix<F> basis(rows.field(), red.rank, rows.cols());
        for (std::size_t i = 0; i < red.rank; ++i)
            for (std::size_t j = 0; j < rows.cols(); ++j) basis(i, j) = red.echelon(i, j);
        return Subspace(std::move(basis), std::move(red.pivots));
    }

    const F& field() const { return basis_.field(); }
    std::size_t ambient_dim() const { return basis_.cols(); }
    std::size_t dim() const { return basis_.rows(); }
    const Matrix<F>& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    /// Non-pivot coordinates, ascending: a fixed complement of the subspace.
    std::vector<std::size_t> free_coordinates() const {
        std::vector<std::size_t> out;
        std::size_t k = 0;
        for (std::size_t j = 0; j < ambient_dim(); ++j) {
            if (k < pivots_.size() && pivots_[k] == j)
                ++k;
            else
                out.push_back(j);
        }
        return out;
    }

    /// Reduces v modulo the subspace; the result vanishes on pivot coordinates.
    std::vector<Element> reduce(std::vector<Element> v) const {
        const F& f = field();
        for (std::size_t i = 0; i < pivots_.size(); ++i) {
            const auto c = v[pivots_[i]];
            if (!f.is_zero(c)) sub_scaled(f, std::span<Element>(v), c, basis_.row(i));
        }
        return v;
    }

    bool contains(std::span<const Element> v) const {
        const F& f = field();
        auto r = reduce(std::vector<Element>(v.begin(), v.end()));
        return std::all_of(r.begin(), r.end(), [&](const Element& e) { return f.is_zero(e); });
    }

    bool contains(const Subspace& other) const {
        for (std::size_t i = 0; i < other.dim(); ++i)
            if (!contains(other.basis().row(i))) return false;
        return true;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

private:
    Subspace(Matrix<F> basis, std::vector<std::size_t> pivots) : basis_(std::move(basis)), pivots_(std::move(pivots)) {}

    Matrix<F> basis_;
    std::vector<std::size_t> pivots_;
};

template <ExactField F>
Subspace<F> subspace_sum(const Subspace<F>& a, const Subspace<F>& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "subspace sum");
    Matrix<F> rows(a.field(), 0, a.ambient_dim());
    for (std::size_t i = 0; i < a.dim(); ++i) rows.append_row(a.basis().row(i));
    for (std::size_t i = 0; i < b.dim(); ++i) rows.append_row(b.basis().row(i));
    return Subspace<F>::span(rows);
}

/// Canonical right kernel {v : M v = 0}.
template <ExactField F>
Subspace<F> kernel(const Matrix<F>& m) {
    const F& f = m.field();
    auto red = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : red.pivots) is_pivot[p] = true;
    Matrix<F> vectors(f, 0, m.cols());
    std::vector<typename F::Element> v(m.cols());
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::fill(v.begin(), v.end(), f.zero());
        v[free] = f.one();
        for (std::size_t i = 0; i < red.pivots.size(); ++i) v[red.pivots[i]] = f.neg(red.echelon(i, free));
        vectors.append_row(v);
    }
    if (vectors.rows() == 0) return Subspace<F>::zero(f, m.cols());
    return Subspace<F>::span(vectors);
}

template <ExactField F>
Matrix<F> inverse(const Matrix<F>& m) {
    if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "inverse of a non-square matrix");
    const std::size_t n = m.rows();
    const F& f = m.field();
    Matrix<F> aug(f, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = f.one();
    }
    auto red = rref(std::move(aug));
    if (red.rank < n || (n > 0 && red.pivots[n - 1] != n - 1)) throw Error(ErrorKind::SingularMatrix, "matrix is singular");
    Matrix<F> out(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = red.echelon(i, n + j);
    return out;
}

template <ExactField F>
typename F::Element determinant(Matrix<F> m) {
    if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
    const F& f = m.field();
    auto det = f.one();
    const std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && f.is_zero(m(p, c))) ++p;
        if (p == n) return f.zero();
        if (p != c) {
            m.swap_rows(p, c);
            det = f.neg(det);
        }
        det = f.mul(det, m(c, c));
        const auto inv = f.inv(m(c, c));
        for (std::size_t i = c + 1; i < n; ++i) {
            if (f.is_zero(m(i, c))) continue;
            const auto factor = f.mul(m(i, c), inv);
            sub_scaled(f, m.row(i), factor, std::span<const typename F::Element>(m.row(c)));
        }
    }
    return det;
}

template <ExactField F>
bool is_invertible(const Matrix<F>& m) {
    return m.is_square() && rank(m) == m.rows();
}

/// Polynomial over a field, coefficients low degree first.
template <ExactField F>
using Polynomial = std::vector<typename F::Element>;

template <ExactField F>
typename F::Element evaluate(const F& f, const Polynomial<F>& p, const typename F::Element& x) {
    auto acc = f.zero();
    for (std::size_t i = p.size(); i-- > 0;) acc = f.add(f.mul(acc, x), p[i]);
    return acc;
}

/// det(x*1 - M) via reduction to Hessenberg form. Only field divisions occur
/// (never division by integers), so it is valid in every characteristic.
template <ExactField F>
Polynomial<F> char_poly(const Matrix<F>& matrix) {
    if (!matrix.is_square()) throw Error(ErrorKind::DimensionMismatch, "char_poly of a non-square matrix");
    const F& f = matrix.field();
    const std::size_t n = matrix.rows();
    Matrix<F> h = matrix;
    for (std::size_t m = 1; m + 1 < n; ++m) {
        std::size_t i = m;
        while (i < n && f.is_zero(h(i, m - 1))) ++i;
        if (i == n) continue;
        if (i != m) {
            h.swap_rows(i, m);
            for (std::size_t r = 0; r < n; ++r) std::swap(h(r, i), h(r, m));
        }
        const auto t_inv = f.inv(h(m, m - 1));
        for (std::size_t k = m + 1; k < n; ++k) {
            if (f.is_zero(h(k, m - 1))) continue;
            const auto u = f.mul(h(k, m - 1), t_inv);
            sub_scaled(f, h.row(k), u, std::span<const typename F::Element>(h.row(m)));
            for (std::size_t r = 0; r < n; ++r)
                if (!f.is_zero(h(r, k))) h(r, m) = f.add(h(r, m), f.mul(u, h(r, k)));
        }
    }
    // p_m = (x - h_mm) p_{m-1} - sum_i h_im (h_{i+1,i} ... h_{m,m-1}) p_{i-1}
    std::vector<Polynomial<F>> p(n + 1);
    p[0] = {f.one()};
    for (std::size_t m = 1; m <= n; ++m) {
        Polynomial<F> next(m + 1, f.zero());
        for (std::size_t j = 0; j < p[m - 1].size(); ++j) {
            next[j + 1] = f.add(next[j + 1], p[m - 1][j]);
            next[j] = f.sub(next[j], f.mul(h(m - 1, m - 1), p[m - 1][j]));
        }
        auto t = f.one();
        for (std::size_t i = m - 1; i >= 1; --i) {
            t = f.mul(t, h(i, i - 1));
            const auto coeff = f.mul(h(i - 1, m - 1), t);
            if (!f.is_zero(coeff))
                for (std::size_t j = 0; j < p[i - 1].size(); ++j)
                    next[j] = f.sub(next[j], f.mul(coeff, p[i - 1][j]));
        }
        p[m] = std::move(next);
    }
    return p[n];
}

// ---------------------------------------------------------------------------
// Jordan data

template <ExactField F>
struct JordanBlock {
    typename F::Element eigenvalue;
    std::size_t size = 0;
    std::size_t multiplicity = 0;

    friend bool operator==(const JordanBlock&, const JordanBlock&) = default;
};

/// Multiset of Jordan blocks, sorted by eigenvalue string then size descending.
template <ExactField F>
struct JordanData {
    std::size_t dim = 0;
    std::vector<JordanBlock<F>> blocks;

    friend bool operator==(const JordanData&, const JordanData&) = default;
};

/// Sorts and merges equal (eigenvalue, size) entries.
template <ExactField F>
JordanData<F> make_jordan_data(const F& f, std::vector<JordanBlock<F>> blocks) {
    std::sort(blocks.begin(), blocks.end(), [&](const JordanBlock<F>& a, const JordanBlock<F>& b) {
        const auto sa = f.to_string(a.eigenvalue), sb = f.to_string(b.eigenvalue);
        if (sa != sb) return sa < sb;
        return a.size > b.size;
    });
    JordanData<F> out;
    for (auto& b : blocks) {
        if (b.multiplicity == 0) continue;
        out.dim += b.size * b.multiplicity;
        if (!out.blocks.empty() && f.equal(out.blocks.back().eigenvalue, b.eigenvalue) && out.blocks.back().size == b.size)
            out.blocks.back().multiplicity += b.multiplicity;
        else
            out.blocks.push_back(std::move(b));
    }
    return out;
}

/// Roots of unity in the field whose order divides one of the given orders.
template <ExactField F>
std::vector<typename F::Element> roots_of_unity(const F& f, const std::vector<unsigned>& orders) {
    std::vector<typename F::Element> out;
    std::set<std::string> seen;
    for (auto order : orders)
        for (auto d : arith::divisors(order)) {
            const auto e = static_cast<unsigned>(d);
            if (!f.has_root_of_unity(e)) continue;
            for (unsigned j = 0; j < e; ++j) {
                if (std::gcd(j, e) != 1 && !(e == 1 && j == 0)) continue;
                auto z = f.root_of_unity(e, static_cast<long>(j));
                if (seen.insert(f.to_string(z)).second) out.push_back(std::move(z));
            }
        }
    return out;
}

/// Jordan structure of M with eigenvalues searched among roots of unity of
/// the given orders; block counts come from dim ker (M - z)^k.
template <ExactField F>
JordanData<F> jordan_data(const Matrix<F>& m, const std::vector<unsigned>& eigenvalue_orders) {
    if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "jordan_data of a non-square matrix");
    const F& f = m.field();
    const std::size_t n = m.rows();
    const auto cp = char_poly(m);
    std::vector<JordanBlock<F>> blocks;
    std::size_t found = 0;
    for (const auto& z : roots_of_unity(f, eigenvalue_orders)) {
        if (!f.is_zero(evaluate(f, cp, z))) continue;
        const Matrix<F> shifted = m - Matrix<F>::scalar(f, n, z);
        std::vector<std::size_t> kdims{0};
        Matrix<F> pow = shifted;
        while (true) {
            const std::size_t d = n - rank(pow);
            if (d == kdims.back()) break;
            kdims.push_back(d);
            pow = pow * shifted;
        }
        // at_least[k] = number of blocks of size >= k
        std::vector<std::size_t> at_least(kdims.size() + 1, 0);
        for (std::size_t k = 1; k < kdims.size(); ++k) at_least[k] = kdims[k] - kdims[k - 1];
        for (std::size_t k = 1; k < kdims.size(); ++k) {
            const std::size_t exact = at_least[k] - at_least[k + 1];
            if (exact) blocks.push_back({z, k, exact});
        }
        found += kdims.back();
    }
    if (found != n)
        throw Error(ErrorKind::EigenvalueOutsideField, "eigenvalues found account for " + std::to_string(found) +
                                                           " of " + std::to_string(n) + " dimensions");
    return make_jordan_data(f, std::move(blocks));
}

// ---------------------------------------------------------------------------
// Quotients and linear solution spaces

/// Actions induced on F^n / S in the coordinates of S's free (non-pivot) columns.
template <ExactField F>
std::vector<Matrix<F>> induced_quotient_action(const std::vector<Matrix<F>>& mats, const Subspace<F>& s) {
    using Element = typename F::Element;
    const F& f = s.field();
    const auto free = s.free_coordinates();
    const std::size_t d = free.size();
    std::vector<Matrix<F>> out;
    out.reserve(mats.size());
    for (std::size_t idx = 0; idx < mats.size(); ++idx) {
        const auto& m = mats[idx];
        if (m.rows() != s.ambient_dim() || m.cols() != s.ambient_dim())
            throw Error(ErrorKind::DimensionMismatch, "quotient action: matrix size differs from ambient dimension");
        for (std::size_t i = 0; i < s.dim(); ++i)
            if (!s.contains(mat_vec(m, s.basis().row(i))))
                throw Error(ErrorKind::NotInvariant, "subspace not invariant under matrix " + std::to_string(idx));
        Matrix<F> q(f, d, d);
        std::vector<Element> column(m.rows());
        for (std::size_t a = 0; a < d; ++a) {
            for (std::size_t i = 0; i < m.rows(); ++i) column[i] = m(i, free[a]);
            const auto reduced = s.reduce(column);
            for (std::size_t b = 0; b < d; ++b) q(b, a) = reduced[free[b]];
        }
        out.push_back(std::move(q));
    }
    return out;
}

/// Basis of {sum c_j X_j : map(sum c_j X_j) = 0} for a linear map on matrices.
template <ExactField F, class LinearMap>
std::vector<Matrix<F>> restrict_solutions(const std::vector<Matrix<F>>& basis, LinearMap&& map) {
    if (basis.empty()) return {};
    const F& f = basis.front().field();
    std::vector<Matrix<F>> images;
    images.reserve(basis.size());
    for (const auto& x : basis) images.push_back(map(x));
    const std::size_t len = images.front().rows() * images.front().cols();
    Matrix<F> system(f, len, basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
        const auto flat = images[j].data();
        for (std::size_t i = 0; i < len; ++i) system(i, j) = flat[i];
    }
    const auto ker = kernel(system);
    std::vector<Matrix<F>> out;
    for (std::size_t k = 0; k < ker.dim(); ++k) {
        Matrix<F> x(f, basis.front().rows(), basis.front().cols());
        for (std::size_t j = 0; j < basis.size(); ++j) {
            const auto& c = ker.basis()(k, j);
            add_scaled(x, c, basis[j]);
        }
        out.push_back(std::move(x));
    }
    return out;
}

/// Elementary matrices E_ab, the standard basis of all n x m matrices.
template <ExactField F>
std::vector<Matrix<F>> elementary_basis(const F& f, std::size_t rows, std::size_t cols) {
    std::vector<Matrix<F>> out;
    out.reserve(rows * cols);
    for (std::size_t a = 0; a < rows; ++a)
        for (std::size_t b = 0; b < cols; ++b) {
            Matrix<F> e(f, rows, cols);
            e(a, b) = f.one();
            out.push_back(std::move(e));
        }
    return out;
}

namespace detail {

// Deterministic small-integer coefficients for trial combinations.
inline long trial_coefficient(std::size_t trial, std::size_t j) {
    std::uint64_t h = (trial + 1) * 0x9E3779B97F4A7C15ULL ^ (j + 1) * 0xC2B2AE3D27D4EB4FULL;
    h ^= h >> 29;
    h *= 0xBF58476D1CE4E5B9ULL;
    h ^= h >> 32;
    return static_cast<long>(h % 17) - 8;
}

} // namespace detail

/// Finds an invertible element of span(basis), or nothing.
template <ExactField F>
std::optional<Matrix<F>> invertible_in_span(const std::vector<Matrix<F>>& basis) {
    if (basis.empty()) return std::nullopt;
    const F& f = basis.front().field();
    const std::size_t n = basis.front().rows();
    for (const auto& x : basis)
        if (is_invertible(x)) return x;
    if (basis.size() == 1) return std::nullopt;
    auto combine = [&](auto&& coeff) {
        Matrix<F> x(f, n, n);
        for (std::size_t j = 0; j < basis.size(); ++j) {
            const auto c = coeff(j);
            add_scaled(x, c, basis[j]);
        }
        return x;
    };
    for (std::size_t trial = 0; trial <= n * n; ++trial) {
        auto x = combine([&](std::size_t j) { return f.from_int(detail::trial_coefficient(trial, j)); });
        if (is_invertible(x)) return x;
    }
    if constexpr (std::is_same_v<F, FiniteField>) {
        // exhaustive over F_q^d when it is small
        const std::uint64_t q = f.order();
        std::uint64_t total = 1;
        for (std::size_t j = 0; j < basis.size() && total <= 100000; ++j) total *= q;
        if (total <= 100000) {
            for (std::uint64_t code = 1; code < total; ++code) {
                auto x = combine([&](std::size_t j) {
                    std::uint64_t t = code;
                    for (std::size_t s = 0; s < j; ++s) t /= q;
                    return static_cast<typename F::Element>(t % q);
                });
                if (is_invertible(x)) return x;
            }
        }
    }
    return std::nullopt;
}

/// Invertible X with X A_i X^-1 = B_i for every i, if one is found.
template <ExactField F>
std::optional<Matrix<F>> simultaneous_conjugacy(const std::vector<Matrix<F>>& a, const std::vector<Matrix<F>>& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::ArityMismatch, "tuples of different length");
    if (a.empty()) return std::nullopt;
    const std::size_t n = a.front().rows();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].rows() != n || a[i].cols() != n || b[i].rows() != n || b[i].cols() != n) return std::nullopt;
    auto basis = elementary_basis(a.front().field(), n, n);
    for (std::size_t i = 0; i < a.size() && !basis.empty(); ++i)
        basis = restrict_solutions(basis, [&](const Matrix<F>& x) { return x * a[i] - b[i] * x; });
    auto x = invertible_in_span(basis);
    if (!x) return std::nullopt;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(*x * a[i] == b[i] * *x)) return std::nullopt;
    return x;
}

} // namespace mconv
