#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mconv/linalg.hpp"

namespace mconv {

/// (r+1) invertible n x n matrices with T_1 * ... * T_{r+1} = 1; entry r+1
/// is the point at infinity.
template <ExactField F>
struct MonodromyTuple {
    F field;
    std::size_t n = 0;
    std::size_t r = 0;
    std::vector<Matrix<F>> entries;
    std::vector<std::string> labels;

    /// 1-based access matching the usual T_1 .. T_{r+1} numbering.
    const Matrix<F>& entry(std::size_t i) const { return entries.at(i - 1); }
    const Matrix<F>& infinity() const { return entries.back(); }
};

template <ExactField F>
MonodromyTuple<F> make_tuple(std::vector<Matrix<F>> entries) {
    if (entries.size() < 2) throw Error(ErrorKind::TooFewPoints, "a tuple needs at least two entries");
    MonodromyTuple<F> t{entries.front().field(), entries.front().rows(), entries.size() - 1, std::move(entries), {}};
    return t;
}

template <ExactField F>
Matrix<F> ordered_product(const std::vector<Matrix<F>>& mats, std::size_t count) {
    Matrix<F> p = Matrix<F>::identity(mats.front().field(), mats.front().rows());
    for (std::size_t i = 0; i < count; ++i) p = p * mats[i];
    return p;
}

/// Throws SingularEntry or ProductRelationViolated; returns normally otherwise.
template <ExactField F>
void validate(const MonodromyTuple<F>& t) {
    if (t.entries.size() != t.r + 1)
        throw Error(ErrorKind::ArityMismatch, "expected " + std::to_string(t.r + 1) + " entries, found " +
                                                  std::to_string(t.entries.size()));
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
        const auto& m = t.entries[i];
        if (m.rows() != t.n || m.cols() != t.n)
            throw Error(ErrorKind::DimensionMismatch, "entry " + std::to_string(i + 1) + " is not " +
                                                          std::to_string(t.n) + "x" + std::to_string(t.n));
        if (!(m.field() == t.field)) throw Error(ErrorKind::FieldMismatch, "entry " + std::to_string(i + 1));
        if (!is_invertible(m)) throw Error(ErrorKind::SingularEntry, "entry " + std::to_string(i + 1) + " is singular");
    }
    const auto product = ordered_product(t.entries, t.entries.size());
    if (!product.is_identity()) {
        std::string residual;
        for (std::size_t i = 0; i < product.rows() && i < 4; ++i) {
            residual += i ? "; " : "";
            for (std::size_t j = 0; j < product.cols() && j < 4; ++j)
                residual += (j ? " " : "") + t.field.to_string(product(i, j));
        }
        throw Error(ErrorKind::ProductRelationViolated, "product of entries is not the identity (leading block: " +
                                                            residual + ")");
    }
}

/// The rank-2 tuple T_{m,r} over Q(zeta_N), N = lcm(4, m).
MonodromyTuple<CyclotomicField> construct_T(unsigned m, std::size_t r);

/// Exponents d_1 < ... < d_phi(m) of (Z/mZ)^*, repeated twice: the order of
/// the eigenvalues lambda_i = zeta_m^{d_i} on the first 2 phi(m) entries.
std::vector<unsigned> lambda_exponents(unsigned m);

// ---------------------------------------------------------------------------
// Rank-one twists

template <ExactField F>
struct RankOneTuple {
    F field;
    std::size_t r = 0;
    std::vector<typename F::Element> scalars;
};

enum class RankOnePattern { N1, N2, N3, N4, N5, L5 };

std::optional<RankOnePattern> parse_pattern(std::string_view name);
std::string_view to_string(RankOnePattern p);

/// 1-based positions carrying -1 for a pattern at a given r.
std::vector<std::size_t> pattern_negative_positions(RankOnePattern p, std::size_t r);

template <ExactField F>
RankOneTuple<F> rank_one_from_scalars(const F& field, std::vector<typename F::Element> scalars) {
    if (scalars.size() < 2) throw Error(ErrorKind::TooFewPoints, "rank-one tuple needs at least two scalars");
    auto prod = field.one();
    for (const auto& s : scalars) {
        if (field.is_zero(s)) throw Error(ErrorKind::SingularEntry, "rank-one scalar is zero");
        prod = field.mul(prod, s);
    }
    if (!field.equal(prod, field.one()))
        throw Error(ErrorKind::ProductRelationViolated, "rank-one scalars multiply to " + field.to_string(prod));
    return {field, scalars.size() - 1, std::move(scalars)};
}

template <ExactField F>
RankOneTuple<F> rank_one_from_signs(const F& field, const std::vector<int>& signs) {
    std::vector<typename F::Element> scalars;
    for (int s : signs) scalars.push_back(field.from_int(s));
    return rank_one_from_scalars(field, std::move(scalars));
}

template <ExactField F>
RankOneTuple<F> construct_rank_one(RankOnePattern pattern, std::size_t r, const F& field) {
    if (r < 6) throw Error(ErrorKind::TooFewPoints, "rank-one patterns need r >= 6");
    std::vector<int> signs(r + 1, 1);
    for (auto pos : pattern_negative_positions(pattern, r)) signs[pos - 1] = -1;
    return rank_one_from_signs(field, signs);
}

/// Entrywise scalar twist c_i * T_i.
template <ExactField F>
MonodromyTuple<F> tensor_rank_one(const MonodromyTuple<F>& t, const RankOneTuple<F>& c) {
    if (c.r != t.r)
        throw Error(ErrorKind::ArityMismatch, "tuple has r = " + std::to_string(t.r) + ", twist has r = " +
                                                  std::to_string(c.r));
    if (!(c.field == t.field)) throw Error(ErrorKind::FieldMismatch, "twist and tuple fields differ");
    MonodromyTuple<F> out = t;
    for (std::size_t i = 0; i < t.entries.size(); ++i) out.entries[i] = c.scalars[i] * t.entries[i];
    const auto product = ordered_product(out.entries, out.entries.size());
    if (!product.is_identity())
        throw Error(ErrorKind::ProductRelationViolated, "twisted tuple lost the product relation");
    return out;
}

/// Block-diagonal sum of two tuples with the same r.
template <ExactField F>
MonodromyTuple<F> direct_sum(const MonodromyTuple<F>& a, const MonodromyTuple<F>& b) {
    if (a.r != b.r) throw Error(ErrorKind::ArityMismatch, "direct sum of tuples with different r");
    std::vector<Matrix<F>> entries;
    for (std::size_t i = 0; i < a.entries.size(); ++i) entries.push_back(direct_sum(a.entries[i], b.entries[i]));
    return make_tuple(std::move(entries));
}

// ---------------------------------------------------------------------------
// Local analysis

template <ExactField F>
struct EntryCensusRow {
    std::size_t index = 0; // 1-based
    typename F::Element determinant;
    std::optional<std::size_t> order; // empty: exceeds the bound
    std::size_t rank_minus_one = 0;   // rk(T - 1)
    std::size_t rank_plus_one = 0;    // rk(T + 1)
    bool is_reflection = false;
    bool is_bireflection = false;
    bool is_negated_reflection = false;
    bool is_scalar = false;
};

template <ExactField F>
using EntryCensus = std::vector<EntryCensusRow<F>>;

/// Multiplicative order of m by repeated multiplication, up to bound.
template <ExactField F>
std::optional<std::size_t> matrix_order(const Matrix<F>& m, std::size_t bound) {
    Matrix<F> p = m;
    for (std::size_t k = 1; k <= bound; ++k) {
        if (p.is_identity()) return k;
        p = p * m;
    }
    return std::nullopt;
}

template <ExactField F>
EntryCensusRow<F> census_row(const Matrix<F>& m, std::size_t index, std::size_t order_bound) {
    const F& f = m.field();
    const auto id = Matrix<F>::identity(f, m.rows());
    EntryCensusRow<F> row;
    row.index = index;
    row.determinant = determinant(m);
    row.order = matrix_order(m, order_bound);
    row.rank_minus_one = rank(m - id);
    row.rank_plus_one = rank(m + id);
    row.is_reflection = row.rank_minus_one == 1;
    row.is_bireflection = row.rank_minus_one == 2;
    row.is_negated_reflection = row.rank_plus_one == 1;
    row.is_scalar = m.is_scalar();
    return row;
}

template <ExactField F>
EntryCensus<F> entry_census(const MonodromyTuple<F>& t, std::size_t order_bound) {
    EntryCensus<F> out;
    for (std::size_t i = 0; i < t.entries.size(); ++i) out.push_back(census_row(t.entries[i], i + 1, order_bound));
    return out;
}

/// Jordan multiset invariant under eigenvalue -> eigenvalue^-1.
template <ExactField F>
bool is_locally_selfdual(const F& f, const JordanData<F>& j) {
    std::vector<JordanBlock<F>> dual;
    for (const auto& b : j.blocks) dual.push_back({f.inv(b.eigenvalue), b.size, b.multiplicity});
    return make_jordan_data(f, std::move(dual)) == j;
}

template <ExactField F>
std::vector<bool> local_selfdual_check(const MonodromyTuple<F>& t, const std::vector<unsigned>& eigenvalue_orders) {
    std::vector<bool> out;
    for (const auto& m : t.entries) out.push_back(is_locally_selfdual(t.field, jordan_data(m, eigenvalue_orders)));
    return out;
}

} // namespace mconv
