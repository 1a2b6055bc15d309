#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "mconv/fields.hpp"

namespace mconv {

/// Dense row-major matrix over an exact field.
template <ExactField F>
class Matrix {
public:
    using Field = F;
    using Element = typename F::Element;

    explicit Matrix(F field, std::size_t rows = 0, std::size_t cols = 0)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(const F& field, std::size_t n) {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
        return m;
    }

    static Matrix scalar(const F& field, std::size_t n, const Element& value) {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = value;
        return m;
    }

    static Matrix diagonal(const F& field, const std::vector<Element>& diag) {
        Matrix m(field, diag.size(), diag.size());
        for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
        return m;
    }

    /// Integer literal matrix, e.g. from_ints(Q, {{0, 1}, {1, 0}}).
    static Matrix from_ints(const F& field, std::initializer_list<std::initializer_list<long>> rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r ? rows.begin()->size() : 0;
        Matrix m(field, r, c);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != c) throw Error(ErrorKind::DimensionMismatch, "ragged integer matrix literal");
            std::size_t j = 0;
            for (long v : row) m(i, j++) = field.from_int(v);
            ++i;
        }
        return m;
    }

    const F& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Element& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Element& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<Element> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const Element> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::span<const Element> data() const { return data_; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    void append_row(std::span<const Element> values) {
        if (rows_ == 0 && cols_ == 0) cols_ = values.size();
        if (values.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "appended row has wrong length");
        data_.insert(data_.end(), values.begin(), values.end());
        ++rows_;
    }

    bool is_zero() const {
        for (const auto& e : data_)
            if (!field_.is_zero(e)) return false;
        return true;
    }

    bool is_identity() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!field_.equal((*this)(i, j), i == j ? field_.one() : field_.zero())) return false;
        return true;
    }

    /// True for c * identity; the scalar is written to *value when given.
    bool is_scalar(Element* value = nullptr) const {
        if (!is_square() || rows_ == 0) return false;
        const Element& d = (*this)(0, 0);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!field_.equal((*this)(i, j), i == j ? d : field_.zero())) return false;
        if (value) *value = d;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            if (!a.field_.equal(a.data_[i], b.data_[i])) return false;
        return true;
    }

private:
    F field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Element> data_;
};

template <ExactField F>
Matrix<F> operator+(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix sum");
    Matrix<F> out(a.field(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a.field().add(a(i, j), b(i, j));
    return out;
}

template <ExactField F>
Matrix<F> operator-(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix difference");
    Matrix<F> out(a.field(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a.field().sub(a(i, j), b(i, j));
    return out;
}

template <ExactField F>
Matrix<F> operator-(const Matrix<F>& a) {
    Matrix<F> out(a.field(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a.field().neg(a(i, j));
    return out;
}

template <ExactField F>
Matrix<F> operator*(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.cols() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "matrix product");
    const F& f = a.field();
    Matrix<F> out(f, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const auto& aik = a(i, k);
            if (f.is_zero(aik)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (!f.is_zero(b(k, j))) out(i, j) = f.add(out(i, j), f.mul(aik, b(k, j)));
        }
    return out;
}

template <ExactField F>
Matrix<F> operator*(const typename F::Element& c, const Matrix<F>& a) {
    Matrix<F> out(a.field(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a.field().mul(c, a(i, j));
    return out;
}

/// x += c * y, skipping zero entries of y.
template <ExactField F>
void add_scaled(Matrix<F>& x, const typename F::Element& c, const Matrix<F>& y) {
    const F& f = x.field();
    if (f.is_zero(c)) return;
    for (std::size_t i = 0; i < y.rows(); ++i)
        for (std::size_t j = 0; j < y.cols(); ++j)
            if (!f.is_zero(y(i, j))) x(i, j) = f.add(x(i, j), f.mul(c, y(i, j)));
}

/// M * v for a vector given as a span.
template <ExactField F>
std::vector<typename F::Element> mat_vec(const Matrix<F>& m, std::span<const typename F::Element> v) {
    if (v.size() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix-vector product");
    const F& f = m.field();
    std::vector<typename F::Element> out(m.rows());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (f.is_zero(v[j])) continue;
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (!f.is_zero(m(i, j))) out[i] = f.add(out[i], f.mul(m(i, j), v[j]));
    }
    return out;
}

template <ExactField F>
Matrix<F> transpose(const Matrix<F>& a) {
    Matrix<F> out(a.field(), a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
    return out;
}

template <ExactField F>
Matrix<F> power(const Matrix<F>& a, unsigned e) {
    Matrix<F> result = Matrix<F>::identity(a.field(), a.rows());
    Matrix<F> base = a;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

/// Block-diagonal sum.
template <ExactField F>
Matrix<F> direct_sum(const Matrix<F>& a, const Matrix<F>& b) {
    Matrix<F> out(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
    return out;
}

/// Entrywise image under a field homomorphism.
template <ExactField To, ExactField From, class Map>
Matrix<To> map_entries(const Matrix<From>& a, const To& target, Map&& map) {
    Matrix<To> out(target, a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = map(a(i, j));
    return out;
}

} // namespace mconv
