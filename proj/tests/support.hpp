#pragma once

#include <random>

#include "mconv/group.hpp"

namespace testing {

using namespace mconv;
using CF = CyclotomicField;
using FF = FiniteField;

inline CyclotomicElement random_cyclotomic(const CF& f, std::mt19937_64& rng, int bound = 9) {
    std::uniform_int_distribution<int> num(-bound, bound), den(1, 4);
    std::vector<mpq_class> c;
    for (std::size_t i = 0; i < f.degree(); ++i) {
        mpq_class v(num(rng), den(rng));
        v.canonicalize();
        c.push_back(v);
    }
    return f.from_coeffs(std::move(c));
}

inline FF::Element random_finite(const FF& f, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> d(0, f.order() - 1);
    return static_cast<FF::Element>(d(rng));
}

template <ExactField F, class Gen>
Matrix<F> random_matrix(const F& f, std::size_t rows, std::size_t cols, Gen&& gen) {
    Matrix<F> m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = gen();
    return m;
}

/// Random invertible matrix with small integer entries.
template <ExactField F>
Matrix<F> random_invertible(const F& f, std::size_t n, std::mt19937_64& rng, int bound = 2) {
    std::uniform_int_distribution<int> d(-bound, bound);
    for (;;) {
        auto m = random_matrix(f, n, n, [&] { return f.from_int(d(rng)); });
        if (is_invertible(m)) return m;
    }
}

/// Random tuple over Q(zeta_4) with finite entries conjugate to diagonal
/// matrices of fourth roots of unity; accepted only when the Burnside test
/// certifies absolute irreducibility and MC_{-1} has positive rank.
inline MonodromyTuple<CF> random_irreducible_tuple(std::mt19937_64& rng, std::size_t n, std::size_t r) {
    const CF f(4);
    std::uniform_int_distribution<int> e(0, 3);
    const auto minus_one = f.from_int(-1);
    for (;;) {
        std::vector<Matrix<CF>> entries;
        for (std::size_t k = 0; k < r; ++k) {
            std::vector<CyclotomicElement> diag;
            for (std::size_t i = 0; i < n; ++i) diag.push_back(f.root_of_unity(4, e(rng)));
            const auto p = random_invertible(f, n, rng);
            entries.push_back(p * Matrix<CF>::diagonal(f, diag) * inverse(p));
        }
        entries.push_back(inverse(ordered_product(entries, entries.size())));
        auto t = make_tuple(std::move(entries));
        if (burnside_dimension(t.entries) != n * n) continue;
        if (expected_rank(t, minus_one) <= 0) continue;
        return t;
    }
}

// Searches every line of F^n for one fixed by all generators.
inline bool has_invariant_line(const std::vector<Matrix<FF>>& gens) {
    const auto& f = gens.front().field();
    const std::size_t n = gens.front().rows();
    const std::uint64_t q = f.order();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= q;
    std::vector<FF::Element> v(n);
    for (std::uint64_t code = 1; code < total; ++code) {
        std::uint64_t c = code;
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = static_cast<FF::Element>(c % q);
            c /= q;
        }
        // one representative per line: first nonzero coordinate is 1
        std::size_t lead = 0;
        while (v[lead] == 0) ++lead;
        if (v[lead] != 1) continue;
        bool fixed = true;
        for (const auto& g : gens) {
            Matrix<FF> pair(f, 2, n);
            const auto gv = mat_vec(g, v);
            for (std::size_t i = 0; i < n; ++i) {
                pair(0, i) = v[i];
                pair(1, i) = gv[i];
            }
            if (rank(pair) > 1) {
                fixed = false;
                break;
            }
        }
        if (fixed) return true;
    }
    return false;
}

// A proper invariant subspace of F^n, n <= 3, exists iff some line is fixed by
// the generators or by their transposes (a plane is the annihilator of a line).
inline bool reducible_over(const std::vector<Matrix<FF>>& gens) {
    std::vector<Matrix<FF>> transposed;
    for (const auto& g : gens) transposed.push_back(transpose(g));
    return has_invariant_line(gens) || has_invariant_line(transposed);
}

} // namespace testing
