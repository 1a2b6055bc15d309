#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

// Small integer number theory used to set up fields and root-of-unity data.
namespace mconv::arith {

bool is_prime(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);

/// Distinct prime divisors, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// All positive divisors, ascending.
std::vector<std::uint64_t> divisors(std::uint64_t n);

/// Residues 1 <= d < n coprime to n, ascending (for n = 1 this is {1}).
std::vector<std::uint64_t> units_mod(std::uint64_t n);

/// Multiplicative order of a modulo n; requires gcd(a, n) = 1.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t n);

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

inline std::uint64_t lcm(std::uint64_t a, std::uint64_t b) { return std::lcm(a, b); }

/// Floor modulus, result in [0, n).
inline std::int64_t mod_floor(std::int64_t a, std::int64_t n) {
    std::int64_t r = a % n;
    return r < 0 ? r + n : r;
}

} // namespace mconv::arith
