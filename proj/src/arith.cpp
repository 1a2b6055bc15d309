#include "mconv/arith.hpp"

#include <stdexcept>

namespace mconv::arith {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t result = n;
    for (auto p : prime_factors(n)) result = result / p * (p - 1);
    return result;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> small, large;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d != n / d) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

std::vector<std::uint64_t> units_mod(std::uint64_t n) {
    if (n == 1) return {1};
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 1; d < n; ++d)
        if (std::gcd(d, n) == 1) out.push_back(d);
    return out;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    unsigned __int128 result = 1 % mod, b = base % mod;
    while (exp) {
        if (exp & 1) result = result * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return static_cast<std::uint64_t>(result);
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t n) {
    if (n == 1) return 1;
    if (std::gcd(a, n) != 1) throw std::invalid_argument("multiplicative_order: not a unit");
    std::uint64_t order = euler_phi(n);
    for (auto p : prime_factors(order))
        while (order % p == 0 && pow_mod(a, order / p, n) == 1) order /= p;
    return order;
}

} // namespace mconv::arith
