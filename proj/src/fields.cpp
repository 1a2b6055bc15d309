#include "mconv/fields.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "mconv/arith.hpp"

namespace mconv {

// ---------------------------------------------------------------------------
// Cyclotomic polynomials.

namespace {

using IntPoly = std::vector<mpz_class>;

// Exact quotient of a by a monic b.
IntPoly divide_exact(IntPoly a, const IntPoly& b) {
    const std::size_t db = b.size() - 1;
    IntPoly q(a.size() - db);
    for (std::size_t i = a.size(); i-- > db;) {
        const mpz_class c = a[i];
        q[i - db] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    return q;
}

} // namespace

std::vector<mpz_class> cyclotomic_polynomial(unsigned n) {
    static std::mutex mutex;
    static std::map<unsigned, IntPoly> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
    }
    // x^n - 1 divided by Phi_d for every proper divisor d of n.
    IntPoly poly(n + 1);
    poly[0] = -1;
    poly[n] = 1;
    for (auto d : arith::divisors(n))
        if (d != n) poly = divide_exact(std::move(poly), cyclotomic_polynomial(static_cast<unsigned>(d)));
    std::lock_guard lock(mutex);
    cache.emplace(n, poly);
    return poly;
}

// ---------------------------------------------------------------------------
// Q(zeta_N)

namespace detail {
struct CyclotomicData {
    unsigned order = 1;
    bool rational = false;
    std::size_t degree = 1;
    IntPoly modulus;
    // x^e mod Phi_N for 0 <= e < N, each of length degree.
    std::vector<IntPoly> power_table;
    std::vector<unsigned> units;
};
} // namespace detail

namespace {

std::shared_ptr<const detail::CyclotomicData> build_cyclotomic(unsigned order, bool rational) {
    if (order == 0) throw Error(ErrorKind::OrderUnavailable, "cyclotomic order must be positive");
    auto data = std::make_shared<detail::CyclotomicData>();
    data->order = order;
    data->rational = rational;
    data->modulus = cyclotomic_polynomial(order);
    data->degree = data->modulus.size() - 1;
    const std::size_t deg = data->degree;
    IntPoly current(deg);
    current[0] = 1;
    data->power_table.reserve(order);
    for (unsigned e = 0; e < order; ++e) {
        data->power_table.push_back(current);
        // multiply by x and reduce by the monic modulus
        mpz_class top = current[deg - 1];
        for (std::size_t j = deg - 1; j > 0; --j) current[j] = current[j - 1];
        current[0] = 0;
        if (top != 0)
            for (std::size_t j = 0; j < deg; ++j) current[j] -= top * data->modulus[j];
    }
    for (auto u : arith::units_mod(order)) data->units.push_back(static_cast<unsigned>(u));
    return data;
}

void trim(std::vector<mpq_class>& c) {
    while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
}

} // namespace

CyclotomicField::CyclotomicField(unsigned order) : data_(build_cyclotomic(order, false)) {}

CyclotomicField CyclotomicField::rational() {
    CyclotomicField f(1);
    f.data_ = build_cyclotomic(1, true);
    return f;
}

unsigned CyclotomicField::order() const { return data_->order; }
std::size_t CyclotomicField::degree() const { return data_->degree; }
bool CyclotomicField::is_rational() const { return data_->rational; }
const std::vector<mpz_class>& CyclotomicField::modulus() const { return data_->modulus; }

CyclotomicField::Element CyclotomicField::from_int(long v) const {
    if (v == 0) return {};
    return {{mpq_class(v)}};
}

CyclotomicField::Element CyclotomicField::from_rational(const mpq_class& v) const {
    if (sgn(v) == 0) return {};
    return {{v}};
}

CyclotomicField::Element CyclotomicField::from_coeffs(std::vector<mpq_class> coeffs) const {
    const std::size_t deg = data_->degree;
    if (coeffs.size() > deg) {
        std::vector<mpq_class> out(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(deg));
        for (std::size_t e = deg; e < coeffs.size(); ++e) {
            if (sgn(coeffs[e]) == 0) continue;
            const auto& row = data_->power_table[e % data_->order];
            for (std::size_t j = 0; j < deg; ++j)
                if (row[j] != 0) out[j] += coeffs[e] * row[j];
        }
        coeffs = std::move(out);
    }
    trim(coeffs);
    return {std::move(coeffs)};
}

std::vector<mpq_class> CyclotomicField::coeffs(const Element& a) const {
    std::vector<mpq_class> out(data_->degree);
    std::copy(a.coeffs.begin(), a.coeffs.end(), out.begin());
    return out;
}

CyclotomicField::Element CyclotomicField::zeta_power(long e) const {
    const auto n = static_cast<long>(data_->order);
    const auto& row = data_->power_table[static_cast<std::size_t>(arith::mod_floor(e, n))];
    std::vector<mpq_class> c(row.begin(), row.end());
    trim(c);
    return {std::move(c)};
}

bool CyclotomicField::has_root_of_unity(unsigned ord) const {
    if (ord == 0) return false;
    const unsigned n = data_->order;
    return n % ord == 0 || (n % 2 == 1 && (2 * n) % ord == 0);
}

CyclotomicField::Element CyclotomicField::root_of_unity(unsigned ord, long exponent) const {
    if (!has_root_of_unity(ord))
        throw Error(ErrorKind::OrderUnavailable,
                    "no root of unity of order " + std::to_string(ord) + " in Q(zeta_" + std::to_string(order()) + ")");
    const long n = data_->order;
    if (n % ord == 0) return zeta_power(exponent * (n / static_cast<long>(ord)));
    // zeta_{2N} = -zeta_N^((N+1)/2) for odd N
    const long t = arith::mod_floor(exponent * (2 * n / static_cast<long>(ord)), 2 * n);
    Element z = zeta_power(t * ((n + 1) / 2));
    return t % 2 == 0 ? z : neg(z);
}

CyclotomicField::Element CyclotomicField::galois_conjugate(const Element& a, unsigned j) const {
    const std::size_t deg = data_->degree;
    const unsigned n = data_->order;
    std::vector<mpq_class> out(deg);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (sgn(a.coeffs[i]) == 0) continue;
        const auto& row = data_->power_table[(static_cast<std::uint64_t>(i) * j) % n];
        for (std::size_t k = 0; k < deg; ++k)
            if (row[k] != 0) out[k] += a.coeffs[i] * row[k];
    }
    trim(out);
    return {std::move(out)};
}

CyclotomicField::Element CyclotomicField::add(const Element& a, const Element& b) const {
    if (a.coeffs.empty()) return b;
    if (b.coeffs.empty()) return a;
    std::vector<mpq_class> out(std::max(a.coeffs.size(), b.coeffs.size()));
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i < a.coeffs.size()) out[i] = a.coeffs[i];
        if (i < b.coeffs.size()) out[i] += b.coeffs[i];
    }
    trim(out);
    return {std::move(out)};
}

CyclotomicField::Element CyclotomicField::sub(const Element& a, const Element& b) const {
    if (b.coeffs.empty()) return a;
    std::vector<mpq_class> out(std::max(a.coeffs.size(), b.coeffs.size()));
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i < a.coeffs.size()) out[i] = a.coeffs[i];
        if (i < b.coeffs.size()) out[i] -= b.coeffs[i];
    }
    trim(out);
    return {std::move(out)};
}

CyclotomicField::Element CyclotomicField::neg(const Element& a) const {
    Element out = a;
    for (auto& c : out.coeffs) c = -c;
    return out;
}

CyclotomicField::Element CyclotomicField::mul(const Element& a, const Element& b) const {
    if (a.coeffs.empty() || b.coeffs.empty()) return {};
    if (a.coeffs.size() == 1 || b.coeffs.size() == 1) {
        const bool scalar_a = a.coeffs.size() == 1;
        const mpq_class& s = scalar_a ? a.coeffs[0] : b.coeffs[0];
        Element out = scalar_a ? b : a;
        for (auto& c : out.coeffs) c *= s;
        return out;
    }
    std::vector<mpq_class> prod(a.coeffs.size() + b.coeffs.size() - 1);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (sgn(a.coeffs[i]) == 0) continue;
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            if (sgn(b.coeffs[j]) != 0) prod[i + j] += a.coeffs[i] * b.coeffs[j];
    }
    return from_coeffs(std::move(prod));
}

CyclotomicField::Element CyclotomicField::inv(const Element& a) const {
    if (a.coeffs.empty()) throw Error(ErrorKind::SingularMatrix, "inverse of zero in Q(zeta_N)");
    if (a.coeffs.size() == 1) return {{1 / a.coeffs[0]}};
    // a^-1 = (product of the other conjugates) / norm(a)
    Element others = one();
    for (auto j : data_->units)
        if (j != 1) others = mul(others, galois_conjugate(a, j));
    const Element norm = mul(a, others);
    if (norm.coeffs.size() != 1) throw Error(ErrorKind::SingularMatrix, "norm computation did not land in Q");
    const mpq_class scale = 1 / norm.coeffs[0];
    for (auto& c : others.coeffs) c *= scale;
    return others;
}

CyclotomicField::Element CyclotomicField::pow(const Element& a, long e) const {
    Element base = e < 0 ? inv(a) : a;
    unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Element result = one();
    while (n) {
        if (n & 1) result = mul(result, base);
        n >>= 1;
        if (n) base = mul(base, base);
    }
    return result;
}

bool CyclotomicField::is_one(const Element& a) const { return a.coeffs.size() == 1 && a.coeffs[0] == 1; }

bool CyclotomicField::is_integral(const Element& a) const {
    return std::all_of(a.coeffs.begin(), a.coeffs.end(), [](const mpq_class& c) { return c.get_den() == 1; });
}

std::string CyclotomicField::to_string(const Element& a) const {
    std::ostringstream os;
    os << '[';
    const auto full = coeffs(a);
    for (std::size_t i = 0; i < full.size(); ++i) os << (i ? "," : "") << full[i].get_str();
    os << ']';
    return os.str();
}

// ---------------------------------------------------------------------------
// F_{l^k}

namespace detail {
struct FiniteFieldData {
    std::uint32_t ell = 0;
    unsigned k = 0;
    std::uint64_t q = 0;
    std::vector<std::uint32_t> modulus; // monic, low first, length k + 1
    std::vector<std::uint64_t> ell_pow; // l^i, i < k
    std::uint32_t generator = 0;
    std::vector<std::uint32_t> exp_table; // length 2(q - 1)
    std::vector<std::uint32_t> log_table; // length q, log_table[0] unused
    std::vector<std::uint32_t> inv_table;
};
} // namespace detail

namespace {

constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 22;

using ModPoly = std::vector<std::uint64_t>;

void trim_mod(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ModPoly poly_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& f, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    ModPoly prod(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    const std::size_t df = f.size() - 1; // f monic
    for (std::size_t i = prod.size(); i-- > df;) {
        const std::uint64_t c = prod[i];
        if (c == 0) continue;
        for (std::size_t j = 0; j <= df; ++j) prod[i - df + j] = (prod[i - df + j] + (p - c) * f[j]) % p;
    }
    prod.resize(std::min(prod.size(), df));
    trim_mod(prod);
    return prod;
}

ModPoly poly_powmod(ModPoly base, std::uint64_t e, const ModPoly& f, std::uint64_t p) {
    ModPoly result{1};
    while (e) {
        if (e & 1) result = poly_mulmod(result, base, f, p);
        e >>= 1;
        if (e) base = poly_mulmod(base, base, f, p);
    }
    return result;
}

ModPoly poly_mod(ModPoly a, const ModPoly& b, std::uint64_t p) {
    trim_mod(a);
    const std::size_t db = b.size() - 1;
    const std::uint64_t lead_inv = arith::pow_mod(b.back(), p - 2, p);
    while (a.size() >= b.size()) {
        const std::uint64_t c = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t j = 0; j <= db; ++j) a[shift + j] = (a[shift + j] + (p - c) * b[j]) % p;
        trim_mod(a);
    }
    return a;
}

ModPoly poly_gcd(ModPoly a, ModPoly b, std::uint64_t p) {
    trim_mod(a);
    trim_mod(b);
    while (!b.empty()) {
        ModPoly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool is_irreducible(const ModPoly& f, std::uint64_t p) {
    const std::size_t k = f.size() - 1;
    if (k == 1) return true;
    std::vector<ModPoly> frob(k + 1); // x^(p^i) mod f
    frob[0] = ModPoly{0, 1};
    for (std::size_t i = 1; i <= k; ++i) frob[i] = poly_powmod(frob[i - 1], p, f, p);
    ModPoly x{0, 1};
    if (frob[k] != poly_mod(x, f, p)) return false;
    for (auto prime : arith::prime_factors(k)) {
        ModPoly h = frob[k / prime];
        h.resize(std::max<std::size_t>(h.size(), 2));
        h[1] = (h[1] + p - 1) % p;
        trim_mod(h);
        if (poly_gcd(f, h, p).size() != 1) return false;
    }
    return true;
}

std::uint32_t encode(const ModPoly& c, const std::vector<std::uint64_t>& ell_pow) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < c.size(); ++i) v += c[i] * ell_pow[i];
    return static_cast<std::uint32_t>(v);
}

ModPoly decode(std::uint64_t v, std::uint64_t ell, unsigned k) {
    ModPoly c(k);
    for (unsigned i = 0; i < k; ++i) {
        c[i] = v % ell;
        v /= ell;
    }
    trim_mod(c);
    return c;
}

std::shared_ptr<const detail::FiniteFieldData> build_finite(std::uint32_t ell, std::vector<std::uint32_t> modulus_low) {
    if (!arith::is_prime(ell) || ell == 2)
        throw Error(ErrorKind::InvalidCharacteristic, "characteristic must be an odd prime, got " + std::to_string(ell));
    const auto k = static_cast<unsigned>(modulus_low.size());
    if (k == 0) throw Error(ErrorKind::InvalidCharacteristic, "extension degree must be positive");
    auto data = std::make_shared<detail::FiniteFieldData>();
    data->ell = ell;
    data->k = k;
    data->q = 1;
    for (unsigned i = 0; i < k; ++i) {
        data->ell_pow.push_back(data->q);
        data->q *= ell;
        if (data->q > kMaxFieldOrder)
            throw Error(ErrorKind::InvalidCharacteristic, "field order exceeds table limit 2^22");
    }
    for (auto c : modulus_low)
        if (c >= ell) throw Error(ErrorKind::InvalidCharacteristic, "modulus coefficient out of range");
    data->modulus = modulus_low;
    data->modulus.push_back(1);
    const ModPoly f(data->modulus.begin(), data->modulus.end());
    if (!is_irreducible(f, ell)) throw Error(ErrorKind::InvalidCharacteristic, "modulus is not irreducible");

    const std::uint64_t q = data->q;
    const auto group_primes = arith::prime_factors(q - 1);
    auto slow_pow = [&](std::uint64_t v, std::uint64_t e) {
        return encode(poly_powmod(decode(v, ell, k), e, f, ell), data->ell_pow);
    };
    for (std::uint64_t cand = 1; cand < q; ++cand) {
        bool primitive = true;
        for (auto p : group_primes)
            if (slow_pow(cand, (q - 1) / p) == 1) {
                primitive = false;
                break;
            }
        if (primitive) {
            data->generator = static_cast<std::uint32_t>(cand);
            break;
        }
    }
    if (q == 2) data->generator = 1;

    data->exp_table.resize(2 * (q - 1));
    data->log_table.assign(q, 0);
    data->inv_table.assign(q, 0);
    const ModPoly g = decode(data->generator, ell, k);
    ModPoly cur{1};
    for (std::uint64_t i = 0; i < q - 1; ++i) {
        const std::uint32_t v = encode(cur, data->ell_pow);
        data->exp_table[i] = v;
        data->exp_table[i + q - 1] = v;
        data->log_table[v] = static_cast<std::uint32_t>(i);
        cur = poly_mulmod(cur, g, f, ell);
    }
    for (std::uint64_t v = 1; v < q; ++v)
        data->inv_table[v] = data->exp_table[(q - 1 - data->log_table[v]) % (q - 1)];
    return data;
}

std::vector<std::uint32_t> smallest_irreducible(std::uint32_t ell, unsigned k) {
    if (!arith::is_prime(ell) || ell == 2)
        throw Error(ErrorKind::InvalidCharacteristic, "characteristic must be an odd prime, got " + std::to_string(ell));
    if (k == 0) throw Error(ErrorKind::InvalidCharacteristic, "extension degree must be positive");
    std::uint64_t count = 1;
    for (unsigned i = 0; i < k; ++i) {
        count *= ell;
        if (count > kMaxFieldOrder)
            throw Error(ErrorKind::InvalidCharacteristic, "field order exceeds table limit 2^22");
    }
    for (std::uint64_t v = 0; v < count; ++v) {
        ModPoly f(k + 1);
        std::uint64_t t = v;
        for (unsigned i = 0; i < k; ++i) {
            f[i] = t % ell;
            t /= ell;
        }
        f[k] = 1;
        if (is_irreducible(f, ell)) return std::vector<std::uint32_t>(f.begin(), f.end() - 1);
    }
    throw Error(ErrorKind::InvalidCharacteristic, "no irreducible polynomial found");
}

} // namespace

FiniteField::FiniteField(std::uint32_t ell, unsigned k) : data_(build_finite(ell, smallest_irreducible(ell, k))) {}

FiniteField::FiniteField(std::uint32_t ell, std::vector<std::uint32_t> modulus_low)
    : data_(build_finite(ell, std::move(modulus_low))) {}

std::uint32_t FiniteField::characteristic() const { return data_->ell; }
unsigned FiniteField::degree() const { return data_->k; }
std::uint64_t FiniteField::order() const { return data_->q; }
const std::vector<std::uint32_t>& FiniteField::modulus() const { return data_->modulus; }
FiniteField::Element FiniteField::primitive_root() const { return data_->generator; }

FiniteField::Element FiniteField::from_int(long v) const {
    return static_cast<Element>(arith::mod_floor(v, static_cast<std::int64_t>(data_->ell)));
}

FiniteField::Element FiniteField::from_coeffs(std::span<const std::uint32_t> c) const {
    if (c.size() > data_->k) throw Error(ErrorKind::DimensionMismatch, "too many coefficients for F_q element");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] >= data_->ell) throw Error(ErrorKind::DimensionMismatch, "coefficient out of range");
        v += c[i] * data_->ell_pow[i];
    }
    return static_cast<Element>(v);
}

std::vector<std::uint32_t> FiniteField::coeffs(Element a) const {
    std::vector<std::uint32_t> out(data_->k);
    for (unsigned i = 0; i < data_->k; ++i) {
        out[i] = a % data_->ell;
        a /= data_->ell;
    }
    return out;
}

FiniteField::Element FiniteField::add(Element a, Element b) const {
    const std::uint32_t p = data_->ell;
    if (data_->k == 1) {
        const std::uint32_t s = a + b;
        return s >= p ? s - p : s;
    }
    std::uint64_t v = 0;
    for (unsigned i = 0; i < data_->k; ++i) {
        std::uint32_t d = a % p + b % p;
        if (d >= p) d -= p;
        v += d * data_->ell_pow[i];
        a /= p;
        b /= p;
    }
    return static_cast<Element>(v);
}

FiniteField::Element FiniteField::neg(Element a) const {
    const std::uint32_t p = data_->ell;
    if (data_->k == 1) return a == 0 ? 0 : p - a;
    std::uint64_t v = 0;
    for (unsigned i = 0; i < data_->k; ++i) {
        const std::uint32_t d = a % p;
        v += (d == 0 ? 0 : p - d) * data_->ell_pow[i];
        a /= p;
    }
    return static_cast<Element>(v);
}

FiniteField::Element FiniteField::sub(Element a, Element b) const {
    if (data_->k == 1) return a >= b ? a - b : a + data_->ell - b;
    return add(a, neg(b));
}

FiniteField::Element FiniteField::mul(Element a, Element b) const {
    if (data_->k == 1) return static_cast<Element>(static_cast<std::uint64_t>(a) * b % data_->ell);
    if (a == 0 || b == 0) return 0;
    return data_->exp_table[data_->log_table[a] + data_->log_table[b]];
}

FiniteField::Element FiniteField::inv(Element a) const {
    if (a == 0) throw Error(ErrorKind::SingularMatrix, "inverse of zero in F_q");
    return data_->inv_table[a];
}

FiniteField::Element FiniteField::pow(Element a, std::int64_t e) const {
    if (a == 0) {
        if (e < 0) throw Error(ErrorKind::SingularMatrix, "negative power of zero");
        return e == 0 ? 1 : 0;
    }
    const auto n = static_cast<std::int64_t>(data_->q - 1);
    const auto l = static_cast<std::int64_t>(data_->log_table[a]);
    // reduce e first so the product cannot overflow
    return data_->exp_table[static_cast<std::size_t>(arith::mod_floor(l * arith::mod_floor(e, n), n))];
}

std::string FiniteField::to_string(Element a) const {
    if (data_->k == 1) return std::to_string(a);
    std::ostringstream os;
    os << '[';
    const auto c = coeffs(a);
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << ']';
    return os.str();
}

std::uint64_t FiniteField::log(Element a) const {
    if (a == 0) throw Error(ErrorKind::SingularMatrix, "logarithm of zero");
    return data_->log_table[a];
}

std::uint64_t FiniteField::element_order(Element a) const {
    const std::uint64_t n = data_->q - 1;
    return n / std::gcd(log(a), n);
}

FiniteField::Element FiniteField::root_of_unity(unsigned ord, long exponent) const {
    if (ord == 0 || !has_root_of_unity(ord))
        throw Error(ErrorKind::OrderUnavailable,
                    "no root of unity of order " + std::to_string(ord) + " in F_" + std::to_string(order()));
    const auto n = static_cast<std::int64_t>(data_->q - 1);
    const std::int64_t step = n / ord;
    return data_->exp_table[static_cast<std::size_t>(arith::mod_floor(step * arith::mod_floor(exponent, ord), n))];
}

void FiniteField::sub_scaled(std::span<Element> dst, Element c, std::span<const Element> src) const {
    if (c == 0) return;
    if (data_->k == 1) {
        const std::uint64_t p = data_->ell;
        const std::uint64_t nc = p - c;
        for (std::size_t i = 0; i < dst.size(); ++i)
            if (src[i]) dst[i] = static_cast<Element>((dst[i] + nc * src[i]) % p);
        return;
    }
    for (std::size_t i = 0; i < dst.size(); ++i)
        if (src[i]) dst[i] = sub(dst[i], mul(c, src[i]));
}

bool operator==(const FiniteField& a, const FiniteField& b) {
    return a.data_ == b.data_ || (a.data_->ell == b.data_->ell && a.data_->modulus == b.data_->modulus);
}

FiniteField make_finite_field(std::uint32_t ell, unsigned k) { return FiniteField(ell, k); }

// ---------------------------------------------------------------------------
// Residue maps

FiniteField::Element ResidueMap::apply(const CyclotomicElement& x) const {
    FiniteField::Element result = 0;
    FiniteField::Element power = 1;
    const mpz_class ell_z(ell);
    for (const auto& c : x.coeffs) {
        if (sgn(c) != 0) {
            const mpz_class den = c.get_den() % ell_z;
            if (den == 0)
                throw Error(ErrorKind::NotIntegralAtPrime,
                            "coefficient " + c.get_str() + " has denominator divisible by " + std::to_string(ell));
            mpz_class num = c.get_num() % ell_z;
            if (num < 0) num += ell_z;
            const auto value = target.mul(target.from_int(static_cast<long>(num.get_ui())),
                                          target.inv(target.from_int(static_cast<long>(den.get_ui()))));
            result = target.add(result, target.mul(value, power));
        }
        power = target.mul(power, image_of_root);
    }
    return result;
}

ResidueMap make_residue_map(const CyclotomicField& source, std::uint32_t ell, unsigned k) {
    if (!arith::is_prime(ell))
        throw Error(ErrorKind::InvalidCharacteristic, std::to_string(ell) + " is not prime");
    const unsigned n = source.order();
    if (n % ell == 0)
        throw Error(ErrorKind::RamifiedPrime, std::to_string(ell) + " divides the cyclotomic order " + std::to_string(n));
    if (ell == 2) throw Error(ErrorKind::InvalidCharacteristic, "characteristic 2 is not supported");
    const auto f = static_cast<unsigned>(arith::multiplicative_order(ell % n, n));
    if (k == 0) k = f;
    if (k % f != 0)
        throw Error(ErrorKind::ResidueFieldTooSmall, "requested degree " + std::to_string(k) +
                                                         " is not a multiple of the residue degree " +
                                                         std::to_string(f));
    FiniteField target(ell, k);
    const auto image = target.root_of_unity(n, 1);
    if (target.element_order(image) != n)
        throw Error(ErrorKind::OrderUnavailable, "image of zeta_N does not have order N");
    // Phi_N(image) must vanish for zeta_N -> image to be well defined.
    FiniteField::Element value = 0;
    const auto& phi = source.modulus();
    for (std::size_t i = phi.size(); i-- > 0;) {
        mpz_class c = phi[i] % mpz_class(ell);
        if (c < 0) c += ell;
        value = target.add(target.mul(value, image), target.from_int(static_cast<long>(c.get_ui())));
    }
    if (value != 0) throw Error(ErrorKind::OrderUnavailable, "Phi_N does not vanish at the chosen image");
    return ResidueMap{source, target, image, ell};
}

} // namespace mconv
