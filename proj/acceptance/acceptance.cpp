// Prints one PASS/FAIL line per acceptance criterion; exit status 0 iff all
// reproducible criteria pass.
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "../tests/support.hpp"
#include "mconv/pipeline.hpp"

using namespace testing;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

Outcome ranks() {
    const std::vector<std::tuple<unsigned, std::size_t, std::vector<std::size_t>>> cases{
        {4, 9, {27, 25, 26, 24}}, {4, 10, {31, 29, 30, 28}}, {6, 10, {31, 29, 30, 28}}};
    std::ostringstream s;
    bool ok = true;
    for (const auto& [m, r, want] : cases) {
        s << "(" << m << "," << r << "):";
        for (int family = 1; family <= 4; ++family) {
            const auto n = build_family(family, m, r).n;
            ok = ok && n == want[family - 1];
            s << " " << n;
        }
        s << "; ";
    }
    return {ok, s.str()};
}

Outcome jordan_tables() {
    std::size_t matched = 0, total = 0;
    for (int family = 1; family <= 4; ++family) {
        const auto g = build_family(family, 4, 9);
        const auto oracle = instantiate_oracle(family, 4, 9);
        for (std::size_t i = 0; i < g.entries.size(); ++i, ++total)
            if (jordan_data(g.entries[i], {4}) == oracle[i]) ++matched;
    }
    return {matched == total, std::to_string(matched) + "/" + std::to_string(total) + " entries match"};
}

bool involution_holds(const MonodromyTuple<CF>& t) {
    const auto minus_one = t.field.from_int(-1);
    const auto back = mc(mc(t, minus_one), minus_one);
    if (back.n != t.n) return false;
    const auto w = simultaneous_conjugacy(back.entries, t.entries);
    if (!w || !is_invertible(*w)) return false;
    for (std::size_t k = 0; k < t.entries.size(); ++k)
        if (!(*w * back.entries[k] == t.entries[k] * *w)) return false;
    return true;
}

Outcome involution() {
    std::mt19937_64 rng(3);
    int good = 0, total = 0;
    for (const auto& t : {construct_T(4, 9), construct_T(6, 10)}) {
        ++total;
        good += involution_holds(t);
    }
    for (int i = 0; i < 25; ++i, ++total) {
        const std::size_t n = 2 + rng() % 2, r = 3 + rng() % 3;
        good += involution_holds(random_irreducible_tuple(rng, n, r));
    }
    return {good == total, std::to_string(good) + "/" + std::to_string(total) + " conjugate with verified witness"};
}

Outcome rank_formula() {
    std::mt19937_64 rng(4);
    int good = 0;
    for (int i = 0; i < 50; ++i) {
        const std::size_t n = 2 + rng() % 2, r = 3 + rng() % 3;
        const auto t = random_irreducible_tuple(rng, n, r);
        const auto minus_one = t.field.from_int(-1);
        const auto brute = build_ambient_bruteforce(t, minus_one);
        const auto brute_rank = static_cast<long>(r * n) - static_cast<long>(subspace_sum(brute.K, brute.L).dim());
        const auto out = mc(t, minus_one);
        good += static_cast<long>(out.n) == expected_rank(t, minus_one) && static_cast<long>(out.n) == brute_rank;
    }
    return {good == 50, std::to_string(good) + "/50 agree"};
}

Outcome base_change() {
    const auto t = construct_T(4, 9);
    const auto res = base_change_check(t, make_residue_map(t.field, 5));
    const bool ok = res.passed() && res.rank_mc_then_reduce == 14;
    return {ok, "ranks " + std::to_string(res.rank_mc_then_reduce) + "/" + std::to_string(res.rank_reduce_then_mc) + ", " +
                    res.detail};
}

Outcome certificate() {
    std::ostringstream s;
    bool ok = true;
    for (int family : {1, 3, 4}) {
        const auto g = build_family(family, 4, 9);
        const auto r = reduce_tuple(g, make_residue_map(g.field, 5));
        const auto mode = family == 1 ? CertificateMode::SL : CertificateMode::SLPlusMinus;
        const auto c = sl_certificate(r, mode, 5);
        const auto j = to_json(c);
        bool fam = c.verdict();
        if (family == 1) {
            const auto& ch = j["checks"];
            fam = fam && ch["absolutely_irreducible"]["evidence"]["burnside_dimension"] == 729 &&
                  ch["no_invariant_bilinear_form"]["evidence"]["dimension"] == 0 &&
                  ch["has_bireflection"]["evidence"]["eigenvalue_order"] == 4 &&
                  ch["bireflection_subfield_minimal"]["evidence"]["smallest_q"] == 5 &&
                  ch["determinant_spectrum"]["evidence"]["determinants"] == nlohmann::json::array({"1"});
        } else {
            fam = fam && j["checks"]["determinant_spectrum"]["evidence"]["determinants"].size() == 2;
        }
        ok = ok && fam;
        s << "family " << family << " " << to_string(mode) << " " << (fam ? "pass" : "fail") << "; ";
    }
    return {ok, s.str()};
}

Outcome tiny_oracles() {
    const FF f5(5, 1);
    const std::vector<Matrix<FF>> sl2{Matrix<FF>::from_ints(f5, {{1, 1}, {0, 1}}), Matrix<FF>::from_ints(f5, {{1, 0}, {1, 1}})};
    const auto order = enumerate_group(sl2, 10000);
    std::mt19937_64 rng(7);
    int agree = 0;
    const FF f3(3, 1);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 1 + rng() % 3, count = 1 + rng() % 2;
        std::vector<Matrix<FF>> gens;
        for (std::size_t k = 0; k < count; ++k)
            gens.push_back(random_matrix(f3, n, n, [&] { return static_cast<FF::Element>(rng() % 3); }));
        bool reducible = false;
        for (auto e : arith::divisors(n)) {
            const FF ext(3, static_cast<unsigned>(e));
            std::vector<Matrix<FF>> lifted;
            for (const auto& g : gens) lifted.push_back(map_entries(g, ext, [&](FF::Element x) { return ext.from_int(x); }));
            if (n > 1 && reducible_over(lifted)) reducible = true;
        }
        agree += (burnside_dimension(gens) == n * n) == !reducible;
    }
    const bool ok = order == 120 && agree == 100;
    return {ok, "|<gens>| = " + (order ? std::to_string(*order) : std::string("?")) + ", burnside agrees " +
                    std::to_string(agree) + "/100"};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"rank reproduction", ranks},
        {"Jordan tables at (4,9)", jordan_tables},
        {"MC involution", involution},
        {"rank formula vs brute force", rank_formula},
        {"base change at q=5", base_change},
        {"residual certificate", certificate},
        {"tiny-scale group oracles", tiny_oracles},
    };
    bool all = true;
    int index = 1;
    for (const auto& [name, fn] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
        all = all && o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << index++ << " " << name << ": " << o.detail << " ("
                  << static_cast<int>(dt.count() * 1000) << " ms)\n";
    }
    std::cout << "NOT-REPRODUCIBLE 8 group equality SL_n(O_q) / SL_n(F_q) at n ~ 27: order ~10^470 rules out "
                 "enumeration; the residual certificate of criterion 6 checks the hypotheses it rests on\n";
    return all ? 0 : 1;
}
