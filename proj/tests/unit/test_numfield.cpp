#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "kummer/numfield.hpp"

using namespace kummer;

namespace {

NFElem random_elem(u64 p, u64 ell1, std::mt19937_64& rng, bool base_only, int range = 5) {
    std::uniform_int_distribution<int> d(-range, range);
    NFElem x(p, ell1);
    for (u64 a = 0; a + 1 < p; ++a)
        for (u64 b = 0; b < (base_only ? 1 : p); ++b) x.coeff(static_cast<int>(a), static_cast<int>(b)) = d(rng);
    return x;
}

}  // namespace

TEST_CASE("tower arithmetic") {
    const u64 p = 5, l1 = 23;
    NFElem z = NFElem::zeta(p, l1), m = NFElem::mu(p, l1);
    CHECK(z.pow(5) == NFElem::integer(p, l1, 1));
    CHECK(m.pow(5) == NFElem::integer(p, l1, 23));
    CHECK(m.sigma() == z * m);
    CHECK(z.delta(2) == z * z);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 5; ++i) {
        NFElem x = random_elem(p, l1, rng, false), y = random_elem(p, l1, rng, false);
        CHECK((x * y).sigma() == x.sigma() * y.sigma());
        CHECK((x * y).delta(2) == x.delta(2) * y.delta(2));
        CHECK(x.relative_norm().in_base_field());
    }
    auto s = z.to_strings();
    CHECK(NFElem::from_strings(p, l1, s) == z);
}

TEST_CASE("primes above") {
    Tower t(5, 23);
    auto P11 = primes_above(t, true, 11);
    CHECK(P11.size() == 20);
    for (auto& P : P11) {
        CHECK(P.e == 1);
        CHECK(P.f == 1);
    }
    auto P5 = primes_above(t, true, 5);
    REQUIRE(P5.size() == 1);
    CHECK(P5[0].e == 20);
    CHECK(primes_above(t, false, 11).size() == 4);
    for (u64 q : {3ull, 7ull, 11ull, 13ull, 19ull, 23ull, 29ull, 31ull, 41ull}) {
        for (bool big : {false, true}) {
            int total = 0;
            for (auto& P : primes_above(t, big, q)) total += P.e * P.f;
            CHECK(total == t.degree(big));
        }
    }
    Tower tt(5, 43);
    auto T5 = primes_above(tt, true, 5);
    CHECK(T5.size() == 5);
}

TEST_CASE("residues at primes over ell0") {
    Tower t(5, 23);
    for (auto& P : primes_above(t, true, 11)) {
        FFElem z = reduce_mod_prime(NFElem::zeta(5, 23), P);
        CHECK_FALSE(z.is_one());
        CHECK(z.pow(5).is_one());
        FFElem m = reduce_mod_prime(NFElem::mu(5, 23), P);
        CHECK(m.pow(5) == FFElem::from_int(P.residue_field, 23));
        CHECK(reduce_mod_prime(NFElem::integer(5, 23, 17), P) == FFElem::from_int(P.residue_field, 6));
        CHECK(valuation_at(NFElem::integer(5, 23, 11), P) == 1);
        CHECK(unit_residue(NFElem::integer(5, 23, 11), P) == 1);
        CHECK(unit_residue(NFElem::integer(5, 23, 7), P) == 7);
        CHECK(valuation_at(NFElem::integer(5, 23, mpq_class(3, 121)), P) == -2);
    }
    CHECK_THROWS_AS(reduce_mod_prime(NFElem::integer(5, 23, mpq_class(1, 11)), primes_above(t, true, 11)[0]),
                    ArithmeticError);
}

TEST_CASE("valuations above ell1") {
    Tower t(5, 23);
    for (auto& P : primes_above(t, true, 23)) {
        CHECK(P.e == 5);
        CHECK(valuation_at(NFElem::integer(5, 23, 23), P) == 5);
        CHECK(valuation_at(NFElem::mu(5, 23), P) == 1);
        CHECK(valuation_at(NFElem::zeta(5, 23), P) == 0);
    }
}

TEST_CASE("valuation is additive and precision-robust") {
    Tower t(5, 23);
    std::mt19937_64 rng(3);
    auto primes = primes_above(t, true, 11);
    for (int i = 0; i < 20; ++i) {
        NFElem x = random_elem(5, 23, rng, false), y = random_elem(5, 23, rng, false);
        if (x.is_zero() || y.is_zero()) continue;
        const auto& P = primes[i % primes.size()];
        auto a = lifted_valuation(x, P), b = lifted_valuation(y, P), c = lifted_valuation(x * y, P);
        CHECK(c.valuation == a.valuation + b.valuation);
        CHECK(c.unit_residue == a.unit_residue * b.unit_residue);
        auto a2 = lifted_valuation(x, P, 64);
        CHECK(a2.valuation == a.valuation);
        CHECK(a2.unit_residue == a.unit_residue);
    }
}

TEST_CASE("p-th power test agrees with enumeration") {
    std::mt19937_64 rng(11);
    int checked = 0;
    for (u64 q : {11ull, 31ull, 41ull, 19ull, 29ull}) {
        Tower t(5, 23);
        for (auto& P : primes_above(t, false, q)) {
            // enumerate p-th powers of the residue field
            std::vector<Poly> powers;
            const auto& F = P.residue_field;
            u64 size = 1;
            for (int i = 0; i < F->degree; ++i) size *= q;
            std::set<Poly> pw;
            for (u64 n = 1; n < size; ++n) {
                Poly c;
                for (u64 m = n; m; m /= q) c.push_back(m % q);
                pw.insert(FFElem(F, c).pow(5).coeffs());
            }
            for (int i = 0; i < 10; ++i) {
                NFElem x = random_elem(5, 23, rng, true, 20);
                FFElem r = reduce_mod_prime(x, P);
                if (r.is_zero()) continue;
                CHECK(is_pth_power_mod_prime(x, P) == (pw.count(r.coeffs()) > 0));
                ++checked;
            }
        }
    }
    CHECK(checked >= 100);
}
