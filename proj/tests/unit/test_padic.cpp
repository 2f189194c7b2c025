#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kummer/padic.hpp"

using namespace kummer;

TEST_CASE("valuations above p") {
    Tower w(5, 23);
    auto P = primes_above(w, true, 5).at(0);
    CHECK(valuation_at(NFElem::integer(5, 23, 5), P) == 20);
    CHECK(valuation_at(NFElem::zeta(5, 23) - NFElem::integer(5, 23, 1), P) == 5);
    CHECK(valuation_at(NFElem::mu(5, 23) - NFElem::integer(5, 23, 23), P) == 4);
    CHECK(valuation_at(NFElem::integer(5, 23, mpq_class(1, 25)), P) == -40);
    auto L = primes_above(w, false, 5).at(0);
    CHECK(L.e == 4);
    CHECK(valuation_at(NFElem::integer(5, 23, 1) - NFElem::zeta(5, 23), L) == 1);
    Tower t(5, 43);
    for (auto& Q : primes_above(t, true, 5)) {
        CHECK(valuation_at(NFElem::integer(5, 43, 5), Q) == 4);
        CHECK(valuation_at(NFElem::mu(5, 43), Q) == 0);
        CHECK(residue_at_p(NFElem::mu(5, 43), Q) == FFElem::from_int(Q.residue_field, 43 % 5));
    }
}

TEST_CASE("tame p-th root") {
    mpz_class r = pth_root_padic(5, 43, 10), mod, pw;
    mpz_ui_pow_ui(mod.get_mpz_t(), 5, 10);
    mpz_powm_ui(pw.get_mpz_t(), r.get_mpz_t(), 5, mod.get_mpz_t());
    CHECK(pw == 43);
    CHECK_THROWS_AS(pth_root_padic(5, 23, 4), ArithmeticError);
}

TEST_CASE("congruence modes") {
    Tower w(5, 23);
    auto P = primes_above(w, true, 5).at(0);
    NFElem one = NFElem::integer(5, 23, 1);
    for (auto mode : {CongruenceMode::TeichmullerModPp, CongruenceMode::PthPowerModPp2, CongruenceMode::OneMod2e})
        CHECK(local_congruence_tests(one, P, mode));
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int i = 0; i < 5; ++i) {
        NFElem y(5, 23);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 5; ++b) y.coeff(a, b) = d(rng);
        y.coeff(0, 0) = 7 * d(rng) + 1;  // residue nonzero
        if (residue_at_p(y, P).is_zero()) continue;
        CHECK(local_congruence_tests(y.pow(5), P, CongruenceMode::PthPowerModPp2));
    }
    // zeta is not a p-th power mod P^(p^2): K(zeta_25)/K ramifies at p
    CHECK_FALSE(local_congruence_tests(NFElem::zeta(5, 23), P, CongruenceMode::PthPowerModPp2));
    Tower t(5, 43);
    auto T = primes_above(t, true, 5).at(0);
    CHECK(local_congruence_tests(NFElem::integer(5, 43, 7), T, CongruenceMode::TeichmullerModPp));
    CHECK_FALSE(local_congruence_tests(NFElem::integer(5, 43, 2), T, CongruenceMode::TeichmullerModPp));
}

TEST_CASE("splitting at lambda matches tame/wild") {
    for (u64 l1 : {23ull, 43ull, 67ull, 307ull, 593ull, 857ull, 197ull, 7ull, 13ull}) {
        Tower t(5, l1);
        auto L = primes_above(t, false, 5).at(0);
        Splitting s = kummer_splitting(t, NFElem::integer(5, l1, l1), L);
        CHECK((s == Splitting::Split) == (tame_or_wild(5, l1) == Ramification::Tame));
        CHECK(s != Splitting::Inert);
    }
    Tower t(5, 23);
    auto L = primes_above(t, false, 5).at(0);
    CHECK(kummer_splitting(t, NFElem::zeta(5, 23), L) == Splitting::Ramified);
    CHECK(kummer_splitting(t, NFElem::integer(5, 23, 5), L) == Splitting::Ramified);
    // p = -lambda^(p-1) mod lambda^p, and (1 + t lambda)^p = 1 mod lambda^(p+1) for t in F_p
    NFElem lam = NFElem::integer(5, 23, 1) - NFElem::zeta(5, 23);
    NFElem one = NFElem::integer(5, 23, 1);
    CHECK(kummer_splitting(t, one + lam * mpq_class(5), L) == Splitting::Inert);
    CHECK(kummer_splitting(t, one + lam.pow(5), L) == Splitting::Inert);
    CHECK(kummer_splitting(t, one + lam.pow(2) * mpq_class(5), L) == Splitting::Split);
    CHECK(kummer_splitting(t, one + lam.pow(3), L) == Splitting::Ramified);
    CHECK(kummer_splitting(t, one + lam.pow(4) * mpq_class(3), L) == Splitting::Ramified);
}

TEST_CASE("splitting agrees with residue-field factorization away from p") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> d(-9, 9);
    int checked = 0;
    Tower t(5, 23);
    for (u64 q : {11ull, 31ull, 41ull, 61ull, 19ull}) {
        for (auto& P : primes_above(t, false, q)) {
            for (int i = 0; i < 6; ++i) {
                NFElem x(5, 23);
                for (int a = 0; a < 4; ++a) x.coeff(a, 0) = d(rng);
                FFElem r = reduce_mod_prime(x, P);
                if (r.is_zero()) continue;
                // oracle: does X^5 - r have a root in k(P)?
                std::vector<FFElem> f(6, FFElem::from_int(P.residue_field, 0));
                f[0] = -r;
                f[5] = FFElem::from_int(P.residue_field, 1);
                bool has_root = !roots_in_extension(P.residue_field, f, rng).empty();
                Splitting s = kummer_splitting(t, x, P);
                CHECK(s != Splitting::Ramified);
                CHECK((s == Splitting::Split) == has_root);
                ++checked;
            }
        }
    }
    CHECK(checked >= 100);
}
