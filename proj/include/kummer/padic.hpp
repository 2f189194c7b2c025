// padic.hpp - completions of Q(zeta_p) and K at primes above p.
#pragma once

#include <vector>

#include "kummer/numfield.hpp"

namespace kummer {

// O / Pi^N for O = Z_p[Pi] with Pi a root of a monic Eisenstein polynomial of degree e.
// Elements are coefficient vectors in 1, Pi, ..., Pi^(e-1), kept modulo p^M with e*M >= N.
class LocalRing {
public:
    using Elem = std::vector<mpz_class>;
    LocalRing(u64 p, const std::vector<mpq_class>& eisenstein, int N);

    u64 p() const { return p_; }
    int e() const { return e_; }
    int precision() const { return N_; }
    int coefficient_precision() const { return M_; }
    const mpz_class& modulus() const { return pM_; }

    Elem zero() const { return Elem(e_, 0); }
    Elem one() const;
    Elem from_int(const mpz_class& c) const;
    Elem from_rational(const mpq_class& c) const;
    Elem from_coords(const std::vector<mpq_class>& c) const;
    Elem pi_power(int j) const;
    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem scale(const Elem& a, const mpz_class& c) const;
    Elem pow(const Elem& a, const mpz_class& k) const;
    Elem inv(const Elem& u) const;
    // min(e * v_p(c_i) + i), capped at N.
    int valuation(const Elem& a) const;
    u64 residue(const Elem& a) const;

private:
    u64 p_;
    int e_, N_, M_;
    mpz_class pM_;
    std::vector<mpz_class> E_;  // low coefficients of the Eisenstein polynomial mod p^M
};

// Completion data at one prime above p: Eisenstein polynomial of a uniformizer Pi and
// the Pi-coordinates of zeta (and of mu for K).
struct LocalField {
    u64 p = 0, ell1 = 0;
    bool big = false;
    bool tame = false;   // K tame: mu -> r * zeta^local_index with r^p = ell1 in Z_p
    int local_index = 0;
    int e = 0;
    std::vector<mpq_class> eisenstein;  // monic, length e + 1
    std::vector<mpq_class> zeta;        // length e
    std::vector<mpq_class> mu;          // wild K only
};

LocalField local_field_at(const Tower& t, const PrimeData& P);

// p-adic p-th root of ell1 to precision p^M (tame case).
mpz_class pth_root_padic(u64 p, u64 ell1, int M);

// Image of x in O/Pi^N; throws if x is not integral at the prime.
LocalRing::Elem embed(const LocalField& L, const LocalRing& R, const NFElem& x);

FFElem residue_at_p(const NFElem& x, const PrimeData& P);
long valuation_at_p(const NFElem& x, const PrimeData& P);

// Teichmuller lift of a residue in F_p to Z/p^M.
mpz_class teichmuller(u64 c, u64 p, int M);

// Largest level k <= cap (default N) such that the unit x is a p-th power modulo Pi^k,
// by the filtration ladder y <- y (1 + t Pi^j).
int pth_power_level(const LocalRing& R, const LocalRing::Elem& x, int cap = -1);
bool is_pth_power_mod(const LocalRing& R, const LocalRing::Elem& x, int N);

enum class CongruenceMode { TeichmullerModPp, PthPowerModPp2, OneMod2e };
bool local_congruence_test(const LocalRing& R, const LocalRing::Elem& x, CongruenceMode mode);
bool local_congruence_tests(const NFElem& x, const PrimeData& P, CongruenceMode mode);

enum class Splitting { Split, Inert, Ramified };
const char* to_string(Splitting s);
// Behaviour of P in base(alpha^(1/p)) for a p-power-free alpha.
Splitting kummer_splitting(const Tower& t, const NFElem& alpha, const PrimeData& P);
// Same at P | p for a unit given by its local image (a = e/(p-1)).
Splitting kummer_splitting_local(const LocalRing& R, const LocalRing::Elem& unit);

}  // namespace kummer
