// numfield.hpp - the tower Q(zeta_p) < K = Q(zeta_p, ell1^(1/p)) and its primes.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kummer/fparith.hpp"

namespace kummer {

struct Tower {
    u64 p = 0;
    u64 ell1 = 0;
    u64 g = 0;  // generator of Delta acts by zeta -> zeta^g
    Tower() = default;
    Tower(u64 p, u64 ell1);
    int degree(bool big) const { return static_cast<int>(big ? p * (p - 1) : p - 1); }
};

// Coefficient of zeta^a mu^b stored at a * p + b, 0 <= a < p-1, 0 <= b < p.
class NFElem {
public:
    NFElem() = default;
    NFElem(u64 p, u64 ell1);
    static NFElem integer(u64 p, u64 ell1, const mpq_class& c);
    static NFElem zeta_power(u64 p, u64 ell1, long k);
    static NFElem zeta(u64 p, u64 ell1) { return zeta_power(p, ell1, 1); }
    static NFElem mu(u64 p, u64 ell1);
    static NFElem from_strings(u64 p, u64 ell1, const std::vector<std::vector<std::string>>& rows);
    std::vector<std::vector<std::string>> to_strings() const;

    u64 p() const { return p_; }
    u64 ell1() const { return ell1_; }
    const mpq_class& coeff(int a, int b) const { return c_[a * p_ + b]; }
    mpq_class& coeff(int a, int b) { return c_[a * p_ + b]; }
    bool is_zero() const;
    bool in_base_field() const;  // no mu terms
    mpz_class denominator() const;
    std::size_t max_bits() const;

    NFElem operator+(const NFElem& o) const;
    NFElem operator-(const NFElem& o) const;
    NFElem operator*(const NFElem& o) const;
    NFElem operator*(const mpq_class& c) const;
    bool operator==(const NFElem& o) const { return c_ == o.c_; }
    NFElem pow(u64 e) const;
    NFElem sigma() const;             // mu -> zeta mu
    NFElem delta(u64 g) const;        // zeta -> zeta^g
    // Norm from K to Q(zeta_p) as a product of sigma-conjugates.
    NFElem relative_norm() const;

private:
    u64 p_ = 0, ell1_ = 0;
    std::vector<mpq_class> c_;
};

enum class PrimeKind { Unramified, AboveP, AboveEll1 };

struct PrimeData {
    PrimeKind kind = PrimeKind::Unramified;
    bool big = false;  // prime of K (else of Q(zeta_p))
    u64 p = 0;
    u64 q = 0;
    int f = 1;
    int e = 1;
    FqExtPtr residue_field;
    FFElem zeta_bar;  // image of zeta in the residue field
    FFElem mu_bar;    // image of mu (zero above ell1; unset for small primes)
    u64 z = 0, m = 0;  // integer images when f == 1
    int local_index = 0;  // above p in the tame case: mu -> r * zeta^local_index
    std::string label() const;
};

std::vector<PrimeData> primes_above(const Tower& t, bool big, u64 q);

// Residue of x; throws if the denominator of x meets q.
FFElem reduce_mod_prime(const NFElem& x, const PrimeData& P);
long valuation_at(const NFElem& x, const PrimeData& P);
// Residue of x / ell0^ord for a degree-one prime over ell0.
u64 unit_residue(const NFElem& x, const PrimeData& P);

struct OrdLog {
    long ord;
    u64 residue;
};
OrdLog ord_and_residue(const NFElem& x, const PrimeData& P);

bool is_pth_power_mod_prime(const NFElem& x, const PrimeData& P);
// j in [0,p) with r^((|k(P)|-1)/p) = zeta_bar^j, r the residue of a P-unit x.
u64 pth_power_character(const NFElem& x, const PrimeData& P);
u64 pth_power_character(const FFElem& r, const PrimeData& P);

// Valuation of an integer-coefficient polynomial in zeta (and mu) at an unramified prime,
// by Hensel-lifting the residue embedding to Z/q^N, doubling N up to the ceiling.
struct LiftedValue {
    long valuation;
    FFElem unit_residue;  // residue of x / q^valuation
};
LiftedValue lifted_valuation(const NFElem& x, const PrimeData& P, int start_precision = 32,
                             int max_precision = 4096);

}  // namespace kummer
