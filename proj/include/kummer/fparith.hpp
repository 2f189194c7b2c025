// fparith.hpp - prime fields, their extensions, discrete logs, assumption checks.
#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

namespace kummer {

using u64 = std::uint64_t;

struct ArithmeticError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

u64 mulmod(u64 a, u64 b, u64 m);
u64 addmod(u64 a, u64 b, u64 m);
u64 submod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);
u64 invmod(u64 a, u64 m);
u64 mod_of(const mpz_class& a, u64 m);
u64 mod_of(const mpq_class& a, u64 m);

bool is_prime(u64 n);
std::vector<u64> prime_factors(u64 n);
bool is_primitive_root(u64 g, u64 q);
u64 smallest_primitive_root(u64 q);
// Multiplicative order of a modulo m, gcd(a, m) = 1.
u64 multiplicative_order(u64 a, u64 m);

// Baby-step giant-step; returns the exponent in [0, q-1).
u64 discrete_log(u64 q, u64 g, u64 x);

class LogTable {
public:
    LogTable(u64 q, u64 g);
    u64 q() const { return q_; }
    u64 generator() const { return g_; }
    u64 log(u64 x) const;
    u64 exp(u64 k) const;

private:
    u64 q_, g_;
    std::vector<std::uint32_t> log_, exp_;
};

bool is_pth_power_mod_q(const mpz_class& a, u64 p, u64 q);

enum class Ramification { Tame, Wild };
const char* to_string(Ramification r);
Ramification tame_or_wild(u64 p, u64 ell1);

struct TripleParams {
    u64 p = 0, ell0 = 0, ell1 = 0;
    std::string label() const;
};

struct AssumptionReport {
    bool primes = false;
    bool distinct = false;
    bool clause1 = false;  // ell0 = 1 mod p
    bool clause2 = false;  // ell1 != 0, +-1 mod p
    bool clause3 = false;  // ell1 is a p-th power mod ell0
    bool clause4 = false;  // zeta'_MT != 0
    u64 zeta_mt = 0;
    u64 log_generator = 0;
    std::vector<std::string> failures;
    bool ok() const { return primes && distinct && clause1 && clause2 && clause3 && clause4; }
};

AssumptionReport check_assumptions(const TripleParams& t);

u64 bernoulli2_mod_p(u64 x, u64 p);
u64 mazur_tate_derivative(u64 p, u64 ell0, u64 g);

struct MTData {
    u64 p, ell0;
    u64 zeta_mt;
    std::shared_ptr<const LogTable> logs;
    u64 log_mod_p(u64 x) const { return logs->log(x) % p; }
};
MTData mt_data(u64 p, u64 ell0);

// Dense polynomials over F_q, coefficients low to high, no trailing zeros.
using Poly = std::vector<u64>;

namespace poly {
void trim(Poly& a);
int deg(const Poly& a);
Poly add(const Poly& a, const Poly& b, u64 q);
Poly sub(const Poly& a, const Poly& b, u64 q);
Poly mul(const Poly& a, const Poly& b, u64 q);
Poly scale(const Poly& a, u64 c, u64 q);
void divrem(const Poly& a, const Poly& b, u64 q, Poly& quo, Poly& rem);
Poly mod(const Poly& a, const Poly& b, u64 q);
Poly gcd(Poly a, Poly b, u64 q);
Poly monic(const Poly& a, u64 q);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m, u64 q);
Poly powmod(const Poly& a, const mpz_class& e, const Poly& m, u64 q);
Poly x_power_mod(const mpz_class& e, const Poly& m, u64 q);
u64 eval(const Poly& a, u64 x, u64 q);
bool is_irreducible(const Poly& f, u64 q);
Poly random_irreducible(int degree, u64 q, std::mt19937_64& rng);
// Monic irreducible factors of a squarefree polynomial, sorted.
std::vector<Poly> factor_squarefree(const Poly& f, u64 q, std::mt19937_64& rng);
std::vector<u64> roots(const Poly& f, u64 q);
Poly cyclotomic(u64 p, u64 q);
}  // namespace poly

// F_{q^f} = F_q[y]/(modulus).
struct FqExt {
    u64 q;
    Poly modulus;
    int degree;
    mpz_class order;  // q^f
    FqExt(u64 q, Poly modulus);
};
using FqExtPtr = std::shared_ptr<const FqExt>;
FqExtPtr make_prime_field(u64 q);

class FFElem {
public:
    FFElem() = default;
    FFElem(FqExtPtr field, Poly coeffs);
    static FFElem from_int(FqExtPtr field, u64 c);
    static FFElem gen(FqExtPtr field);

    const FqExtPtr& field() const { return field_; }
    const Poly& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

    FFElem operator+(const FFElem& o) const;
    FFElem operator-(const FFElem& o) const;
    FFElem operator-() const;
    FFElem operator*(const FFElem& o) const;
    FFElem operator*(u64 c) const;
    bool operator==(const FFElem& o) const { return c_ == o.c_; }
    bool operator!=(const FFElem& o) const { return c_ != o.c_; }
    FFElem pow(const mpz_class& e) const;
    FFElem inv() const;
    FFElem frobenius() const;
    bool is_pth_power(u64 p) const;
    std::string str() const;

private:
    FqExtPtr field_;
    Poly c_;
};

// Roots in F_{q^f} of a polynomial with F_q coefficients (odd q).
std::vector<FFElem> roots_in_extension(const FqExtPtr& field, const std::vector<FFElem>& f,
                                       std::mt19937_64& rng);

}  // namespace kummer
