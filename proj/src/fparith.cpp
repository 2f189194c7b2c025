// fparith.cpp - prime fields, their extensions, discrete logs, assumption checks.
#include "kummer/fparith.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace kummer {

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 addmod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    if (s >= m || s < a) s -= m;
    return s;
}

u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 m) {
    mpz_class x, aa(static_cast<unsigned long>(a % m)), mm(static_cast<unsigned long>(m));
    if (mpz_invert(x.get_mpz_t(), aa.get_mpz_t(), mm.get_mpz_t()) == 0)
        throw ArithmeticError("invmod: not invertible");
    return x.get_ui();
}

u64 mod_of(const mpz_class& a, u64 m) {
    static_assert(sizeof(unsigned long) == sizeof(u64));
    return mpz_fdiv_ui(a.get_mpz_t(), m);
}

u64 mod_of(const mpq_class& a, u64 m) {
    u64 d = mod_of(a.get_den(), m);
    if (d == 0) throw ArithmeticError("denominator divisible by modulus");
    return mulmod(mod_of(a.get_num(), m), invmod(d, m), m);
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 s : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % s == 0) return n == s;
    }
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

bool is_primitive_root(u64 g, u64 q) {
    if (g % q == 0) return false;
    if (q == 2) return g % 2 == 1;
    for (u64 r : prime_factors(q - 1))
        if (powmod(g, (q - 1) / r, q) == 1) return false;
    return true;
}

u64 smallest_primitive_root(u64 q) {
    if (!is_prime(q)) throw ArithmeticError("smallest_primitive_root: modulus not prime");
    for (u64 g = 1; g < q; ++g)
        if (is_primitive_root(g, q)) return g;
    throw ArithmeticError("no primitive root");
}

u64 multiplicative_order(u64 a, u64 m) {
    a %= m;
    if (std::gcd(a, m) != 1) throw ArithmeticError("multiplicative_order: not a unit");
    u64 phi = m;
    for (u64 r : prime_factors(m)) phi = phi / r * (r - 1);
    u64 ord = phi;
    for (u64 r : prime_factors(phi)) {
        while (ord % r == 0 && powmod(a, ord / r, m) == 1) ord /= r;
    }
    return ord;
}

u64 discrete_log(u64 q, u64 g, u64 x) {
    x %= q;
    if (x == 0) throw ArithmeticError("discrete_log: zero argument");
    if (!is_primitive_root(g, q)) throw ArithmeticError("discrete_log: g does not generate");
    u64 n = q - 1;
    u64 m = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(n)))) + 1;
    std::unordered_map<u64, u64> baby;
    baby.reserve(m * 2);
    u64 cur = 1;
    for (u64 j = 0; j < m; ++j) {
        baby.emplace(cur, j);
        cur = mulmod(cur, g, q);
    }
    u64 factor = invmod(powmod(g, m, q), q);
    u64 gamma = x;
    for (u64 i = 0; i <= m; ++i) {
        auto it = baby.find(gamma);
        if (it != baby.end()) return (i * m + it->second) % n;
        gamma = mulmod(gamma, factor, q);
    }
    throw ArithmeticError("discrete_log: no solution");
}

LogTable::LogTable(u64 q, u64 g) : q_(q), g_(g) {
    if (!is_primitive_root(g, q)) throw ArithmeticError("LogTable: g does not generate");
    log_.assign(q, 0);
    exp_.assign(q - 1, 0);
    u64 cur = 1;
    for (u64 k = 0; k + 1 < q; ++k) {
        exp_[k] = static_cast<std::uint32_t>(cur);
        log_[cur] = static_cast<std::uint32_t>(k);
        cur = mulmod(cur, g, q);
    }
}

u64 LogTable::log(u64 x) const {
    x %= q_;
    if (x == 0) throw ArithmeticError("LogTable::log: zero argument");
    return log_[x];
}

u64 LogTable::exp(u64 k) const { return exp_[k % (q_ - 1)]; }

bool is_pth_power_mod_q(const mpz_class& a, u64 p, u64 q) {
    if (!is_prime(p) || !is_prime(q)) throw ArithmeticError("is_pth_power_mod_q: non-prime input");
    if ((q - 1) % p != 0) throw ArithmeticError("is_pth_power_mod_q: q is not 1 mod p");
    u64 r = mod_of(a, q);
    if (r == 0) throw ArithmeticError("is_pth_power_mod_q: q divides a");
    return powmod(r, (q - 1) / p, q) == 1;
}

const char* to_string(Ramification r) { return r == Ramification::Tame ? "tame" : "wild"; }

Ramification tame_or_wild(u64 p, u64 ell1) {
    if (ell1 % p == 0) throw ArithmeticError("tame_or_wild: p divides ell1");
    return powmod(ell1, p - 1, p * p) == 1 ? Ramification::Tame : Ramification::Wild;
}

std::string TripleParams::label() const {
    return "(" + std::to_string(p) + "," + std::to_string(ell0) + "," + std::to_string(ell1) + ")";
}

u64 bernoulli2_mod_p(u64 x, u64 p) {
    if (p < 5) throw ArithmeticError("bernoulli2_mod_p: need p >= 5");
    x %= p;
    return addmod(submod(mulmod(x, x, p), x, p), invmod(6, p), p);
}

u64 mazur_tate_derivative(u64 p, u64 ell0, u64 g) {
    if ((ell0 - 1) % p != 0) throw ArithmeticError("mazur_tate_derivative: ell0 != 1 mod p");
    if (!is_primitive_root(g, ell0)) throw ArithmeticError("mazur_tate_derivative: non-generator");
    LogTable logs(ell0, g);
    u64 s = 0;
    for (u64 i = 1; i < ell0; ++i)
        s = addmod(s, mulmod(bernoulli2_mod_p(i, p), logs.log(i) % p, p), p);
    return mulmod(s, invmod(2, p), p);
}

MTData mt_data(u64 p, u64 ell0) {
    u64 g = smallest_primitive_root(ell0);
    auto logs = std::make_shared<const LogTable>(ell0, g);
    return MTData{p, ell0, mazur_tate_derivative(p, ell0, g), logs};
}

AssumptionReport check_assumptions(const TripleParams& t) {
    AssumptionReport r;
    auto fail = [&](const std::string& s) { r.failures.push_back(s); };
    r.primes = is_prime(t.p) && is_prime(t.ell0) && is_prime(t.ell1) && t.p >= 5;
    if (!r.primes) {
        if (!is_prime(t.p) || t.p < 5) fail("p must be a prime >= 5");
        if (!is_prime(t.ell0)) fail("ell0 is not prime");
        if (!is_prime(t.ell1)) fail("ell1 is not prime");
        return r;
    }
    r.distinct = t.p != t.ell0 && t.p != t.ell1 && t.ell0 != t.ell1;
    if (!r.distinct) fail("p, ell0, ell1 must be distinct");
    r.clause1 = t.ell0 % t.p == 1;
    if (!r.clause1) fail("clause (1): ell0 != 1 mod p");
    u64 m = t.ell1 % t.p;
    r.clause2 = m != 0 && m != 1 && m != t.p - 1;
    if (!r.clause2) fail("clause (2): ell1 = 0 or +-1 mod p");
    if (r.clause1 && r.distinct) {
        r.clause3 = powmod(t.ell1, (t.ell0 - 1) / t.p, t.ell0) == 1;
        if (!r.clause3) fail("clause (3): ell1 is not a p-th power mod ell0");
        r.log_generator = smallest_primitive_root(t.ell0);
        r.zeta_mt = mazur_tate_derivative(t.p, t.ell0, r.log_generator);
        r.clause4 = r.zeta_mt != 0;
        if (!r.clause4) fail("clause (4): zeta'_MT vanishes");
    }
    return r;
}

namespace poly {

using kummer::mulmod;
using kummer::powmod;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly add(const Poly& a, const Poly& b, u64 q) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = addmod(r[i], b[i], q);
    trim(r);
    return r;
}

Poly sub(const Poly& a, const Poly& b, u64 q) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = submod(r[i], b[i], q);
    trim(r);
    return r;
}

Poly mul(const Poly& a, const Poly& b, u64 q) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = addmod(r[i + j], mulmod(a[i], b[j], q), q);
    }
    trim(r);
    return r;
}

Poly scale(const Poly& a, u64 c, u64 q) {
    Poly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = mulmod(a[i], c % q, q);
    trim(r);
    return r;
}

void divrem(const Poly& a, const Poly& b, u64 q, Poly& quo, Poly& rem) {
    if (b.empty()) throw ArithmeticError("poly division by zero");
    rem = a;
    trim(rem);
    int db = deg(b);
    u64 lead_inv = invmod(b.back(), q);
    if (deg(rem) < db) {
        quo.clear();
        return;
    }
    quo.assign(rem.size() - b.size() + 1, 0);
    for (int i = deg(rem); i >= db; --i) {
        u64 c = mulmod(rem[i], lead_inv, q);
        quo[i - db] = c;
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j) rem[i - db + j] = submod(rem[i - db + j], mulmod(c, b[j], q), q);
    }
    trim(rem);
    trim(quo);
}

Poly mod(const Poly& a, const Poly& b, u64 q) {
    Poly quo, rem;
    divrem(a, b, q, quo, rem);
    return rem;
}

Poly monic(const Poly& a, u64 q) {
    if (a.empty()) return a;
    return scale(a, invmod(a.back(), q), q);
}

Poly gcd(Poly a, Poly b, u64 q) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = mod(a, b, q);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, q);
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m, u64 q) { return mod(mul(a, b, q), m, q); }

Poly powmod(const Poly& a, const mpz_class& e, const Poly& m, u64 q) {
    if (e < 0) throw ArithmeticError("poly::powmod: negative exponent");
    Poly r = mod(Poly{1}, m, q);
    Poly b = mod(a, m, q);
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r = mulmod(r, r, m, q);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mulmod(r, b, m, q);
    }
    return r;
}

Poly x_power_mod(const mpz_class& e, const Poly& m, u64 q) { return powmod(Poly{0, 1}, e, m, q); }

u64 eval(const Poly& a, u64 x, u64 q) {
    u64 r = 0;
    for (size_t i = a.size(); i-- > 0;) r = addmod(mulmod(r, x, q), a[i], q);
    return r;
}

static mpz_class zpow(u64 q, u64 k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), q, k);
    return r;
}

bool is_irreducible(const Poly& f0, u64 q) {
    Poly f = monic(f0, q);
    int n = deg(f);
    if (n <= 0) return false;
    if (n == 1) return true;
    // Rabin: x^{q^n} = x mod f and gcd(x^{q^{n/r}} - x, f) = 1 for prime r | n.
    Poly xqn = x_power_mod(zpow(q, n), f, q);
    if (xqn != mod(Poly{0, 1}, f, q)) return false;
    for (u64 r : prime_factors(static_cast<u64>(n))) {
        Poly h = sub(x_power_mod(zpow(q, n / r), f, q), Poly{0, 1}, q);
        if (deg(gcd(f, h, q)) != 0) return false;
    }
    return true;
}

Poly random_irreducible(int degree, u64 q, std::mt19937_64& rng) {
    std::uniform_int_distribution<u64> dist(0, q - 1);
    for (;;) {
        Poly f(degree + 1);
        for (int i = 0; i < degree; ++i) f[i] = dist(rng);
        f[degree] = 1;
        if (is_irreducible(f, q)) return f;
    }
}

// Splits a product of distinct monic irreducibles of common degree d.
static void equal_degree_split(const Poly& f, int d, u64 q, std::mt19937_64& rng, std::vector<Poly>& out) {
    if (deg(f) == d) {
        out.push_back(monic(f, q));
        return;
    }
    if (q == 2) throw ArithmeticError("characteristic 2 is not supported");
    std::uniform_int_distribution<u64> dist(0, q - 1);
    mpz_class e = (zpow(q, d) - 1) / 2;
    for (;;) {
        Poly a(deg(f));
        for (auto& c : a) c = dist(rng);
        trim(a);
        if (a.empty()) continue;
        Poly g = gcd(f, sub(powmod(a, e, f, q), Poly{1}, q), q);
        if (deg(g) > 0 && deg(g) < deg(f)) {
            Poly quo, rem;
            divrem(f, g, q, quo, rem);
            equal_degree_split(g, d, q, rng, out);
            equal_degree_split(quo, d, q, rng, out);
            return;
        }
    }
}

std::vector<Poly> factor_squarefree(const Poly& f0, u64 q, std::mt19937_64& rng) {
    Poly f = monic(f0, q);
    std::vector<Poly> out;
    Poly xq = Poly{0, 1};
    int d = 0;
    while (deg(f) > 0) {
        ++d;
        if (2 * d > deg(f)) {
            out.push_back(f);
            break;
        }
        xq = powmod(xq, mpz_class(std::to_string(q)), f, q);
        Poly g = gcd(f, sub(xq, Poly{0, 1}, q), q);
        if (deg(g) > 0) {
            equal_degree_split(g, d, q, rng, out);
            Poly quo, rem;
            divrem(f, g, q, quo, rem);
            f = quo;
            xq = mod(xq, f, q);
        }
    }
    std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    });
    return out;
}

std::vector<u64> roots(const Poly& f0, u64 q) {
    Poly f = monic(f0, q);
    if (deg(f) <= 0) return {};
    Poly g = gcd(f, sub(x_power_mod(mpz_class(std::to_string(q)), f, q), Poly{0, 1}, q), q);
    std::vector<u64> out;
    if (deg(g) <= 0) return out;
    std::mt19937_64 rng(q);
    std::vector<Poly> lin;
    equal_degree_split(g, 1, q, rng, lin);
    for (auto& l : lin) out.push_back(submod(0, l[0], q));
    std::sort(out.begin(), out.end());
    return out;
}

Poly cyclotomic(u64 p, u64 q) { return Poly(p, 1 % q); }

}  // namespace poly

FqExt::FqExt(u64 q_, Poly m) : q(q_), modulus(poly::monic(m, q_)), degree(poly::deg(modulus)) {
    if (degree < 1) throw ArithmeticError("FqExt: modulus must have positive degree");
    mpz_ui_pow_ui(order.get_mpz_t(), q, degree);
}

FqExtPtr make_prime_field(u64 q) { return std::make_shared<const FqExt>(q, Poly{0, 1}); }

FFElem::FFElem(FqExtPtr field, Poly coeffs) : field_(std::move(field)) {
    for (auto& c : coeffs) c %= field_->q;
    c_ = poly::mod(coeffs, field_->modulus, field_->q);
}

FFElem FFElem::from_int(FqExtPtr field, u64 c) {
    u64 q = field->q;
    return FFElem(std::move(field), Poly{c % q});
}

FFElem FFElem::gen(FqExtPtr field) { return FFElem(std::move(field), Poly{0, 1}); }

FFElem FFElem::operator+(const FFElem& o) const {
    FFElem r;
    r.field_ = field_;
    r.c_ = poly::add(c_, o.c_, field_->q);
    return r;
}

FFElem FFElem::operator-(const FFElem& o) const {
    FFElem r;
    r.field_ = field_;
    r.c_ = poly::sub(c_, o.c_, field_->q);
    return r;
}

FFElem FFElem::operator-() const {
    FFElem r;
    r.field_ = field_;
    r.c_ = poly::sub(Poly{}, c_, field_->q);
    return r;
}

FFElem FFElem::operator*(const FFElem& o) const {
    FFElem r;
    r.field_ = field_;
    r.c_ = poly::mulmod(c_, o.c_, field_->modulus, field_->q);
    return r;
}

FFElem FFElem::operator*(u64 c) const {
    FFElem r;
    r.field_ = field_;
    r.c_ = poly::scale(c_, c, field_->q);
    return r;
}

FFElem FFElem::pow(const mpz_class& e) const {
    mpz_class n = field_->order - 1;
    mpz_class ee = e % n;
    if (ee < 0) ee += n;
    if (is_zero()) {
        if (e == 0) return from_int(field_, 1);
        if (e < 0) throw ArithmeticError("FFElem::pow: zero to negative power");
        return *this;
    }
    FFElem r;
    r.field_ = field_;
    r.c_ = poly::powmod(c_, ee, field_->modulus, field_->q);
    return r;
}

FFElem FFElem::inv() const {
    if (is_zero()) throw ArithmeticError("FFElem::inv: zero");
    return pow(field_->order - 2);
}

FFElem FFElem::frobenius() const { return pow(mpz_class(std::to_string(field_->q))); }

bool FFElem::is_pth_power(u64 p) const {
    if (is_zero()) throw ArithmeticError("is_pth_power: zero element");
    mpz_class n = field_->order - 1;
    if (n % p != 0) return true;
    return pow(n / p).is_one();
}

std::string FFElem::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
    os << "]";
    return os.str();
}

namespace {

using EPoly = std::vector<FFElem>;

void etrim(EPoly& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

EPoly emod(EPoly a, const EPoly& b) {
    etrim(a);
    FFElem inv = b.back().inv();
    int db = static_cast<int>(b.size()) - 1;
    for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
        if (a[i].is_zero()) continue;
        FFElem c = a[i] * inv;
        for (int j = 0; j <= db; ++j) a[i - db + j] = a[i - db + j] - c * b[j];
    }
    etrim(a);
    return a;
}

EPoly emul(const EPoly& a, const EPoly& b, const FqExtPtr& F) {
    if (a.empty() || b.empty()) return {};
    EPoly r(a.size() + b.size() - 1, FFElem::from_int(F, 0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    etrim(r);
    return r;
}

EPoly emonic(EPoly a) {
    etrim(a);
    FFElem inv = a.back().inv();
    for (auto& c : a) c = c * inv;
    return a;
}

EPoly egcd(EPoly a, EPoly b) {
    etrim(a);
    etrim(b);
    while (!b.empty()) {
        EPoly r = emod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return emonic(a);
}

EPoly epowmod(const EPoly& a, const mpz_class& e, const EPoly& m, const FqExtPtr& F) {
    EPoly r = emod(EPoly{FFElem::from_int(F, 1)}, m);
    EPoly b = emod(a, m);
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r = emod(emul(r, r, F), m);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = emod(emul(r, b, F), m);
    }
    return r;
}

EPoly esub(EPoly a, const EPoly& b, const FqExtPtr& F) {
    if (a.size() < b.size()) a.resize(b.size(), FFElem::from_int(F, 0));
    for (size_t i = 0; i < b.size(); ++i) a[i] = a[i] - b[i];
    etrim(a);
    return a;
}

void esplit(const EPoly& f, const FqExtPtr& F, std::mt19937_64& rng, std::vector<FFElem>& out) {
    if (f.size() == 2) {
        out.push_back(-(f[0] * f[1].inv()));
        return;
    }
    std::uniform_int_distribution<u64> dist(0, F->q - 1);
    mpz_class e = (F->order - 1) / 2;
    for (;;) {
        Poly c0(F->degree);
        for (auto& c : c0) c = dist(rng);
        EPoly a{FFElem(F, c0), FFElem::from_int(F, 1)};
        EPoly g = egcd(f, esub(epowmod(a, e, f, F), EPoly{FFElem::from_int(F, 1)}, F));
        if (g.size() > 1 && g.size() < f.size()) {
            // f / g by long division
            EPoly rem = f, quo(f.size() - g.size() + 1, FFElem::from_int(F, 0));
            int dg = static_cast<int>(g.size()) - 1;
            for (int i = static_cast<int>(rem.size()) - 1; i >= dg; --i) {
                FFElem c = rem[i];
                quo[i - dg] = c;
                for (int j = 0; j <= dg; ++j) rem[i - dg + j] = rem[i - dg + j] - c * g[j];
            }
            etrim(quo);
            esplit(g, F, rng, out);
            esplit(quo, F, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<FFElem> roots_in_extension(const FqExtPtr& F, const std::vector<FFElem>& f0,
                                       std::mt19937_64& rng) {
    if (F->q == 2) throw ArithmeticError("characteristic 2 is not supported");
    EPoly f = emonic(f0);
    if (f.size() <= 1) return {};
    EPoly x{FFElem::from_int(F, 0), FFElem::from_int(F, 1)};
    EPoly g = egcd(f, esub(epowmod(x, F->order, f, F), x, F));
    std::vector<FFElem> out;
    if (g.size() <= 1) return out;
    esplit(g, F, rng, out);
    return out;
}

}  // namespace kummer
