// padic.cpp - truncated completions above p, unit-filtration ladder, Kummer splitting.
#include "kummer/padic.hpp"

#include <map>
#include <mutex>

namespace kummer {

namespace {

mpz_class ppow(u64 p, long k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(k));
    return r;
}

long vp(const mpz_class& x, u64 p) {
    if (x == 0) return -1;
    mpz_class pp(std::to_string(p)), rest;
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t()));
}

mpz_class reduce_rational(const mpq_class& c, const mpz_class& mod) {
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), c.get_den_mpz_t(), mod.get_mpz_t()) == 0)
        throw ArithmeticError("p-adic reduction: denominator divisible by p");
    mpz_class r = c.get_num() * inv;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
    return r;
}

// Solves A x = b over Q for square invertible A (columns given as vectors).
std::vector<std::vector<mpq_class>> solve_rational(std::vector<std::vector<mpq_class>> A,
                                                   std::vector<std::vector<mpq_class>> rhs) {
    const size_t n = A.size();
    const size_t k = rhs.size();
    // A is row-major n x n; rhs holds k right-hand sides of length n.
    std::vector<std::vector<mpq_class>> aug(n, std::vector<mpq_class>(n + k));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug[i][j] = A[i][j];
        for (size_t r = 0; r < k; ++r) aug[i][n + r] = rhs[r][i];
    }
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && aug[piv][col] == 0) ++piv;
        if (piv == n) throw ArithmeticError("solve_rational: singular system");
        std::swap(aug[piv], aug[col]);
        mpq_class inv = 1 / aug[col][col];
        for (auto& v : aug[col]) v *= inv;
        for (size_t r = 0; r < n; ++r) {
            if (r == col || aug[r][col] == 0) continue;
            mpq_class f = aug[r][col];
            for (size_t j = col; j < n + k; ++j) aug[r][j] -= f * aug[col][j];
        }
    }
    std::vector<std::vector<mpq_class>> out(k, std::vector<mpq_class>(n));
    for (size_t r = 0; r < k; ++r)
        for (size_t i = 0; i < n; ++i) out[r][i] = aug[i][n + r];
    return out;
}

std::vector<mpq_class> flatten(const NFElem& x) {
    std::vector<mpq_class> v;
    for (u64 a = 0; a + 1 < x.p(); ++a)
        for (u64 b = 0; b < x.p(); ++b) v.push_back(x.coeff(static_cast<int>(a), static_cast<int>(b)));
    return v;
}

std::vector<mpq_class> cyclotomic_shift(u64 p) {
    // Phi_p(1 - x)
    std::vector<mpq_class> c(p, 0);
    std::vector<mpz_class> row(p, 0);  // coefficients of (1 - x)^k
    row[0] = 1;
    for (u64 k = 0; k < p; ++k) {
        for (u64 i = 0; i < p; ++i) c[i] += row[i];
        for (u64 i = p - 1; i > 0; --i) row[i] -= row[i - 1];
    }
    return c;
}

LocalField wild_field(u64 p, u64 ell1) {
    const u64 n = p * (p - 1);
    NFElem mu = NFElem::mu(p, ell1);
    NFElem inv(p, ell1);
    mpz_class l1(std::to_string(ell1));
    mpz_class l1p;
    mpz_pow_ui(l1p.get_mpz_t(), l1.get_mpz_t(), p);
    mpq_class denom(l1 - l1p);
    mpz_class li = 1;
    for (u64 i = 0; i < p; ++i) {
        inv.coeff(0, static_cast<int>(p - 1 - i)) = mpq_class(li) / denom;
        li *= l1;
    }
    NFElem pi = (NFElem::zeta(p, ell1) - NFElem::integer(p, ell1, 1)) * inv;
    std::vector<std::vector<mpq_class>> cols;
    NFElem cur = NFElem::integer(p, ell1, 1);
    for (u64 i = 0; i < n; ++i) {
        cols.push_back(flatten(cur));
        cur = cur * pi;
    }
    std::vector<std::vector<mpq_class>> A(n, std::vector<mpq_class>(n));
    for (u64 i = 0; i < n; ++i)
        for (u64 j = 0; j < n; ++j) A[i][j] = cols[j][i];
    auto sol = solve_rational(A, {flatten(cur), flatten(NFElem::zeta(p, ell1)), flatten(mu)});
    LocalField L;
    L.p = p;
    L.ell1 = ell1;
    L.big = true;
    L.e = static_cast<int>(n);
    L.eisenstein.resize(n + 1);
    for (u64 i = 0; i < n; ++i) L.eisenstein[i] = -sol[0][i];
    L.eisenstein[n] = 1;
    L.zeta = sol[1];
    L.mu = sol[2];
    for (u64 i = 0; i < n; ++i) {
        const auto& c = L.eisenstein[i];
        if (vp(c.get_den(), p) > 0 || c == 0 || vp(c.get_num(), p) < 1)
            throw ArithmeticError("wild uniformizer is not Eisenstein");
    }
    if (vp(L.eisenstein[0].get_num(), p) != 1) throw ArithmeticError("wild uniformizer is not Eisenstein");
    for (const auto* v : {&L.zeta, &L.mu})
        for (const auto& c : *v)
            if (vp(c.get_den(), p) > 0) throw ArithmeticError("wild local coordinates not integral");
    return L;
}

}  // namespace

LocalRing::LocalRing(u64 p, const std::vector<mpq_class>& E, int N) : p_(p), N_(N) {
    e_ = static_cast<int>(E.size()) - 1;
    if (e_ < 1 || E.back() != 1) throw ArithmeticError("LocalRing: Eisenstein polynomial must be monic");
    if (N < 1) throw ArithmeticError("LocalRing: precision must be positive");
    M_ = (N + e_ - 1) / e_ + 1;
    pM_ = ppow(p, M_);
    for (int i = 0; i < e_; ++i) E_.push_back(reduce_rational(E[i], pM_));
}

LocalRing::Elem LocalRing::one() const {
    Elem r = zero();
    r[0] = 1;
    return r;
}

LocalRing::Elem LocalRing::from_int(const mpz_class& c) const {
    Elem r = zero();
    mpz_fdiv_r(r[0].get_mpz_t(), c.get_mpz_t(), pM_.get_mpz_t());
    return r;
}

LocalRing::Elem LocalRing::from_rational(const mpq_class& c) const {
    Elem r = zero();
    r[0] = reduce_rational(c, pM_);
    return r;
}

LocalRing::Elem LocalRing::from_coords(const std::vector<mpq_class>& c) const {
    Elem r = zero();
    for (int i = 0; i < e_ && i < static_cast<int>(c.size()); ++i) r[i] = reduce_rational(c[i], pM_);
    return r;
}

LocalRing::Elem LocalRing::pi_power(int j) const {
    Elem x = zero();
    x[1] = 1;
    Elem r = one();
    for (int i = 0; i < j; ++i) r = mul(r, x);
    return r;
}

LocalRing::Elem LocalRing::add(const Elem& a, const Elem& b) const {
    Elem r(e_);
    for (int i = 0; i < e_; ++i) {
        r[i] = a[i] + b[i];
        if (r[i] >= pM_) r[i] -= pM_;
    }
    return r;
}

LocalRing::Elem LocalRing::sub(const Elem& a, const Elem& b) const {
    Elem r(e_);
    for (int i = 0; i < e_; ++i) {
        r[i] = a[i] - b[i];
        if (r[i] < 0) r[i] += pM_;
    }
    return r;
}

LocalRing::Elem LocalRing::scale(const Elem& a, const mpz_class& c) const {
    Elem r(e_);
    for (int i = 0; i < e_; ++i) {
        r[i] = a[i] * c;
        mpz_fdiv_r(r[i].get_mpz_t(), r[i].get_mpz_t(), pM_.get_mpz_t());
    }
    return r;
}

LocalRing::Elem LocalRing::mul(const Elem& a, const Elem& b) const {
    std::vector<mpz_class> t(2 * e_ - 1, 0);
    for (int i = 0; i < e_; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < e_; ++j) t[i + j] += a[i] * b[j];
    }
    for (int k = 2 * e_ - 2; k >= e_; --k) {
        mpz_fdiv_r(t[k].get_mpz_t(), t[k].get_mpz_t(), pM_.get_mpz_t());
        if (t[k] == 0) continue;
        for (int i = 0; i < e_; ++i) t[k - e_ + i] -= t[k] * E_[i];
    }
    Elem r(e_);
    for (int i = 0; i < e_; ++i) mpz_fdiv_r(r[i].get_mpz_t(), t[i].get_mpz_t(), pM_.get_mpz_t());
    return r;
}

LocalRing::Elem LocalRing::pow(const Elem& a, const mpz_class& k) const {
    if (k < 0) return pow(inv(a), -k);
    Elem r = one();
    size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r = mul(r, r);
        if (mpz_tstbit(k.get_mpz_t(), i)) r = mul(r, a);
    }
    return r;
}

LocalRing::Elem LocalRing::inv(const Elem& u) const {
    u64 c = residue(u);
    if (c == 0) throw ArithmeticError("LocalRing::inv: not a unit");
    Elem w = from_int(mpz_class(std::to_string(invmod(c, p_))));
    Elem two = from_int(2);
    for (int prec = 1; prec < e_ * M_; prec *= 2) w = mul(w, sub(two, mul(u, w)));
    return w;
}

int LocalRing::valuation(const Elem& a) const {
    long best = N_;
    for (int i = 0; i < e_; ++i) {
        long v = vp(a[i], p_);
        if (v < 0) continue;
        best = std::min(best, static_cast<long>(e_) * v + i);
    }
    return static_cast<int>(std::min<long>(best, N_));
}

u64 LocalRing::residue(const Elem& a) const { return mod_of(a[0], p_); }

mpz_class pth_root_padic(u64 p, u64 ell1, int M) {
    mpz_class l1(std::to_string(ell1));
    mpz_class r = ell1 % p;
    mpz_class pk = p;  // p^k
    for (int k = 1; k < M; ++k) {
        mpz_class target = pk * p * p;  // p^(k+2)
        bool found = false;
        for (u64 d = 0; d < p; ++d) {
            mpz_class cand = r + pk * d, pw;
            mpz_powm_ui(pw.get_mpz_t(), cand.get_mpz_t(), p, target.get_mpz_t());
            mpz_class want;
            mpz_fdiv_r(want.get_mpz_t(), l1.get_mpz_t(), target.get_mpz_t());
            if (pw == want) {
                r = cand;
                found = true;
                break;
            }
        }
        if (!found) throw ArithmeticError("pth_root_padic: ell1 is not a p-th power in Z_p");
        pk *= p;
    }
    return r;
}

mpz_class teichmuller(u64 c, u64 p, int M) {
    mpz_class mod = ppow(p, M), t = c % p;
    for (int i = 0; i < M; ++i) mpz_powm_ui(t.get_mpz_t(), t.get_mpz_t(), p, mod.get_mpz_t());
    return t;
}

LocalField local_field_at(const Tower& t, const PrimeData& P) {
    if (P.kind != PrimeKind::AboveP) throw ArithmeticError("local_field_at: prime does not divide p");
    const u64 p = t.p;
    if (P.big && tame_or_wild(p, t.ell1) == Ramification::Wild) {
        static std::mutex mtx;
        static std::map<std::pair<u64, u64>, LocalField> cache;
        std::lock_guard<std::mutex> lock(mtx);
        auto key = std::make_pair(p, t.ell1);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, wild_field(p, t.ell1)).first;
        return it->second;
    }
    LocalField L;
    L.p = p;
    L.ell1 = t.ell1;
    L.big = P.big;
    L.tame = P.big;
    L.local_index = P.local_index;
    L.e = static_cast<int>(p - 1);
    L.eisenstein = cyclotomic_shift(p);
    L.zeta.assign(L.e, 0);
    L.zeta[0] = 1;
    if (L.e > 1) L.zeta[1] = -1;
    return L;
}

namespace {

// Image of D * x in R, D the denominator of x.
LocalRing::Elem embed_numerator(const LocalField& L, const LocalRing& R, const NFElem& x, const mpz_class& D) {
    const u64 p = L.p;
    if (!L.big && !x.in_base_field()) throw ArithmeticError("embed: element not in Q(zeta_p)");
    LocalRing::Elem z = R.from_coords(L.zeta);
    std::vector<LocalRing::Elem> zp(p - 1);
    zp[0] = R.one();
    for (u64 a = 1; a + 1 < p; ++a) zp[a] = R.mul(zp[a - 1], z);
    LocalRing::Elem m = R.zero();
    if (L.big) {
        if (L.tame) {
            mpz_class r = pth_root_padic(p, L.ell1, R.coefficient_precision() + 1);
            m = R.scale(R.pow(z, L.local_index), r);
        } else {
            m = R.from_coords(L.mu);
        }
    }
    const int bmax = L.big ? static_cast<int>(p) : 1;
    LocalRing::Elem acc = R.zero(), mup = R.one();
    for (int b = 0; b < bmax; ++b) {
        LocalRing::Elem col = R.zero();
        for (u64 a = 0; a + 1 < p; ++a) {
            const mpq_class& c = x.coeff(static_cast<int>(a), b);
            if (c == 0) continue;
            mpz_class num = c.get_num() * (D / c.get_den());
            col = R.add(col, R.scale(zp[a], num));
        }
        acc = R.add(acc, R.mul(col, mup));
        if (L.big) mup = R.mul(mup, m);
    }
    return acc;
}

}  // namespace

LocalRing::Elem embed(const LocalField& L, const LocalRing& R, const NFElem& x) {
    mpz_class D = x.denominator();
    mpz_class pp(std::to_string(L.p)), Dp;
    long d = static_cast<long>(mpz_remove(Dp.get_mpz_t(), D.get_mpz_t(), pp.get_mpz_t()));
    if (d == 0) {
        LocalRing::Elem y = embed_numerator(L, R, x, D);
        return R.scale(y, reduce_rational(mpq_class(1, Dp), R.modulus()));
    }
    LocalRing R2(L.p, L.eisenstein, R.precision() + L.e * static_cast<int>(d + 1));
    LocalRing::Elem y = embed_numerator(L, R2, x, D);
    mpz_class pd = ppow(L.p, d);
    LocalRing::Elem out = R.zero();
    for (int i = 0; i < L.e; ++i) {
        if (!mpz_divisible_p(y[i].get_mpz_t(), pd.get_mpz_t()))
            throw ArithmeticError("embed: element not integral at the prime above p");
        mpz_class c = y[i] / pd;
        mpz_fdiv_r(out[i].get_mpz_t(), c.get_mpz_t(), R.modulus().get_mpz_t());
    }
    return R.scale(out, reduce_rational(mpq_class(1, Dp), R.modulus()));
}

long valuation_at_p(const NFElem& x, const PrimeData& P) {
    if (x.is_zero()) throw ArithmeticError("valuation of zero");
    Tower t;
    t.p = P.p;
    t.ell1 = x.ell1();
    LocalField L = local_field_at(t, P);
    mpz_class D = x.denominator();
    long d = vp(D, L.p);
    for (int N = 8 * L.e; N <= 4096 * L.e; N *= 2) {
        LocalRing R(L.p, L.eisenstein, N);
        auto y = embed_numerator(L, R, x, D);
        int v = R.valuation(y);
        if (v < N) return v - L.e * d;
    }
    throw ArithmeticError("valuation_at_p: precision ceiling exceeded");
}

FFElem residue_at_p(const NFElem& x, const PrimeData& P) {
    Tower t;
    t.p = P.p;
    t.ell1 = x.ell1();
    LocalField L = local_field_at(t, P);
    LocalRing R(L.p, L.eisenstein, 1);
    return FFElem::from_int(P.residue_field, R.residue(embed(L, R, x)));
}

int pth_power_level(const LocalRing& R, const LocalRing::Elem& x, int cap) {
    const int N = cap < 0 ? R.precision() : cap;
    if (N > R.precision()) throw ArithmeticError("pth_power_level: precision too low");
    const u64 p = R.p();
    const int e = R.e();
    if (e % static_cast<int>(p - 1) != 0) throw ArithmeticError("pth_power_level: field lacks zeta_p");
    const int a = e / static_cast<int>(p - 1);
    const int ip = static_cast<int>(p);
    u64 c = R.residue(x);
    if (c == 0) throw ArithmeticError("pth_power_level: not a unit");
    mpz_class cp;
    mpz_ui_pow_ui(cp.get_mpz_t(), c, p);
    LocalRing::Elem z = R.mul(x, R.inv(R.from_int(cp)));
    const LocalRing::Elem one = R.one();
    for (;;) {
        int k = R.valuation(R.sub(z, one));
        if (k >= N) return N;
        int j;
        if (k < a * ip) {
            if (k % ip != 0) return k;
            j = k / ip;
        } else if (k == a * ip) {
            j = a;
        } else {
            j = k - e;
        }
        LocalRing::Elem pij = R.pi_power(j);
        bool raised = false;
        for (u64 t = 1; t < p; ++t) {
            LocalRing::Elem w = R.pow(R.add(one, R.scale(pij, t)), p);
            LocalRing::Elem z2 = R.mul(z, R.inv(w));
            if (R.valuation(R.sub(z2, one)) > k) {
                z = z2;
                raised = true;
                break;
            }
        }
        if (!raised) return k;
    }
}

bool is_pth_power_mod(const LocalRing& R, const LocalRing::Elem& x, int N) {
    return pth_power_level(R, x, N) >= N;
}

bool local_congruence_test(const LocalRing& R, const LocalRing::Elem& x, CongruenceMode mode) {
    const int p = static_cast<int>(R.p());
    switch (mode) {
        case CongruenceMode::TeichmullerModPp: {
            if (R.precision() < p) throw ArithmeticError("local_congruence_test: precision too low");
            u64 c = R.residue(x);
            if (c == 0) throw ArithmeticError("local_congruence_test: not a unit");
            auto t = R.from_int(teichmuller(c, R.p(), R.coefficient_precision()));
            return R.valuation(R.sub(x, t)) >= p;
        }
        case CongruenceMode::PthPowerModPp2:
            return is_pth_power_mod(R, x, p * p);
        case CongruenceMode::OneMod2e:
            if (R.precision() < 2 * (p - 1)) throw ArithmeticError("local_congruence_test: precision too low");
            return R.valuation(R.sub(x, R.one())) >= 2 * (p - 1);
    }
    return false;
}

bool local_congruence_tests(const NFElem& x, const PrimeData& P, CongruenceMode mode) {
    Tower t;
    t.p = P.p;
    t.ell1 = x.ell1();
    LocalField L = local_field_at(t, P);
    int p = static_cast<int>(P.p);
    int N = mode == CongruenceMode::PthPowerModPp2 ? p * p : mode == CongruenceMode::OneMod2e ? 2 * (p - 1) : p;
    LocalRing R(L.p, L.eisenstein, N);
    return local_congruence_test(R, embed(L, R, x), mode);
}

const char* to_string(Splitting s) {
    switch (s) {
        case Splitting::Split:
            return "split";
        case Splitting::Inert:
            return "inert";
        case Splitting::Ramified:
            return "ramified";
    }
    return "?";
}

Splitting kummer_splitting_local(const LocalRing& R, const LocalRing::Elem& unit) {
    const int p = static_cast<int>(R.p());
    const int a = R.e() / (p - 1);
    int level = pth_power_level(R, unit, a * p + 1);
    if (level >= a * p + 1) return Splitting::Split;
    if (level >= a * p) return Splitting::Inert;
    return Splitting::Ramified;
}

Splitting kummer_splitting(const Tower& t, const NFElem& alpha, const PrimeData& P) {
    const long p = static_cast<long>(t.p);
    switch (P.kind) {
        case PrimeKind::AboveP: {
            if (valuation_at_p(alpha, P) != 0) return Splitting::Ramified;
            LocalField L = local_field_at(t, P);
            int a = L.e / static_cast<int>(p - 1);
            LocalRing R(L.p, L.eisenstein, a * static_cast<int>(p) + 1);
            return kummer_splitting_local(R, embed(L, R, alpha));
        }
        case PrimeKind::Unramified: {
            auto lv = lifted_valuation(alpha, P);
            if (lv.valuation % p != 0) return Splitting::Ramified;
            return pth_power_character(lv.unit_residue, P) == 0 ? Splitting::Split : Splitting::Inert;
        }
        case PrimeKind::AboveEll1: {
            long v = valuation_at(alpha, P);
            if (v % p != 0) return Splitting::Ramified;
            NFElem a = alpha;
            if (v != 0) {
                mpz_class l1(std::to_string(t.ell1)), s;
                mpz_pow_ui(s.get_mpz_t(), l1.get_mpz_t(), static_cast<unsigned long>(std::labs(v) / p));
                a = v > 0 ? alpha * mpq_class(1, s) : alpha * mpq_class(s);
            }
            return pth_power_character(a, P) == 0 ? Splitting::Split : Splitting::Inert;
        }
    }
    return Splitting::Ramified;
}

}  // namespace kummer
