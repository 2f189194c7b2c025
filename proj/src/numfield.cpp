// numfield.cpp - tower arithmetic, primes, residues and valuations away from p.
#include "kummer/numfield.hpp"

#include <algorithm>
#include <sstream>

#include "kummer/padic.hpp"

namespace kummer {

Tower::Tower(u64 p_, u64 ell1_) : p(p_), ell1(ell1_) {
    if (!is_prime(p) || p < 3) throw ArithmeticError("Tower: p must be an odd prime");
    if (ell1 % p == 0) throw ArithmeticError("Tower: p divides ell1");
    // x^p - ell1 is irreducible over Q(zeta_p) unless ell1 is a p-th power there;
    // for a prime ell1 that never happens.
    if (!is_prime(ell1)) throw ArithmeticError("Tower: ell1 must be prime");
    g = smallest_primitive_root(p);
}

NFElem::NFElem(u64 p, u64 ell1) : p_(p), ell1_(ell1), c_((p - 1) * p) {}

NFElem NFElem::integer(u64 p, u64 ell1, const mpq_class& c) {
    NFElem r(p, ell1);
    r.coeff(0, 0) = c;
    return r;
}

NFElem NFElem::zeta_power(u64 p, u64 ell1, long k) {
    NFElem r(p, ell1);
    long a = ((k % static_cast<long>(p)) + static_cast<long>(p)) % static_cast<long>(p);
    if (a < static_cast<long>(p) - 1) {
        r.coeff(static_cast<int>(a), 0) = 1;
    } else {
        for (u64 i = 0; i + 1 < p; ++i) r.coeff(static_cast<int>(i), 0) = -1;
    }
    return r;
}

NFElem NFElem::mu(u64 p, u64 ell1) {
    NFElem r(p, ell1);
    r.coeff(0, 1) = 1;
    return r;
}

NFElem NFElem::from_strings(u64 p, u64 ell1, const std::vector<std::vector<std::string>>& rows) {
    if (rows.size() != p - 1) throw std::invalid_argument("NFElem: expected p-1 coefficient rows");
    NFElem r(p, ell1);
    for (u64 a = 0; a + 1 < p; ++a) {
        if (rows[a].size() != p) throw std::invalid_argument("NFElem: expected p coefficients per row");
        for (u64 b = 0; b < p; ++b) {
            mpq_class v;
            if (v.set_str(rows[a][b], 10) != 0) throw std::invalid_argument("NFElem: bad rational " + rows[a][b]);
            v.canonicalize();
            r.coeff(static_cast<int>(a), static_cast<int>(b)) = v;
        }
    }
    return r;
}

std::vector<std::vector<std::string>> NFElem::to_strings() const {
    std::vector<std::vector<std::string>> out(p_ - 1, std::vector<std::string>(p_));
    for (u64 a = 0; a + 1 < p_; ++a)
        for (u64 b = 0; b < p_; ++b) out[a][b] = coeff(static_cast<int>(a), static_cast<int>(b)).get_str();
    return out;
}

bool NFElem::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const mpq_class& v) { return v == 0; });
}

bool NFElem::in_base_field() const {
    for (u64 a = 0; a + 1 < p_; ++a)
        for (u64 b = 1; b < p_; ++b)
            if (coeff(static_cast<int>(a), static_cast<int>(b)) != 0) return false;
    return true;
}

mpz_class NFElem::denominator() const {
    mpz_class d = 1;
    for (const auto& v : c_) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), v.get_den_mpz_t());
    return d;
}

std::size_t NFElem::max_bits() const {
    std::size_t m = 0;
    for (const auto& v : c_) {
        m = std::max(m, mpz_sizeinbase(v.get_num_mpz_t(), 2));
        m = std::max(m, mpz_sizeinbase(v.get_den_mpz_t(), 2));
    }
    return m;
}

NFElem NFElem::operator+(const NFElem& o) const {
    NFElem r = *this;
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
}

NFElem NFElem::operator-(const NFElem& o) const {
    NFElem r = *this;
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
    return r;
}

NFElem NFElem::operator*(const mpq_class& c) const {
    NFElem r = *this;
    for (auto& v : r.c_) v *= c;
    return r;
}

NFElem NFElem::operator*(const NFElem& o) const {
    if (p_ != o.p_ || ell1_ != o.ell1_) throw ArithmeticError("NFElem: field mismatch");
    const int p = static_cast<int>(p_);
    const int A = 2 * p - 3, B = 2 * p - 1;
    std::vector<mpq_class> acc(A * B);
    mpq_class t;
    for (int a1 = 0; a1 < p - 1; ++a1)
        for (int b1 = 0; b1 < p; ++b1) {
            const mpq_class& x = coeff(a1, b1);
            if (x == 0) continue;
            for (int a2 = 0; a2 < p - 1; ++a2)
                for (int b2 = 0; b2 < p; ++b2) {
                    const mpq_class& y = o.coeff(a2, b2);
                    if (y == 0) continue;
                    t = x * y;
                    acc[(a1 + a2) * B + b1 + b2] += t;
                }
        }
    NFElem r(p_, ell1_);
    mpq_class ell(static_cast<unsigned long>(ell1_));
    for (int a = 0; a < A; ++a)
        for (int b = 0; b < B; ++b) {
            mpq_class v = acc[a * B + b];
            if (v == 0) continue;
            int bb = b;
            if (b >= p) {
                bb = b - p;
                v *= ell;
            }
            int aa = a % p;
            if (aa < p - 1) {
                r.coeff(aa, bb) += v;
            } else {
                for (int i = 0; i < p - 1; ++i) r.coeff(i, bb) -= v;
            }
        }
    return r;
}

NFElem NFElem::pow(u64 e) const {
    NFElem r = integer(p_, ell1_, 1);
    NFElem b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

NFElem NFElem::sigma() const {
    NFElem r(p_, ell1_);
    for (u64 b = 0; b < p_; ++b) {
        for (u64 a = 0; a + 1 < p_; ++a) {
            const mpq_class& v = coeff(static_cast<int>(a), static_cast<int>(b));
            if (v == 0) continue;
            NFElem z = zeta_power(p_, ell1_, static_cast<long>(a + b));
            for (u64 i = 0; i + 1 < p_; ++i)
                r.coeff(static_cast<int>(i), static_cast<int>(b)) += v * z.coeff(static_cast<int>(i), 0);
        }
    }
    return r;
}

NFElem NFElem::delta(u64 g) const {
    NFElem r(p_, ell1_);
    for (u64 a = 0; a + 1 < p_; ++a) {
        NFElem z = zeta_power(p_, ell1_, static_cast<long>((a * g) % p_));
        for (u64 b = 0; b < p_; ++b) {
            const mpq_class& v = coeff(static_cast<int>(a), static_cast<int>(b));
            if (v == 0) continue;
            for (u64 i = 0; i + 1 < p_; ++i)
                r.coeff(static_cast<int>(i), static_cast<int>(b)) += v * z.coeff(static_cast<int>(i), 0);
        }
    }
    return r;
}

NFElem NFElem::relative_norm() const {
    NFElem r = *this;
    NFElem s = *this;
    for (u64 i = 1; i < p_; ++i) {
        s = s.sigma();
        r = r * s;
    }
    return r;
}

std::string PrimeData::label() const {
    std::ostringstream os;
    switch (kind) {
        case PrimeKind::AboveP:
            os << "P|" << q << (big ? "[K" : "[F") << "," << local_index << "]";
            break;
        case PrimeKind::AboveEll1:
            os << "P|" << q << "[zeta=" << zeta_bar.str() << "]";
            break;
        case PrimeKind::Unramified:
            if (f == 1) {
                os << "(" << q << ";z=" << z;
                if (big) os << ",m=" << m;
                os << ")";
            } else {
                os << "(" << q << ";f=" << f << ";zeta=" << zeta_bar.str() << ")";
            }
            break;
    }
    return os.str();
}

namespace {

std::vector<FFElem> pure_poly(const FqExtPtr& F, u64 p, u64 c) {
    std::vector<FFElem> f(p + 1, FFElem::from_int(F, 0));
    f[0] = -FFElem::from_int(F, c);
    f[p] = FFElem::from_int(F, 1);
    return f;
}

}  // namespace

std::vector<PrimeData> primes_above(const Tower& t, bool big, u64 q) {
    if (!is_prime(q)) throw ArithmeticError("primes_above: q not prime");
    std::vector<PrimeData> out;
    const u64 p = t.p;
    if (q == p) {
        auto Fp = make_prime_field(p);
        int count = 1, e = static_cast<int>(p - 1);
        if (big) {
            if (tame_or_wild(p, t.ell1) == Ramification::Tame) {
                count = static_cast<int>(p);
            } else {
                e = static_cast<int>(p * (p - 1));
            }
        }
        for (int j = 0; j < count; ++j) {
            PrimeData P;
            P.p = p;
            P.kind = PrimeKind::AboveP;
            P.big = big;
            P.q = p;
            P.f = 1;
            P.e = e;
            P.residue_field = Fp;
            P.zeta_bar = FFElem::from_int(Fp, 1);
            P.mu_bar = FFElem::from_int(Fp, t.ell1 % p);
            P.z = 1;
            P.m = t.ell1 % p;
            P.local_index = j;
            out.push_back(P);
        }
        return out;
    }
    std::mt19937_64 rng(q * 1000003 + p);
    auto factors = poly::factor_squarefree(poly::cyclotomic(p, q), q, rng);
    for (const auto& h : factors) {
        auto F = std::make_shared<const FqExt>(q, h);
        PrimeData base;
        base.p = p;
        base.kind = PrimeKind::Unramified;
        base.big = big;
        base.q = q;
        base.f = F->degree;
        base.e = 1;
        base.residue_field = F;
        base.zeta_bar = FFElem::gen(F);
        if (F->degree == 1) base.z = submod(0, h[0], q);
        if (!big) {
            out.push_back(base);
            continue;
        }
        if (q == t.ell1) {
            base.kind = PrimeKind::AboveEll1;
            base.e = static_cast<int>(p);
            base.mu_bar = FFElem::from_int(F, 0);
            out.push_back(base);
            continue;
        }
        auto mus = roots_in_extension(F, pure_poly(F, p, t.ell1), rng);
        if (!mus.empty()) {
            for (const auto& m : mus) {
                PrimeData P = base;
                P.mu_bar = m;
                if (F->degree == 1) P.m = m.coeffs().empty() ? 0 : m.coeffs()[0];
                out.push_back(P);
            }
            continue;
        }
        // inert in K/Q(zeta_p): residue field of degree f*p
        int fp = F->degree * static_cast<int>(p);
        auto G = std::make_shared<const FqExt>(q, poly::random_irreducible(fp, q, rng));
        std::vector<FFElem> hG;
        for (u64 c : h) hG.push_back(FFElem::from_int(G, c));
        auto zs = roots_in_extension(G, hG, rng);
        auto ms = roots_in_extension(G, pure_poly(G, p, t.ell1), rng);
        if (zs.empty() || ms.empty()) throw ArithmeticError("primes_above: residue embedding failed");
        std::sort(zs.begin(), zs.end(), [](const FFElem& a, const FFElem& b) { return a.coeffs() < b.coeffs(); });
        std::sort(ms.begin(), ms.end(), [](const FFElem& a, const FFElem& b) { return a.coeffs() < b.coeffs(); });
        PrimeData P = base;
        P.f = fp;
        P.residue_field = G;
        P.zeta_bar = zs.front();
        P.mu_bar = ms.front();
        P.z = 0;
        out.push_back(P);
    }
    std::stable_sort(out.begin(), out.end(), [](const PrimeData& a, const PrimeData& b) {
        if (a.f != b.f) return a.f < b.f;
        if (a.f == 1) return std::make_pair(a.m, a.z) < std::make_pair(b.m, b.z);
        return false;
    });
    return out;
}

namespace {

FFElem residue_of_integer(const FqExtPtr& F, const mpq_class& c) {
    return FFElem::from_int(F, mod_of(c, F->q));
}

// Galois ring (Z/q^N)[y]/(H) with H a monic lift of the residue modulus.
class GaloisRing {
public:
    GaloisRing(const FqExtPtr& F, int N) : F_(F), N_(N) {
        mpz_ui_pow_ui(mod_.get_mpz_t(), F->q, N);
        for (u64 c : F->modulus) H_.emplace_back(std::to_string(c));
        f_ = F->degree;
    }
    using Elem = std::vector<mpz_class>;
    const mpz_class& modulus() const { return mod_; }
    Elem zero() const { return Elem(f_, 0); }
    Elem one() const {
        Elem r = zero();
        r[0] = 1;
        return r;
    }
    Elem lift(const FFElem& x) const {
        Elem r = zero();
        for (size_t i = 0; i < x.coeffs().size(); ++i) r[i] = mpz_class(std::to_string(x.coeffs()[i]));
        return r;
    }
    FFElem reduce(const Elem& x) const {
        Poly c(f_);
        for (int i = 0; i < f_; ++i) c[i] = mod_of(x[i], F_->q);
        return FFElem(F_, c);
    }
    Elem add(const Elem& a, const Elem& b) const {
        Elem r(f_);
        for (int i = 0; i < f_; ++i) {
            r[i] = a[i] + b[i];
            if (r[i] >= mod_) r[i] -= mod_;
        }
        return r;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        Elem r(f_);
        for (int i = 0; i < f_; ++i) {
            r[i] = a[i] - b[i];
            if (r[i] < 0) r[i] += mod_;
        }
        return r;
    }
    Elem scale(const Elem& a, const mpz_class& c) const {
        Elem r(f_);
        for (int i = 0; i < f_; ++i) {
            r[i] = a[i] * c;
            mpz_fdiv_r(r[i].get_mpz_t(), r[i].get_mpz_t(), mod_.get_mpz_t());
        }
        return r;
    }
    Elem mul(const Elem& a, const Elem& b) const {
        std::vector<mpz_class> t(2 * f_ - 1, 0);
        for (int i = 0; i < f_; ++i) {
            if (a[i] == 0) continue;
            for (int j = 0; j < f_; ++j) t[i + j] += a[i] * b[j];
        }
        for (int k = 2 * f_ - 2; k >= f_; --k) {
            mpz_fdiv_r(t[k].get_mpz_t(), t[k].get_mpz_t(), mod_.get_mpz_t());
            if (t[k] == 0) continue;
            for (int j = 0; j < f_; ++j) t[k - f_ + j] -= t[k] * H_[j];
        }
        Elem r(f_);
        for (int i = 0; i < f_; ++i) mpz_fdiv_r(r[i].get_mpz_t(), t[i].get_mpz_t(), mod_.get_mpz_t());
        return r;
    }
    Elem inv(const Elem& u) const {
        Elem w = lift(reduce(u).inv());
        Elem two = scale(one(), 2);
        for (int prec = 1; prec < N_; prec *= 2) w = mul(w, sub(two, mul(u, w)));
        return w;
    }
    // Newton iteration for a simple root of sum coeffs[i] x^i.
    Elem newton_root(const std::vector<mpz_class>& coeffs, const FFElem& approx) const {
        Elem r = lift(approx);
        for (int prec = 1; prec < 2 * N_; prec *= 2) {
            Elem val = zero(), der = zero();
            for (size_t i = coeffs.size(); i-- > 0;) {
                der = add(mul(der, r), val);
                val = add(mul(val, r), scale(one(), coeffs[i]));
            }
            r = sub(r, mul(val, inv(der)));
        }
        return r;
    }
    int degree() const { return f_; }

private:
    FqExtPtr F_;
    int N_;
    int f_;
    mpz_class mod_;
    std::vector<mpz_class> H_;
};

long vq(const mpz_class& x, u64 q) {
    if (x == 0) return -1;
    mpz_class qq(std::to_string(q));
    return static_cast<long>(mpz_remove(mpz_class().get_mpz_t(), x.get_mpz_t(), qq.get_mpz_t()));
}

}  // namespace

FFElem reduce_mod_prime(const NFElem& x, const PrimeData& P) {
    if (P.kind == PrimeKind::AboveP) return residue_at_p(x, P);
    const auto& F = P.residue_field;
    mpz_class qq(std::to_string(P.q));
    for (u64 a = 0; a + 1 < x.p(); ++a)
        for (u64 b = 0; b < x.p(); ++b)
            if (mpz_divisible_p(x.coeff(static_cast<int>(a), static_cast<int>(b)).get_den_mpz_t(), qq.get_mpz_t()))
                throw ArithmeticError("reduce_mod_prime: denominator meets " + P.label());
    if (!P.big && !x.in_base_field()) throw ArithmeticError("reduce_mod_prime: element not in Q(zeta_p)");
    FFElem acc = FFElem::from_int(F, 0);
    const int bmax = P.kind == PrimeKind::AboveEll1 || !P.big ? 1 : static_cast<int>(x.p());
    FFElem mup = FFElem::from_int(F, 1);
    for (int b = 0; b < bmax; ++b) {
        FFElem col = FFElem::from_int(F, 0);
        FFElem zp = FFElem::from_int(F, 1);
        for (u64 a = 0; a + 1 < x.p(); ++a) {
            const mpq_class& c = x.coeff(static_cast<int>(a), b);
            if (c != 0) col = col + zp * residue_of_integer(F, c);
            zp = zp * P.zeta_bar;
        }
        acc = acc + col * mup;
        if (P.big) mup = mup * P.mu_bar;
    }
    return acc;
}

LiftedValue lifted_valuation(const NFElem& x, const PrimeData& P, int start_precision, int max_precision) {
    if (P.kind != PrimeKind::Unramified) throw ArithmeticError("lifted_valuation: prime must be unramified");
    if (x.is_zero()) throw ArithmeticError("valuation of zero");
    if (!P.big && !x.in_base_field()) throw ArithmeticError("lifted_valuation: element not in Q(zeta_p)");
    const u64 p = x.p();
    mpz_class D = x.denominator();
    long d = vq(D, P.q);
    mpz_class qq(std::to_string(P.q)), Dprime = D;
    mpz_remove(Dprime.get_mpz_t(), D.get_mpz_t(), qq.get_mpz_t());
    FFElem dres = FFElem::from_int(P.residue_field, mod_of(Dprime, P.q));

    std::vector<mpz_class> cyc(p, 1);
    std::vector<mpz_class> pure(p + 1, 0);
    pure[0] = -mpz_class(std::to_string(x.ell1()));
    pure[p] = 1;

    for (int N = start_precision; N <= max_precision; N *= 2) {
        GaloisRing R(P.residue_field, N);
        auto zt = R.newton_root(cyc, P.zeta_bar);
        std::vector<GaloisRing::Elem> zp(p - 1);
        zp[0] = R.one();
        for (u64 a = 1; a + 1 < p; ++a) zp[a] = R.mul(zp[a - 1], zt);
        const int bmax = P.big ? static_cast<int>(p) : 1;
        GaloisRing::Elem mt = P.big ? R.newton_root(pure, P.mu_bar) : R.zero();
        GaloisRing::Elem mup = R.one(), acc = R.zero();
        for (int b = 0; b < bmax; ++b) {
            GaloisRing::Elem col = R.zero();
            for (u64 a = 0; a + 1 < p; ++a) {
                const mpq_class& c = x.coeff(static_cast<int>(a), b);
                if (c == 0) continue;
                mpz_class num = c.get_num() * (D / c.get_den());
                mpz_fdiv_r(num.get_mpz_t(), num.get_mpz_t(), R.modulus().get_mpz_t());
                col = R.add(col, R.scale(zp[a], num));
            }
            acc = R.add(acc, R.mul(col, mup));
            if (P.big) mup = R.mul(mup, mt);
        }
        long v = -1;
        for (const auto& c : acc) {
            long w = vq(c, P.q);
            if (w >= 0 && (v < 0 || w < v)) v = w;
        }
        if (v < 0) continue;
        mpz_class qv;
        mpz_ui_pow_ui(qv.get_mpz_t(), P.q, static_cast<unsigned long>(v));
        GaloisRing::Elem unit = acc;
        for (auto& c : unit) c /= qv;
        FFElem res = R.reduce(unit) * dres.inv();
        return LiftedValue{v - d, res};
    }
    throw ArithmeticError("lifted_valuation: precision ceiling exceeded at " + P.label());
}

long valuation_at(const NFElem& x, const PrimeData& P) {
    if (x.is_zero()) throw ArithmeticError("valuation of zero");
    switch (P.kind) {
        case PrimeKind::Unramified:
            return lifted_valuation(x, P).valuation;
        case PrimeKind::AboveP:
            return valuation_at_p(x, P);
        case PrimeKind::AboveEll1: {
            PrimeData base = P;
            base.kind = PrimeKind::Unramified;
            base.big = false;
            base.e = 1;
            long best = -1;
            bool first = true;
            for (u64 b = 0; b < x.p(); ++b) {
                NFElem col(x.p(), x.ell1());
                for (u64 a = 0; a + 1 < x.p(); ++a)
                    col.coeff(static_cast<int>(a), 0) = x.coeff(static_cast<int>(a), static_cast<int>(b));
                if (col.is_zero()) continue;
                long v = static_cast<long>(x.p()) * lifted_valuation(col, base).valuation + static_cast<long>(b);
                if (first || v < best) best = v;
                first = false;
            }
            return best;
        }
    }
    return 0;
}

OrdLog ord_and_residue(const NFElem& x, const PrimeData& P) {
    if (P.kind != PrimeKind::Unramified || P.f != 1)
        throw ArithmeticError("ord_and_residue: needs a degree-one unramified prime");
    auto lv = lifted_valuation(x, P);
    u64 r = lv.unit_residue.coeffs().empty() ? 0 : lv.unit_residue.coeffs()[0];
    return OrdLog{lv.valuation, r};
}

u64 unit_residue(const NFElem& x, const PrimeData& P) { return ord_and_residue(x, P).residue; }

u64 pth_power_character(const FFElem& r, const PrimeData& P) {
    if (r.is_zero()) throw ArithmeticError("pth_power_character: zero residue");
    const mpz_class& Q = P.residue_field->order;
    if ((Q - 1) % P.p != 0) throw ArithmeticError("pth_power_character: no p-th roots of unity at " + P.label());
    FFElem t = r.pow((Q - 1) / P.p);
    FFElem zj = FFElem::from_int(P.residue_field, 1);
    for (u64 j = 0; j < P.p; ++j) {
        if (zj == t) return j;
        zj = zj * P.zeta_bar;
    }
    throw ArithmeticError("pth_power_character: inconsistent residue field");
}

u64 pth_power_character(const NFElem& x, const PrimeData& P) {
    if (P.kind == PrimeKind::AboveP) throw ArithmeticError("pth_power_character: prime divides p");
    if (P.kind == PrimeKind::AboveEll1) {
        if (valuation_at(x, P) != 0) throw ArithmeticError("pth_power_character: not a unit at " + P.label());
        PrimeData base = P;
        base.kind = PrimeKind::Unramified;
        base.big = false;
        base.e = 1;
        NFElem col(x.p(), x.ell1());
        for (u64 a = 0; a + 1 < x.p(); ++a) col.coeff(static_cast<int>(a), 0) = x.coeff(static_cast<int>(a), 0);
        return pth_power_character(lifted_valuation(col, base).unit_residue, P);
    }
    auto lv = lifted_valuation(x, P);
    if (lv.valuation != 0) throw ArithmeticError("pth_power_character: not a unit at " + P.label());
    return pth_power_character(lv.unit_residue, P);
}

bool is_pth_power_mod_prime(const NFElem& x, const PrimeData& P) { return pth_power_character(x, P) == 0; }

}  // namespace kummer
