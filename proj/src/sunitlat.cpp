// sunitlat.cpp - F_p linear algebra on S-unit lattices, seed ingestion and certification.
#include "kummer/sunitlat.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <fstream>
#include <set>
#include <sstream>

namespace kummer {

MatFp::MatFp(int rows, int cols, u64 p) : r_(rows), c_(cols), p_(p), d_(static_cast<size_t>(rows) * cols, 0) {}

MatFp MatFp::identity(int n, u64 p) {
    MatFp m(n, n, p);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Vec MatFp::row(int i) const { return Vec(d_.begin() + static_cast<long>(i) * c_, d_.begin() + static_cast<long>(i + 1) * c_); }

Vec MatFp::col(int j) const {
    Vec v(r_);
    for (int i = 0; i < r_; ++i) v[i] = at(i, j);
    return v;
}

MatFp MatFp::operator*(const MatFp& o) const {
    if (c_ != o.r_) throw std::invalid_argument("MatFp: dimension mismatch");
    MatFp m(r_, o.c_, p_);
    for (int i = 0; i < r_; ++i)
        for (int k = 0; k < c_; ++k) {
            u64 a = at(i, k);
            if (!a) continue;
            for (int j = 0; j < o.c_; ++j) m.at(i, j) = (m.at(i, j) + a * o.at(k, j)) % p_;
        }
    return m;
}

MatFp MatFp::operator+(const MatFp& o) const {
    MatFp m = *this;
    for (size_t i = 0; i < d_.size(); ++i) m.d_[i] = (d_[i] + o.d_[i]) % p_;
    return m;
}

MatFp MatFp::operator-(const MatFp& o) const {
    MatFp m = *this;
    for (size_t i = 0; i < d_.size(); ++i) m.d_[i] = (d_[i] + p_ - o.d_[i]) % p_;
    return m;
}

MatFp MatFp::scaled(u64 c) const {
    MatFp m = *this;
    for (auto& v : m.d_) v = v * (c % p_) % p_;
    return m;
}

MatFp MatFp::transpose() const {
    MatFp m(c_, r_, p_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
    return m;
}

MatFp MatFp::pow(u64 e) const {
    MatFp r = identity(r_, p_), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

Vec MatFp::apply(const Vec& v) const {
    if (static_cast<int>(v.size()) != c_) throw std::invalid_argument("MatFp::apply: dimension mismatch");
    Vec out(r_, 0);
    for (int i = 0; i < r_; ++i) {
        u64 s = 0;
        for (int j = 0; j < c_; ++j) s += at(i, j) * v[j];
        out[i] = s % p_;
    }
    return out;
}

bool MatFp::is_zero() const {
    return std::all_of(d_.begin(), d_.end(), [](u64 v) { return v == 0; });
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<int> rref(MatFp& m, int ncols_to_reduce = -1) {
    const u64 p = m.p();
    const int nc = ncols_to_reduce < 0 ? m.cols() : ncols_to_reduce;
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < nc && r < m.rows(); ++c) {
        int piv = r;
        while (piv < m.rows() && m.at(piv, c) == 0) ++piv;
        if (piv == m.rows()) continue;
        if (piv != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(r, j));
        u64 inv = invmod(m.at(r, c), p);
        for (int j = 0; j < m.cols(); ++j) m.at(r, j) = m.at(r, j) * inv % p;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            u64 f = m.at(i, c);
            for (int j = 0; j < m.cols(); ++j) m.at(i, j) = (m.at(i, j) + (p - f) * m.at(r, j)) % p;
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<Vec> echelon_rows(const std::vector<Vec>& vs, int n, u64 p) {
    if (vs.empty()) return {};
    MatFp m(static_cast<int>(vs.size()), n, p);
    for (size_t i = 0; i < vs.size(); ++i)
        for (int j = 0; j < n; ++j) m.at(static_cast<int>(i), j) = vs[i][j] % p;
    auto piv = rref(m);
    std::vector<Vec> out;
    for (size_t i = 0; i < piv.size(); ++i) out.push_back(m.row(static_cast<int>(i)));
    return out;
}

}  // namespace

int MatFp::rank() const {
    MatFp m = *this;
    return static_cast<int>(rref(m).size());
}

std::optional<MatFp> MatFp::inverse() const {
    if (r_ != c_) return std::nullopt;
    MatFp aug(r_, 2 * c_, p_);
    for (int i = 0; i < r_; ++i) {
        for (int j = 0; j < c_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, c_ + i) = 1;
    }
    auto piv = rref(aug, c_);
    if (static_cast<int>(piv.size()) != r_) return std::nullopt;
    MatFp inv(r_, c_, p_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) inv.at(i, j) = aug.at(i, c_ + j);
    return inv;
}

Vec vadd(const Vec& a, const Vec& b, u64 p) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % p;
    return r;
}

Vec vsub(const Vec& a, const Vec& b, u64 p) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + p - b[i] % p) % p;
    return r;
}

Vec vscale(const Vec& a, u64 c, u64 p) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * (c % p) % p;
    return r;
}

Vec vzero(int n) { return Vec(n, 0); }

bool vis_zero(const Vec& a) {
    return std::all_of(a.begin(), a.end(), [](u64 v) { return v == 0; });
}

Vec vunit(int n, int i) {
    Vec v(n, 0);
    v[i] = 1;
    return v;
}

Vec normalize_line(const Vec& a, u64 p) {
    for (u64 v : a)
        if (v) return vscale(a, invmod(v, p), p);
    return a;
}

std::vector<Vec> nullspace(const MatFp& A) {
    MatFp m = A;
    auto piv = rref(m);
    const u64 p = A.p();
    std::vector<bool> is_piv(A.cols(), false);
    for (int c : piv) is_piv[c] = true;
    std::vector<Vec> basis;
    for (int f = 0; f < A.cols(); ++f) {
        if (is_piv[f]) continue;
        Vec v(A.cols(), 0);
        v[f] = 1;
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = (p - m.at(static_cast<int>(r), f)) % p;
        basis.push_back(v);
    }
    return echelon_rows(basis, A.cols(), p);
}

std::vector<Vec> column_space(const MatFp& A) {
    std::vector<Vec> cols;
    for (int j = 0; j < A.cols(); ++j) cols.push_back(A.col(j));
    return echelon_rows(cols, A.rows(), A.p());
}

LinearSolution solve_lex_least(const MatFp& A, const Vec& b) {
    const u64 p = A.p();
    MatFp aug(A.rows(), A.cols() + 1, p);
    for (int i = 0; i < A.rows(); ++i) {
        for (int j = 0; j < A.cols(); ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols()) = b[i] % p;
    }
    auto piv = rref(aug, A.cols());
    LinearSolution sol;
    for (int i = static_cast<int>(piv.size()); i < A.rows(); ++i)
        if (aug.at(i, A.cols()) != 0) return sol;
    sol.feasible = true;
    sol.x.assign(A.cols(), 0);
    for (size_t r = 0; r < piv.size(); ++r) sol.x[piv[r]] = aug.at(static_cast<int>(r), A.cols());
    sol.kernel = nullspace(A);
    for (const auto& v : sol.kernel) {
        size_t k = 0;
        while (v[k] == 0) ++k;
        if (sol.x[k]) sol.x = vsub(sol.x, vscale(v, sol.x[k], p), p);
    }
    return sol;
}

std::vector<Vec> enumerate_lines(const std::vector<Vec>& basis, u64 p) {
    std::vector<Vec> out;
    if (basis.empty()) return out;
    const size_t k = basis.size(), n = basis[0].size();
    std::vector<u64> coef(k, 0);
    std::set<Vec> seen;
    for (;;) {
        size_t i = 0;
        while (i < k && coef[i] == p - 1) coef[i++] = 0;
        if (i == k) break;
        ++coef[i];
        size_t first = 0;
        while (first < k && coef[first] == 0) ++first;
        if (first == k || coef[first] != 1) continue;
        Vec v(n, 0);
        for (size_t j = 0; j < k; ++j)
            if (coef[j]) v = vadd(v, vscale(basis[j], coef[j], p), p);
        v = normalize_line(v, p);
        if (seen.insert(v).second) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---- seed data ----

namespace {

MatFp parse_matrix(const nlohmann::json& j, const char* name, int rows, int cols, u64 p) {
    if (!j.contains(name)) throw SeedError(std::string("seed: missing field ") + name);
    const auto& m = j.at(name);
    if (!m.is_array() || static_cast<int>(m.size()) != rows)
        throw SeedError(std::string("seed: ") + name + " has wrong row count");
    MatFp out(rows, cols, p);
    for (int i = 0; i < rows; ++i) {
        if (!m[i].is_array() || static_cast<int>(m[i].size()) != cols)
            throw SeedError(std::string("seed: ") + name + " has wrong column count");
        for (int k = 0; k < cols; ++k) {
            long long v = m[i][k].get<long long>();
            if (v < 0 || static_cast<u64>(v) >= p) throw SeedError(std::string("seed: ") + name + " entry outside [0,p)");
            out.at(i, k) = static_cast<u64>(v);
        }
    }
    return out;
}

nlohmann::json matrix_json(const MatFp& m) {
    nlohmann::json a = nlohmann::json::array();
    for (int i = 0; i < m.rows(); ++i) a.push_back(m.row(i));
    return a;
}

std::vector<NFElem> parse_basis(const nlohmann::json& j, const char* name, int count, u64 p, u64 ell1) {
    if (!j.contains(name)) throw SeedError(std::string("seed: missing field ") + name);
    const auto& b = j.at(name);
    if (!b.is_array() || static_cast<int>(b.size()) != count)
        throw SeedError(std::string("seed: ") + name + " does not match its rank");
    std::vector<NFElem> out;
    for (const auto& e : b) {
        try {
            out.push_back(NFElem::from_strings(p, ell1, e.at("coeffs").get<std::vector<std::vector<std::string>>>()));
        } catch (const std::exception& ex) {
            throw SeedError(std::string("seed: bad element in ") + name + ": " + ex.what());
        }
        if (out.back().is_zero()) throw SeedError(std::string("seed: zero element in ") + name);
    }
    return out;
}

}  // namespace

SeedData parse_seed(const nlohmann::json& j) {
    SeedData s;
    try {
        if (!j.contains("schema_version")) throw SeedError("seed: missing schema_version");
        s.schema_version = j.at("schema_version").get<int>();
        if (s.schema_version != kSchemaVersion)
            throw SeedError("seed: unsupported schema_version " + std::to_string(s.schema_version));
        const auto& pr = j.at("params");
        s.params = TripleParams{pr.at("p").get<u64>(), pr.at("ell0").get<u64>(), pr.at("ell1").get<u64>()};
        if (!j.contains("class_number_coprime")) throw SeedError("seed: missing class_number_coprime");
        s.class_number_coprime = j.at("class_number_coprime").get<bool>();
        if (!s.class_number_coprime)
            throw SeedError("class-number gate: p divides the class number of K for " + s.params.label());
        const u64 p = s.params.p, l1 = s.params.ell1;
        s.delta_generator = j.at("delta_generator").get<u64>();
        if (!is_prime(p) || !is_primitive_root(s.delta_generator, p))
            throw SeedError("seed: delta_generator is not a primitive root mod p");
        s.rank_small = j.at("rank_small").get<int>();
        s.rank_big = j.at("rank_big").get<int>();
        if (s.rank_small < 0 || s.rank_big < s.rank_small) throw SeedError("seed: inconsistent ranks");
        s.basis_small = parse_basis(j, "basis_small", s.dim_small(), p, l1);
        s.basis_big = parse_basis(j, "basis_big", s.dim_big(), p, l1);
        for (const auto& u : s.basis_small)
            if (!u.in_base_field()) throw SeedError("seed: basis_small element involves mu");
        s.sigma_matrix = parse_matrix(j, "sigma_matrix", s.dim_big(), s.dim_big(), p);
        s.delta_matrix = parse_matrix(j, "delta_matrix", s.dim_big(), s.dim_big(), p);
        s.inclusion_matrix = parse_matrix(j, "inclusion_matrix", s.dim_small(), s.dim_big(), p);
    } catch (const nlohmann::json::exception& ex) {
        throw SeedError(std::string("seed: schema error: ") + ex.what());
    }
    return s;
}

SeedData load_seed(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SeedError("seed: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        throw SeedError("seed: malformed JSON in " + path + ": " + ex.what());
    }
    return parse_seed(j);
}

nlohmann::json seed_to_json(const SeedData& s) {
    nlohmann::json j;
    j["schema_version"] = s.schema_version;
    j["params"] = {{"p", s.params.p}, {"ell0", s.params.ell0}, {"ell1", s.params.ell1}};
    j["class_number_coprime"] = s.class_number_coprime;
    if (!s.class_number_coprime) return j;
    j["delta_generator"] = s.delta_generator;
    j["rank_small"] = s.rank_small;
    j["rank_big"] = s.rank_big;
    auto basis = [](const std::vector<NFElem>& b) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& u : b) a.push_back({{"coeffs", u.to_strings()}});
        return a;
    };
    j["basis_small"] = basis(s.basis_small);
    j["basis_big"] = basis(s.basis_big);
    j["sigma_matrix"] = matrix_json(s.sigma_matrix);
    j["delta_matrix"] = matrix_json(s.delta_matrix);
    j["inclusion_matrix"] = matrix_json(s.inclusion_matrix);
    return j;
}

std::string seed_filename(const TripleParams& t) {
    return "seed_" + std::to_string(t.p) + "_" + std::to_string(t.ell0) + "_" + std::to_string(t.ell1) + ".json";
}

// ---- Galois action ----

GaloisData galois_data(const SeedData& s) {
    GaloisData g;
    g.p = s.params.p;
    g.g = s.delta_generator;
    g.ds = s.dim_small();
    g.db = s.dim_big();
    g.S = s.sigma_matrix.transpose();
    g.D = s.delta_matrix.transpose();
    g.I = s.inclusion_matrix.transpose();
    if (g.I.rank() != g.ds) throw SeedError("seed: inclusion matrix is not injective");
    g.Ds = MatFp(g.ds, g.ds, g.p);
    MatFp DI = g.D * g.I;
    for (int i = 0; i < g.ds; ++i) {
        auto sol = solve_lex_least(g.I, DI.col(i));
        if (!sol.feasible) throw SeedError("seed: image of the small lattice is not delta-stable");
        for (int k = 0; k < g.ds; ++k) g.Ds.at(k, i) = sol.x[k];
    }
    return g;
}

Vec apply_galois(const GaloisData& g, const std::string& word, const Vec& v) {
    if (static_cast<int>(v.size()) != g.db) throw std::invalid_argument("apply_galois: expects a big-lattice vector");
    MatFp M = MatFp::identity(g.db, g.p);
    for (char c : word) {
        switch (c) {
            case 's':
                M = M * g.S;
                break;
            case 'S':
                M = M * g.S.pow(g.p - 1);
                break;
            case 'd':
                M = M * g.D;
                break;
            case 'D':
                M = M * g.D.pow(g.p - 2);
                break;
            default:
                throw std::invalid_argument("apply_galois: letters must be s, S, d, D");
        }
    }
    return M.apply(v);
}

MatFp isotypic_projector(const MatFp& delta, u64 g, u64 i) {
    const u64 p = delta.p();
    const int n = delta.rows();
    MatFp acc(n, n, p), Dk = MatFp::identity(n, p);
    u64 ginv = invmod(g % p, p);
    for (u64 k = 0; k + 1 < p; ++k) {
        u64 coef = powmod(ginv, (i * k) % (p - 1), p);
        acc = acc + Dk.scaled(coef);
        Dk = Dk * delta;
    }
    // (p-1)^{-1} = -1 mod p
    return acc.scaled(p - 1);
}

Vec isotypic_project(const MatFp& delta, u64 g, u64 i, const Vec& v) { return isotypic_projector(delta, g, i).apply(v); }

MatFp norm_operator(const GaloisData& g) {
    MatFp acc(g.db, g.db, g.p), Sk = MatFp::identity(g.db, g.p);
    for (u64 k = 0; k < g.p; ++k) {
        acc = acc + Sk;
        Sk = Sk * g.S;
    }
    return acc;
}

Vec norm_map(const GaloisData& g, const Vec& big) {
    auto sol = solve_lex_least(g.I, norm_operator(g).apply(big));
    if (!sol.feasible) throw ArithmeticError("norm_map: norm does not lie in the small lattice");
    return sol.x;
}

std::optional<Vec> solve_norm(const GaloisData& g, const Vec& c_small, u64 isotypic_index) {
    MatFp N = norm_operator(g);
    MatFp E = isotypic_projector(g.D, g.g, isotypic_index) - MatFp::identity(g.db, g.p);
    MatFp A(2 * g.db, g.db, g.p);
    for (int i = 0; i < g.db; ++i)
        for (int j = 0; j < g.db; ++j) {
            A.at(i, j) = N.at(i, j);
            A.at(g.db + i, j) = E.at(i, j);
        }
    Vec b(2 * g.db, 0);
    Vec ic = g.I.apply(c_small);
    for (int i = 0; i < g.db; ++i) b[i] = ic[i];
    auto sol = solve_lex_least(A, b);
    if (!sol.feasible) return std::nullopt;
    return sol.x;
}

// ---- residues at degree-one primes ----

namespace {

// Coefficients of x reduced mod q (row-major a * p + b); nullopt if q divides a denominator.
std::optional<std::vector<u64>> coeffs_mod(const NFElem& x, u64 q) {
    const u64 p = x.p();
    std::vector<u64> out((p - 1) * p);
    for (u64 a = 0; a + 1 < p; ++a)
        for (u64 b = 0; b < p; ++b) {
            const mpq_class& c = x.coeff(static_cast<int>(a), static_cast<int>(b));
            if (c == 0) continue;
            u64 d = mod_of(c.get_den(), q);
            if (d == 0) return std::nullopt;
            out[a * p + b] = mulmod(mod_of(c.get_num(), q), invmod(d, q), q);
        }
    return out;
}

u64 eval_mod(const std::vector<u64>& c, u64 p, u64 q, u64 z, u64 m) {
    u64 acc = 0, mb = 1;
    for (u64 b = 0; b < p; ++b) {
        u64 col = 0, za = 1;
        for (u64 a = 0; a + 1 < p; ++a) {
            u64 v = c[a * p + b];
            if (v) col = addmod(col, mulmod(v, za, q), q);
            za = mulmod(za, z, q);
        }
        acc = addmod(acc, mulmod(col, mb, q), q);
        mb = mulmod(mb, m, q);
    }
    return acc;
}

struct SplitPrime {
    u64 q;
    std::vector<std::pair<u64, u64>> points;  // (z, m)
    u64 root_of_unity;                        // fixed generator of mu_p mod q
    u64 character(u64 r, u64 p) const {
        u64 t = powmod(r, (q - 1) / p, q), w = 1;
        for (u64 j = 0; j < p; ++j) {
            if (w == t) return j;
            w = mulmod(w, root_of_unity, q);
        }
        throw ArithmeticError("character: residue symbol outside mu_p");
    }
};

SplitPrime split_prime(const TripleParams& t, bool big, u64 q) {
    SplitPrime s;
    s.q = q;
    const u64 p = t.p;
    u64 h = smallest_primitive_root(q);
    s.root_of_unity = powmod(h, (q - 1) / p, q);
    std::vector<u64> zs, ms;
    for (u64 k = 1; k < p; ++k) zs.push_back(powmod(s.root_of_unity, k, q));
    if (big) {
        u64 r = 0;
        u64 l = t.ell1 % q;
        u64 lg = discrete_log(q, h, l);
        if (lg % p != 0) throw ArithmeticError("split_prime: ell1 is not a p-th power mod q");
        r = powmod(h, lg / p, q);
        for (u64 k = 0; k < p; ++k) ms.push_back(mulmod(r, powmod(s.root_of_unity, k, q), q));
        std::sort(ms.begin(), ms.end());
    } else {
        ms.push_back(0);
    }
    std::sort(zs.begin(), zs.end());
    for (u64 m : ms)
        for (u64 z : zs) s.points.emplace_back(z, m);
    return s;
}

}  // namespace

std::vector<u64> auxiliary_primes(const TripleParams& t, bool big, int count, const std::vector<mpz_class>& avoid,
                                  u64 start) {
    std::vector<u64> out;
    const u64 p = t.p;
    u64 q = std::max<u64>(start, 2 * p);
    q += (p - (q % p)) + 1;  // q = 1 mod p
    for (; static_cast<int>(out.size()) < count; q += p) {
        if (q % 2 == 0 || !is_prime(q) || q == t.ell0 || q == t.ell1) continue;
        if (big && powmod(t.ell1 % q, (q - 1) / p, q) != 1) continue;
        bool bad = false;
        for (const auto& d : avoid)
            if (mod_of(d, q) == 0) {
                bad = true;
                break;
            }
        if (!bad) out.push_back(q);
    }
    return out;
}

std::string Witness::str() const {
    std::ostringstream os;
    os << check;
    if (row >= 0) os << " row " << row;
    if (q) os << " at q=" << q;
    if (!prime.empty()) os << " prime " << prime;
    if (!detail.empty()) os << ": " << detail;
    return os.str();
}

namespace {

std::vector<mpz_class> denominators(const SeedData& s) {
    std::vector<mpz_class> d;
    for (const auto& u : s.basis_small) d.push_back(u.denominator());
    for (const auto& u : s.basis_big) d.push_back(u.denominator());
    return d;
}

std::string point_label(u64 q, u64 z, u64 m, bool big) {
    std::ostringstream os;
    os << "(" << q << ";z=" << z;
    if (big) os << ",m=" << m;
    os << ")";
    return os.str();
}

// Basis characters at the primes over one split q: chars[i][k] for basis element i, point k.
std::vector<std::vector<u64>> basis_characters(const std::vector<NFElem>& basis, const SplitPrime& sp, u64 p,
                                               bool big, std::optional<Witness>& w, const char* check) {
    std::vector<std::vector<u64>> out(basis.size());
    for (size_t i = 0; i < basis.size(); ++i) {
        auto c = coeffs_mod(basis[i], sp.q);
        if (!c) throw ArithmeticError("basis_characters: denominator meets auxiliary prime");
        for (auto [z, m] : sp.points) {
            u64 r = eval_mod(*c, p, sp.q, z, m);
            if (r == 0) {
                if (!w) w = Witness{check, static_cast<int>(i), sp.q, point_label(sp.q, z, m, big), "residue vanishes"};
                out[i].push_back(0);
                continue;
            }
            out[i].push_back(sp.character(r, p));
        }
    }
    return out;
}

size_t point_index(const SplitPrime& sp, u64 z, u64 m) {
    auto it = std::find(sp.points.begin(), sp.points.end(), std::make_pair(z, m));
    if (it == sp.points.end()) throw ArithmeticError("point_index: prime not found");
    return static_cast<size_t>(it - sp.points.begin());
}

}  // namespace

CertReport certify_seed(const SeedData& s, int trials, u64 rng_seed) {
    CertReport rep;
    rep.trials = trials;
    const u64 p = s.params.p;
    const int ds = s.dim_small(), db = s.dim_big();
    auto fail = [&](Witness w) {
        rep.witness = std::move(w);
        rep.certified = false;
        return rep;
    };
    // (d) group relations
    MatFp S = s.sigma_matrix.transpose(), D = s.delta_matrix.transpose();
    MatFp Id = MatFp::identity(db, p);
    auto first_bad_col = [&](const MatFp& A, const MatFp& B) {
        for (int j = 0; j < A.cols(); ++j)
            if (A.col(j) != B.col(j)) return j;
        return -1;
    };
    if (int r = first_bad_col(S.pow(p), Id); r >= 0) return fail({"sigma^p = 1", r, 0, "", "relation fails"});
    if (int r = first_bad_col(D.pow(p - 1), Id); r >= 0) return fail({"delta^(p-1) = 1", r, 0, "", "relation fails"});
    auto Dinv = D.inverse();
    if (!Dinv) return fail({"delta invertible", -1, 0, "", "singular matrix"});
    if (int r = first_bad_col(D * S * *Dinv, S.pow(s.delta_generator)); r >= 0)
        return fail({"delta sigma delta^-1 = sigma^g", r, 0, "", "relation fails"});
    rep.passed.push_back("group relations");

    auto dens = denominators(s);
    std::mt19937_64 rng(rng_seed);
    std::uniform_int_distribution<u64> start_dist(200, 200000);

    // (a) S-unit property and exact norms, plus ord data at ell0
    Tower tower(p, s.params.ell1);
    std::vector<long> ksmall(ds, 0), kbig(db, 0);
    for (bool big : {false, true}) {
        const auto& basis = big ? s.basis_big : s.basis_small;
        auto& ks = big ? kbig : ksmall;
        for (const auto& P : primes_above(tower, big, s.params.ell0))
            for (size_t i = 0; i < basis.size(); ++i) ks[i] += valuation_at(basis[i], P) * P.f;
    }
    {
        auto qs = auxiliary_primes(s.params, true, 30, dens, start_dist(rng));
        for (u64 q : qs) {
            for (bool big : {false, true}) {
                const auto& basis = big ? s.basis_big : s.basis_small;
                auto sp = split_prime(s.params, big, q);
                for (size_t i = 0; i < basis.size(); ++i) {
                    auto c = coeffs_mod(basis[i], q);
                    u64 prod = 1;
                    for (auto [z, m] : sp.points) {
                        u64 r = eval_mod(*c, p, q, z, m);
                        if (r == 0)
                            return fail({big ? "S-unit (big)" : "S-unit (small)", static_cast<int>(i), q,
                                         point_label(q, z, m, big), "valuation nonzero outside S"});
                        prod = mulmod(prod, r, q);
                    }
                    long k = big ? kbig[i] : ksmall[i];
                    u64 want = k >= 0 ? powmod(s.params.ell0 % q, static_cast<u64>(k), q)
                                      : invmod(powmod(s.params.ell0 % q, static_cast<u64>(-k), q), q);
                    if (prod != want)
                        return fail({big ? "norm (big)" : "norm (small)", static_cast<int>(i), q, "",
                                     "absolute norm is not a power of ell0"});
                }
            }
        }
    }
    rep.passed.push_back("S-unit residues and norms at 30 primes");

    // (b), (c) Galois and inclusion rows
    auto qs = auxiliary_primes(s.params, true, trials, dens, start_dist(rng));
    std::vector<std::vector<std::vector<u64>>> chb, chs;
    std::vector<SplitPrime> sps;
    for (u64 q : qs) {
        std::optional<Witness> w;
        auto sp = split_prime(s.params, true, q);
        auto cb = basis_characters(s.basis_big, sp, p, true, w, "S-unit (big)");
        auto cs = basis_characters(s.basis_small, sp, p, true, w, "S-unit (small)");
        if (w) return fail(*w);
        sps.push_back(sp);
        chb.push_back(cb);
        chs.push_back(cs);
    }
    const u64 g = s.delta_generator;
    for (size_t t = 0; t < sps.size(); ++t) {
        const auto& sp = sps[t];
        const u64 q = sp.q;
        for (size_t k = 0; k < sp.points.size(); ++k) {
            auto [z, m] = sp.points[k];
            size_t ks = point_index(sp, z, mulmod(z, m, q));
            size_t kd = point_index(sp, powmod(z, g, q), m);
            for (int i = 0; i < db; ++i) {
                u64 lhs_s = chb[t][i][ks], lhs_d = chb[t][i][kd];
                u64 rs = 0, rd = 0;
                for (int j = 0; j < db; ++j) {
                    rs += s.sigma_matrix.at(i, j) * chb[t][j][k];
                    rd += s.delta_matrix.at(i, j) * chb[t][j][k];
                }
                if (lhs_s != rs % p)
                    return fail({"sigma row", i, q, point_label(q, z, m, true), "sigma(u_i) / prod u_j^m_ij is not a p-th power"});
                if (lhs_d != rd % p)
                    return fail({"delta row", i, q, point_label(q, z, m, true), "delta(u_i) / prod u_j^m_ij is not a p-th power"});
            }
            for (int i = 0; i < ds; ++i) {
                u64 r = 0;
                for (int j = 0; j < db; ++j) r += s.inclusion_matrix.at(i, j) * chb[t][j][k];
                if (chs[t][i][k] != r % p)
                    return fail({"inclusion row", i, q, point_label(q, z, m, true), "u_i / prod v_j^m_ij is not a p-th power"});
            }
        }
    }
    rep.passed.push_back("sigma, delta and inclusion rows at " + std::to_string(trials) + " primes");

    // independence of the bases modulo p-th powers; extra primes only when the sampled ones fall short of full rank
    std::vector<u64> extra;
    for (bool big : {false, true}) {
        const auto& basis = big ? s.basis_big : s.basis_small;
        const int d = static_cast<int>(basis.size());
        std::vector<Vec> cols;
        for (const auto& P : primes_above(tower, big, s.params.ell0)) {
            Vec v(d);
            for (int i = 0; i < d; ++i) {
                long o = valuation_at(basis[i], P);
                v[i] = static_cast<u64>(((o % static_cast<long>(p)) + static_cast<long>(p)) % static_cast<long>(p));
            }
            cols.push_back(v);
        }
        auto add_chars = [&](const SplitPrime& sp, const std::vector<std::vector<u64>>& ch) {
            for (size_t k = 0; k < sp.points.size(); ++k) {
                Vec v(d);
                for (int i = 0; i < d; ++i) v[i] = ch[i][k];
                cols.push_back(v);
            }
        };
        auto rank = [&] {
            MatFp M(d, static_cast<int>(cols.size()), p);
            for (size_t c = 0; c < cols.size(); ++c)
                for (int i = 0; i < d; ++i) M.at(i, static_cast<int>(c)) = cols[c][i];
            return M.rank();
        };
        for (size_t t = 0; t < sps.size(); ++t) add_chars(sps[t], big ? chb[t] : chs[t]);
        if (rank() != d) {
            if (extra.empty()) extra = auxiliary_primes(s.params, true, 4 * d, dens, start_dist(rng));
            for (u64 q : extra) {
                std::optional<Witness> w;
                auto sp = split_prime(s.params, true, q);
                auto ch = basis_characters(basis, sp, p, true, w, big ? "S-unit (big)" : "S-unit (small)");
                if (w) return fail(*w);
                add_chars(sp, ch);
                if (rank() == d) break;
            }
        }
        if (rank() != d)
            return fail({big ? "independence (big)" : "independence (small)", -1, 0, "",
                         "basis is dependent modulo p-th powers on sampled characters"});
    }
    rep.passed.push_back("basis independence");
    rep.certified = true;
    rep.heuristic_error = std::pow(static_cast<double>(p), -static_cast<double>(trials));
    return rep;
}

// ---- context ----

LocalRing::Elem PAdicImages::product(size_t prime, const Vec& x) const {
    const LocalRing& R = rings[prime];
    LocalRing::Elem acc = R.one();
    for (size_t i = 0; i < x.size(); ++i)
        if (x[i]) acc = R.mul(acc, R.pow(images[prime][i], mpz_class(static_cast<unsigned long>(x[i]))));
    return acc;
}

u64 ord_at(const Ell0Table& t, size_t prime, const Vec& x, u64 p) {
    u64 s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * t.ord.at(static_cast<int>(i), static_cast<int>(prime));
    return s % p;
}

u64 log_at(const Ell0Table& t, size_t prime, const Vec& x, u64 p) {
    u64 s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * t.log.at(static_cast<int>(i), static_cast<int>(prime));
    return s % p;
}

namespace {

u64 modp(long v, u64 p) {
    long r = v % static_cast<long>(p);
    return static_cast<u64>(r < 0 ? r + static_cast<long>(p) : r);
}

Ell0Table ell0_table(const Tower& t, const MTData& mt, bool big, const std::vector<NFElem>& basis) {
    Ell0Table tab;
    tab.primes = primes_above(t, big, mt.ell0);
    const int d = static_cast<int>(basis.size()), n = static_cast<int>(tab.primes.size());
    tab.ord = MatFp(d, n, t.p);
    tab.log = MatFp(d, n, t.p);
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < n; ++k) {
            auto ol = ord_and_residue(basis[i], tab.primes[k]);
            tab.ord.at(i, k) = modp(ol.ord, t.p);
            tab.log.at(i, k) = mt.log_mod_p(ol.residue);
        }
    return tab;
}

PAdicImages padic_images(const Tower& t, bool big, const std::vector<NFElem>& basis) {
    PAdicImages im;
    im.primes = primes_above(t, big, t.p);
    const int p = static_cast<int>(t.p);
    for (const auto& P : im.primes) {
        LocalField L = local_field_at(t, P);
        int N = big ? (L.e == p * (p - 1) ? p * p : p) : p + 1;
        LocalRing R(t.p, L.eisenstein, N);
        std::vector<LocalRing::Elem> imgs;
        for (const auto& u : basis) {
            auto x = embed(L, R, u);
            if (R.residue(x) == 0) throw SeedError("seed: basis element is not a unit above p");
            imgs.push_back(x);
        }
        im.fields.push_back(L);
        im.rings.push_back(R);
        im.images.push_back(std::move(imgs));
    }
    return im;
}

}  // namespace

Vec element_characters(const SUnitContext& ctx, bool big, const NFElem& x) {
    const u64 p = ctx.tower.p;
    const Ell0Table& tab = big ? ctx.ell0_big : ctx.ell0_small;
    Vec v;
    for (const auto& P : tab.primes) {
        auto ol = ord_and_residue(x, P);
        v.push_back(modp(ol.ord, p));
        v.push_back(ctx.mt.log_mod_p(ol.residue));
    }
    for (const auto& P : big ? ctx.aux_big : ctx.aux_small) v.push_back(pth_power_character(x, P));
    return v;
}

std::optional<Vec> solve_coordinates(const SUnitContext& ctx, bool big, const NFElem& x) {
    const MatFp& X = big ? ctx.chars_big : ctx.chars_small;
    auto sol = solve_lex_least(X.transpose(), element_characters(ctx, big, x));
    if (!sol.feasible) return std::nullopt;
    if (!sol.kernel.empty()) throw ArithmeticError("solve_coordinates: character table is not injective");
    return sol.x;
}

SUnitContext build_context(const SeedData& s) {
    SUnitContext ctx;
    ctx.seed = s;
    const u64 p = s.params.p;
    ctx.tower = Tower(p, s.params.ell1);
    if (ctx.tower.g != s.delta_generator) throw SeedError("seed: delta_generator differs from the smallest primitive root");
    ctx.mt = mt_data(p, s.params.ell0);
    ctx.gal = galois_data(s);
    ctx.ell0_small = ell0_table(ctx.tower, ctx.mt, false, s.basis_small);
    ctx.ell0_big = ell0_table(ctx.tower, ctx.mt, true, s.basis_big);
    ctx.padic_small = padic_images(ctx.tower, false, s.basis_small);
    ctx.padic_big = padic_images(ctx.tower, true, s.basis_big);

    ctx.ell1_primes = primes_above(ctx.tower, true, s.params.ell1);
    ctx.ell1_chars = MatFp(s.dim_big(), static_cast<int>(ctx.ell1_primes.size()), p);
    for (int i = 0; i < s.dim_big(); ++i)
        for (size_t k = 0; k < ctx.ell1_primes.size(); ++k)
            ctx.ell1_chars.at(i, static_cast<int>(k)) = pth_power_character(s.basis_big[i], ctx.ell1_primes[k]);

    auto dens = denominators(s);
    dens.push_back(mpz_class(static_cast<unsigned long>(p)));
    for (bool big : {false, true}) {
        auto qs = auxiliary_primes(s.params, big, big ? 3 : 6, dens, 100);
        auto& aux = big ? ctx.aux_big : ctx.aux_small;
        for (u64 q : qs)
            for (auto& P : primes_above(ctx.tower, big, q)) aux.push_back(P);
        const auto& basis = big ? s.basis_big : s.basis_small;
        std::vector<Vec> rows;
        for (const auto& u : basis) rows.push_back(element_characters(ctx, big, u));
        MatFp X(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()), p);
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t k = 0; k < rows[i].size(); ++k) X.at(static_cast<int>(i), static_cast<int>(k)) = rows[i][k];
        if (X.rank() != static_cast<int>(basis.size()))
            throw SeedError(std::string("seed: ") + (big ? "big" : "small") + " basis characters are dependent");
        (big ? ctx.chars_big : ctx.chars_small) = X;
        auto& names = big ? ctx.char_names_big : ctx.char_names_small;
        for (const auto& P : (big ? ctx.ell0_big : ctx.ell0_small).primes) {
            names.push_back("ord" + P.label());
            names.push_back("log" + P.label());
        }
        for (const auto& P : aux) names.push_back("chi" + P.label());
    }

    auto need = [](std::optional<Vec> v, const char* what) {
        if (!v) throw SeedError(std::string("seed: ") + what + " is not in the span of the basis");
        return *v;
    };
    ctx.zeta_s = need(solve_coordinates(ctx, false, NFElem::zeta(p, s.params.ell1)), "zeta (small)");
    ctx.zeta_b = need(solve_coordinates(ctx, true, NFElem::zeta(p, s.params.ell1)), "zeta (big)");
    ctx.ell0_s = need(solve_coordinates(ctx, false, NFElem::integer(p, s.params.ell1, s.params.ell0)), "ell0 (small)");
    ctx.ell0_b = need(solve_coordinates(ctx, true, NFElem::integer(p, s.params.ell1, s.params.ell0)), "ell0 (big)");
    if (ctx.gal.I.apply(ctx.zeta_s) != ctx.zeta_b || ctx.gal.I.apply(ctx.ell0_s) != ctx.ell0_b)
        throw SeedError("seed: inclusion matrix disagrees with the coordinates of zeta or ell0");
    if (tame_or_wild(p, s.params.ell1) == Ramification::Wild)
        ctx.p_b = solve_coordinates(ctx, true, NFElem::integer(p, s.params.ell1, p));
    return ctx;
}

CAndA0 find_c_and_a0(const SUnitContext& ctx) {
    const u64 p = ctx.tower.p, g = ctx.gal.g;
    const int ip = static_cast<int>(p);
    CAndA0 out;
    const LocalRing& R = ctx.padic_small.rings.at(0);
    auto V2 = column_space(isotypic_projector(ctx.gal.Ds, g, 2));
    for (const auto& x : enumerate_lines(V2, p)) {
        if (is_pth_power_mod(R, ctx.padic_small.product(0, x), ip + 1)) {
            ++out.c_candidates;
            out.c = x;
        }
    }
    auto V1 = column_space(isotypic_projector(ctx.gal.Ds, g, 1));
    for (const auto& x : enumerate_lines(V1, p)) {
        if (!is_pth_power_mod(R, ctx.padic_small.product(0, x), ip)) continue;
        bool ramified = false;
        for (size_t k = 0; k < ctx.ell0_small.primes.size(); ++k)
            if (ord_at(ctx.ell0_small, k, x, p) != 0) ramified = true;
        if (!ramified) continue;
        ++out.a0_candidates;
        out.a0 = x;
    }
    if (out.c_candidates != 1)
        throw ArithmeticError("find_c_and_a0: expected one line for c, found " + std::to_string(out.c_candidates));
    if (out.a0_candidates != 1)
        throw ArithmeticError("find_c_and_a0: expected one line for a0, found " + std::to_string(out.a0_candidates));
    return out;
}

}  // namespace kummer
