// sunitlat.hpp - S-unit exponent lattices mod p, seed data, certification, Galois action.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "kummer/padic.hpp"

namespace kummer {

using Vec = std::vector<u64>;

class MatFp {
public:
    MatFp() = default;
    MatFp(int rows, int cols, u64 p);
    static MatFp identity(int n, u64 p);

    int rows() const { return r_; }
    int cols() const { return c_; }
    u64 p() const { return p_; }
    u64& at(int i, int j) { return d_[static_cast<size_t>(i) * c_ + j]; }
    u64 at(int i, int j) const { return d_[static_cast<size_t>(i) * c_ + j]; }
    Vec row(int i) const;
    Vec col(int j) const;

    MatFp operator*(const MatFp& o) const;
    MatFp operator+(const MatFp& o) const;
    MatFp operator-(const MatFp& o) const;
    MatFp scaled(u64 c) const;
    bool operator==(const MatFp& o) const { return r_ == o.r_ && c_ == o.c_ && d_ == o.d_; }
    bool operator!=(const MatFp& o) const { return !(*this == o); }
    MatFp transpose() const;
    MatFp pow(u64 e) const;
    Vec apply(const Vec& v) const;  // M v
    int rank() const;
    std::optional<MatFp> inverse() const;
    bool is_zero() const;

private:
    int r_ = 0, c_ = 0;
    u64 p_ = 0;
    std::vector<u64> d_;
};

Vec vadd(const Vec& a, const Vec& b, u64 p);
Vec vsub(const Vec& a, const Vec& b, u64 p);
Vec vscale(const Vec& a, u64 c, u64 p);
Vec vzero(int n);
bool vis_zero(const Vec& a);
Vec vunit(int n, int i);
// Scales so that the first nonzero coordinate is 1.
Vec normalize_line(const Vec& a, u64 p);

// Basis of {x : A x = 0} in reduced echelon form.
std::vector<Vec> nullspace(const MatFp& A);
// Basis of the column space.
std::vector<Vec> column_space(const MatFp& A);
struct LinearSolution {
    bool feasible = false;
    Vec x;                      // lexicographically least solution
    std::vector<Vec> kernel;    // echelon kernel basis
};
LinearSolution solve_lex_least(const MatFp& A, const Vec& b);
// Projective points of the span of the given basis, each normalized.
std::vector<Vec> enumerate_lines(const std::vector<Vec>& basis, u64 p);

struct SeedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Matrices use the file convention: row i holds the coordinates of the image of basis element i.
struct SeedData {
    int schema_version = 1;
    TripleParams params;
    u64 delta_generator = 0;
    int rank_small = 0, rank_big = 0;
    std::vector<NFElem> basis_small, basis_big;
    MatFp sigma_matrix, delta_matrix, inclusion_matrix;
    bool class_number_coprime = true;
    int dim_small() const { return rank_small + 1; }
    int dim_big() const { return rank_big + 1; }
};

constexpr int kSchemaVersion = 1;
SeedData parse_seed(const nlohmann::json& j);
SeedData load_seed(const std::string& path);
nlohmann::json seed_to_json(const SeedData& s);
std::string seed_filename(const TripleParams& t);

// Galois data in column convention: v -> M v.
struct GaloisData {
    u64 p = 0, g = 0;
    int ds = 0, db = 0;
    MatFp S, D;   // sigma, delta on the big lattice
    MatFp Ds;     // delta on the small lattice
    MatFp I;      // inclusion, db x ds
};
GaloisData galois_data(const SeedData& s);

// Word over {'s','d','S','D'} (capitals are inverses), applied as the matrix product in order.
Vec apply_galois(const GaloisData& g, const std::string& word, const Vec& v);
MatFp isotypic_projector(const MatFp& delta, u64 g, u64 i);
Vec isotypic_project(const MatFp& delta, u64 g, u64 i, const Vec& v);
MatFp norm_operator(const GaloisData& g);  // sum of sigma^k on the big lattice
Vec norm_map(const GaloisData& g, const Vec& big);
// Lex-least gamma with norm(gamma) = c and gamma in the omega^i part; nullopt if infeasible.
std::optional<Vec> solve_norm(const GaloisData& g, const Vec& c_small, u64 isotypic_index);

struct Witness {
    std::string check;
    int row = -1;
    u64 q = 0;
    std::string prime;
    std::string detail;
    std::string str() const;
};

struct CertReport {
    bool certified = false;
    int trials = 0;
    std::vector<std::string> passed;
    std::optional<Witness> witness;
    double heuristic_error = 0;
};

CertReport certify_seed(const SeedData& s, int trials = 20, u64 rng_seed = 1);

// Auxiliary primes q = 1 mod p with every prime of the field above q of degree one,
// coprime to the given denominators.
std::vector<u64> auxiliary_primes(const TripleParams& t, bool big, int count, const std::vector<mpz_class>& avoid,
                                  u64 start = 0);

// Per-basis local data used by the pipeline.
struct Ell0Table {
    std::vector<PrimeData> primes;
    MatFp ord;  // d x #primes, valuations mod p
    MatFp log;  // d x #primes, discrete logs of unit parts mod p
};

struct PAdicImages {
    std::vector<PrimeData> primes;
    std::vector<LocalField> fields;
    std::vector<LocalRing> rings;
    std::vector<std::vector<LocalRing::Elem>> images;  // [prime][basis element]
    LocalRing::Elem product(size_t prime, const Vec& x) const;
};

struct SUnitContext {
    SeedData seed;
    Tower tower;
    MTData mt;
    GaloisData gal;
    Ell0Table ell0_small, ell0_big;
    PAdicImages padic_small, padic_big;
    std::vector<PrimeData> ell1_primes;
    MatFp ell1_chars;  // db x #primes over ell1
    MatFp chars_small, chars_big;  // basis character tables used for solving
    std::vector<std::string> char_names_small, char_names_big;
    std::vector<PrimeData> aux_small, aux_big;
    Vec zeta_s, zeta_b, ell0_s, ell0_b;
    std::optional<Vec> p_b;
};

SUnitContext build_context(const SeedData& s);
// Character vector of a field element on the context's character table.
Vec element_characters(const SUnitContext& ctx, bool big, const NFElem& x);
// Coordinates of x modulo p-th powers, if x lies in the span of the basis.
std::optional<Vec> solve_coordinates(const SUnitContext& ctx, bool big, const NFElem& x);

struct CAndA0 {
    Vec c;   // small coordinates, omega^2 part, split at (1 - zeta)
    Vec a0;  // small coordinates, omega part, unramified at p, ramified at ell0
    int c_candidates = 0, a0_candidates = 0;
};
CAndA0 find_c_and_a0(const SUnitContext& ctx);

// ord and log at a prime over ell0, for a coordinate vector.
u64 ord_at(const Ell0Table& t, size_t prime, const Vec& x, u64 p);
u64 log_at(const Ell0Table& t, size_t prime, const Vec& x, u64 p);

}  // namespace kummer
