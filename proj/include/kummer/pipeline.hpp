// pipeline.hpp - construction of a1 and b2 on K and the two splitting conditions.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kummer/orbits.hpp"
#include "kummer/sunitlat.hpp"

namespace kummer {

// sum_j binom(j, order) sigma^j.
MatFp kolyvagin_matrix(int order, const MatFp& sigma);

struct Candidates {
    Vec a1_cand;  // D1 gamma
    Vec b2_cand;  // 2 D2 gamma + D1 gamma
};
Candidates candidates(const GaloisData& g, const Vec& gamma);

struct A1Adjustment {
    u64 i = 0, j = 0;
    size_t L0 = 0;             // index into ctx.ell0_big.primes
    std::vector<size_t> split;  // primes over ell0 split by a1
    Vec a1;
};

// i values making a1_cand + i[zeta] unramified above p.
std::vector<u64> alg1_candidates(const SUnitContext& ctx, const Vec& a1_cand);
// Primes over ell0 at which the big vector is a p-th power.
std::vector<size_t> ell0_split_set(const SUnitContext& ctx, const Vec& x);
// True when the set is exactly one Delta-orbit.
bool is_single_orbit(const SUnitContext& ctx, const std::vector<size_t>& split);
// t values whose split set is exactly one Delta-orbit.
std::vector<u64> alg2_candidates(const SUnitContext& ctx, const Vec& a1_partial, const Vec& a0_big);
A1Adjustment adjust_a1(const SUnitContext& ctx, const Vec& a1_cand, const Vec& a0_small);

bool condition_i(const SUnitContext& ctx, const Vec& a1);

// zeta' ord + log at one prime over ell0.
u64 evaluation_functional(const SUnitContext& ctx, size_t prime, const Vec& y);

struct B2Construction {
    Vec xi, b2_tilde, b2;
    u64 k = 0, m = 0;
    bool alg3_skipped = false;
};
// k values with b2_tilde + k[p] a p-th power modulo p^(2(p-1)); empty if not applicable.
std::vector<u64> alg3_candidates(const SUnitContext& ctx, const Vec& b2_tilde);
B2Construction build_b2(const SUnitContext& ctx, const Vec& gamma, const Vec& a1, const Vec& a1_adj_small,
                        size_t L0);

bool condition_ii(const SUnitContext& ctx, const Vec& b2, size_t L0);

struct IdempotenceCheck {
    std::string name;
    bool passed = false;
};

struct PipelineReport {
    TripleParams params;
    Ramification ramification = Ramification::Wild;
    u64 ell0_generator = 0;
    u64 zeta_mt = 0;
    u64 i = 0, j = 0, k = 0, m = 0;
    bool alg3_skipped = false;
    std::string L0;
    bool cond_i = false;
    std::optional<bool> cond_ii;
    u64 n_ell0 = 0;
    bool dim_gt_3 = false;
    std::vector<IdempotenceCheck> checks;
    Vec c, a0, gamma, a1_cand, b2_cand, a1, xi, b2_tilde, b2;
    double seconds = 0;

    std::string conclusion() const { return dim_gt_3 ? "dim > 3" : "R = T"; }
    bool alpha2_beta_zero() const { return dim_gt_3; }
    bool idempotent() const;
};

struct PipelineError : std::runtime_error {
    PipelineError(const std::string& stage, const std::string& what)
        : std::runtime_error(stage + ": " + what), stage(stage) {}
    std::string stage;
};

PipelineReport run_pipeline(const SUnitContext& ctx);
PipelineReport run_pipeline(const SeedData& seed);

constexpr int kReportSchemaVersion = 1;
nlohmann::json report_to_json(const PipelineReport& r);
std::string table_header();
std::string table_row(const PipelineReport& r);

}  // namespace kummer
