#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>

#include "kummer/pipeline.hpp"

using namespace kummer;

namespace {

std::string seed_path(u64 p, u64 l0, u64 l1) {
    return std::string(KUMMER_DATA_DIR) + "/seeds/" + seed_filename({p, l0, l1});
}

// Conjugate of a direct sum of regular representations of C_p and trivial blocks.
MatFp random_sigma(u64 p, int regular_blocks, int trivial, std::mt19937_64& rng) {
    const int n = regular_blocks * static_cast<int>(p) + trivial;
    MatFp s = MatFp::identity(n, p);
    for (int b = 0; b < regular_blocks; ++b) {
        int o = b * static_cast<int>(p);
        for (int i = 0; i < static_cast<int>(p); ++i) {
            s.at(o + i, o + i) = 0;
            s.at(o + (i + 1) % static_cast<int>(p), o + i) = 1;
        }
    }
    for (;;) {
        MatFp c(n, n, p);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) c.at(i, j) = rng() % p;
        if (auto ci = c.inverse()) return c * s * *ci;
    }
}

const SUnitContext& context(u64 l1) {
    static std::map<u64, SUnitContext> cache;
    auto it = cache.find(l1);
    if (it == cache.end()) it = cache.emplace(l1, build_context(load_seed(seed_path(5, 11, l1)))).first;
    return it->second;
}

}  // namespace

TEST_CASE("Kolyvagin identity on random sigma") {
    std::mt19937_64 rng(17);
    for (u64 p : {5ull, 7ull}) {
        for (int t = 0; t < 10; ++t) {
            MatFp S = random_sigma(p, 1 + static_cast<int>(rng() % 3), static_cast<int>(rng() % 3), rng);
            const int n = S.rows();
            MatFp N = kolyvagin_matrix(0, S), D1 = kolyvagin_matrix(1, S);
            MatFp Id = MatFp::identity(n, p);
            CHECK((S - Id) * D1 == N.scaled(p - 1));
            MatFp sum(n, n, p), Sj = Id;
            for (u64 j = 0; j < p; ++j) {
                sum = sum + Sj;
                Sj = Sj * S;
            }
            CHECK(N == sum);
            for (const auto& v : nullspace(S - Id)) CHECK(vis_zero(D1.apply(v)));
        }
    }
}

TEST_CASE("candidates") {
    const auto& ctx = context(23);
    auto zero = candidates(ctx.gal, vzero(ctx.gal.db));
    CHECK(vis_zero(zero.a1_cand));
    CHECK(vis_zero(zero.b2_cand));
    auto ca = find_c_and_a0(ctx);
    auto gamma = solve_norm(ctx.gal, ca.c, 2);
    REQUIRE(gamma.has_value());
    CHECK(norm_map(ctx.gal, *gamma) == ca.c);
    auto cand = candidates(ctx.gal, *gamma);
    CHECK(!vis_zero(cand.a1_cand));
    CHECK(isotypic_project(ctx.gal.D, ctx.gal.g, 1, cand.a1_cand) == cand.a1_cand);
}

TEST_CASE("evaluation functional on ell0") {
    const auto& ctx = context(23);
    for (size_t k = 0; k < ctx.ell0_big.primes.size(); ++k)
        CHECK(evaluation_functional(ctx, k, ctx.ell0_b) == ctx.mt.zeta_mt);
    CHECK(condition_ii(ctx, vzero(ctx.gal.db), 0));
}

TEST_CASE("wild example (5,11,23)") {
    const auto& ctx = context(23);
    auto r = run_pipeline(ctx);
    CHECK(r.ramification == Ramification::Wild);
    CHECK(r.cond_i);
    REQUIRE(r.cond_ii.has_value());
    CHECK_FALSE(*r.cond_ii);
    CHECK(r.n_ell0 == 250);
    CHECK(r.conclusion() == "R = T");
    CHECK(r.idempotent());
    auto split = ell0_split_set(ctx, r.a1);
    CHECK(split.size() == 4);
    CHECK(is_single_orbit(ctx, split));
    CHECK(isotypic_project(ctx.gal.D, ctx.gal.g, 0, r.b2) == r.b2);
    CHECK(isotypic_project(ctx.gal.D, ctx.gal.g, 1, r.a1) == r.a1);
}

TEST_CASE("tame example (5,11,43)") {
    const auto& ctx = context(43);
    auto r = run_pipeline(ctx);
    CHECK(r.ramification == Ramification::Tame);
    CHECK(r.k == 0);
    CHECK(r.cond_i);
    CHECK(r.cond_ii.value_or(false));
    CHECK(r.n_ell0 == 500);
    CHECK(r.conclusion() == "dim > 3");
    CHECK(r.idempotent());
}

TEST_CASE("report serialization is deterministic") {
    const auto& ctx = context(23);
    auto a = report_to_json(run_pipeline(ctx));
    auto b = report_to_json(run_pipeline(ctx));
    CHECK(a.dump() == b.dump());
    CHECK(a["conclusion"] == "R = T");
    CHECK(a["n_ell0"] == 250);
    CHECK(a["vectors"]["a1"].size() == 30);
    auto row = table_row(run_pipeline(ctx));
    CHECK(row.find("wild") != std::string::npos);
    CHECK(row.find("no") != std::string::npos);
}
