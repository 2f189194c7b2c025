#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "kummer/sunitlat.hpp"

using namespace kummer;

namespace {

std::string seed_path(u64 p, u64 l0, u64 l1) {
    return std::string(KUMMER_DATA_DIR) + "/seeds/" + seed_filename({p, l0, l1});
}

MatFp random_matrix(int r, int c, u64 p, std::mt19937_64& rng) {
    MatFp m(r, c, p);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = rng() % p;
    return m;
}

// Regular representation of the cyclic group of order p-1 acting by a cyclic shift.
MatFp regular_delta(u64 p) {
    int n = static_cast<int>(p - 1);
    MatFp d(n, n, p);
    for (int i = 0; i < n; ++i) d.at((i + 1) % n, i) = 1;
    return d;
}

void check_projectors(const MatFp& D, u64 g) {
    const u64 p = D.p();
    const int n = D.rows();
    MatFp sum(n, n, p);
    std::vector<MatFp> e;
    for (u64 i = 0; i + 1 < p; ++i) e.push_back(isotypic_projector(D, g, i));
    for (u64 i = 0; i + 1 < p; ++i) {
        CHECK(e[i] * e[i] == e[i]);
        CHECK(D * e[i] == e[i].scaled(powmod(g, i, p)));
        for (u64 j = 0; j + 1 < p; ++j)
            if (j != i) CHECK((e[i] * e[j]).is_zero());
        sum = sum + e[i];
    }
    CHECK(sum == MatFp::identity(n, p));
}

}  // namespace

TEST_CASE("matrix basics") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        MatFp a = random_matrix(4, 4, 7, rng);
        auto inv = a.inverse();
        CHECK((inv.has_value() == (a.rank() == 4)));
        if (inv) CHECK(a * *inv == MatFp::identity(4, 7));
        CHECK(a.transpose().transpose() == a);
        CHECK(a.pow(3) == a * a * a);
    }
}

TEST_CASE("lex-least solutions agree with enumeration") {
    std::mt19937_64 rng(11);
    const u64 p = 3;
    for (int t = 0; t < 200; ++t) {
        MatFp A = random_matrix(3, 4, p, rng);
        for (int j = 0; j < 4; ++j)
            if (rng() % 3 == 0)
                for (int i = 0; i < 3; ++i) A.at(i, j) = A.at(i, 0);
        Vec b = {rng() % p, rng() % p, rng() % p};
        std::optional<Vec> best;
        for (u64 k = 0; k < 81; ++k) {
            Vec x = {k / 27, (k / 9) % 3, (k / 3) % 3, k % 3};
            if (A.apply(x) == b && (!best || x < *best)) best = x;
        }
        auto sol = solve_lex_least(A, b);
        REQUIRE(sol.feasible == best.has_value());
        if (best) CHECK(sol.x == *best);
        if (sol.feasible) CHECK(static_cast<int>(sol.kernel.size()) == 4 - A.rank());
        for (const auto& k : sol.kernel) CHECK(vis_zero(A.apply(k)));
    }
}

TEST_CASE("line enumeration") {
    auto lines = enumerate_lines({{1, 0, 0}, {0, 1, 0}}, 5);
    CHECK(lines.size() == 6);
    for (const auto& l : lines) CHECK(normalize_line(l, 5) == l);
}

TEST_CASE("isotypic projectors") {
    check_projectors(regular_delta(5), 2);
    check_projectors(regular_delta(7), 3);
    std::mt19937_64 rng(5);
    // conjugated regular representations
    for (u64 p : {5ull, 7ull}) {
        MatFp D = regular_delta(p);
        for (int t = 0; t < 5; ++t) {
            MatFp C = random_matrix(D.rows(), D.rows(), p, rng);
            auto Ci = C.inverse();
            if (!Ci) continue;
            check_projectors(C * D * *Ci, smallest_primitive_root(p));
        }
    }
    auto s = load_seed(seed_path(5, 11, 23));
    auto g = galois_data(s);
    check_projectors(g.D, g.g);
    check_projectors(g.Ds, g.g);
}

TEST_CASE("seed parsing") {
    auto s = load_seed(seed_path(5, 11, 23));
    CHECK(s.params.p == 5);
    CHECK(s.dim_big() == static_cast<int>(s.basis_big.size()));
    auto j = seed_to_json(s);
    auto s2 = parse_seed(j);
    CHECK(s2.sigma_matrix == s.sigma_matrix);
    CHECK(s2.basis_big == s.basis_big);
    auto bad = j;
    bad["schema_version"] = 2;
    CHECK_THROWS_AS(parse_seed(bad), SeedError);
    bad = j;
    bad.erase("sigma_matrix");
    CHECK_THROWS_AS(parse_seed(bad), SeedError);
    bad = j;
    bad["sigma_matrix"][0][0] = 7;
    CHECK_THROWS_AS(parse_seed(bad), SeedError);
    bad = j;
    bad["class_number_coprime"] = false;
    CHECK_THROWS_WITH_AS(parse_seed(bad), doctest::Contains("class-number gate"), SeedError);
    CHECK_THROWS_AS(load_seed("/nonexistent/seed.json"), SeedError);
}

TEST_CASE("galois action on the lattice") {
    auto s = load_seed(seed_path(5, 11, 23));
    auto g = galois_data(s);
    const u64 p = g.p;
    CHECK(g.S.pow(p) == MatFp::identity(g.db, p));
    CHECK(g.D.pow(p - 1) == MatFp::identity(g.db, p));
    CHECK(g.D * g.I == g.I * g.Ds);
    // sigma fixes the image of the small lattice
    CHECK(g.S * g.I == g.I);
    Vec v(g.db, 0);
    v[3] = 2;
    CHECK(apply_galois(g, "sS", v) == v);
    CHECK(apply_galois(g, "dD", v) == v);
    // (sigma - 1) D^1 = -N on the big lattice
    MatFp D1(g.db, g.db, p), Sj = MatFp::identity(g.db, p);
    for (u64 j = 0; j < p; ++j) {
        D1 = D1 + Sj.scaled(j);
        Sj = Sj * g.S;
    }
    MatFp Id = MatFp::identity(g.db, p);
    CHECK((g.S - Id) * D1 == norm_operator(g).scaled(p - 1));
}

TEST_CASE("norm equations") {
    auto s = load_seed(seed_path(5, 11, 23));
    auto g = galois_data(s);
    std::mt19937_64 rng(9);
    int solved = 0;
    for (int t = 0; t < 20; ++t) {
        Vec c(g.ds);
        for (auto& x : c) x = rng() % g.p;
        for (u64 i = 0; i + 1 < g.p; ++i) {
            Vec ci = isotypic_project(g.Ds, g.g, i, c);
            auto gam = solve_norm(g, ci, i);
            if (!gam) continue;
            ++solved;
            CHECK(norm_map(g, *gam) == ci);
            CHECK(isotypic_project(g.D, g.g, i, *gam) == *gam);
        }
    }
    CHECK(solved > 0);
}

TEST_CASE("certification accepts a genuine seed") {
    auto s = load_seed(seed_path(5, 11, 23));
    auto rep = certify_seed(s, 20, 1);
    INFO((rep.witness ? rep.witness->str() : std::string("")));
    CHECK(rep.certified);
    CHECK(rep.passed.size() >= 4);
}

TEST_CASE("certification refutes single-coordinate mutations") {
    auto s = load_seed(seed_path(5, 11, 23));
    std::mt19937_64 rng(2024);
    int refuted = 0;
    std::set<std::string> checks;
    for (int t = 0; t < 100; ++t) {
        SeedData m = s;
        int which = static_cast<int>(rng() % 3);
        MatFp& M = which == 0 ? m.sigma_matrix : which == 1 ? m.delta_matrix : m.inclusion_matrix;
        int i = static_cast<int>(rng() % M.rows()), j = static_cast<int>(rng() % M.cols());
        M.at(i, j) = (M.at(i, j) + 1 + rng() % (s.params.p - 1)) % s.params.p;
        auto rep = certify_seed(m, 10, t + 1);
        if (!rep.certified && rep.witness) {
            ++refuted;
            checks.insert(rep.witness->check);
            CHECK(!rep.witness->check.empty());
        }
    }
    CHECK(refuted == 100);
    CHECK(checks.size() >= 2);
}

TEST_CASE("context and distinguished lines") {
    auto s = load_seed(seed_path(5, 11, 23));
    auto ctx = build_context(s);
    CHECK(ctx.p_b.has_value());
    auto r = find_c_and_a0(ctx);
    CHECK(r.c_candidates == 1);
    CHECK(r.a0_candidates == 1);
    CHECK(isotypic_project(ctx.gal.Ds, ctx.gal.g, 2, r.c) == r.c);
    CHECK(isotypic_project(ctx.gal.Ds, ctx.gal.g, 1, r.a0) == r.a0);
    // coordinates of basis elements are unit vectors
    for (int i = 0; i < s.dim_big(); i += 7) CHECK(*solve_coordinates(ctx, true, s.basis_big[i]) == vunit(s.dim_big(), i));
}
