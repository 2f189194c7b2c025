// pipeline.cpp - Kolyvagin derivatives, local adjustments and the final splitting checks.
#include "kummer/pipeline.hpp"

#include <chrono>
#include <iomanip>
#include <map>
#include <sstream>

namespace kummer {

MatFp kolyvagin_matrix(int order, const MatFp& sigma) {
    const u64 p = sigma.p();
    const int n = sigma.rows();
    MatFp acc(n, n, p), Sj = MatFp::identity(n, p);
    for (u64 j = 0; j < p; ++j) {
        u64 c = order == 0 ? 1 : order == 1 ? j : (j * (j + p - 1) / 2);
        if (order < 0 || order > 2) throw std::invalid_argument("kolyvagin_matrix: order must be 0, 1 or 2");
        if (c % p) acc = acc + Sj.scaled(c % p);
        Sj = Sj * sigma;
    }
    return acc;
}

Candidates candidates(const GaloisData& g, const Vec& gamma) {
    Vec d1 = kolyvagin_matrix(1, g.S).apply(gamma);
    Vec d2 = kolyvagin_matrix(2, g.S).apply(gamma);
    return {d1, vadd(vscale(d2, 2, g.p), d1, g.p)};
}

std::vector<u64> alg1_candidates(const SUnitContext& ctx, const Vec& a1_cand) {
    const u64 p = ctx.tower.p;
    const auto& im = ctx.padic_big;
    const bool tame = tame_or_wild(p, ctx.tower.ell1) == Ramification::Tame;
    std::vector<u64> out;
    for (u64 i = 0; i < p; ++i) {
        Vec x = vadd(a1_cand, vscale(ctx.zeta_b, i, p), p);
        bool ok = true;
        for (size_t k = 0; k < im.primes.size() && ok; ++k) {
            auto v = im.product(k, x);
            ok = tame ? local_congruence_test(im.rings[k], v, CongruenceMode::TeichmullerModPp)
                      : local_congruence_test(im.rings[k], v, CongruenceMode::PthPowerModPp2);
        }
        if (ok) out.push_back(i);
    }
    return out;
}

std::vector<size_t> ell0_split_set(const SUnitContext& ctx, const Vec& x) {
    const u64 p = ctx.tower.p;
    std::vector<size_t> out;
    for (size_t k = 0; k < ctx.ell0_big.primes.size(); ++k)
        if (ord_at(ctx.ell0_big, k, x, p) == 0 && log_at(ctx.ell0_big, k, x, p) == 0) out.push_back(k);
    return out;
}

bool is_single_orbit(const SUnitContext& ctx, const std::vector<size_t>& split) {
    if (split.empty()) return false;
    const auto& P = ctx.ell0_big.primes;
    const u64 m = P[split[0]].m;
    size_t orbit = 0;
    for (const auto& Q : P)
        if (Q.m == m) ++orbit;
    for (size_t k : split)
        if (P[k].m != m) return false;
    return split.size() == orbit;
}

std::vector<u64> alg2_candidates(const SUnitContext& ctx, const Vec& a1_partial, const Vec& a0_big) {
    const u64 p = ctx.tower.p;
    std::vector<u64> out;
    for (u64 t = 0; t < p; ++t)
        if (is_single_orbit(ctx, ell0_split_set(ctx, vadd(a1_partial, vscale(a0_big, t, p), p)))) out.push_back(t);
    return out;
}

namespace {

u64 unique_value(const std::vector<u64>& v, const char* stage, const char* what) {
    if (v.size() != 1)
        throw PipelineError(stage, std::string("expected a unique ") + what + ", found " + std::to_string(v.size()));
    return v[0];
}

}  // namespace

A1Adjustment adjust_a1(const SUnitContext& ctx, const Vec& a1_cand, const Vec& a0_small) {
    const u64 p = ctx.tower.p;
    A1Adjustment out;
    out.i = unique_value(alg1_candidates(ctx, a1_cand), "adjust_a1 at p", "i");
    Vec partial = vadd(a1_cand, vscale(ctx.zeta_b, out.i, p), p);
    Vec a0_big = ctx.gal.I.apply(a0_small);
    out.j = unique_value(alg2_candidates(ctx, partial, a0_big), "adjust_a1 at ell0", "j");
    out.a1 = vadd(partial, vscale(a0_big, out.j, p), p);
    out.split = ell0_split_set(ctx, out.a1);
    out.L0 = out.split.at(0);
    return out;
}

bool condition_i(const SUnitContext& ctx, const Vec& a1) {
    const u64 p = ctx.tower.p;
    for (int k = 0; k < ctx.ell1_chars.cols(); ++k) {
        u64 s = 0;
        for (size_t i = 0; i < a1.size(); ++i) s += a1[i] * ctx.ell1_chars.at(static_cast<int>(i), k);
        if (s % p) return false;
    }
    return true;
}

u64 evaluation_functional(const SUnitContext& ctx, size_t prime, const Vec& y) {
    const u64 p = ctx.tower.p;
    return (ctx.mt.zeta_mt * ord_at(ctx.ell0_big, prime, y, p) + log_at(ctx.ell0_big, prime, y, p)) % p;
}

std::vector<u64> alg3_candidates(const SUnitContext& ctx, const Vec& b2_tilde) {
    const u64 p = ctx.tower.p;
    std::vector<u64> out;
    if (!ctx.p_b) return out;
    const auto& im = ctx.padic_big;
    const int level = 2 * static_cast<int>(p - 1);
    for (u64 k = 0; k < p; ++k)
        if (is_pth_power_mod(im.rings[0], im.product(0, vadd(b2_tilde, vscale(*ctx.p_b, k, p), p)), level))
            out.push_back(k);
    return out;
}

B2Construction build_b2(const SUnitContext& ctx, const Vec& gamma, const Vec& a1, const Vec& a1_adj_small,
                        size_t L0) {
    const auto& g = ctx.gal;
    const u64 p = g.p;
    B2Construction out;
    auto xi = solve_norm(g, a1_adj_small, 1);
    if (!xi) throw PipelineError("build_b2", "no omega-isotypic xi with norm a1_adj");
    out.xi = *xi;
    Vec d2g = kolyvagin_matrix(2, g.S).apply(gamma);
    Vec d1x = kolyvagin_matrix(1, g.S).apply(out.xi);
    Vec raw = vsub(vsub(vzero(static_cast<int>(gamma.size())), vscale(vadd(d2g, d1x, p), 2, p), p), a1, p);
    out.b2_tilde = isotypic_project(g.D, g.g, 0, raw);

    const bool tame = tame_or_wild(p, ctx.tower.ell1) == Ramification::Tame;
    if (tame) {
        out.k = 0;
    } else if (is_pth_power_mod_q(mpz_class(static_cast<unsigned long>(p)), p, ctx.mt.ell0)) {
        out.k = 0;
        out.alg3_skipped = true;
    } else {
        if (!ctx.p_b) throw PipelineError("build_b2 at p", "p is not in the span of the big basis");
        out.k = unique_value(alg3_candidates(ctx, out.b2_tilde), "build_b2 at p", "k");
    }
    Vec y = out.b2_tilde;
    if (out.k) y = vadd(y, vscale(*ctx.p_b, out.k, p), p);
    u64 a = evaluation_functional(ctx, L0, y), b = evaluation_functional(ctx, L0, ctx.ell0_b);
    if (b == 0) throw PipelineError("build_b2 at ell0", "functional vanishes on ell0");
    out.m = mulmod(p - a % p, invmod(b, p), p) % p;
    out.b2 = vadd(y, vscale(ctx.ell0_b, out.m, p), p);
    return out;
}

bool condition_ii(const SUnitContext& ctx, const Vec& b2, size_t L0) {
    const u64 p = ctx.tower.p;
    return ord_at(ctx.ell0_big, L0, b2, p) == 0 && log_at(ctx.ell0_big, L0, b2, p) == 0;
}

bool PipelineReport::idempotent() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

PipelineReport run_pipeline(const SUnitContext& ctx) {
    auto t0 = std::chrono::steady_clock::now();
    const auto& s = ctx.seed;
    const u64 p = s.params.p;
    PipelineReport r;
    r.params = s.params;
    r.ramification = tame_or_wild(p, s.params.ell1);
    r.ell0_generator = ctx.mt.logs->generator();
    r.zeta_mt = ctx.mt.zeta_mt;
    auto rep = check_assumptions(s.params);
    if (!rep.ok()) {
        std::string msg;
        for (const auto& f : rep.failures) msg += (msg.empty() ? "" : "; ") + f;
        throw PipelineError("assumptions", msg);
    }

    CAndA0 ca;
    try {
        ca = find_c_and_a0(ctx);
    } catch (const ArithmeticError& e) {
        throw PipelineError("find_c_and_a0", e.what());
    }
    r.c = ca.c;
    r.a0 = ca.a0;
    auto gamma = solve_norm(ctx.gal, ca.c, 2);
    if (!gamma) throw PipelineError("solve_norm", "no omega^2-isotypic gamma with norm c");
    r.gamma = *gamma;
    auto cand = candidates(ctx.gal, r.gamma);
    r.a1_cand = cand.a1_cand;
    r.b2_cand = cand.b2_cand;

    auto adj = adjust_a1(ctx, r.a1_cand, r.a0);
    r.i = adj.i;
    r.j = adj.j;
    r.a1 = adj.a1;
    r.L0 = ctx.ell0_big.primes[adj.L0].label();
    Vec a0_big = ctx.gal.I.apply(r.a0);
    r.checks.push_back({"gamma norm and isotypy",
                        norm_map(ctx.gal, r.gamma) == r.c && isotypic_project(ctx.gal.D, ctx.gal.g, 2, r.gamma) == r.gamma});
    r.checks.push_back({"a1 unramified above p", alg1_candidates(ctx, r.a1) == std::vector<u64>{0}});
    r.checks.push_back({"a1 split at one orbit over ell0", alg2_candidates(ctx, r.a1, a0_big) == std::vector<u64>{0}});

    r.cond_i = condition_i(ctx, r.a1);
    if (r.cond_i) {
        Vec a1_adj = vadd(vscale(ctx.zeta_s, r.i, p), vscale(r.a0, r.j, p), p);
        auto b = build_b2(ctx, r.gamma, r.a1, a1_adj, adj.L0);
        r.k = b.k;
        r.m = b.m;
        r.alg3_skipped = b.alg3_skipped;
        r.xi = b.xi;
        r.b2_tilde = b.b2_tilde;
        r.b2 = b.b2;
        r.checks.push_back({"xi norm", norm_map(ctx.gal, r.xi) == a1_adj});
        if (r.ramification == Ramification::Wild && !r.alg3_skipped) {
            Vec y = vadd(r.b2_tilde, vscale(*ctx.p_b, r.k, p), p);
            r.checks.push_back({"b2 congruence above p", alg3_candidates(ctx, y) == std::vector<u64>{0}});
        }
        r.checks.push_back({"b2 functional at L0", evaluation_functional(ctx, adj.L0, r.b2) == 0});
        r.cond_ii = condition_ii(ctx, r.b2, adj.L0);
    }
    r.dim_gt_3 = r.cond_i && r.cond_ii.value_or(false);
    r.n_ell0 = classify_n_ell0(r.cond_i, r.cond_ii.value_or(false), p);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

PipelineReport run_pipeline(const SeedData& seed) {
    SUnitContext ctx;
    try {
        ctx = build_context(seed);
    } catch (const SeedError& e) {
        throw PipelineError("context", e.what());
    } catch (const ArithmeticError& e) {
        throw PipelineError("context", e.what());
    }
    return run_pipeline(ctx);
}

nlohmann::json report_to_json(const PipelineReport& r) {
    nlohmann::json j;
    j["schema_version"] = kReportSchemaVersion;
    j["params"] = {{"p", r.params.p}, {"ell0", r.params.ell0}, {"ell1", r.params.ell1}};
    j["p_in_K"] = to_string(r.ramification);
    j["ell0_generator"] = r.ell0_generator;
    j["zeta_mt"] = r.zeta_mt;
    j["i"] = r.i;
    j["j"] = r.j;
    j["L0"] = r.L0;
    j["condition_i"] = r.cond_i;
    if (r.cond_i) {
        j["k"] = r.k;
        j["m"] = r.m;
        j["alg3_skipped"] = r.alg3_skipped;
        j["condition_ii"] = *r.cond_ii;
    } else {
        j["condition_ii"] = nullptr;
    }
    j["alpha2_plus_beta_zero"] = r.alpha2_beta_zero();
    j["n_ell0"] = r.n_ell0;
    j["conclusion"] = r.conclusion();
    nlohmann::json checks = nlohmann::json::object();
    for (const auto& c : r.checks) checks[c.name] = c.passed;
    j["idempotence"] = checks;
    nlohmann::json v;
    v["c"] = r.c;
    v["a0"] = r.a0;
    v["gamma"] = r.gamma;
    v["a1_cand"] = r.a1_cand;
    v["b2_cand"] = r.b2_cand;
    v["a1"] = r.a1;
    if (r.cond_i) {
        v["xi"] = r.xi;
        v["b2_tilde"] = r.b2_tilde;
        v["b2"] = r.b2;
    }
    j["vectors"] = v;
    return j;
}

std::string table_header() {
    std::ostringstream os;
    os << std::setw(3) << "p" << std::setw(6) << "ell0" << std::setw(7) << "ell1" << std::setw(7) << "p_in_K"
       << std::setw(4) << "i" << std::setw(4) << "j" << std::setw(4) << "k" << std::setw(4) << "m" << std::setw(12)
       << "a^2+b=0?" << std::setw(12) << "conclusion";
    return os.str();
}

std::string table_row(const PipelineReport& r) {
    std::ostringstream os;
    auto opt = [&](u64 v) { return r.cond_i ? std::to_string(v) : std::string("-"); };
    os << std::setw(3) << r.params.p << std::setw(6) << r.params.ell0 << std::setw(7) << r.params.ell1 << std::setw(7)
       << to_string(r.ramification) << std::setw(4) << r.i << std::setw(4) << r.j << std::setw(4)
       << (r.alg3_skipped ? std::string("-") : opt(r.k)) << std::setw(4) << opt(r.m) << std::setw(12)
       << (r.alpha2_beta_zero() ? "yes" : "no") << std::setw(12) << r.conclusion();
    return os.str();
}

}  // namespace kummer
