#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>
#include <set>

#include "kummer/orbits.hpp"

using namespace kummer;

namespace {

std::vector<size_t> sizes_of(u64 p) {
    std::vector<size_t> s;
    for (const auto& o : enumerate_line_orbits(p)) s.push_back(o.size());
    return s;
}

}  // namespace

TEST_CASE("adjoint action is a group action preserving trace zero") {
    const u64 p = 7;
    for (u64 x1 = 1; x1 < p; ++x1)
        for (u64 y1 = 0; y1 < p; y1 += 3)
            for (u64 x2 = 1; x2 < p; x2 += 2)
                for (u64 y2 = 0; y2 < p; y2 += 2) {
                    // [[x1,y1],[0,1]] [[x2,y2],[0,1]] = [[x1 x2, x1 y2 + y1],[0,1]]
                    TZVec v = {3, 5, 2};
                    auto lhs = adjoint(x1, y1, adjoint(x2, y2, v, p), p);
                    auto rhs = adjoint(x1 * x2 % p, (x1 * y2 + y1) % p, v, p);
                    CHECK(lhs == rhs);
                    TZVec w = {1, 4, 6};
                    CHECK(trace_pairing(adjoint(x1, y1, v, p), adjoint(x1, y1, w, p), p) == trace_pairing(v, w, p));
                }
}

TEST_CASE("line orbit sizes") {
    for (u64 p : {3ull, 5ull, 7ull, 11ull}) {
        auto orbits = enumerate_line_orbits(p);
        REQUIRE(orbits.size() == 5);
        std::vector<size_t> want = {1, p, p, p * (p - 1) / 2, p * (p - 1) / 2};
        std::string labels;
        size_t total = 0;
        for (size_t k = 0; k < 5; ++k) {
            CHECK(orbits[k].size() == want[k]);
            CHECK(orbits[k].size() * orbits[k].stabilizer_order == p * (p - 1));
            labels += orbits[k].label;
            total += orbits[k].size();
        }
        CHECK(labels == "abcde");
        CHECK(total == p * p + p + 1);
        std::set<Line> all;
        for (const auto& o : orbits) all.insert(o.members.begin(), o.members.end());
        CHECK(all.size() == p * p + p + 1);
    }
    CHECK(sizes_of(5) == std::vector<size_t>{1, 5, 5, 10, 10});
}

TEST_CASE("listed line families") {
    for (u64 p : {5ull, 7ull}) {
        auto orbits = enumerate_line_orbits(p);
        auto in = [&](char label, const Line& l) {
            for (const auto& o : orbits)
                if (o.label == label) return std::binary_search(o.members.begin(), o.members.end(), normalize(l, p));
            return false;
        };
        for (u64 a = 0; a < p; ++a) {
            CHECK(in('b', {a, 1, 0}));
            CHECK(in('c', {(p - a * a % p) % p, a, 1}));
        }
        // stabilizer of <(b,0,1)> has order 2
        CHECK(orbits[3].stabilizer_order == 2);
        CHECK(orbits[4].stabilizer_order == 2);
    }
}

TEST_CASE("plane orbits and duality") {
    for (u64 p : {3ull, 5ull, 7ull, 11ull}) {
        auto orbits = enumerate_plane_orbits(p);
        REQUIRE(orbits.size() == 5);
        std::vector<size_t> want = {1, p, p, p * (p - 1) / 2, p * (p - 1) / 2};
        size_t total = 0;
        for (size_t k = 0; k < 5; ++k) {
            CHECK(orbits[k].size() == want[k]);
            CHECK(orbits[k].label == static_cast<char>('a' + k));
            total += orbits[k].size();
        }
        CHECK(total == p * p + p + 1);
        std::string why;
        CHECK_MESSAGE(duality_bijection(p, &why), why);
    }
}

TEST_CASE("plane family dual to the size-p line family") {
    const u64 p = 7;
    auto orbits = enumerate_plane_orbits(p);
    const auto& c = orbits[2];
    for (u64 a = 0; a < p; ++a) {
        Plane dual = plane_span({a * a % p, 0, 1}, {(p - 2 * a % p) % p, 1, 0}, p);
        CHECK(std::binary_search(c.members.begin(), c.members.end(), dual));
    }
    // the family <(0,a,1),(4a,1,0)> leaves the orbit once a != 0
    Plane listed = plane_span({0, 1, 1}, {4, 1, 0}, p);
    CHECK_FALSE(std::binary_search(c.members.begin(), c.members.end(), listed));
}

TEST_CASE("n_ell0 classifier") {
    CHECK(classify_n_ell0(false, false, 5) == 100);
    CHECK(classify_n_ell0(true, false, 5) == 250);
    CHECK(classify_n_ell0(true, true, 5) == 500);
    for (u64 p : {5ull, 7ull, 11ull}) {
        CHECK(n_ell0_from_orbit(0, p) == classify_n_ell0(true, true, p));
        for (u64 beta = 1; beta < p; ++beta) CHECK(n_ell0_from_orbit(beta, p) == classify_n_ell0(true, false, p));
    }
}

TEST_CASE("orbit suite runtime") {
    auto t0 = std::chrono::steady_clock::now();
    for (u64 p : {3ull, 5ull, 7ull, 11ull}) {
        enumerate_line_orbits(p);
        enumerate_plane_orbits(p);
        duality_bijection(p);
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(s < 10.0);
}
