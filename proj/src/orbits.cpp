// orbits.cpp - brute-force orbit enumeration for the Borel subgroup of GL2(F_p).
#include "kummer/orbits.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace kummer {

Line normalize(const TZVec& v, u64 p) {
    for (u64 x : v)
        if (x % p) {
            u64 inv = invmod(x % p, p);
            return {v[0] * inv % p, v[1] * inv % p, v[2] * inv % p};
        }
    throw std::invalid_argument("normalize: zero vector");
}

Plane plane_span(const TZVec& u, const TZVec& v, u64 p) {
    std::array<TZVec, 2> m = {u, v};
    for (auto& r : m)
        for (auto& x : r) x %= p;
    int row = 0;
    for (int col = 0; col < 3 && row < 2; ++col) {
        int piv = row;
        while (piv < 2 && m[piv][col] == 0) ++piv;
        if (piv == 2) continue;
        std::swap(m[piv], m[row]);
        u64 inv = invmod(m[row][col], p);
        for (auto& x : m[row]) x = x * inv % p;
        for (int r = 0; r < 2; ++r) {
            if (r == row || m[r][col] == 0) continue;
            u64 f = m[r][col];
            for (int k = 0; k < 3; ++k) m[r][k] = (m[r][k] + (p - f) * m[row][k]) % p;
        }
        ++row;
    }
    if (row != 2) throw std::invalid_argument("plane_span: vectors are dependent");
    return m;
}

TZVec adjoint(u64 x, u64 y, const TZVec& v, u64 p) {
    const u64 xi = invmod(x % p, p);
    const u64 b = v[0], a = v[1], c = v[2];
    y %= p;
    u64 a2 = (a + y * c % p * xi) % p;
    u64 b2 = (x % p * b % p + 2 * (p - y) % p * a % p + (p - y * y % p * c % p * xi % p) % p) % p;
    u64 c2 = c * xi % p;
    return {b2, a2, c2};
}

u64 trace_pairing(const TZVec& u, const TZVec& v, u64 p) {
    return (2 * u[1] % p * v[1] + u[0] * v[2] + u[2] * v[0]) % p;
}

std::vector<Line> all_lines(u64 p) {
    std::vector<Line> out;
    for (u64 b = 0; b < p; ++b)
        for (u64 a = 0; a < p; ++a)
            for (u64 c = 0; c < p; ++c) {
                if (!b && !a && !c) continue;
                Line l = normalize({b, a, c}, p);
                if (l == Line{b, a, c}) out.push_back(l);
            }
    return out;
}

Plane orthogonal_plane(const Line& l, u64 p) {
    std::vector<TZVec> perp;
    for (const auto& m : all_lines(p))
        if (trace_pairing(l, m, p) == 0) perp.push_back(m);
    if (perp.size() != p + 1) throw ArithmeticError("orthogonal_plane: degenerate pairing");
    return plane_span(perp[0], perp[1], p);
}

Line orthogonal_line(const Plane& pl, u64 p) {
    for (const auto& m : all_lines(p))
        if (trace_pairing(pl[0], m, p) == 0 && trace_pairing(pl[1], m, p) == 0) return m;
    throw ArithmeticError("orthogonal_line: degenerate pairing");
}

std::vector<Plane> all_planes(u64 p) {
    std::set<Plane> s;
    for (const auto& l : all_lines(p)) s.insert(orthogonal_plane(l, p));
    return {s.begin(), s.end()};
}

namespace {

u64 smallest_nonsquare(u64 p) {
    for (u64 n = 2; n < p; ++n)
        if (powmod(n, (p - 1) / 2, p) == p - 1) return n;
    throw std::invalid_argument("smallest_nonsquare: p must be an odd prime");
}

Line act(u64 x, u64 y, const Line& l, u64 p) { return normalize(adjoint(x, y, l, p), p); }

Plane act(u64 x, u64 y, const Plane& pl, u64 p) {
    return plane_span(adjoint(x, y, pl[0], p), adjoint(x, y, pl[1], p), p);
}

template <class T>
std::vector<Orbit<T>> orbits_of(const std::vector<T>& universe, const std::array<T, 5>& standard, u64 p) {
    std::set<T> seen;
    std::vector<Orbit<T>> out;
    for (const auto& start : universe) {
        if (seen.count(start)) continue;
        std::set<T> orb;
        for (u64 x = 1; x < p; ++x)
            for (u64 y = 0; y < p; ++y) orb.insert(act(x, y, start, p));
        Orbit<T> o;
        o.members.assign(orb.begin(), orb.end());
        o.representative = start;
        for (int k = 0; k < 5; ++k)
            if (orb.count(standard[k])) {
                o.label = static_cast<char>('a' + k);
                o.representative = standard[k];
                break;
            }
        for (u64 x = 1; x < p; ++x)
            for (u64 y = 0; y < p; ++y)
                if (act(x, y, o.representative, p) == o.representative) ++o.stabilizer_order;
        seen.insert(orb.begin(), orb.end());
        out.push_back(std::move(o));
    }
    std::sort(out.begin(), out.end(), [](const Orbit<T>& a, const Orbit<T>& b) {
        return a.label != b.label ? a.label < b.label : a.members < b.members;
    });
    return out;
}

}  // namespace

std::array<Line, 5> standard_lines(u64 p) {
    u64 n = smallest_nonsquare(p);
    return {Line{1, 0, 0}, Line{0, 1, 0}, Line{0, 0, 1}, Line{1, 0, 1}, normalize({n, 0, 1}, p)};
}

std::array<Plane, 5> standard_planes(u64 p) {
    u64 n = smallest_nonsquare(p);
    return {plane_span({1, 0, 0}, {0, 1, 0}, p), plane_span({1, 0, 0}, {0, 0, 1}, p),
            plane_span({0, 0, 1}, {0, 1, 0}, p), plane_span({0, 1, 0}, {p - 1, 0, 1}, p),
            plane_span({0, 1, 0}, {p - 1, 0, invmod(n, p)}, p)};
}

std::vector<Orbit<Line>> enumerate_line_orbits(u64 p) { return orbits_of(all_lines(p), standard_lines(p), p); }

std::vector<Orbit<Plane>> enumerate_plane_orbits(u64 p) { return orbits_of(all_planes(p), standard_planes(p), p); }

bool duality_bijection(u64 p, std::string* why) {
    auto lines = enumerate_line_orbits(p);
    auto planes = enumerate_plane_orbits(p);
    auto fail = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    if (lines.size() != planes.size()) return fail("orbit counts differ");
    std::map<Plane, size_t> where;
    for (size_t k = 0; k < planes.size(); ++k)
        for (const auto& pl : planes[k].members) where[pl] = k;
    std::set<size_t> hit;
    for (const auto& o : lines) {
        std::set<size_t> targets;
        for (const auto& l : o.members) {
            Plane pl = orthogonal_plane(l, p);
            if (orthogonal_line(pl, p) != l) return fail("complement is not an involution");
            targets.insert(where.at(pl));
        }
        if (targets.size() != 1) return fail(std::string("orbit ") + o.label + " maps to several plane orbits");
        const auto& t = planes[*targets.begin()];
        if (t.size() != o.size() || t.label != o.label)
            return fail(std::string("orbit ") + o.label + " maps to plane orbit " + t.label);
        hit.insert(*targets.begin());
    }
    if (hit.size() != planes.size()) return fail("map on orbits is not surjective");
    return true;
}

u64 classify_n_ell0(bool cond_i, bool cond_ii, u64 p) {
    if (!cond_i) return p * p * (p - 1);
    if (!cond_ii) return 2 * p * p * p;
    return p * p * p * (p - 1);
}

u64 n_ell0_from_orbit(u64 beta, u64 p) {
    Line l = normalize({beta % p, 0, 1}, p);
    for (const auto& o : enumerate_line_orbits(p))
        if (std::binary_search(o.members.begin(), o.members.end(), l)) return p * p * p * p * (p - 1) / o.size();
    throw ArithmeticError("n_ell0_from_orbit: line not found");
}

std::string orbit_table(u64 p) {
    std::ostringstream os;
    auto vec = [](const TZVec& v) {
        return "(" + std::to_string(v[0]) + "," + std::to_string(v[1]) + "," + std::to_string(v[2]) + ")";
    };
    os << "p = " << p << ", lines " << all_lines(p).size() << ", |B| = " << p * (p - 1) << "\n";
    os << "orbit  line_size  plane_size  stabilizer  line_rep   plane_rep\n";
    auto lines = enumerate_line_orbits(p);
    auto planes = enumerate_plane_orbits(p);
    for (size_t k = 0; k < lines.size(); ++k) {
        const auto& L = lines[k];
        const Orbit<Plane>* P = k < planes.size() ? &planes[k] : nullptr;
        os << "  " << L.label << "    " << std::string(9 - std::min<size_t>(9, std::to_string(L.size()).size()), ' ')
           << L.size() << "  " << std::string(10 - std::min<size_t>(10, std::to_string(P ? P->size() : 0).size()), ' ')
           << (P ? P->size() : 0) << "  " << std::string(10 - std::to_string(L.stabilizer_order).size(), ' ')
           << L.stabilizer_order << "  " << vec(L.representative) << "  ";
        if (P) os << "<" << vec(P->representative[0]) << "," << vec(P->representative[1]) << ">";
        os << "\n";
    }
    return os.str();
}

}  // namespace kummer
