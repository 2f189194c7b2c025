// orbits.hpp - Borel adjoint orbits on lines and planes of trace-zero 2x2 matrices over F_p.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "kummer/fparith.hpp"

namespace kummer {

// (b, a, c) <-> [[a, b], [c, -a]].
using TZVec = std::array<u64, 3>;
// Lines: normalized spanning vector. Planes: reduced echelon basis.
using Line = TZVec;
using Plane = std::array<TZVec, 2>;

Line normalize(const TZVec& v, u64 p);
Plane plane_span(const TZVec& u, const TZVec& v, u64 p);
// Adjoint action of [[x, y], [0, 1]].
TZVec adjoint(u64 x, u64 y, const TZVec& v, u64 p);
u64 trace_pairing(const TZVec& u, const TZVec& v, u64 p);
Plane orthogonal_plane(const Line& l, u64 p);
Line orthogonal_line(const Plane& pl, u64 p);
std::vector<Line> all_lines(u64 p);
std::vector<Plane> all_planes(u64 p);

template <class T>
struct Orbit {
    char label = '?';  // a..e, matched against the standard representatives
    T representative{};
    std::vector<T> members;  // sorted
    size_t size() const { return members.size(); }
    u64 stabilizer_order = 0;
};

std::vector<Orbit<Line>> enumerate_line_orbits(u64 p);
std::vector<Orbit<Plane>> enumerate_plane_orbits(u64 p);

// Standard representatives (a)-(e); n is the smallest non-square.
std::array<Line, 5> standard_lines(u64 p);
std::array<Plane, 5> standard_planes(u64 p);

// Checks that orthogonal complement maps line orbits onto plane orbits with matching labels and sizes.
bool duality_bijection(u64 p, std::string* why = nullptr);

// Order of the normalizer of a decomposition group at ell0.
u64 classify_n_ell0(bool cond_i, bool cond_ii, u64 p);
// Same quantity from the orbit of the line <(beta, 0, 1)>: |Gal(M''/Q)| / orbit size.
u64 n_ell0_from_orbit(u64 beta, u64 p);

std::string orbit_table(u64 p);

}  // namespace kummer
