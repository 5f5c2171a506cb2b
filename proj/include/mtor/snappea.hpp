#pragma once

#include <string>
#include <vector>

#include "mtor/triangulation.hpp"

namespace mtor {

// Cusp index per vertex orbit: ideal orbits are numbered consecutively in
// orbit order, finite orbits get -1.  Links other than spheres, tori and
// Klein bottles cannot be written to a SnapPea file.
struct CuspAssignment {
    std::vector<int> cusp_of_orbit;
    int orientable_cusps = 0;
    int nonorientable_cusps = 0;
    int total() const { return orientable_cusps + nonorientable_cusps; }
};

CuspAssignment cusp_assignment(const Triangulation3& t, const LinkReport& links);

// Serializes into the "% Triangulation" text format: solution type
// not_attempted, Chern-Simons unknown, zero-filled peripheral curves.
// Deterministic; single spaces, LF line endings.
std::string write_snappea(const Triangulation3& t, const std::string& name);

struct SnapPeaFile {
    std::string name;
    Triangulation3 triangulation;
    std::vector<std::string> cusp_topologies;
    std::vector<int> cusp_index_of_corner; // 4*tet + corner
};

// Minimal reader for the subset write_snappea emits (round-trip checks).
SnapPeaFile read_snappea(const std::string& text);

// Exact equality of the gluing data (same indices and permutations).
bool identical_gluings(const Triangulation3& a, const Triangulation3& b);

} // namespace mtor
