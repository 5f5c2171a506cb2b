#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mtor/errors.hpp"
#include "mtor/smith.hpp"

namespace mtor {

// A permutation of the four corners of a tetrahedron.
struct Perm4 {
    std::array<int, 4> img{0, 1, 2, 3};

    int operator[](int i) const { return img[i]; }
    Perm4 inverse() const;
    Perm4 after(const Perm4& first) const; // composition (*this)(first(x))
    bool is_identity() const { return img == std::array<int, 4>{0, 1, 2, 3}; }
    int parity() const; // 0 even, 1 odd
    std::string digits() const;
    static Perm4 from_digits(const std::string& s);
    bool operator==(const Perm4&) const = default;
};

// Tetrahedra with face gluings.  Face i of a tetrahedron is the face
// opposite corner i; a gluing stores the neighbor and the corner
// correspondence (the neighbor's face index is perm[i]).
class Triangulation3 {
public:
    int add_tetrahedron();
    void glue(int tet, int face, int other, const Perm4& how);

    int num_tetrahedra() const { return static_cast<int>(neighbor_.size()); }
    int neighbor(int tet, int face) const { return neighbor_[tet][face]; }
    const Perm4& gluing(int tet, int face) const { return gluing_[tet][face]; }
    bool face_glued(int tet, int face) const { return neighbor_[tet][face] >= 0; }

    bool closed() const;
    // Throws unless every face is glued and all gluings are involutive.
    void check_closed() const;

    // --- derived combinatorics (require a closed triangulation) ---

    // Orbit id per corner slot 4*tet + corner.
    std::vector<int> vertex_orbits() const;
    int num_vertex_orbits() const;

    // Orbit id per tet-edge slot 6*tet + edge_index (edges indexed by
    // corner pairs 01,02,03,12,13,23).
    std::vector<int> edge_orbits() const;
    int num_edge_orbits() const;
    // Walks the gluings around every edge orbit and checks the cycle
    // closes; returns the number of incidences per orbit.
    std::vector<int> edge_orbit_degrees() const;

    // Consistent tetrahedron orientations (+1/-1), if any.
    std::optional<std::vector<int>> orientation() const;

    // First homology of the underlying manifold minus its vertices
    // (= minus the ideal vertex; removing finite, sphere-linked vertices
    // does not change H_1), from the dual 2-complex: one generator per
    // face pair, one relator per edge orbit.
    AbelianGroup first_homology() const;

    // Lexicographically minimal breadth-first encoding over all starting
    // tetrahedra and corner labelings; equal encodings <=> isomorphic.
    std::string canonical_encoding() const;

    static int edge_index(int a, int b); // corner pair -> 0..5
    static std::pair<int, int> edge_corners(int index);

private:
    std::vector<std::array<int, 4>> neighbor_;
    std::vector<std::array<Perm4, 4>> gluing_;
};

bool isomorphic(const Triangulation3& a, const Triangulation3& b);

// Classification of one vertex orbit's link surface.
struct LinkReport {
    struct Orbit {
        int chi = 0;
        bool orientable = true;
        bool ideal = false; // link is not a sphere
        int triangle_count = 0;
        std::string surface; // "sphere", "torus", "Klein bottle", ...
    };
    std::vector<Orbit> orbits;

    int ideal_count() const;
    bool all_finite_are_spheres() const; // trivially true; kept for symmetry
    std::string summary() const;
};

LinkReport vertex_links(const Triangulation3& t);

} // namespace mtor
