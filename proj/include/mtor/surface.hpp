#pragma once

#include <array>
#include <string>
#include <vector>

#include "mtor/fold.hpp"
#include "mtor/smith.hpp"

namespace mtor {

// What a triangle of K was built as.
enum class CellKind {
    rectangle,      // product cell over an occurrence not touched by a fold
    pentagon,       // subdivision cell (one bottom interval, two on top)
    fold_bigon,     // the two triangles over the cancelling pair a ~b
    fold_rectangle, // the cell over the fourth letter of the normal form w
    fold_partner,   // the overridden rectangle the fold region pairs with
};

// The layered torus K: a stack of annuli between the circles spelling
// sigma_0, sigma_1, ..., sigma_2n, closed up by the final-gluing annulus.
// Triangles are stored with their corners in counterclockwise order with
// respect to the product orientation (circle direction x upward).
struct SurfaceComplex {
    struct Edge {
        int tail, head;
    };
    struct Triangle {
        std::array<int, 3> corners; // K vertex ids, ccw
        std::array<int, 3> sides;   // edge ids; side s joins corner s to corner s+1
        std::array<bool, 3> side_forward; // side s traverses edge tail->head?
        int annulus;
        CellKind kind;
        int occurrence;    // bottom-circle position of the cell
        int index_in_cell; // 0..2
    };

    int num_vertices = 0;
    std::vector<Edge> edges;
    std::vector<Triangle> triangles;

    // The face pairing e: an involution on triangles with a corner
    // correspondence (corner s of t matches corner pair_map[t][s] of
    // pair_with[t]).
    std::vector<int> pair_with;
    std::vector<std::array<int, 3>> pair_map;

    // Circle i carries the spelling of sigma_i; breakpoint j is the K
    // vertex at the start of interval j.
    std::vector<std::vector<int>> circle_vertices;
    std::vector<std::vector<int>> circle_arcs;

    struct AnnulusInfo {
        enum class Type { subdivision, fold, final_gluing } type;
        int first_triangle = 0;
        int num_triangles = 0;
        // fold annuli only:
        int w_position = -1;     // bottom position where the normal form w starts
        int u_length = -1;       // length of the middle path u
        bool mirror_case = false; // w = a ~b u b rather than a ~b u ~a
        int partner_position = -1; // bottom position of the overridden rectangle
        std::string w_text;
    };
    std::vector<AnnulusInfo> annuli;

    int num_triangles() const { return static_cast<int>(triangles.size()); }
    int num_edges() const { return static_cast<int>(edges.size()); }
    int euler_characteristic() const { return num_vertices - num_edges() + num_triangles(); }

    std::vector<Triangle> annulus_triangles(int annulus) const;
};

// Incremental construction, one annulus per fold-sequence step plus the
// final gluing.  Annuli must be added bottom-up in order.
class TorusBuilder {
public:
    explicit TorusBuilder(const FoldSequence& seq);

    void add_subdivision_annulus(int step);
    void add_fold_annulus(int step);
    void add_final_annulus();

    const SurfaceComplex& peek() const { return k_; }
    SurfaceComplex finish(); // runs verify_surface_complex

private:
    struct Cell; // uniform rectangle/pentagon cell under construction

    const FoldSequence& seq_;
    SurfaceComplex k_;
    int next_annulus_ = 0;

    void ensure_circle(int stage);
    int vertical(int annulus, int bottom_circle, int pos, int top_circle, int top_pos);
    int new_edge(int tail, int head);
    int add_triangle(std::array<int, 3> corners, std::array<int, 3> sides,
                     std::array<bool, 3> forward, CellKind kind, int occ, int idx);
    Cell make_cell(int bottom_circle, int pos, int top_circle, int top_pos, int top_count,
                   bool anchored_left, CellKind kind);
    void pair_cells(const Cell& fwd, const Cell& rev);
    void record_pair(int t1, int t2, const std::array<int, 3>& map12);
    std::vector<int> vertical_edges_; // scratch per annulus, keyed by bottom position
};

SurfaceComplex assemble_torus(const FoldSequence& seq);

// Checks: chi = 0, connected, every edge in exactly two triangle sides with
// opposite directions (global orientation), pairing a fixed-point-free
// orientation-reversing involution.  Throws InternalError on failure.
void verify_surface_complex(const SurfaceComplex& k);

// H_1 of the quotient 2-complex K/e, computed from the chain complex of
// the quotient with every edge split at its midpoint (the split kills
// self-reversed identifications).
AbelianGroup quotient_h1(const SurfaceComplex& k);

// OFF-style dump: vertex list with schematic coordinates, triangle list,
// and the pairing table.
std::string dump_off(const SurfaceComplex& k);

} // namespace mtor
