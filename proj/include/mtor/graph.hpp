#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mtor/errors.hpp"

namespace mtor {

// Directed edges are integers: unoriented edge e contributes directions 2e
// (the stored, "forward" direction) and 2e+1 (its reverse).
using DirEdge = int;

inline DirEdge forward_dir(int edge) { return 2 * edge; }
inline DirEdge reverse_dir(DirEdge d) { return d ^ 1; }
inline int edge_of(DirEdge d) { return d >> 1; }
inline bool is_forward(DirEdge d) { return (d & 1) == 0; }

// A finite graph with labeled unoriented edges.  Values are immutable once
// built up; all pipeline stages copy rather than mutate shared state.
class Graph {
public:
    int add_vertex(std::string name = "");
    // Returns the new unoriented edge id.  Labels must be unique.
    int add_edge(const std::string& label, int v_init, int v_term);

    int num_vertices() const { return static_cast<int>(vertex_names_.size()); }
    int num_edges() const { return static_cast<int>(labels_.size()); }
    int num_directions() const { return 2 * num_edges(); }

    int initial(DirEdge d) const { return is_forward(d) ? init_[edge_of(d)] : term_[edge_of(d)]; }
    int terminal(DirEdge d) const { return initial(reverse_dir(d)); }

    const std::string& label(int edge) const { return labels_[edge]; }
    const std::string& vertex_name(int v) const { return vertex_names_[v]; }
    std::optional<int> find_edge(const std::string& label) const;
    std::optional<int> find_vertex(const std::string& name) const;
    bool has_label(const std::string& label) const { return find_edge(label).has_value(); }

    std::string dir_name(DirEdge d) const {
        return is_forward(d) ? labels_[edge_of(d)] : "~" + labels_[edge_of(d)];
    }
    // Parses "x" or "~x" where x is an edge label.
    DirEdge dir_from_name(const std::string& token) const;

    int valence(int v) const;
    bool connected() const;

private:
    std::vector<std::string> vertex_names_;
    std::vector<std::string> labels_;
    std::vector<int> init_, term_; // endpoints of the forward direction
};

// A composable sequence of directed edges.
struct EdgePath {
    std::vector<DirEdge> steps;

    EdgePath() = default;
    explicit EdgePath(std::vector<DirEdge> s) : steps(std::move(s)) {}

    int length() const { return static_cast<int>(steps.size()); }
    bool empty() const { return steps.empty(); }
    EdgePath inverse() const;
    bool composable(const Graph& g) const;
    bool is_tight() const; // no step followed by its reverse
    bool operator==(const EdgePath&) const = default;
};

// A cyclically composable loop of directed edges.
struct CyclicPath {
    std::vector<DirEdge> steps;

    CyclicPath() = default;
    explicit CyclicPath(std::vector<DirEdge> s) : steps(std::move(s)) {}

    int length() const { return static_cast<int>(steps.size()); }
    DirEdge at(int i) const; // index mod length
    bool composable(const Graph& g) const;
    bool is_cyclically_tight() const;
    CyclicPath rotated(int k) const;
    bool operator==(const CyclicPath&) const = default;
};

// Free reduction: cancels every d ~d substring; the result is the unique
// reduced word in the same free-homotopy class rel endpoints.
EdgePath tighten(const EdgePath& path);
// Cyclic reduction: also cancels across the wrap-around.
CyclicPath tighten(const CyclicPath& path);

// True iff b is a rotation of a.
bool cyclically_equal(const CyclicPath& a, const CyclicPath& b);
// The rotation k with b == a.rotated(k), if one exists.
std::optional<int> rotation_matching(const CyclicPath& a, const CyclicPath& b);

std::string to_string(const Graph& g, const EdgePath& p);
std::string to_string(const Graph& g, const CyclicPath& p);
EdgePath parse_path(const Graph& g, const std::string& text);

// A map of graphs sending vertices to vertices and edges to edge paths.
// Only the image of the forward direction is stored.
struct GraphMap {
    Graph domain;
    Graph range;
    std::vector<int> vertex_map;     // domain vertex -> range vertex
    std::vector<EdgePath> edge_map;  // domain edge -> image of its forward direction

    EdgePath image_of(DirEdge d) const {
        return is_forward(d) ? edge_map[edge_of(d)] : edge_map[edge_of(d)].inverse();
    }
};

GraphMap identity_map(const Graph& g);
// Concatenates edge images; the result is not tightened.
EdgePath apply_map(const GraphMap& m, const EdgePath& path);
CyclicPath apply_map(const GraphMap& m, const CyclicPath& path);
// outer(inner(x)), with tightened edge images.
GraphMap compose(const GraphMap& outer, const GraphMap& inner);

// Sum of the lengths of the edge images.
int map_size(const GraphMap& m);

// A self-map f of G together with the boundary loop sigma around the
// puncture of the surface G spans.
struct MarkedMap {
    GraphMap map;        // domain == range == the marked graph
    CyclicPath boundary; // sigma

    const Graph& graph() const { return map.domain; }
};

// The pair of directions that admits a Stallings fold, found by scanning
// sigma for cancellation between images of consecutive edges.  d1 and d2
// emanate from a common vertex and their images share a length-k prefix.
struct FoldCandidate {
    DirEdge d1;
    DirEdge d2;
    int k;
    bool operator==(const FoldCandidate&) const = default;
};

std::optional<FoldCandidate> find_fold_candidate(const MarkedMap& mm);
bool is_immersion(const MarkedMap& mm);

// Genus of the once-punctured surface the graph is a spine of.
// Throws ValidationError if the graph is disconnected or (1+E-V) is odd.
int genus(const Graph& g);

struct ValidationReport {
    struct Check {
        std::string name;
        bool passed;
        std::string detail;
    };
    std::vector<Check> checks;

    bool ok() const;
    std::string summary() const;
};

// Checks every MarkedMap invariant; never throws, failures are listed.
ValidationReport validate(const MarkedMap& mm);
// Throws ValidationError when validate(mm) fails.
void require_valid(const MarkedMap& mm);

} // namespace mtor
