#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mtor/graph.hpp"

namespace mtor {

// One level of the factorization f = g_n p_{n-1} s_{n-1} ... p_0 s_0:
// the graph G_i, the loop sigma_i, and the remaining map g: G_i -> G_0.
struct Stage {
    Graph graph;
    GraphMap to_range; // G_i -> G_0
    CyclicPath sigma;

    int size() const { return map_size(to_range); }
};

// A subdivision s_i: G_{2i} -> G_{2i+1} preparing a fold.  Only the edges
// of the candidate whose image is strictly longer than the common prefix
// are split; equal-length edges fold whole (and the step may be the
// identity when neither side needs splitting).
struct SubdivisionStep {
    GraphMap s;
    struct Split {
        int old_edge;          // edge id in G_{2i}
        int new_front, new_back; // edge ids in G_{2i+1}, forward order
    };
    std::vector<Split> subdivided;
    FoldCandidate candidate; // in G_{2i} directions
    // The two directions of G_{2i+1} to be identified, emanating from the
    // candidate's common vertex, with equal images of length candidate.k.
    DirEdge seg1, seg2;
    bool side1_subdivided, side2_subdivided;
};

// A Stallings fold p_i: G_{2i+1} -> G_{2i+2} identifying seg1 with seg2.
// The second direction's edge keeps its label.
struct FoldStep {
    GraphMap p;
    DirEdge gone; // direction of G_{2i+1} whose edge disappears
    DirEdge kept;
    enum class Kind { partial, full };
    Kind kind;
};

inline const char* to_string(FoldStep::Kind k) {
    return k == FoldStep::Kind::partial ? "partial" : "full";
}

struct FoldSequence {
    std::vector<Stage> stages; // 0..2n
    std::vector<SubdivisionStep> subdivisions;
    std::vector<FoldStep> folds;
    GraphMap terminal; // g_n: G_{2n} -> G_0, a graph isomorphism

    int num_folds() const { return static_cast<int>(folds.size()); }
    const Stage& final_stage() const { return stages.back(); }
};

std::pair<SubdivisionStep, Stage> subdivide(const Stage& stage, const FoldCandidate& cand);
std::pair<FoldStep, Stage> fold(const Stage& stage, const SubdivisionStep& prepared);

// Iterates find_fold_candidate / subdivide / fold until no candidate is
// left, then checks that the terminal map is a graph isomorphism.
FoldSequence decompose(const MarkedMap& mm);

// Sum over vertices of (valence - 2) = -2 chi(G) = 4 genus - 2.
// Requires every vertex to have valence >= 3.
int fold_count_bound(const Graph& g);

// Text trace of a decomposition, one stanza per step.
std::string fold_sequence_trace(const FoldSequence& seq);

// Re-checks all FoldSequence invariants against the original input:
// the factorization composes to f, sizes strictly decrease across folds,
// sigma stays boundary-like at every stage.  Throws on violation.
void verify_fold_sequence(const FoldSequence& seq, const MarkedMap& mm);

} // namespace mtor
