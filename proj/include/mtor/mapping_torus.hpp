#pragma once

#include <string>
#include <vector>

#include "mtor/fold.hpp"
#include "mtor/surface.hpp"
#include "mtor/triangulation.hpp"

namespace mtor {

// One tetrahedron per triangle of K, all coned to a single ideal point.
// Corners 0..2 are the base triangle's corners (in stored order), corner 3
// the apex.  Lateral faces are glued along K's edge adjacency, base faces
// by the pairing e.
Triangulation3 cone_and_glue(const SurfaceComplex& k);

// Tightness in the sense used by the complexity bound: edge images are
// immersed and at every vertex the images of the outgoing directions start
// with at least two distinct edges.
bool is_tight(const GraphMap& f);

struct BoundReport {
    bool applicable = false;
    std::string reason; // why not, when inapplicable
    long long bound = 0;
    int actual = 0;
    bool ok = false;
};

struct PipelineDiagnostics {
    int folds = 0, partial_folds = 0, full_folds = 0;
    std::vector<int> annulus_triangles;
    int triangles = 0, tetrahedra = 0;
    BoundReport bound;
    std::string summary() const;
};

struct MappingTorus {
    FoldSequence sequence;
    SurfaceComplex complex;
    Triangulation3 triangulation;
    LinkReport links;
    PipelineDiagnostics diagnostics;
};

// The full pipeline: decompose, assemble the torus, cone and glue, check
// the vertex links (all finite links spheres, exactly one ideal torus).
MappingTorus build_mapping_torus(const MarkedMap& mm);

// 16(5g-2)S(f) versus the actual tetrahedron count.  Runs the pipeline.
BoundReport tetrahedron_bound(const MarkedMap& mm);

} // namespace mtor
