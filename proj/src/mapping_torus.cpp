#include "mtor/mapping_torus.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace mtor {

Triangulation3 cone_and_glue(const SurfaceComplex& k) {
    verify_surface_complex(k);
    Triangulation3 t3;
    for (int i = 0; i < k.num_triangles(); i++)
        t3.add_tetrahedron();

    // Lateral gluings: the cone over each edge of K is shared by the two
    // tetrahedra over the triangles meeting that edge.
    struct Incidence {
        int tri = -1, side = -1;
        bool forward = false;
    };
    std::vector<std::array<Incidence, 2>> at_edge(k.num_edges());
    std::vector<int> count(k.num_edges(), 0);
    for (int t = 0; t < k.num_triangles(); t++)
        for (int s = 0; s < 3; s++) {
            int e = k.triangles[t].sides[s];
            at_edge[e][count[e]++] = {t, s, k.triangles[t].side_forward[s]};
        }

    for (int e = 0; e < k.num_edges(); e++) {
        auto [i1, i2] = std::pair(at_edge[e][0], at_edge[e][1]);
        // Corner slots: side s spans corners s and s+1; the remaining base
        // corner indexes the lateral face.
        int a1 = i1.side, b1 = (i1.side + 1) % 3, c1 = (i1.side + 2) % 3;
        int a2 = i2.side, b2 = (i2.side + 1) % 3, c2 = (i2.side + 2) % 3;
        // The global orientation makes the traversals opposite, so the
        // initial corner of one side matches the terminal of the other.
        Perm4 how;
        how.img[a1] = b2;
        how.img[b1] = a2;
        how.img[c1] = c2;
        how.img[3] = 3;
        t3.glue(i1.tri, c1, i2.tri, how);
    }

    // Base gluings by the pairing e, apex to apex.
    for (int t = 0; t < k.num_triangles(); t++) {
        int u = k.pair_with[t];
        if (u < t)
            continue;
        Perm4 how;
        for (int s = 0; s < 3; s++)
            how.img[s] = k.pair_map[t][s];
        how.img[3] = 3;
        t3.glue(t, 3, u, how);
    }

    t3.check_closed();
    return t3;
}

bool is_tight(const GraphMap& f) {
    const Graph& g = f.domain;
    for (int e = 0; e < g.num_edges(); e++)
        if (!f.edge_map[e].is_tight() || f.edge_map[e].empty())
            return false;
    for (int v = 0; v < g.num_vertices(); v++) {
        std::set<DirEdge> first_edges;
        for (DirEdge d = 0; d < g.num_directions(); d++)
            if (g.initial(d) == v)
                first_edges.insert(f.image_of(d).steps.front());
        if (first_edges.size() < 2)
            return false;
    }
    return true;
}

std::string PipelineDiagnostics::summary() const {
    std::ostringstream out;
    out << folds << " folds (" << partial_folds << " partial, " << full_folds << " full), "
        << annulus_triangles.size() << " annuli, " << triangles << " triangles, " << tetrahedra
        << " tetrahedra\n";
    out << "annulus triangle counts:";
    for (int c : annulus_triangles)
        out << " " << c;
    out << "\n";
    if (bound.applicable)
        out << "tetrahedron bound 16(5g-2)S(f) = " << bound.bound << ", actual " << bound.actual
            << (bound.ok ? " (within bound)" : " (EXCEEDS bound)") << "\n";
    else
        out << "tetrahedron bound inapplicable: " << bound.reason << "\n";
    return out.str();
}

MappingTorus build_mapping_torus(const MarkedMap& mm) {
    MappingTorus result;
    try {
        result.sequence = decompose(mm);
    } catch (const ValidationError& err) {
        throw ValidationError(std::string("decompose: ") + err.what());
    }
    try {
        result.complex = assemble_torus(result.sequence);
    } catch (const InternalError& err) {
        throw InternalError(std::string("assemble_torus: ") + err.what());
    }
    try {
        result.triangulation = cone_and_glue(result.complex);
    } catch (const InternalError& err) {
        throw InternalError(std::string("cone_and_glue: ") + err.what());
    }
    result.links = vertex_links(result.triangulation);

    // The cone point is the unique ideal vertex and its link is the torus
    // cusp; every other link must be a sphere.
    int ideal = 0;
    for (const auto& orbit : result.links.orbits) {
        if (orbit.ideal) {
            ideal++;
            if (orbit.surface != "torus")
                throw InternalError("vertex_links: ideal link is a " + orbit.surface +
                                    ", expected a torus");
        } else if (orbit.surface != "sphere") {
            throw InternalError("vertex_links: finite link is not a sphere");
        }
    }
    if (ideal != 1)
        throw InternalError("vertex_links: expected exactly one ideal vertex, found " +
                            std::to_string(ideal));

    PipelineDiagnostics& diag = result.diagnostics;
    diag.folds = result.sequence.num_folds();
    for (const FoldStep& f : result.sequence.folds)
        (f.kind == FoldStep::Kind::partial ? diag.partial_folds : diag.full_folds)++;
    for (const auto& info : result.complex.annuli)
        diag.annulus_triangles.push_back(info.num_triangles);
    diag.triangles = result.complex.num_triangles();
    diag.tetrahedra = result.triangulation.num_tetrahedra();

    BoundReport& bound = diag.bound;
    bound.actual = diag.tetrahedra;
    bool valences_ok = true;
    for (int v = 0; v < mm.graph().num_vertices(); v++)
        if (mm.graph().valence(v) < 3)
            valences_ok = false;
    if (!valences_ok) {
        bound.reason = "a vertex has valence < 3";
    } else if (!is_tight(mm.map)) {
        bound.reason = "the map is not tight";
    } else if (diag.folds == 0) {
        bound.reason = "no folds occur (the map is already an immersion)";
    } else {
        bound.applicable = true;
        bound.bound = 16LL * (5LL * genus(mm.graph()) - 2) * map_size(mm.map);
        bound.ok = bound.actual <= bound.bound;
    }

    return result;
}

BoundReport tetrahedron_bound(const MarkedMap& mm) {
    return build_mapping_torus(mm).diagnostics.bound;
}

} // namespace mtor
