#include <doctest.h>

#include <map>
#include <random>

#include "fixtures.hpp"
#include "mtor/group.hpp"
#include "mtor/mapping_torus.hpp"
#include "mtor/surface.hpp"

using namespace mtor;

namespace {

int count_kind(const std::vector<SurfaceComplex::Triangle>& tris, CellKind kind) {
    int n = 0;
    for (const auto& t : tris)
        if (t.kind == kind)
            n++;
    return n;
}

} // namespace

TEST_CASE("first subdivision annulus of the golden example has 20 triangles") {
    FoldSequence seq = decompose(fixtures::example1());
    TorusBuilder builder(seq);
    builder.add_subdivision_annulus(0);
    const SurfaceComplex& k = builder.peek();
    auto tris = k.annulus_triangles(0);
    CHECK(tris.size() == 20);
    CHECK(count_kind(tris, CellKind::pentagon) == 12); // 4 pentagons, 3 each
    CHECK(count_kind(tris, CellKind::rectangle) == 8); // 4 rectangles, 2 each
}

TEST_CASE("identity subdivision steps give all-rectangle annuli") {
    // The duplicated-image stage folds whole edges; its subdivision annulus
    // consists of rectangles only.
    Graph g;
    g.add_vertex("v");
    g.add_edge("x", 0, 0);
    g.add_edge("y", 0, 0);
    GraphMap map{g, g, {0}, {parse_path(g, "x"), parse_path(g, "x")}};
    CyclicPath sigma(parse_path(g, "x ~y ~x y").steps);
    MarkedMap mm{map, sigma};
    Stage stage{g, map, sigma};
    auto [sub, odd] = subdivide(stage, *find_fold_candidate(mm));
    FoldSequence partial;
    partial.stages = {stage, odd};
    partial.subdivisions = {sub};
    TorusBuilder builder(partial);
    builder.add_subdivision_annulus(0);
    auto tris = builder.peek().annulus_triangles(0);
    CHECK(tris.size() == 8);
    CHECK(count_kind(tris, CellKind::pentagon) == 0);
}

TEST_CASE("subdivision pairing mirrors occurrences of the same label") {
    MarkedMap mm = fixtures::example1();
    FoldSequence seq = decompose(mm);
    TorusBuilder builder(seq);
    builder.add_subdivision_annulus(0);
    const SurfaceComplex& k = builder.peek();

    const CyclicPath& sigma = seq.stages[0].sigma;
    int pos_c = -1, pos_cbar = -1;
    for (int j = 0; j < sigma.length(); j++) {
        if (mm.graph().dir_name(sigma.at(j)) == "c")
            pos_c = j;
        if (mm.graph().dir_name(sigma.at(j)) == "~c")
            pos_cbar = j;
    }
    REQUIRE(pos_c >= 0);
    REQUIRE(pos_cbar >= 0);
    for (int t = 0; t < k.num_triangles(); t++) {
        if (k.triangles[t].occurrence == pos_c) {
            int partner = k.pair_with[t];
            CHECK(k.triangles[partner].occurrence == pos_cbar);
        }
    }
}

TEST_CASE("first fold annulus of the golden example matches the paper layout") {
    FoldSequence seq = decompose(fixtures::example1());
    TorusBuilder builder(seq);
    builder.add_subdivision_annulus(0);
    builder.add_fold_annulus(0);
    const SurfaceComplex& k = builder.peek();
    REQUIRE(k.annuli.size() == 2);
    const auto& info = k.annuli[1];
    CHECK(info.w_text == "a_2 ~b_2 ~b_1 ~a_2");
    CHECK(info.u_length == 1);
    CHECK(!info.mirror_case);
    // sigma_1 has length 12, so the annulus has 2*12 - 2 = 22 triangles.
    CHECK(info.num_triangles == 22);
    auto tris = k.annulus_triangles(1);
    CHECK(count_kind(tris, CellKind::fold_bigon) == 2);
    CHECK(count_kind(tris, CellKind::fold_rectangle) == 2);
    CHECK(count_kind(tris, CellKind::fold_partner) == 2);
}

TEST_CASE("full fold of the figure-eight map builds a valid annulus") {
    FoldSequence seq = decompose(fixtures::fig8());
    SurfaceComplex k = assemble_torus(seq); // includes all pairing checks
    CHECK(k.annuli.size() == 5);           // two subdivision/fold pairs + final
    CHECK(k.euler_characteristic() == 0);
}

TEST_CASE("rectangles over uninvolved edges are mirror paired in fold annuli") {
    FoldSequence seq = decompose(fixtures::example1());
    TorusBuilder builder(seq);
    builder.add_subdivision_annulus(0);
    builder.add_fold_annulus(0);
    const SurfaceComplex& k = builder.peek();
    const CyclicPath& sigma1 = seq.stages[1].sigma;
    const Graph& g1 = seq.stages[1].graph;
    std::map<std::string, int> pos;
    for (int j = 0; j < sigma1.length(); j++)
        pos[g1.dir_name(sigma1.at(j))] = j;
    for (const auto& tri : k.annulus_triangles(1)) {
        if (tri.kind == CellKind::rectangle && tri.occurrence == pos["c"]) {
            // find the triangle's id to look up the pairing
            for (int t = 0; t < k.num_triangles(); t++)
                if (k.triangles[t].annulus == 1 && k.triangles[t].occurrence == pos["c"] &&
                    k.triangles[t].index_in_cell == tri.index_in_cell) {
                    CHECK(k.triangles[k.pair_with[t]].occurrence == pos["~c"]);
                }
        }
    }
}

TEST_CASE("the golden example exercises both fold normal forms") {
    SurfaceComplex k = assemble_torus(decompose(fixtures::example1()));
    int straight = 0, mirror = 0;
    for (const auto& info : k.annuli)
        if (info.type == SurfaceComplex::AnnulusInfo::Type::fold)
            (info.mirror_case ? mirror : straight)++;
    CHECK(straight > 0);
    CHECK(mirror > 0); // w = a ~b u b occurs along the way
}

TEST_CASE("final gluing of an identity map is the suspension torus") {
    FoldSequence seq = decompose(fixtures::identity_rose(2));
    SurfaceComplex k = assemble_torus(seq);
    CHECK(k.annuli.size() == 1);
    CHECK(k.annuli[0].type == SurfaceComplex::AnnulusInfo::Type::final_gluing);
    // 2 (2 E) triangles: one annulus, E labels twice, 2 triangles per cell.
    CHECK(k.num_triangles() == 2 * (2 * fixtures::identity_rose(2).graph().num_edges()));
    CHECK(k.euler_characteristic() == 0);
}

TEST_CASE("assembled tori pass all invariants") {
    for (const auto& mm : {fixtures::example1(), fixtures::fig8(), fixtures::identity_rose(1),
                           fixtures::load("theta_identity.map")}) {
        FoldSequence seq = decompose(mm);
        SurfaceComplex k = assemble_torus(seq);
        verify_surface_complex(k); // chi, orientation, involution
        CHECK(k.euler_characteristic() == 0);
        // Triangle count is the sum over the annuli.
        int total = 0;
        for (const auto& info : k.annuli)
            total += info.num_triangles;
        CHECK(total == k.num_triangles());
    }
}

TEST_CASE("pairing respects labels outside fold regions") {
    FoldSequence seq = decompose(fixtures::example1());
    SurfaceComplex k = assemble_torus(seq);
    int stages = static_cast<int>(seq.stages.size());
    for (int t = 0; t < k.num_triangles(); t++) {
        const auto& tri = k.triangles[t];
        if (tri.kind != CellKind::rectangle && tri.kind != CellKind::pentagon)
            continue;
        int bottom_stage = tri.annulus < stages - 1 ? tri.annulus : stages - 1;
        const CyclicPath& sigma = seq.stages[bottom_stage].sigma;
        const auto& partner = k.triangles[k.pair_with[t]];
        CHECK(partner.annulus == tri.annulus);
        CHECK(sigma.at(partner.occurrence) == reverse_dir(sigma.at(tri.occurrence)));
    }
}

TEST_CASE("quotient homology matches the Smith-form oracle") {
    for (const auto& mm : {fixtures::fig8(), fixtures::identity_rose(1),
                           fixtures::identity_rose(2), fixtures::load("theta_identity.map")}) {
        SurfaceComplex k = assemble_torus(decompose(mm));
        AbelianGroup got = quotient_h1(k);
        AbelianGroup want = mapping_torus_h1_oracle(mm);
        CHECK(got == want);
        CHECK(got.free_rank >= 1);
    }
}

TEST_CASE("random twist compositions run the whole construction") {
    // Dehn twists along the two rose loops and their inverses; every
    // composition represents a punctured-torus homeomorphism fixing sigma.
    MarkedMap base = fixtures::identity_rose(1);
    const Graph& g = base.graph();
    auto twist = [&](const char* a_img, const char* b_img) {
        GraphMap m{g, g, {0}, {parse_path(g, a_img), parse_path(g, b_img)}};
        return m;
    };
    std::vector<GraphMap> twists = {twist("a b", "b"), twist("a ~b", "b"), twist("a", "b a"),
                                    twist("a", "b ~a")};
    std::mt19937 rng(41);
    int built = 0;
    for (int trial = 0; trial < 40; trial++) {
        GraphMap m = identity_map(g);
        int len = 1 + static_cast<int>(rng() % 5);
        for (int i = 0; i < len; i++)
            m = compose(twists[rng() % twists.size()], m);
        MarkedMap mm{m, base.boundary};
        REQUIRE(validate(mm).ok());
        FoldSequence seq;
        try {
            seq = decompose(mm);
        } catch (const ValidationError& err) {
            // Non-tight compositions may fold a vertex down to a single
            // direction; they are rejected with an explanation.
            CHECK(!is_tight(mm.map));
            CHECK(std::string(err.what()).find("not tight") != std::string::npos);
            continue;
        }
        built++;
        verify_fold_sequence(seq, mm);
        SurfaceComplex k = assemble_torus(seq);
        AbelianGroup oracle = mapping_torus_h1_oracle(mm);
        CHECK(quotient_h1(k) == oracle);
        Triangulation3 t = cone_and_glue(k);
        CHECK(t.first_homology() == oracle);
        LinkReport links = vertex_links(t);
        CHECK(links.ideal_count() == 1);
        for (const auto& orbit : links.orbits)
            CHECK((orbit.ideal ? orbit.surface == "torus" : orbit.surface == "sphere"));
    }
    CHECK(built >= 20); // most compositions run the construction end to end
}

TEST_CASE("off dump is stable and lists the pairing") {
    SurfaceComplex k = assemble_torus(decompose(fixtures::identity_rose(1)));
    std::string dump = dump_off(k);
    CHECK(dump.substr(0, 4) == "OFF\n");
    CHECK(dump.find("# pairing") != std::string::npos);
    CHECK(dump == dump_off(k));
}
