#include <doctest.h>

#include "fixtures.hpp"
#include "mtor/mapping_torus.hpp"
#include "mtor/snappea.hpp"
#include "mtor/tg.hpp"

using namespace mtor;

TEST_CASE("identity permutation encodes as 0123") {
    Perm4 id;
    CHECK(id.digits() == "0123");
    CHECK(Perm4::from_digits("2103").inverse().digits() == "2103");
}

TEST_CASE("cusp assignment for pipeline outputs") {
    MappingTorus mt = build_mapping_torus(fixtures::fig8());
    CuspAssignment cusps = cusp_assignment(mt.triangulation, mt.links);
    CHECK(cusps.orientable_cusps == 1);
    CHECK(cusps.nonorientable_cusps == 0);
    int ideal = 0, finite = 0;
    for (int c : cusps.cusp_of_orbit)
        (c >= 0 ? ideal : finite)++;
    CHECK(ideal == 1);
}

TEST_CASE("all-finite input gets zero cusps") {
    Triangulation3 t = realize(load_tg(fixtures::path("doubled_tet.tg")));
    LinkReport links = vertex_links(t);
    CuspAssignment cusps = cusp_assignment(t, links);
    CHECK(cusps.total() == 0);
    for (int c : cusps.cusp_of_orbit)
        CHECK(c == -1);
}

TEST_CASE("appendix document has one torus cusp and no finite vertices") {
    Triangulation3 t = realize(load_tg(fixtures::path("appendix_a.tg")));
    CuspAssignment cusps = cusp_assignment(t, vertex_links(t));
    CHECK(cusps.orientable_cusps == 1);
    CHECK(cusps.cusp_of_orbit == std::vector<int>{0});
}

TEST_CASE("snappea file structure for the figure-eight triangulation") {
    Triangulation3 t = realize(load_tg(fixtures::path("appendix_a.tg")));
    std::string text = write_snappea(t, "fig8");
    CHECK(text.find("% Triangulation\nfig8\n") == 0);
    CHECK(text.find("not_attempted 0.0\n") != std::string::npos);
    CHECK(text.find("oriented_manifold\n") != std::string::npos);
    CHECK(text.find("CS_unknown\n") != std::string::npos);
    CHECK(text.find("1 0\n") != std::string::npos);
    CHECK(text.find(" torus 0.0 0.0\n") != std::string::npos);
    CHECK(text.find("\n2\n") != std::string::npos); // tetrahedron count
}

TEST_CASE("emitter is deterministic") {
    MappingTorus mt = build_mapping_torus(fixtures::fig8());
    std::string once = write_snappea(mt.triangulation, "m");
    std::string twice = write_snappea(mt.triangulation, "m");
    CHECK(once == twice);
}

TEST_CASE("internal reader reproduces the gluing structure") {
    for (const char* fixture : {"appendix_a.tg", "doubled_tet.tg"}) {
        Triangulation3 t = realize(load_tg(fixtures::path(fixture)));
        SnapPeaFile file = read_snappea(write_snappea(t, "roundtrip"));
        CHECK(file.name == "roundtrip");
        CHECK(identical_gluings(t, file.triangulation));
    }
    MappingTorus mt = build_mapping_torus(fixtures::fig8());
    SnapPeaFile file = read_snappea(write_snappea(mt.triangulation, "pipe"));
    CHECK(identical_gluings(mt.triangulation, file.triangulation));
}

TEST_CASE("neighbor and permutation blocks are involutive") {
    MappingTorus mt = build_mapping_torus(fixtures::fig8());
    const Triangulation3& t = mt.triangulation;
    for (int tet = 0; tet < t.num_tetrahedra(); tet++)
        for (int f = 0; f < 4; f++) {
            int nt = t.neighbor(tet, f);
            int nf = t.gluing(tet, f)[f];
            CHECK(t.neighbor(nt, nf) == tet);
            CHECK(t.gluing(nt, nf).after(t.gluing(tet, f)).is_identity());
        }
}

TEST_CASE("reader rejects corrupted files") {
    CHECK_THROWS_AS(read_snappea("nonsense"), ParseError);
    Triangulation3 t = realize(load_tg(fixtures::path("appendix_a.tg")));
    std::string text = write_snappea(t, "x");
    CHECK_THROWS_AS(read_snappea(text.substr(0, text.size() / 2)), ParseError);
}
