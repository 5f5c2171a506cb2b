#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "mtor/mapping_torus.hpp"
#include "mtor/tg.hpp"

using namespace mtor;

TEST_CASE("parse_tg reads the five-line figure-eight document") {
    TgDocument doc = load_tg(fixtures::path("appendix_a.tg"));
    CHECK(doc.tets.size() == 2);
    CHECK(doc.gluings.size() == 3);
}

TEST_CASE("parse_tg rejects duplicate labels in a T line") {
    CHECK_THROWS_AS(parse_tg_text("T a b c c\n"), ParseError);
}

TEST_CASE("parse_tg accepts comments and blank lines") {
    TgDocument doc = parse_tg_text("// comment\n"
                                   "\n"
                                   "T a b c d // trailing\n"
                                   "T b c d e\n"
                                   "G b e d a c d\n"
                                   "G c b e a b d\n"
                                   "G c e d a c b\n");
    CHECK(doc.tets.size() == 2);
    CHECK(doc.gluings.size() == 3);
}

TEST_CASE("parse_tg rejects unknown tags and bad arity") {
    CHECK_THROWS_AS(parse_tg_text("X a b c d\n"), ParseError);
    CHECK_THROWS_AS(parse_tg_text("T a b c\n"), ParseError);
    CHECK_THROWS_AS(parse_tg_text("G a b c d e\n"), ParseError);
}

TEST_CASE("realize builds the figure-eight triangulation") {
    Triangulation3 t = realize(load_tg(fixtures::path("appendix_a.tg")));
    CHECK(t.num_tetrahedra() == 2);
    CHECK(t.closed()); // all 8 face-sides matched
    // 4 gluings: 1 implicit on {b,c,d} and 3 explicit.
    int gluings = 0;
    for (int tet = 0; tet < 2; tet++)
        for (int f = 0; f < 4; f++)
            if (t.face_glued(tet, f))
                gluings++;
    CHECK(gluings == 8);
    CHECK(t.num_vertex_orbits() == 1);
    CHECK(t.num_edge_orbits() == 2);
    LinkReport links = vertex_links(t);
    REQUIRE(links.orbits.size() == 1);
    CHECK(links.orbits[0].surface == "torus");
    CHECK(links.orbits[0].chi == 0);
    CHECK(links.orbits[0].orientable);
    AbelianGroup h1 = t.first_homology();
    CHECK(h1.free_rank == 1);
    CHECK(h1.torsion.empty());
}

TEST_CASE("realize rejects an explicit gluing that repeats an implicit one") {
    CHECK_THROWS_AS(realize(parse_tg_text("T a b c d\n"
                                          "T b c d e\n"
                                          "G b c d b c d\n")),
                    ValidationError);
}

TEST_CASE("realize rejects ambiguous implicit gluings") {
    CHECK_THROWS_AS(realize(parse_tg_text("T a b c d\n"
                                          "T b c d e\n"
                                          "T b c d f\n")),
                    ValidationError);
    CHECK_THROWS_AS(realize(parse_tg_text("T a b c d\n"
                                          "T a b c d\n")),
                    ValidationError);
}

TEST_CASE("realize reports unglued faces") {
    CHECK_THROWS_WITH_AS(realize(parse_tg_text("T a b c d\n")), "4 face(s) remain unglued",
                         ValidationError);
}

TEST_CASE("realize of the doubled tetrahedron has four sphere vertices") {
    Triangulation3 t = realize(load_tg(fixtures::path("doubled_tet.tg")));
    CHECK(t.num_tetrahedra() == 2);
    LinkReport links = vertex_links(t);
    CHECK(links.orbits.size() == 4);
    for (const auto& orbit : links.orbits)
        CHECK(orbit.surface == "sphere");
}

TEST_CASE("implicit gluings equal a brute-force scan") {
    TgDocument doc = load_tg(fixtures::path("appendix_a.tg"));
    // Count label triples shared by exactly two tetrahedra.
    int count = 0;
    for (size_t a = 0; a < doc.tets.size(); a++)
        for (size_t b = a + 1; b < doc.tets.size(); b++) {
            std::set<std::string> la(doc.tets[a].labels.begin(), doc.tets[a].labels.end());
            int shared = 0;
            for (const auto& l : doc.tets[b].labels)
                if (la.count(l))
                    shared++;
            if (shared == 3)
                count++;
        }
    CHECK(count == 1);
}

TEST_CASE("emit_tg round trips the figure-eight document") {
    Triangulation3 t = realize(load_tg(fixtures::path("appendix_a.tg")));
    Triangulation3 again = realize(parse_tg_text(emit_tg(t)));
    CHECK(isomorphic(t, again));
    CHECK(again.num_edge_orbits() == t.num_edge_orbits());
    CHECK(again.num_vertex_orbits() == t.num_vertex_orbits());
    LinkReport l1 = vertex_links(t), l2 = vertex_links(again);
    REQUIRE(l1.orbits.size() == l2.orbits.size());
    CHECK(l1.orbits[0].surface == l2.orbits[0].surface);
}

TEST_CASE("emit_tg refuses unclosed triangulations") {
    Triangulation3 t;
    t.add_tetrahedron();
    CHECK_THROWS_AS(emit_tg(t), ValidationError);
}

TEST_CASE("pipeline output round trips with identical links") {
    MappingTorus mt = build_mapping_torus(fixtures::fig8());
    Triangulation3 again = realize(parse_tg_text(emit_tg(mt.triangulation)));
    CHECK(isomorphic(mt.triangulation, again));
    LinkReport l1 = mt.links, l2 = vertex_links(again);
    std::multiset<std::string> s1, s2;
    for (const auto& o : l1.orbits)
        s1.insert(o.surface);
    for (const auto& o : l2.orbits)
        s2.insert(o.surface);
    CHECK(s1 == s2);
}
