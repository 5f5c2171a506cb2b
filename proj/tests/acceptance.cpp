// Acceptance suite: one check per release criterion, each printed as a
// PASS/FAIL line.  Returns the number of failures.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "fixtures.hpp"
#include "mtor/fold.hpp"
#include "mtor/group.hpp"
#include "mtor/mapping_torus.hpp"
#include "mtor/snappea.hpp"
#include "mtor/surface.hpp"
#include "mtor/tg.hpp"

using namespace mtor;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
    if (!ok)
        failures++;
    std::cout << (ok ? "  ok   " : "  FAIL ") << what << "\n";
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Criterion {
    int number;
    std::string title;
    std::function<void()> body;
};

void run(const Criterion& c) {
    std::cout << "criterion " << c.number << ": " << c.title << "\n";
    int before = failures;
    try {
        c.body();
    } catch (const std::exception& err) {
        failures++;
        std::cout << "  FAIL exception: " << err.what() << "\n";
    }
    std::cout << (failures == before ? "PASS" : "FAIL") << " criterion " << c.number << "\n\n";
}

// ------------------------------------------------------------------

void criterion1() {
    auto start = Clock::now();
    MarkedMap mm = fixtures::example1();
    FoldSequence seq = decompose(mm);
    std::string trace = fold_sequence_trace(seq);
    double elapsed = seconds_since(start);

    check(map_size(mm.map) == 23, "map size of the input is 23");

    const std::string golden =
        "subdivision s_0: fold candidate (~a, ~b), common prefix 4\n"
        "  s_0(a) = a_1 a_2\n"
        "  s_0(b) = b_1 b_2\n"
        "  s_0(c) = c\n"
        "  s_0(d) = d\n"
        "stage 1: 6 edges, size 23\n"
        "  sigma_1 = a_1 a_2 ~b_2 ~b_1 ~a_2 ~a_1 b_1 b_2 c ~d ~c d\n"
        "fold p_0: identifies ~a_2 with ~b_2 (partial)\n"
        "  p_0(a_1) = a_1\n"
        "  p_0(a_2) = b_2\n"
        "  p_0(b_1) = b_1\n"
        "  p_0(b_2) = b_2\n"
        "  p_0(c) = c\n"
        "  p_0(d) = d\n"
        "stage 2: 5 edges, size 19\n"
        "  sigma_2 = a_1 ~b_1 ~b_2 ~a_1 b_1 b_2 c ~d ~c d\n"
        "map g_1:\n"
        "  g_1(a_1) = a\n"
        "  g_1(b_1) = b c ~d ~c b\n"
        "  g_1(b_2) = c d ~c ~b\n"
        "  g_1(c) = b c ~d ~d\n"
        "  g_1(d) = d d ~c ~b d\n";
    check(trace.find(golden) != std::string::npos,
          "trace reproduces s_0, p_0, g_1, sigma_1, sigma_2 verbatim");
    check(elapsed < 0.1, "runtime < 0.1 s (" + std::to_string(elapsed) + ")");
}

void criterion2() {
    auto start = Clock::now();
    Triangulation3 t = realize(load_tg(fixtures::path("appendix_a.tg")));
    LinkReport links = vertex_links(t);
    AbelianGroup h1 = t.first_homology();
    double elapsed = seconds_since(start);

    check(t.num_tetrahedra() == 2, "2 tetrahedra");
    int glued = 0;
    for (int tet = 0; tet < t.num_tetrahedra(); tet++)
        for (int f = 0; f < 4; f++)
            if (t.face_glued(tet, f))
                glued++;
    check(glued == 8, "4 face gluings, every face-side matched");
    check(t.num_vertex_orbits() == 1, "exactly one vertex orbit");
    check(links.orbits.size() == 1 && links.orbits[0].chi == 0 && links.orbits[0].orientable &&
              links.orbits[0].surface == "torus",
          "the link is a torus (chi = 0, orientable)");
    check(h1.free_rank == 1 && h1.torsion.empty(), "H1 = Z from the chain complex");
    check(elapsed < 0.1, "runtime < 0.1 s (" + std::to_string(elapsed) + ")");
}

void criterion3() {
    auto start = Clock::now();
    MarkedMap mm = fixtures::fig8();
    MappingTorus mt = build_mapping_torus(mm);
    Presentation hnn = pi1_presentation(mm);
    Presentation simplified = tietze_simplify(hnn);
    AbelianGroup h1 = abelianization(hnn);
    double elapsed = seconds_since(start);

    bool links_ok = mt.links.ideal_count() == 1;
    for (const auto& orbit : mt.links.orbits)
        links_ok = links_ok && (orbit.ideal ? orbit.surface == "torus" : orbit.surface == "sphere");
    check(links_ok, "one ideal torus vertex, all finite links spheres");
    check(mt.triangulation.num_tetrahedra() <= 240,
          "tetrahedron count " + std::to_string(mt.triangulation.num_tetrahedra()) + " <= 240");

    Presentation expect;
    expect.generators = {"a", "b", "t"};
    expect.relators = {expect.parse_word("~t a t ~a ~b"), expect.parse_word("~t b t ~a ~b ~b")};
    SignedRenaming id{{{"a", {"a", false}}, {"b", {"b", false}}, {"t", {"t", false}}}};
    bool pres_ok = hnn.generators == expect.generators && hnn.relators.size() == 2;
    for (int i = 0; pres_ok && i < 2; i++)
        pres_ok = words_cyclically_equal(hnn, hnn.relators[i], expect, expect.relators[i], id);
    check(pres_ok, "pi1 presentation is < a, b, t | ~t a t = b a, ~t b t = b b a >");

    Presentation paper;
    paper.generators = {"a", "t"};
    paper.relators = {paper.parse_word("t ~a ~a t a ~t ~a ~t a")};
    bool simp_ok = simplified.generators.size() == 2 && simplified.relators.size() == 1 &&
                   simplified.relators[0].size() == 9 &&
                   words_cyclically_equal(paper, paper.relators[0], simplified,
                                          simplified.relators[0]);
    check(simp_ok, "simplified to two generators and the length-9 relator");
    check(h1.free_rank == 1 && h1.torsion.empty(), "abelianization is Z");
    check(elapsed < 1.0, "runtime < 1 s (" + std::to_string(elapsed) + ")");
}

void criterion4() {
    Presentation snap;
    snap.generators = {"x", "y"};
    snap.relators = {snap.parse_word("~y ~x ~x ~x ~y x y y x")};
    Presentation from_snap = tietze_simplify(snap);

    Presentation from_pipeline = tietze_simplify(pi1_presentation(fixtures::fig8()));

    bool shapes = from_snap.generators.size() == 2 && from_snap.relators.size() == 1 &&
                  from_pipeline.generators.size() == 2 && from_pipeline.relators.size() == 1;
    check(shapes, "both simplify to one-relator two-generator presentations");
    check(shapes && words_cyclically_equal(from_pipeline, from_pipeline.relators[0], from_snap,
                                           from_snap.relators[0]),
          "the relators agree up to rotation/inversion and a generator renaming");
    std::cout << "  note external isometry verification is out of scope; this "
                 "presentation-level check substitutes for it\n";
}

void criterion5() {
    auto start = Clock::now();
    struct Fixture {
        std::string name;
        MarkedMap mm;
    };
    std::vector<Fixture> fixtures_list;
    fixtures_list.push_back({"example1", fixtures::example1()});
    fixtures_list.push_back({"fig8", fixtures::fig8()});
    fixtures_list.push_back({"identity rose g=1", fixtures::identity_rose(1)});
    fixtures_list.push_back({"identity rose g=2", fixtures::identity_rose(2)});
    fixtures_list.push_back({"fig8^2", fixtures::power(fixtures::fig8(), 2)});
    fixtures_list.push_back({"fig8^3", fixtures::power(fixtures::fig8(), 3)});

    for (const auto& fixture : fixtures_list) {
        bool ok = true;
        std::string why;
        try {
            FoldSequence seq = decompose(fixture.mm);
            verify_fold_sequence(seq, fixture.mm); // (a) composition, (b) sizes
            SurfaceComplex k = assemble_torus(seq); // (c),(d) checked internally
            if (k.euler_characteristic() != 0)
                throw InternalError("chi != 0");
            Triangulation3 t = cone_and_glue(k);
            t.check_closed(); // (e)
            AbelianGroup oracle = mapping_torus_h1_oracle(fixture.mm);
            if (!(t.first_homology() == oracle))
                throw InternalError("triangulation H1 differs from the oracle");
            if (!(quotient_h1(k) == oracle))
                throw InternalError("quotient H1 differs from the oracle");
        } catch (const std::exception& err) {
            ok = false;
            why = err.what();
        }
        check(ok, fixture.name + (ok ? "" : ": " + why));
    }
    double elapsed = seconds_since(start);
    check(elapsed < 10.0, "full suite < 10 s (" + std::to_string(elapsed) + ")");
}

void criterion6() {
    struct Case {
        std::string name;
        Triangulation3 t;
    };
    std::vector<Case> cases;
    cases.push_back({"appendix A", realize(load_tg(fixtures::path("appendix_a.tg")))});
    for (const char* name : {"fig8.map", "example1.map", "identity_rose1.map",
                             "identity_rose2.map"})
        cases.push_back({name, build_mapping_torus(fixtures::load(name)).triangulation});
    cases.push_back({"fig8^2",
                     build_mapping_torus(fixtures::power(fixtures::fig8(), 2)).triangulation});
    cases.push_back({"fig8^3",
                     build_mapping_torus(fixtures::power(fixtures::fig8(), 3)).triangulation});

    for (const auto& c : cases) {
        Triangulation3 again = realize(parse_tg_text(emit_tg(c.t)));
        bool ok = again.num_tetrahedra() == c.t.num_tetrahedra() &&
                  again.num_edge_orbits() == c.t.num_edge_orbits() &&
                  again.num_vertex_orbits() == c.t.num_vertex_orbits();
        std::multiset<int> chi1, chi2;
        for (const auto& o : vertex_links(c.t).orbits)
            chi1.insert(o.chi);
        for (const auto& o : vertex_links(again).orbits)
            chi2.insert(o.chi);
        ok = ok && chi1 == chi2 && isomorphic(c.t, again);
        check(ok, "round trip preserves " + c.name);
    }
}

void criterion7() {
    struct Case {
        std::string name;
        Triangulation3 t;
    };
    std::vector<Case> cases;
    cases.push_back({"appendix A", realize(load_tg(fixtures::path("appendix_a.tg")))});
    cases.push_back({"fig8 pipeline", build_mapping_torus(fixtures::fig8()).triangulation});
    cases.push_back({"example1 pipeline",
                     build_mapping_torus(fixtures::example1()).triangulation});

    for (const auto& c : cases) {
        std::string text = write_snappea(c.t, c.name);
        SnapPeaFile file = read_snappea(text);
        bool involutive = true;
        for (int tet = 0; tet < c.t.num_tetrahedra(); tet++)
            for (int f = 0; f < 4; f++) {
                int nt = c.t.neighbor(tet, f);
                int nf = c.t.gluing(tet, f)[f];
                involutive = involutive && c.t.neighbor(nt, nf) == tet &&
                             c.t.gluing(nt, nf).after(c.t.gluing(tet, f)).is_identity();
            }
        check(identical_gluings(c.t, file.triangulation) && involutive,
              c.name + ": reader reproduces the gluings, blocks involutive");
    }
    std::cout << "  note loading the emitted files into the reference implementation "
                 "(2 tetrahedra, 1 cusp for criterion 2's file) is a documented manual "
                 "check, not a CI gate\n";
}

void criterion8() {
    std::cout << "  note hyperbolic volumes, growth rates and isometry/conjugacy "
                 "decisions require external software and are not reproduced\n";
}

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "golden decomposition of the genus-2 example", criterion1},
        {2, "two-tetrahedron gluing document", criterion2},
        {3, "figure-eight pipeline", criterion3},
        {4, "presentation cross-check", criterion4},
        {5, "property suite over the fixture set", criterion5},
        {6, "T/G round trip", criterion6},
        {7, "emitter validity", criterion7},
        {8, "out-of-scope quantities (informational)", criterion8},
    };
    for (const auto& c : criteria)
        run(c);
    if (failures == 0)
        std::cout << "all criteria passed\n";
    else
        std::cout << failures << " check(s) failed\n";
    return failures == 0 ? 0 : 1;
}
