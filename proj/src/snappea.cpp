#include "mtor/snappea.hpp"

#include <sstream>

namespace mtor {

CuspAssignment cusp_assignment(const Triangulation3& t, const LinkReport& links) {
    if (static_cast<int>(links.orbits.size()) != t.num_vertex_orbits())
        throw InternalError("link report does not match the triangulation");
    CuspAssignment out;
    out.cusp_of_orbit.assign(links.orbits.size(), -1);
    for (size_t o = 0; o < links.orbits.size(); o++) {
        const auto& orbit = links.orbits[o];
        if (!orbit.ideal)
            continue;
        if (orbit.surface == "torus") {
            out.cusp_of_orbit[o] = out.total();
            out.orientable_cusps++;
        } else if (orbit.surface == "Klein bottle") {
            out.cusp_of_orbit[o] = out.total();
            out.nonorientable_cusps++;
        } else {
            throw ValidationError("vertex link is a " + orbit.surface +
                                  "; not representable in a SnapPea file");
        }
    }
    return out;
}

std::string write_snappea(const Triangulation3& t, const std::string& name) {
    t.check_closed();
    LinkReport links = vertex_links(t);
    CuspAssignment cusps = cusp_assignment(t, links);
    std::vector<int> orbit_of = t.vertex_orbits();

    std::ostringstream out;
    out << "% Triangulation\n";
    out << (name.empty() ? "unnamed" : name) << "\n";
    out << "not_attempted 0.0\n";
    out << (t.orientation() ? "oriented_manifold" : "nonorientable_manifold") << "\n";
    out << "CS_unknown\n";
    out << "\n";
    out << cusps.orientable_cusps << " " << cusps.nonorientable_cusps << "\n";
    // Cusp declarations in cusp-index order.
    std::vector<std::string> topology(cusps.total());
    for (size_t o = 0; o < links.orbits.size(); o++)
        if (cusps.cusp_of_orbit[o] >= 0)
            topology[cusps.cusp_of_orbit[o]] =
                links.orbits[o].surface == "torus" ? "torus" : "Klein";
    for (const std::string& top : topology)
        out << " " << top << " 0.0 0.0\n";
    out << "\n";
    out << t.num_tetrahedra() << "\n";
    for (int tet = 0; tet < t.num_tetrahedra(); tet++) {
        for (int f = 0; f < 4; f++)
            out << (f ? " " : "") << t.neighbor(tet, f);
        out << "\n";
        for (int f = 0; f < 4; f++)
            out << (f ? " " : "") << t.gluing(tet, f).digits();
        out << "\n";
        for (int v = 0; v < 4; v++)
            out << (v ? " " : "") << cusps.cusp_of_orbit[orbit_of[4 * tet + v]];
        out << "\n";
        // Peripheral curves (meridian/longitude, right/left sheets) are
        // left zero; SnapPea installs defaults on load.
        for (int row = 0; row < 4; row++) {
            for (int i = 0; i < 16; i++)
                out << (i ? " " : "") << 0;
            out << "\n";
        }
        out << "0.0 0.0\n";
        out << "\n";
    }
    return out.str();
}

SnapPeaFile read_snappea(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "% Triangulation")
        throw ParseError("missing % Triangulation header");
    SnapPeaFile file;
    if (!std::getline(in, file.name))
        throw ParseError("missing manifold name");

    std::string solution, orientability, cs;
    double volume;
    if (!(in >> solution >> volume))
        throw ParseError("missing solution type");
    if (!(in >> orientability))
        throw ParseError("missing orientability");
    if (!(in >> cs))
        throw ParseError("missing Chern-Simons tag");
    if (cs == "CS_known") {
        double value;
        in >> value;
    }

    int or_cusps, nonor_cusps;
    if (!(in >> or_cusps >> nonor_cusps))
        throw ParseError("missing cusp counts");
    for (int c = 0; c < or_cusps + nonor_cusps; c++) {
        std::string topology;
        double m, l;
        if (!(in >> topology >> m >> l))
            throw ParseError("bad cusp declaration");
        file.cusp_topologies.push_back(topology);
    }

    int tets;
    if (!(in >> tets) || tets < 0)
        throw ParseError("missing tetrahedron count");
    Triangulation3& t3 = file.triangulation;
    for (int i = 0; i < tets; i++)
        t3.add_tetrahedron();

    std::vector<std::array<int, 4>> neighbors(tets);
    std::vector<std::array<Perm4, 4>> perms(tets);
    file.cusp_index_of_corner.assign(4 * tets, -1);
    for (int tet = 0; tet < tets; tet++) {
        for (int f = 0; f < 4; f++)
            if (!(in >> neighbors[tet][f]) || neighbors[tet][f] < 0 || neighbors[tet][f] >= tets)
                throw ParseError("bad neighbor index");
        for (int f = 0; f < 4; f++) {
            std::string digits;
            if (!(in >> digits))
                throw ParseError("missing gluing permutation");
            perms[tet][f] = Perm4::from_digits(digits);
        }
        for (int v = 0; v < 4; v++)
            if (!(in >> file.cusp_index_of_corner[4 * tet + v]))
                throw ParseError("missing cusp index");
        for (int i = 0; i < 64; i++) {
            int ignored;
            if (!(in >> ignored))
                throw ParseError("missing peripheral curve data");
        }
        double re, im;
        if (!(in >> re >> im))
            throw ParseError("missing tetrahedron shape");
    }

    for (int tet = 0; tet < tets; tet++)
        for (int f = 0; f < 4; f++) {
            if (t3.face_glued(tet, f))
                continue;
            t3.glue(tet, f, neighbors[tet][f], perms[tet][f]);
        }
    t3.check_closed();
    for (int tet = 0; tet < tets; tet++)
        for (int f = 0; f < 4; f++)
            if (t3.neighbor(tet, f) != neighbors[tet][f] || !(t3.gluing(tet, f) == perms[tet][f]))
                throw ParseError("gluing data is not involutive");
    return file;
}

bool identical_gluings(const Triangulation3& a, const Triangulation3& b) {
    if (a.num_tetrahedra() != b.num_tetrahedra())
        return false;
    for (int t = 0; t < a.num_tetrahedra(); t++)
        for (int f = 0; f < 4; f++) {
            if (a.neighbor(t, f) != b.neighbor(t, f))
                return false;
            if (a.face_glued(t, f) && !(a.gluing(t, f) == b.gluing(t, f)))
                return false;
        }
    return true;
}

} // namespace mtor
