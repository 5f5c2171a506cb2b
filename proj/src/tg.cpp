#include "mtor/tg.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace mtor {

namespace {

std::vector<std::string> tokenize(const std::string& raw) {
    std::string line = raw;
    auto pos = line.find("//");
    if (pos != std::string::npos)
        line = line.substr(0, pos);
    std::istringstream in(line);
    std::vector<std::string> tokens;
    std::string token;
    while (in >> token)
        tokens.push_back(token);
    return tokens;
}

} // namespace

TgDocument parse_tg(std::istream& in) {
    TgDocument doc;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        lineno++;
        std::vector<std::string> tokens = tokenize(raw);
        if (tokens.empty())
            continue;
        if (tokens[0] == "T") {
            if (tokens.size() != 5)
                throw ParseError("T line needs four labels", lineno);
            TgDocument::TLine t;
            for (int i = 0; i < 4; i++)
                t.labels[i] = tokens[i + 1];
            std::set<std::string> unique(t.labels.begin(), t.labels.end());
            if (unique.size() != 4)
                throw ParseError("T line labels must be distinct", lineno);
            t.line = lineno;
            doc.tets.push_back(t);
        } else if (tokens[0] == "G") {
            if (tokens.size() != 7)
                throw ParseError("G line needs six labels", lineno);
            TgDocument::GLine g;
            for (int i = 0; i < 6; i++)
                g.labels[i] = tokens[i + 1];
            g.line = lineno;
            doc.gluings.push_back(g);
        } else {
            throw ParseError("unknown line tag '" + tokens[0] + "'", lineno);
        }
    }
    return doc;
}

TgDocument parse_tg_text(const std::string& text) {
    std::istringstream in(text);
    return parse_tg(in);
}

TgDocument load_tg(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    return parse_tg(in);
}

Triangulation3 realize(const TgDocument& doc) {
    Triangulation3 t3;
    for (size_t i = 0; i < doc.tets.size(); i++)
        t3.add_tetrahedron();

    auto corner_of = [&](int tet, const std::string& label) {
        const auto& labels = doc.tets[tet].labels;
        for (int i = 0; i < 4; i++)
            if (labels[i] == label)
                return i;
        return -1;
    };

    // Resolve a label triple to the unique face carrying it.
    auto face_of_triple = [&](const std::array<std::string, 3>& triple, int lineno) {
        int found_tet = -1, found_face = -1;
        for (size_t t = 0; t < doc.tets.size(); t++) {
            int c0 = corner_of(static_cast<int>(t), triple[0]);
            int c1 = corner_of(static_cast<int>(t), triple[1]);
            int c2 = corner_of(static_cast<int>(t), triple[2]);
            if (c0 < 0 || c1 < 0 || c2 < 0)
                continue;
            int face = 6 - c0 - c1 - c2; // the omitted corner
            if (found_tet != -1)
                throw ValidationError("line " + std::to_string(lineno) + ": label triple " +
                                      triple[0] + " " + triple[1] + " " + triple[2] +
                                      " is a face of two tetrahedra");
            found_tet = static_cast<int>(t);
            found_face = face;
        }
        if (found_tet == -1)
            throw ValidationError("line " + std::to_string(lineno) + ": label triple " +
                                  triple[0] + " " + triple[1] + " " + triple[2] +
                                  " matches no tetrahedron face");
        return std::pair<int, int>(found_tet, found_face);
    };

    // Implicit gluings: exactly three labels in common.
    for (size_t a = 0; a < doc.tets.size(); a++) {
        for (size_t b = a + 1; b < doc.tets.size(); b++) {
            std::vector<std::string> shared;
            for (const std::string& la : doc.tets[a].labels)
                for (const std::string& lb : doc.tets[b].labels)
                    if (la == lb)
                        shared.push_back(la);
            if (shared.size() == 4)
                throw ValidationError("tetrahedra on lines " + std::to_string(doc.tets[a].line) +
                                      " and " + std::to_string(doc.tets[b].line) +
                                      " share all four labels (ambiguous implicit gluing)");
            if (shared.size() != 3)
                continue;
            // A third tetrahedron with the same triple is ambiguous.
            for (size_t c = 0; c < doc.tets.size(); c++) {
                if (c == a || c == b)
                    continue;
                int hits = 0;
                for (const std::string& l : shared)
                    if (corner_of(static_cast<int>(c), l) >= 0)
                        hits++;
                if (hits == 3)
                    throw ValidationError("three tetrahedra share the face " + shared[0] + " " +
                                          shared[1] + " " + shared[2]);
            }
            Perm4 how;
            int fa = -1, fb = -1;
            for (int i = 0; i < 4; i++)
                if (std::find(shared.begin(), shared.end(), doc.tets[a].labels[i]) ==
                    shared.end())
                    fa = i;
            for (int i = 0; i < 4; i++)
                if (std::find(shared.begin(), shared.end(), doc.tets[b].labels[i]) ==
                    shared.end())
                    fb = i;
            for (int i = 0; i < 4; i++) {
                if (i == fa)
                    how.img[i] = fb;
                else
                    how.img[i] = corner_of(static_cast<int>(b), doc.tets[a].labels[i]);
            }
            t3.glue(static_cast<int>(a), fa, static_cast<int>(b), how);
        }
    }

    // Explicit gluings, side-wise correspondence v_i -> w_i.
    for (const auto& g : doc.gluings) {
        std::array<std::string, 3> from{g.labels[0], g.labels[1], g.labels[2]};
        std::array<std::string, 3> to{g.labels[3], g.labels[4], g.labels[5]};
        auto [ta, fa] = face_of_triple(from, g.line);
        auto [tb, fb] = face_of_triple(to, g.line);
        Perm4 how;
        how.img[fa] = fb;
        for (int i = 0; i < 3; i++)
            how.img[corner_of(ta, from[i])] = corner_of(tb, to[i]);
        std::set<int> image(how.img.begin(), how.img.end());
        if (image.size() != 4)
            throw ValidationError("line " + std::to_string(g.line) +
                                  ": gluing does not give a corner bijection");
        try {
            t3.glue(ta, fa, tb, how);
        } catch (const ValidationError& err) {
            throw ValidationError("line " + std::to_string(g.line) + ": " + err.what());
        }
    }

    if (!t3.closed()) {
        int unglued = 0;
        for (int t = 0; t < t3.num_tetrahedra(); t++)
            for (int f = 0; f < 4; f++)
                if (!t3.face_glued(t, f))
                    unglued++;
        throw ValidationError(std::to_string(unglued) + " face(s) remain unglued");
    }
    t3.check_closed();
    return t3;
}

std::string emit_tg(const Triangulation3& t) {
    t.check_closed(); // refuse triangulations with free faces

    // Per-corner labels and fully explicit gluings; with all labels
    // distinct no implicit gluing can apply.
    auto label = [&](int tet, int corner) {
        return "t" + std::to_string(tet) + static_cast<char>('a' + corner);
    };

    std::ostringstream out;
    for (int tet = 0; tet < t.num_tetrahedra(); tet++) {
        out << "T";
        for (int corner = 0; corner < 4; corner++)
            out << " " << label(tet, corner);
        out << "\n";
    }
    for (int tet = 0; tet < t.num_tetrahedra(); tet++) {
        for (int face = 0; face < 4; face++) {
            int nt = t.neighbor(tet, face);
            int nf = t.gluing(tet, face)[face];
            if (std::make_pair(tet, face) > std::make_pair(nt, nf))
                continue;
            out << "G";
            for (int corner = 0; corner < 4; corner++)
                if (corner != face)
                    out << " " << label(tet, corner);
            for (int corner = 0; corner < 4; corner++)
                if (corner != face)
                    out << " " << label(nt, t.gluing(tet, face)[corner]);
            out << "\n";
        }
    }
    return out.str();
}

} // namespace mtor
