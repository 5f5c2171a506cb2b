#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "mtor/triangulation.hpp"

namespace mtor {

// The human-readable gluing format:
//   T v1 v2 v3 v4            a tetrahedron with distinct vertex labels
//   G v1 v2 v3 w1 w2 w3      glue side [v1,v2] to [w1,w2], [v2,v3] to
//                            [w2,w3], [v3,v1] to [w3,w1]
// Tetrahedra sharing exactly three labels are glued implicitly along the
// shared face; blank lines and // comments are allowed.
struct TgDocument {
    struct TLine {
        std::array<std::string, 4> labels;
        int line = 0;
    };
    struct GLine {
        std::array<std::string, 6> labels;
        int line = 0;
    };
    std::vector<TLine> tets;
    std::vector<GLine> gluings;
};

TgDocument parse_tg(std::istream& in);
TgDocument parse_tg_text(const std::string& text);
TgDocument load_tg(const std::string& path);

// Builds the triangulation: explicit G gluings plus one implicit gluing
// per pair of tetrahedra sharing exactly three labels.  Every face must
// end up glued exactly once.
Triangulation3 realize(const TgDocument& doc);

// Writes a document that realizes back to an isomorphic triangulation.
// Labels are per-corner and every gluing is explicit, so no implicit
// gluings can interfere.  Requires a closed triangulation.
std::string emit_tg(const Triangulation3& t);

} // namespace mtor
