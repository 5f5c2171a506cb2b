#include "mtor/marked_map_io.hpp"

#include <fstream>
#include <sstream>

namespace mtor {

namespace {

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<std::string> split(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> tokens;
    std::string token;
    while (in >> token)
        tokens.push_back(token);
    return tokens;
}

} // namespace

MarkedMap parse_marked_map(std::istream& in) {
    Graph g;
    std::vector<std::pair<int, EdgePath>> images; // edge -> image, in file order
    std::vector<bool> has_image;
    std::optional<CyclicPath> boundary;
    bool saw_vertices = false;

    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        lineno++;
        std::string line = strip_comment(raw);
        std::vector<std::string> tokens = split(line);
        if (tokens.empty())
            continue;
        try {
            if (tokens[0] == "vertices:") {
                if (saw_vertices)
                    throw ParseError("duplicate vertices: line", lineno);
                if (tokens.size() < 2)
                    throw ParseError("vertices: needs at least one vertex", lineno);
                for (size_t i = 1; i < tokens.size(); i++) {
                    if (g.find_vertex(tokens[i]))
                        throw ParseError("duplicate vertex '" + tokens[i] + "'", lineno);
                    g.add_vertex(tokens[i]);
                }
                saw_vertices = true;
            } else if (tokens[0] == "edge") {
                if (tokens.size() != 4)
                    throw ParseError("expected: edge <name> <v_init> <v_term>", lineno);
                auto vi = g.find_vertex(tokens[2]);
                auto vt = g.find_vertex(tokens[3]);
                if (!vi || !vt)
                    throw ParseError("edge '" + tokens[1] + "' references an unknown vertex",
                                     lineno);
                g.add_edge(tokens[1], *vi, *vt);
                has_image.push_back(false);
            } else if (tokens[0] == "map") {
                if (tokens.size() < 4 || tokens[2] != "=")
                    throw ParseError("expected: map <name> = <edge path>", lineno);
                auto e = g.find_edge(tokens[1]);
                if (!e)
                    throw ParseError("map for unknown edge '" + tokens[1] + "'", lineno);
                if (has_image[*e])
                    throw ParseError("duplicate map line for '" + tokens[1] + "'", lineno);
                std::vector<DirEdge> steps;
                for (size_t i = 3; i < tokens.size(); i++)
                    steps.push_back(g.dir_from_name(tokens[i]));
                images.emplace_back(*e, EdgePath(std::move(steps)));
                has_image[*e] = true;
            } else if (tokens[0] == "boundary") {
                if (tokens.size() < 3 || tokens[1] != "=")
                    throw ParseError("expected: boundary = <edge path>", lineno);
                if (boundary)
                    throw ParseError("duplicate boundary line", lineno);
                std::vector<DirEdge> steps;
                for (size_t i = 2; i < tokens.size(); i++)
                    steps.push_back(g.dir_from_name(tokens[i]));
                boundary = CyclicPath(std::move(steps));
            } else {
                throw ParseError("unknown directive '" + tokens[0] + "'", lineno);
            }
        } catch (const ValidationError& err) {
            throw ParseError(err.what(), lineno);
        } catch (const ParseError& err) {
            if (err.line > 0)
                throw;
            throw ParseError(err.what(), lineno);
        }
    }

    if (!saw_vertices)
        throw ParseError("missing vertices: line");
    if (g.num_edges() == 0)
        throw ParseError("no edges defined");
    for (int e = 0; e < g.num_edges(); e++)
        if (!has_image[e])
            throw ParseError("missing map line for edge '" + g.label(e) + "'");
    if (!boundary)
        throw ParseError("missing boundary line");

    GraphMap map{g, g, {}, {}};
    map.vertex_map.resize(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); v++)
        map.vertex_map[v] = v; // refined below from edge images
    map.edge_map.resize(g.num_edges());
    for (auto& [e, img] : images)
        map.edge_map[e] = std::move(img);

    // The vertex map is determined by the edge images (f sends vertices to
    // vertices); derive it and complain about inconsistencies.
    std::vector<int> vmap(g.num_vertices(), -1);
    for (int e = 0; e < g.num_edges(); e++) {
        const EdgePath& img = map.edge_map[e];
        if (img.empty())
            throw ParseError("image of edge '" + g.label(e) + "' is empty");
        int from = g.initial(forward_dir(e));
        int to = g.terminal(forward_dir(e));
        int ifrom = g.initial(img.steps.front());
        int ito = g.terminal(img.steps.back());
        if (vmap[from] == -1)
            vmap[from] = ifrom;
        if (vmap[to] == -1)
            vmap[to] = ito;
        if (vmap[from] != ifrom || vmap[to] != ito)
            throw ParseError("edge images give an inconsistent vertex map at edge '" +
                             g.label(e) + "'");
    }
    for (int v = 0; v < g.num_vertices(); v++)
        if (vmap[v] == -1)
            throw ParseError("isolated vertex '" + g.vertex_name(v) + "'");
    map.vertex_map = vmap;

    return MarkedMap{std::move(map), std::move(*boundary)};
}

MarkedMap parse_marked_map_text(const std::string& text) {
    std::istringstream in(text);
    return parse_marked_map(in);
}

MarkedMap load_marked_map(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    return parse_marked_map(in);
}

std::string format_marked_map(const MarkedMap& mm) {
    const Graph& g = mm.graph();
    std::ostringstream out;
    out << "vertices:";
    for (int v = 0; v < g.num_vertices(); v++)
        out << ' ' << g.vertex_name(v);
    out << '\n';
    for (int e = 0; e < g.num_edges(); e++)
        out << "edge " << g.label(e) << ' ' << g.vertex_name(g.initial(forward_dir(e))) << ' '
            << g.vertex_name(g.terminal(forward_dir(e))) << '\n';
    for (int e = 0; e < g.num_edges(); e++)
        out << "map " << g.label(e) << " = " << to_string(g, mm.map.edge_map[e]) << '\n';
    out << "boundary = " << to_string(g, mm.boundary) << '\n';
    return out.str();
}

} // namespace mtor
