#include "mtor/graph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

namespace mtor {

int Graph::add_vertex(std::string name) {
    if (name.empty())
        name = "v" + std::to_string(vertex_names_.size());
    vertex_names_.push_back(std::move(name));
    return num_vertices() - 1;
}

int Graph::add_edge(const std::string& label, int v_init, int v_term) {
    if (has_label(label))
        throw ValidationError("duplicate edge label '" + label + "'");
    if (v_init < 0 || v_init >= num_vertices() || v_term < 0 || v_term >= num_vertices())
        throw ValidationError("edge '" + label + "' references an unknown vertex");
    labels_.push_back(label);
    init_.push_back(v_init);
    term_.push_back(v_term);
    return num_edges() - 1;
}

std::optional<int> Graph::find_edge(const std::string& label) const {
    for (int e = 0; e < num_edges(); e++)
        if (labels_[e] == label)
            return e;
    return std::nullopt;
}

std::optional<int> Graph::find_vertex(const std::string& name) const {
    for (int v = 0; v < num_vertices(); v++)
        if (vertex_names_[v] == name)
            return v;
    return std::nullopt;
}

DirEdge Graph::dir_from_name(const std::string& token) const {
    bool rev = !token.empty() && token[0] == '~';
    std::string label = rev ? token.substr(1) : token;
    auto e = find_edge(label);
    if (!e)
        throw ParseError("unknown edge '" + label + "'");
    return rev ? reverse_dir(forward_dir(*e)) : forward_dir(*e);
}

int Graph::valence(int v) const {
    int count = 0;
    for (DirEdge d = 0; d < num_directions(); d++)
        if (initial(d) == v)
            count++;
    return count;
}

bool Graph::connected() const {
    if (num_vertices() == 0)
        return true;
    std::vector<bool> seen(num_vertices(), false);
    std::queue<int> queue;
    queue.push(0);
    seen[0] = true;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop();
        for (DirEdge d = 0; d < num_directions(); d++) {
            if (initial(d) == v && !seen[terminal(d)]) {
                seen[terminal(d)] = true;
                queue.push(terminal(d));
            }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

EdgePath EdgePath::inverse() const {
    std::vector<DirEdge> rev(steps.rbegin(), steps.rend());
    for (DirEdge& d : rev)
        d = reverse_dir(d);
    return EdgePath(std::move(rev));
}

bool EdgePath::composable(const Graph& g) const {
    for (size_t i = 0; i + 1 < steps.size(); i++)
        if (g.terminal(steps[i]) != g.initial(steps[i + 1]))
            return false;
    return true;
}

bool EdgePath::is_tight() const {
    for (size_t i = 0; i + 1 < steps.size(); i++)
        if (steps[i + 1] == reverse_dir(steps[i]))
            return false;
    return true;
}

DirEdge CyclicPath::at(int i) const {
    int n = length();
    return steps[((i % n) + n) % n];
}

bool CyclicPath::composable(const Graph& g) const {
    int n = length();
    for (int i = 0; i < n; i++)
        if (g.terminal(steps[i]) != g.initial(steps[(i + 1) % n]))
            return false;
    return true;
}

bool CyclicPath::is_cyclically_tight() const {
    int n = length();
    if (n == 0)
        return true;
    for (int i = 0; i < n; i++)
        if (steps[(i + 1) % n] == reverse_dir(steps[i]))
            return false;
    return true;
}

CyclicPath CyclicPath::rotated(int k) const {
    int n = length();
    if (n == 0)
        return *this;
    std::vector<DirEdge> out(n);
    for (int i = 0; i < n; i++)
        out[i] = at(i + k);
    return CyclicPath(std::move(out));
}

EdgePath tighten(const EdgePath& path) {
    std::vector<DirEdge> stack;
    stack.reserve(path.steps.size());
    for (DirEdge d : path.steps) {
        if (!stack.empty() && stack.back() == reverse_dir(d))
            stack.pop_back();
        else
            stack.push_back(d);
    }
    return EdgePath(std::move(stack));
}

CyclicPath tighten(const CyclicPath& path) {
    EdgePath linear = tighten(EdgePath(path.steps));
    std::vector<DirEdge>& s = linear.steps;
    // Cancel across the wrap-around.
    while (s.size() >= 2 && s.front() == reverse_dir(s.back())) {
        s.erase(s.begin());
        s.pop_back();
    }
    return CyclicPath(std::move(s));
}

bool cyclically_equal(const CyclicPath& a, const CyclicPath& b) {
    return rotation_matching(a, b).has_value();
}

std::optional<int> rotation_matching(const CyclicPath& a, const CyclicPath& b) {
    if (a.length() != b.length())
        return std::nullopt;
    int n = a.length();
    if (n == 0)
        return 0;
    for (int k = 0; k < n; k++) {
        bool match = true;
        for (int i = 0; i < n && match; i++)
            match = (a.at(i + k) == b.steps[i]);
        if (match)
            return k;
    }
    return std::nullopt;
}

std::string to_string(const Graph& g, const EdgePath& p) {
    std::ostringstream out;
    for (size_t i = 0; i < p.steps.size(); i++) {
        if (i)
            out << ' ';
        out << g.dir_name(p.steps[i]);
    }
    return out.str();
}

std::string to_string(const Graph& g, const CyclicPath& p) {
    return to_string(g, EdgePath(p.steps));
}

EdgePath parse_path(const Graph& g, const std::string& text) {
    std::istringstream in(text);
    std::string token;
    std::vector<DirEdge> steps;
    while (in >> token)
        steps.push_back(g.dir_from_name(token));
    return EdgePath(std::move(steps));
}

GraphMap identity_map(const Graph& g) {
    GraphMap m{g, g, {}, {}};
    m.vertex_map.resize(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); v++)
        m.vertex_map[v] = v;
    for (int e = 0; e < g.num_edges(); e++)
        m.edge_map.push_back(EdgePath({forward_dir(e)}));
    return m;
}

EdgePath apply_map(const GraphMap& m, const EdgePath& path) {
    std::vector<DirEdge> out;
    for (DirEdge d : path.steps) {
        if (edge_of(d) >= m.domain.num_edges())
            throw ValidationError("path does not live in the map's domain");
        EdgePath img = m.image_of(d);
        out.insert(out.end(), img.steps.begin(), img.steps.end());
    }
    return EdgePath(std::move(out));
}

CyclicPath apply_map(const GraphMap& m, const CyclicPath& path) {
    return CyclicPath(apply_map(m, EdgePath(path.steps)).steps);
}

GraphMap compose(const GraphMap& outer, const GraphMap& inner) {
    GraphMap m{inner.domain, outer.range, {}, {}};
    m.vertex_map.resize(inner.domain.num_vertices());
    for (int v = 0; v < inner.domain.num_vertices(); v++)
        m.vertex_map[v] = outer.vertex_map[inner.vertex_map[v]];
    for (int e = 0; e < inner.domain.num_edges(); e++)
        m.edge_map.push_back(tighten(apply_map(outer, inner.edge_map[e])));
    return m;
}

int map_size(const GraphMap& m) {
    int total = 0;
    for (const EdgePath& img : m.edge_map)
        total += img.length();
    return total;
}

std::optional<FoldCandidate> find_fold_candidate(const MarkedMap& mm) {
    const CyclicPath& sigma = mm.boundary;
    int n = sigma.length();
    for (int i = 0; i < n; i++) {
        DirEdge e1 = sigma.at(i);
        DirEdge e2 = sigma.at(i + 1);
        DirEdge d1 = reverse_dir(e1);
        DirEdge d2 = e2;
        EdgePath img1 = mm.map.image_of(d1);
        EdgePath img2 = mm.map.image_of(d2);
        int k = 0;
        int limit = std::min(img1.length(), img2.length());
        while (k < limit && img1.steps[k] == img2.steps[k])
            k++;
        if (k >= 1)
            return FoldCandidate{d1, d2, k};
    }
    return std::nullopt;
}

bool is_immersion(const MarkedMap& mm) {
    return !find_fold_candidate(mm).has_value();
}

int genus(const Graph& g) {
    if (!g.connected())
        throw ValidationError("graph is disconnected");
    int x = 1 + g.num_edges() - g.num_vertices();
    if (x < 0 || x % 2 != 0)
        throw ValidationError("graph is not a spine of a once-punctured surface (1+E-V = " +
                              std::to_string(x) + ")");
    return x / 2;
}

bool ValidationReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string ValidationReport::summary() const {
    std::ostringstream out;
    for (const Check& c : checks) {
        out << (c.passed ? "ok   " : "FAIL ") << c.name;
        if (!c.detail.empty())
            out << ": " << c.detail;
        out << '\n';
    }
    return out.str();
}

ValidationReport validate(const MarkedMap& mm) {
    ValidationReport report;
    const Graph& g = mm.graph();
    const CyclicPath& sigma = mm.boundary;
    auto add = [&](const std::string& name, bool passed, const std::string& detail = "") {
        report.checks.push_back({name, passed, passed ? "" : detail});
    };

    add("graph connected", g.connected());
    bool genus_ok = true;
    try {
        genus(g);
    } catch (const ValidationError& err) {
        genus_ok = false;
        add("graph is a surface spine", false, err.what());
    }
    if (genus_ok)
        add("graph is a surface spine", true);

    bool composable = sigma.composable(g) && !sigma.steps.empty();
    add("sigma composable", composable);
    add("sigma cyclically tight", sigma.is_cyclically_tight());

    // sigma must cross each edge exactly twice, once per direction.
    bool double_traversal = true;
    std::string traversal_detail;
    std::vector<int> count(g.num_directions(), 0);
    for (DirEdge d : sigma.steps)
        count[d]++;
    for (DirEdge d = 0; d < g.num_directions(); d++) {
        if (count[d] != 1) {
            double_traversal = false;
            traversal_detail = "direction " + g.dir_name(d) + " traversed " +
                               std::to_string(count[d]) + " times";
            break;
        }
    }
    add("sigma boundary-like (each edge once per direction)", double_traversal, traversal_detail);

    bool endpoints_ok = true;
    bool images_tight = true;
    bool images_nonempty = true;
    std::string endpoint_detail, tight_detail, empty_detail;
    for (int e = 0; e < g.num_edges(); e++) {
        const EdgePath& img = mm.map.edge_map[e];
        if (img.empty()) {
            images_nonempty = false;
            empty_detail = "image of " + g.label(e) + " is empty";
            continue;
        }
        if (!img.composable(g) ||
            g.initial(img.steps.front()) != mm.map.vertex_map[g.initial(forward_dir(e))] ||
            g.terminal(img.steps.back()) != mm.map.vertex_map[g.terminal(forward_dir(e))]) {
            endpoints_ok = false;
            endpoint_detail = "image of " + g.label(e) + " does not respect endpoints";
        }
        if (!img.is_tight()) {
            images_tight = false;
            tight_detail = "image of " + g.label(e) + " backtracks";
        }
    }
    add("edge images nonempty", images_nonempty, empty_detail);
    add("edge images respect endpoints", endpoints_ok, endpoint_detail);
    add("edge images tight", images_tight, tight_detail);

    // f(sigma) must be freely homotopic to sigma as an oriented loop.
    if (composable && double_traversal) {
        CyclicPath image = tighten(apply_map(mm.map, sigma));
        if (cyclically_equal(image, sigma)) {
            add("f(sigma) ~ sigma", true);
        } else {
            CyclicPath inverse = tighten(CyclicPath(EdgePath(sigma.steps).inverse().steps));
            if (cyclically_equal(image, inverse))
                add("f(sigma) ~ sigma", false,
                    "f(sigma) is freely homotopic to sigma reversed; "
                    "orientation-reversing automorphisms are not supported");
            else
                add("f(sigma) ~ sigma", false,
                    "tightened f(sigma) is not a rotation of sigma");
        }
    }

    return report;
}

void require_valid(const MarkedMap& mm) {
    ValidationReport report = validate(mm);
    if (!report.ok())
        throw ValidationError("invalid marked map:\n" + report.summary());
}

} // namespace mtor
