#include "mtor/triangulation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

namespace mtor {

Perm4 Perm4::inverse() const {
    Perm4 out;
    for (int i = 0; i < 4; i++)
        out.img[img[i]] = i;
    return out;
}

Perm4 Perm4::after(const Perm4& first) const {
    Perm4 out;
    for (int i = 0; i < 4; i++)
        out.img[i] = img[first.img[i]];
    return out;
}

int Perm4::parity() const {
    int inversions = 0;
    for (int a = 0; a < 4; a++)
        for (int b = a + 1; b < 4; b++)
            if (img[a] > img[b])
                inversions++;
    return inversions % 2;
}

std::string Perm4::digits() const {
    std::string s;
    for (int i = 0; i < 4; i++)
        s += static_cast<char>('0' + img[i]);
    return s;
}

Perm4 Perm4::from_digits(const std::string& s) {
    if (s.size() != 4)
        throw ParseError("permutation must have four digits");
    Perm4 p;
    std::array<bool, 4> seen{false, false, false, false};
    for (int i = 0; i < 4; i++) {
        int d = s[i] - '0';
        if (d < 0 || d > 3 || seen[d])
            throw ParseError("bad permutation '" + s + "'");
        seen[d] = true;
        p.img[i] = d;
    }
    return p;
}

int Triangulation3::add_tetrahedron() {
    neighbor_.push_back({-1, -1, -1, -1});
    gluing_.push_back({});
    return num_tetrahedra() - 1;
}

void Triangulation3::glue(int tet, int face, int other, const Perm4& how) {
    int other_face = how[face];
    if (neighbor_[tet][face] != -1 || neighbor_[other][other_face] != -1)
        throw ValidationError("face glued twice");
    if (tet == other && face == other_face)
        throw ValidationError("cannot glue a face to itself");
    neighbor_[tet][face] = other;
    gluing_[tet][face] = how;
    neighbor_[other][other_face] = tet;
    gluing_[other][other_face] = how.inverse();
}

bool Triangulation3::closed() const {
    for (int t = 0; t < num_tetrahedra(); t++)
        for (int f = 0; f < 4; f++)
            if (neighbor_[t][f] < 0)
                return false;
    return true;
}

void Triangulation3::check_closed() const {
    for (int t = 0; t < num_tetrahedra(); t++)
        for (int f = 0; f < 4; f++) {
            if (neighbor_[t][f] < 0)
                throw ValidationError("tetrahedron " + std::to_string(t) + " face " +
                                      std::to_string(f) + " is unglued");
            int nt = neighbor_[t][f];
            int nf = gluing_[t][f][f];
            if (neighbor_[nt][nf] != t || !(gluing_[nt][nf] == gluing_[t][f].inverse()))
                throw InternalError("gluing is not involutive");
        }
}

namespace {

struct UF {
    std::vector<int> parent;
    explicit UF(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
    std::vector<int> compact() {
        std::map<int, int> ids;
        std::vector<int> out(parent.size());
        for (size_t i = 0; i < parent.size(); i++) {
            int root = find(static_cast<int>(i));
            auto [it, fresh] = ids.emplace(root, static_cast<int>(ids.size()));
            out[i] = it->second;
        }
        return out;
    }
};

} // namespace

int Triangulation3::edge_index(int a, int b) {
    if (a > b)
        std::swap(a, b);
    static constexpr int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    return table[a][b];
}

std::pair<int, int> Triangulation3::edge_corners(int index) {
    static constexpr std::pair<int, int> table[6] = {{0, 1}, {0, 2}, {0, 3},
                                                     {1, 2}, {1, 3}, {2, 3}};
    return table[index];
}

std::vector<int> Triangulation3::vertex_orbits() const {
    UF uf(4 * num_tetrahedra());
    for (int t = 0; t < num_tetrahedra(); t++)
        for (int f = 0; f < 4; f++) {
            if (neighbor_[t][f] < 0)
                continue;
            for (int v = 0; v < 4; v++)
                if (v != f)
                    uf.unite(4 * t + v, 4 * neighbor_[t][f] + gluing_[t][f][v]);
        }
    return uf.compact();
}

int Triangulation3::num_vertex_orbits() const {
    auto orbits = vertex_orbits();
    return orbits.empty() ? 0 : *std::max_element(orbits.begin(), orbits.end()) + 1;
}

std::vector<int> Triangulation3::edge_orbits() const {
    UF uf(6 * num_tetrahedra());
    for (int t = 0; t < num_tetrahedra(); t++)
        for (int f = 0; f < 4; f++) {
            if (neighbor_[t][f] < 0)
                continue;
            for (int e = 0; e < 6; e++) {
                auto [a, b] = edge_corners(e);
                if (a == f || b == f)
                    continue;
                uf.unite(6 * t + e,
                         6 * neighbor_[t][f] + edge_index(gluing_[t][f][a], gluing_[t][f][b]));
            }
        }
    return uf.compact();
}

int Triangulation3::num_edge_orbits() const {
    auto orbits = edge_orbits();
    return orbits.empty() ? 0 : *std::max_element(orbits.begin(), orbits.end()) + 1;
}

std::vector<int> Triangulation3::edge_orbit_degrees() const {
    check_closed();
    auto orbits = edge_orbits();
    int n = num_edge_orbits();
    std::vector<int> degree(n, 0);
    for (int slot = 0; slot < 6 * num_tetrahedra(); slot++)
        degree[orbits[slot]]++;

    // Walk around one representative of each orbit; the walk must return
    // to its start, so the combinatorial angle around the edge is defined.
    std::vector<bool> done(n, false);
    for (int slot = 0; slot < 6 * num_tetrahedra(); slot++) {
        int orbit = orbits[slot];
        if (done[orbit])
            continue;
        done[orbit] = true;
        int t0 = slot / 6;
        auto [a0, b0] = edge_corners(slot % 6);
        int faces0[2];
        int fi = 0;
        for (int f = 0; f < 4; f++)
            if (f != a0 && f != b0)
                faces0[fi++] = f;
        int t = t0, a = a0, b = b0, exit = faces0[0];
        int steps = 0;
        int limit = 2 * degree[orbit] + 2;
        while (true) {
            const Perm4& g = gluing_[t][exit];
            int nt = neighbor_[t][exit];
            int na = g[a], nb = g[b], entered = g[exit];
            int nexit = -1;
            for (int f = 0; f < 4; f++)
                if (f != na && f != nb && f != entered)
                    nexit = f;
            t = nt;
            a = na;
            b = nb;
            exit = nexit;
            steps++;
            if (t == t0 && ((a == a0 && b == b0) || (a == b0 && b == a0)) && exit == faces0[0])
                break;
            if (steps > limit)
                throw InternalError("edge walk did not close up");
        }
    }
    return degree;
}

std::optional<std::vector<int>> Triangulation3::orientation() const {
    int n = num_tetrahedra();
    std::vector<int> sign(n, 0);
    for (int start = 0; start < n; start++) {
        if (sign[start] != 0)
            continue;
        sign[start] = 1;
        std::queue<int> queue;
        queue.push(start);
        while (!queue.empty()) {
            int t = queue.front();
            queue.pop();
            for (int f = 0; f < 4; f++) {
                if (neighbor_[t][f] < 0)
                    continue;
                int nt = neighbor_[t][f];
                // Odd gluings join coherently oriented tetrahedra.
                int want = gluing_[t][f].parity() == 1 ? sign[t] : -sign[t];
                if (sign[nt] == 0) {
                    sign[nt] = want;
                    queue.push(nt);
                } else if (sign[nt] != want) {
                    return std::nullopt;
                }
            }
        }
    }
    return sign;
}

AbelianGroup Triangulation3::first_homology() const {
    check_closed();
    int n = num_tetrahedra();

    // Face pairs: generator per gluing, directed out of the smaller slot.
    std::map<std::pair<int, int>, int> gen_of_slot; // (tet,face) -> +-(gen+1)
    int gens = 0;
    for (int t = 0; t < n; t++)
        for (int f = 0; f < 4; f++) {
            int nt = neighbor_[t][f];
            int nf = gluing_[t][f][f];
            if (std::make_pair(t, f) <= std::make_pair(nt, nf)) {
                gen_of_slot[{t, f}] = gens + 1;
                gen_of_slot[{nt, nf}] = -(gens + 1);
                gens++;
            }
        }

    // Spanning tree of the dual graph: tree generators die.
    std::vector<bool> tree_gen(gens, false);
    {
        std::vector<bool> seen(n, false);
        std::queue<int> queue;
        if (n > 0) {
            seen[0] = true;
            queue.push(0);
        }
        while (!queue.empty()) {
            int t = queue.front();
            queue.pop();
            for (int f = 0; f < 4; f++) {
                int nt = neighbor_[t][f];
                if (!seen[nt]) {
                    seen[nt] = true;
                    tree_gen[std::abs(gen_of_slot[{t, f}]) - 1] = true;
                    queue.push(nt);
                }
            }
        }
    }

    // One relator per edge orbit: the word read while walking around it.
    auto orbits = edge_orbits();
    int relators = num_edge_orbits();
    SparseIntMatrix m(relators, gens);
    std::vector<bool> done(relators, false);
    for (int slot = 0; slot < 6 * n; slot++) {
        int orbit = orbits[slot];
        if (done[orbit])
            continue;
        done[orbit] = true;
        int t0 = slot / 6;
        auto [a0, b0] = edge_corners(slot % 6);
        int exit0 = -1;
        for (int f = 0; f < 4; f++)
            if (f != a0 && f != b0 && exit0 == -1)
                exit0 = f;
        int t = t0, a = a0, b = b0, exit = exit0;
        int guard = 12 * n + 12;
        while (true) {
            int g = gen_of_slot[{t, exit}];
            m.add(orbit, std::abs(g) - 1, g > 0 ? 1 : -1);
            const Perm4& perm = gluing_[t][exit];
            int nt = neighbor_[t][exit];
            int na = perm[a], nb = perm[b], entered = perm[exit];
            int nexit = -1;
            for (int f = 0; f < 4; f++)
                if (f != na && f != nb && f != entered)
                    nexit = f;
            t = nt;
            a = na;
            b = nb;
            exit = nexit;
            if (t == t0 && ((a == a0 && b == b0) || (a == b0 && b == a0)) && exit == exit0)
                break;
            if (--guard < 0)
                throw InternalError("edge walk did not close up");
        }
    }

    // Quotient by the tree: drop tree generator columns.
    std::vector<int> live(gens, -1);
    int live_count = 0;
    for (int g = 0; g < gens; g++)
        if (!tree_gen[g])
            live[g] = live_count++;
    SparseIntMatrix reduced(relators, live_count);
    for (int r = 0; r < relators; r++)
        for (auto& [c, v] : m.row(r))
            if (live[c] != -1)
                reduced.add(r, live[c], v);

    return cokernel(std::move(reduced));
}

std::string Triangulation3::canonical_encoding() const {
    check_closed();
    int n = num_tetrahedra();
    if (n == 0)
        return "";

    // All 24 corner labelings of a starting tetrahedron.
    std::vector<Perm4> all;
    {
        std::array<int, 4> base{0, 1, 2, 3};
        std::sort(base.begin(), base.end());
        do {
            Perm4 p;
            p.img = base;
            all.push_back(p);
        } while (std::next_permutation(base.begin(), base.end()));
    }

    std::string best;
    for (int start = 0; start < n; start++) {
        for (const Perm4& seed : all) {
            // relabel[t] maps old corners of t to new corners.
            std::vector<Perm4> relabel(n);
            std::vector<int> new_index(n, -1), order;
            new_index[start] = 0;
            relabel[start] = seed;
            order.push_back(start);
            std::string enc;
            bool aborted = false;
            for (size_t qi = 0; qi < order.size() && !aborted; qi++) {
                int t = order[qi];
                for (int nf = 0; nf < 4 && !aborted; nf++) {
                    int f = relabel[t].inverse()[nf];
                    int nt = neighbor_[t][f];
                    if (new_index[nt] == -1) {
                        new_index[nt] = static_cast<int>(order.size());
                        // Give the neighbor the labeling induced by the
                        // gluing, so the recorded permutation is trivial.
                        relabel[nt] = relabel[t].after(gluing_[t][f].inverse());
                        order.push_back(nt);
                    }
                    Perm4 rec = relabel[nt].after(gluing_[t][f]).after(relabel[t].inverse());
                    enc += std::to_string(new_index[nt]) + ":" + rec.digits() + " ";
                    if (!best.empty() && enc.size() <= best.size() &&
                        enc.compare(best.substr(0, enc.size())) > 0)
                        aborted = true;
                }
            }
            if (!aborted && (best.empty() || enc < best))
                best = enc;
        }
    }
    return best;
}

bool isomorphic(const Triangulation3& a, const Triangulation3& b) {
    if (a.num_tetrahedra() != b.num_tetrahedra())
        return false;
    return a.canonical_encoding() == b.canonical_encoding();
}

int LinkReport::ideal_count() const {
    int n = 0;
    for (const Orbit& o : orbits)
        if (o.ideal)
            n++;
    return n;
}

bool LinkReport::all_finite_are_spheres() const {
    for (const Orbit& o : orbits)
        if (!o.ideal && o.surface != "sphere")
            return false;
    return true;
}

std::string LinkReport::summary() const {
    std::ostringstream out;
    for (size_t i = 0; i < orbits.size(); i++)
        out << "vertex orbit " << i << ": link " << orbits[i].surface << " (chi "
            << orbits[i].chi << ", " << (orbits[i].orientable ? "orientable" : "nonorientable")
            << ", " << (orbits[i].ideal ? "ideal" : "finite") << ")\n";
    return out.str();
}

LinkReport vertex_links(const Triangulation3& t) {
    t.check_closed();
    int n = t.num_tetrahedra();
    auto orbits = t.vertex_orbits();
    int num_orbits = t.num_vertex_orbits();

    // Link triangle per corner slot (tet, v); its corners are slots
    // (tet, v, u), u != v; its side on face f (f != v) joins the two
    // corners u not in {v, f}.
    auto corner_id = [&](int tet, int v, int u) { return 16 * tet + 4 * v + u; };
    UF corners(16 * n);
    for (int tet = 0; tet < n; tet++)
        for (int f = 0; f < 4; f++) {
            const Perm4& g = t.gluing(tet, f);
            int nt = t.neighbor(tet, f);
            for (int v = 0; v < 4; v++) {
                if (v == f)
                    continue;
                for (int u = 0; u < 4; u++) {
                    if (u == f || u == v)
                        continue;
                    corners.unite(corner_id(tet, v, u), corner_id(nt, g[v], g[u]));
                }
            }
        }
    auto corner_class = corners.compact();

    struct Agg {
        int faces = 0;
        std::vector<int> corner_classes;
        bool orientable = true;
    };
    std::vector<Agg> agg(num_orbits);
    for (int tet = 0; tet < n; tet++)
        for (int v = 0; v < 4; v++) {
            Agg& a = agg[orbits[4 * tet + v]];
            a.faces++;
            for (int u = 0; u < 4; u++)
                if (u != v)
                    a.corner_classes.push_back(corner_class[corner_id(tet, v, u)]);
        }

    // Orientability: 2-color link triangles so that adjacent triangles
    // induce opposite directions on their shared side.
    {
        std::vector<int> sign(4 * n, 0);
        auto ordered = [&](int v) {
            // corners of the link triangle at v, ascending
            std::array<int, 3> c{};
            int i = 0;
            for (int u = 0; u < 4; u++)
                if (u != v)
                    c[i++] = u;
            return c;
        };
        auto direction = [&](int v, int u1, int u2) {
            // +1 if the boundary cycle of the ascending ordering traverses
            // u1 -> u2, else -1.
            auto c = ordered(v);
            for (int i = 0; i < 3; i++) {
                if (c[i] == u1 && c[(i + 1) % 3] == u2)
                    return 1;
                if (c[i] == u2 && c[(i + 1) % 3] == u1)
                    return -1;
            }
            throw InternalError("link corner not found");
        };
        for (int start = 0; start < 4 * n; start++) {
            if (sign[start] != 0)
                continue;
            sign[start] = 1;
            std::queue<int> queue;
            queue.push(start);
            while (!queue.empty()) {
                int slot = queue.front();
                queue.pop();
                int tet = slot / 4, v = slot % 4;
                for (int f = 0; f < 4; f++) {
                    if (f == v)
                        continue;
                    const Perm4& g = t.gluing(tet, f);
                    int nslot = 4 * t.neighbor(tet, f) + g[v];
                    int u1 = -1, u2 = -1;
                    for (int u = 0; u < 4; u++)
                        if (u != v && u != f)
                            (u1 == -1 ? u1 : u2) = u;
                    int d1 = direction(v, u1, u2);
                    int d2 = direction(g[v], g[u1], g[u2]);
                    int want = -sign[slot] * d1 * d2;
                    if (sign[nslot] == 0) {
                        sign[nslot] = want;
                        queue.push(nslot);
                    } else if (sign[nslot] != want) {
                        agg[orbits[slot]].orientable = false;
                    }
                }
            }
        }
    }

    LinkReport report;
    report.orbits.resize(num_orbits);
    for (int o = 0; o < num_orbits; o++) {
        Agg& a = agg[o];
        std::sort(a.corner_classes.begin(), a.corner_classes.end());
        a.corner_classes.erase(std::unique(a.corner_classes.begin(), a.corner_classes.end()),
                               a.corner_classes.end());
        int V = static_cast<int>(a.corner_classes.size());
        int F = a.faces;
        if ((3 * F) % 2 != 0)
            throw InternalError("link is not a closed surface");
        int E = 3 * F / 2;
        LinkReport::Orbit& orbit = report.orbits[o];
        orbit.chi = V - E + F;
        orbit.orientable = a.orientable;
        orbit.triangle_count = F;
        orbit.ideal = !(orbit.chi == 2);
        if (orbit.chi == 2)
            orbit.surface = "sphere";
        else if (orbit.chi == 0 && orbit.orientable)
            orbit.surface = "torus";
        else if (orbit.chi == 0)
            orbit.surface = "Klein bottle";
        else if (orbit.chi > 2)
            orbit.surface = "disconnected link (chi " + std::to_string(orbit.chi) + ")";
        else if (orbit.orientable)
            orbit.surface = "genus-" + std::to_string((2 - orbit.chi) / 2) + " surface";
        else
            orbit.surface = "nonorientable surface (chi " + std::to_string(orbit.chi) + ")";
    }
    return report;
}

} // namespace mtor
