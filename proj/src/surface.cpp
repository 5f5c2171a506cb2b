#include "mtor/surface.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

namespace mtor {

namespace {

// Corner slots of a cell: bottom-left, bottom-right, top-left, top-middle
// (pentagons only), top-right.
enum Slot { BL = 0, BR = 1, TL = 2, TM = 3, TR = 4 };

int mirror_slot(int s) {
    switch (s) {
    case BL: return BR;
    case BR: return BL;
    case TL: return TR;
    case TR: return TL;
    default: return TM;
    }
}

} // namespace

struct TorusBuilder::Cell {
    std::array<int, 5> corner{-1, -1, -1, -1, -1}; // vertex id per slot
    std::vector<int> tris;
    std::vector<std::array<int, 3>> tri_slots;
    int occurrence = -1;
};

std::vector<SurfaceComplex::Triangle> SurfaceComplex::annulus_triangles(int annulus) const {
    std::vector<Triangle> out;
    for (const Triangle& t : triangles)
        if (t.annulus == annulus)
            out.push_back(t);
    return out;
}

TorusBuilder::TorusBuilder(const FoldSequence& seq) : seq_(seq) {
    int levels = static_cast<int>(seq.stages.size());
    k_.circle_vertices.resize(levels);
    k_.circle_arcs.resize(levels);
}

void TorusBuilder::ensure_circle(int stage) {
    if (!k_.circle_vertices[stage].empty())
        return;
    const CyclicPath& sigma = seq_.stages[stage].sigma;
    int n = sigma.length();
    std::vector<int>& verts = k_.circle_vertices[stage];
    std::vector<int>& arcs = k_.circle_arcs[stage];
    for (int j = 0; j < n; j++)
        verts.push_back(k_.num_vertices++);
    for (int j = 0; j < n; j++)
        arcs.push_back(new_edge(verts[j], verts[(j + 1) % n]));
}

int TorusBuilder::new_edge(int tail, int head) {
    k_.edges.push_back({tail, head});
    return k_.num_edges() - 1;
}

int TorusBuilder::add_triangle(std::array<int, 3> corners, std::array<int, 3> sides,
                               std::array<bool, 3> forward, CellKind kind, int occ, int idx) {
    SurfaceComplex::Triangle t;
    t.corners = corners;
    t.sides = sides;
    t.side_forward = forward;
    t.annulus = next_annulus_;
    t.kind = kind;
    t.occurrence = occ;
    t.index_in_cell = idx;
    k_.triangles.push_back(t);
    k_.pair_with.push_back(-1);
    k_.pair_map.push_back({-1, -1, -1});
    return k_.num_triangles() - 1;
}

void TorusBuilder::record_pair(int t1, int t2, const std::array<int, 3>& map12) {
    if (k_.pair_with[t1] != -1 || k_.pair_with[t2] != -1)
        throw InternalError("triangle paired twice");
    if (t1 == t2)
        throw InternalError("triangle paired with itself");
    k_.pair_with[t1] = t2;
    k_.pair_map[t1] = map12;
    std::array<int, 3> inv{};
    for (int i = 0; i < 3; i++)
        inv[map12[i]] = i;
    k_.pair_with[t2] = t1;
    k_.pair_map[t2] = inv;
}

// Builds a product cell over one bottom interval: a rectangle (top_count 1)
// or a pentagon (top_count 2), triangulated by a fan from the bottom-left
// corner when anchored_left, from the bottom-right corner otherwise.
TorusBuilder::Cell TorusBuilder::make_cell(int bottom_circle, int pos, int top_circle, int top_pos,
                                           int top_count, bool anchored_left, CellKind kind) {
    const std::vector<int>& bv = k_.circle_vertices[bottom_circle];
    const std::vector<int>& tv = k_.circle_vertices[top_circle];
    const std::vector<int>& ba = k_.circle_arcs[bottom_circle];
    const std::vector<int>& ta = k_.circle_arcs[top_circle];
    int blen = static_cast<int>(bv.size());
    int tlen = static_cast<int>(tv.size());

    Cell c;
    c.occurrence = pos;
    c.corner[BL] = bv[pos % blen];
    c.corner[BR] = bv[(pos + 1) % blen];
    c.corner[TL] = tv[top_pos % tlen];
    c.corner[TR] = tv[(top_pos + top_count) % tlen];
    if (top_count == 2)
        c.corner[TM] = tv[(top_pos + 1) % tlen];

    int bottom = ba[pos % blen];
    int top1 = ta[top_pos % tlen]; // TL -> (TM or TR)
    int top2 = top_count == 2 ? ta[(top_pos + 1) % tlen] : -1;
    int left = vertical_edges_[pos % blen];
    int right = vertical_edges_[(pos + 1) % blen];
    if (left < 0 || right < 0)
        throw InternalError("cell is missing a vertical side");

    auto tri = [&](int a, int b, int cc, int e0, bool f0, int e1, bool f1, int e2, bool f2,
                   int idx) {
        int id = add_triangle({c.corner[a], c.corner[b], c.corner[cc]}, {e0, e1, e2},
                              {f0, f1, f2}, kind, pos, idx);
        c.tris.push_back(id);
        c.tri_slots.push_back({a, b, cc});
        return id;
    };

    if (top_count == 1) {
        if (anchored_left) {
            int diag = new_edge(c.corner[BL], c.corner[TR]);
            tri(BL, BR, TR, bottom, true, right, true, diag, false, 0);
            tri(BL, TR, TL, diag, true, top1, false, left, false, 1);
        } else {
            int diag = new_edge(c.corner[BR], c.corner[TL]);
            tri(BL, BR, TL, bottom, true, diag, true, left, false, 0);
            tri(BR, TR, TL, right, true, top1, false, diag, false, 1);
        }
    } else {
        if (anchored_left) {
            int diag1 = new_edge(c.corner[BL], c.corner[TR]);
            int diag2 = new_edge(c.corner[BL], c.corner[TM]);
            tri(BL, BR, TR, bottom, true, right, true, diag1, false, 0);
            tri(BL, TR, TM, diag1, true, top2, false, diag2, false, 1);
            tri(BL, TM, TL, diag2, true, top1, false, left, false, 2);
        } else {
            int diag1 = new_edge(c.corner[BR], c.corner[TM]);
            int diag2 = new_edge(c.corner[BR], c.corner[TL]);
            tri(BR, TR, TM, right, true, top2, false, diag1, false, 0);
            tri(BR, TM, TL, diag1, true, top1, false, diag2, false, 1);
            tri(BR, TL, BL, diag2, true, left, false, bottom, true, 2);
        }
    }
    return c;
}

// Pairs the two cells over the two occurrences of one edge label.  The
// cells are horizontal mirrors of each other, so matching corner slots
// through the mirror yields the orientation-reversing correspondence.
void TorusBuilder::pair_cells(const Cell& fwd, const Cell& rev) {
    if (fwd.tris.size() != rev.tris.size())
        throw InternalError("paired cells have different shapes");
    for (size_t i = 0; i < fwd.tris.size(); i++) {
        std::array<int, 3> want{};
        for (int s = 0; s < 3; s++)
            want[s] = mirror_slot(fwd.tri_slots[i][s]);
        std::array<int, 3> sorted = want;
        std::sort(sorted.begin(), sorted.end());
        int target = -1;
        for (size_t j = 0; j < rev.tris.size(); j++) {
            std::array<int, 3> have = rev.tri_slots[j];
            std::sort(have.begin(), have.end());
            if (have == sorted) {
                target = static_cast<int>(j);
                break;
            }
        }
        if (target == -1)
            throw InternalError("mirror triangle not found");
        std::array<int, 3> map12{};
        for (int s = 0; s < 3; s++) {
            const std::array<int, 3>& slots = rev.tri_slots[target];
            map12[s] = static_cast<int>(std::find(slots.begin(), slots.end(), want[s]) -
                                        slots.begin());
        }
        record_pair(fwd.tris[i], rev.tris[target], map12);
    }
}

void TorusBuilder::add_subdivision_annulus(int step) {
    const Stage& bot = seq_.stages[2 * step];
    const Stage& top = seq_.stages[2 * step + 1];
    const SubdivisionStep& sub = seq_.subdivisions[step];
    int bc = 2 * step, tc = 2 * step + 1;
    ensure_circle(bc);
    ensure_circle(tc);

    const CyclicPath& sigma = bot.sigma;
    int len = sigma.length();

    // Positional image lengths under s: subdivided edges expand to two
    // intervals on the top circle.
    std::vector<int> top_start(len), top_count(len);
    int acc = 0;
    for (int j = 0; j < len; j++) {
        top_start[j] = acc;
        top_count[j] = sub.s.image_of(sigma.at(j)).length();
        acc += top_count[j];
    }
    if (acc != top.sigma.length())
        throw InternalError("subdivision annulus: top spelling length mismatch");

    vertical_edges_.assign(len, -1);
    for (int j = 0; j < len; j++)
        vertical_edges_[j] =
            new_edge(k_.circle_vertices[bc][j], k_.circle_vertices[tc][top_start[j]]);

    std::vector<Cell> cells(len);
    int first_triangle = k_.num_triangles();
    for (int j = 0; j < len; j++) {
        CellKind kind = top_count[j] == 2 ? CellKind::pentagon : CellKind::rectangle;
        cells[j] = make_cell(bc, j, tc, top_start[j], top_count[j], is_forward(sigma.at(j)), kind);
    }

    // Pair the two occurrences of every label.
    std::vector<int> pos_of(bot.graph.num_directions(), -1);
    for (int j = 0; j < len; j++)
        pos_of[sigma.at(j)] = j;
    for (int e = 0; e < bot.graph.num_edges(); e++)
        pair_cells(cells[pos_of[forward_dir(e)]], cells[pos_of[reverse_dir(forward_dir(e))]]);

    SurfaceComplex::AnnulusInfo info;
    info.type = SurfaceComplex::AnnulusInfo::Type::subdivision;
    info.first_triangle = first_triangle;
    info.num_triangles = k_.num_triangles() - first_triangle;
    k_.annuli.push_back(info);
    next_annulus_++;
}

void TorusBuilder::add_fold_annulus(int step) {
    const Stage& bot = seq_.stages[2 * step + 1];
    const Stage& top = seq_.stages[2 * step + 2];
    const FoldStep& fs = seq_.folds[step];
    int bc = 2 * step + 1, tc = 2 * step + 2;
    ensure_circle(bc);
    ensure_circle(tc);

    const CyclicPath& sigma = bot.sigma;
    int len = sigma.length();
    int tlen = top.sigma.length();
    if (tlen != len - 2)
        throw InternalError("fold annulus: expected exactly one cancellation in sigma");

    DirEdge x = fs.gone, y = fs.kept;

    // Anchor of the normal form w: sigma crosses the folded corner as ~x y.
    int q = -1;
    for (int j = 0; j < len; j++)
        if (sigma.at(j) == reverse_dir(x) && sigma.at(j + 1) == y) {
            q = j;
            break;
        }
    if (q == -1)
        throw InternalError("fold annulus: sigma has no subpath of the normal form");

    // Scan for the fourth letter: x closes w = a ~b u ~a, reverse(y) the
    // mirror case w = a ~b u b.
    int pos = 2;
    while (pos < len && sigma.at(q + pos) != x && sigma.at(q + pos) != reverse_dir(y))
        pos++;
    if (pos >= len)
        throw InternalError("fold annulus: normal form does not close");
    bool mirror_case = sigma.at(q + pos) == reverse_dir(y);
    int u_len = pos - 2;

    // The overridden partner rectangle sits over the remaining occurrence.
    DirEdge partner_dir = mirror_case ? x : reverse_dir(y);
    int partner_pos = -1;
    for (int j = 0; j < len; j++)
        if (sigma.at(j) == partner_dir) {
            partner_pos = j;
            break;
        }
    int partner_off = ((partner_pos - q) % len + len) % len;
    if (partner_off <= 2 + u_len)
        throw InternalError("fold annulus: partner occurrence inside the fold region");

    // Align the top circle: its spelling is p(sigma) with the corner pair
    // dropped, starting at bottom position q+2.
    std::vector<DirEdge> expected(len - 2);
    for (int t = 0; t < len - 2; t++)
        expected[t] = fs.p.image_of(sigma.at(q + 2 + t)).steps[0];
    int rho = -1;
    for (int j = 0; j < tlen; j++)
        if (top.sigma.at(j) == expected[0]) {
            rho = j;
            break;
        }
    if (rho == -1)
        throw InternalError("fold annulus: cannot align circles");
    for (int t = 0; t < tlen; t++)
        if (top.sigma.at(rho + t) != expected[t])
            throw InternalError("fold annulus: top spelling mismatch");

    auto bv = [&](int j) { return k_.circle_vertices[bc][((j % len) + len) % len]; };
    auto tv = [&](int j) { return k_.circle_vertices[tc][((j % tlen) + tlen) % tlen]; };
    auto barc = [&](int j) { return k_.circle_arcs[bc][((j % len) + len) % len]; };

    // Verticals, indexed by bottom position; none at q+1 (the bigon).
    vertical_edges_.assign(len, -1);
    for (int d = 0; d < len; d++) {
        if (d == 1)
            continue;
        int ks = (d == 0) ? rho : rho + d - 2;
        int j = (q + d) % len;
        vertical_edges_[j] = new_edge(bv(j), tv(ks));
    }

    int first_triangle = k_.num_triangles();

    // The two triangles over the cancelling pair, fanned to the start of w'.
    int diag = new_edge(bv(q + 1), tv(rho));
    int delta0 = add_triangle({bv(q), bv(q + 1), tv(rho)},
                              {barc(q), diag, vertical_edges_[q % len]},
                              {true, true, false}, CellKind::fold_bigon, q % len, 0);
    int delta1 = add_triangle({bv(q + 1), bv(q + 2), tv(rho)},
                              {barc(q + 1), vertical_edges_[(q + 2) % len], diag},
                              {true, true, false}, CellKind::fold_bigon, (q + 1) % len, 0);

    // The fold rectangle and its partner carry mirrored diagonals: in the
    // straight case the region rectangle fans from its bottom-left corner
    // (the terminal endpoint of u) and the partner mirrors it; in the
    // mirror case the roles swap.
    std::vector<Cell> cells(len);
    for (int d = 2; d < len; d++) {
        int j = (q + d) % len;
        int ks = rho + d - 2;
        if (d == 2 + u_len) {
            cells[j] = make_cell(bc, j, tc, ks, 1, !mirror_case, CellKind::fold_rectangle);
        } else if (j == partner_pos) {
            cells[j] = make_cell(bc, j, tc, ks, 1, mirror_case, CellKind::fold_partner);
        } else {
            cells[j] = make_cell(bc, j, tc, ks, 1, is_forward(sigma.at(j)), CellKind::rectangle);
        }
    }

    // Fold-region pairings (see the annulus construction notes in the
    // repository documentation): the bigon pairs with the lower triangles
    // of the fold rectangle and the partner rectangle, their upper
    // triangles pair with each other.
    const Cell& frect = cells[(q + 2 + u_len) % len];
    const Cell& prect = cells[partner_pos];
    if (!mirror_case) {
        record_pair(delta0, frect.tris[0], {1, 0, 2});
        record_pair(delta1, prect.tris[0], {1, 0, 2});
        record_pair(frect.tris[1], prect.tris[1], {0, 2, 1});
    } else {
        record_pair(delta0, prect.tris[0], {1, 0, 2});
        record_pair(delta1, frect.tris[0], {1, 0, 2});
        record_pair(prect.tris[1], frect.tris[1], {0, 2, 1});
    }

    // Ordinary mirror pairs for all uninvolved edges.
    std::vector<int> pos_of(bot.graph.num_directions(), -1);
    for (int j = 0; j < len; j++)
        pos_of[sigma.at(j)] = j;
    for (int e = 0; e < bot.graph.num_edges(); e++) {
        if (e == edge_of(x) || e == edge_of(y))
            continue;
        pair_cells(cells[pos_of[forward_dir(e)]], cells[pos_of[reverse_dir(forward_dir(e))]]);
    }

    SurfaceComplex::AnnulusInfo info;
    info.type = SurfaceComplex::AnnulusInfo::Type::fold;
    info.first_triangle = first_triangle;
    info.num_triangles = k_.num_triangles() - first_triangle;
    info.w_position = q;
    info.u_length = u_len;
    info.mirror_case = mirror_case;
    info.partner_position = partner_pos;
    {
        std::ostringstream w;
        for (int d = 0; d < 3 + u_len; d++)
            w << (d ? " " : "") << bot.graph.dir_name(sigma.at(q + d));
        info.w_text = w.str();
    }
    k_.annuli.push_back(info);
    next_annulus_++;
}

void TorusBuilder::add_final_annulus() {
    int last = static_cast<int>(seq_.stages.size()) - 1;
    const Stage& bot = seq_.stages[last];
    const Stage& top0 = seq_.stages[0];
    ensure_circle(last);
    ensure_circle(0);

    const CyclicPath& sigma = bot.sigma;
    int len = sigma.length();
    if (top0.sigma.length() != len)
        throw InternalError("final gluing: circle lengths differ");

    // The terminal isomorphism relabels sigma_{2n} onto a rotation of
    // sigma_0; the rotation is unique because directed labels are unique.
    std::vector<DirEdge> expected(len);
    for (int j = 0; j < len; j++) {
        EdgePath img = seq_.terminal.image_of(sigma.at(j));
        if (img.length() != 1)
            throw InternalError("final gluing: terminal map is not edge-to-edge");
        expected[j] = img.steps[0];
    }
    int rho = -1;
    for (int j = 0; j < len; j++)
        if (top0.sigma.at(j) == expected[0]) {
            rho = j;
            break;
        }
    if (rho == -1)
        throw InternalError("final gluing: cannot align with sigma_0");
    for (int j = 0; j < len; j++)
        if (top0.sigma.at(rho + j) != expected[j])
            throw InternalError("final gluing: relabeled sigma does not match sigma_0");

    vertical_edges_.assign(len, -1);
    for (int j = 0; j < len; j++)
        vertical_edges_[j] = new_edge(k_.circle_vertices[last][j],
                                      k_.circle_vertices[0][(rho + j) % len]);

    int first_triangle = k_.num_triangles();
    std::vector<Cell> cells(len);
    for (int j = 0; j < len; j++)
        cells[j] = make_cell(last, j, 0, rho + j, 1, is_forward(sigma.at(j)),
                             CellKind::rectangle);

    std::vector<int> pos_of(bot.graph.num_directions(), -1);
    for (int j = 0; j < len; j++)
        pos_of[sigma.at(j)] = j;
    for (int e = 0; e < bot.graph.num_edges(); e++)
        pair_cells(cells[pos_of[forward_dir(e)]], cells[pos_of[reverse_dir(forward_dir(e))]]);

    SurfaceComplex::AnnulusInfo info;
    info.type = SurfaceComplex::AnnulusInfo::Type::final_gluing;
    info.first_triangle = first_triangle;
    info.num_triangles = k_.num_triangles() - first_triangle;
    k_.annuli.push_back(info);
    next_annulus_++;
}

SurfaceComplex TorusBuilder::finish() {
    verify_surface_complex(k_);
    return std::move(k_);
}

SurfaceComplex assemble_torus(const FoldSequence& seq) {
    TorusBuilder builder(seq);
    for (int i = 0; i < seq.num_folds(); i++) {
        builder.add_subdivision_annulus(i);
        builder.add_fold_annulus(i);
    }
    builder.add_final_annulus();
    return builder.finish();
}

void verify_surface_complex(const SurfaceComplex& k) {
    // Structural consistency of triangle sides.
    for (int t = 0; t < k.num_triangles(); t++) {
        const auto& tri = k.triangles[t];
        for (int s = 0; s < 3; s++) {
            const auto& e = k.edges[tri.sides[s]];
            int from = tri.corners[s], to = tri.corners[(s + 1) % 3];
            int tail = tri.side_forward[s] ? e.tail : e.head;
            int head = tri.side_forward[s] ? e.head : e.tail;
            if (tail != from || head != to)
                throw InternalError("triangle side does not match its edge");
        }
    }

    // Every edge lies in exactly two triangles, traversed once in each
    // direction (this is the existence of the global orientation).
    std::vector<int> fwd_count(k.num_edges(), 0), bwd_count(k.num_edges(), 0);
    for (const auto& tri : k.triangles)
        for (int s = 0; s < 3; s++)
            (tri.side_forward[s] ? fwd_count : bwd_count)[tri.sides[s]]++;
    for (int e = 0; e < k.num_edges(); e++)
        if (fwd_count[e] != 1 || bwd_count[e] != 1)
            throw InternalError("edge " + std::to_string(e) +
                                " is not in exactly two coherently oriented triangles");

    if (k.euler_characteristic() != 0)
        throw InternalError("Euler characteristic of K is " +
                            std::to_string(k.euler_characteristic()) + ", expected 0");

    // Connectivity over shared edges.
    if (k.num_triangles() > 0) {
        std::vector<std::vector<int>> edge_tris(k.num_edges());
        for (int t = 0; t < k.num_triangles(); t++)
            for (int s = 0; s < 3; s++)
                edge_tris[k.triangles[t].sides[s]].push_back(t);
        std::vector<bool> seen(k.num_triangles(), false);
        std::queue<int> queue;
        queue.push(0);
        seen[0] = true;
        int visited = 1;
        while (!queue.empty()) {
            int t = queue.front();
            queue.pop();
            for (int s = 0; s < 3; s++)
                for (int other : edge_tris[k.triangles[t].sides[s]])
                    if (!seen[other]) {
                        seen[other] = true;
                        visited++;
                        queue.push(other);
                    }
        }
        if (visited != k.num_triangles())
            throw InternalError("K is disconnected");
    }

    // The pairing is a fixed-point-free involution whose corner maps are
    // odd permutations, i.e. they reverse the global orientation.
    for (int t = 0; t < k.num_triangles(); t++) {
        int u = k.pair_with[t];
        if (u < 0 || u == t)
            throw InternalError("triangle " + std::to_string(t) + " is unpaired");
        if (k.pair_with[u] != t)
            throw InternalError("pairing is not an involution");
        const auto& m = k.pair_map[t];
        const auto& minv = k.pair_map[u];
        for (int s = 0; s < 3; s++)
            if (minv[m[s]] != s)
                throw InternalError("pairing corner maps are not mutually inverse");
        // Parity of the slot permutation: even would preserve orientation.
        int inversions = 0;
        for (int a = 0; a < 3; a++)
            for (int b = a + 1; b < 3; b++)
                if (m[a] > m[b])
                    inversions++;
        if (inversions % 2 == 0)
            throw InternalError("pairing of triangle " + std::to_string(t) +
                                " preserves orientation");
    }
}

namespace {

// Signed union-find; sign relates an element's orientation to its root.
struct SignedUF {
    std::vector<int> parent;
    std::vector<int> sign;

    explicit SignedUF(int n) : parent(n), sign(n, 1) {
        for (int i = 0; i < n; i++)
            parent[i] = i;
    }
    std::pair<int, int> find(int a) {
        if (parent[a] == a)
            return {a, 1};
        auto [root, s] = find(parent[a]);
        parent[a] = root;
        sign[a] *= s;
        return {root, sign[a]};
    }
    // a = rel * b
    void unite(int a, int b, int rel) {
        auto [ra, sa] = find(a);
        auto [rb, sb] = find(b);
        if (ra == rb) {
            if (sa != rel * sb)
                throw InternalError("inconsistent edge identification sign");
            return;
        }
        parent[ra] = rb;
        sign[ra] = sa * rel * sb; // so that find(a) yields rel*sb... (sa*sign[ra]=rel*sb)
    }
};

} // namespace

AbelianGroup quotient_h1(const SurfaceComplex& k) {
    // Work with half-edges (each edge split at a midpoint): every half has
    // one vertex end and one midpoint end, so no identification chain can
    // reverse a half onto itself.
    int H = 2 * k.num_edges(); // half 2e: tail->mid, half 2e+1: mid->head
    SignedUF halves(H);
    SignedUF verts(k.num_vertices);
    SignedUF mids(k.num_edges());

    // Traversal of side s of triangle t: the two halves in order, with
    // signs relative to the halves' own directions.
    auto side_halves = [&](const SurfaceComplex::Triangle& tri,
                           int s) -> std::array<std::pair<int, int>, 2> {
        int e = tri.sides[s];
        if (tri.side_forward[s])
            return {{{2 * e, 1}, {2 * e + 1, 1}}};
        return {{{2 * e + 1, -1}, {2 * e, -1}}};
    };

    for (int t = 0; t < k.num_triangles(); t++) {
        int u = k.pair_with[t];
        if (u < t)
            continue; // handle each pair once
        const auto& tri = k.triangles[t];
        const auto& other = k.triangles[u];
        const auto& m = k.pair_map[t];
        for (int s = 0; s < 3; s++)
            verts.unite(other.corners[m[s]], tri.corners[s], 1);
        for (int s = 0; s < 3; s++) {
            // Side s of t maps onto the side of u joining slots m[s], m[s+1].
            int a = m[s], b = m[(s + 1) % 3];
            int r = -1;
            bool same_order = false;
            for (int rr = 0; rr < 3; rr++) {
                if (rr == a && (rr + 1) % 3 == b) {
                    r = rr;
                    same_order = true;
                } else if (rr == b && (rr + 1) % 3 == a) {
                    r = rr;
                }
            }
            if (r == -1)
                throw InternalError("pairing does not map sides to sides");
            auto h1 = side_halves(tri, s);
            auto h2 = side_halves(other, r);
            if (!same_order)
                std::swap(h2[0], h2[1]);
            int flip = same_order ? 1 : -1;
            for (int i = 0; i < 2; i++) {
                halves.unite(h1[i].first, h2[i].first,
                             h1[i].second * flip * h2[i].second);
                mids.unite(h1[i].first / 2, h2[i].first / 2, 1);
            }
        }
    }

    // Compact 1-cells and 0-cells of the quotient.
    std::map<int, int> half_id, vert_id, mid_id;
    for (int h = 0; h < H; h++) {
        int root = halves.find(h).first;
        if (!half_id.count(root))
            half_id[root] = static_cast<int>(half_id.size());
    }
    for (int v = 0; v < k.num_vertices; v++) {
        int root = verts.find(v).first;
        if (!vert_id.count(root))
            vert_id[root] = static_cast<int>(vert_id.size());
    }
    for (int e = 0; e < k.num_edges(); e++) {
        int root = mids.find(e).first;
        if (!mid_id.count(root))
            mid_id[root] = static_cast<int>(mid_id.size());
    }
    int n1 = static_cast<int>(half_id.size());
    int n0 = static_cast<int>(vert_id.size() + mid_id.size());

    auto half_class = [&](int h) {
        auto [root, sgn] = halves.find(h);
        return std::pair<int, int>(half_id[root], sgn);
    };

    // d2: one 2-cell per triangle pair.
    int n2 = k.num_triangles() / 2;
    SparseIntMatrix d2(n2, n1);
    int cell = 0;
    for (int t = 0; t < k.num_triangles(); t++) {
        if (k.pair_with[t] < t)
            continue;
        const auto& tri = k.triangles[t];
        for (int s = 0; s < 3; s++) {
            int e = tri.sides[s];
            int dir = tri.side_forward[s] ? 1 : -1;
            for (int h : {2 * e, 2 * e + 1}) {
                auto [id, sgn] = half_class(h);
                d2.add(cell, id, dir * sgn);
            }
        }
        cell++;
    }

    // d1: boundary of each half class, in its representative orientation.
    SparseIntMatrix d1(n1, n0);
    int mid_base = static_cast<int>(vert_id.size());
    for (auto& [root, id] : half_id) {
        int e = root / 2;
        int vtx = (root % 2 == 0) ? k.edges[e].tail : k.edges[e].head;
        int vclass = vert_id[verts.find(vtx).first];
        int mclass = mid_base + mid_id[mids.find(e).first];
        // tail half: mid - vertex; head half: vertex - mid.
        int vs = (root % 2 == 0) ? -1 : 1;
        d1.add(id, vclass, vs);
        d1.add(id, mclass, -vs);
    }

    SmithForm s2 = smith_normal_form(std::move(d2));
    SmithForm s1 = smith_normal_form(std::move(d1));

    AbelianGroup h;
    h.free_rank = n1 - s2.rank() - s1.rank();
    h.torsion = s2.torsion();
    return h;
}

std::string dump_off(const SurfaceComplex& k) {
    // Schematic coordinates: x = position on the circle, y = circle level.
    std::vector<std::pair<int, int>> coords(k.num_vertices, {0, 0});
    for (size_t level = 0; level < k.circle_vertices.size(); level++)
        for (size_t j = 0; j < k.circle_vertices[level].size(); j++)
            coords[k.circle_vertices[level][j]] = {static_cast<int>(j), static_cast<int>(level)};

    std::ostringstream out;
    out << "OFF\n" << k.num_vertices << " " << k.num_triangles() << " " << k.num_edges() << "\n";
    for (int v = 0; v < k.num_vertices; v++)
        out << coords[v].first << " " << coords[v].second << " 0\n";
    for (const auto& tri : k.triangles)
        out << "3 " << tri.corners[0] << " " << tri.corners[1] << " " << tri.corners[2] << "\n";
    out << "# pairing\n";
    for (int t = 0; t < k.num_triangles(); t++) {
        out << "# " << t << " <-> " << k.pair_with[t] << " corners " << k.pair_map[t][0] << " "
            << k.pair_map[t][1] << " " << k.pair_map[t][2] << "\n";
    }
    return out.str();
}

} // namespace mtor
