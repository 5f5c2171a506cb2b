#include "mtor/fold.hpp"

#include <algorithm>
#include <sstream>

namespace mtor {

namespace {

std::string fresh_label(const Graph& g, const std::vector<std::string>& pending,
                        const std::string& base) {
    std::string name = base;
    auto taken = [&](const std::string& s) {
        return g.has_label(s) || std::find(pending.begin(), pending.end(), s) != pending.end();
    };
    while (taken(name))
        name += "'";
    return name;
}

EdgePath prefix(const EdgePath& p, int k) {
    return EdgePath(std::vector<DirEdge>(p.steps.begin(), p.steps.begin() + k));
}

EdgePath suffix(const EdgePath& p, int k) { // drops the first k steps
    return EdgePath(std::vector<DirEdge>(p.steps.begin() + k, p.steps.end()));
}

void check_sigma(const Stage& stage, const std::string& where) {
    const Graph& g = stage.graph;
    std::vector<int> count(g.num_directions(), 0);
    for (DirEdge d : stage.sigma.steps)
        count[d]++;
    for (DirEdge d = 0; d < g.num_directions(); d++)
        if (count[d] != 1)
            throw ValidationError(where + ": sigma lost the boundary property at direction " +
                                  g.dir_name(d));
    if (!stage.sigma.is_cyclically_tight() || !stage.sigma.composable(g))
        throw ValidationError(where + ": sigma is not a tight loop");
}

} // namespace

std::pair<SubdivisionStep, Stage> subdivide(const Stage& stage, const FoldCandidate& cand) {
    const Graph& g = stage.graph;
    EdgePath img1 = stage.to_range.image_of(cand.d1);
    EdgePath img2 = stage.to_range.image_of(cand.d2);
    if (cand.k < 1 || cand.k > img1.length() || cand.k > img2.length())
        throw InternalError("fold candidate prefix length out of range");
    if (prefix(img1, cand.k).steps != prefix(img2, cand.k).steps)
        throw InternalError("fold candidate images do not share the stated prefix");
    if (g.initial(cand.d1) != g.initial(cand.d2) || cand.d1 == cand.d2)
        throw InternalError("fold candidate directions do not share a vertex");

    bool split1 = img1.length() > cand.k;
    bool split2 = img2.length() > cand.k;

    SubdivisionStep step;
    step.candidate = cand;
    step.side1_subdivided = split1;
    step.side2_subdivided = split2;

    // Rebuild the graph, replacing each split edge in place by two edges
    // with a fresh midpoint vertex.
    Graph ng;
    for (int v = 0; v < g.num_vertices(); v++)
        ng.add_vertex(g.vertex_name(v));

    std::vector<std::string> pending;
    auto plan_labels = [&](int edge) {
        std::string a = fresh_label(g, pending, g.label(edge) + "_1");
        pending.push_back(a);
        std::string b = fresh_label(g, pending, g.label(edge) + "_2");
        pending.push_back(b);
        return std::pair<std::string, std::string>(a, b);
    };

    int e1 = edge_of(cand.d1), e2 = edge_of(cand.d2);
    std::vector<EdgePath> old_to_new(g.num_edges()); // image of each forward direction
    std::vector<int> midpoint(g.num_edges(), -1);
    for (int e = 0; e < g.num_edges(); e++) {
        bool split = (split1 && e == e1) || (split2 && e == e2);
        if (!split) {
            int ne = ng.add_edge(g.label(e), g.initial(forward_dir(e)), g.terminal(forward_dir(e)));
            old_to_new[e] = EdgePath({forward_dir(ne)});
        } else {
            auto [la, lb] = plan_labels(e);
            int m = ng.add_vertex();
            midpoint[e] = m;
            int na = ng.add_edge(la, g.initial(forward_dir(e)), m);
            int nb = ng.add_edge(lb, m, g.terminal(forward_dir(e)));
            old_to_new[e] = EdgePath({forward_dir(na), forward_dir(nb)});
            step.subdivided.push_back({e, na, nb});
        }
    }

    GraphMap s{g, ng, {}, old_to_new};
    s.vertex_map.resize(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); v++)
        s.vertex_map[v] = v;
    step.s = s;

    // New stage map: split images along the candidate directions, keep the
    // rest.  Midpoints land at the vertex the common prefix reaches.
    GraphMap gm{ng, stage.to_range.range, {}, {}};
    gm.vertex_map.assign(ng.num_vertices(), -1);
    for (int v = 0; v < g.num_vertices(); v++)
        gm.vertex_map[v] = stage.to_range.vertex_map[v];
    gm.edge_map.resize(ng.num_edges());
    for (int e = 0; e < g.num_edges(); e++) {
        if (midpoint[e] == -1) {
            gm.edge_map[edge_of(old_to_new[e].steps[0])] = stage.to_range.edge_map[e];
        } else {
            // The candidate direction on this edge gets the length-k prefix.
            DirEdge cd = (e == e1 && split1 && edge_of(cand.d1) == e) ? cand.d1 : cand.d2;
            EdgePath dir_img = stage.to_range.image_of(cd);
            EdgePath front_img, back_img; // forward-direction images of the two halves
            if (is_forward(cd)) {
                front_img = prefix(dir_img, cand.k);
                back_img = suffix(dir_img, cand.k);
            } else {
                EdgePath fwd = stage.to_range.edge_map[e];
                int split_at = fwd.length() - cand.k;
                front_img = prefix(fwd, split_at);
                back_img = suffix(fwd, split_at);
            }
            int na = edge_of(old_to_new[e].steps[0]);
            int nb = edge_of(old_to_new[e].steps[1]);
            gm.edge_map[na] = front_img;
            gm.edge_map[nb] = back_img;
            gm.vertex_map[midpoint[e]] =
                stage.to_range.range.terminal(front_img.steps.back());
        }
    }

    Stage next{ng, gm, apply_map(s, stage.sigma)};

    // The directions to identify: the length-k initial segment of each
    // candidate direction, as a direction of the new graph.
    auto segment = [&](DirEdge d) -> DirEdge {
        return apply_map(s, EdgePath({d})).steps.front();
    };
    step.seg1 = segment(cand.d1);
    step.seg2 = segment(cand.d2);

    if (!(next.to_range.image_of(step.seg1) == next.to_range.image_of(step.seg2)) ||
        next.to_range.image_of(step.seg1).length() != cand.k)
        throw InternalError("subdivision did not align the fold segments");

    return {std::move(step), std::move(next)};
}

std::pair<FoldStep, Stage> fold(const Stage& stage, const SubdivisionStep& prepared) {
    const Graph& g = stage.graph;
    DirEdge seg1 = prepared.seg1, seg2 = prepared.seg2;
    if (!(stage.to_range.image_of(seg1) == stage.to_range.image_of(seg2)))
        throw InternalError("fold: segment images differ");
    int gone = edge_of(seg1), kept = edge_of(seg2);
    if (gone == kept)
        throw InternalError("fold: segments lie on the same edge");

    int m1 = g.terminal(seg1), m2 = g.terminal(seg2);

    // New graph: drop the gone edge, merge m1 into m2 if distinct.
    Graph ng;
    std::vector<int> vmap(g.num_vertices());
    {
        int next_id = 0;
        for (int v = 0; v < g.num_vertices(); v++) {
            if (v == m1 && m1 != m2) {
                vmap[v] = -1; // fixed up after m2 gets its id
                continue;
            }
            vmap[v] = next_id++;
            ng.add_vertex(g.vertex_name(v));
        }
        if (m1 != m2)
            vmap[m1] = vmap[m2];
    }
    std::vector<int> emap(g.num_edges(), -1);
    for (int e = 0; e < g.num_edges(); e++) {
        if (e == gone)
            continue;
        emap[e] = ng.add_edge(g.label(e), vmap[g.initial(forward_dir(e))],
                              vmap[g.terminal(forward_dir(e))]);
    }

    // Projection p: the gone edge maps onto the kept one, aligned so that
    // seg1 |-> seg2; everything else is the identity.
    GraphMap p{g, ng, vmap, {}};
    p.edge_map.resize(g.num_edges());
    for (int e = 0; e < g.num_edges(); e++) {
        if (e == gone) {
            DirEdge image = (seg1 == forward_dir(gone))
                                ? (is_forward(seg2) ? forward_dir(emap[kept])
                                                    : reverse_dir(forward_dir(emap[kept])))
                                : (is_forward(seg2) ? reverse_dir(forward_dir(emap[kept]))
                                                    : forward_dir(emap[kept]));
            p.edge_map[e] = EdgePath({image});
        } else {
            p.edge_map[e] = EdgePath({forward_dir(emap[e])});
        }
    }

    GraphMap gm{ng, stage.to_range.range, {}, {}};
    gm.vertex_map.assign(ng.num_vertices(), -1);
    for (int v = 0; v < g.num_vertices(); v++)
        if (!(v == m1 && m1 != m2))
            gm.vertex_map[vmap[v]] = stage.to_range.vertex_map[v];
    gm.edge_map.resize(ng.num_edges());
    for (int e = 0; e < g.num_edges(); e++)
        if (e != gone)
            gm.edge_map[emap[e]] = stage.to_range.edge_map[e];

    FoldStep step;
    step.p = p;
    step.gone = seg1;
    step.kept = seg2;
    step.kind = (prepared.side1_subdivided && prepared.side2_subdivided) ? FoldStep::Kind::partial
                                                                         : FoldStep::Kind::full;

    Stage next{ng, gm, tighten(apply_map(p, stage.sigma))};
    if (next.size() >= stage.size())
        throw InternalError("fold did not decrease map size");
    return {std::move(step), std::move(next)};
}

FoldSequence decompose(const MarkedMap& mm) {
    require_valid(mm);

    FoldSequence seq;
    Stage stage{mm.graph(), mm.map, mm.boundary};
    seq.stages.push_back(stage);

    int guard = map_size(mm.map) + 1;
    while (true) {
        MarkedMap current{stage.to_range, stage.sigma};
        auto cand = find_fold_candidate(current);
        if (!cand)
            break;
        if (--guard < 0)
            throw InternalError("decompose did not terminate");

        auto [sub, odd] = subdivide(stage, *cand);
        check_sigma(odd, "stage " + std::to_string(seq.stages.size()));
        seq.subdivisions.push_back(sub);
        seq.stages.push_back(odd);

        auto [fs, even] = fold(odd, sub);
        // Tightening must remove exactly the folded corner.  More
        // cancellation means a vertex lost all but one direction (a
        // dead-end edge), which happens only for maps that are not tight.
        if (even.sigma.length() != odd.sigma.length() - 2)
            throw ValidationError(
                "fold " + std::to_string(seq.folds.size()) +
                " left a dead-end edge: the map is not tight at some vertex "
                "(tighten the input by a homotopy first)");
        check_sigma(even, "stage " + std::to_string(seq.stages.size()));
        seq.folds.push_back(fs);
        seq.stages.push_back(even);
        stage = seq.stages.back();
    }

    // The leftover immersion must be a graph isomorphism.
    const Stage& last = seq.stages.back();
    bool iso = last.graph.num_edges() == last.to_range.range.num_edges() &&
               last.graph.num_vertices() == last.to_range.range.num_vertices();
    std::vector<bool> edge_hit(last.to_range.range.num_edges(), false);
    for (int e = 0; iso && e < last.graph.num_edges(); e++) {
        const EdgePath& img = last.to_range.edge_map[e];
        if (img.length() != 1 || edge_hit[edge_of(img.steps[0])])
            iso = false;
        else
            edge_hit[edge_of(img.steps[0])] = true;
    }
    std::vector<bool> vertex_hit(last.to_range.range.num_vertices(), false);
    for (int v = 0; iso && v < last.graph.num_vertices(); v++) {
        if (vertex_hit[last.to_range.vertex_map[v]])
            iso = false;
        else
            vertex_hit[last.to_range.vertex_map[v]] = true;
    }
    if (!iso)
        throw ValidationError(
            "input is not a homotopy-equivalence representative: the unfoldable "
            "terminal map is not a graph isomorphism");

    seq.terminal = last.to_range;
    return seq;
}

int fold_count_bound(const Graph& g) {
    int total = 0;
    for (int v = 0; v < g.num_vertices(); v++) {
        int val = g.valence(v);
        if (val < 3)
            throw ValidationError("vertex '" + g.vertex_name(v) + "' has valence " +
                                  std::to_string(val) + " < 3");
        total += val - 2;
    }
    return total;
}

std::string fold_sequence_trace(const FoldSequence& seq) {
    std::ostringstream out;
    auto print_stage = [&](int i) {
        const Stage& st = seq.stages[i];
        out << "stage " << i << ": " << st.graph.num_edges() << " edges, size " << st.size()
            << "\n";
        out << "  sigma_" << i << " = " << to_string(st.graph, st.sigma) << "\n";
    };
    print_stage(0);
    for (size_t i = 0; i < seq.folds.size(); i++) {
        const SubdivisionStep& sub = seq.subdivisions[i];
        const Stage& even = seq.stages[2 * i];
        const Stage& odd = seq.stages[2 * i + 1];
        out << "subdivision s_" << i << ": fold candidate (" << even.graph.dir_name(sub.candidate.d1)
            << ", " << even.graph.dir_name(sub.candidate.d2) << "), common prefix "
            << sub.candidate.k << "\n";
        for (int e = 0; e < even.graph.num_edges(); e++)
            out << "  s_" << i << "(" << even.graph.label(e)
                << ") = " << to_string(odd.graph, sub.s.edge_map[e]) << "\n";
        print_stage(2 * static_cast<int>(i) + 1);

        const FoldStep& fs = seq.folds[i];
        const Stage& next = seq.stages[2 * i + 2];
        out << "fold p_" << i << ": identifies " << odd.graph.dir_name(fs.gone) << " with "
            << odd.graph.dir_name(fs.kept) << " (" << to_string(fs.kind) << ")\n";
        for (int e = 0; e < odd.graph.num_edges(); e++)
            out << "  p_" << i << "(" << odd.graph.label(e)
                << ") = " << to_string(next.graph, fs.p.edge_map[e]) << "\n";
        print_stage(2 * static_cast<int>(i) + 2);
        out << "map g_" << (i + 1) << ":\n";
        for (int e = 0; e < next.graph.num_edges(); e++)
            out << "  g_" << (i + 1) << "(" << next.graph.label(e)
                << ") = " << to_string(next.to_range.range, next.to_range.edge_map[e]) << "\n";
    }
    const Stage& last = seq.final_stage();
    out << "terminal map g_" << seq.folds.size() << " is a graph isomorphism onto G_0\n";
    for (int e = 0; e < last.graph.num_edges(); e++)
        out << "  " << last.graph.label(e) << " -> "
            << to_string(last.to_range.range, last.to_range.edge_map[e]) << "\n";
    return out.str();
}

void verify_fold_sequence(const FoldSequence& seq, const MarkedMap& mm) {
    // Composing every step with the terminal map must reproduce f edge-wise.
    GraphMap composite = identity_map(mm.graph());
    for (size_t i = 0; i < seq.folds.size(); i++) {
        composite = compose(seq.subdivisions[i].s, composite);
        composite = compose(seq.folds[i].p, composite);
    }
    composite = compose(seq.terminal, composite);
    for (int e = 0; e < mm.graph().num_edges(); e++)
        if (!(composite.edge_map[e] == mm.map.edge_map[e]))
            throw InternalError("fold sequence does not compose to f at edge " +
                                mm.graph().label(e));

    for (size_t i = 0; i < seq.folds.size(); i++) {
        if (seq.stages[2 * i + 2].size() >= seq.stages[2 * i].size())
            throw InternalError("map size did not decrease across fold " + std::to_string(i));
        if (seq.stages[2 * i + 1].size() != seq.stages[2 * i].size())
            throw InternalError("subdivision changed map size at step " + std::to_string(i));
    }

    for (size_t i = 0; i < seq.stages.size(); i++)
        check_sigma(seq.stages[i], "stage " + std::to_string(i));
}

} // namespace mtor
