#include "mtor/group.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

namespace mtor {

Word free_reduce(Word w) {
    Word out;
    out.reserve(w.size());
    for (int letter : w) {
        if (!out.empty() && out.back() == -letter)
            out.pop_back();
        else
            out.push_back(letter);
    }
    return out;
}

Word cyclic_reduce(Word w) {
    w = free_reduce(std::move(w));
    while (w.size() >= 2 && w.front() == -w.back()) {
        w.erase(w.begin());
        w.pop_back();
    }
    return w;
}

Word inverse_word(const Word& w) {
    Word out(w.rbegin(), w.rend());
    for (int& letter : out)
        letter = -letter;
    return out;
}

void Presentation::normalize() {
    std::vector<Word> kept;
    for (Word& r : relators) {
        Word reduced = cyclic_reduce(std::move(r));
        if (!reduced.empty())
            kept.push_back(std::move(reduced));
    }
    relators = std::move(kept);
}

int Presentation::total_relator_length() const {
    int total = 0;
    for (const Word& r : relators)
        total += static_cast<int>(r.size());
    return total;
}

std::string Presentation::word_to_string(const Word& w) const {
    std::ostringstream out;
    for (size_t i = 0; i < w.size(); i++) {
        if (i)
            out << ' ';
        int g = std::abs(w[i]) - 1;
        if (w[i] < 0)
            out << '~';
        out << generators[g];
    }
    return out.str();
}

std::string Presentation::to_string() const {
    std::ostringstream out;
    out << "< ";
    for (size_t i = 0; i < generators.size(); i++) {
        if (i)
            out << ", ";
        out << generators[i];
    }
    out << " |";
    for (size_t i = 0; i < relators.size(); i++) {
        out << (i ? ", " : " ") << word_to_string(relators[i]);
    }
    out << " >";
    return out.str();
}

Word Presentation::parse_word(const std::string& text) const {
    std::istringstream in(text);
    std::string token;
    Word w;
    while (in >> token) {
        bool inv = token[0] == '~';
        std::string name = inv ? token.substr(1) : token;
        auto it = std::find(generators.begin(), generators.end(), name);
        if (it == generators.end())
            throw ParseError("unknown generator '" + name + "'");
        int code = static_cast<int>(it - generators.begin()) + 1;
        w.push_back(inv ? -code : code);
    }
    return w;
}

namespace {

// Breadth-first spanning tree from vertex 0 and the induced collapse of
// pi_1(G) onto the free group on the non-tree edges.
struct TreeCollapse {
    const Graph& g;
    std::vector<DirEdge> parent_dir; // direction leading from parent to v
    std::vector<bool> in_tree;       // per unoriented edge
    std::vector<int> gen_of_edge;    // non-tree edge -> generator index
    std::vector<std::string> gen_names;

    explicit TreeCollapse(const Graph& graph) : g(graph) {
        int V = g.num_vertices();
        parent_dir.assign(V, -1);
        in_tree.assign(g.num_edges(), false);
        std::vector<bool> seen(V, false);
        std::queue<int> queue;
        seen[0] = true;
        queue.push(0);
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop();
            for (DirEdge d = 0; d < g.num_directions(); d++) {
                if (g.initial(d) == v && !seen[g.terminal(d)]) {
                    seen[g.terminal(d)] = true;
                    in_tree[edge_of(d)] = true;
                    parent_dir[g.terminal(d)] = d;
                    queue.push(g.terminal(d));
                }
            }
        }
        gen_of_edge.assign(g.num_edges(), -1);
        for (int e = 0; e < g.num_edges(); e++) {
            if (!in_tree[e]) {
                gen_of_edge[e] = static_cast<int>(gen_names.size());
                gen_names.push_back(g.label(e));
            }
        }
    }

    // Edge path from the basepoint to v through the tree.
    EdgePath path_from_base(int v) const {
        std::vector<DirEdge> reversed;
        while (parent_dir[v] != -1) {
            reversed.push_back(parent_dir[v]);
            v = g.initial(parent_dir[v]);
        }
        return EdgePath(std::vector<DirEdge>(reversed.rbegin(), reversed.rend()));
    }

    Word rewrite(const EdgePath& path) const {
        Word w;
        for (DirEdge d : path.steps) {
            if (in_tree[edge_of(d)])
                continue;
            int code = gen_of_edge[edge_of(d)] + 1;
            w.push_back(is_forward(d) ? code : -code);
        }
        return free_reduce(std::move(w));
    }
};

EdgePath concat(std::initializer_list<EdgePath> parts) {
    EdgePath out;
    for (const EdgePath& p : parts)
        out.steps.insert(out.steps.end(), p.steps.begin(), p.steps.end());
    return out;
}

} // namespace

Presentation pi1_presentation(const MarkedMap& mm) {
    require_valid(mm);
    const Graph& g = mm.graph();
    TreeCollapse tree(g);

    Presentation p;
    p.generators = tree.gen_names;
    std::string stable = "t";
    while (std::find(p.generators.begin(), p.generators.end(), stable) != p.generators.end())
        stable += "'";
    p.generators.push_back(stable);
    int t = static_cast<int>(p.generators.size()); // letter code of t

    // Connecting path from the basepoint to its f-image.
    EdgePath eta = tree.path_from_base(mm.map.vertex_map[0]);

    for (int e = 0; e < g.num_edges(); e++) {
        if (tree.in_tree[e])
            continue;
        int x = tree.gen_of_edge[e] + 1;
        EdgePath gamma = concat({tree.path_from_base(g.initial(forward_dir(e))),
                                 EdgePath({forward_dir(e)}),
                                 tree.path_from_base(g.terminal(forward_dir(e))).inverse()});
        EdgePath image = concat({eta, apply_map(mm.map, gamma), eta.inverse()});
        Word rhs = tree.rewrite(image);
        Word relator = {-t, x, t};
        Word rhs_inv = inverse_word(rhs);
        relator.insert(relator.end(), rhs_inv.begin(), rhs_inv.end());
        p.relators.push_back(free_reduce(std::move(relator)));
    }
    p.normalize();
    return p;
}

namespace {

int count_occurrences(const Word& w, int gen_code) {
    int n = 0;
    for (int letter : w)
        if (std::abs(letter) == gen_code)
            n++;
    return n;
}

Word substitute(const Word& w, int gen_code, const Word& replacement) {
    Word out;
    Word replacement_inv = inverse_word(replacement);
    for (int letter : w) {
        if (letter == gen_code)
            out.insert(out.end(), replacement.begin(), replacement.end());
        else if (letter == -gen_code)
            out.insert(out.end(), replacement_inv.begin(), replacement_inv.end());
        else
            out.push_back(letter);
    }
    return free_reduce(std::move(out));
}

void drop_generator(Presentation& p, int gen_index) {
    p.generators.erase(p.generators.begin() + gen_index);
    for (Word& r : p.relators)
        for (int& letter : r) {
            int g = std::abs(letter) - 1;
            if (g > gen_index)
                letter = letter > 0 ? letter - 1 : letter + 1;
        }
}

// Eliminates generators isolated by some relator, never letting the total
// relator length grow.  Returns true if anything changed.
bool eliminate_generators(Presentation& p) {
    bool changed = false;
    while (true) {
        p.normalize();
        struct Candidate {
            int relator, gen_code;
        };
        std::vector<Candidate> eligible;
        for (size_t ri = 0; ri < p.relators.size(); ri++)
            for (size_t gi = 0; gi < p.generators.size(); gi++)
                if (count_occurrences(p.relators[ri], static_cast<int>(gi) + 1) == 1)
                    eligible.push_back({static_cast<int>(ri), static_cast<int>(gi) + 1});
        std::stable_sort(eligible.begin(), eligible.end(), [&](const Candidate& a, const Candidate& b) {
            const Word& ra = p.relators[a.relator];
            const Word& rb = p.relators[b.relator];
            if (ra.size() != rb.size())
                return ra.size() < rb.size();
            if (ra != rb)
                return ra < rb;
            return a.gen_code < b.gen_code;
        });

        bool applied = false;
        for (const Candidate& cand : eligible) {
            Presentation trial = p;
            Word relator = trial.relators[cand.relator];
            // Rotate the isolating letter to the front: r = g^s w.
            size_t at = 0;
            while (std::abs(relator[at]) != cand.gen_code)
                at++;
            std::rotate(relator.begin(), relator.begin() + at, relator.end());
            Word w(relator.begin() + 1, relator.end());
            // g^s w = 1  =>  g = (w^-1)^s
            Word value = relator[0] > 0 ? inverse_word(w) : w;
            trial.relators.erase(trial.relators.begin() + cand.relator);
            for (Word& r : trial.relators)
                r = substitute(r, cand.gen_code, value);
            drop_generator(trial, cand.gen_code - 1);
            trial.normalize();
            if (trial.total_relator_length() <= p.total_relator_length()) {
                p = std::move(trial);
                applied = true;
                changed = true;
                break;
            }
        }
        if (!applied)
            return changed;
    }
}

int max_cyclic_run(const Word& w) {
    if (w.empty())
        return 0;
    int n = static_cast<int>(w.size());
    int best = 1;
    // Doubled scan covers cyclic runs; a run of length n means a power word.
    int run = 1;
    for (int i = 1; i < 2 * n && run < n; i++) {
        if (w[i % n] == w[(i - 1) % n])
            run++;
        else
            run = 1;
        best = std::max(best, std::min(run, n));
    }
    return best;
}

std::pair<int, int> score(const Presentation& p) {
    int runs = 0;
    for (const Word& r : p.relators)
        runs = std::max(runs, max_cyclic_run(r));
    return {p.total_relator_length(), runs};
}

// x -> x y^s or y^s x, applied to every relator.
Presentation apply_nielsen(const Presentation& p, int x_code, int y_code, int s, bool right) {
    Presentation out = p;
    Word replacement = right ? Word{x_code, s * y_code} : Word{s * y_code, x_code};
    for (Word& r : out.relators)
        r = substitute(r, x_code, replacement);
    out.normalize();
    return out;
}

} // namespace

Presentation tietze_simplify(const Presentation& p) {
    Presentation cur = p;
    cur.normalize();
    eliminate_generators(cur);

    // Generator substitutions, first strictly improving move wins;
    // eliminations re-run after every accepted move.
    const int move_cap = 512;
    for (int moves = 0; moves < move_cap; moves++) {
        auto cur_score = score(cur);
        bool applied = false;
        int n = static_cast<int>(cur.generators.size());
        for (int x = 1; x <= n && !applied; x++) {
            for (int y = 1; y <= n && !applied; y++) {
                if (x == y)
                    continue;
                for (int variant = 0; variant < 4 && !applied; variant++) {
                    int s = (variant & 1) ? -1 : 1;
                    bool right = (variant & 2) == 0;
                    Presentation trial = apply_nielsen(cur, x, y, s, right);
                    eliminate_generators(trial);
                    if (score(trial) < cur_score) {
                        cur = std::move(trial);
                        applied = true;
                    }
                }
            }
        }
        if (!applied)
            break;
    }
    return cur;
}

AbelianGroup abelianization(const Presentation& p) {
    SparseIntMatrix m(static_cast<int>(p.relators.size()), static_cast<int>(p.generators.size()));
    for (size_t ri = 0; ri < p.relators.size(); ri++)
        for (int letter : p.relators[ri])
            m.add(static_cast<int>(ri), std::abs(letter) - 1, letter > 0 ? 1 : -1);
    return cokernel(std::move(m));
}

namespace {

bool rotation_equal(const Word& a, const Word& b) {
    if (a.size() != b.size())
        return false;
    if (a.empty())
        return true;
    int n = static_cast<int>(a.size());
    for (int k = 0; k < n; k++) {
        bool match = true;
        for (int i = 0; i < n && match; i++)
            match = a[(i + k) % n] == b[i];
        if (match)
            return true;
    }
    return false;
}

Word apply_renaming(const Presentation& p1, const Presentation& p2, const Word& w2,
                    const SignedRenaming& renaming) {
    std::map<std::string, std::pair<std::string, bool>> table;
    for (auto& entry : renaming.entries)
        table[entry.first] = entry.second;
    Word out;
    for (int letter : w2) {
        const std::string& name = p2.generators[std::abs(letter) - 1];
        auto it = table.find(name);
        if (it == table.end())
            throw ValidationError("renaming does not cover generator '" + name + "'");
        auto target = std::find(p1.generators.begin(), p1.generators.end(), it->second.first);
        if (target == p1.generators.end())
            throw ValidationError("renaming target '" + it->second.first + "' is not a generator");
        int code = static_cast<int>(target - p1.generators.begin()) + 1;
        if (it->second.second)
            code = -code;
        out.push_back(letter > 0 ? code : -code);
    }
    return out;
}

} // namespace

bool words_cyclically_equal(const Presentation& p1, const Word& w1, const Presentation& p2,
                            const Word& w2, const std::optional<SignedRenaming>& renaming) {
    Word a = cyclic_reduce(w1);

    auto matches = [&](const Word& candidate) {
        Word b = cyclic_reduce(candidate);
        return rotation_equal(a, b) || rotation_equal(a, inverse_word(b));
    };

    if (renaming)
        return matches(apply_renaming(p1, p2, w2, *renaming));

    // Search all signed bijections between the two alphabets.
    size_t n = p2.generators.size();
    if (p1.generators.size() != n)
        return false;
    if (n > 8)
        throw ValidationError("alphabet too large; supply an explicit renaming");
    std::vector<int> perm(n);
    for (size_t i = 0; i < n; i++)
        perm[i] = static_cast<int>(i);
    std::sort(perm.begin(), perm.end());
    do {
        for (int signs = 0; signs < (1 << n); signs++) {
            SignedRenaming r;
            for (size_t i = 0; i < n; i++)
                r.entries.push_back(
                    {p2.generators[i], {p1.generators[perm[i]], (signs >> i & 1) != 0}});
            if (matches(apply_renaming(p1, p2, w2, r)))
                return true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

AbelianGroup mapping_torus_h1_oracle(const MarkedMap& mm) {
    const Graph& g = mm.graph();
    TreeCollapse tree(g);
    int n = static_cast<int>(tree.gen_names.size());
    EdgePath eta = tree.path_from_base(mm.map.vertex_map[0]);

    // Rows span the image of f_* - I on H_1(G).
    SparseIntMatrix m(n, n);
    for (int e = 0; e < g.num_edges(); e++) {
        if (tree.in_tree[e])
            continue;
        int x = tree.gen_of_edge[e];
        EdgePath gamma = concat({tree.path_from_base(g.initial(forward_dir(e))),
                                 EdgePath({forward_dir(e)}),
                                 tree.path_from_base(g.terminal(forward_dir(e))).inverse()});
        EdgePath image = concat({eta, apply_map(mm.map, gamma), eta.inverse()});
        for (int letter : tree.rewrite(image))
            m.add(x, std::abs(letter) - 1, letter > 0 ? 1 : -1);
        m.add(x, x, -1);
    }
    AbelianGroup h = cokernel(std::move(m));
    h.free_rank += 1; // the stable letter
    return h;
}

} // namespace mtor
