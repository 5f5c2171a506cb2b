#include "mtor/smith.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "mtor/errors.hpp"

namespace mtor {

void SparseIntMatrix::add(int r, int c, const Int& v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw InternalError("SparseIntMatrix::add out of range");
    if (v == 0)
        return;
    Int& slot = row_[r][c];
    slot += v;
    if (slot == 0)
        row_[r].erase(c);
}

std::vector<Int> SmithForm::torsion() const {
    std::vector<Int> out;
    for (const Int& d : factors)
        if (d > 1)
            out.push_back(d);
    return out;
}

namespace {

// Elimination state with column occupancy tracking.
struct Work {
    std::vector<std::map<int, Int>> row;
    std::vector<std::set<int>> col_rows; // column -> rows with a nonzero entry

    explicit Work(SparseIntMatrix m) {
        int r = m.rows();
        row.resize(r);
        for (int i = 0; i < r; i++)
            row[i] = m.row(i);
        col_rows.resize(m.cols());
        for (int i = 0; i < r; i++)
            for (auto& [c, v] : row[i])
                col_rows[c].insert(i);
    }

    void set(int r, int c, Int v) {
        auto it = row[r].find(c);
        if (v == 0) {
            if (it != row[r].end()) {
                row[r].erase(it);
                col_rows[c].erase(r);
            }
        } else {
            if (it == row[r].end())
                col_rows[c].insert(r);
            row[r][c] = std::move(v);
        }
    }

    Int get(int r, int c) const {
        auto it = row[r].find(c);
        return it == row[r].end() ? Int(0) : it->second;
    }

    // row[dst] += f * row[src]; dst != src
    void row_op(int dst, int src, const Int& f) {
        if (f == 0)
            return;
        for (auto& [c, v] : row[src])
            set(dst, c, get(dst, c) + f * v);
    }

    // col[dst] += f * col[src]; dst != src
    void col_op(int dst, int src, const Int& f) {
        if (f == 0)
            return;
        std::vector<int> rows_with(col_rows[src].begin(), col_rows[src].end());
        for (int r : rows_with)
            set(r, dst, get(r, dst) + f * get(r, src));
    }
};

Int int_abs(const Int& v) { return v < 0 ? Int(-v) : v; }

} // namespace

// Sparse elimination.  Each pivot is cleared with unimodular row/column
// operations only, so the collected diagonal is equivalent to the input;
// the divisibility chain is restored afterwards with gcd/lcm swaps.
SmithForm smith_normal_form(SparseIntMatrix input) {
    Work w(std::move(input));
    int nrows = static_cast<int>(w.row.size());
    std::vector<Int> diagonal;

    while (true) {
        // Pick a pivot: smallest |value|, ties broken by least fill-in.
        int pr = -1, pc = -1;
        Int pv;
        long long best_fill = 0;
        for (int r = 0; r < nrows && !(pr != -1 && pv == 1 && best_fill == 0); r++) {
            for (auto& [c, v] : w.row[r]) {
                Int a = int_abs(v);
                long long fill = static_cast<long long>(w.row[r].size() - 1) *
                                 static_cast<long long>(w.col_rows[c].size() - 1);
                if (pr == -1 || a < pv || (a == pv && fill < best_fill)) {
                    pr = r;
                    pc = c;
                    pv = a;
                    best_fill = fill;
                }
            }
        }
        if (pr == -1)
            break; // matrix is zero

        // Clear the pivot's row and column.  Whenever a division leaves a
        // remainder, that strictly smaller entry becomes the new pivot.
        while (true) {
            bool restart = false;
            Int p = w.get(pr, pc);
            std::vector<int> rows_in_col(w.col_rows[pc].begin(), w.col_rows[pc].end());
            for (int r : rows_in_col) {
                if (r == pr)
                    continue;
                Int q = w.get(r, pc) / p;
                w.row_op(r, pr, -q);
                if (w.get(r, pc) != 0) {
                    pr = r;
                    restart = true;
                    break;
                }
            }
            if (restart)
                continue;
            p = w.get(pr, pc);
            std::vector<int> cols_in_row;
            for (auto& [c, v] : w.row[pr])
                if (c != pc)
                    cols_in_row.push_back(c);
            for (int c : cols_in_row) {
                Int q = w.get(pr, c) / p;
                w.col_op(c, pc, -q);
                if (w.get(pr, c) != 0) {
                    pc = c;
                    restart = true;
                    break;
                }
            }
            if (!restart)
                break;
        }

        diagonal.push_back(int_abs(w.get(pr, pc)));
        w.set(pr, pc, 0);
    }

    // diag(a, b) ~ diag(gcd(a,b), lcm(a,b)).
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < diagonal.size(); i++) {
            for (size_t j = i + 1; j < diagonal.size(); j++) {
                if (diagonal[j] % diagonal[i] != 0) {
                    Int g = gcd(diagonal[i], diagonal[j]);
                    Int l = diagonal[i] / g * diagonal[j];
                    diagonal[i] = g;
                    diagonal[j] = l;
                    changed = true;
                }
            }
        }
    }
    std::sort(diagonal.begin(), diagonal.end());

    SmithForm out;
    out.factors = std::move(diagonal);
    return out;
}

std::string AbelianGroup::to_string() const {
    std::ostringstream out;
    bool first = true;
    if (free_rank > 0) {
        out << "Z";
        if (free_rank > 1)
            out << "^" << free_rank;
        first = false;
    }
    for (const Int& d : torsion) {
        if (!first)
            out << " + ";
        out << "Z/" << d;
        first = false;
    }
    if (first)
        out << "0";
    return out.str();
}

AbelianGroup cokernel(SparseIntMatrix m) {
    int generators = m.cols();
    SmithForm snf = smith_normal_form(std::move(m));
    AbelianGroup g;
    g.free_rank = generators - snf.rank();
    g.torsion = snf.torsion();
    return g;
}

} // namespace mtor
