#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>
#include <vector>

namespace mtor {

using Int = boost::multiprecision::cpp_int;

// Sparse integer matrix, row-major.
class SparseIntMatrix {
public:
    SparseIntMatrix(int rows, int cols) : rows_(rows), cols_(cols), row_(rows) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    void add(int r, int c, const Int& v);
    const std::map<int, Int>& row(int r) const { return row_[r]; }

private:
    int rows_, cols_;
    std::vector<std::map<int, Int>> row_;
};

// Diagonal of the Smith normal form: the nonzero invariant factors
// d1 | d2 | ... , all positive.
struct SmithForm {
    std::vector<Int> factors;

    int rank() const { return static_cast<int>(factors.size()); }
    // Factors > 1, i.e. the torsion part of the cokernel.
    std::vector<Int> torsion() const;
};

SmithForm smith_normal_form(SparseIntMatrix m);

// Isomorphism class of a finitely generated abelian group.
struct AbelianGroup {
    int free_rank = 0;
    std::vector<Int> torsion; // invariant factors > 1, divisibility chain

    bool operator==(const AbelianGroup&) const = default;
    std::string to_string() const; // e.g. "Z^2 + Z/5"
};

// Cokernel of the linear map given by the matrix columns, as a group:
// Z^cols / (row space).  Rows are relators, columns generators.
AbelianGroup cokernel(SparseIntMatrix m);

} // namespace mtor
