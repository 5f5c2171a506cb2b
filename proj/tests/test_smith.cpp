#include <doctest.h>

#include <random>

#include "mtor/smith.hpp"

using namespace mtor;

namespace {

SparseIntMatrix dense(const std::vector<std::vector<long long>>& rows, int cols) {
    SparseIntMatrix m(static_cast<int>(rows.size()), cols);
    for (size_t r = 0; r < rows.size(); r++)
        for (int c = 0; c < cols; c++)
            m.add(static_cast<int>(r), c, rows[r][c]);
    return m;
}

Int det3(const std::vector<std::vector<long long>>& m) {
    return Int(m[0][0]) * (Int(m[1][1]) * m[2][2] - Int(m[1][2]) * m[2][1]) -
           Int(m[0][1]) * (Int(m[1][0]) * m[2][2] - Int(m[1][2]) * m[2][0]) +
           Int(m[0][2]) * (Int(m[1][0]) * m[2][1] - Int(m[1][1]) * m[2][0]);
}

} // namespace

TEST_CASE("known smith forms") {
    // diag(2,6) from a classic example.
    SmithForm s = smith_normal_form(dense({{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}}, 3));
    REQUIRE(s.factors.size() == 3);
    CHECK(s.factors[0] == 2);
    CHECK(s.factors[1] == 2);
    CHECK(s.factors[2] == 156);

    SmithForm zero = smith_normal_form(SparseIntMatrix(3, 3));
    CHECK(zero.rank() == 0);

    SmithForm unit = smith_normal_form(dense({{1, 0}, {0, 1}}, 2));
    CHECK(unit.factors == std::vector<Int>{1, 1});
}

TEST_CASE("divisibility chain and determinant preservation") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<long long> dist(-6, 6);
    for (int trial = 0; trial < 100; trial++) {
        std::vector<std::vector<long long>> rows(3, std::vector<long long>(3));
        for (auto& row : rows)
            for (auto& v : row)
                v = dist(rng);
        SmithForm s = smith_normal_form(dense(rows, 3));
        for (size_t i = 0; i + 1 < s.factors.size(); i++) {
            CHECK(s.factors[i] > 0);
            CHECK(s.factors[i + 1] % s.factors[i] == 0);
        }
        Int det = det3(rows);
        if (det != 0) {
            REQUIRE(s.factors.size() == 3);
            Int prod = s.factors[0] * s.factors[1] * s.factors[2];
            CHECK(prod == (det < 0 ? -det : det));
        } else {
            CHECK(s.factors.size() < 3);
        }
    }
}

TEST_CASE("cokernel groups") {
    // Z^2 / [[0,1],[1,1]] row space = 0 (determinant -1).
    AbelianGroup fig8 = cokernel(dense({{0, 1}, {1, 1}}, 2));
    CHECK(fig8.free_rank == 0);
    CHECK(fig8.torsion.empty());

    AbelianGroup z2 = cokernel(dense({{2}}, 1));
    CHECK(z2.free_rank == 0);
    REQUIRE(z2.torsion.size() == 1);
    CHECK(z2.torsion[0] == 2);

    AbelianGroup free = cokernel(SparseIntMatrix(0, 3));
    CHECK(free.free_rank == 3);
    CHECK(free.to_string() == "Z^3");
}
