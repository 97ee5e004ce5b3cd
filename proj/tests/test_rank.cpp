#include <doctest.h>

#include "fsb/rank.hpp"

using namespace fsb;

TEST_CASE("integer rank basics") {
    std::vector<std::vector<Int>> m = {{1, 2, 3}, {2, 4, 6}, {0, 1, 1}};
    CHECK(rank_int_rows(m) == 2);
    std::vector<std::vector<Int>> id = {{1, 0}, {0, 1}};
    CHECK(rank_int_rows(id) == 2);
    std::vector<std::vector<Int>> zero = {{0, 0}, {0, 0}};
    CHECK(rank_int_rows(zero) == 0);
    std::vector<std::vector<Int>> empty;
    CHECK(rank_int_rows(empty) == 0);
}

TEST_CASE("prefix ranks") {
    std::vector<std::vector<Int>> m = {{1, 1, 0}, {2, 2, 0}, {0, 0, 1}, {1, 1, 1}};
    auto [r1, r2] = rank_int_rows_prefix(m, 2);
    CHECK(r1 == 1);
    CHECK(r2 == 2);
}

TEST_CASE("prefix rank when the prefix misses a column") {
    // the prefix never touches column 0; the tail must still pivot there
    std::vector<std::vector<Int>> m = {{0, 1}, {1, 0}, {1, 1}};
    auto [r1, r2] = rank_int_rows_prefix(m, 1);
    CHECK(r1 == 1);
    CHECK(r2 == 2);
}

TEST_CASE("sparse row set ranks with rational entries") {
    SparseRowSet<int> rows;
    rows.add_row({{0, Rat(1, 2)}, {1, Rat(1, 3)}});
    rows.add_row({{0, Rat(3, 2)}, {1, Rat(5)}});
    rows.add_row({{0, Rat(1)}, {1, Rat(2, 3)}});  // 2x the first row
    auto [r1, r2] = rows.ranks_with_prefix(1);
    CHECK(r1 == 1);
    CHECK(r2 == 2);
}

TEST_CASE("rank is invariant under row scaling by signs") {
    SparseRowSet<int> a, b;
    a.add_row({{0, Rat(2)}, {2, Rat(5)}});
    a.add_row({{1, Rat(7)}});
    b.add_row({{0, Rat(-2)}, {2, Rat(-5)}});
    b.add_row({{1, Rat(7)}});
    CHECK(a.rank() == b.rank());
}

TEST_CASE("nullspace") {
    // x + y + z = 0, x - z = 0: kernel is one-dimensional
    std::vector<std::vector<Rat>> rows = {{1, 1, 1}, {1, 0, -1}};
    auto basis = nullspace(rows, 3);
    REQUIRE(basis.size() == 1);
    const auto& v = basis[0];
    CHECK(v[0] + v[1] + v[2] == 0);
    CHECK(v[0] - v[2] == 0);
    CHECK(!(v[0] == 0 && v[1] == 0 && v[2] == 0));
}

TEST_CASE("bareiss matches a textbook 4x4") {
    std::vector<std::vector<Int>> m = {
        {3, 1, 4, 1}, {5, 9, 2, 6}, {8, 10, 6, 7}, {2, 7, 1, 8}};
    // rows 1+2 = row 3, so the rank is 3
    CHECK(rank_int_rows(m) == 3);
}
