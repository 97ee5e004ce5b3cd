#include "fsb/rank.hpp"

#include <algorithm>

namespace fsb {

namespace {

// Fraction-free (Bareiss) row echelon; mutates m, returns the rank.
long bareiss_rank(std::vector<std::vector<Int>>& m) {
    if (m.empty()) return 0;
    std::size_t cols = m[0].size();
    std::size_t next_row = 0, next_col = 0;
    Int prev_pivot = 1;
    while (next_row < m.size() && next_col < cols) {
        std::size_t piv = next_row;
        while (piv < m.size() && m[piv][next_col] == 0) ++piv;
        if (piv == m.size()) {
            ++next_col;
            continue;
        }
        std::swap(m[next_row], m[piv]);
        const Int p = m[next_row][next_col];
        for (std::size_t r = next_row + 1; r < m.size(); ++r) {
            const Int f = m[r][next_col];
            for (std::size_t c = next_col; c < cols; ++c) {
                m[r][c] = (m[r][c] * p - f * m[next_row][c]) / prev_pivot;
            }
        }
        prev_pivot = p;
        ++next_row;
        ++next_col;
    }
    return static_cast<long>(next_row);
}

}  // namespace

long rank_int_rows(std::vector<std::vector<Int>>& rows) { return bareiss_rank(rows); }

std::pair<long, long> rank_int_rows_prefix(std::vector<std::vector<Int>>& rows,
                                           std::size_t split) {
    split = std::min(split, rows.size());
    std::vector<std::vector<Int>> prefix(rows.begin(), rows.begin() + static_cast<long>(split));
    long r1 = bareiss_rank(prefix);
    long r2 = bareiss_rank(rows);
    return {r1, r2};
}

std::vector<std::vector<Rat>> nullspace(const std::vector<std::vector<Rat>>& rows,
                                        std::size_t cols) {
    // Plain rational Gauss-Jordan; matrices here are small.
    std::vector<std::vector<Rat>> m = rows;
    std::vector<long> pivot_of_col(cols, -1);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < m.size(); ++col) {
        std::size_t piv = rank;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[rank], m[piv]);
        Rat inv = m[rank][col];
        for (std::size_t c = 0; c < cols; ++c) {
            m[rank][c] /= inv;
            m[rank][c].canonicalize();
        }
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == rank || m[r][col] == 0) continue;
            Rat f = m[r][col];
            for (std::size_t c = 0; c < cols; ++c) {
                m[r][c] -= f * m[rank][c];
                m[r][c].canonicalize();
            }
        }
        pivot_of_col[col] = static_cast<long>(rank);
        ++rank;
    }
    std::vector<std::vector<Rat>> basis;
    for (std::size_t col = 0; col < cols; ++col) {
        if (pivot_of_col[col] >= 0) continue;
        std::vector<Rat> v(cols, 0);
        v[col] = 1;
        for (std::size_t c = 0; c < cols; ++c) {
            if (pivot_of_col[c] < 0) continue;
            v[c] = -m[static_cast<std::size_t>(pivot_of_col[c])][col];
            v[c].canonicalize();
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace fsb
