#pragma once

#include <map>
#include <vector>

#include "fsb/lattice.hpp"

namespace fsb {

// Rank of integer rows by fraction-free (Bareiss) elimination. Mutates rows.
long rank_int_rows(std::vector<std::vector<Int>>& rows);

// Ranks of the first `split` rows and of all rows, sharing one elimination.
std::pair<long, long> rank_int_rows_prefix(std::vector<std::vector<Int>>& rows, std::size_t split);

// Nullspace basis of an exact rational matrix (column vectors of the kernel).
std::vector<std::vector<Rat>> nullspace(const std::vector<std::vector<Rat>>& rows,
                                        std::size_t cols);

// Sparse rational rows over an ordered key type: assign columns by key order,
// clear denominators rowwise, then eliminate.
template <class Key>
class SparseRowSet {
public:
    void add_row(const std::map<Key, Rat>& row) { rows_.push_back(row); }
    std::size_t size() const { return rows_.size(); }

    std::pair<long, long> ranks_with_prefix(std::size_t split) const {
        std::map<Key, std::size_t> col;
        for (const auto& r : rows_)
            for (const auto& [k, v] : r) col.try_emplace(k, 0);
        std::size_t idx = 0;
        for (auto& [k, v] : col) v = idx++;
        std::vector<std::vector<Int>> dense;
        dense.reserve(rows_.size());
        for (const auto& r : rows_) {
            std::vector<Int> out(idx, 0);
            Int lcm = 1;
            for (const auto& [k, v] : r) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den().get_mpz_t());
            for (const auto& [k, v] : r) out[col[k]] = v.get_num() * (lcm / v.get_den());
            dense.push_back(std::move(out));
        }
        return rank_int_rows_prefix(dense, split);
    }

    long rank() const { return ranks_with_prefix(rows_.size()).second; }

private:
    std::vector<std::map<Key, Rat>> rows_;
};

}  // namespace fsb
