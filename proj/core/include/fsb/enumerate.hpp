#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fsb/conditions.hpp"

namespace fsb {

struct CharacterRow {
    int degree = 0;
    std::optional<Weight> weight;
    long count = 0;
};

// All admissible monomials of total degree -n for W(lambda), canonical,
// sorted ascending in the monomial order, no duplicates.
std::vector<Monomial> enumerate_admissible(const LatticeContext& ctx, const WeightSpec& lambda,
                                           int n);

// Every colored partition of n (the PBW index set at degree -n), same order.
std::vector<Monomial> enumerate_all(const LatticeContext& ctx, int n);

// Counts per degree 0..n_max; refined per weight when by_weight is set.
std::vector<CharacterRow> graded_dimensions(const LatticeContext& ctx, const WeightSpec& lambda,
                                            int n_max, bool by_weight = false);

std::string character_csv(const std::vector<CharacterRow>& rows);

}  // namespace fsb
