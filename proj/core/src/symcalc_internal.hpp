#pragma once

#include <optional>
#include <set>
#include <vector>

#include "fsb/symcalc.hpp"

namespace fsb::symdetail {

// Label family bookkeeping: integral labels k*omega and spinor labels
// k*omega + mu_Sigma (1 in Sigma).
struct LabelInfo {
    bool valid = false;
    bool spinor = false;
    int height = 0;
    std::vector<int> sigma;
};

LabelInfo classify_label(const LatticeContext& ctx, const Weight& w);
Weight sigma_weight(const LatticeContext& ctx, const std::vector<int>& sigma);
std::vector<int> sigma_complement(const LatticeContext& ctx, const std::vector<int>& sigma);
std::vector<int> full_sigma(const LatticeContext& ctx);
bool is_hw_sigma(const LatticeContext& ctx, const std::vector<int>& sigma);

SymOp first_group_op(const LatticeContext& ctx, const Weight& current,
                     const std::vector<int>& sigma);
SymOp closer_op(const LatticeContext& ctx, const Weight& current);
std::vector<SymOp> skip_ops(const LatticeContext& ctx, int h, int target);

std::vector<Factor> processing_order(const Monomial& m);
std::optional<Weight> simulate(const LatticeContext& ctx, Weight lam,
                               const std::vector<Factor>& fs);
std::vector<std::vector<int>> candidate_sigmas(const LatticeContext& ctx,
                                               const std::vector<Factor>& block);

}  // namespace fsb::symdetail
