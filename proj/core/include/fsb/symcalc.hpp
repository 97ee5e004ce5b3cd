#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fsb/conditions.hpp"
#include "fsb/monomial.hpp"
#include "fsb/weight_spec.hpp"

namespace fsb {

// Projective calculus on pure lattice vectors e^lambda: scalars are never
// tracked, every claim is up to a nonzero constant. Unsupported marks
// outcomes that leave the pure-lattice top; it is never conflated with Zero.
enum class SymKind { Zero, State, Unsupported };

struct SymOutcome {
    SymKind kind = SymKind::Zero;
    Weight lambda;  // meaningful for State only
    static SymOutcome zero() { return {SymKind::Zero, {}}; }
    static SymOutcome unsupported() { return {SymKind::Unsupported, {}}; }
    static SymOutcome state(Weight w) { return {SymKind::State, std::move(w)}; }
};

// One extracted intertwiner coefficient: the z^p coefficient of Y(e^mu, z).
struct SymOp {
    Weight mu;
    Rat p;
};

// x_color(-depth) on e^lambda: with t = <root, lambda> + 1, depth < t is
// Zero, depth == t moves to e^{lambda+root}, deeper coefficients are outside
// the calculus.
SymOutcome act_factor_sym(const LatticeContext& ctx, const Factor& f, const Weight& lambda);

// x_alpha(0) on a top-graded pure state; the three index-set rewrites.
SymOutcome act_zero_mode_sym(const LatticeContext& ctx, const Weight& alpha,
                             const Weight& lambda);

// One op on a pure state: q = <mu, lambda> against the extracted power p.
SymOutcome apply_sym(const SymOp& op, const Weight& lambda);

// An op pinned between factor depths: applied after every factor of depth
// <= threshold and before deeper ones.
struct OpStep {
    SymOp op;
    int threshold = 0;
};

// Evaluate ops and factors (factors given right-to-left, i.e. ascending
// depth) on a pure state, interleaved by thresholds.
SymOutcome eval_script(const LatticeContext& ctx, const Weight& start,
                       const std::vector<OpStep>& ops, const std::vector<Factor>& factors);

// A label of the form k*omega + hw(level-1 index); integral labels read two
// ways (e^k v_{L0} = e^{k-1} v_{L1}).
struct LabelReading {
    int k = 0;
    int level1_index = 0;
};
std::vector<LabelReading> label_readings(const LatticeContext& ctx, const Weight& lambda);

struct PlanL1 {
    Monomial m1, m2;
    std::vector<OpStep> ops;
    Weight start;
    Weight final_label;
    int k = 0;
    int lambda_prime = 0;  // level-1 index
};

// The first part of the factorization m = m2 * m1: the initial successive
// block (or the depth-1 pair), empty when the monomial starts at depth >= 2.
Monomial first_part_level1(const Monomial& m);

// Operator candidates for the first part, in preference order; the replay
// keeps the first whose downstream checks close.
std::vector<PlanL1> build_operator_level1(const LatticeContext& ctx, const Monomial& m,
                                          const WeightSpec& lambda);

struct ReplayReport {
    std::string weight;
    int degree = 0;
    long checked = 0;
    long kill_failures = 0;
    long unsupported = 0;
    long residual_failures = 0;
    bool pass = true;
    std::vector<std::string> notes;
};

ReplayReport replay_level1(const LatticeContext& ctx, const WeightSpec& lambda, int n);

// Level-2 replay over pair states; ell = 4 only. Sum weights run the
// slotwise operator construction; monomials with an exceptional block are
// routed through the quotient onto Lambda_2; W(Lambda_2) itself runs on the
// solved two-term realization.
ReplayReport replay_level2_D4(const LatticeContext& ctx, const WeightSpec& lambda, int n);

}  // namespace fsb
