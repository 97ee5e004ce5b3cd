#include "fsb/symcalc.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <set>

#include "fsb/enumerate.hpp"
#include "symcalc_internal.hpp"

namespace fsb {

SymOutcome act_factor_sym(const LatticeContext& ctx, const Factor& f, const Weight& lambda) {
    Weight root = ctx.root_of(f.color);
    Rat tq = pairing(root, lambda) + 1;
    if (tq.get_den() != 1) throw std::logic_error("act_factor_sym: non-integral threshold");
    long t = tq.get_num().get_si();
    if (f.depth < t) return SymOutcome::zero();
    if (f.depth == t) return SymOutcome::state(lambda + root);
    return SymOutcome::unsupported();
}

SymOutcome act_zero_mode_sym(const LatticeContext& ctx, const Weight& alpha,
                             const Weight& lambda) {
    Rat t = pairing(alpha, lambda);
    if (t >= 0) return SymOutcome::zero();
    if (t == -1) return SymOutcome::state(lambda + alpha);
    (void)ctx;
    return SymOutcome::unsupported();
}

SymOutcome apply_sym(const SymOp& op, const Weight& lambda) {
    Rat q = pairing(op.mu, lambda);
    if (q == op.p) return SymOutcome::state(lambda + op.mu);
    if (q > op.p) return SymOutcome::zero();
    return SymOutcome::unsupported();
}

namespace {

SymOutcome eval_script_order(const LatticeContext& ctx, const Weight& start,
                             const std::vector<OpStep>& ops, const std::vector<Factor>& factors,
                             int order) {
    // order: 0 = thresholds, 1 = all ops first, 2 = all ops last
    Weight lam = start;
    std::size_t oi = 0;
    auto apply_op = [&](const SymOp& op) -> std::optional<SymOutcome> {
        SymOutcome r = apply_sym(op, lam);
        if (r.kind != SymKind::State) return r;
        lam = r.lambda;
        return std::nullopt;
    };
    if (order == 1)
        for (const OpStep& s : ops)
            if (auto r = apply_op(s.op)) return *r;
    for (const Factor& f : factors) {
        if (order == 0)
            while (oi < ops.size() && ops[oi].threshold < f.depth) {
                if (auto r = apply_op(ops[oi].op)) return *r;
                ++oi;
            }
        SymOutcome r = act_factor_sym(ctx, f, lam);
        if (r.kind != SymKind::State) return r;
        lam = r.lambda;
    }
    if (order != 1)
        while (oi < ops.size()) {
            if (auto r = apply_op(ops[oi].op)) return *r;
            ++oi;
        }
    return SymOutcome::state(lam);
}

}  // namespace

SymOutcome eval_script(const LatticeContext& ctx, const Weight& start,
                       const std::vector<OpStep>& ops, const std::vector<Factor>& factors) {
    SymOutcome r = eval_script_order(ctx, start, ops, factors, 0);
    if (r.kind != SymKind::Unsupported || ops.empty()) return r;
    // The factors commute with every op, so any interleaving evaluates the
    // same vector; another order may stay classifiable.
    for (int order : {1, 2}) {
        SymOutcome alt = eval_script_order(ctx, start, ops, factors, order);
        if (alt.kind != SymKind::Unsupported) return alt;
    }
    return r;
}

namespace symdetail {

LabelInfo classify_label(const LatticeContext& ctx, const Weight& w) {
    LabelInfo info;
    int ell = ctx.ell();
    int c0 = w.doubled(0);
    bool integral_tail = true, half_tail = true;
    for (int i = 1; i < ell; ++i) {
        int c = w.doubled(static_cast<std::size_t>(i));
        if (c != 0) integral_tail = false;
        if (c != 1 && c != -1) half_tail = false;
    }
    if (integral_tail && c0 % 2 == 0 && c0 >= 0) {
        info.valid = true;
        info.spinor = false;
        info.height = c0 / 2;
        return info;
    }
    if (half_tail && c0 % 2 == 1 && c0 >= 1) {
        info.valid = true;
        info.spinor = true;
        info.height = (c0 - 1) / 2;
        info.sigma.push_back(1);
        for (int i = 1; i < ell; ++i)
            if (w.doubled(static_cast<std::size_t>(i)) == 1) info.sigma.push_back(i + 1);
        return info;
    }
    return info;
}

Weight sigma_weight(const LatticeContext& ctx, const std::vector<int>& sigma) {
    SpinorLabel s;
    s.sigma = sigma;
    return ctx.spinor_weight(s);
}

std::vector<int> sigma_complement(const LatticeContext& ctx, const std::vector<int>& sigma) {
    std::vector<int> out{1};
    for (int i = 2; i <= ctx.ell(); ++i)
        if (std::find(sigma.begin(), sigma.end(), i) == sigma.end()) out.push_back(i);
    return out;
}

std::vector<int> full_sigma(const LatticeContext& ctx) {
    std::vector<int> s;
    for (int i = 1; i <= ctx.ell(); ++i) s.push_back(i);
    return s;
}

bool is_hw_sigma(const LatticeContext& ctx, const std::vector<int>& sigma) {
    int ell = ctx.ell();
    if (static_cast<int>(sigma.size()) == ell) return true;
    if (static_cast<int>(sigma.size()) != ell - 1) return false;
    return std::find(sigma.begin(), sigma.end(), ell) == sigma.end();
}

SymOp first_group_op(const LatticeContext& ctx, const Weight& current,
                     const std::vector<int>& sigma) {
    Weight mu = sigma_weight(ctx, sigma);
    return SymOp{mu, pairing(mu, current)};
}

SymOp closer_op(const LatticeContext& ctx, const Weight& current) {
    LabelInfo info = classify_label(ctx, current);
    if (!info.valid || !info.spinor) throw std::logic_error("closer_op: spinor label required");
    Weight mu = sigma_weight(ctx, sigma_complement(ctx, info.sigma));
    return SymOp{mu, pairing(mu, current)};
}

std::vector<SymOp> skip_ops(const LatticeContext& ctx, int h, int target) {
    std::vector<SymOp> out;
    Weight cur = ctx.omega().scaled(h);
    for (int t = h; t < target; ++t) {
        SymOp a = first_group_op(ctx, cur, full_sigma(ctx));
        cur += a.mu;
        out.push_back(a);
        SymOp b = closer_op(ctx, cur);
        cur += b.mu;
        out.push_back(b);
    }
    return out;
}

std::vector<Factor> processing_order(const Monomial& m) {
    std::vector<Factor> fs = m.factors();
    std::reverse(fs.begin(), fs.end());
    return fs;
}

std::optional<Weight> simulate(const LatticeContext& ctx, Weight lam,
                               const std::vector<Factor>& fs) {
    for (const Factor& f : fs) {
        SymOutcome r = act_factor_sym(ctx, f, lam);
        if (r.kind != SymKind::State) return std::nullopt;
        lam = r.lambda;
    }
    return lam;
}

std::vector<std::vector<int>> candidate_sigmas(const LatticeContext& ctx,
                                               const std::vector<Factor>& block) {
    int ell = ctx.ell();
    std::vector<std::vector<int>> out;
    std::set<std::vector<int>> seen;
    auto push = [&](std::vector<int> s) {
        std::sort(s.begin(), s.end());
        if (seen.insert(s).second) out.push_back(std::move(s));
    };
    bool all_positive_low = !block.empty();
    int max_idx = 0;
    std::set<int> pos_indices;
    for (const Factor& f : block) {
        if (f.color.negative || f.color.index > ell - 1) all_positive_low = false;
        if (!f.color.negative) pos_indices.insert(f.color.index);
        max_idx = std::max(max_idx, f.color.index);
    }
    auto minus_pos = [&](std::vector<int> base) {
        std::vector<int> s;
        for (int i : base)
            if (!pos_indices.count(i)) s.push_back(i);
        return s;
    };
    if (all_positive_low) {
        std::vector<int> upto_lm1, upto_l, upto_max;
        for (int i = 1; i <= ell - 1; ++i) upto_lm1.push_back(i);
        for (int i = 1; i <= ell; ++i) upto_l.push_back(i);
        for (int i = 1; i <= max_idx; ++i) upto_max.push_back(i);
        push(minus_pos(upto_lm1));
        push(minus_pos(upto_l));
        push(minus_pos(upto_max));
    } else if (!block.empty() && block.front().color == Color{ell, false}) {
        std::vector<int> s;
        for (int i = 1; i <= ell - 1; ++i) s.push_back(i);
        push(s);
    } else {
        push(full_sigma(ctx));
    }
    for (std::uint32_t mask = 0; mask < (1u << (ell - 1)); ++mask) {
        std::vector<int> s{1};
        for (int b = 0; b < ell - 1; ++b)
            if ((mask >> b) & 1u) s.push_back(b + 2);
        push(std::move(s));
    }
    return out;
}

}  // namespace symdetail

using namespace symdetail;

std::vector<LabelReading> label_readings(const LatticeContext& ctx, const Weight& lambda) {
    std::vector<LabelReading> out;
    LabelInfo info = classify_label(ctx, lambda);
    if (!info.valid) return out;
    if (!info.spinor) {
        out.push_back(LabelReading{info.height, 0});
        if (info.height >= 1) out.push_back(LabelReading{info.height - 1, 1});
        return out;
    }
    if (static_cast<int>(info.sigma.size()) == ctx.ell())
        out.push_back(LabelReading{info.height, ctx.ell()});
    else if (is_hw_sigma(ctx, info.sigma))
        out.push_back(LabelReading{info.height, ctx.ell() - 1});
    return out;
}

Monomial first_part_level1(const Monomial& m) {
    auto fs = processing_order(m);
    std::vector<Factor> part;
    if (fs.empty() || fs.front().depth != 1) return Monomial({}, m.ell());
    part.push_back(fs[0]);
    if (fs.size() >= 2 && fs[1].depth == 1) {
        part.push_back(fs[1]);  // the same-depth pair; nothing sits at depth 2
        return Monomial(std::move(part), m.ell());
    }
    int last = 1;
    for (std::size_t i = 1; i < fs.size(); ++i) {
        if (fs[i].depth == last + 1) {
            part.push_back(fs[i]);
            ++last;
        } else {
            break;
        }
    }
    return Monomial(std::move(part), m.ell());
}

std::vector<PlanL1> build_operator_level1(const LatticeContext& ctx, const Monomial& m,
                                          const WeightSpec& lambda) {
    if (lambda.kind() != WeightSpec::Kind::Level1)
        throw std::invalid_argument("build_operator_level1: level-1 weight required");
    if (!admissible(m, lambda))
        throw std::invalid_argument("build_operator_level1: monomial not admissible");
    int ell = ctx.ell();
    Weight start = ctx.fundamental_weight(lambda.index());
    LabelInfo start_info = classify_label(ctx, start);

    Monomial m1 = first_part_level1(m);
    std::vector<Factor> m1fs = processing_order(m1);
    std::vector<Factor> rest;
    {
        auto fs = processing_order(m);
        rest.assign(fs.begin() + static_cast<long>(m1fs.size()), fs.end());
    }
    Monomial m2 = Monomial(std::move(rest), ell);

    std::vector<PlanL1> plans;
    auto push_plan = [&](const std::vector<OpStep>& ops, const Weight& final_label) {
        for (const LabelReading& r : label_readings(ctx, final_label)) {
            PlanL1 p;
            p.m1 = m1;
            p.m2 = m2;
            p.ops = ops;
            p.start = start;
            p.final_label = final_label;
            p.k = r.k;
            p.lambda_prime = r.level1_index;
            plans.push_back(std::move(p));
        }
    };

    if (m1.empty()) {
        if (m.empty()) {
            push_plan({}, start);
            return plans;
        }
        int p = m.min_depth();
        std::vector<OpStep> ops;
        Weight cur = start;
        if (start_info.spinor) {
            SymOp c = closer_op(ctx, cur);
            cur += c.mu;
            ops.push_back(OpStep{c, 0});
        }
        int h = classify_label(ctx, cur).height;
        for (const SymOp& o : skip_ops(ctx, h, p - 1)) {
            cur += o.mu;
            ops.push_back(OpStep{o, 0});
        }
        for (const LabelReading& r : label_readings(ctx, cur))
            if (r.k == p - 1) {
                PlanL1 plan;
                plan.m1 = m1;
                plan.m2 = m2;
                plan.ops = ops;
                plan.start = start;
                plan.final_label = cur;
                plan.k = r.k;
                plan.lambda_prime = r.level1_index;
                plans.push_back(std::move(plan));
            }
        return plans;
    }

    int block_top = m1fs.back().depth;
    auto finish = [&](const Weight& end, const std::vector<OpStep>& ops) {
        LabelInfo info = classify_label(ctx, end);
        if (!info.valid) return;
        if (info.spinor) {
            if (is_hw_sigma(ctx, info.sigma)) push_plan(ops, end);
            SymOp c = closer_op(ctx, end);
            auto ops2 = ops;
            ops2.push_back(OpStep{c, block_top});
            push_plan(ops2, end + c.mu);
        } else {
            push_plan(ops, end);
        }
    };

    if (start_info.spinor) {
        if (auto end = simulate(ctx, start, m1fs)) finish(*end, {});
        return plans;
    }

    // Integral start: the identity operator first (the depth-1 pair case),
    // then tuned first-group openers.
    if (auto end = simulate(ctx, start, m1fs)) finish(*end, {});
    for (const auto& sigma : candidate_sigmas(ctx, m1fs)) {
        SymOp open = first_group_op(ctx, start, sigma);
        if (auto end = simulate(ctx, start + open.mu, m1fs))
            finish(*end, {OpStep{open, 0}});
    }
    return plans;
}

ReplayReport replay_level1(const LatticeContext& ctx, const WeightSpec& lambda, int n) {
    ReplayReport rep;
    rep.weight = lambda.str();
    rep.degree = n;
    std::vector<Monomial> adm = enumerate_admissible(ctx, lambda, n);
    std::vector<Monomial> firsts;
    firsts.reserve(adm.size());
    for (const Monomial& m : adm) firsts.push_back(first_part_level1(m));

    for (std::size_t i = 0; i < adm.size(); ++i) {
        const Monomial& m = adm[i];
        ++rep.checked;
        auto plans = build_operator_level1(ctx, m, lambda);
        long best_fail = LONG_MAX;
        long best_kill = 0, best_unsup = 0, best_resid = 0;
        bool closed = false;
        for (const PlanL1& plan : plans) {
            long kill = 0, unsup = 0, resid = 0;
            SymOutcome own = eval_script(ctx, plan.start, plan.ops, processing_order(plan.m1));
            if (own.kind != SymKind::State || !(own.lambda == plan.final_label)) ++resid;
            auto shifted = unshift(plan.m2, plan.k);
            if (!shifted || !admissible(*shifted, WeightSpec::level1(ctx.ell(), plan.lambda_prime)))
                ++resid;
            if (resid == 0) {
                for (std::size_t jx = 0; jx < adm.size(); ++jx) {
                    if (jx == i) continue;
                    // the induction only needs kills for greater monomials;
                    // smaller ones have vanishing coefficients already
                    if (compare(adm[jx], m) != Ordering::GT) continue;
                    std::vector<Factor> target;
                    if (!firsts[jx].empty()) {
                        if (compare(firsts[jx], plan.m1) != Ordering::GT) continue;
                        target = processing_order(firsts[jx]);
                    } else if (plan.m1.empty()) {
                        if (adm[jx].min_depth() >= m.min_depth()) continue;
                        target = processing_order(adm[jx]);
                    } else {
                        continue;
                    }
                    SymOutcome out = eval_script(ctx, plan.start, plan.ops, target);
                    if (out.kind == SymKind::State) ++kill;
                    else if (out.kind == SymKind::Unsupported) ++unsup;
                }
            }
            if (kill + unsup + resid == 0) {
                closed = true;
                break;
            }
            if (kill + unsup + resid < best_fail) {
                best_fail = kill + unsup + resid;
                best_kill = kill;
                best_unsup = unsup;
                best_resid = resid;
            }
        }
        if (!closed) {
            rep.kill_failures += best_kill;
            rep.unsupported += best_unsup;
            rep.residual_failures += best_resid;
            rep.notes.push_back("no operator closed for " + m.str());
        }
    }
    rep.pass = rep.kill_failures == 0 && rep.unsupported == 0 && rep.residual_failures == 0;
    return rep;
}

}  // namespace fsb
