#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <optional>
#include <set>

#include "fsb/enumerate.hpp"
#include "fsb/symcalc.hpp"
#include "fsb/tensor.hpp"
#include "symcalc_internal.hpp"

namespace fsb {

namespace {

using namespace symdetail;

struct PairLabel {
    Weight a, b;
    friend bool operator==(const PairLabel&, const PairLabel&) = default;
};

struct PlanL2 {
    Monomial m1, m2;
    std::vector<PairLabel> support;
    std::vector<OpStep> ops1, ops2;
    bool quotient = false;
    int quotient_j = 2;
    bool identity_case = false;
    int k = 0;
    WeightSpec lambda_prime;
    explicit PlanL2(int ell) : m1({}, ell), m2({}, ell), lambda_prime(WeightSpec::level1(ell, 0)) {}
};

// ---------- partitioning ----------

struct Partition {
    std::vector<Factor> slot1, slot2;  // processing order (ascending depth)
    int idx1 = 0, idx2 = 0;
};

bool seeded_split_rec(const LatticeContext& ctx, const std::vector<Factor>& fs, std::size_t idx,
                      int prev, std::vector<Factor> part[2]) {
    if (idx == fs.size()) return true;
    const Factor& f = fs[idx];
    auto fits = [&](int side) {
        return part[side].empty() || dc1_pair_ext(f, part[side].back(), ctx.ell());
    };
    int target = 1 - prev;
    for (int side : {target, prev}) {
        if (!fits(side)) continue;
        part[side].push_back(f);
        if (seeded_split_rec(ctx, fs, idx + 1, side == target ? target : prev, part)) return true;
        part[side].pop_back();
    }
    return false;
}

std::optional<std::pair<std::vector<Factor>, std::vector<Factor>>> greedy_with_seeds(
    const LatticeContext& ctx, const std::vector<Factor>& real_desc,
    std::vector<Factor> seed1, std::vector<Factor> seed2) {
    std::vector<Factor> part[2] = {std::move(seed1), std::move(seed2)};
    if (!seeded_split_rec(ctx, real_desc, 0, 1, part)) return std::nullopt;
    return std::make_pair(part[0], part[1]);
}

std::vector<Factor> imaginary_factors_desc(const LatticeContext& ctx, int level1_index) {
    Monomial im = attach_imaginary(WeightSpec::level1(ctx.ell(), level1_index));
    return processing_order(im);
}

std::vector<Factor> strip_depth0(const std::vector<Factor>& fs) {
    std::vector<Factor> out;
    for (const Factor& f : fs)
        if (f.depth > 0) out.push_back(f);
    return out;
}

bool part_ok_level1(const LatticeContext& ctx, const std::vector<Factor>& part, int idx) {
    Monomial m(part, ctx.ell());
    return dc_level1(m) && ic_level1(m, WeightSpec::level1(ctx.ell(), idx));
}

std::optional<Partition> partition_sum(const LatticeContext& ctx, const std::vector<Factor>& fs,
                                       int ia, int ib) {
    for (auto [x, y] : {std::pair{ia, ib}, std::pair{ib, ia}}) {
        auto sp = greedy_with_seeds(ctx, fs, imaginary_factors_desc(ctx, x),
                                    imaginary_factors_desc(ctx, y));
        if (!sp) continue;
        auto p1 = strip_depth0(sp->first), p2 = strip_depth0(sp->second);
        if (part_ok_level1(ctx, p1, x) && part_ok_level1(ctx, p2, y))
            return Partition{p1, p2, x, y};
    }
    auto n = fs.size();
    if (n > 16) return std::nullopt;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<Factor> p1, p2;
        for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1u ? p2 : p1).push_back(fs[i]);
        for (auto [x, y] : {std::pair{ia, ib}, std::pair{ib, ia}})
            if (part_ok_level1(ctx, p1, x) && part_ok_level1(ctx, p2, y))
                return Partition{p1, p2, x, y};
    }
    return std::nullopt;
}

std::optional<std::pair<std::vector<Factor>, std::vector<Factor>>> partition_dc(
    const LatticeContext& ctx, const std::vector<Factor>& fs) {
    auto sp = greedy_with_seeds(ctx, fs, {}, {});
    if (sp && dc_level1(Monomial(sp->first, ctx.ell())) &&
        dc_level1(Monomial(sp->second, ctx.ell())))
        return sp;
    auto n = fs.size();
    if (n > 16) return std::nullopt;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<Factor> p1, p2;
        for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1u ? p2 : p1).push_back(fs[i]);
        if (dc_level1(Monomial(p1, ctx.ell())) && dc_level1(Monomial(p2, ctx.ell())))
            return std::make_pair(p1, p2);
    }
    return std::nullopt;
}

struct ExceptionalSite {
    int depth = 0;
    int index = 0;
};

// The lowest same-depth opposite pair with index 3..ell-1 adjacent to a
// same-color factor one step away; these block the every-second split.
std::optional<ExceptionalSite> find_exceptional(const LatticeContext& ctx, const Monomial& m) {
    int ell = ctx.ell();
    auto has = [&](const Color& c, int d) {
        for (const Factor& f : m.factors())
            if (f.color == c && f.depth == d) return true;
        return false;
    };
    for (int d = 1; d <= m.max_depth(); ++d)
        for (int idx = 3; idx <= ell - 1; ++idx) {
            Color pos{idx, false}, neg{idx, true};
            if (!has(pos, d) || !has(neg, d)) continue;
            if (has(pos, d + 1) || has(neg, d + 1) || has(pos, d - 1) || has(neg, d - 1))
                return ExceptionalSite{d, idx};
        }
    return std::nullopt;
}

// ---------- schedule: canonical consumption bookkeeping ----------

struct SlotStart {
    Weight label;
    int height = 0;
    bool spinor = false;
};

SlotStart slot_start_level1(const LatticeContext& ctx, int idx) {
    Weight w = ctx.fundamental_weight(idx);
    auto info = classify_label(ctx, w);
    return SlotStart{w, info.height, info.spinor};
}

struct Action {
    enum Type { Block, SkipTo, FinishSkip } type = Block;
    int slot = 0;
    std::size_t from = 0, len = 0;  // Block
    int target = 0;                 // SkipTo / FinishSkip
    bool pair = false;
};

struct Schedule {
    std::vector<Action> actions;
    std::size_t consumed1 = 0, consumed2 = 0;
    std::vector<int> stop_candidates;  // ascending
    bool ok = false;
};

struct SimSlot {
    const std::vector<Factor>* fs = nullptr;
    std::size_t pos = 0;
    int h = 0;
    bool spinor = false;
};

std::pair<int, int> reach_range(const SimSlot& s) {
    if (s.spinor) return {s.h, s.h + 1};
    return {std::max(0, s.h - 1), s.h};
}

std::pair<std::size_t, bool> block_shape(const SimSlot& s) {
    const auto& fs = *s.fs;
    if (s.pos >= fs.size()) return {0, false};
    int d = fs[s.pos].depth;
    if (d != s.h + 1) return {0, false};
    if (s.pos + 1 < fs.size() && fs[s.pos + 1].depth == d) return {2, true};
    std::size_t len = 1;
    int last = d;
    while (s.pos + len < fs.size() && fs[s.pos + len].depth == last + 1) {
        ++len;
        ++last;
    }
    return {len, false};
}

void apply_block(SimSlot& s, std::size_t len, bool pair) {
    if (pair) {
        s.h += 2;  // the gamma_~2 gamma_2 pair adds 2*omega; family unchanged
    } else {
        s.h = (*s.fs)[s.pos].depth + static_cast<int>(len) - 1;
        s.spinor = true;
    }
    s.pos += len;
}

Schedule drive_schedule(const LatticeContext& ctx, const std::vector<Factor>& f1,
                        const std::vector<Factor>& f2, SlotStart s1, SlotStart s2) {
    (void)ctx;
    Schedule sched;
    SimSlot slots[2] = {SimSlot{&f1, 0, s1.height, s1.spinor},
                        SimSlot{&f2, 0, s2.height, s2.spinor}};
    // obligatory first blocks: monomial parts ending in a depth-1 factor
    for (int i = 0; i < 2; ++i) {
        if (slots[i].h != 0) continue;
        auto [len, pair] = block_shape(slots[i]);
        if (len && (*slots[i].fs)[slots[i].pos].depth == 1) {
            sched.actions.push_back(Action{Action::Block, i, slots[i].pos, len, 0, pair});
            apply_block(slots[i], len, pair);
        }
    }
    for (int guard = 0; guard < 64; ++guard) {
        auto [lo1, hi1] = reach_range(slots[0]);
        auto [lo2, hi2] = reach_range(slots[1]);
        int lo = std::max(lo1, lo2), hi = std::min(hi1, hi2);
        if (lo <= hi) {
            for (int n = lo; n <= hi; ++n) sched.stop_candidates.push_back(n);
            sched.consumed1 = slots[0].pos;
            sched.consumed2 = slots[1].pos;
            sched.ok = true;
            return sched;
        }
        int lag = hi1 < hi2 ? 0 : 1;
        int other_lo = lag == 0 ? lo2 : lo1;
        int other_hi = lag == 0 ? hi2 : hi1;
        SimSlot& s = slots[lag];
        const auto& fs = *s.fs;
        int next_cap = s.pos < fs.size() ? fs[s.pos].depth - 1 : INT_MAX;
        int elo = std::max(other_lo, s.h), ehi = std::min(other_hi, next_cap);
        if (elo <= ehi) {
            // equalize by a skip; the loop terminates at the next check
            sched.actions.push_back(Action{Action::FinishSkip, lag, 0, 0, elo, false});
            s.h = elo;
            s.spinor = false;
            continue;
        }
        if (s.pos >= fs.size()) return sched;  // cannot reach the other side
        int d = fs[s.pos].depth;
        if (d - 1 > s.h || s.spinor) {
            sched.actions.push_back(Action{Action::SkipTo, lag, 0, 0, d - 1, false});
            s.h = d - 1;
            s.spinor = false;
        }
        auto [len, pair] = block_shape(s);
        if (!len) return sched;  // next factor unreachable
        sched.actions.push_back(Action{Action::Block, lag, s.pos, len, 0, pair});
        apply_block(s, len, pair);
    }
    return sched;
}

// ---------- op instantiation along a schedule ----------

struct BuildSlot {
    Weight label;
    std::vector<OpStep> ops;
};

std::vector<BuildSlot> run_action(const LatticeContext& ctx, const BuildSlot& in,
                                  const Action& act, const std::vector<Factor>& fs) {
    std::vector<BuildSlot> out;
    LabelInfo info = classify_label(ctx, in.label);
    if (!info.valid) return out;
    if (act.type == Action::SkipTo || act.type == Action::FinishSkip) {
        BuildSlot s = in;
        int closer_threshold = act.type == Action::SkipTo ? info.height : INT_MAX;
        int skip_threshold = act.type == Action::SkipTo ? act.target : INT_MAX;
        if (info.spinor) {
            SymOp c = closer_op(ctx, s.label);
            s.label += c.mu;
            s.ops.push_back(OpStep{c, closer_threshold});
            info = classify_label(ctx, s.label);
        }
        if (!info.valid || info.height > act.target) return out;
        for (const SymOp& o : skip_ops(ctx, info.height, act.target)) {
            s.label += o.mu;
            s.ops.push_back(OpStep{o, skip_threshold});
        }
        out.push_back(std::move(s));
        return out;
    }
    std::vector<Factor> block(fs.begin() + static_cast<long>(act.from),
                              fs.begin() + static_cast<long>(act.from + act.len));
    int d = block.front().depth;
    auto try_from = [&](const Weight& lab, std::vector<OpStep> ops) {
        if (auto end = simulate(ctx, lab, block)) out.push_back(BuildSlot{*end, std::move(ops)});
    };
    if (info.spinor) {
        try_from(in.label, in.ops);
    } else {
        try_from(in.label, in.ops);  // identity opener (the depth-1 pair case)
        for (const auto& sigma : candidate_sigmas(ctx, block)) {
            SymOp open = first_group_op(ctx, in.label, sigma);
            auto ops = in.ops;
            ops.push_back(OpStep{open, d - 1});
            try_from(in.label + open.mu, std::move(ops));
        }
    }
    return out;
}

struct FinishOption {
    BuildSlot slot;
    int index = 0;  // level-1 index of the reading at height n
};

std::vector<FinishOption> finish_slot(const LatticeContext& ctx, const BuildSlot& s, int n,
                                      int last_depth) {
    std::vector<FinishOption> out;
    LabelInfo info = classify_label(ctx, s.label);
    if (!info.valid) return out;
    if (!info.spinor) {
        if (info.height == n) out.push_back(FinishOption{s, 0});
        else if (info.height == n + 1) out.push_back(FinishOption{s, 1});
        return out;
    }
    if (info.height == n && is_hw_sigma(ctx, info.sigma))
        out.push_back(FinishOption{
            s, static_cast<int>(info.sigma.size()) == ctx.ell() ? ctx.ell() : ctx.ell() - 1});
    if (info.height == n || info.height + 1 == n) {
        BuildSlot t = s;
        SymOp c = closer_op(ctx, t.label);
        t.label += c.mu;
        t.ops.push_back(OpStep{c, last_depth});
        out.push_back(FinishOption{std::move(t), info.height + 1 == n ? 0 : 1});
    }
    return out;
}

// ---------- pair evaluation ----------

struct PairEval {
    long unsupported = 0;
    std::vector<PairLabel> states;
};

void splits_rec(
    const std::vector<std::pair<Factor, int>>& groups, std::size_t gi, std::vector<Factor>& cur1,
    std::vector<Factor>& cur2,
    const std::function<void(const std::vector<Factor>&, const std::vector<Factor>&)>& out) {
    if (gi == groups.size()) {
        out(cur1, cur2);
        return;
    }
    auto [f, cnt] = groups[gi];
    for (int take = 0; take <= cnt; ++take) {
        std::size_t a1 = cur1.size(), a2 = cur2.size();
        for (int x = 0; x < take; ++x) cur1.push_back(f);
        for (int x = take; x < cnt; ++x) cur2.push_back(f);
        splits_rec(groups, gi + 1, cur1, cur2, out);
        cur1.resize(a1);
        cur2.resize(a2);
    }
}

// po_uvjet_23: a depth-1 pair x_tau(-1) x_delta(-1) with tau != ~delta that
// violates the order conditions annihilates v_{Lambda_j}; certified exactly
// by check_ic_identities.
bool pair_annihilates_fund(const LatticeContext& ctx, const Color& lo, const Color& hi, int j) {
    if (lo == opposite(hi)) return false;
    Color gp{j + 1, false}, gn{j + 1, true};
    int ell = ctx.ell();
    bool cond = !color_less(gp, hi, ell) &&  // delta <= gamma_{j+1}
                !color_less(gn, lo, ell);    // tau <= gamma_~{j+1}
    if (cond && lo == gn && !(hi == gp)) cond = false;
    return !cond;
}

// Kill targets routed through the quotient act on v_{Lambda_j} itself; a
// target whose factors reach below the base height, or whose depth-1 part
// contains an annihilating pair, is certified dead without expansion.
bool certified_killed_on_fund(const LatticeContext& ctx, const std::vector<Factor>& target,
                              int base_height, int j) {
    std::vector<Factor> shifted;
    for (const Factor& f : target) {
        if (f.depth <= base_height) return true;  // below the reachable range
        shifted.push_back(Factor{f.color, f.depth - base_height});
    }
    std::vector<Color> ones;
    for (const Factor& f : shifted)
        if (f.depth == 1) ones.push_back(f.color);
    int ell = ctx.ell();
    for (std::size_t a = 0; a < ones.size(); ++a)
        for (std::size_t b = 0; b < ones.size(); ++b) {
            if (a == b) continue;
            const Color& lo = ones[a];
            const Color& hi = ones[b];
            if (color_less(hi, lo, ell)) continue;  // want lo <= hi
            if (pair_annihilates_fund(ctx, lo, hi, j)) return true;
        }
    return false;
}

bool is_partner_pair(const LatticeContext& ctx, const PairLabel& p, int j, int* height_out) {
    LabelInfo ia = classify_label(ctx, p.a), ib = classify_label(ctx, p.b);
    if (!ia.valid || !ib.valid || !ia.spinor || !ib.spinor || ia.height != ib.height) return false;
    std::vector<int> inter, uni;
    std::set_intersection(ia.sigma.begin(), ia.sigma.end(), ib.sigma.begin(), ib.sigma.end(),
                          std::back_inserter(inter));
    std::set_union(ia.sigma.begin(), ia.sigma.end(), ib.sigma.begin(), ib.sigma.end(),
                   std::back_inserter(uni));
    std::vector<int> want_inter;
    for (int i = 1; i <= j; ++i) want_inter.push_back(i);
    if (inter != want_inter || uni != full_sigma(ctx)) return false;
    if (height_out) *height_out = ia.height;
    return true;
}

PairEval eval_pair(const LatticeContext& ctx, const PlanL2& plan,
                   const std::vector<Factor>& factors) {
    PairEval ev;
    std::vector<std::pair<Factor, int>> groups;
    for (const Factor& f : factors) {
        if (!groups.empty() && groups.back().first == f) ++groups.back().second;
        else groups.emplace_back(f, 1);
    }
    std::vector<Factor> c1, c2;
    for (const PairLabel& s : plan.support) {
        splits_rec(groups, 0, c1, c2,
                   [&](const std::vector<Factor>& f1, const std::vector<Factor>& f2) {
                       SymOutcome r1 = eval_script(ctx, s.a, plan.ops1, f1);
                       if (r1.kind == SymKind::Zero) return;
                       SymOutcome r2 = eval_script(ctx, s.b, plan.ops2, f2);
                       if (r2.kind == SymKind::Zero) return;
                       if (r1.kind == SymKind::Unsupported || r2.kind == SymKind::Unsupported) {
                           ++ev.unsupported;
                           return;
                       }
                       if (!plan.quotient) {
                           ev.states.push_back(PairLabel{r1.lambda, r2.lambda});
                           return;
                       }
                       LabelInfo ia = classify_label(ctx, r1.lambda);
                       LabelInfo ib = classify_label(ctx, r2.lambda);
                       if (!ia.valid || !ib.valid || !ia.spinor || !ib.spinor ||
                           ia.height != ib.height) {
                           ++ev.unsupported;  // quotient image undetermined
                           return;
                       }
                       if (ia.sigma == ib.sigma) return;  // quotient kills equal pairs
                       if (is_partner_pair(ctx, PairLabel{r1.lambda, r2.lambda}, plan.quotient_j,
                                           nullptr))
                           ev.states.push_back(PairLabel{r1.lambda, r2.lambda});
                       else
                           ++ev.unsupported;
                   });
    }
    return ev;
}

// ---------- factorization + plans ----------

struct Factorization {
    enum Kind { Identity2, General, CaseB, Skip, Broken } kind = General;
    Monomial m1, m2;
    Partition part;
    std::vector<Factor> pre1, pre2;  // Lambda_2: partition of the first part
    Schedule sched;
    int exc_depth = 0;
    explicit Factorization(int ell) : m1({}, ell), m2({}, ell) {}
};

std::vector<PairLabel> fund2_support(const LatticeContext& ctx, std::pair<int, int> pair) {
    std::vector<PairLabel> out;
    for (const auto& [s1, s2] : hw_support(ctx, 2, pair))
        out.push_back(PairLabel{ctx.spinor_weight(s1), ctx.spinor_weight(s2)});
    return out;
}

struct ExcSplit {
    std::vector<Factor> before, pair, after;
};

ExcSplit exc_split(const Monomial& m, const ExceptionalSite& site) {
    ExcSplit out;
    for (const Factor& f : m.factors()) {
        std::vector<Factor>* dst;
        if (f.depth < site.depth) dst = &out.before;
        else if (f.depth == site.depth && f.color.index == site.index) dst = &out.pair;
        else dst = &out.after;
        dst->push_back(f);
    }
    std::reverse(out.before.begin(), out.before.end());
    std::reverse(out.pair.begin(), out.pair.end());
    std::reverse(out.after.begin(), out.after.end());
    return out;
}

std::vector<Factor> multiset_minus(const std::vector<Factor>& all,
                                   const std::vector<Factor>& taken) {
    std::vector<Factor> pool = taken, rest;
    for (const Factor& f : all) {
        auto it = std::find(pool.begin(), pool.end(), f);
        if (it != pool.end()) pool.erase(it);
        else rest.push_back(f);
    }
    return rest;
}

Factorization factorize(const LatticeContext& ctx, const Monomial& m, const WeightSpec& lambda) {
    int ell = ctx.ell();
    Factorization fz(ell);
    auto fs = processing_order(m);

    if (lambda.kind() == WeightSpec::Kind::Fundamental) {
        std::vector<Factor> ones;
        for (const Factor& f : fs)
            if (f.depth == 1) ones.push_back(f);
        if (ones.size() == 2 && ones[0].color == Color{lambda.index() + 1, false} &&
            ones[1].color == Color{lambda.index() + 1, true}) {
            fz.kind = Factorization::Identity2;
            fz.m1 = Monomial({ones[0], ones[1]}, ell);
            fz.m2 = Monomial(multiset_minus(fs, {ones[0], ones[1]}), ell);
            return fz;
        }
        if (m.empty() || m.min_depth() >= 2) {
            fz.kind = Factorization::Skip;
            fz.m2 = m;
            return fz;
        }
        // first part: the longest right part admitting an every-second
        // partition; an exceptional block caps it
        std::vector<Factor> pi1 = fs;
        auto dc = partition_dc(ctx, pi1);
        if (!dc) {
            if (auto site = find_exceptional(ctx, m)) {
                pi1 = exc_split(m, *site).before;
                dc = partition_dc(ctx, pi1);
            }
        }
        if (!dc) {
            fz.kind = Factorization::Broken;
            fz.m2 = m;
            return fz;
        }
        fz.kind = Factorization::General;
        fz.pre1 = dc->first;
        fz.pre2 = dc->second;
        SlotStart s{ctx.zero(), 0, true};
        fz.sched = drive_schedule(ctx, fz.pre1, fz.pre2, s, s);
        if (!fz.sched.ok) {
            fz.kind = Factorization::Broken;
            fz.m2 = m;
            return fz;
        }
        std::vector<Factor> consumed(fz.pre1.begin(),
                                     fz.pre1.begin() + static_cast<long>(fz.sched.consumed1));
        consumed.insert(consumed.end(), fz.pre2.begin(),
                        fz.pre2.begin() + static_cast<long>(fz.sched.consumed2));
        fz.m1 = Monomial(consumed, ell);
        fz.m2 = Monomial(multiset_minus(fs, consumed), ell);
        return fz;
    }

    auto [ia, ib] = lambda.sum_indices();
    if (m.empty() || m.min_depth() >= 2) {
        fz.kind = Factorization::Skip;
        fz.m2 = m;
        return fz;
    }
    auto part = partition_sum(ctx, fs, ia, ib);
    if (!part) {
        // no two-subarray realization: route through the quotient onto
        // Lambda_2 at the first exceptional site
        if (auto site = find_exceptional(ctx, m)) {
            auto sp = exc_split(m, *site);
            auto pre = partition_sum(ctx, sp.before, ia, ib);
            if (pre) {
                fz.kind = Factorization::CaseB;
                fz.exc_depth = site->depth;
                fz.m1 = Monomial(sp.before, ell);
                std::vector<Factor> rest = sp.pair;
                rest.insert(rest.end(), sp.after.begin(), sp.after.end());
                fz.m2 = Monomial(rest, ell);
                fz.part = *pre;
                return fz;
            }
        }
        fz.kind = Factorization::Broken;
        fz.m2 = m;
        return fz;
    }
    fz.kind = Factorization::General;
    fz.part = *part;
    fz.sched = drive_schedule(ctx, part->slot1, part->slot2, slot_start_level1(ctx, part->idx1),
                              slot_start_level1(ctx, part->idx2));
    if (!fz.sched.ok) {
        fz.kind = Factorization::Broken;
        fz.m2 = m;
        return fz;
    }
    std::vector<Factor> consumed(part->slot1.begin(),
                                 part->slot1.begin() + static_cast<long>(fz.sched.consumed1));
    consumed.insert(consumed.end(), part->slot2.begin(),
                    part->slot2.begin() + static_cast<long>(fz.sched.consumed2));
    fz.m1 = Monomial(consumed, ell);
    fz.m2 = Monomial(multiset_minus(fs, consumed), ell);
    return fz;
}

void plans_general(const LatticeContext& ctx, const Factorization& fz,
                   const std::vector<PairLabel>& support, int support_choice,
                   const std::vector<Factor>& f1, const std::vector<Factor>& f2,
                   int max_height, std::vector<PlanL2>& out) {
    int ell = ctx.ell();
    struct State {
        BuildSlot s1, s2;
    };
    const PairLabel& start = support[static_cast<std::size_t>(support_choice)];
    std::vector<State> frontier{State{BuildSlot{start.a, {}}, BuildSlot{start.b, {}}}};
    for (const Action& act : fz.sched.actions) {
        std::vector<State> next;
        for (const State& st : frontier) {
            const BuildSlot& cur = act.slot == 0 ? st.s1 : st.s2;
            const auto& fsl = act.slot == 0 ? f1 : f2;
            for (BuildSlot& nb : run_action(ctx, cur, act, fsl)) {
                State ns = st;
                (act.slot == 0 ? ns.s1 : ns.s2) = std::move(nb);
                next.push_back(std::move(ns));
            }
        }
        frontier = std::move(next);
        if (frontier.size() > 256) frontier.resize(256);
    }
    int last1 = fz.sched.consumed1 ? f1[fz.sched.consumed1 - 1].depth : 0;
    int last2 = fz.sched.consumed2 ? f2[fz.sched.consumed2 - 1].depth : 0;
    // equalization stops; a deeper final skip is also admitted, since the
    // skip height may be raised to kill deeper monomials
    int cap = fz.m2.empty() ? max_height : fz.m2.min_depth() - 1;
    for (const State& st : frontier)
        for (int n : fz.sched.stop_candidates) {
            for (const FinishOption& fo1 : finish_slot(ctx, st.s1, n, last1))
                for (const FinishOption& fo2 : finish_slot(ctx, st.s2, n, last2)) {
                    PlanL2 plan(ell);
                    plan.m1 = fz.m1;
                    plan.m2 = fz.m2;
                    plan.support = support;
                    if (support_choice != 0)
                        std::swap(plan.support[0],
                                  plan.support[static_cast<std::size_t>(support_choice)]);
                    plan.ops1 = fo1.slot.ops;
                    plan.ops2 = fo2.slot.ops;
                    plan.k = n;
                    plan.lambda_prime = WeightSpec::sum(ell, fo1.index, fo2.index);
                    out.push_back(std::move(plan));
                    if (out.size() > 512) return;
                }
            for (int deeper = n + 1; deeper <= cap; ++deeper) {
                BuildSlot a = st.s1, b = st.s2;
                bool ok = true;
                for (auto [slot, last] : {std::pair{&a, last1}, std::pair{&b, last2}}) {
                    LabelInfo info = classify_label(ctx, slot->label);
                    if (!info.valid) { ok = false; break; }
                    if (info.spinor) {
                        SymOp c = closer_op(ctx, slot->label);
                        slot->label += c.mu;
                        slot->ops.push_back(OpStep{c, last});
                        info = classify_label(ctx, slot->label);
                    }
                    if (info.height > deeper) { ok = false; break; }
                    for (const SymOp& o : skip_ops(ctx, info.height, deeper)) {
                        slot->label += o.mu;
                        slot->ops.push_back(OpStep{o, INT_MAX});
                    }
                }
                if (!ok) continue;
                PlanL2 plan(ell);
                plan.m1 = fz.m1;
                plan.m2 = fz.m2;
                plan.support = support;
                if (support_choice != 0)
                    std::swap(plan.support[0],
                              plan.support[static_cast<std::size_t>(support_choice)]);
                plan.ops1 = a.ops;
                plan.ops2 = b.ops;
                plan.k = deeper;
                plan.lambda_prime = WeightSpec::sum(ell, 0, 0);
                out.push_back(std::move(plan));
                if (out.size() > 512) return;
            }
        }
}

void plans_case_b(const LatticeContext& ctx, const Factorization& fz, std::vector<PlanL2>& out) {
    int ell = ctx.ell();
    int H = fz.exc_depth - 1;
    const auto& f1 = fz.part.slot1;
    const auto& f2 = fz.part.slot2;
    SlotStart st1 = slot_start_level1(ctx, fz.part.idx1);
    SlotStart st2 = slot_start_level1(ctx, fz.part.idx2);

    auto consume_all = [&](const std::vector<Factor>& fsl, const SlotStart& st) {
        std::vector<BuildSlot> frontier{BuildSlot{st.label, {}}};
        SimSlot sim{&fsl, 0, st.height, st.spinor};
        while (sim.pos < fsl.size()) {
            int d = fsl[sim.pos].depth;
            std::vector<Action> acts;
            if (d - 1 > sim.h) {
                acts.push_back(Action{Action::SkipTo, 0, 0, 0, d - 1, false});
                sim.h = d - 1;
                sim.spinor = false;
            }
            auto [len, pair] = block_shape(sim);
            if (!len) return std::vector<BuildSlot>{};
            acts.push_back(Action{Action::Block, 0, sim.pos, len, 0, pair});
            apply_block(sim, len, pair);
            for (const Action& act : acts) {
                std::vector<BuildSlot> next;
                for (const BuildSlot& b : frontier)
                    for (BuildSlot& nb : run_action(ctx, b, act, fsl)) next.push_back(std::move(nb));
                frontier = std::move(next);
                if (frontier.size() > 64) frontier.resize(64);
            }
        }
        return frontier;
    };

    auto steer = [&](const BuildSlot& b, int last_depth) {
        std::vector<BuildSlot> outs;
        LabelInfo info = classify_label(ctx, b.label);
        if (!info.valid) return outs;
        if (info.spinor && info.height == H) outs.push_back(b);
        BuildSlot s = b;
        LabelInfo cur = info;
        if (cur.spinor) {
            SymOp c = closer_op(ctx, s.label);
            s.label += c.mu;
            s.ops.push_back(OpStep{c, last_depth});
            cur = classify_label(ctx, s.label);
        }
        if (cur.valid && !cur.spinor && cur.height <= H) {
            for (const SymOp& o : skip_ops(ctx, cur.height, H)) {
                s.label += o.mu;
                s.ops.push_back(OpStep{o, INT_MAX});
            }
            for (std::uint32_t mask = 0; mask < (1u << (ell - 2)); ++mask) {
                std::vector<int> sigma{1, 2};
                for (int bit = 0; bit < ell - 2; ++bit)
                    if ((mask >> bit) & 1u) sigma.push_back(bit + 3);
                BuildSlot t = s;
                SymOp open = first_group_op(ctx, t.label, sigma);
                t.label += open.mu;
                t.ops.push_back(OpStep{open, INT_MAX});
                outs.push_back(std::move(t));
            }
        }
        return outs;
    };

    int last1 = f1.empty() ? 0 : f1.back().depth;
    int last2 = f2.empty() ? 0 : f2.back().depth;
    for (const BuildSlot& b1 : consume_all(f1, st1))
        for (const BuildSlot& s1 : steer(b1, last1))
            for (const BuildSlot& b2 : consume_all(f2, st2))
                for (const BuildSlot& s2 : steer(b2, last2)) {
                    if (!is_partner_pair(ctx, PairLabel{s1.label, s2.label}, 2, nullptr)) continue;
                    PlanL2 plan(ell);
                    plan.m1 = fz.m1;
                    plan.m2 = fz.m2;
                    plan.support = {PairLabel{st1.label, st2.label}};
                    plan.ops1 = s1.ops;
                    plan.ops2 = s2.ops;
                    plan.quotient = true;
                    plan.k = H;
                    plan.lambda_prime = WeightSpec::fundamental(ell, 2);
                    out.push_back(std::move(plan));
                    if (out.size() > 128) return;
                }
}

std::vector<PlanL2> build_plans_level2(const LatticeContext& ctx, const Monomial& m,
                                       const WeightSpec& lambda, const Factorization& fz,
                                       int max_height) {
    int ell = ctx.ell();
    std::vector<PlanL2> out;
    if (fz.kind == Factorization::Broken) return out;

    if (lambda.kind() == WeightSpec::Kind::Fundamental) {
        auto support44 = fund2_support(ctx, {ell, ell});
        auto support33 = fund2_support(ctx, {ell - 1, ell - 1});
        if (fz.kind == Factorization::Identity2) {
            for (const auto& support : {support44, support33}) {
                PlanL2 plan(ell);
                plan.m1 = fz.m1;
                plan.m2 = fz.m2;
                plan.support = support;
                plan.identity_case = true;
                plan.k = 1;
                plan.lambda_prime = WeightSpec::fundamental(ell, 2);
                out.push_back(std::move(plan));
            }
            return out;
        }
        if (fz.kind == Factorization::Skip) {
            if (m.empty()) {
                PlanL2 plan(ell);
                plan.support = support44;
                plan.identity_case = true;  // v_{L2} stays put: all support pairs survive
                plan.k = 0;
                plan.lambda_prime = lambda;
                plan.m2 = m;
                out.push_back(std::move(plan));
                return out;
            }
            int p = m.min_depth();
            for (const auto& support : {support44, support33})
                for (std::size_t choice = 0; choice < support.size(); ++choice) {
                    PlanL2 plan(ell);
                    plan.m2 = m;
                    plan.support = support;
                    if (choice != 0) std::swap(plan.support[0], plan.support[choice]);
                    BuildSlot a{plan.support[0].a, {}}, b{plan.support[0].b, {}};
                    for (BuildSlot* s : {&a, &b}) {
                        SymOp c = closer_op(ctx, s->label);
                        s->label += c.mu;
                        s->ops.push_back(OpStep{c, 0});
                        for (const SymOp& o : skip_ops(ctx, 1, p - 1)) {
                            s->label += o.mu;
                            s->ops.push_back(OpStep{o, 0});
                        }
                    }
                    plan.ops1 = a.ops;
                    plan.ops2 = b.ops;
                    plan.k = p - 1;
                    plan.lambda_prime = WeightSpec::sum(ell, 0, 0);
                    out.push_back(std::move(plan));
                }
            return out;
        }
        for (const auto& support : {support44, support33})
            for (std::size_t choice = 0; choice < support.size(); ++choice)
                plans_general(ctx, fz, support, static_cast<int>(choice), fz.pre1, fz.pre2,
                              max_height, out);
        return out;
    }

    auto [ia, ib] = lambda.sum_indices();
    if (fz.kind == Factorization::CaseB) {
        plans_case_b(ctx, fz, out);
        return out;
    }
    if (fz.kind == Factorization::Skip) {
        PairLabel start{slot_start_level1(ctx, ia).label, slot_start_level1(ctx, ib).label};
        if (m.empty()) {
            PlanL2 plan(ell);
            plan.support = {start};
            plan.k = 0;
            plan.lambda_prime = lambda;
            plan.m2 = m;
            out.push_back(std::move(plan));
            return out;
        }
        int p = m.min_depth();
        PlanL2 plan(ell);
        plan.m2 = m;
        plan.support = {start};
        BuildSlot a{start.a, {}}, b{start.b, {}};
        for (BuildSlot* s : {&a, &b}) {
            LabelInfo info = classify_label(ctx, s->label);
            if (info.spinor) {
                SymOp c = closer_op(ctx, s->label);
                s->label += c.mu;
                s->ops.push_back(OpStep{c, 0});
                info = classify_label(ctx, s->label);
            }
            if (info.height > p - 1) return out;
            for (const SymOp& o : skip_ops(ctx, info.height, p - 1)) {
                s->label += o.mu;
                s->ops.push_back(OpStep{o, 0});
            }
        }
        plan.ops1 = a.ops;
        plan.ops2 = b.ops;
        plan.k = p - 1;
        plan.lambda_prime = WeightSpec::sum(ell, 0, 0);
        out.push_back(std::move(plan));
        return out;
    }
    PairLabel start{slot_start_level1(ctx, fz.part.idx1).label,
                    slot_start_level1(ctx, fz.part.idx2).label};
    plans_general(ctx, fz, {start}, 0, fz.part.slot1, fz.part.slot2, max_height, out);
    return out;
}

}  // namespace

ReplayReport replay_level2_D4(const LatticeContext& ctx, const WeightSpec& lambda, int n) {
    if (ctx.ell() != 4)
        throw std::invalid_argument("unsupported: level-2 verification requires rank 4");
    if (lambda.level() != 2)
        throw std::invalid_argument("replay_level2_D4: level-2 weight required");
    ReplayReport rep;
    rep.weight = lambda.str();
    rep.degree = n;

    std::vector<Monomial> adm = enumerate_admissible(ctx, lambda, n);
    std::vector<Factorization> fzs;
    fzs.reserve(adm.size());
    for (const Monomial& m : adm) fzs.push_back(factorize(ctx, m, lambda));

    for (std::size_t i = 0; i < adm.size(); ++i) {
        const Monomial& m = adm[i];
        ++rep.checked;
        auto plans = build_plans_level2(ctx, m, lambda, fzs[i], n);
        long best_fail = LONG_MAX;
        long best_kill = 0, best_unsup = 0, best_resid = 0;
        std::vector<std::string> best_offenders;
        bool closed = false;
        for (const PlanL2& plan : plans) {
            long kill = 0, unsup = 0, resid = 0;
            PairEval own = eval_pair(ctx, plan, processing_order(plan.m1));
            unsup += own.unsupported;
            if (plan.identity_case) {
                int h = 0;
                bool ok = own.states.size() == plan.support.size();
                for (const PairLabel& p : own.states)
                    ok = ok && is_partner_pair(ctx, p, 2, &h) && h == plan.k;
                if (!ok) ++resid;
            } else if (plan.quotient) {
                int h = 0;
                if (own.states.size() != 1 || !is_partner_pair(ctx, own.states[0], 2, &h) ||
                    h != plan.k)
                    ++resid;
            } else {
                bool ok = own.states.size() == 1;
                if (ok) {
                    auto ra = label_readings(ctx, own.states[0].a);
                    auto rb = label_readings(ctx, own.states[0].b);
                    bool match = false;
                    for (const auto& x : ra)
                        for (const auto& y : rb)
                            if (x.k == plan.k && y.k == plan.k &&
                                WeightSpec::sum(ctx.ell(), x.level1_index, y.level1_index) ==
                                    plan.lambda_prime)
                                match = true;
                    ok = match;
                }
                if (!ok) ++resid;
            }
            auto shifted = unshift(plan.m2, plan.k);
            if (!shifted || !admissible(*shifted, plan.lambda_prime)) ++resid;
            std::vector<std::string> offenders;
            if (resid == 0 && unsup == 0) {
                for (std::size_t jx = 0; jx < adm.size(); ++jx) {
                    if (jx == i) continue;
                    // kills are only needed for greater monomials
                    if (compare(adm[jx], m) != Ordering::GT) continue;
                    std::vector<Factor> target;
                    if (!fzs[jx].m1.empty()) {
                        if (compare(fzs[jx].m1, plan.m1) != Ordering::GT) continue;
                        target = processing_order(fzs[jx].m1);
                    } else if (plan.m1.empty()) {
                        if (adm[jx].empty() || m.empty()) continue;
                        if (adm[jx].min_depth() >= m.min_depth()) continue;
                        target = processing_order(adm[jx]);
                    } else {
                        continue;
                    }
                    if ((plan.quotient || plan.identity_case) &&
                        certified_killed_on_fund(ctx, target, plan.quotient ? plan.k : 0,
                                                 plan.quotient_j))
                        continue;
                    PairEval ev = eval_pair(ctx, plan, target);
                    kill += static_cast<long>(ev.states.size());
                    unsup += ev.unsupported;
                    if (!ev.states.empty() || ev.unsupported) {
                        std::string o = adm[jx].str() + " (m1'=" + fzs[jx].m1.str() + ")";
                        for (const PairLabel& pl : ev.states)
                            o += " state=" + pl.a.str() + "x" + pl.b.str();
                        if (offenders.size() < 3) offenders.push_back(o);
                    }
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
                best_offenders = offenders;
            }
        }
        if (!closed) {
            if (plans.empty()) {
                ++rep.residual_failures;
                rep.notes.push_back("no plan for " + m.str() + " [kind=" +
                                    std::to_string(static_cast<int>(fzs[i].kind)) + "]");
            } else {
                rep.kill_failures += best_kill;
                rep.unsupported += best_unsup;
                rep.residual_failures += best_resid;
                std::string detail = "no operator closed for " + m.str() + " [kind=" +
                                     std::to_string(static_cast<int>(fzs[i].kind)) +
                                     " m1=" + fzs[i].m1.str() + " k/u/r=" +
                                     std::to_string(best_kill) + "/" + std::to_string(best_unsup) +
                                     "/" + std::to_string(best_resid) + "]";
                for (const std::string& o : best_offenders) detail += " | " + o;
                rep.notes.push_back(detail);
            }
        }
    }
    rep.pass = rep.kill_failures == 0 && rep.unsupported == 0 && rep.residual_failures == 0;
    return rep;
}

}  // namespace fsb
