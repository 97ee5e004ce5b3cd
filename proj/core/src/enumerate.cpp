#include "fsb/enumerate.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace fsb {

namespace {

// Color multisets of a given size, colors listed by ascending gamma position.
void multisets_rec(int ell, int size, int from_pos, std::vector<Color>& cur,
                   std::vector<std::vector<Color>>& out) {
    if (size == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = from_pos; p <= 2 * ell - 3; ++p) {
        Color c = p <= ell - 2 ? Color{p + 2, false} : Color{2 * ell - 1 - p, true};
        cur.push_back(c);
        multisets_rec(ell, size - 1, p, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<Color>> color_multisets(int ell, int max_size) {
    std::vector<std::vector<Color>> out;
    std::vector<Color> cur;
    for (int s = 0; s <= max_size; ++s) multisets_rec(ell, s, 0, cur, out);
    return out;
}

struct Generator {
    const LatticeContext& ctx;
    int ell;
    int bound;                 // frequency bound; 0 disables pruning (PBW)
    std::vector<int> imag;     // depth-0 occupancy by gamma position
    std::vector<Monomial> out;
    std::vector<Factor> cur;
    std::vector<std::vector<int>> depth_counts;  // by depth, by gamma position

    bool window_ok(int j) const {
        if (bound == 0) return true;
        FreqProfile p;
        p.window = j;
        p.a = j < static_cast<int>(depth_counts.size()) ? depth_counts[static_cast<std::size_t>(j)]
                                                        : std::vector<int>(imag.size(), 0);
        p.b = j + 1 < static_cast<int>(depth_counts.size())
                  ? depth_counts[static_cast<std::size_t>(j + 1)]
                  : std::vector<int>(imag.size(), 0);
        return freq_window_ok(p, ell, bound);
    }

    void rec(int depth, int budget, const std::vector<std::vector<Color>>& sets) {
        if (budget == 0) {
            // trailing window: the last occupied depth against nothing above
            depth_counts.push_back(std::vector<int>(imag.size(), 0));
            bool ok = window_ok(depth - 1);
            depth_counts.pop_back();
            if (ok) out.push_back(Monomial(cur, ell));
            return;
        }
        if (depth > budget) return;  // every further factor costs at least `depth`
        for (const auto& set : sets) {
            int cost = depth * static_cast<int>(set.size());
            if (cost > budget) continue;
            if (bound > 0 && static_cast<int>(set.size()) > 2 * bound) continue;
            std::vector<int> counts(imag.size(), 0);
            for (const Color& c : set) counts[static_cast<std::size_t>(gamma_position(c, ell))]++;
            depth_counts.push_back(counts);
            if (window_ok(depth - 1)) {
                for (const Color& c : set) cur.push_back(Factor{c, depth});
                rec(depth + 1, budget - cost, sets);
                cur.resize(cur.size() - set.size());
            }
            depth_counts.pop_back();
        }
    }
};

std::vector<Monomial> sorted_by_order(std::vector<Monomial> v) {
    std::sort(v.begin(), v.end(),
              [](const Monomial& a, const Monomial& b) { return compare(a, b) == Ordering::LT; });
    return v;
}

}  // namespace

std::vector<Monomial> enumerate_admissible(const LatticeContext& ctx, const WeightSpec& lambda,
                                           int n) {
    if (n < 0) throw std::invalid_argument("enumerate_admissible: degree must be >= 0");
    Generator g{ctx, ctx.ell(), lambda.level(), {}, {}, {}, {}};
    Monomial im = attach_imaginary(lambda);
    g.imag.assign(static_cast<std::size_t>(2 * ctx.ell() - 2), 0);
    for (const Factor& f : im.factors())
        g.imag[static_cast<std::size_t>(gamma_position(f.color, ctx.ell()))]++;
    g.depth_counts.push_back(g.imag);
    auto sets = color_multisets(ctx.ell(), 2 * lambda.level());
    g.rec(1, n, sets);
    // The window pruning is the fast path; the official predicate has the
    // final word.
    std::vector<Monomial> out;
    for (Monomial& m : g.out)
        if (admissible(m, lambda)) out.push_back(std::move(m));
    return sorted_by_order(std::move(out));
}

std::vector<Monomial> enumerate_all(const LatticeContext& ctx, int n) {
    if (n < 0) throw std::invalid_argument("enumerate_all: degree must be >= 0");
    Generator g{ctx, ctx.ell(), 0, {}, {}, {}, {}};
    g.imag.assign(static_cast<std::size_t>(2 * ctx.ell() - 2), 0);
    g.depth_counts.push_back(g.imag);
    auto sets = color_multisets(ctx.ell(), n);
    g.rec(1, n, sets);
    return sorted_by_order(std::move(g.out));
}

std::vector<CharacterRow> graded_dimensions(const LatticeContext& ctx, const WeightSpec& lambda,
                                            int n_max, bool by_weight) {
    std::vector<CharacterRow> rows;
    for (int n = 0; n <= n_max; ++n) {
        auto ms = enumerate_admissible(ctx, lambda, n);
        if (!by_weight) {
            rows.push_back(CharacterRow{n, std::nullopt, static_cast<long>(ms.size())});
            continue;
        }
        std::map<Weight, long> per;
        for (const Monomial& m : ms) per[m.weight(ctx)]++;
        for (const auto& [w, c] : per) rows.push_back(CharacterRow{n, w, c});
    }
    return rows;
}

std::string character_csv(const std::vector<CharacterRow>& rows) {
    std::ostringstream os;
    os << "degree,weight,count\n";
    for (const auto& r : rows) {
        os << r.degree << ",";
        if (r.weight) {
            std::string s = r.weight->str();  // "(a b c d)"
            os << '"' << s.substr(1, s.size() - 2) << '"';
        }
        os << "," << r.count << "\n";
    }
    return os.str();
}

}  // namespace fsb
