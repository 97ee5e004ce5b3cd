#include "fsb/fock.hpp"

#include "fsb/weight_spec.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace fsb {

Rat FockBasisElement::degree() const {
    Rat d = -pairing(lattice, lattice) / 2;
    d -= mode_weight();
    d.canonicalize();
    return d;
}

std::string FockBasisElement::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < modes.size(); ++i)
        for (int n : modes[i]) os << "e" << i + 1 << "(-" << n << ")";
    os << "e^" << lattice.str();
    return os.str();
}

FockBasisElement pure_element(const Weight& lattice) {
    FockBasisElement b;
    b.modes.assign(lattice.rank(), {});
    b.lattice = lattice;
    return b;
}

void FockVector::add(FockBasisElement b, Rat c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(std::move(b), c);
    if (!fresh) {
        it->second += c;
        it->second.canonicalize();
        if (it->second == 0) terms_.erase(it);
    }
}

FockVector& FockVector::operator+=(const FockVector& o) {
    for (const auto& [b, c] : o.terms_) add(b, c);
    return *this;
}

FockVector& FockVector::operator-=(const FockVector& o) {
    for (const auto& [b, c] : o.terms_) add(b, -c);
    return *this;
}

FockVector& FockVector::operator*=(const Rat& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [b, x] : terms_) {
        x *= c;
        x.canonicalize();
    }
    return *this;
}

Rat FockVector::degree() const {
    if (terms_.empty()) throw std::logic_error("degree of zero vector");
    Rat d = terms_.begin()->first.degree();
    for (const auto& [b, c] : terms_)
        if (b.degree() != d) throw std::logic_error("degree of non-homogeneous vector");
    return d;
}

std::string FockVector::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [b, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c << "*" << b.str();
    }
    return os.str();
}

std::vector<int> Cocycle::coords_p(const Weight& w) const {
    int ell = ctx_->ell();
    std::vector<int> c(static_cast<std::size_t>(ell));
    int cl = w.doubled(static_cast<std::size_t>(ell - 1));  // omega_ell coefficient
    c[static_cast<std::size_t>(ell - 1)] = cl;
    for (int i = 0; i < ell - 1; ++i) {
        int num = w.doubled(static_cast<std::size_t>(i)) - cl;
        if (num % 2 != 0) throw std::invalid_argument("cocycle: weight not in P");
        c[static_cast<std::size_t>(i)] = num / 2;
    }
    return c;
}

Cocycle::Cocycle(const LatticeContext& ctx, int fill) : ctx_(&ctx) {
    int ell = ctx.ell();
    auto n = static_cast<std::size_t>(ell);
    // Unknowns: S_ij (i<j) of the symmetric commutator form on the P-basis.
    std::vector<std::pair<int, int>> vars;
    for (int i = 0; i < ell; ++i)
        for (int j = i + 1; j < ell; ++j) vars.emplace_back(i, j);
    auto nv = vars.size();

    std::vector<std::vector<int>> eqs;  // each: nv coefficients + rhs
    for (int r = 1; r <= ell; ++r)
        for (int s = r + 1; s <= ell; ++s) {
            auto a = coords_p(ctx.simple_root(r));
            auto b = coords_p(ctx.simple_root(s));
            std::vector<int> row(nv + 1, 0);
            for (std::size_t v = 0; v < nv; ++v) {
                auto [i, j] = vars[v];
                row[v] = ((a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)] +
                           a[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(i)]) %
                              2 +
                          2) %
                         2;
            }
            Rat p = pairing(ctx.simple_root(r), ctx.simple_root(s));
            if (p.get_den() != 1) throw std::logic_error("non-integral root pairing");
            row[nv] = mpz_odd_p(p.get_num().get_mpz_t()) ? 1 : 0;
            eqs.push_back(std::move(row));
        }

    // GF(2) elimination.
    std::vector<int> where(nv, -1);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < nv && rank < eqs.size(); ++col) {
        std::size_t piv = rank;
        while (piv < eqs.size() && eqs[piv][col] == 0) ++piv;
        if (piv == eqs.size()) continue;
        std::swap(eqs[rank], eqs[piv]);
        for (std::size_t r2 = 0; r2 < eqs.size(); ++r2)
            if (r2 != rank && eqs[r2][col]) {
                for (std::size_t c2 = 0; c2 <= nv; ++c2) eqs[r2][c2] ^= eqs[rank][c2];
            }
        where[col] = static_cast<int>(rank);
        ++rank;
    }
    for (std::size_t r2 = rank; r2 < eqs.size(); ++r2)
        if (eqs[r2][nv]) throw std::logic_error("cocycle: mod-2 constraint system infeasible");

    std::vector<int> sol(nv, fill ? 1 : 0);
    for (std::size_t col = 0; col < nv; ++col) {
        if (where[col] < 0) continue;
        const auto& row = eqs[static_cast<std::size_t>(where[col])];
        int v = row[nv];
        for (std::size_t c2 = col + 1; c2 < nv; ++c2)
            if (row[c2]) v ^= sol[c2];
        sol[col] = v;
    }

    m_.assign(n, std::vector<int>(n, 0));
    for (std::size_t v = 0; v < nv; ++v) {
        auto [i, j] = vars[v];
        m_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = sol[v];
    }

    // Audit the defining property on the simple roots.
    for (int r = 1; r <= ell; ++r)
        for (int s = 1; s <= ell; ++s) {
            Rat p = pairing(ctx.simple_root(r), ctx.simple_root(s));
            int want = (p.get_num() % 2 + 2) % 2 == 0 ? 1 : -1;
            if (sign(ctx.simple_root(r), ctx.simple_root(s)) *
                    sign(ctx.simple_root(s), ctx.simple_root(r)) !=
                want)
                throw std::logic_error("cocycle: commutator audit failed");
        }
}

int Cocycle::sign(const Weight& a, const Weight& b) const {
    auto ca = coords_p(a);
    auto cb = coords_p(b);
    int acc = 0;
    for (std::size_t i = 0; i < ca.size(); ++i) {
        if (!(ca[i] % 2)) continue;
        for (std::size_t j = 0; j < cb.size(); ++j)
            if (cb[j] % 2) acc ^= m_[i][j];
    }
    return acc ? -1 : 1;
}

namespace {

Rat binom(int n, int k) {
    Rat r = 1;
    for (int i = 0; i < k; ++i) r *= Rat(n - i, i + 1);
    r.canonicalize();
    return r;
}

Rat int_pow(const Rat& x, int k) {
    Rat r = 1;
    for (int i = 0; i < k; ++i) r *= x;
    r.canonicalize();
    return r;
}

Rat factorial(int k) {
    Rat r = 1;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

struct DirCoeff {
    std::size_t dir;
    Rat c;
};

// Enumerate per-(direction, mode) removals from `grouped`, accumulating the
// E^+ coefficient; calls out(removals, removed_weight, coeff).
void enumerate_removals(const std::vector<std::tuple<std::size_t, int, int, Rat>>& grouped,
                        std::size_t idx, std::map<std::pair<std::size_t, int>, int>& cur, int w,
                        Rat coeff,
                        const std::function<void(const std::map<std::pair<std::size_t, int>, int>&,
                                                 int, const Rat&)>& out) {
    if (idx == grouped.size()) {
        out(cur, w, coeff);
        return;
    }
    auto [dir, mode, count, c] = grouped[idx];
    for (int q = 0; q <= count; ++q) {
        Rat piece = binom(count, q) * int_pow(-c, q);
        piece.canonicalize();
        if (piece != 0) {
            if (q) cur[{dir, mode}] = q;
            enumerate_removals(grouped, idx + 1, cur, w + q * mode, coeff * piece, out);
            if (q) cur.erase({dir, mode});
        }
    }
}

// Enumerate mode creations of total weight w over the given directions,
// accumulating the E^- coefficient; calls out(additions, coeff).
void enumerate_creations(const std::vector<DirCoeff>& dirs, std::size_t di, int max_mode, int w,
                         std::map<std::pair<std::size_t, int>, int>& cur, Rat coeff,
                         const std::function<void(const std::map<std::pair<std::size_t, int>, int>&,
                                                  const Rat&)>& out) {
    if (w == 0) {
        out(cur, coeff);
        return;
    }
    if (di == dirs.size()) return;
    // counts q of mode `max_mode` in direction dirs[di]; iterate mode values
    // downward, then move to the next direction.
    if (max_mode == 0) {
        enumerate_creations(dirs, di + 1, w, w, cur, coeff, out);
        return;
    }
    for (int q = 0; q * max_mode <= w; ++q) {
        Rat piece = int_pow(dirs[di].c, q) / (int_pow(Rat(max_mode), q) * factorial(q));
        piece.canonicalize();
        if (piece != 0) {
            if (q) cur[{dirs[di].dir, max_mode}] = q;
            enumerate_creations(dirs, di, max_mode - 1, w - q * max_mode, cur, coeff * piece, out);
            if (q) cur.erase({dirs[di].dir, max_mode});
        }
    }
}

}  // namespace

FockVector vertex_act(const Cocycle& eps, const Weight& alpha, int n, const FockVector& v) {
    const LatticeContext& ctx = eps.ctx();
    FockVector out;
    std::vector<DirCoeff> dirs;
    for (std::size_t i = 0; i < alpha.rank(); ++i) {
        Rat c(alpha.doubled(i), 2);
        c.canonicalize();
        if (c != 0) dirs.push_back(DirCoeff{i, c});
    }
    for (const auto& [term, coeff] : v.terms()) {
        Rat tq = pairing(alpha, term.lattice);
        if (tq.get_den() != 1)
            throw std::invalid_argument("vertex_act: non-integral z-power; alpha must be in Q");
        long t = tq.get_num().get_si();
        int sign = eps.sign(alpha, term.lattice);
        Weight new_lattice = term.lattice + alpha;

        std::vector<std::tuple<std::size_t, int, int, Rat>> grouped;
        for (const DirCoeff& d : dirs) {
            const auto& ms = term.modes[d.dir];
            for (std::size_t a = 0; a < ms.size();) {
                std::size_t b = a;
                while (b < ms.size() && ms[b] == ms[a]) ++b;
                grouped.emplace_back(d.dir, ms[a], static_cast<int>(b - a), d.c);
                a = b;
            }
        }

        std::map<std::pair<std::size_t, int>, int> rem;
        enumerate_removals(
            grouped, 0, rem, 0, Rat(sign) * coeff,
            [&](const std::map<std::pair<std::size_t, int>, int>& removals, int k,
                const Rat& c1) {
                long j = static_cast<long>(k) - n - 1 - t;
                if (j < 0) return;
                std::map<std::pair<std::size_t, int>, int> add;
                enumerate_creations(
                    dirs, 0, static_cast<int>(j), static_cast<int>(j), add, c1,
                    [&](const std::map<std::pair<std::size_t, int>, int>& additions,
                        const Rat& c2) {
                        FockBasisElement nb;
                        nb.lattice = new_lattice;
                        nb.modes = term.modes;
                        for (const auto& [key, q] : removals) {
                            auto& dir = nb.modes[key.first];
                            for (int x = 0; x < q; ++x)
                                dir.erase(std::find(dir.begin(), dir.end(), key.second));
                        }
                        for (const auto& [key, q] : additions)
                            for (int x = 0; x < q; ++x) nb.modes[key.first].push_back(key.second);
                        for (auto& dir : nb.modes) std::sort(dir.begin(), dir.end(), std::greater<>());
                        Rat c3 = c2;
                        c3.canonicalize();
                        out.add(std::move(nb), c3);
                    });
            });
    }
    return out;
}

FockVector heisenberg_act(const LatticeContext& ctx, const Weight& h, int n, const FockVector& v) {
    (void)ctx;
    FockVector out;
    for (const auto& [term, coeff] : v.terms()) {
        if (n == 0) {
            out.add(term, coeff * pairing(h, term.lattice));
            continue;
        }
        for (std::size_t i = 0; i < h.rank(); ++i) {
            Rat c(h.doubled(i), 2);
            c.canonicalize();
            if (c == 0) continue;
            if (n < 0) {
                FockBasisElement nb = term;
                nb.modes[i].push_back(-n);
                std::sort(nb.modes[i].begin(), nb.modes[i].end(), std::greater<>());
                out.add(std::move(nb), coeff * c);
            } else {
                auto& ms = term.modes[i];
                auto cnt = static_cast<int>(std::count(ms.begin(), ms.end(), n));
                if (!cnt) continue;
                FockBasisElement nb = term;
                auto& nm = nb.modes[i];
                nm.erase(std::find(nm.begin(), nm.end(), n));
                out.add(std::move(nb), coeff * c * n * cnt);
            }
        }
    }
    return out;
}

FockVector e_lambda(const Cocycle& eps, const Weight& lambda, const FockVector& v) {
    FockVector out;
    for (const auto& [term, coeff] : v.terms()) {
        FockBasisElement nb = term;
        nb.lattice = term.lattice + lambda;
        out.add(std::move(nb), coeff * eps.sign(term.lattice, lambda));
    }
    return out;
}

FockVector hw_vector(const LatticeContext& ctx, int level1_index) {
    if (!is_level1_index(ctx.ell(), level1_index))
        throw std::invalid_argument("hw_vector: not a level-1 weight");
    return FockVector(pure_element(ctx.fundamental_weight(level1_index)));
}

namespace {

void lattice_points_rec(int ell, std::size_t i, int parity, long budget2,
                        std::vector<int>& cur, std::vector<Weight>& out) {
    if (i == static_cast<std::size_t>(ell)) {
        out.push_back(Weight::from_doubled(cur));
        return;
    }
    // doubled coordinate x with x^2 <= budget2, x == parity mod 2
    long lim = 0;
    while ((lim + 1) * (lim + 1) <= budget2) ++lim;
    for (long x = -lim; x <= lim; ++x) {
        if (((x % 2) + 2) % 2 != parity) continue;
        cur[i] = static_cast<int>(x);
        lattice_points_rec(ell, i + 1, parity, budget2 - x * x, cur, out);
    }
    cur[i] = 0;
}

}  // namespace

std::vector<FockBasisElement> graded_basis(const LatticeContext& ctx, CosetClass coset,
                                           const Rat& degree) {
    std::vector<FockBasisElement> out;
    Rat bound2 = -degree * 2;  // <lambda,lambda> <= -2*degree
    if (bound2 < 0) return out;
    // doubled coords: sum x_i^2 <= -8*degree
    Rat b8 = bound2 * 4;
    b8.canonicalize();
    long budget2 = static_cast<long>(mpz_class(b8.get_num() / b8.get_den()).get_si());
    bool half = coset == CosetClass::QOmegaLm1 || coset == CosetClass::QOmegaL;
    std::vector<Weight> pts;
    std::vector<int> cur(static_cast<std::size_t>(ctx.ell()), 0);
    lattice_points_rec(ctx.ell(), 0, half ? 1 : 0, budget2, cur, pts);

    for (const Weight& lam : pts) {
        if (ctx.coset_class(lam) != coset) continue;
        Rat w = -degree - pairing(lam, lam) / 2;
        w.canonicalize();
        if (w < 0 || w.get_den() != 1) continue;
        int mw = static_cast<int>(w.get_num().get_si());
        // distribute weight mw over ell directions as mode partitions
        FockBasisElement base = pure_element(lam);
        std::function<void(std::size_t, int)> fill = [&](std::size_t dir, int rem) {
            if (dir + 1 == base.modes.size()) {
                // last direction takes a full partition of rem
                std::function<void(int, int)> parts = [&](int r, int maxp) {
                    if (r == 0) {
                        out.push_back(base);
                        return;
                    }
                    for (int p = std::min(r, maxp); p >= 1; --p) {
                        base.modes[dir].push_back(p);
                        parts(r - p, p);
                        base.modes[dir].pop_back();
                    }
                };
                parts(rem, rem == 0 ? 1 : rem);
                return;
            }
            for (int take = 0; take <= rem; ++take) {
                std::function<void(int, int)> parts = [&](int r, int maxp) {
                    if (r == 0) {
                        fill(dir + 1, rem - take);
                        return;
                    }
                    for (int p = std::min(r, maxp); p >= 1; --p) {
                        base.modes[dir].push_back(p);
                        parts(r - p, p);
                        base.modes[dir].pop_back();
                    }
                };
                parts(take, take == 0 ? 1 : take);
            }
        };
        fill(0, mw);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace fsb
