#include "fsb/tensor.hpp"

#include <algorithm>
#include <sstream>

#include "fsb/rank.hpp"

namespace fsb {

void TensorVector::add(TensorBasisElement b, Rat c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(std::move(b), c);
    if (!fresh) {
        it->second += c;
        it->second.canonicalize();
        if (it->second == 0) terms_.erase(it);
    }
}

TensorVector TensorVector::product(const FockVector& a, const FockVector& b) {
    TensorVector out;
    for (const auto& [ba, ca] : a.terms())
        for (const auto& [bb, cb] : b.terms()) out.add(TensorBasisElement{ba, bb}, ca * cb);
    return out;
}

TensorVector& TensorVector::operator+=(const TensorVector& o) {
    for (const auto& [b, c] : o.terms_) add(b, c);
    return *this;
}

TensorVector& TensorVector::operator-=(const TensorVector& o) {
    for (const auto& [b, c] : o.terms_) add(b, -c);
    return *this;
}

TensorVector& TensorVector::operator*=(const Rat& c) {
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

std::string TensorVector::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [b, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c << "*" << b.slot1.str() << "(x)" << b.slot2.str();
    }
    return os.str();
}

TensorVector tensor_act(const Cocycle& eps, const Weight& alpha, int n, const TensorVector& v) {
    TensorVector out;
    for (const auto& [b, c] : v.terms()) {
        FockVector s1(b.slot1, c);
        FockVector r1 = vertex_act(eps, alpha, n, s1);
        for (const auto& [nb, nc] : r1.terms()) out.add(TensorBasisElement{nb, b.slot2}, nc);
        FockVector s2(b.slot2, c);
        FockVector r2 = vertex_act(eps, alpha, n, s2);
        for (const auto& [nb, nc] : r2.terms()) out.add(TensorBasisElement{b.slot1, nb}, nc);
    }
    return out;
}

TensorVector tensor_e_lambda(const Cocycle& eps, const Weight& lambda, const TensorVector& v) {
    TensorVector out;
    for (const auto& [b, c] : v.terms()) {
        TensorBasisElement nb = b;
        int s = eps.sign(b.slot1.lattice, lambda) * eps.sign(b.slot2.lattice, lambda);
        nb.slot1.lattice = b.slot1.lattice + lambda;
        nb.slot2.lattice = b.slot2.lattice + lambda;
        out.add(std::move(nb), c * s);
    }
    return out;
}

std::vector<std::pair<SpinorLabel, SpinorLabel>> hw_support(const LatticeContext& ctx, int j,
                                                            std::pair<int, int> pair) {
    int ell = ctx.ell();
    auto spinor_parity = [&](int idx) {
        // |Sigma| parity of the weight vectors on top of L(Lambda_idx)
        return idx == ell ? ell % 2 : (ell - 1) % 2;
    };
    if (!((pair.first == ell || pair.first == ell - 1) &&
          (pair.second == ell || pair.second == ell - 1)))
        throw std::invalid_argument("hw_support: spinor pair required");
    std::vector<std::pair<SpinorLabel, SpinorLabel>> out;
    int m = ell - j;
    std::vector<int> rest;
    for (int i = j + 1; i <= ell; ++i) rest.push_back(i);
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        SpinorLabel s1, s2;
        for (int i = 1; i <= j; ++i) {
            s1.sigma.push_back(i);
            s2.sigma.push_back(i);
        }
        for (int b = 0; b < m; ++b)
            ((mask >> b) & 1u ? s2 : s1).sigma.push_back(rest[static_cast<std::size_t>(b)]);
        if (static_cast<int>(s1.sigma.size()) % 2 != spinor_parity(pair.first)) continue;
        if (static_cast<int>(s2.sigma.size()) % 2 != spinor_parity(pair.second)) continue;
        out.emplace_back(std::move(s1), std::move(s2));
    }
    return out;
}

TensorVector solve_hw(const Cocycle& eps, int j, std::pair<int, int> pair) {
    const LatticeContext& ctx = eps.ctx();
    auto support = hw_support(ctx, j, pair);
    if (support.empty()) throw std::invalid_argument("solve_hw: pair parity does not match j");
    std::vector<TensorBasisElement> basis;
    for (const auto& [s1, s2] : support)
        basis.push_back(TensorBasisElement{pure_element(ctx.spinor_weight(s1)),
                                           pure_element(ctx.spinor_weight(s2))});
    std::sort(basis.begin(), basis.end());

    // Stack the matrices of all simple raising zero modes on the span.
    std::map<TensorBasisElement, std::size_t> row_of;
    std::vector<std::vector<Rat>> rows;
    auto row_index = [&](const TensorBasisElement& b) {
        auto [it, fresh] = row_of.try_emplace(b, row_of.size());
        if (fresh) rows.emplace_back(basis.size(), Rat(0));
        return it->second;
    };
    for (std::size_t c = 0; c < basis.size(); ++c) {
        TensorVector v(basis[c]);
        for (int i = 1; i <= ctx.ell(); ++i) {
            TensorVector img = tensor_act(eps, ctx.simple_root(i), 0, v);
            for (const auto& [b, x] : img.terms()) {
                // tag rows by (operator, target); offset targets per operator
                TensorBasisElement tagged = b;
                tagged.slot1.modes.push_back({i});  // marker; never a real mode list shape
                rows[row_index(tagged)][c] = x;
            }
        }
    }
    auto kernel = nullspace(rows, basis.size());
    if (kernel.size() != 1)
        throw std::runtime_error("solve_hw: solution space dimension " +
                                 std::to_string(kernel.size()) + ", expected 1");
    TensorVector out;
    for (std::size_t c = 0; c < basis.size(); ++c) {
        if (kernel[0][c] == 0)
            throw std::runtime_error("solve_hw: vanishing coefficient on a basic vector");
        out.add(basis[c], kernel[0][c]);
    }
    return out;
}

TensorVector hw_vector_level2(const Cocycle& eps, const WeightSpec& lambda) {
    const LatticeContext& ctx = eps.ctx();
    if (lambda.kind() == WeightSpec::Kind::Sum) {
        auto [a, b] = lambda.sum_indices();
        return TensorVector::product(hw_vector(ctx, a), hw_vector(ctx, b));
    }
    if (lambda.kind() == WeightSpec::Kind::Fundamental) {
        int j = lambda.index();
        int ell = ctx.ell();
        std::pair<int, int> pair =
            (ell - j) % 2 == 0 ? std::pair<int, int>{ell, ell} : std::pair<int, int>{ell - 1, ell};
        return solve_hw(eps, j, pair);
    }
    throw std::invalid_argument("hw_vector_level2: level-2 weight required");
}

std::map<Weight, long> decompose_top(const Cocycle& eps, std::pair<int, int> pair) {
    const LatticeContext& ctx = eps.ctx();
    int ell = ctx.ell();
    if (!((pair.first == ell || pair.first == ell - 1) &&
          (pair.second == ell || pair.second == ell - 1)))
        throw std::invalid_argument("decompose_top: spinor pair required");

    auto labels = [&](int idx) {
        std::vector<SpinorLabel> out;
        int parity = idx == ell ? ell % 2 : (ell - 1) % 2;
        for (std::uint32_t mask = 0; mask < (1u << ell); ++mask) {
            SpinorLabel s;
            for (int b = 0; b < ell; ++b)
                if ((mask >> b) & 1u) s.sigma.push_back(b + 1);
            if (static_cast<int>(s.sigma.size()) % 2 == parity) out.push_back(std::move(s));
        }
        return out;
    };

    std::map<Weight, std::vector<TensorBasisElement>> blocks;
    for (const auto& s1 : labels(pair.first))
        for (const auto& s2 : labels(pair.second)) {
            TensorBasisElement b{pure_element(ctx.spinor_weight(s1)),
                                 pure_element(ctx.spinor_weight(s2))};
            blocks[b.weight()].push_back(std::move(b));
        }

    std::map<Weight, long> mult;
    for (auto& [w, basis] : blocks) {
        if (!ctx.is_dominant(w)) continue;
        std::sort(basis.begin(), basis.end());
        std::map<TensorBasisElement, std::size_t> row_of;
        std::vector<std::vector<Rat>> rows;
        auto row_index = [&](const TensorBasisElement& b) {
            auto [it, fresh] = row_of.try_emplace(b, row_of.size());
            if (fresh) rows.emplace_back(basis.size(), Rat(0));
            return it->second;
        };
        for (std::size_t c = 0; c < basis.size(); ++c) {
            TensorVector v(basis[c]);
            for (int i = 1; i <= ell; ++i) {
                TensorVector img = tensor_act(eps, ctx.simple_root(i), 0, v);
                for (const auto& [b, x] : img.terms()) {
                    TensorBasisElement tagged = b;
                    tagged.slot1.modes.push_back({i});
                    rows[row_index(tagged)][c] = x;
                }
            }
        }
        long dim = static_cast<long>(nullspace(rows, basis.size()).size());
        if (dim > 0) mult[w] = dim;
    }
    return mult;
}

}  // namespace fsb
