#pragma once

#include "fsb/fock.hpp"
#include "fsb/weight_spec.hpp"

namespace fsb {

struct TensorBasisElement {
    FockBasisElement slot1, slot2;
    Rat degree() const { return slot1.degree() + slot2.degree(); }
    int mode_weight() const { return slot1.mode_weight() + slot2.mode_weight(); }
    Weight weight() const { return slot1.lattice + slot2.lattice; }
    friend bool operator==(const TensorBasisElement&, const TensorBasisElement&) = default;
    friend std::strong_ordering operator<=>(const TensorBasisElement&,
                                            const TensorBasisElement&) = default;
};

class TensorVector {
public:
    using Terms = std::map<TensorBasisElement, Rat>;

    TensorVector() = default;
    explicit TensorVector(TensorBasisElement b, Rat c = 1) { add(std::move(b), std::move(c)); }
    static TensorVector product(const FockVector& a, const FockVector& b);

    const Terms& terms() const { return terms_; }
    bool zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add(TensorBasisElement b, Rat c);
    TensorVector& operator+=(const TensorVector& o);
    TensorVector& operator-=(const TensorVector& o);
    TensorVector& operator*=(const Rat& c);
    friend TensorVector operator+(TensorVector a, const TensorVector& b) { return a += b; }
    friend TensorVector operator-(TensorVector a, const TensorVector& b) { return a -= b; }
    friend bool operator==(const TensorVector&, const TensorVector&) = default;

    std::string str() const;

private:
    Terms terms_;
};

// Diagonal action x_alpha(n) (x) 1 + 1 (x) x_alpha(n).
TensorVector tensor_act(const Cocycle& eps, const Weight& alpha, int n, const TensorVector& v);
// e(lambda) (x) e(lambda).
TensorVector tensor_e_lambda(const Cocycle& eps, const Weight& lambda, const TensorVector& v);

// Highest weight vector of the level-2 module: Sum weights are pure tensor
// products of level-1 highest weight vectors; fundamental weights are solved
// inside a spinor (x) spinor realization.
TensorVector hw_vector_level2(const Cocycle& eps, const WeightSpec& lambda);

// The highest-weight vector of weight omega_j inside the degree-0 piece of
// L(pair.first) (x) L(pair.second): the nullspace of all simple raising
// operators on the basic-vector span. Throws unless the solution space is
// one-dimensional with all coefficients nonzero.
TensorVector solve_hw(const Cocycle& eps, int j, std::pair<int, int> pair);

// Pairs (Psi1, Psi2) partitioning {j+1..ell} with slot parities matching the
// given spinor pair; the support of the solved highest weight vector.
std::vector<std::pair<SpinorLabel, SpinorLabel>> hw_support(const LatticeContext& ctx, int j,
                                                            std::pair<int, int> pair);

// Multiplicities of the dominant weights whose highest-weight spaces appear
// in the top graded piece of L(pair.first) (x) L(pair.second).
std::map<Weight, long> decompose_top(const Cocycle& eps, std::pair<int, int> pair);

}  // namespace fsb
