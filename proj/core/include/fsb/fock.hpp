#pragma once

#include <map>
#include <vector>

#include "fsb/lattice.hpp"

namespace fsb {

// One basis vector of V_P = M(1) (x) C[P]: a Heisenberg mode monomial
// eps_1(-n)^.. eps_ell(-n)^.. applied to e^lattice. Modes are stored per
// Cartan direction as a descending multiset of positive integers.
struct FockBasisElement {
    std::vector<std::vector<int>> modes;
    Weight lattice;

    int mode_weight() const {
        int s = 0;
        for (const auto& dir : modes)
            for (int n : dir) s += n;
        return s;
    }
    bool pure() const { return mode_weight() == 0; }
    // deg = -sum(modes) - <lambda,lambda>/2; denominator divides 8.
    Rat degree() const;
    std::string str() const;

    friend bool operator==(const FockBasisElement&, const FockBasisElement&) = default;
    friend std::strong_ordering operator<=>(const FockBasisElement&, const FockBasisElement&) = default;
};

FockBasisElement pure_element(const Weight& lattice);

// Exact rational linear combination of basis elements.
class FockVector {
public:
    using Terms = std::map<FockBasisElement, Rat>;

    FockVector() = default;
    explicit FockVector(FockBasisElement b, Rat c = 1) { add(std::move(b), std::move(c)); }

    const Terms& terms() const { return terms_; }
    bool zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add(FockBasisElement b, Rat c);
    FockVector& operator+=(const FockVector& o);
    FockVector& operator-=(const FockVector& o);
    FockVector& operator*=(const Rat& c);
    friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
    friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }

    friend bool operator==(const FockVector&, const FockVector&) = default;

    // Degree of a homogeneous vector; throws on mixed degrees.
    Rat degree() const;
    std::string str() const;

private:
    Terms terms_;
};

// Bimultiplicative sign table on P x P whose commutator values on Q x Q are
// (-1)^<a,b>. The table is solved once from the simple-root constraints; the
// free parameters are filled with `fill` so two genuinely different valid
// tables can be produced.
class Cocycle {
public:
    Cocycle(const LatticeContext& ctx, int fill = 0);

    int sign(const Weight& a, const Weight& b) const;  // +1 or -1
    const LatticeContext& ctx() const { return *ctx_; }

private:
    std::vector<int> coords_p(const Weight& w) const;
    const LatticeContext* ctx_;
    std::vector<std::vector<int>> m_;  // GF(2) matrix on the P-basis
};

// x_alpha(n) via the coefficient of z^{-n-1} in E^-(-a,z)E^+(-a,z)e_a z^a.
FockVector vertex_act(const Cocycle& eps, const Weight& alpha, int n, const FockVector& v);

// h(n): creation for n<0, contraction for n>0, <h,lattice>-scaling for n=0.
FockVector heisenberg_act(const LatticeContext& ctx, const Weight& h, int n, const FockVector& v);

// e(lambda) = e^lambda eps(., lambda).
FockVector e_lambda(const Cocycle& eps, const Weight& lambda, const FockVector& v);

// Highest weight vectors e^{omega_i}, i in {0, 1, ell-1, ell}.
FockVector hw_vector(const LatticeContext& ctx, int level1_index);

// The full graded piece of one coset class of V_P at a given degree.
std::vector<FockBasisElement> graded_basis(const LatticeContext& ctx, CosetClass coset,
                                           const Rat& degree);

}  // namespace fsb
