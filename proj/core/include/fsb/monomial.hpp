#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fsb/lattice.hpp"

namespace fsb {

// One factor x_color(-depth). Depth 0 is reserved for the imaginary
// bookkeeping factors; real factors have depth >= 1.
struct Factor {
    Color color;
    int depth = 1;
    friend bool operator==(const Factor&, const Factor&) = default;
    std::string str() const {
        return color.str() + "(" + std::to_string(-depth) + ")";
    }
};

// x_d(-i) < x_t(-j) iff -i < -j, or i == j and d < t.
bool factor_less(const Factor& a, const Factor& b, int ell);

enum class Ordering { LT, EQ, GT };

// Depth-multiplicity profile s(pi).
struct Shape {
    std::map<int, int> counts;
    friend bool operator==(const Shape&, const Shape&) = default;
};

// Shape order: s < s' iff they agree below some depth j0 and s(j0) < s'(j0).
Ordering compare_shapes(const Shape& a, const Shape& b);

// A monomial in S(g~_1): a finite multiset of factors, stored sorted
// descending from right to left (so the deepest factor prints leftmost).
class Monomial {
public:
    Monomial() = default;
    Monomial(std::vector<Factor> factors, int ell);  // normalizes

    static Monomial parse(const std::string& text, int ell);

    const std::vector<Factor>& factors() const { return factors_; }
    std::size_t size() const { return factors_.size(); }
    bool empty() const { return factors_.empty(); }
    const Factor& leftmost() const { return factors_.front(); }
    const Factor& rightmost() const { return factors_.back(); }

    int degree() const;              // -sum of depths
    Weight weight(const LatticeContext& ctx) const;
    Shape shape() const;
    int max_depth() const { return factors_.empty() ? 0 : factors_.front().depth; }
    int min_depth() const { return factors_.empty() ? 0 : factors_.back().depth; }
    bool has_depth_zero() const;
    std::vector<Factor> factors_at_depth(int d) const;

    std::string str() const;         // "g~2(-7) g5(-2) g3(-1)"; empty prints "1"

    friend bool operator==(const Monomial&, const Monomial&) = default;
    // std::map key order; not the monomial order (see compare()).
    friend bool operator<(const Monomial& a, const Monomial& b) {
        return a.factors_strict_less(b);
    }

private:
    bool factors_strict_less(const Monomial& o) const;
    std::vector<Factor> factors_;
    int ell_ = 4;
public:
    int ell() const { return ell_; }
};

Monomial normalize(std::vector<Factor> factors, int ell);
Ordering compare(const Monomial& a, const Monomial& b);
Monomial multiply(const Monomial& a, const Monomial& b);
// Lower every factor's degree by n: x_c(-j) -> x_c(-j-n).
Monomial shift(const Monomial& m, int n);
// Raise every factor's degree by n; requires min depth > n for nonempty m
// (the result must stay inside g~_1 tensor t^{-1}C[t^{-1}]).
std::optional<Monomial> unshift(const Monomial& m, int n);

}  // namespace fsb
