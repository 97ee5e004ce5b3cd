#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace fsb {

using Rat = mpq_class;
using Int = mpz_class;

// Weights of D_ell in the epsilon-basis. Every element of the weight lattice
// P has coordinates in (1/2)Z, so we store doubled integer coordinates and
// stay exact without touching mpq until a pairing is requested.
class Weight {
public:
    Weight() = default;
    explicit Weight(std::size_t rank) : c2_(rank, 0) {}
    static Weight from_doubled(std::vector<int> doubled) {
        Weight w;
        w.c2_ = std::move(doubled);
        return w;
    }
    static Weight epsilon(std::size_t rank, std::size_t i);  // 1-based i

    std::size_t rank() const { return c2_.size(); }
    int doubled(std::size_t i) const { return c2_.at(i); }  // 0-based
    const std::vector<int>& doubled_coords() const { return c2_; }
    Rat coord(std::size_t i) const { return Rat(c2_.at(i), 2); }
    std::vector<Rat> coords() const;

    bool is_zero() const;
    bool is_integral() const;      // all coordinates in Z
    bool is_half_odd() const;      // all coordinates in Z + 1/2
    int coord_sum_doubled() const; // sum of doubled coordinates

    Weight& operator+=(const Weight& o);
    Weight& operator-=(const Weight& o);
    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    Weight operator-() const;
    Weight scaled(int k) const;

    friend bool operator==(const Weight& a, const Weight& b) { return a.c2_ == b.c2_; }
    friend std::strong_ordering operator<=>(const Weight& a, const Weight& b) {
        return a.c2_ <=> b.c2_;
    }

    std::string str() const;  // "(3/2 1/2 1/2 -1/2)"

private:
    std::vector<int> c2_;
};

// Euclidean pairing in the epsilon-basis; the Killing form normalized so
// that <theta,theta> = 2.
Rat pairing(const Weight& x, const Weight& y);

// A color is an element of Gamma: g<i> encodes gamma_i = eps_1 + eps_i,
// g~<i> encodes gamma_under_i = eps_1 - eps_i, for i in 2..ell.
struct Color {
    int index = 2;          // 2..ell
    bool negative = false;  // true for gamma_under
    friend bool operator==(const Color&, const Color&) = default;
    std::string str() const {
        return (negative ? "g~" : "g") + std::to_string(index);
    }
};

Color opposite(const Color& c);

// Position in the descending order gamma_2 > ... > gamma_ell > gamma_~ell >
// ... > gamma_~2; position 0 is the largest color.
int gamma_position(const Color& c, int ell);

// color_less(a,b,ell): a < b in the order above.
inline bool color_less(const Color& a, const Color& b, int ell) {
    return gamma_position(a, ell) > gamma_position(b, ell);
}

enum class CosetClass { Q, QOmega1, QOmegaLm1, QOmegaL };
std::string coset_name(CosetClass c);

struct SpinorLabel {
    std::vector<int> sigma;  // strictly increasing subset of 1..ell
};

class LatticeContext {
public:
    explicit LatticeContext(int ell);

    int ell() const { return ell_; }
    const std::vector<Weight>& simple_roots() const { return simple_roots_; }
    const Weight& simple_root(int i) const { return simple_roots_.at(i - 1); } // 1-based
    // omega_0 = 0, omega_1..omega_ell.
    const Weight& fundamental_weight(int i) const { return fundamental_weights_.at(i); }
    const Weight& omega() const { return fundamental_weights_[1]; } // the minuscule omega_1
    const Weight& theta() const { return theta_; }
    const std::vector<Color>& gamma_set() const { return gamma_set_; }

    Weight root_of(const Color& c) const;
    Weight zero() const { return Weight(static_cast<std::size_t>(ell_)); }

    // All 2*ell*(ell-1) roots of D_ell.
    std::vector<Weight> all_roots() const;
    // The positive roots eps_i - eps_j and eps_i + eps_j, i < j.
    std::vector<Weight> positive_roots() const;

    bool in_root_lattice(const Weight& w) const;   // w in Q
    bool in_weight_lattice(const Weight& w) const; // w in P
    CosetClass coset_class(const Weight& w) const; // throws if w not in P

    Weight spinor_weight(const SpinorLabel& sigma) const;
    // Recover Sigma from a pure spinor weight (all coords +-1/2); throws otherwise.
    SpinorLabel spinor_label(const Weight& w) const;

    // Weyl dimension formula for a dominant integral weight of D_ell.
    Int weyl_dimension(const Weight& lambda) const;
    bool is_dominant(const Weight& lambda) const;

private:
    int ell_;
    std::vector<Weight> simple_roots_;
    std::vector<Weight> fundamental_weights_;
    Weight theta_;
    std::vector<Color> gamma_set_;
};

}  // namespace fsb
