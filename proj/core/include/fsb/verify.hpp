#pragma once

#include <string>
#include <vector>

#include "fsb/enumerate.hpp"
#include "fsb/tensor.hpp"

namespace fsb {

struct SpanReport {
    std::string weight;
    int degree = 0;
    long pbw_count = 0;
    long pbw_rank = 0;
    long admissible_count = 0;
    long admissible_rank = 0;
    bool pass = false;
    long elapsed_ms = 0;
};

struct CheckReport {
    std::string name;
    long checked = 0;
    long failures = 0;
    std::vector<std::string> failure_notes;
    bool pass() const { return failures == 0; }
};

// x(pi) v: factors applied right to left (they commute; see tests).
FockVector monomial_apply(const Cocycle& eps, const Monomial& m, const FockVector& v);
TensorVector monomial_apply(const Cocycle& eps, const Monomial& m, const TensorVector& v);

// Exact ranks of the PBW monomial vectors at degree -n against the
// admissible subset, blocked by weight.
SpanReport span_report(const Cocycle& eps, const WeightSpec& lambda, int n);

// Product relations x_d(z)x_g(z) = 0 (d != ~g), the proportionality of
// x_~g(z)x_g(z) across colors, and the triple relation on the vacuum.
CheckReport check_relations_level1(const Cocycle& eps, int n_max);
// The level-2 triple relations on the tensor vacuum.
CheckReport check_relations_level2(const Cocycle& eps, int n_max);

// The concrete annihilation / proportionality statements behind the initial
// conditions for the given weight.
CheckReport check_ic_identities(const Cocycle& eps, const WeightSpec& lambda);

// x_alpha(n) e(omega) = e(omega) x_alpha(n + <omega,alpha>) on graded pieces
// down to degree -n_max.
CheckReport check_simple_current(const Cocycle& eps, int n_max);

// True when u and v are both nonzero and span a rank-1 pair.
bool proportional(const FockVector& u, const FockVector& v);
bool proportional(const TensorVector& u, const TensorVector& v);

}  // namespace fsb
