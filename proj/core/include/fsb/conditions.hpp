#pragma once

#include <optional>
#include <utility>

#include "fsb/monomial.hpp"
#include "fsb/weight_spec.hpp"

namespace fsb {

// Counts of factors at depth j (a) and depth j+1 (b), by color position in
// the descending gamma order. Row data for one frequency window.
struct FreqProfile {
    int window = 0;
    std::vector<int> a;  // size 2*ell-2, indexed by gamma_position
    std::vector<int> b;
};

FreqProfile freq_profile(const Monomial& m, int window, int ell);

// The six frequency inequality families evaluated on one window with the
// given bound (1 for level 1, 2 for level 2).
bool freq_window_ok(const FreqProfile& p, int ell, int bound);

// Pairwise difference condition on x_delta(-i) x_gamma(-j), i >= j >= 1.
bool dc1_pair(const Factor& left, const Factor& right, int ell);
// Same rule with depth-0 factors admitted (imaginary bookkeeping).
bool dc1_pair_ext(const Factor& left, const Factor& right, int ell);

bool dc_level1(const Monomial& m);
bool dc_level1_freq(const Monomial& m);
bool dc_level2_freq(const Monomial& m);

// Frequency check over all windows j >= min_window of the (possibly
// imaginary-extended) monomial.
bool freq_all_windows(const Monomial& m, int bound, int min_window);

bool ic_level1(const Monomial& m, const WeightSpec& lambda);
bool ic_level2(const Monomial& m, const WeightSpec& lambda);

// The depth-0 imaginary factors encoding the initial conditions.
Monomial attach_imaginary(const WeightSpec& lambda);

// IC via the imaginary encoding: the window-0 frequency check of
// multiply(m, attach_imaginary(lambda)) at bound = level.
bool ic_via_imaginary(const Monomial& m, const WeightSpec& lambda);

bool admissible(const Monomial& m, const WeightSpec& lambda);

// Greedy right-to-left split of a level-2 DC monomial into two level-1 DC
// subarrays: every second factor, swapping the target when the alternation
// slot would break the level-1 conditions. Absent when no placement works.
std::optional<std::pair<Monomial, Monomial>> split_level2(const Monomial& m);
// Variant without the dc_level2_freq precondition check, admitting depth-0
// factors; used to split against initial conditions.
std::optional<std::pair<Monomial, Monomial>> split_level2_greedy(const Monomial& m);

// Partition of the depth-1 part of m into two subarrays satisfying the
// level-1 initial conditions on lambda1 resp. lambda2.
std::optional<std::pair<Monomial, Monomial>> split_ic(const Monomial& m,
                                                      const WeightSpec& lambda1,
                                                      const WeightSpec& lambda2);

}  // namespace fsb
