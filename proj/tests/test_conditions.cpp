#include <doctest.h>

#include "fsb/conditions.hpp"
#include "fsb/enumerate.hpp"

using namespace fsb;

namespace {
Factor f(int idx, bool neg, int depth) { return Factor{Color{idx, neg}, depth}; }
}  // namespace

TEST_CASE("dc1_pair cases") {
    int ell = 4;
    CHECK(dc1_pair(f(3, false, 2), f(2, false, 1), ell));       // adjacent, delta < gamma
    CHECK(dc1_pair(f(4, false, 2), f(4, true, 1), ell));        // the gamma_l / gamma_~l case
    CHECK(!dc1_pair(f(3, false, 1), f(3, false, 1), ell));      // same depth, not the pair
    CHECK(dc1_pair(f(2, true, 1), f(2, false, 1), ell));        // the allowed same-depth pair
    CHECK(dc1_pair(f(2, false, 3), f(2, false, 1), ell));       // gap two
    CHECK(!dc1_pair(f(2, false, 2), f(3, false, 1), ell));      // adjacent, delta > gamma
    CHECK_THROWS_AS(dc1_pair(f(2, false, 1), f(2, false, 0), ell), std::invalid_argument);
}

TEST_CASE("dc_level1 examples") {
    int ell = 4;
    CHECK(dc_level1(Monomial({}, ell)));
    CHECK(dc_level1(Monomial({f(2, true, 1), f(2, false, 1)}, ell)));
    CHECK(!dc_level1(Monomial({f(2, true, 2), f(2, true, 1), f(2, false, 1)}, ell)));
}

TEST_CASE("dc_level1_freq examples and equivalence") {
    int ell = 4;
    LatticeContext ctx(ell);
    CHECK(dc_level1_freq(Monomial({}, ell)));
    CHECK(!dc_level1_freq(Monomial({f(2, false, 1), f(2, false, 1)}, ell)));
    for (int n = 0; n <= 6; ++n)
        for (const Monomial& m : enumerate_all(ctx, n)) CHECK(dc_level1(m) == dc_level1_freq(m));
}

TEST_CASE("dc_level1 equivalence at rank 5") {
    LatticeContext ctx(5);
    for (int n = 0; n <= 4; ++n)
        for (const Monomial& m : enumerate_all(ctx, n)) CHECK(dc_level1(m) == dc_level1_freq(m));
}

TEST_CASE("ic_level1 examples") {
    int ell = 4;
    WeightSpec l0 = WeightSpec::level1(ell, 0), l1 = WeightSpec::level1(ell, 1);
    WeightSpec lm1 = WeightSpec::level1(ell, ell - 1), ll = WeightSpec::level1(ell, ell);
    CHECK(ic_level1(Monomial({f(ell, false, 1)}, ell), lm1));
    for (int idx = 2; idx <= ell; ++idx)
        for (bool neg : {false, true}) {
            CHECK(!ic_level1(Monomial({f(idx, neg, 1)}, ell), l1));
        }
    CHECK(ic_level1(Monomial({f(2, true, 1), f(2, false, 1)}, ell), l0));
    CHECK(!ic_level1(Monomial({f(3, true, 1), f(3, false, 1)}, ell), l0));
    // annihilation sets from the lemma
    for (int idx = 2; idx <= ell; ++idx) {
        bool lm1_allowed = idx == ell;  // positive colors: only gamma_ell survives
        CHECK(ic_level1(Monomial({f(idx, false, 1)}, ell), lm1) == lm1_allowed);
        CHECK(ic_level1(Monomial({f(idx, true, 1)}, ell), lm1) == (idx != ell));
        CHECK(!ic_level1(Monomial({f(idx, false, 1)}, ell), ll));
        CHECK(ic_level1(Monomial({f(idx, true, 1)}, ell), ll));
    }
}

TEST_CASE("attach_imaginary") {
    int ell = 4;
    CHECK(attach_imaginary(WeightSpec::level1(ell, 0)).empty());
    Monomial lm1 = attach_imaginary(WeightSpec::level1(ell, ell - 1));
    REQUIRE(lm1.size() == 1);
    CHECK(lm1.factors()[0] == f(ell, true, 0));
    Monomial l1 = attach_imaginary(WeightSpec::level1(ell, 1));
    REQUIRE(l1.size() == 2);
    CHECK(l1.factors()[0] == f(2, true, 0));
    CHECK(l1.factors()[1] == f(2, false, 0));
    Monomial fund = attach_imaginary(WeightSpec::fundamental(4, 2));
    REQUIRE(fund.size() == 2);
    CHECK(fund.factors()[0] == f(3, true, 0));
    CHECK(fund.factors()[1] == f(3, false, 0));
    Monomial sum = attach_imaginary(WeightSpec::sum(ell, ell - 1, ell));
    CHECK(sum.size() == 2);
}

TEST_CASE("ic equivalence with the imaginary encoding") {
    LatticeContext ctx(4);
    std::vector<WeightSpec> weights;
    for (int i : {0, 1, 3, 4}) weights.push_back(WeightSpec::level1(4, i));
    for (int a : {0, 1, 3, 4})
        for (int b : {0, 1, 3, 4})
            if (a <= b) weights.push_back(WeightSpec::sum(4, a, b));
    weights.push_back(WeightSpec::fundamental(4, 2));
    for (int n = 0; n <= 6; ++n)
        for (const Monomial& m : enumerate_all(ctx, n))
            for (const WeightSpec& w : weights) {
                bool ic = w.level() == 1 ? ic_level1(m, w) : ic_level2(m, w);
                CHECK(ic == ic_via_imaginary(m, w));
            }
}

TEST_CASE("dc_level2_freq examples") {
    int ell = 4;
    CHECK(dc_level2_freq(Monomial({f(3, false, 2), f(3, true, 1), f(3, false, 1)}, ell)));
    CHECK(!dc_level2_freq(
        Monomial({f(2, false, 1), f(2, false, 1), f(2, false, 1)}, ell)));
}

TEST_CASE("interleaving two level-1 monomials satisfies level-2 DC") {
    LatticeContext ctx(4);
    for (int n1 = 0; n1 <= 4; ++n1)
        for (const Monomial& a : enumerate_all(ctx, n1)) {
            if (!dc_level1(a)) continue;
            for (int n2 = 0; n2 <= 8 - n1 && n2 <= 4; ++n2)
                for (const Monomial& b : enumerate_all(ctx, n2)) {
                    if (!dc_level1(b)) continue;
                    CHECK(dc_level2_freq(multiply(a, b)));
                }
        }
}

TEST_CASE("split_level2 worked examples") {
    {
        int ell = 5;
        Monomial m = Monomial::parse("g3(-4) g~4(-2) g5(-2) g~5(-1) g3(-1)", ell);
        auto sp = split_level2(m);
        REQUIRE(sp.has_value());
        CHECK(sp->first.str() == "g3(-4) g5(-2) g3(-1)");
        CHECK(sp->second.str() == "g~4(-2) g~5(-1)");
    }
    {
        int ell = 6;
        Monomial m = Monomial::parse(
            "g3(-7) g~5(-6) g~4(-5) g6(-5) g~6(-4) g6(-4) g~6(-3) g6(-3) g~6(-2) g6(-2) g5(-1) "
            "g3(-1)",
            ell);
        REQUIRE(dc_level2_freq(m));
        auto sp = split_level2(m);
        REQUIRE(sp.has_value());
        CHECK(sp->first.str() == "g3(-7) g~4(-5) g6(-4) g~6(-3) g6(-2) g3(-1)");
        CHECK(sp->second.str() == "g~5(-6) g6(-5) g~6(-4) g6(-3) g~6(-2) g5(-1)");
    }
    {
        auto sp = split_level2(Monomial({}, 4));
        REQUIRE(sp.has_value());
        CHECK(sp->first.empty());
        CHECK(sp->second.empty());
    }
}

TEST_CASE("split_level2 soundness and greedy completeness at small degrees") {
    LatticeContext ctx(4);
    for (int n = 0; n <= 6; ++n)
        for (const Monomial& m : enumerate_all(ctx, n)) {
            if (!dc_level2_freq(m)) continue;
            auto sp = split_level2(m);
            if (sp) {
                CHECK(dc_level1(sp->first));
                CHECK(dc_level1(sp->second));
                CHECK(multiply(sp->first, sp->second) == m);
            } else {
                // cross-check: no partition exists at all
                auto fs = m.factors();
                bool any = false;
                for (std::uint32_t mask = 0; mask < (1u << fs.size()) && !any; ++mask) {
                    std::vector<Factor> p1, p2;
                    for (std::size_t i = 0; i < fs.size(); ++i)
                        ((mask >> i) & 1u ? p2 : p1).push_back(fs[i]);
                    if (dc_level1(Monomial(p1, 4)) && dc_level1(Monomial(p2, 4))) any = true;
                }
                CHECK(!any);
            }
        }
}

TEST_CASE("ic_level2 examples") {
    int ell = 4;
    WeightSpec fund = WeightSpec::fundamental(4, 2);
    CHECK(!ic_level2(Monomial({f(2, false, 1)}, ell), fund));
    CHECK(ic_level2(Monomial({f(3, true, 1), f(3, false, 1)}, ell), fund));
    WeightSpec sum00 = WeightSpec::sum(ell, 0, 0);
    CHECK(ic_level2(
        Monomial({f(2, true, 1), f(2, true, 1), f(2, false, 1), f(2, false, 1)}, ell), sum00));
}

TEST_CASE("split_ic examples and iff with ic_level2") {
    int ell = 4;
    WeightSpec l0 = WeightSpec::level1(ell, 0);
    {
        auto sp = split_ic(Monomial({}, ell), l0, l0);
        REQUIRE(sp.has_value());
        CHECK(sp->first.empty());
        CHECK(sp->second.empty());
    }
    {
        Monomial m({f(2, true, 1), f(3, false, 1), f(2, false, 1)}, ell);
        auto sp = split_ic(m, l0, l0);
        REQUIRE(sp.has_value());
        std::string a = sp->first.str(), b = sp->second.str();
        bool match = (a == "g~2(-1) g2(-1)" && b == "g3(-1)") ||
                     (b == "g~2(-1) g2(-1)" && a == "g3(-1)");
        CHECK(match);
    }
    LatticeContext ctx(ell);
    std::vector<std::pair<int, int>> pairs = {{0, 0}, {0, 1}, {0, 3}, {0, 4}, {1, 1},
                                              {1, 3}, {1, 4}, {3, 3}, {3, 4}, {4, 4}};
    for (int n = 0; n <= 4; ++n)
        for (const Monomial& m : enumerate_all(ctx, n)) {
            if (m.max_depth() > 1) continue;  // depth-1 multisets only
            for (auto [a, b] : pairs) {
                bool split_ok =
                    split_ic(m, WeightSpec::level1(ell, a), WeightSpec::level1(ell, b))
                        .has_value();
                CHECK(split_ok == ic_level2(m, WeightSpec::sum(ell, a, b)));
            }
        }
}

TEST_CASE("admissible examples") {
    int ell = 4;
    CHECK(admissible(Monomial({}, ell), WeightSpec::level1(ell, 0)));
    CHECK(admissible(Monomial({}, ell), WeightSpec::sum(ell, 3, 4)));
    CHECK(admissible(Monomial({f(2, true, 1), f(2, false, 1)}, ell), WeightSpec::level1(ell, 0)));
    CHECK(!admissible(Monomial({f(3, false, 1)}, ell), WeightSpec::level1(ell, 1)));
}
