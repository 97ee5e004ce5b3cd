#include <doctest.h>

#include <algorithm>

#include "fsb/enumerate.hpp"
#include "fsb/monomial.hpp"

using namespace fsb;

TEST_CASE("normalize and printing") {
    CHECK(Monomial({}, 4).str() == "1");
    Monomial m({Factor{Color{3, false}, 1}, Factor{Color{2, false}, 1}}, 4);
    CHECK(m.str() == "g3(-1) g2(-1)");  // greater factor prints further right
    CHECK(Monomial::parse("g2(-1) g3(-1)", 4) == m);
    std::string text = "g~2(-7) g~4(-6) g5(-2) g3(-1)";
    CHECK(Monomial::parse(text, 5).str() == text);
    CHECK(Monomial::parse("1", 4).empty());
}

TEST_CASE("shape of the worked example") {
    // four factors at depths 4,4,3,2 regardless of colors
    Monomial m({Factor{Color{4, false}, 4}, Factor{Color{3, true}, 4}, Factor{Color{2, false}, 3},
                Factor{Color{4, true}, 2}},
               4);
    Shape s = m.shape();
    CHECK(s.counts.at(2) == 1);
    CHECK(s.counts.at(3) == 1);
    CHECK(s.counts.at(4) == 2);
}

TEST_CASE("compare basics") {
    int ell = 4;
    Monomial a({Factor{Color{3, false}, 1}}, ell);
    Monomial b({Factor{Color{2, false}, 1}}, ell);
    CHECK(compare(a, b) == Ordering::LT);  // gamma_3 < gamma_2
    Monomial c({Factor{Color{2, false}, 2}}, ell);
    Monomial d({Factor{Color{2, false}, 1}, Factor{Color{2, false}, 1}}, ell);
    CHECK(compare(c, d) == Ordering::LT);  // shape rule at j0 = 1
    CHECK(compare(c, c) == Ordering::EQ);
}

TEST_CASE("multiply and shift") {
    int ell = 4;
    Monomial m({Factor{Color{2, false}, 1}}, ell);
    CHECK(multiply(m, Monomial({}, ell)) == m);
    Monomial two = multiply(m, Monomial({Factor{Color{3, false}, 2}}, ell));
    CHECK(two.size() == 2);
    CHECK(two.degree() == -3);
    CHECK(shift(Monomial({}, ell), 5).empty());
    CHECK(shift(Monomial({Factor{Color{4, false}, 1}}, ell), 1) ==
          Monomial({Factor{Color{4, false}, 2}}, ell));
    Monomial big({Factor{Color{2, true}, 3}, Factor{Color{4, false}, 1}}, ell);
    CHECK(shift(big, 2).degree() == big.degree() - 2 * static_cast<int>(big.size()));
    CHECK(*unshift(shift(big, 2), 2) == big);
    CHECK(!unshift(big, 1).has_value());  // depth-1 factor cannot rise
}

TEST_CASE("normalize idempotent and permutation invariant") {
    LatticeContext ctx(4);
    auto all3 = enumerate_all(ctx, 3);
    for (const Monomial& m : all3) {
        std::vector<Factor> fs = m.factors();
        std::reverse(fs.begin(), fs.end());
        CHECK(Monomial(fs, 4) == m);
        CHECK(compare(Monomial(fs, 4), m) == Ordering::EQ);
    }
}

TEST_CASE("compare is a total order on small degrees") {
    LatticeContext ctx(4);
    std::vector<Monomial> all;
    for (int n = 0; n <= 5; ++n) {
        auto v = enumerate_all(ctx, n);
        all.insert(all.end(), v.begin(), v.end());
    }
    std::sort(all.begin(), all.end(),
              [](const Monomial& a, const Monomial& b) { return compare(a, b) == Ordering::LT; });
    // agreement of compare with the sorted ranking gives antisymmetry and
    // transitivity in one sweep
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            Ordering o = compare(all[i], all[j]);
            Ordering r = compare(all[j], all[i]);
            if (o == Ordering::EQ) {
                CHECK(r == Ordering::EQ);
                CHECK(all[i] == all[j]);
            } else {
                CHECK(o == Ordering::LT);
                CHECK(r == Ordering::GT);
            }
        }
}

TEST_CASE("order compatible with multiplication (uredjaj)") {
    LatticeContext ctx(4);
    std::vector<Monomial> small;
    for (int n = 0; n <= 2; ++n) {
        auto v = enumerate_all(ctx, n);
        small.insert(small.end(), v.begin(), v.end());
    }
    for (const Monomial& a : small)
        for (const Monomial& b : small) {
            if (compare(a, b) == Ordering::GT) continue;
            for (const Monomial& c : small)
                for (const Monomial& d : small) {
                    if (compare(c, d) == Ordering::GT) continue;
                    Ordering prod = compare(multiply(a, c), multiply(b, d));
                    CHECK(prod != Ordering::GT);
                    bool strict =
                        compare(a, b) == Ordering::LT || compare(c, d) == Ordering::LT;
                    if (strict) CHECK(prod == Ordering::LT);
                }
        }
}
