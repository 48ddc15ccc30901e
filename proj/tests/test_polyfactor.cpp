#include "doctest.h"

#include "orbicalc/cyclotomic.hpp"
#include "orbicalc/polyfactor.hpp"

#include <random>

using namespace orbicalc;

namespace {

ZPoly Z(std::initializer_list<long> xs) {
    ZPoly p;
    for (long x : xs) p.emplace_back(x);
    return trim(p);
}

ZPoly phi(long n) {
    ZPoly p;
    for (long c : cyclotomic_polynomial(n)) p.emplace_back(c);
    return p;
}

ZPoly product(const std::vector<ZPoly>& fs) {
    ZPoly p{Integer(1)};
    for (auto& f : fs) p = poly_mul(p, f);
    return p;
}

}  // namespace

TEST_CASE("small factorizations") {
    CHECK(factor_squarefree(Z({-1, 0, 1})) == std::vector<ZPoly>{Z({-1, 1}), Z({1, 1})});
    CHECK(factor_squarefree(Z({1, 0, 0, 0, 1})).size() == 1);       // x^4 + 1 splits mod every prime
    CHECK(factor_squarefree(Z({1, 0, -10, 0, 1})).size() == 1);     // sqrt2 + sqrt3
    CHECK(factor_squarefree(Z({-2, 0, 1})).size() == 1);
    CHECK(factor_squarefree(Z({6, 5, 1})) == std::vector<ZPoly>{Z({2, 1}), Z({3, 1})});
    CHECK(factor_squarefree(Z({-3, 2})) == std::vector<ZPoly>{Z({-3, 2})});
    CHECK(factor_squarefree(Z({5})).empty());
    CHECK_THROWS_AS(factor_squarefree(Z({1, 2, 1})), std::invalid_argument);
    CHECK_THROWS_AS(factor_squarefree(ZPoly{}), std::invalid_argument);
}

TEST_CASE("x^n - 1 splits into cyclotomic polynomials") {
    for (long n = 1; n <= 48; ++n) {
        CAPTURE(n);
        ZPoly f(n + 1, Integer(0));
        f[0] = -1;
        f[n] = 1;
        auto fs = factor_squarefree(f);
        CHECK(fs.size() == divisors(n).size());
        CHECK(product(fs) == f);
        for (long d : divisors(n)) CHECK(std::find(fs.begin(), fs.end(), phi(d)) != fs.end());
    }
}

TEST_CASE("products of known irreducibles") {
    // Swinnerton-Dyer type polynomials for sqrt2+sqrt3+sqrt5 (degree 8) and shifted cyclotomics
    ZPoly sd8 = Z({576, 0, -960, 0, 352, 0, -40, 0, 1});
    std::vector<ZPoly> pieces{sd8, phi(24), phi(15), Z({-7, 0, 0, 1}), Z({3, -1, 0, 0, 2})};
    std::mt19937 rng(5);
    for (int trial = 0; trial < 12; ++trial) {
        std::vector<ZPoly> chosen;
        for (auto& p : pieces)
            if (rng() % 2) chosen.push_back(p);
        if (chosen.empty()) continue;
        ZPoly f = product(chosen);
        auto fs = factor_squarefree(f);
        CHECK(fs.size() == chosen.size());
        CHECK(product(fs) == primitive_part(f));
        for (auto& c : chosen) CHECK(std::find(fs.begin(), fs.end(), primitive_part(c)) != fs.end());
    }
    CHECK(factor_squarefree(sd8).size() == 1);
}
