#include "doctest.h"

#include "orbicalc/cyclotomic.hpp"
#include "orbicalc/lattice.hpp"
#include "orbicalc/linalg.hpp"

#include <complex>
#include <random>

using namespace orbicalc;

namespace {

// Laplace expansion; independent of the elimination code.
Integer det_oracle(const IntMat& m) {
    const int n = static_cast<int>(m.rows());
    if (n == 0) return 1;
    if (n == 1) return m(0, 0);
    Integer s = 0;
    for (int j = 0; j < n; ++j) {
        if (m(0, j) == 0) continue;
        IntMat minor(n - 1, n - 1);
        for (int r = 1; r < n; ++r)
            for (int c = 0, cc = 0; c < n; ++c)
                if (c != j) minor(r - 1, cc++) = m(r, c);
        Integer t = m(0, j) * det_oracle(minor);
        s += (j % 2 == 0) ? t : Integer(-t);
    }
    return s;
}

// gcd of all k x k minors
Integer determinantal_divisor(const IntMat& m, int k) {
    const int r = static_cast<int>(m.rows()), c = static_cast<int>(m.cols());
    Integer g = 0;
    std::vector<int> rs(k), cs(k);
    std::function<void(int, int, std::vector<int>&, int, std::vector<std::vector<int>>&)> choose =
        [&](int start, int n, std::vector<int>& cur, int left, std::vector<std::vector<int>>& out) {
            if (left == 0) { out.push_back(cur); return; }
            for (int i = start; i < n; ++i) {
                cur.push_back(i);
                choose(i + 1, n, cur, left - 1, out);
                cur.pop_back();
            }
        };
    std::vector<std::vector<int>> rsets, csets;
    std::vector<int> cur;
    choose(0, r, cur, k, rsets);
    choose(0, c, cur, k, csets);
    for (auto& rr : rsets)
        for (auto& cc : csets) {
            IntMat sub(k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) sub(i, j) = m(rr[i], cc[j]);
            g = gcd(g, det_oracle(sub));
        }
    return g;
}

IntMat random_int_matrix(std::mt19937_64& rng, int r, int c, int bound) {
    IntMat m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = static_cast<long>(rng() % (2 * bound + 1)) - bound;
    return m;
}

}  // namespace

TEST_CASE("cyclotomic spot values") {
    CHECK(Cyclotomic::zeta(4) * Cyclotomic::zeta(4) == Cyclotomic(-1));
    CHECK(Cyclotomic::zeta(3) + Cyclotomic::zeta(3, 2) == Cyclotomic(-1));
    CHECK(Cyclotomic::zeta(5).conj(2) == Cyclotomic::zeta(5, 2));
    CHECK(Cyclotomic::zeta(2) == Cyclotomic(-1));
    CHECK(Cyclotomic::zeta(6).conductor() == 3);
    CHECK(Cyclotomic::zeta(6) * Cyclotomic::zeta(6) == Cyclotomic::zeta(3));
    CHECK(Cyclotomic::zeta(12, 3) == Cyclotomic::zeta(4));
    CHECK((Cyclotomic::zeta(3) + Cyclotomic::zeta(4)).conductor() == 12);
    CHECK_THROWS_AS(Cyclotomic(0L).inverse(), std::domain_error);
    CHECK_THROWS_AS(Cyclotomic::zeta(4).conj(2), std::domain_error);
}

TEST_CASE("cyclotomic polynomials have the expected degrees") {
    for (long n = 1; n <= 60; ++n)
        CHECK(static_cast<long>(cyclotomic_polynomial(n).size()) - 1 == euler_phi(n));
    CHECK(cyclotomic_polynomial(3) == std::vector<long>{1, 1, 1});
    CHECK(cyclotomic_polynomial(4) == std::vector<long>{1, 0, 1});
}

TEST_CASE("cyclotomic arithmetic agrees with complex evaluation") {
    std::mt19937_64 rng(11);
    const long conductors[] = {1, 3, 4, 5, 7, 8, 9, 12, 15, 16, 20, 24};
    auto random_elem = [&](long n) {
        std::vector<Rational> c(n);
        for (auto& x : c) x = Rational(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 3) + 1);
        return Cyclotomic::from_powers(n, c);
    };
    for (int trial = 0; trial < 300; ++trial) {
        long n1 = conductors[rng() % 12], n2 = conductors[rng() % 12];
        Cyclotomic a = random_elem(n1), b = random_elem(n2);
        std::complex<double> ca = a.to_complex(), cb = b.to_complex();
        CHECK(std::abs((a + b).to_complex() - (ca + cb)) < 1e-9);
        CHECK(std::abs((a * b).to_complex() - (ca * cb)) < 1e-9);
        CHECK(std::abs((a - b).to_complex() - (ca - cb)) < 1e-9);
        CHECK((a * b).conductor() == lcm_long(a.conductor(), b.conductor()));
        if (!b.is_zero()) {
            CHECK(std::abs((a / b).to_complex() - ca / cb) < 1e-7 * (1 + std::abs(ca / cb)));
            CHECK(b * b.inverse() == Cyclotomic(1));
        }
    }
}

TEST_CASE("Galois maps are ring homomorphisms and compose") {
    std::mt19937_64 rng(5);
    for (long n : {5L, 8L, 12L, 15L, 24L}) {
        auto units = units_mod(n);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<Rational> c1(n), c2(n);
            for (auto& x : c1) x = static_cast<long>(rng() % 5) - 2;
            for (auto& x : c2) x = static_cast<long>(rng() % 5) - 2;
            Cyclotomic x = Cyclotomic::from_powers(n, c1), y = Cyclotomic::from_powers(n, c2);
            long a = units[rng() % units.size()], b = units[rng() % units.size()];
            if (x.conductor() != n || y.conductor() != n) continue;
            CHECK((x * y).conj(a) == x.conj(a) * y.conj(a));
            CHECK((x + y).conj(a) == x.conj(a) + y.conj(a));
            CHECK(x.conj(b).conj(a) == x.conj(a * b % n));
        }
    }
}

TEST_CASE("descend finds subfield coordinates") {
    Cyclotomic i = Cyclotomic::zeta(4);
    auto lifted = i.lift(12);
    auto back = lifted.descend(4);
    REQUIRE(back.has_value());
    CHECK(back->conductor() == 4);
    CHECK(*back == i);
    CHECK_FALSE(Cyclotomic::zeta(3).lift(12).descend(4).has_value());
    // sqrt(-3) = 2 z3 + 1 lives in Q(z3)
    Cyclotomic s = Cyclotomic(2L) * Cyclotomic::zeta(3) + Cyclotomic(1L);
    CHECK(s.lift(24).minimized().conductor() == 3);
}

TEST_CASE("smith normal form examples") {
    IntMat id = IntMat::Identity(3, 3);
    CHECK(smith_normal_form(id).d == id);
    IntMat m(2, 2);
    m << 2, 0, 0, 3;
    auto s = smith_normal_form(m);
    CHECK(s.diagonal() == std::vector<Integer>{1, 6});
    IntMat one(1, 1);
    one << 2;
    CHECK(smith_normal_form(one).diagonal() == std::vector<Integer>{2});
}

TEST_CASE("smith normal form properties against minor oracle") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        int r = 1 + static_cast<int>(rng() % 4), c = 1 + static_cast<int>(rng() % 4);
        IntMat m = random_int_matrix(rng, r, c, trial % 2 ? 9 : 3);
        auto s = smith_normal_form(m);
        CHECK(IntMat(s.u * m * s.v) == s.d);
        CHECK(abs(det_oracle(s.u)) == 1);
        CHECK(abs(det_oracle(s.v)) == 1);
        for (int i = 0; i < s.d.rows(); ++i)
            for (int j = 0; j < s.d.cols(); ++j)
                if (i != j) CHECK(s.d(i, j) == 0);
        auto d = s.diagonal();
        Integer prod = 1;
        for (size_t k = 0; k < d.size(); ++k) {
            CHECK(d[k] >= 0);
            if (k + 1 < d.size() && d[k] != 0) CHECK(d[k + 1] % d[k] == 0);
            prod *= d[k];
            CHECK(prod == determinantal_divisor(m, static_cast<int>(k) + 1));
        }
    }
}

TEST_CASE("isomorphism over localization examples") {
    IntMat a(2, 2), b(2, 2), c(2, 2);
    a << 1, 0, 0, 2;
    b << 1, 0, 0, 5;
    c << 1, 0, 0, 4;
    CHECK(is_iso_over_localization(a, Integer(6)));
    CHECK_FALSE(is_iso_over_localization(b, Integer(6)));
    CHECK(is_iso_over_localization(c, Integer(2)));
    CHECK_FALSE(is_iso_over_localization(IntMat::Zero(2, 3), Integer(6)));
    LatticeMap half{RatMat::Identity(2, 2) * Rational(1, 2), 2};
    CHECK(is_iso_over_localization(half, Integer(2)));
    CHECK_FALSE(is_iso_over_localization(half, Integer(3)));
    CHECK_THROWS_AS(LocalizedScalar(Rational(1, 5), Integer(6)), std::domain_error);
    CHECK(LocalizedScalar(Rational(5, 12), Integer(6)).denominator() == 12);
}

TEST_CASE("invariant sublattice examples") {
    IntMat swap(2, 2);
    swap << 0, 1, 1, 0;
    IntMat b = invariant_sublattice({swap});
    REQUIRE(b.cols() == 1);
    CHECK(b(0, 0) == 1);
    CHECK(b(1, 0) == 1);
    CHECK(invariant_sublattice({IntMat::Identity(3, 3)}) == IntMat::Identity(3, 3));
    // inversion on Z[z3] in the basis 1, z3: z3 -> z3^2 = -1 - z3
    IntMat inv(2, 2);
    inv << 1, -1, 0, -1;
    CHECK(invariant_sublattice({inv}).cols() == 1);
    CHECK_THROWS_AS(invariant_sublattice({swap, IntMat::Identity(3, 3)}), std::invalid_argument);
}

TEST_CASE("invariant sublattice is saturated and matches the rational fixed space") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + static_cast<int>(rng() % 5);
        std::vector<IntMat> act;
        for (int g = 0; g < 2; ++g) {
            std::vector<int> p(n);
            std::iota(p.begin(), p.end(), 0);
            std::shuffle(p.begin(), p.end(), rng);
            IntMat m = IntMat::Zero(n, n);
            for (int i = 0; i < n; ++i) m(p[i], i) = (trial % 3 == 0 && i == 0) ? -1 : 1;
            act.push_back(m);
        }
        IntMat b = invariant_sublattice(act);
        CHECK(is_saturated(b));
        for (auto& a : act) CHECK(IntMat(a * b) == b);
        RatMat stacked(0, n);
        for (auto& a : act) {
            RatMat blk = to_rational(a) - RatMat::Identity(n, n);
            RatMat grown(stacked.rows() + n, n);
            grown << stacked, blk;
            stacked = grown;
        }
        CHECK(b.cols() == n - rank<Rational>(stacked));
    }
}

TEST_CASE("hermite form is canonical") {
    IntMat b(3, 2);
    b << 1, 1, 1, 2, 1, 3;
    IntMat c(3, 2);
    c << 2, 3, 3, 5, 4, 7;  // same lattice, different basis
    CHECK(column_hermite_form(b) == column_hermite_form(c));
    CHECK(is_saturated(b));
    IntMat d(2, 1);
    d << 2, 4;
    CHECK_FALSE(is_saturated(d));
}

TEST_CASE("exact linear algebra over cyclotomics") {
    CycMat m(2, 2);
    m << Cyclotomic::zeta(3), Cyclotomic(1L), Cyclotomic(1L), Cyclotomic::zeta(3, 2);
    // det = z3^3 - 1 = 0
    CHECK(rank<Cyclotomic>(m) == 1);
    CycMat k = kernel<Cyclotomic>(m);
    REQUIRE(k.cols() == 1);
    CHECK(is_zero_matrix<Cyclotomic>(mul<Cyclotomic>(m, k)));
    CycMat a(2, 2);
    a << Cyclotomic::zeta(4), Cyclotomic(1L), Cyclotomic(0L), Cyclotomic(2L);
    CycMat ai = inverse<Cyclotomic>(a);
    CHECK(mul<Cyclotomic>(a, ai) == CycMat::Identity(2, 2));
}
