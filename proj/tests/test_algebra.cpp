#include "doctest.h"

#include "orbicalc/algebra.hpp"
#include "orbicalc/catalog.hpp"

#include <random>

using namespace orbicalc;

namespace {

std::shared_ptr<const FiniteGroup> grp(const std::string& name) {
    return std::make_shared<const FiniteGroup>(catalog_group(name));
}

// function algebra on G/1 with G acting by left translation
FinDimAlgebra regular_functions(const std::shared_ptr<const FiniteGroup>& g) {
    FinDimAlgebra a = function_algebra(g->order());
    a.group = g;
    a.action.assign(g->order(), std::vector<SparseVec>(g->order()));
    for (int x = 0; x < g->order(); ++x)
        for (int p = 0; p < g->order(); ++p) a.action[x][p] = sv_unit(g->mul(x, p));
    return a;
}

// dim of A/[A,A] by dense rank of all commutators of basis pairs
int hh0_dense(const FinDimAlgebra& a) {
    std::vector<std::vector<Cyclotomic>> rows;
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) {
            std::vector<Cyclotomic> r(a.dim, Cyclotomic(0L));
            for (auto& [k, c] : a.product(i, j)) r[k] += c;
            for (auto& [k, c] : a.product(j, i)) r[k] -= c;
            rows.push_back(r);
        }
    int rank = 0;
    for (int col = 0; col < a.dim && rank < static_cast<int>(rows.size()); ++col) {
        int p = -1;
        for (size_t r = rank; r < rows.size(); ++r)
            if (!rows[r][col].is_zero()) { p = static_cast<int>(r); break; }
        if (p < 0) continue;
        std::swap(rows[rank], rows[p]);
        for (size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r][col].is_zero()) continue;
            Cyclotomic f = rows[r][col] / rows[rank][col];
            for (int k = col; k < a.dim; ++k) rows[r][k] -= f * rows[rank][k];
        }
        ++rank;
    }
    return a.dim - rank;
}

// classes whose representative g has alpha(g,h) = alpha(h,g) for every h commuting with g
int regular_class_count(const CocycleTable& t) {
    const FiniteGroup& g = *t.group;
    int count = 0;
    for (const auto& cls : g.classes()) {
        const int x = cls.front();
        bool ok = true;
        for (int h = 0; h < g.order(); ++h)
            if (g.mul(x, h) == g.mul(h, x) && !(t.value(x, h) == t.value(h, x))) ok = false;
        count += ok;
    }
    return count;
}

bool is_central(const FinDimAlgebra& a, const SparseVec& z) {
    for (int i = 0; i < a.dim; ++i)
        if (a.multiply(z, sv_unit(i)) != a.multiply(sv_unit(i), z)) return false;
    return true;
}

}  // namespace

TEST_CASE("sparse eliminator kernel") {
    SparseEliminator el;
    // x0 + x2 = 0, x1 - x2 = 0 in three unknowns
    el.add({{0, Cyclotomic(1L)}, {2, Cyclotomic(1L)}});
    el.add({{1, Cyclotomic(1L)}, {2, Cyclotomic(-1L)}});
    CHECK(el.rank() == 2);
    CHECK_FALSE(el.add({{0, Cyclotomic(2L)}, {1, Cyclotomic(2L)}}));
    auto k = el.kernel(3);
    REQUIRE(k.size() == 1);
    CHECK(sv_get(k[0], 0) == Cyclotomic(-1L) * sv_get(k[0], 2));
    CHECK(sv_get(k[0], 1) == sv_get(k[0], 2));
}

TEST_CASE("center and HH0 of basic algebras") {
    auto m = function_algebra(5);
    m.validate();
    CHECK(center(m).basis.size() == 5);
    CHECK(hh0(m).dim == 5);

    auto m2 = matrix_algebra(2);
    m2.validate();
    CHECK(center(m2).basis.size() == 1);
    CHECK(hh0(m2).dim == 1);
    CHECK(hh0(matrix_algebra(3)).dim == 1);

    auto s3 = group_algebra(grp("S3"));
    s3.validate();
    auto z = center(s3);
    CHECK(z.basis.size() == 3);
    for (auto& v : z.basis) CHECK(is_central(s3, v));
    CHECK(hh0(s3).dim == 3);

    auto sum = direct_sum(m2, s3);
    sum.validate();
    CHECK(hh0(sum).dim == hh0(m2).dim + hh0(s3).dim);
    CHECK(center(sum).basis.size() == 4);
}

TEST_CASE("center and HH0 against dense oracles on catalog group algebras") {
    for (const auto& name : catalog_names(12)) {
        auto g = grp(name);
        auto a = group_algebra(g);
        CAPTURE(name);
        CHECK(hh0(a).dim == g->num_classes());
        CHECK(hh0(a).dim == hh0_dense(a));
        auto z = center(a);
        CHECK(static_cast<int>(z.basis.size()) == g->num_classes());
        for (auto& v : z.basis) CHECK(is_central(a, v));
    }
}

TEST_CASE("validation names the failing basis elements") {
    auto a = function_algebra(2);
    a.set_product(0, 1, sv_unit(0));
    CHECK_THROWS_AS(a.validate(), InputError);

    auto b = function_algebra(2);
    b.unit = sv_unit(0);
    CHECK_THROWS_WITH_AS(b.validate(), doctest::Contains("unit"), InputError);

    // non-associative: b0 b0 = b1, b1 b0 = 0, b0 b1 = b0 on top of unit b2
    auto c = FinDimAlgebra::zero(3);
    for (int i = 0; i < 3; ++i) {
        c.set_product(2, i, sv_unit(i));
        c.set_product(i, 2, sv_unit(i));
    }
    c.unit = sv_unit(2);
    c.set_product(0, 0, sv_unit(1));
    c.set_product(0, 1, sv_unit(0));
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("associativity"), InputError);

    auto g = grp("C2");
    auto d = function_algebra(2);
    d.group = g;
    d.action = {{sv_unit(0), sv_unit(1)}, {sv_unit(0), sv_unit(0)}};
    CHECK_THROWS_AS(d.validate(), InputError);
}

TEST_CASE("skew group algebras") {
    SUBCASE("trivial action gives the tensor product with k[G]") {
        auto g = grp("S3");
        auto a = matrix_algebra(2);
        a.group = g;
        a.action.assign(g->order(), {});
        for (int x = 0; x < g->order(); ++x)
            for (int i = 0; i < a.dim; ++i) a.action[x].push_back(sv_unit(i));
        a.validate();
        auto s = skew_group_algebra(a);
        s.validate();
        const int n = g->order();
        for (int i = 0; i < a.dim; ++i)
            for (int x = 0; x < n; ++x)
                for (int j = 0; j < a.dim; ++j)
                    for (int y = 0; y < n; ++y) {
                        SparseVec want;
                        for (auto& [k, c] : a.product(i, j)) want.emplace_back(k * n + g->mul(x, y), c);
                        CHECK(s.product(i * n + x, j * n + y) == want);
                    }
        CHECK(hh0(s).dim == 3);
    }
    SUBCASE("swap on two points is M2") {
        auto g = grp("C2");
        auto a = function_algebra(2);
        a.group = g;
        a.action = {{sv_unit(0), sv_unit(1)}, {sv_unit(1), sv_unit(0)}};
        a.validate();
        auto s = skew_group_algebra(a);
        s.validate();
        CHECK(s.dim == 4);
        CHECK(center(s).basis.size() == 1);
        CHECK(hh0(s).dim == 1);
    }
    SUBCASE("k with trivial action gives k[G]") {
        auto g = grp("D4");
        auto a = function_algebra(1);
        a.group = g;
        a.action.assign(g->order(), {sv_unit(0)});
        auto s = skew_group_algebra(a);
        auto kg = group_algebra(g);
        REQUIRE(s.dim == kg.dim);
        for (int x = 0; x < g->order(); ++x)
            for (int y = 0; y < g->order(); ++y) CHECK(s.product(x, y) == kg.product(x, y));
    }
    SUBCASE("regular functions crossed with G is a matrix algebra") {
        for (const char* name : {"C3", "S3", "Q8"}) {
            auto g = grp(name);
            auto a = regular_functions(g);
            a.validate();
            auto s = skew_group_algebra(a);
            CHECK(center(s).basis.size() == 1);
            CHECK(hh0(s).dim == 1);
        }
    }
    SUBCASE("center of a graded algebra is graded by class") {
        auto g = grp("C4");
        auto a = group_algebra(g);
        auto z = center(a);
        for (size_t k = 0; k < z.basis.size(); ++k) {
            REQUIRE(z.basis[k].size() == 1);
            CHECK(z.degree[k] == z.basis[k][0].first);
        }
    }
}

TEST_CASE("twisted group algebras and cocycles") {
    auto v4 = grp("C2xC2");
    auto triv = twisted_group_algebra(CocycleTable::trivial(v4));
    auto kg = group_algebra(v4);
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) CHECK(triv.product(x, y) == kg.product(x, y));

    // H^2(C2xC2, Z/2) has rank 3; half the classes pair nontrivially on commuting generators
    CHECK(h2_rank(*v4, 2) == 3);
    auto reps = h2_representatives(v4, 2);
    REQUIRE(reps.size() == 8);
    int central_simple = 0;
    for (const auto& alpha : reps) {
        auto a = twisted_group_algebra(alpha);
        const auto z = center(a).basis.size();
        if (z == 1) {
            ++central_simple;
            CHECK(hh0(a).dim == 1);
            CHECK(alpha_regular_classes(alpha) == std::vector<int>{v4->class_of(0)});
        } else {
            CHECK(z == 4);
        }
    }
    CHECK(central_simple == 4);
    CHECK(reps.front().c == CocycleTable::trivial(v4).c);

    // C2: every class gives a two-dimensional commutative algebra
    auto c2 = grp("C2");
    for (const auto& alpha : h2_representatives(c2, 2)) {
        auto a = twisted_group_algebra(alpha);
        CHECK(center(a).basis.size() == 2);
    }
    CHECK(h2_rank(*c2, 2) == 1);
    CHECK(h2_rank(*grp("C3"), 3) == 1);
    CHECK(h2_rank(*grp("Q8"), 2) == 2);
    CHECK(h2_rank(*grp("D4"), 2) == 3);
    CHECK(h2_rank(*grp("C1"), 2) == 0);
}

TEST_CASE("cocycle validation") {
    auto g = grp("C2");
    CHECK_THROWS_WITH_AS(CocycleTable::make(g, 2, {{0, 1}, {0, 0}}), doctest::Contains("normalized"), InputError);
    CHECK_THROWS_AS(CocycleTable::make(g, 2, {{0, 0}}), InputError);
    CHECK_THROWS_AS(CocycleTable::make(g, 0, {{0, 0}, {0, 0}}), InputError);
    auto c3 = grp("C3");
    // alpha(1,1) = 1 only is not a cocycle
    CHECK_THROWS_WITH_AS(CocycleTable::make(c3, 3, {{0, 0, 0}, {0, 1, 0}, {0, 0, 0}}), doctest::Contains("triple"),
                         InputError);
    CHECK_NOTHROW(CocycleTable::make(g, 2, {{0, 0}, {0, 1}}));
    CHECK_THROWS_AS(h2_representatives(g, 4), InputError);
}

TEST_CASE("HH0 of twisted group algebras counts regular classes") {
    for (const auto& name : catalog_names(16)) {
        auto g = grp(name);
        for (long p : {2L, 3L}) {
            if (g->order() % p != 0) continue;
            auto reps = h2_representatives(g, p);
            for (const auto& alpha : reps) {
                CAPTURE(name);
                CAPTURE(p);
                auto a = twisted_group_algebra(alpha);
                a.validate();
                const int want = regular_class_count(alpha);
                CHECK(hh0(a).dim == want);
                CHECK(static_cast<int>(alpha_regular_classes(alpha).size()) == want);
                CHECK(static_cast<int>(center(a).basis.size()) == want);
                if (g->order() <= 8) CHECK(hh0_dense(a) == want);
            }
        }
    }
}
