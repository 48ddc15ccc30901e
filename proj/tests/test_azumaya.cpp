#include "doctest.h"

#include "orbicalc/azumaya.hpp"
#include "orbicalc/catalog.hpp"

#include <random>

using namespace orbicalc;

namespace {

std::shared_ptr<const FiniteGroup> grp(const std::string& name) {
    return std::make_shared<const FiniteGroup>(catalog_group(name));
}

// Burnside count of G-orbits on {(g, x) : g x = x}
int inertia_orbits(const GSet& x) {
    const auto& g = *x.group;
    long fixed = 0;
    for (int u = 0; u < g.order(); ++u)
        for (int a = 0; a < g.order(); ++a) {
            if (g.conj(u, a) != a) continue;
            for (int p = 0; p < x.size; ++p)
                if (x.act[a][p] == p && x.act[u][p] == p) ++fixed;
        }
    return static_cast<int>(fixed / g.order());
}

int regular_class_count(const CocycleTable& t) {
    const FiniteGroup& g = *t.group;
    int count = 0;
    for (const auto& cls : g.classes()) {
        const int x = cls.front();
        bool ok = true;
        for (int h = 0; h < g.order(); ++h)
            if (g.mul(x, h) == g.mul(h, x) && t.value(x, h) != t.value(h, x)) ok = false;
        count += ok;
    }
    return count;
}

GSet random_gset(const std::shared_ptr<const FiniteGroup>& g, std::mt19937& rng, int parts) {
    std::uniform_int_distribution<int> pick(0, g->order() - 1);
    GSet x = coset_gset(g, subgroup_generated(*g, {pick(rng)}));
    for (int i = 1; i < parts; ++i) x = disjoint_union(x, coset_gset(g, subgroup_generated(*g, {pick(rng), pick(rng)})));
    return x;
}

CycMat diag(std::vector<long> d) {
    const int r = static_cast<int>(d.size());
    CycMat m(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) m(i, j) = Cyclotomic(i == j ? d[i] : 0L);
    return m;
}

}  // namespace

TEST_CASE("projective representations") {
    auto v4 = grp("C2xC2");
    auto p = ProjectiveRep::pauli(v4);
    CHECK(p.r == 2);
    // the two generators anticommute
    CHECK(p.multiplier(1, 2) == Cyclotomic(-1L) * p.multiplier(2, 1));
    CHECK_THROWS_AS(ProjectiveRep::pauli(grp("C4")), InputError);

    auto c2 = grp("C2");
    CHECK_THROWS_AS(ProjectiveRep::make(c2, {diag({1, -1}), diag({1, -1})}), InputError);
    CHECK_THROWS_AS(ProjectiveRep::make(c2, {diag({1}), diag({1, 1})}), InputError);
    CycMat bad(2, 2);
    bad(0, 0) = Cyclotomic(1L);
    bad(0, 1) = Cyclotomic(1L);
    bad(1, 0) = Cyclotomic(0L);
    bad(1, 1) = Cyclotomic(1L);
    CHECK_THROWS_AS(ProjectiveRep::make(c2, {diag({1, 1}), bad}), InputError);

    for (const auto& alpha : h2_representatives(v4, 2)) {
        auto t = ProjectiveRep::twisted_regular(alpha);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) CHECK(t.multiplier(a, b) == alpha.value(a, b));
    }
}

TEST_CASE("rank one untwisted model is the permutation function algebra") {
    auto g = grp("S3");
    GSet x = coset_gset(g, cyclic_subgroup(*g, 1));
    auto m = equivariant_azumaya(x, ProjectiveRep::trivial(g));
    REQUIRE(m.algebra.dim == x.size);
    auto f = function_algebra(x.size);
    for (int i = 0; i < x.size; ++i)
        for (int j = 0; j < x.size; ++j) CHECK(m.algebra.product(i, j) == f.product(i, j));
    for (int s = 0; s < g->order(); ++s)
        for (int p = 0; p < x.size; ++p) CHECK(m.algebra.action[s][p] == sv_unit(x.apply(s, p)));
}

TEST_CASE("restriction to fixed loci") {
    auto g = grp("C2xC2");
    std::mt19937 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        GSet x = random_gset(g, rng, 3);
        auto m = equivariant_azumaya(x, ProjectiveRep::pauli(g));
        for (int s = 0; s < 4; ++s) {
            auto sigma = cyclic_subgroup(*g, s);
            auto res = restrict_to_fixed(m, sigma);
            int fixed = 0;
            for (int p = 0; p < x.size; ++p) fixed += x.apply(s, p) == p;
            CHECK(res.algebra.dim == 4 * fixed);
            CHECK(static_cast<int>(res.points.size()) == fixed);
            res.algebra.validate();
        }
    }
}

TEST_CASE("strongly graded centers") {
    SUBCASE("trivial twist and trivial action") {
        auto c3 = grp("C3");
        auto f = function_algebra(2);
        f.group = c3;
        f.support = {0, 1};
        f.action.assign(3, {sv_unit(0), sv_unit(1)});
        auto rep = verify_strongly_graded(f, 2);
        CHECK(rep.ok);
        CHECK(rep.component_dims == std::vector<int>{2, 2, 2});
        CHECK(rep.skew_dim == 6);
    }
    SUBCASE("M2 with C2 acting through diag(1,-1)") {
        auto c2 = grp("C2");
        auto m = equivariant_azumaya(GSet::point(c2), ProjectiveRep::make(c2, {diag({1, 1}), diag({1, -1})}));
        auto rep = verify_strongly_graded(m.algebra, 1);
        CHECK(rep.ok);
        CHECK(rep.skew_dim == 8);
        CHECK(rep.tensor_dim == 8);
        CHECK(rep.component_dims == std::vector<int>{1, 1});
    }
    SUBCASE("k + k with the swap over one point is rejected") {
        auto c2 = grp("C2");
        auto f = function_algebra(2);
        f.group = c2;
        f.support = {0, 0};
        f.action = {{sv_unit(0), sv_unit(1)}, {sv_unit(1), sv_unit(0)}};
        auto rep = verify_strongly_graded(f, 1);
        CHECK_FALSE(rep.ok);
        CHECK(rep.component_dims[1] == 0);
        CHECK_FALSE(rep.witness.empty());
    }
    SUBCASE("every model built over cyclic subgroups") {
        std::mt19937 rng(11);
        for (const char* name : {"C2xC2", "S3", "C4", "D4"}) {
            auto g = grp(name);
            GSet x = random_gset(g, rng, 2);
            std::vector<ProjectiveRep> reps{ProjectiveRep::trivial(g)};
            if (std::string(name) == "C2xC2") reps.push_back(ProjectiveRep::pauli(g));
            for (const auto& alpha : h2_representatives(g, 2))
                if (g->order() <= 4) reps.push_back(ProjectiveRep::twisted_regular(alpha));
            for (const auto& rho : reps) {
                auto m = equivariant_azumaya(x, rho);
                for (int s = 0; s < g->order(); ++s) {
                    auto res = restrict_to_fixed(m, cyclic_subgroup(*g, s));
                    auto rep = verify_strongly_graded(res.algebra, static_cast<int>(res.points.size()));
                    CAPTURE(name);
                    CAPTURE(s);
                    CHECK_MESSAGE(rep.ok, rep.witness);
                    CHECK(rep.products_surjective);
                }
            }
        }
    }
}

TEST_CASE("twisted HH0 decomposition in degree zero") {
    SUBCASE("C2 swapping two points") {
        auto c2 = grp("C2");
        GSet x = coset_gset(c2, subgroup_generated(*c2, {}));
        auto rep = twisted_hh0_decomposition(equivariant_azumaya(x, ProjectiveRep::trivial(c2)));
        CHECK(rep.ok);
        CHECK(rep.lhs == 1);
        CHECK(rep.rhs == 1);
    }
    SUBCASE("untwisted function algebras count inertia orbits") {
        std::mt19937 rng(3);
        for (const auto& name : catalog_names(12)) {
            auto g = grp(name);
            GSet x = random_gset(g, rng, 2);
            auto rep = twisted_hh0_decomposition(equivariant_azumaya(x, ProjectiveRep::trivial(g)));
            CAPTURE(name);
            CHECK(rep.ok);
            CHECK(rep.lhs == inertia_orbits(x));
            CHECK(rep.rhs == inertia_orbits(x));
        }
    }
    SUBCASE("point with trivial twist gives conjugacy classes") {
        for (const char* name : {"S3", "Q8", "A4"}) {
            auto g = grp(name);
            auto rep = twisted_hh0_decomposition(equivariant_azumaya(GSet::point(g), ProjectiveRep::trivial(g)));
            CHECK(rep.ok);
            CHECK(rep.lhs == g->num_classes());
        }
    }
    SUBCASE("Pauli twist on the Klein four group") {
        auto v4 = grp("C2xC2");
        auto rep = twisted_hh0_decomposition(equivariant_azumaya(GSet::point(v4), ProjectiveRep::pauli(v4)));
        CHECK(rep.ok);
        CHECK(rep.lhs == 1);
        CHECK(rep.rhs == 1);
    }
    SUBCASE("point with a projective regular twist counts regular classes") {
        for (const char* name : {"C2", "C2xC2", "C4", "S3", "D4", "Q8"}) {
            auto g = grp(name);
            for (long p : {2L, 3L}) {
                if (g->order() % p) continue;
                for (const auto& alpha : h2_representatives(g, p)) {
                    auto rep = twisted_hh0_decomposition(
                        equivariant_azumaya(GSet::point(g), ProjectiveRep::twisted_regular(alpha)));
                    CAPTURE(name);
                    CHECK(rep.ok);
                    CHECK(rep.lhs == regular_class_count(alpha));
                    CHECK(rep.rhs == regular_class_count(alpha));
                }
            }
        }
    }
}
