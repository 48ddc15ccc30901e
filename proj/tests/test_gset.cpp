#include "doctest.h"

#include "orbicalc/catalog.hpp"
#include "orbicalc/gset.hpp"

#include <random>

using namespace orbicalc;

namespace {

std::shared_ptr<const FiniteGroup> grp(const char* name) {
    return std::make_shared<const FiniteGroup>(catalog_group(name));
}

int element_of_order(const FiniteGroup& g, int k) {
    for (int x = 0; x < g.order(); ++x)
        if (g.element_order(x) == k) return x;
    return -1;
}

GSet random_gset(const std::shared_ptr<const FiniteGroup>& g, std::mt19937& rng, int parts) {
    std::uniform_int_distribution<int> pick(0, g->order() - 1);
    GSet x = coset_gset(g, subgroup_generated(*g, {pick(rng)}));
    for (int i = 1; i < parts; ++i) x = disjoint_union(x, coset_gset(g, subgroup_generated(*g, {pick(rng), pick(rng)})));
    return x;
}

// Burnside count of G-orbits on {(g, x) : g x = x} under u.(g, x) = (u g u^-1, u x)
int inertia_orbits_oracle(const GSet& x) {
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

}  // namespace

TEST_CASE("G-set validation") {
    auto c2 = grp("C2");
    CHECK_NOTHROW(GSet::make(c2, {{0, 1}, {1, 0}}));
    CHECK_THROWS_AS(GSet::make(c2, {{1, 0}, {0, 1}}), InputError);
    CHECK_THROWS_AS(GSet::make(c2, {{0, 1}, {1, 1}}), InputError);
    CHECK_THROWS_AS(GSet::make(c2, {{0, 1}}), InputError);
    CHECK_THROWS_AS(GSet::make(c2, {{0, 1}, {0, 2}}), InputError);
    auto c3 = grp("C3");
    // a 3-cycle whose square is not the other nontrivial row
    CHECK_THROWS_AS(GSet::make(c3, {{0, 1, 2}, {1, 2, 0}, {1, 2, 0}}), InputError);
}

TEST_CASE("fixed points") {
    auto s3 = grp("S3");
    int t = element_of_order(*s3, 2);
    GSet x = coset_gset(s3, cyclic_subgroup(*s3, t));
    CHECK(x.size == 3);
    auto fp = fixed_points(x, cyclic_subgroup(*s3, t));
    CHECK(fp.points.size() == 1);
    CHECK(fp.normalizer.order() == 2);
    CHECK(fixed_points(x, Subgroup{{0}}).points.size() == 3);
    auto c4 = grp("C4");
    GSet reg = coset_gset(c4, Subgroup{{0}});
    CHECK(fixed_points(reg, cyclic_subgroup(*c4, element_of_order(*c4, 2))).points.empty());
    // residual action of N(H) preserves the fixed locus
    auto s4 = grp("S4");
    std::mt19937 rng(3);
    GSet y = random_gset(s4, rng, 4);
    auto h = cyclic_subgroup(*s4, element_of_order(*s4, 2));
    auto f = fixed_points(y, h);
    for (int p = 0; p < y.size; ++p) {
        bool fixed = true;
        for (int a : h.elements) fixed = fixed && y.act[a][p] == p;
        CHECK(fixed == std::binary_search(f.points.begin(), f.points.end(), p));
    }
    CHECK(f.residual.group->order() == f.normalizer.order());
}

TEST_CASE("equivariant K0 ranks") {
    for (auto name : {"S3", "Q8", "A4"}) {
        auto g = grp(name);
        CHECK(equivariant_k0(GSet::point(g), Mode::Split).rank() == g->num_classes());
        CHECK(equivariant_k0(coset_gset(g, Subgroup{{0}}), Mode::Split).rank() == 1);
    }
    auto s3 = grp("S3");
    GSet x = coset_gset(s3, cyclic_subgroup(*s3, element_of_order(*s3, 2)));
    auto k = equivariant_k0(x, Mode::Split);
    CHECK(k.rank() == 2);
    CHECK(k.orbits.size() == 1);
    CHECK(k.orbits[0].stabilizer.order() == 2);
    // multiplication is orbitwise and unital
    RatVec u = k.unit();
    RatVec e = RatVec::Zero(2);
    e(1) = 1;
    CHECK(k.multiply(u, e) == e);
}

TEST_CASE("R(G) action") {
    auto s3 = grp("S3");
    GSet x = coset_gset(s3, cyclic_subgroup(*s3, element_of_order(*s3, 2)));
    auto k = equivariant_k0(x, Mode::Split);
    auto rg = rep_ring(*s3, Mode::Split);
    RatVec xi = RatVec::Zero(2);
    xi(0) = 1;  // trivial of C2
    CHECK(rg_action(k, rg, rg.unit(), xi) == xi);
    int two = -1;
    for (int i = 0; i < rg.table->size(); ++i)
        if (rg.table->degree(i) == 2) two = i;
    RatVec v = RatVec::Zero(rg.rank());
    v(two) = 1;
    RatVec out = rg_action(k, rg, v, xi);
    CHECK(out == (RatVec(2) << 1, 1).finished());
    // regular representation on the point multiplies by sum chi(e) chi
    auto kp = equivariant_k0(GSet::point(s3), Mode::Split);
    RatVec reg(rg.rank());
    for (int i = 0; i < rg.rank(); ++i) reg(i) = rg.table->degree(i);
    for (int j = 0; j < rg.rank(); ++j) {
        RatVec ej = RatVec::Zero(rg.rank());
        ej(j) = 1;
        CHECK(rg_action(kp, rg, reg, ej) == rg.multiply(reg, ej));
    }
    // owner mismatch
    auto rc3 = rep_ring(catalog_group("C3"), Mode::Split);
    CHECK_THROWS_AS(rg_action(k, rc3, rc3.unit(), xi), InputError);
}

TEST_CASE("orbifold examples") {
    auto s3 = grp("S3");
    GSet x = coset_gset(s3, cyclic_subgroup(*s3, element_of_order(*s3, 2)));
    auto d = orbifold_decompose(x, Mode::Split);
    CHECK(d.summand_ranks() == std::vector<int>{1, 1, 0});
    auto c2 = grp("C2");
    auto f = orbifold_decompose(GSet::make(c2, {{0, 1}, {1, 0}}), Mode::Split);
    CHECK(f.summand_ranks() == std::vector<int>{1, 0});
}

TEST_CASE("orbifold of a point is the Vistoli map") {
    for (auto& name : catalog_names(24)) {
        CAPTURE(name);
        auto g = std::make_shared<const FiniteGroup>(catalog_group(name));
        for (Mode m : {Mode::Split, Mode::Rational}) {
            auto d = orbifold_decompose(GSet::point(g), m);
            auto v = vistoli_decompose(*g, m);
            CHECK(d.map.matrix == v.map.matrix);
            CHECK(d.summand_ranks() == v.summand_ranks());
            REQUIRE(d.block_snf.size() == 1);
            CHECK(d.block_snf[0] == v.snf_diagonal);
        }
    }
}

TEST_CASE("orbifold and inertia on random G-sets") {
    std::mt19937 rng(11);
    for (auto name : {"C6", "S3", "D4", "Q8", "A4", "C2xC4", "S4", "C12"}) {
        CAPTURE(name);
        auto g = grp(name);
        auto vs = vistoli_decompose(*g, Mode::Split);
        auto vr = vistoli_decompose(*g, Mode::Rational);
        for (int trial = 0; trial < 4; ++trial) {
            GSet x = random_gset(g, rng, 1 + trial);
            auto ds = orbifold_decompose(x, Mode::Split);
            auto dr = orbifold_decompose(x, Mode::Rational);
            int stab_classes = 0;
            for (auto& o : ds.k0.orbits) stab_classes += subgroup_as_group(*g, o.stabilizer).num_classes();
            CHECK(ds.k0.rank() == stab_classes);
            CHECK(ds.map.matrix.rows() == ds.k0.rank());
            CHECK(dr.map.matrix.rows() == dr.k0.rank());
            std::string w;
            CHECK_MESSAGE(check_idempotent_projection(ds, vs, &w), w);
            CHECK_MESSAGE(check_idempotent_projection(dr, vr, &w), w);
            auto in = inertia_decompose(x);
            CHECK(in.dimension == inertia_orbits_oracle(x));
            CHECK(in.dimension == stab_classes);
            CHECK(in.k0_rank == stab_classes);
            CHECK(in.bijective);
            CHECK(in.blocks_are_tables);
        }
    }
}

TEST_CASE("inertia examples") {
    auto s3 = grp("S3");
    GSet x = coset_gset(s3, cyclic_subgroup(*s3, element_of_order(*s3, 2)));
    auto in = inertia_decompose(x);
    CHECK(in.dimension == 2);
    CHECK(inertia_decompose(GSet::point(s3)).dimension == 3);
    GSet free2 = disjoint_union(coset_gset(s3, Subgroup{{0}}), coset_gset(s3, Subgroup{{0}}));
    CHECK(inertia_decompose(free2).dimension == 2);
}

TEST_CASE("functoriality of the orbifold map") {
    for (auto name : {"S3", "D4", "A4"}) {
        CAPTURE(name);
        auto g = grp(name);
        // G/K -> G/H for K inside H, and the collapse of a union onto a point
        int a = element_of_order(*g, 2);
        Subgroup k = cyclic_subgroup(*g, a);
        int b = element_of_order(*g, 3);
        if (b < 0) b = element_of_order(*g, 4);
        Subgroup h = subgroup_generated(*g, {a, b});
        REQUIRE(is_subset(k, h));
        GSet x = coset_gset(g, k), y = coset_gset(g, h);
        std::vector<int> f(x.size);
        for (int p = 0; p < x.size; ++p) {
            // the coset of p contains the least element r with r.0 = p
            int r = 0;
            while (x.act[r][0] != p) ++r;
            f[p] = y.act[r][0];
        }
        REQUIRE(is_equivariant(x, y, f));
        for (Mode m : {Mode::Split, Mode::Rational}) {
            auto rep = check_functoriality(orbifold_decompose(x, m), orbifold_decompose(y, m), f);
            CHECK_MESSAGE(rep.ok, rep.witness);
            GSet u = disjoint_union(x, y);
            std::vector<int> to_point(u.size, 0);
            auto rp = check_functoriality(orbifold_decompose(u, m), orbifold_decompose(GSet::point(g), m), to_point);
            CHECK_MESSAGE(rp.ok, rp.witness);
        }
    }
    auto g = grp("C2");
    GSet x = GSet::make(g, {{0, 1}, {1, 0}});
    CHECK_THROWS_AS(k0_pullback(equivariant_k0(x, Mode::Split), equivariant_k0(x, Mode::Split), {0, 0}), InputError);
}

TEST_CASE("Mackey scalar") {
    auto s3 = catalog_group("S3");
    for (auto& cls : cyclic_subgroup_classes(s3)) {
        auto r = mackey_check(s3, cls);
        CHECK(r.ok);
        if (cls.rep.order() == 2) CHECK(r.index == 1);
        if (cls.rep.order() == 3) CHECK(r.index == 2);
    }
    for (auto& name : catalog_names(24)) {
        CAPTURE(name);
        auto g = catalog_group(name);
        for (auto& cls : cyclic_subgroup_classes(g)) {
            auto r = mackey_check(g, cls);
            CHECK(r.ok);
            CHECK(r.double_coset_sum);
            CHECK(r.index == normalizer(g, cls.rep).group.order() / cls.rep.order());
            if (g.is_abelian()) CHECK(r.index == g.order() / cls.rep.order());
            for (auto& t : r.terms)
                CHECK(t.in_normalizer == (t.intersection_order == cls.rep.order()));
        }
    }
}
