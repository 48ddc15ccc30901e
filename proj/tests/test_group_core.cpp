#include "doctest.h"

#include "orbicalc/catalog.hpp"
#include "orbicalc/group.hpp"
#include "orbicalc/numeric.hpp"

#include <set>

using namespace orbicalc;

namespace {

// Number of classes = (1/|G|) * #{commuting pairs}.
int class_count_oracle(const FiniteGroup& g) {
    long pairs = 0;
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b)
            if (g.mul(a, b) == g.mul(b, a)) ++pairs;
    return static_cast<int>(pairs / g.order());
}

int find_perm(const FiniteGroup& g, int degree, const std::vector<std::vector<int>>& gens,
              const std::vector<int>& target) {
    // rebuild element permutations by BFS identical to the library's enumeration order
    std::vector<std::vector<int>> elems{std::vector<int>(degree)};
    for (int i = 0; i < degree; ++i) elems[0][i] = i;
    std::set<std::vector<int>> seen{elems[0]};
    for (size_t i = 0; i < elems.size(); ++i)
        for (auto& s : gens) {
            std::vector<int> c(degree);
            for (int x = 0; x < degree; ++x) c[x] = elems[i][s[x]];
            if (seen.insert(c).second) elems.push_back(c);
        }
    REQUIRE(static_cast<int>(elems.size()) == g.order());
    for (size_t i = 0; i < elems.size(); ++i)
        if (elems[i] == target) return static_cast<int>(i);
    return -1;
}

}  // namespace

TEST_CASE("build_group examples") {
    auto c2 = FiniteGroup::from_table({{0, 1}, {1, 0}});
    CHECK(c2.order() == 2);
    auto s3 = FiniteGroup::from_permutations(3, {{1, 0, 2}, {1, 2, 0}});
    CHECK(s3.order() == 6);
    CHECK_FALSE(s3.is_abelian());
    auto v4 = FiniteGroup::from_permutations(4, {{1, 0, 3, 2}, {2, 3, 0, 1}});
    CHECK(v4.order() == 4);
    CHECK(v4.exponent() == 2);
}

TEST_CASE("build_group rejects bad input") {
    CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1, 1}}), InputError);
    CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1, 2}, {1, 0}}), InputError);
    CHECK_THROWS_AS(FiniteGroup::from_table({{0, 5}, {1, 0}}), InputError);
    CHECK_THROWS_AS(FiniteGroup::from_permutations(3, {{0, 0, 1}}), InputError);
    CHECK_THROWS_AS(FiniteGroup::from_permutations(8, {{1, 2, 3, 4, 5, 6, 7, 0}, {1, 0, 2, 3, 4, 5, 6, 7}}, "", 100),
                    InputError);
    // Latin square that is not associative (order 5 loop)
    std::vector<std::vector<int>> loop = {
        {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
    CHECK_THROWS_AS(FiniteGroup::from_table(loop), InputError);
}

TEST_CASE("catalog groups are valid and have the advertised orders") {
    auto names = catalog_names(24);
    CHECK(names.size() == 32);
    for (const auto& n : names) {
        auto g = catalog_group(n);
        CHECK(g.order() % g.exponent() == 0);
        for (int a = 0; a < g.order(); ++a) {
            CHECK(g.mul(a, g.inv(a)) == 0);
            CHECK(g.mul(0, a) == a);
        }
        // table round trip
        CHECK(FiniteGroup::from_table(g.table()) == g);
    }
    CHECK(catalog_group("Q8").exponent() == 4);
    CHECK(catalog_group("D6").order() == 12);
    CHECK_THROWS_AS(catalog_group("C99"), InputError);
}

TEST_CASE("conjugacy classes") {
    CHECK(catalog_group("S3").num_classes() == 3);
    CHECK(catalog_group("C4").num_classes() == 4);
    CHECK(catalog_group("Q8").num_classes() == 5);
    for (const auto& n : catalog_names(24)) {
        auto g = catalog_group(n);
        CHECK(g.num_classes() == class_count_oracle(g));
        auto cs = conjugacy_classes(g);
        std::vector<int> seen(g.order(), 0);
        for (auto& c : cs.classes)
            for (int x : c) ++seen[x];
        for (int s : seen) CHECK(s == 1);
    }
}

TEST_CASE("cyclic subgroup classes") {
    CHECK(cyclic_subgroup_classes(catalog_group("S3")).size() == 3);
    auto s4 = cyclic_subgroup_classes(catalog_group("S4"));
    REQUIRE(s4.size() == 5);
    std::vector<int> orders;
    for (auto& c : s4) orders.push_back(c.rep.order());
    CHECK(orders == std::vector<int>{1, 2, 2, 3, 4});
    auto q8 = cyclic_subgroup_classes(catalog_group("Q8"));
    REQUIRE(q8.size() == 5);
    for (size_t i = 2; i < 5; ++i) CHECK(q8[i].orbit.size() == 1);
    for (const auto& n : catalog_names(24)) {
        auto g = catalog_group(n);
        int total = 0;
        for (auto& c : cyclic_subgroup_classes(g)) {
            for (size_t i = 0; i < c.orbit.size(); ++i) {
                CHECK(conjugate(g, c.rep, c.witnesses[i]) == c.orbit[i]);
                total += static_cast<int>(generators_of(g, c.orbit[i]).size());
                CHECK(static_cast<long>(generators_of(g, c.orbit[i]).size()) == euler_phi(c.orbit[i].order()));
                // conjugate normalizers via the same witness
                auto n0 = normalizer(g, c.rep).group;
                CHECK(conjugate(g, n0, c.witnesses[i]) == normalizer(g, c.orbit[i]).group);
            }
            CHECK(c.rep == c.orbit.front());
        }
        CHECK(total == g.order());
    }
}

TEST_CASE("normalizer and power map") {
    auto s3 = catalog_group("S3");
    auto classes = cyclic_subgroup_classes(s3);
    auto n = normalizer(s3, classes[2].rep);  // C3
    CHECK(n.group.order() == 6);
    std::set<long> image(n.power.begin(), n.power.end());
    CHECK(image == std::set<long>{1, 2});

    auto s4 = catalog_group("S4");
    int c4 = find_perm(s4, 4, {{1, 0, 2, 3}, {1, 2, 3, 0}}, {1, 2, 3, 0});
    REQUIRE(c4 >= 0);
    auto n4 = normalizer(s4, cyclic_subgroup(s4, c4));
    CHECK(n4.group.order() == 8);
    CHECK(std::set<long>(n4.power.begin(), n4.power.end()) == std::set<long>{1, 3});

    for (const auto& name : catalog_names(24)) {
        auto g = catalog_group(name);
        for (auto& c : cyclic_subgroup_classes(g)) {
            auto nz = normalizer(g, c.rep);
            const int m = c.rep.order();
            for (int u : nz.group.elements) {
                CHECK(gcd_long(nz.power_of(u), m) == 1);
                for (int v : nz.group.elements)
                    CHECK(mod_pos(nz.power_of(g.mul(u, v)) - nz.power_of(u) * nz.power_of(v), m) == 0);
                CHECK(g.conj(u, nz.generator) == g.power(nz.generator, nz.power_of(u)));
            }
            if (g.is_abelian()) {
                CHECK(nz.group.order() == g.order());
                for (long a : nz.power) CHECK(mod_pos(a - 1, m) == 0);
            }
        }
    }
}

TEST_CASE("centralizer") {
    auto s3 = catalog_group("S3");
    int t = find_perm(s3, 3, {{1, 0, 2}, {1, 2, 0}}, {1, 0, 2});
    CHECK(centralizer(s3, t).order() == 2);
    CHECK(centralizer(s3, 0).order() == 6);
    auto q8 = catalog_group("Q8");
    int minus_one = -1;
    for (int x = 0; x < 8; ++x)
        if (q8.element_order(x) == 2) minus_one = x;
    CHECK(centralizer(q8, minus_one).order() == 8);
}

TEST_CASE("double cosets") {
    auto s3 = catalog_group("S3");
    int t = find_perm(s3, 3, {{1, 0, 2}, {1, 2, 0}}, {1, 0, 2});
    auto d = double_cosets(s3, cyclic_subgroup(s3, t));
    REQUIRE(d.size() == 2);
    CHECK(d[0].rep == 0);
    CHECK(d[0].intersection.order() == 2);
    CHECK(d[1].intersection.order() == 1);
    auto classes = cyclic_subgroup_classes(s3);
    auto d3 = double_cosets(s3, classes[2].rep);
    CHECK(d3.size() == 2);
    for (auto& dc : d3) CHECK(dc.intersection.order() == 3);
    CHECK(double_cosets(s3, whole_group(s3)).size() == 1);
    for (const auto& name : catalog_names(24)) {
        auto g = catalog_group(name);
        for (auto& c : cyclic_subgroup_classes(g)) {
            int total = 0;
            for (auto& dc : double_cosets(g, c.rep)) {
                total += static_cast<int>(dc.elements.size());
                CHECK(static_cast<int>(dc.elements.size()) * dc.intersection.order() ==
                      c.rep.order() * c.rep.order());
                CHECK(dc.rep == dc.elements.front());
            }
            CHECK(total == g.order());
        }
    }
}

TEST_CASE("generators_of") {
    auto c4 = catalog_group("C4");
    CHECK(generators_of(c4, whole_group(c4)).size() == 2);
    auto c6 = catalog_group("C6");
    CHECK(generators_of(c6, whole_group(c6)).size() == 2);
    auto c1 = catalog_group("C1");
    CHECK(generators_of(c1, whole_group(c1)) == std::vector<int>{0});
    auto v4 = catalog_group("C2xC2");
    CHECK_THROWS_AS(generators_of(v4, whole_group(v4)), std::invalid_argument);
}

TEST_CASE("subgroup helpers") {
    auto s4 = catalog_group("S4");
    for (int x = 0; x < s4.order(); ++x) {
        auto h = cyclic_subgroup(s4, x);
        CHECK(is_subgroup(s4, h.elements));
        auto hg = subgroup_as_group(s4, h);
        CHECK(hg.order() == h.order());
        CHECK(is_cyclic(s4, h));
    }
    CHECK(subgroup_generated(s4, generating_set(s4, whole_group(s4))).order() == 24);
}
