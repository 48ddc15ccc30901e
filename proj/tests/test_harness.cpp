#include "doctest.h"

#include "orbicalc/azumaya.hpp"
#include "orbicalc/catalog.hpp"
#include "orbicalc/harness.hpp"

#include <set>

using namespace orbicalc;

namespace {

std::shared_ptr<const FiniteGroup> grp(const std::string& name) {
    return std::make_shared<const FiniteGroup>(catalog_group(name));
}

int orbit_count(const GSet& x) {
    std::set<std::vector<int>> orbits;
    for (int p = 0; p < x.size; ++p) orbits.insert(x.orbit(p));
    return static_cast<int>(orbits.size());
}

bool same_algebra(const FinDimAlgebra& a, const FinDimAlgebra& b) {
    return a.dim == b.dim && a.table == b.table && a.unit == b.unit && a.grading == b.grading && a.action == b.action &&
           a.support == b.support;
}

}  // namespace

TEST_CASE("bounded draws") {
    Rng a(1), b(1);
    for (int i = 0; i < 1000; ++i) {
        auto x = a.below(7);
        CHECK(x < 7);
        CHECK(x == b.below(7));
    }
    Rng c(5);
    for (int i = 0; i < 10; ++i) CHECK(c.below(1) == 0);
    CHECK_THROWS(c.below(0));
    // all residues show up
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 200; ++i) seen.insert(c.below(5));
    CHECK(seen.size() == 5);
    CHECK(derive_seed(7, "S3") == derive_seed(7, "S3"));
    CHECK(derive_seed(7, "S3") != derive_seed(7, "S4"));
    CHECK(derive_seed(7, "S3") != derive_seed(8, "S3"));
}

TEST_CASE("subgroup enumeration") {
    const std::map<std::string, size_t> counts{{"C1", 1}, {"C4", 3},  {"C6", 4},  {"S3", 6},  {"C2xC2", 5},
                                               {"Q8", 6}, {"D4", 10}, {"A4", 10}, {"S4", 30}, {"C12", 6}};
    for (auto& [name, n] : counts) {
        CAPTURE(name);
        auto g = catalog_group(name);
        auto subs = all_subgroups(g);
        CHECK(subs.size() == n);
        for (auto& h : subs) CHECK(is_subgroup(g, h.elements));
        CHECK(std::is_sorted(subs.begin(), subs.end()));
    }
}

TEST_CASE("seeded G-sets") {
    auto c2 = grp("C2");
    CHECK_THROWS_AS(generate_gsets(c2, 0, 1), InputError);
    auto one = generate_gsets(c2, 1, 42);
    REQUIRE(one.size() == 1);
    CHECK(one[0].size >= 1);
    CHECK(one[0].act == generate_gsets(c2, 1, 42)[0].act);

    for (const char* name : {"S3", "C23", "S4", "D6"}) {
        auto g = grp(name);
        auto a = generate_gsets(g, 30, 9);
        auto b = generate_gsets(g, 30, 9);
        auto c = generate_gsets(g, 30, 10);
        bool differs = false;
        for (int i = 0; i < 30; ++i) {
            CAPTURE(name);
            CHECK(a[i].act == b[i].act);
            differs = differs || a[i].act != c[i].act;
            CHECK(a[i].size >= 1);
            CHECK(a[i].size <= 64);
            CHECK(orbit_count(a[i]) <= 4);
            // revalidates the action
            CHECK_NOTHROW(GSet::make(g, a[i].act));
            // each orbit is G/H for its stabilizer
            for (int p = 0; p < a[i].size; ++p) CHECK(a[i].orbit(p).size() * a[i].stabilizer(p).order() == static_cast<size_t>(g->order()));
        }
        CHECK(differs);
    }
}

TEST_CASE("group and G-set JSON") {
    auto s3 = catalog_group("S3");
    CHECK(group_from_json(Json("S3")) == s3);
    CHECK(group_from_json(group_to_json(s3)) == s3);
    Json perm{{"degree", 3}, {"perm_gens", {{1, 0, 2}, {1, 2, 0}}}};
    CHECK(group_from_json(perm).order() == 6);
    CHECK_THROWS_AS(group_from_json(Json("NoSuchGroup")), InputError);
    CHECK_THROWS_AS(group_from_json(Json{{"order", 2}, {"mul", {{0, 1}, {1, 1}}}}), InputError);
    CHECK_THROWS_AS(group_from_json(Json{{"order", 3}, {"mul", {{0, 1}, {1, 0}}}}), InputError);
    CHECK_THROWS_AS(group_from_json(Json{{"mul", "x"}}), InputError);
    CHECK_THROWS_AS(group_from_json(Json::object()), InputError);

    auto g = grp("S3");
    for (auto& x : generate_gsets(g, 5, 3)) {
        GSet y = gset_from_json(gset_to_json(x));
        CHECK(y.act == x.act);
        CHECK(*y.group == *g);
    }
    CHECK_THROWS_AS(gset_from_json(Json{{"group", "C2"}, {"size", 2}, {"act", {{0, 1}, {0, 0}}}}), InputError);
    CHECK_THROWS_AS(gset_from_json(Json{{"group", "C2"}, {"size", 3}, {"act", {{0, 1}, {1, 0}}}}), InputError);
    CHECK_THROWS_AS(gset_from_json(Json{{"group", "C2"}, {"size", 2}, {"act", {{0, 1}, {1, 0}}}}, grp("C3")), InputError);
}

TEST_CASE("scalar and cocycle JSON") {
    CHECK(rational_from_json(Json("-3/4")) == Rational(-3) / 4);
    CHECK(rational_from_json(Json(5)) == Rational(5));
    CHECK_THROWS_AS(rational_from_json(Json("1/0")), InputError);
    CHECK_THROWS_AS(rational_from_json(Json(0.5)), InputError);
    for (auto z : {Cyclotomic::zeta(5, 2), Cyclotomic::zeta(12, 1) + Cyclotomic(Rational(1) / 3), Cyclotomic(7L)})
        CHECK(cyclotomic_from_json(to_json(z)) == z);
    // any power list is accepted and reduced
    CHECK(cyclotomic_from_json(Json{{"conductor", 3}, {"coeffs", {1, 1, 1}}}) == Cyclotomic(0L));
    CHECK_THROWS_AS(cyclotomic_from_json(Json{{"conductor", 0}, {"coeffs", {1}}}), InputError);

    auto v4 = grp("C2xC2");
    for (auto& alpha : h2_representatives(v4, 2)) {
        auto back = cocycle_from_json(cocycle_to_json(alpha), v4);
        CHECK(back.c == alpha.c);
        CHECK(back.root_order == 2);
    }
    Json bad{{"root_order", 2}, {"table", {{0, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}}};
    CHECK_THROWS_AS(cocycle_from_json(bad, v4), InputError);
    CHECK_THROWS_AS(cocycle_from_json(Json{{"table", Json::array()}}, v4), InputError);
}

TEST_CASE("algebra JSON") {
    auto s3 = grp("S3");
    SUBCASE("round trips keep structure constants, grading and action") {
        std::vector<FinDimAlgebra> algebras{group_algebra(s3), matrix_algebra(2), twisted_group_algebra(h2_representatives(grp("C3"), 3).back())};
        auto m = equivariant_azumaya(generate_gsets(grp("C2xC2"), 1, 4)[0], ProjectiveRep::pauli(grp("C2xC2")));
        algebras.push_back(m.algebra);
        algebras.push_back(skew_group_algebra(m.algebra));
        for (auto& a : algebras) {
            auto b = algebra_from_json(algebra_to_json(a));
            CHECK(same_algebra(a, b));
            CHECK(b.labels == a.labels);
        }
    }
    SUBCASE("unit as an index") {
        Json j{{"dim", 2}, {"unit", 0}, {"sc", {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 0, -1}}}};
        auto a = algebra_from_json(j);
        CHECK(a.unit == sv_unit(0));
        CHECK(hh0(a).dim == 2);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(algebra_from_json(Json{{"dim", 1}, {"unit", 0}, {"sc", {{0, 0, 1, 1}}}}), InputError);
        CHECK_THROWS_AS(algebra_from_json(Json{{"dim", 1}, {"sc", Json::array()}}), InputError);
        CHECK_THROWS_AS(algebra_from_json(Json{{"dim", 1}, {"unit", 0}, {"sc", {{0, 0, 0, 1}}}, {"grading", {0}}}), InputError);
        Json na{{"dim", 2}, {"unit", 0}, {"sc", {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 1, 1}, {1, 1, 0, 1}}}};
        CHECK_NOTHROW(algebra_from_json(na));  // k[x]/(x^2 - x - 1) is associative
        // b0 is not a two-sided unit
        Json wrong{{"dim", 2}, {"unit", 0}, {"sc", {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 0, 1}}}};
        CHECK_THROWS_AS(algebra_from_json(wrong), InputError);
        // action missing an element
        Json act{{"group", "C2"}, {"dim", 1}, {"unit", 0}, {"sc", {{0, 0, 0, 1}}}, {"action", Json::object()}};
        CHECK_THROWS_AS(algebra_from_json(act), InputError);
        act["action"] = {{"1", {{0, 0, 1}}}};
        CHECK_NOTHROW(algebra_from_json(act));
        act["action"] = {{"7", {{0, 0, 1}}}};
        CHECK_THROWS_AS(algebra_from_json(act), InputError);
    }
}

TEST_CASE("restriction of a parsed algebra agrees with the model") {
    auto v4 = grp("C2xC2");
    for (auto& x : generate_gsets(v4, 4, 21)) {
        auto m = equivariant_azumaya(x, ProjectiveRep::pauli(v4));
        auto f = algebra_from_json(algebra_to_json(m.algebra));
        for (int s = 0; s < 4; ++s) {
            auto sigma = cyclic_subgroup(*v4, s);
            auto a = restrict_to_fixed(m, sigma);
            auto b = restrict_to_fixed(f, x, sigma);
            CHECK(a.points == b.points);
            CHECK(a.original == b.original);
            CHECK(same_algebra(a.algebra, b.algebra));
        }
        auto h1 = twisted_hh0_decomposition(m);
        auto h2 = twisted_hh0_decomposition(f, x);
        CHECK(h1.lhs == h2.lhs);
        CHECK(h1.rhs == h2.rhs);
        CHECK(h2.ok);
    }
    // support must land in the G-set
    auto m = equivariant_azumaya(GSet::point(v4), ProjectiveRep::trivial(v4));
    auto f = m.algebra;
    f.support = {3};
    CHECK_THROWS_AS(restrict_to_fixed(f, GSet::point(v4), whole_group(*v4)), InputError);
    CHECK_THROWS_AS(twisted_hh0_decomposition(m.algebra, GSet::point(grp("C4"))), InputError);
}

TEST_CASE("suite runs") {
    CorpusConfig small;
    small.max_order = 6;
    small.gsets_per_group = 4;
    small.twisted_max_order = 4;

    SUBCASE("small corpus passes and is reproducible") {
        Report a = run_suite(small);
        CHECK(a.passed());
        for (auto& s : suite_names()) {
            CAPTURE(s);
            CHECK(a.count(s) > 0);
        }
        CHECK(a.records.size() >= 200);
        Report b = run_suite(small);
        CHECK(a.jsonl() == b.jsonl());
        CHECK(std::is_sorted(a.records.begin(), a.records.end(), [](const CheckRecord& x, const CheckRecord& y) {
            return std::tie(x.suite, x.key) < std::tie(y.suite, y.key);
        }));
        // every line is a JSON object without timing
        std::istringstream in(a.jsonl());
        int lines = 0;
        for (std::string line; std::getline(in, line); ++lines) {
            auto j = Json::parse(line);
            CHECK(j.at("status") == "PASS");
            CHECK(j.contains("certificate"));
            CHECK_FALSE(j.contains("seconds"));
        }
        CHECK(lines == static_cast<int>(a.records.size()));
        CHECK(a.summary().find("PASS") != std::string::npos);
    }
    SUBCASE("different seed changes the corpus") {
        CorpusConfig other = small;
        other.suites = {"inertia"};
        Report a = run_suite(other);
        other.seed = 8;
        Report b = run_suite(other);
        CHECK(a.passed());
        CHECK(b.passed());
        CHECK(a.jsonl() != b.jsonl());
    }
    SUBCASE("empty selection") {
        CorpusConfig none = small;
        none.suites.clear();
        Report r = run_suite(none);
        CHECK(r.passed());
        CHECK(r.records.empty());
        CHECK_FALSE(r.warnings.empty());
        CHECK(r.jsonl().empty());
    }
    SUBCASE("unknown suite") {
        CorpusConfig bad = small;
        bad.suites = {"nonsense"};
        CHECK_THROWS_AS(run_suite(bad), InputError);
    }
    SUBCASE("corrupted Cayley table fails with a witness") {
        CorpusConfig bad = small;
        bad.suites = {"mackey"};
        auto table = catalog_group("S3").table();
        std::swap(table[1][2], table[1][3]);
        bad.extra_groups.emplace_back("broken", Json{{"order", 6}, {"mul", table}});
        Report r = run_suite(bad);
        CHECK_FALSE(r.passed());
        CHECK(r.failures() == 1);
        REQUIRE(r.count("corpus") == 1);
        const auto& rec = r.records.front();
        CHECK(rec.suite == "corpus");
        CHECK_FALSE(rec.pass);
        CHECK(rec.witness.contains("message"));
        CHECK(rec.witness.at("inputs").at("group").at("mul") == Json(table));
        CHECK(rec.witness.contains("seed"));
        CHECK(r.jsonl().find("FAIL") != std::string::npos);
    }
    SUBCASE("an extra valid group joins the corpus") {
        CorpusConfig extra = small;
        extra.suites = {"vistoli", "mackey"};
        extra.extra_groups.emplace_back("S3perm", Json{{"degree", 3}, {"perm_gens", {{1, 0, 2}, {1, 2, 0}}}});
        Report r = run_suite(extra);
        CHECK(r.passed());
        bool found = false;
        for (auto& rec : r.records) found = found || rec.key.rfind("S3perm/", 0) == 0;
        CHECK(found);
    }
    SUBCASE("thread cap does not change the report") {
        CorpusConfig one = small, two = small;
        one.suites = two.suites = {"orbifold", "mackey"};
        one.threads = 1;
        two.threads = 3;
        CHECK(run_suite(one).jsonl() == run_suite(two).jsonl());
    }
}
