// Acceptance run over the default corpus: one PASS/FAIL line per criterion.

#include "orbicalc/harness.hpp"

#include <iostream>

using namespace orbicalc;

namespace {

struct Criterion {
    int id;
    std::string title;
    std::vector<std::string> suites;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "Vistoli decomposition certified in split and rational modes", {"vistoli"}},
        {2, "primitive-part ranks and summand-rank spot checks", {"ranks"}},
        {3, "restriction vanishing and maximality of e_sigma", {"maximality"}},
        {4, "character diagram commutes, primitive part onto gen(sigma)", {"character"}},
        {5, "orbifold decomposition over seeded random G-sets", {"orbifold"}},
        {6, "inertia form rank equality and isomorphism", {"inertia"}},
        {7, "Mackey scalar [N(sigma):sigma]", {"mackey"}},
        {8, "twisted HH0, degree-zero decomposition, strongly graded centers", {"twisted", "azumaya"}},
        {9, "block inclusion injective under cyclotomic extension", {"blocks"}},
    };

    CorpusConfig config;
    Report first;
    try {
        first = run_suite(config);
    } catch (const std::exception& e) {
        std::cout << "FAIL run: " << e.what() << "\n";
        return 1;
    }
    std::cout << first.summary() << "\n";

    bool all = true;
    for (const auto& c : criteria) {
        int checks = 0;
        bool ok = true;
        for (const auto& s : c.suites) {
            checks += first.count(s);
            ok = ok && first.suite_passed(s) && first.count(s) > 0;
        }
        double secs = 0;
        for (const auto& s : c.suites) {
            auto it = first.seconds.find(s);
            if (it != first.seconds.end()) secs += it->second;
        }
        // the Vistoli run is expected within a minute
        if (c.id == 1 && secs >= 60) ok = false;
        all = all && ok;
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " (" << checks << " checks)\n";
    }
    const bool enough = static_cast<int>(first.records.size()) >= 200;

    Report second = run_suite(config);
    const bool same = first.jsonl() == second.jsonl();
    all = all && same && enough;
    std::cout << (same ? "PASS" : "FAIL") << " criterion 10: two runs with seed " << config.seed
              << " give byte-identical reports (" << first.records.size() << " records)\n";
    if (!enough) std::cout << "FAIL fewer than 200 certificates\n";
    return all ? 0 : 1;
}
