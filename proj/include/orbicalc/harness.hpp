#pragma once

// Seeded corpus generation and the end-to-end property suites with their
// JSON-lines report.

#include "orbicalc/json_io.hpp"

#include <cstdint>
#include <map>
#include <random>

namespace orbicalc {

// mt19937_64 with bounded draws by rejection, so streams do not depend on
// the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    std::uint64_t below(std::uint64_t n);  // uniform in [0, n), n >= 1

private:
    std::mt19937_64 eng_;
};

// FNV-1a of the tag mixed into the seed; one stream per corpus item.
std::uint64_t derive_seed(std::uint64_t seed, const std::string& tag);

// All subgroups, sorted by (order, elements).
std::vector<Subgroup> all_subgroups(const FiniteGroup& g);

// Disjoint unions of 1..4 coset spaces G/H over random subgroups H, each of size <= 64.
// Throws InputError when count < 1.
std::vector<GSet> generate_gsets(std::shared_ptr<const FiniteGroup> g, int count, std::uint64_t seed);

const std::vector<std::string>& suite_names();

struct CorpusConfig {
    int max_order = 24;
    int gsets_per_group = 100;
    std::uint64_t seed = 7;
    int twisted_max_order = 16;   // cocycle representatives, twisted and Azumaya models
    int twisted_gsets = 2;        // G-sets per group for the equivariant algebra models
    std::vector<std::string> suites = suite_names();
    std::vector<std::pair<std::string, Json>> extra_groups;  // name, group JSON
    int threads = 0;              // 0: ORBICALC_THREADS, else hardware concurrency
};

struct CheckRecord {
    std::string suite;
    std::string key;
    bool pass = false;
    Json certificate;  // enough to re-check without recomputation
    Json witness;      // on failure: message, seed and inputs
};

struct Report {
    std::vector<CheckRecord> records;  // sorted by (suite, key)
    std::vector<std::string> warnings;
    std::map<std::string, double> seconds;  // wall time per suite
    std::uint64_t seed = 0;

    bool passed() const;
    int failures() const;
    int count(const std::string& suite) const;
    bool suite_passed(const std::string& suite) const;  // true when every record of the suite passes
    std::string jsonl() const;    // one record per line, no timing
    std::string summary() const;  // per-suite table with timing
};

// Throws InputError for unknown suite names.
Report run_suite(const CorpusConfig& config);

}  // namespace orbicalc
