#include "orbicalc/harness.hpp"

#include "orbicalc/azumaya.hpp"
#include "orbicalc/blocks.hpp"
#include "orbicalc/catalog.hpp"
#include "orbicalc/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace orbicalc {

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: empty range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do x = eng_();
    while (x >= limit);
    return x % n;
}

std::uint64_t derive_seed(std::uint64_t seed, const std::string& tag) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h ^ (seed * 0x9e3779b97f4a7c15ULL);
}

std::vector<Subgroup> all_subgroups(const FiniteGroup& g) {
    std::set<std::vector<int>> seen{{0}};
    std::vector<Subgroup> queue{subgroup_generated(g, {})};
    for (size_t i = 0; i < queue.size(); ++i)
        for (int x = 0; x < g.order(); ++x) {
            if (queue[i].contains(x)) continue;
            auto gens = queue[i].elements;
            gens.push_back(x);
            Subgroup h = subgroup_generated(g, gens);
            if (seen.insert(h.elements).second) queue.push_back(std::move(h));
        }
    std::sort(queue.begin(), queue.end());
    return queue;
}

std::vector<GSet> generate_gsets(std::shared_ptr<const FiniteGroup> g, int count, std::uint64_t seed) {
    if (count < 1) throw InputError("generate_gsets: count must be at least 1");
    constexpr int kMaxSize = 64;
    const auto subs = all_subgroups(*g);
    Rng rng(seed);
    std::vector<GSet> out;
    for (int i = 0; i < count; ++i) {
        const int parts = 1 + static_cast<int>(rng.below(4));
        std::optional<GSet> x;
        for (int k = 0; k < parts; ++k) {
            const int room = kMaxSize - (x ? x->size : 0);
            std::vector<const Subgroup*> fit;
            for (auto& h : subs)
                if (g->order() / h.order() <= room) fit.push_back(&h);
            if (fit.empty()) break;
            GSet orbit = coset_gset(g, *fit[rng.below(fit.size())]);
            x = x ? disjoint_union(*x, orbit) : std::move(orbit);
        }
        out.push_back(std::move(*x));
    }
    return out;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"vistoli", "ranks",   "maximality", "character", "orbifold",
                                                "inertia", "mackey",  "twisted",    "azumaya",   "blocks"};
    return names;
}

bool Report::passed() const { return failures() == 0; }

int Report::failures() const {
    int f = 0;
    for (auto& r : records) f += !r.pass;
    return f;
}

int Report::count(const std::string& suite) const {
    int c = 0;
    for (auto& r : records) c += r.suite == suite;
    return c;
}

bool Report::suite_passed(const std::string& suite) const {
    for (auto& r : records)
        if (r.suite == suite && !r.pass) return false;
    return true;
}

std::string Report::jsonl() const {
    std::string out;
    for (auto& r : records) {
        Json j{{"suite", r.suite}, {"key", r.key}, {"status", r.pass ? "PASS" : "FAIL"}, {"certificate", r.certificate}};
        if (!r.pass) j["witness"] = r.witness;
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::string Report::summary() const {
    std::map<std::string, std::pair<int, int>> per;  // pass, fail
    for (auto& r : records) (r.pass ? per[r.suite].first : per[r.suite].second)++;
    for (auto& [s, t] : seconds) per[s];
    std::ostringstream os;
    os << std::left << std::setw(12) << "suite" << std::right << std::setw(8) << "checks" << std::setw(8) << "failed"
       << std::setw(10) << "seconds" << "\n";
    for (auto& [s, pf] : per) {
        auto it = seconds.find(s);
        os << std::left << std::setw(12) << s << std::right << std::setw(8) << pf.first + pf.second << std::setw(8)
           << pf.second << std::setw(10) << std::fixed << std::setprecision(2) << (it == seconds.end() ? 0.0 : it->second)
           << "\n";
    }
    for (auto& w : warnings) os << "warning: " << w << "\n";
    for (auto& r : records)
        if (!r.pass) os << "FAIL " << r.suite << " " << r.key << ": " << r.witness.value("message", std::string()) << "\n";
    os << (passed() ? "PASS" : "FAIL") << " " << records.size() << " checks, " << failures() << " failed\n";
    return os.str();
}

namespace {

struct CorpusGroup {
    std::string name;
    Json spec;
    std::shared_ptr<const FiniteGroup> group;
};

using Task = std::function<std::vector<CheckRecord>()>;

int thread_count(const CorpusConfig& c) {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    int n = c.threads;
    if (n <= 0) {
        n = hw;
        if (const char* env = std::getenv("ORBICALC_THREADS")) {
            char* end = nullptr;
            long v = std::strtol(env, &end, 10);
            if (end != env && *end == '\0' && v >= 1) n = static_cast<int>(std::min<long>(v, hw));
        }
    }
    return std::max(1, n);
}

std::vector<CheckRecord> run_tasks(const std::vector<Task>& tasks, int threads) {
    std::vector<std::vector<CheckRecord>> results(tasks.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next++; i < tasks.size(); i = next++) results[i] = tasks[i]();
    };
    const int n = std::min<int>(threads, static_cast<int>(tasks.size()));
    if (n <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    std::vector<CheckRecord> out;
    for (auto& r : results)
        for (auto& c : r) out.push_back(std::move(c));
    return out;
}

// Runs a check; a thrown error becomes a failure carrying the inputs.
CheckRecord guarded(const std::string& suite, const std::string& key, const Json& inputs,
                    const std::function<void(CheckRecord&)>& body) {
    CheckRecord r;
    r.suite = suite;
    r.key = key;
    r.witness = Json::object();
    try {
        body(r);
    } catch (const std::exception& e) {
        r.pass = false;
        r.witness["message"] = e.what();
    }
    if (!r.pass) {
        if (!r.witness.contains("message")) r.witness["message"] = "check failed";
        r.witness["inputs"] = inputs;
    }
    if (r.certificate.is_null()) r.certificate = Json::object();
    return r;
}

void fail(CheckRecord& r, const std::string& msg) {
    r.pass = false;
    if (!r.witness.contains("message")) r.witness["message"] = msg;
}

std::string pad(long v, int width = 3) {
    std::ostringstream os;
    os << std::setw(width) << std::setfill('0') << v;
    return os.str();
}

// ---- brute-force oracles

int power_of(const FiniteGroup& g, int x, long k) {
    int y = 0;
    for (long i = 0; i < k; ++i) y = g.mul(y, x);
    return y;
}

long phi_count(long m) {
    long c = 0;
    for (long k = 1; k <= m; ++k) c += std::gcd(k, m) == 1;
    return c;
}

std::vector<int> normalizer_elements(const FiniteGroup& g, const std::vector<int>& sigma) {
    std::vector<int> out;
    for (int u = 0; u < g.order(); ++u) {
        bool ok = true;
        for (int x : sigma)
            if (!std::binary_search(sigma.begin(), sigma.end(), g.conj(u, x))) { ok = false; break; }
        if (ok) out.push_back(u);
    }
    return out;
}

// orbits on the generators of sigma = <s> under conjugation by N(sigma), and
// additionally under all power maps s -> s^a when rational
int generator_orbits(const FiniteGroup& g, const std::vector<int>& sigma, int s, bool rational) {
    const int m = g.element_order(s);
    std::vector<int> gens;
    for (long k = 1; k <= m; ++k)
        if (std::gcd(k, static_cast<long>(m)) == 1) gens.push_back(power_of(g, s, k));
    std::sort(gens.begin(), gens.end());
    const auto nz = normalizer_elements(g, sigma);
    std::set<int> seen;
    int orbits = 0;
    for (int x : gens) {
        if (seen.count(x)) continue;
        ++orbits;
        std::vector<int> stack{x};
        seen.insert(x);
        while (!stack.empty()) {
            int y = stack.back();
            stack.pop_back();
            std::vector<int> next;
            for (int u : nz) next.push_back(g.conj(u, y));
            if (rational)
                for (long a = 1; a <= m; ++a)
                    if (std::gcd(a, static_cast<long>(m)) == 1) next.push_back(power_of(g, y, a));
            for (int z : next)
                if (seen.insert(z).second) stack.push_back(z);
        }
    }
    return orbits;
}

std::vector<std::vector<int>> cyclic_subgroup_class_reps(const FiniteGroup& g) {
    std::set<std::vector<int>> subs;
    for (int x = 0; x < g.order(); ++x) {
        std::vector<int> h;
        for (int k = 0; k < g.element_order(x); ++k) h.push_back(power_of(g, x, k));
        std::sort(h.begin(), h.end());
        subs.insert(h);
    }
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> reps;
    for (const auto& h : subs) {
        if (seen.count(h)) continue;
        reps.push_back(h);
        for (int u = 0; u < g.order(); ++u) {
            std::vector<int> c;
            for (int x : h) c.push_back(g.conj(u, x));
            std::sort(c.begin(), c.end());
            seen.insert(c);
        }
    }
    return reps;
}

int class_count_of(const FiniteGroup& g, const std::vector<int>& h) {
    std::set<int> seen;
    int classes = 0;
    for (int x : h) {
        if (seen.count(x)) continue;
        ++classes;
        for (int u : h) seen.insert(g.conj(u, x));
    }
    return classes;
}

// sum over G-orbits of the class number of the stabilizer
int stabilizer_class_sum(const GSet& x) {
    const FiniteGroup& g = *x.group;
    std::vector<char> seen(x.size, 0);
    int total = 0;
    for (int p = 0; p < x.size; ++p) {
        if (seen[p]) continue;
        std::vector<int> stab;
        for (int u = 0; u < g.order(); ++u) {
            seen[x.act[u][p]] = 1;
            if (x.act[u][p] == p) stab.push_back(u);
        }
        total += class_count_of(g, stab);
    }
    return total;
}

// Burnside count of G-orbits on {(g, x) : g x = x}
int inertia_orbit_count(const GSet& x) {
    const FiniteGroup& g = *x.group;
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
        for (int h = 0; h < g.order() && ok; ++h)
            if (g.mul(x, h) == g.mul(h, x) && t.value(x, h) != t.value(h, x)) ok = false;
        count += ok;
    }
    return count;
}

// orbits of g -> g^a on classes for a in (Z/e)^x with a = 1 mod gcd(n, e)
int galois_class_orbits(const FiniteGroup& g, long n) {
    const long e = g.exponent();
    const long d = std::gcd(n, e);
    std::vector<int> parent(g.num_classes());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (long a = 1; a <= e; ++a) {
        if (std::gcd(a, e) != 1 || (a - 1) % d != 0) continue;
        for (int c = 0; c < g.num_classes(); ++c)
            parent[find(c)] = find(g.class_of(power_of(g, g.classes()[c].front(), a)));
    }
    std::set<int> roots;
    for (int c = 0; c < g.num_classes(); ++c) roots.insert(find(c));
    return static_cast<int>(roots.size());
}

// extensions Q(zeta_N') of the base field with (center bound) * phi(N') <= 64,
// or the cheapest nontrivial one when none fits
std::vector<long> block_extensions(long exponent, long base, int center_bound) {
    const long b = canonical_conductor(base);
    const long e = std::lcm(std::lcm(exponent, 4L), b);
    std::set<long> cands;
    for (long d = 1; d <= e; ++d) {
        if (e % d) continue;
        const long c = canonical_conductor(d);
        if (c % b == 0 && c != b) cands.insert(c);
    }
    std::vector<long> out;
    long cheapest = 0;
    for (long c : cands) {
        if (center_bound * euler_phi(c) <= 64) out.push_back(c);
        if (!cheapest || euler_phi(c) < euler_phi(cheapest)) cheapest = c;
    }
    if (out.empty() && cheapest) out.push_back(cheapest);
    return out;
}

Json subgroup_json(const Subgroup& h) { return h.elements; }

// ---- suites

struct Context {
    const CorpusConfig& config;
    std::vector<CorpusGroup> groups;  // successfully built
    std::vector<long> cyclic_orders;  // 1..min(24, max_order)
};

std::vector<Task> vistoli_tasks(const Context& cx) {
    std::vector<Task> tasks;
    for (const auto& cg : cx.groups)
        tasks.push_back([&cg] {
            std::vector<CheckRecord> out;
            const FiniteGroup& g = *cg.group;
            std::map<Mode, std::optional<VistoliDecomposition>> dec;
            for (Mode mode : {Mode::Split, Mode::Rational}) {
                out.push_back(guarded("vistoli", cg.name + "/" + to_string(mode), {{"group", cg.spec}}, [&](CheckRecord& r) {
                    auto v = vistoli_decompose(g, mode);
                    const Integer n = g.order();
                    bool iso = v.map.matrix.rows() == v.map.matrix.cols();
                    for (auto& d : v.snf_diagonal)
                        if (d == 0 || !prime_support_divides(d, n)) iso = false;
                    if (!iso) fail(r, "SNF diagonal not invertible over Z[1/n]");
                    std::string w;
                    const bool hom = check_ring_homomorphism(v, &w);
                    if (!hom) fail(r, "not a ring homomorphism: " + w);
                    RatVec sum = RatVec::Zero(v.ring.rank());
                    bool orth = true;
                    for (size_t a = 0; a < v.tilde_idempotents.size(); ++a) {
                        sum += v.tilde_idempotents[a];
                        for (size_t b = 0; b < v.tilde_idempotents.size(); ++b) {
                            RatVec p = v.ring.multiply(v.tilde_idempotents[a], v.tilde_idempotents[b]);
                            if (p != (a == b ? v.tilde_idempotents[a] : RatVec(RatVec::Zero(v.ring.rank())))) orth = false;
                        }
                    }
                    if (sum != v.ring.unit()) fail(r, "tilde idempotents do not sum to 1");
                    if (!orth) fail(r, "tilde idempotents are not orthogonal idempotents");
                    Json snf = Json::array();
                    for (auto& d : v.snf_diagonal) snf.push_back(to_json(d));
                    r.certificate = {{"n", g.order()},
                                     {"rank", v.ring.rank()},
                                     {"snf_diagonal", snf},
                                     {"summand_ranks", v.summand_ranks()},
                                     {"ring_homomorphism", hom},
                                     {"idempotents_sum_to_one", sum == v.ring.unit()},
                                     {"orthogonal", orth}};
                    if (r.witness.contains("message")) return;
                    r.pass = true;
                    dec[mode] = std::move(v);
                }));
            }
            if (dec[Mode::Split] && dec[Mode::Rational])
                out.push_back(guarded("vistoli", cg.name + "/compatible", {{"group", cg.spec}}, [&](CheckRecord& r) {
                    std::string w;
                    r.pass = check_split_rational_compatible(*dec[Mode::Split], *dec[Mode::Rational], &w);
                    if (!r.pass) fail(r, w);
                    r.certificate = {{"compatible", r.pass}};
                }));
            return out;
        });
    return tasks;
}

std::vector<Task> ranks_tasks(const Context& cx) {
    std::vector<Task> tasks;
    tasks.push_back([&cx] {
        std::vector<CheckRecord> out;
        for (long m : cx.cyclic_orders)
            out.push_back(guarded("ranks", "primitive/m=" + pad(m, 2), {{"m", m}}, [&](CheckRecord& r) {
                auto e = primitive_idempotent(m, Integer(m));
                RatMat mult(m, m);
                for (long k = 0; k < m; ++k)
                    for (long i = 0; i < m; ++i) mult((i + k) % m, k) = e.element.coords[i].rational_value();
                const int rk = rank<Rational>(mult);
                const long expected = phi_count(m);
                r.certificate = {{"m", m}, {"rank", rk}, {"phi", expected}};
                r.pass = rk == expected;
                if (!r.pass) fail(r, "rank of e_prim R(C_m) differs from phi(m)");
            }));
        return out;
    });
    for (const auto& cg : cx.groups)
        tasks.push_back([&cg] {
            std::vector<CheckRecord> out;
            const FiniteGroup& g = *cg.group;
            for (Mode mode : {Mode::Split, Mode::Rational})
                out.push_back(guarded("ranks", cg.name + "/" + to_string(mode), {{"group", cg.spec}}, [&](CheckRecord& r) {
                    auto v = vistoli_decompose(g, mode);
                    std::vector<int> oracle;
                    for (auto& s : v.summands)
                        oracle.push_back(generator_orbits(g, s.cls.rep.elements, s.cls.generator, mode == Mode::Rational));
                    const int classes = static_cast<int>(cyclic_subgroup_class_reps(g).size());
                    r.certificate = {{"summand_ranks", v.summand_ranks()}, {"oracle", oracle}, {"cyclic_classes", classes}};
                    r.pass = v.summand_ranks() == oracle && static_cast<int>(v.summands.size()) == classes;
                    if (!r.pass) fail(r, "summand ranks differ from generator orbit counts");
                }));
            static const std::map<std::string, std::vector<int>> spot{{"S3", {1, 1, 1}},
                                                                      {"C4", {1, 1, 2}},
                                                                      {"Q8", {1, 1, 1, 1, 1}},
                                                                      {"S4", {1, 1, 1, 1, 1}}};
            auto it = spot.find(cg.name);
            if (it != spot.end() && is_catalog_name(cg.name) && catalog_group(cg.name) == g)
                out.push_back(guarded("ranks", "spot/" + cg.name, {{"group", cg.spec}}, [&](CheckRecord& r) {
                    auto ranks = vistoli_decompose(g, Mode::Split).summand_ranks();
                    r.certificate = {{"summand_ranks", ranks}, {"expected", it->second}};
                    r.pass = ranks == it->second;
                    if (!r.pass) fail(r, "split summand ranks differ from the expected values");
                }));
            return out;
        });
    return tasks;
}

std::vector<Task> maximality_tasks(const Context& cx) {
    std::vector<Task> tasks;
    for (long m : cx.cyclic_orders)
        tasks.push_back([m] {
            return std::vector<CheckRecord>{guarded("maximality", "m=" + pad(m, 2), {{"m", m}}, [&](CheckRecord& r) {
                auto rep = check_maximality(m);
                const unsigned long long vanish = 1ULL << phi_count(m);
                r.certificate = {{"subsets", rep.subsets},
                                 {"vanishing", rep.vanishing},
                                 {"support_is_generators", rep.support_is_generators},
                                 {"restriction_compatible", rep.restriction_compatible},
                                 {"proper_restrictions_vanish", rep.proper_restrictions_vanish},
                                 {"maximal", rep.maximal}};
                r.pass = rep.support_is_generators && rep.restriction_compatible && rep.proper_restrictions_vanish &&
                         rep.maximal && rep.subsets == (1ULL << m) && rep.vanishing == vanish;
                if (!r.pass) fail(r, "maximality certificate failed");
            })};
        });
    return tasks;
}

std::vector<Task> character_tasks(const Context& cx) {
    std::vector<Task> tasks;
    for (long m : cx.cyclic_orders)
        tasks.push_back([m] {
            return std::vector<CheckRecord>{guarded("character", "m=" + pad(m, 2), {{"m", m}}, [&](CheckRecord& r) {
                auto ci = character_iso(m);
                r.certificate = {{"commutes", ci.commutes},
                                 {"supported_on_generators", ci.supported_on_generators},
                                 {"lower_invertible", ci.lower_invertible},
                                 {"upper_invertible", ci.upper_invertible},
                                 {"generators", ci.generators}};
                r.pass = ci.commutes && ci.supported_on_generators && ci.lower_invertible && ci.upper_invertible &&
                         static_cast<long>(ci.generators.size()) == phi_count(m);
                if (!r.pass) fail(r, "character square certificate failed");
            })};
        });
    return tasks;
}

Json gset_inputs(const CorpusGroup& cg, std::uint64_t stream, int index, const GSet& x) {
    return {{"group", cg.spec}, {"stream_seed", std::to_string(stream)}, {"gset_index", index}, {"gset", gset_to_json(x)}};
}

std::vector<Task> orbifold_tasks(const Context& cx) {
    std::vector<Task> tasks;
    const int count = cx.config.gsets_per_group;
    const std::uint64_t seed = cx.config.seed;
    for (const auto& cg : cx.groups) {
        tasks.push_back([&cg] {
            std::vector<CheckRecord> out;
            for (Mode mode : {Mode::Split, Mode::Rational})
                out.push_back(guarded("orbifold", cg.name + "/point/" + to_string(mode), {{"group", cg.spec}},
                                      [&](CheckRecord& r) {
                                          auto d = orbifold_decompose(GSet::point(cg.group), mode);
                                          auto v = vistoli_decompose(*cg.group, mode);
                                          r.pass = d.map.matrix == v.map.matrix && d.map.n == v.map.n;
                                          r.certificate = {{"identical", r.pass}, {"rows", d.map.matrix.rows()}};
                                          if (!r.pass) fail(r, "point decomposition differs from the Vistoli map");
                                      }));
            return out;
        });
        if (count < 1) continue;
        const std::uint64_t stream = derive_seed(seed, cg.name);
        auto gsets = std::make_shared<std::vector<GSet>>(generate_gsets(cg.group, count, stream));
        for (int i = 0; i < count; ++i)
            tasks.push_back([&cg, gsets, stream, i] {
                std::vector<CheckRecord> out;
                const GSet& x = (*gsets)[i];
                for (Mode mode : {Mode::Split, Mode::Rational})
                    out.push_back(guarded("orbifold", cg.name + "/gset-" + pad(i) + "/" + to_string(mode),
                                          gset_inputs(cg, stream, i, x), [&](CheckRecord& r) {
                                              auto d = orbifold_decompose(x, mode);
                                              const Integer n = cg.group->order();
                                              bool iso = d.block_snf.size() == d.k0.orbits.size();
                                              Json snf = Json::array();
                                              for (auto& b : d.block_snf) {
                                                  Json row = Json::array();
                                                  for (auto& v : b) {
                                                      if (v == 0 || !prime_support_divides(v, n)) iso = false;
                                                      row.push_back(to_json(v));
                                                  }
                                                  snf.push_back(row);
                                              }
                                              iso = iso && d.map.matrix.rows() == d.map.matrix.cols();
                                              r.certificate = {{"size", x.size},
                                                               {"k0_rank", d.k0.rank()},
                                                               {"summand_ranks", d.summand_ranks()},
                                                               {"block_snf", snf}};
                                              r.pass = iso;
                                              if (!iso) fail(r, "orbifold map not invertible over Z[1/n]");
                                          }));
                return out;
            });
    }
    return tasks;
}

std::vector<Task> inertia_tasks(const Context& cx) {
    std::vector<Task> tasks;
    const int count = cx.config.gsets_per_group;
    if (count < 1) return tasks;
    for (const auto& cg : cx.groups) {
        const std::uint64_t stream = derive_seed(cx.config.seed, cg.name);
        auto gsets = std::make_shared<std::vector<GSet>>(generate_gsets(cg.group, count, stream));
        for (int i = 0; i < count; ++i)
            tasks.push_back([&cg, gsets, stream, i] {
                const GSet& x = (*gsets)[i];
                return std::vector<CheckRecord>{
                    guarded("inertia", cg.name + "/gset-" + pad(i), gset_inputs(cg, stream, i, x), [&](CheckRecord& r) {
                        auto d = inertia_decompose(x);
                        const int lhs = stabilizer_class_sum(x), rhs = inertia_orbit_count(x);
                        r.certificate = {{"size", x.size},
                                         {"class_sum", lhs},
                                         {"inertia_orbits", rhs},
                                         {"k0_rank", d.k0_rank},
                                         {"dimension", d.dimension},
                                         {"bijection", d.bijection},
                                         {"blocks_are_tables", d.blocks_are_tables}};
                        r.pass = lhs == rhs && d.k0_rank == lhs && d.dimension == rhs && d.bijective && d.blocks_are_tables;
                        if (!r.pass) fail(r, "inertia rank equality or isomorphism certificate failed");
                    })};
            });
    }
    return tasks;
}

std::vector<Task> mackey_tasks(const Context& cx) {
    std::vector<Task> tasks;
    for (const auto& cg : cx.groups)
        tasks.push_back([&cg] {
            std::vector<CheckRecord> out;
            const FiniteGroup& g = *cg.group;
            const auto classes = cyclic_subgroup_classes(g);
            for (size_t c = 0; c < classes.size(); ++c)
                out.push_back(guarded("mackey", cg.name + "/sigma-" + pad(static_cast<long>(c), 2),
                                      {{"group", cg.spec}, {"sigma", subgroup_json(classes[c].rep)}}, [&](CheckRecord& r) {
                                          auto rep = mackey_check(g, classes[c]);
                                          const long index = static_cast<long>(normalizer_elements(g, classes[c].rep.elements).size()) /
                                                             classes[c].rep.order();
                                          bool scalar = rep.composite.rows() == rep.composite.cols();
                                          for (Eigen::Index i = 0; i < rep.composite.rows() && scalar; ++i)
                                              for (Eigen::Index j = 0; j < rep.composite.cols(); ++j)
                                                  if (rep.composite(i, j) != (i == j ? Rational(index) : Rational(0))) {
                                                      scalar = false;
                                                      break;
                                                  }
                                          r.certificate = {{"sigma", subgroup_json(classes[c].rep)},
                                                           {"index", rep.index},
                                                           {"normalizer_index", index},
                                                           {"composite", to_json(rep.composite)},
                                                           {"double_coset_sum", rep.double_coset_sum}};
                                          r.pass = rep.ok && scalar && rep.index == index && rep.double_coset_sum;
                                          if (!r.pass) fail(r, "composite is not [N(sigma):sigma] times the identity");
                                      }));
            return out;
        });
    return tasks;
}

// groups of the twisted corpus with their cocycle representatives
struct TwistedItem {
    const CorpusGroup* cg;
    std::vector<CocycleTable> cocycles;  // all primes dividing |G|, trivial class first for each
    std::vector<GSet> gsets;
    std::uint64_t stream;
};

std::vector<std::shared_ptr<TwistedItem>> twisted_corpus(const Context& cx) {
    std::vector<std::shared_ptr<TwistedItem>> items;
    for (const auto& cg : cx.groups) {
        if (cg.group->order() > cx.config.twisted_max_order) continue;
        auto item = std::make_shared<TwistedItem>();
        item->cg = &cg;
        for (long p : prime_factors(cg.group->order()))
            for (auto& a : h2_representatives(cg.group, p)) item->cocycles.push_back(std::move(a));
        item->stream = derive_seed(cx.config.seed, cg.name + "/twisted");
        if (cx.config.twisted_gsets > 0) item->gsets = generate_gsets(cg.group, cx.config.twisted_gsets, item->stream);
        items.push_back(std::move(item));
    }
    return items;
}

bool is_klein(const FiniteGroup& g) { return g.order() == 4 && g.exponent() == 2; }

constexpr int kRegularModelMaxOrder = 8;

std::vector<Task> twisted_tasks(const Context&, const std::vector<std::shared_ptr<TwistedItem>>& items) {
    std::vector<Task> tasks;
    for (const auto& item : items) {
        const CorpusGroup& cg = *item->cg;
        for (size_t a = 0; a < item->cocycles.size(); ++a)
            tasks.push_back([item, &cg, a] {
                const CocycleTable& alpha = item->cocycles[a];
                const std::string tag = cg.name + "/p" + std::to_string(alpha.root_order) + "/alpha-" + pad(static_cast<long>(a));
                const Json inputs{{"group", cg.spec}, {"cocycle", cocycle_to_json(alpha)}};
                std::vector<CheckRecord> out;
                out.push_back(guarded("twisted", tag + "/hh0", inputs, [&](CheckRecord& r) {
                    const int dim = hh0(twisted_group_algebra(alpha)).dim;
                    const int oracle = regular_class_count(alpha);
                    const int lib = static_cast<int>(alpha_regular_classes(alpha).size());
                    r.certificate = {{"cocycle", cocycle_to_json(alpha)}, {"hh0", dim}, {"regular_classes", oracle}};
                    r.pass = dim == oracle && lib == oracle;
                    if (!r.pass) fail(r, "dim HH0 differs from the number of alpha-regular classes");
                }));
                if (cg.group->order() <= kRegularModelMaxOrder)
                    out.push_back(guarded("twisted", tag + "/point", inputs, [&](CheckRecord& r) {
                        auto m = equivariant_azumaya(GSet::point(cg.group), ProjectiveRep::twisted_regular(alpha));
                        auto rep = twisted_hh0_decomposition(m);
                        r.certificate = {{"lhs", rep.lhs}, {"rhs", rep.rhs}, {"stable", rep.stable}, {"injective", rep.injective},
                                         {"regular_classes", regular_class_count(alpha)}};
                        r.pass = rep.ok && rep.lhs == regular_class_count(alpha);
                        if (!r.pass) fail(r, "degree-zero twisted decomposition failed");
                    }));
                return out;
            });
        for (size_t i = 0; i < item->gsets.size(); ++i)
            tasks.push_back([item, &cg, i] {
                const GSet& x = item->gsets[i];
                std::vector<CheckRecord> out;
                std::vector<std::pair<std::string, ProjectiveRep>> reps{{"trivial", ProjectiveRep::trivial(cg.group)}};
                if (is_klein(*cg.group)) reps.emplace_back("pauli", ProjectiveRep::pauli(cg.group));
                for (auto& [name, rho] : reps)
                    out.push_back(guarded("twisted", cg.name + "/gset-" + pad(static_cast<long>(i)) + "/" + name,
                                          gset_inputs(cg, item->stream, static_cast<int>(i), x), [&](CheckRecord& r) {
                                              auto rep = twisted_hh0_decomposition(equivariant_azumaya(x, rho));
                                              Json terms = Json::array();
                                              for (auto& t : rep.terms) terms.push_back({t.cls, t.lhs, t.rhs});
                                              r.certificate = {{"lhs", rep.lhs}, {"rhs", rep.rhs}, {"terms", terms}};
                                              r.pass = rep.ok;
                                              if (name == "trivial") {
                                                  const int oracle = inertia_orbit_count(x);
                                                  r.certificate["inertia_orbits"] = oracle;
                                                  r.pass = r.pass && rep.lhs == oracle;
                                              }
                                              if (!r.pass) fail(r, "degree-zero twisted decomposition failed");
                                          }));
                return out;
            });
    }
    return tasks;
}

std::vector<Task> azumaya_tasks(const Context&, const std::vector<std::shared_ptr<TwistedItem>>& items) {
    std::vector<Task> tasks;
    for (const auto& item : items) {
        const CorpusGroup& cg = *item->cg;
        struct Model {
            std::string key;
            Json inputs;
            GSet x;
            ProjectiveRep rho;
        };
        auto models = std::make_shared<std::vector<Model>>();
        const auto point = GSet::point(cg.group);
        models->push_back({cg.name + "/point/trivial", {{"group", cg.spec}}, point, ProjectiveRep::trivial(cg.group)});
        if (is_klein(*cg.group)) models->push_back({cg.name + "/point/pauli", {{"group", cg.spec}}, point, ProjectiveRep::pauli(cg.group)});
        if (cg.group->order() <= kRegularModelMaxOrder)
            for (size_t a = 0; a < item->cocycles.size(); ++a)
                models->push_back({cg.name + "/point/p" + std::to_string(item->cocycles[a].root_order) + "-alpha-" +
                                       pad(static_cast<long>(a)),
                                   {{"group", cg.spec}, {"cocycle", cocycle_to_json(item->cocycles[a])}}, point,
                                   ProjectiveRep::twisted_regular(item->cocycles[a])});
        for (size_t i = 0; i < item->gsets.size(); ++i) {
            const Json in = gset_inputs(cg, item->stream, static_cast<int>(i), item->gsets[i]);
            const std::string base = cg.name + "/gset-" + pad(static_cast<long>(i));
            models->push_back({base + "/trivial", in, item->gsets[i], ProjectiveRep::trivial(cg.group)});
            if (is_klein(*cg.group)) models->push_back({base + "/pauli", in, item->gsets[i], ProjectiveRep::pauli(cg.group)});
        }
        for (size_t k = 0; k < models->size(); ++k)
            tasks.push_back([models, &cg, k] {
                const Model& md = (*models)[k];
                return std::vector<CheckRecord>{guarded("azumaya", md.key, md.inputs, [&](CheckRecord& r) {
                    auto m = equivariant_azumaya(md.x, md.rho);
                    Json per = Json::array();
                    r.pass = true;
                    for (auto& cls : cyclic_subgroup_classes(*cg.group)) {
                        auto res = restrict_to_fixed(m, cls.rep);
                        auto rep = verify_strongly_graded(res.algebra, static_cast<int>(res.points.size()));
                        per.push_back({{"sigma", subgroup_json(cls.rep)},
                                       {"points", res.points.size()},
                                       {"component_dims", rep.component_dims},
                                       {"tensor_dim", rep.tensor_dim},
                                       {"image_rank", rep.image_rank},
                                       {"skew_dim", rep.skew_dim},
                                       {"products_surjective", rep.products_surjective}});
                        if (!rep.ok || !rep.products_surjective) {
                            r.pass = false;
                            fail(r, "sigma " + subgroup_json(cls.rep).dump() + ": " + rep.witness);
                        }
                    }
                    r.certificate = {{"rank", md.rho.r}, {"sigma", per}};
                })};
            });
    }
    return tasks;
}

std::vector<Task> blocks_tasks(const Context& cx, const std::vector<std::shared_ptr<TwistedItem>>& items) {
    std::vector<Task> tasks;
    for (const auto& cg : cx.groups)
        tasks.push_back([&cg] {
            std::vector<CheckRecord> out;
            const FiniteGroup& g = *cg.group;
            const auto a = std::make_shared<FinDimAlgebra>(group_algebra(cg.group));
            for (long ext : block_extensions(g.exponent(), 1, g.num_classes()))
                out.push_back(guarded("blocks", cg.name + "/group/ext-" + pad(ext, 2), {{"group", cg.spec}, {"ext", ext}},
                                      [&](CheckRecord& r) {
                                          auto rep = simple_block_count(*a, ext);
                                          const int base = static_cast<int>(cyclic_subgroup_class_reps(g).size());
                                          const int orbits = galois_class_orbits(g, ext);
                                          r.certificate = blocks_to_json(rep);
                                          r.certificate["oracle_base"] = base;
                                          r.certificate["oracle_ext"] = orbits;
                                          r.pass = rep.injective && rep.blocks_base == base && rep.blocks_ext == orbits;
                                          if (!r.pass) fail(r, "block inclusion not injective or block counts differ");
                                      }));
            return out;
        });
    for (const auto& item : items) {
        const CorpusGroup& cg = *item->cg;
        for (size_t k = 0; k < item->cocycles.size(); ++k) {
            if (k == 0 || item->cocycles[k].c == item->cocycles[0].c) continue;  // untwisted case is covered above
            tasks.push_back([item, &cg, k] {
                std::vector<CheckRecord> out;
                const CocycleTable& alpha = item->cocycles[k];
                const auto a = std::make_shared<FinDimAlgebra>(twisted_group_algebra(alpha));
                const std::string tag = cg.name + "/p" + std::to_string(alpha.root_order) + "/alpha-" + pad(static_cast<long>(k));
                for (long ext : block_extensions(cg.group->exponent(), a->conductor(), cg.group->num_classes()))
                    out.push_back(guarded("blocks", tag + "/ext-" + pad(ext, 2),
                                          {{"group", cg.spec}, {"cocycle", cocycle_to_json(alpha)}, {"ext", ext}},
                                          [&](CheckRecord& r) {
                                              auto rep = simple_block_count(*a, ext);
                                              int dsum = 0;
                                              for (int d : rep.ext_degrees) dsum += d;
                                              r.certificate = blocks_to_json(rep);
                                              r.pass = rep.injective && dsum == rep.center_dim && rep.radical_dim == 0;
                                              if (!r.pass) fail(r, "block inclusion not injective");
                                          }));
                return out;
            });
        }
    }
    return tasks;
}

}  // namespace

Report run_suite(const CorpusConfig& config) {
    for (auto& s : config.suites)
        if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
            throw InputError("unknown suite '" + s + "'");
    if (config.max_order < 1) throw InputError("max order must be positive");
    if (config.gsets_per_group < 0 || config.twisted_gsets < 0) throw InputError("G-set counts must be non-negative");
    Report report;
    report.seed = config.seed;
    if (config.suites.empty()) {
        report.warnings.push_back("no suites selected; nothing was checked");
        return report;
    }
    Context cx{config, {}, {}};
    for (auto& name : catalog_names(config.max_order))
        cx.groups.push_back({name, Json(name), std::make_shared<const FiniteGroup>(catalog_group(name))});
    for (auto& [name, spec] : config.extra_groups) {
        try {
            auto g = std::make_shared<const FiniteGroup>(group_from_json(spec));
            cx.groups.push_back({name, spec, g});
        } catch (const std::exception& e) {
            CheckRecord r;
            r.suite = "corpus";
            r.key = "group/" + name;
            r.certificate = Json::object();
            r.witness = {{"message", std::string("group construction failed: ") + e.what()}, {"inputs", {{"group", spec}}}};
            report.records.push_back(std::move(r));
        }
    }
    for (long m = 1; m <= std::min(24, config.max_order); ++m) cx.cyclic_orders.push_back(m);

    const int threads = thread_count(config);
    std::vector<std::shared_ptr<TwistedItem>> twisted;
    bool twisted_built = false;
    for (const auto& suite : suite_names()) {
        if (std::find(config.suites.begin(), config.suites.end(), suite) == config.suites.end()) continue;
        const auto t0 = std::chrono::steady_clock::now();
        if ((suite == "twisted" || suite == "azumaya" || suite == "blocks") && !twisted_built) {
            twisted = twisted_corpus(cx);
            twisted_built = true;
        }
        std::vector<Task> tasks;
        if (suite == "vistoli") tasks = vistoli_tasks(cx);
        if (suite == "ranks") tasks = ranks_tasks(cx);
        if (suite == "maximality") tasks = maximality_tasks(cx);
        if (suite == "character") tasks = character_tasks(cx);
        if (suite == "orbifold") tasks = orbifold_tasks(cx);
        if (suite == "inertia") tasks = inertia_tasks(cx);
        if (suite == "mackey") tasks = mackey_tasks(cx);
        if (suite == "twisted") tasks = twisted_tasks(cx, twisted);
        if (suite == "azumaya") tasks = azumaya_tasks(cx, twisted);
        if (suite == "blocks") tasks = blocks_tasks(cx, twisted);
        for (auto& r : run_tasks(tasks, threads)) report.records.push_back(std::move(r));
        report.seconds[suite] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    for (auto& r : report.records)
        if (!r.pass) r.witness["seed"] = std::to_string(config.seed);
    std::stable_sort(report.records.begin(), report.records.end(), [](const CheckRecord& a, const CheckRecord& b) {
        return std::tie(a.suite, a.key) < std::tie(b.suite, b.key);
    });
    return report;
}

}  // namespace orbicalc
