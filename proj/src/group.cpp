#include "orbicalc/group.hpp"

#include "orbicalc/numeric.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace orbicalc {

namespace {

struct VecHash {
    size_t operator()(const std::vector<int>& v) const {
        size_t h = 1469598103934665603ULL;
        for (int x : v) h = (h ^ static_cast<size_t>(x)) * 1099511628211ULL;
        return h;
    }
};

}  // namespace

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<int>>& mul, std::string name) {
    const int n = static_cast<int>(mul.size());
    if (n == 0) throw InputError("group table is empty");
    if (n > kDefaultOrderCap) throw InputError("group order exceeds cap " + std::to_string(kDefaultOrderCap));
    FiniteGroup g;
    g.n_ = n;
    g.name_ = std::move(name);
    g.mul_.resize(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        if (static_cast<int>(mul[a].size()) != n) throw InputError("group table is not square");
        std::vector<char> seen(n, 0);
        for (int b = 0; b < n; ++b) {
            int v = mul[a][b];
            if (v < 0 || v >= n) throw InputError("group table entry out of range");
            if (seen[v]) throw InputError("group table row " + std::to_string(a) + " is not a permutation");
            seen[v] = 1;
            g.mul_[static_cast<size_t>(a) * n + b] = v;
        }
    }
    for (int b = 0; b < n; ++b) {
        std::vector<char> seen(n, 0);
        for (int a = 0; a < n; ++a) {
            int v = g.mul(a, b);
            if (seen[v]) throw InputError("group table column " + std::to_string(b) + " is not a permutation");
            seen[v] = 1;
        }
    }
    for (int a = 0; a < n; ++a)
        if (g.mul(0, a) != a || g.mul(a, 0) != a) throw InputError("index 0 is not the identity");
    // Light's test: associativity needs checking only against a generating set.
    std::vector<char> in_span(n, 0);
    in_span[0] = 1;
    std::vector<int> span{0}, gens;
    for (int x = 1; x < n; ++x) {
        if (in_span[x]) continue;
        gens.push_back(x);
        for (size_t i = 0; i < span.size(); ++i)
            for (int s : gens) {
                for (int y : {g.mul(span[i], s), g.mul(s, span[i])})
                    if (!in_span[y]) in_span[y] = 1, span.push_back(y);
            }
    }
    for (int s : gens)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (g.mul(g.mul(a, s), b) != g.mul(a, g.mul(s, b)))
                    throw InputError("group table is not associative at (" + std::to_string(a) + "," +
                                     std::to_string(s) + "," + std::to_string(b) + ")");
    g.finish();
    return g;
}

FiniteGroup FiniteGroup::from_permutations(int degree, const std::vector<std::vector<int>>& gens,
                                           std::string name, int cap) {
    if (degree < 0) throw InputError("negative permutation degree");
    for (const auto& p : gens) {
        if (static_cast<int>(p.size()) != degree) throw InputError("generator has wrong length");
        std::vector<char> seen(degree, 0);
        for (int x : p) {
            if (x < 0 || x >= degree || seen[x]) throw InputError("generator is not a bijection");
            seen[x] = 1;
        }
    }
    std::vector<int> id(degree);
    std::iota(id.begin(), id.end(), 0);
    std::vector<std::vector<int>> elems{id};
    std::unordered_map<std::vector<int>, int, VecHash> index{{id, 0}};
    auto compose = [degree](const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> c(degree);
        for (int x = 0; x < degree; ++x) c[x] = a[b[x]];
        return c;
    };
    for (size_t i = 0; i < elems.size(); ++i)
        for (const auto& s : gens) {
            auto c = compose(elems[i], s);
            if (index.emplace(c, static_cast<int>(elems.size())).second) {
                elems.push_back(std::move(c));
                if (static_cast<int>(elems.size()) > cap)
                    throw InputError("permutation group order exceeds cap " + std::to_string(cap));
            }
        }
    FiniteGroup g;
    g.n_ = static_cast<int>(elems.size());
    g.name_ = std::move(name);
    g.mul_.resize(static_cast<size_t>(g.n_) * g.n_);
    for (int a = 0; a < g.n_; ++a)
        for (int b = 0; b < g.n_; ++b) g.mul_[static_cast<size_t>(a) * g.n_ + b] = index.at(compose(elems[a], elems[b]));
    g.finish();
    return g;
}

void FiniteGroup::finish() {
    inv_.assign(n_, -1);
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            if (mul(a, b) == 0) { inv_[a] = b; break; }
    ord_.assign(n_, 1);
    exponent_ = 1;
    for (int a = 0; a < n_; ++a) {
        int x = a, k = 1;
        while (x != 0) x = mul(x, a), ++k;
        ord_[a] = k;
        exponent_ = static_cast<int>(lcm_long(exponent_, k));
    }
    class_of_.assign(n_, -1);
    classes_.clear();
    for (int a = 0; a < n_; ++a) {
        if (class_of_[a] >= 0) continue;
        std::set<int> cls;
        for (int g = 0; g < n_; ++g) cls.insert(conj(g, a));
        int id = static_cast<int>(classes_.size());
        for (int x : cls) class_of_[x] = id;
        classes_.emplace_back(cls.begin(), cls.end());
    }
}

int FiniteGroup::power(int g, long k) const {
    k = mod_pos(k, ord_[g]);
    int r = 0;
    for (long i = 0; i < k; ++i) r = mul(r, g);
    return r;
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < n_; ++a)
        for (int b = a + 1; b < n_; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

std::vector<std::vector<int>> FiniteGroup::table() const {
    std::vector<std::vector<int>> t(n_, std::vector<int>(n_));
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) t[a][b] = mul(a, b);
    return t;
}

bool Subgroup::contains(int g) const { return std::binary_search(elements.begin(), elements.end(), g); }

bool Subgroup::operator<(const Subgroup& o) const {
    if (elements.size() != o.elements.size()) return elements.size() < o.elements.size();
    return elements < o.elements;
}

Subgroup subgroup_generated(const FiniteGroup& g, const std::vector<int>& gens) {
    std::vector<char> in(g.order(), 0);
    std::vector<int> elems{0};
    in[0] = 1;
    for (size_t i = 0; i < elems.size(); ++i)
        for (int s : gens) {
            int y = g.mul(elems[i], s);
            if (!in[y]) in[y] = 1, elems.push_back(y);
        }
    std::sort(elems.begin(), elems.end());
    return {elems};
}

Subgroup cyclic_subgroup(const FiniteGroup& g, int x) { return subgroup_generated(g, {x}); }

Subgroup whole_group(const FiniteGroup& g) {
    Subgroup h;
    h.elements.resize(g.order());
    std::iota(h.elements.begin(), h.elements.end(), 0);
    return h;
}

Subgroup conjugate(const FiniteGroup& g, const Subgroup& h, int x) {
    Subgroup r;
    r.elements.reserve(h.elements.size());
    for (int y : h.elements) r.elements.push_back(g.conj(x, y));
    std::sort(r.elements.begin(), r.elements.end());
    return r;
}

bool is_subgroup(const FiniteGroup& g, const std::vector<int>& elements) {
    if (elements.empty() || !std::is_sorted(elements.begin(), elements.end())) return false;
    Subgroup h{elements};
    if (!h.contains(0)) return false;
    for (int a : elements) {
        if (a < 0 || a >= g.order()) return false;
        if (!h.contains(g.inv(a))) return false;
        for (int b : elements)
            if (!h.contains(g.mul(a, b))) return false;
    }
    return true;
}

bool is_subset(const Subgroup& a, const Subgroup& b) {
    return std::includes(b.elements.begin(), b.elements.end(), a.elements.begin(), a.elements.end());
}

bool is_cyclic(const FiniteGroup& g, const Subgroup& h) {
    for (int x : h.elements)
        if (g.element_order(x) == h.order()) return true;
    return false;
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
    Subgroup r;
    std::set_intersection(a.elements.begin(), a.elements.end(), b.elements.begin(), b.elements.end(),
                          std::back_inserter(r.elements));
    return r;
}

std::vector<int> generating_set(const FiniteGroup& g, const Subgroup& h) {
    std::vector<int> gens;
    Subgroup span{{0}};
    for (int x : h.elements) {
        if (span.contains(x)) continue;
        gens.push_back(x);
        span = subgroup_generated(g, gens);
    }
    return gens;
}

FiniteGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& h) {
    const int n = h.order();
    std::vector<int> pos(g.order(), -1);
    for (int i = 0; i < n; ++i) pos[h.elements[i]] = i;
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int p = pos[g.mul(h.elements[i], h.elements[j])];
            if (p < 0) throw std::invalid_argument("subgroup_as_group: not closed");
            t[i][j] = p;
        }
    return FiniteGroup::from_table(t);
}

std::vector<CyclicClass> cyclic_subgroup_classes(const FiniteGroup& g) {
    std::set<Subgroup> all;
    for (int x = 0; x < g.order(); ++x) all.insert(cyclic_subgroup(g, x));
    std::set<Subgroup> done;
    std::vector<CyclicClass> out;
    for (const Subgroup& s : all) {  // std::set order = (order, lexicographic)
        if (done.count(s)) continue;
        CyclicClass c;
        c.rep = s;
        for (int x : s.elements)
            if (g.element_order(x) == s.order()) { c.generator = x; break; }
        std::map<Subgroup, int> orbit;
        for (int w = 0; w < g.order(); ++w) orbit.emplace(conjugate(g, s, w), w);
        for (auto& [sub, w] : orbit) {
            done.insert(sub);
            c.orbit.push_back(sub);
            c.witnesses.push_back(w);
        }
        out.push_back(std::move(c));
    }
    return out;
}

ConjStructure conjugacy_classes(const FiniteGroup& g) {
    ConjStructure cs;
    cs.classes = g.classes();
    for (int x = 0; x < g.order(); ++x) cs.class_of.push_back(g.class_of(x));
    cs.cyclic_classes = cyclic_subgroup_classes(g);
    return cs;
}

long Normalizer::power_of(int u) const {
    auto it = std::lower_bound(group.elements.begin(), group.elements.end(), u);
    if (it == group.elements.end() || *it != u) throw std::invalid_argument("element not in the normalizer");
    return power[it - group.elements.begin()];
}

Normalizer normalizer(const FiniteGroup& g, const Subgroup& sigma) {
    Normalizer n;
    n.sigma_order = sigma.order();
    for (int u = 0; u < g.order(); ++u)
        if (conjugate(g, sigma, u) == sigma) n.group.elements.push_back(u);
    for (int x : sigma.elements)
        if (g.element_order(x) == sigma.order()) { n.generator = x; break; }
    if (n.generator >= 0) {
        std::vector<int> pw(sigma.order());
        for (int k = 0, x = 0; k < sigma.order(); ++k, x = g.mul(x, n.generator)) pw[k] = x;
        for (int u : n.group.elements) {
            int y = g.conj(u, n.generator);
            long a = std::find(pw.begin(), pw.end(), y) - pw.begin();
            n.power.push_back(sigma.order() == 1 ? 1 : a);
        }
    }
    return n;
}

Subgroup centralizer(const FiniteGroup& g, int x) {
    Subgroup c;
    for (int h = 0; h < g.order(); ++h)
        if (g.mul(h, x) == g.mul(x, h)) c.elements.push_back(h);
    return c;
}

std::vector<DoubleCoset> double_cosets(const FiniteGroup& g, const Subgroup& sigma) {
    std::vector<char> covered(g.order(), 0);
    std::vector<DoubleCoset> out;
    for (int x = 0; x < g.order(); ++x) {
        if (covered[x]) continue;
        DoubleCoset d;
        d.rep = x;
        std::set<int> els;
        for (int a : sigma.elements)
            for (int b : sigma.elements) els.insert(g.mul(g.mul(a, x), b));
        for (int y : els) covered[y] = 1;
        d.elements.assign(els.begin(), els.end());
        d.intersection = intersect(sigma, conjugate(g, sigma, x));
        out.push_back(std::move(d));
    }
    return out;
}

std::vector<int> generators_of(const FiniteGroup& g, const Subgroup& sigma) {
    std::vector<int> gens;
    for (int x : sigma.elements)
        if (g.element_order(x) == sigma.order()) gens.push_back(x);
    if (gens.empty()) throw std::invalid_argument("generators_of: subgroup is not cyclic");
    return gens;
}

}  // namespace orbicalc
