#include "orbicalc/algebra.hpp"

#include <algorithm>
#include <set>

namespace orbicalc {

namespace {

const SparseVec kEmpty;

SparseVec from_map(const std::map<int, Cyclotomic>& m) {
    SparseVec v;
    for (auto& [k, c] : m)
        if (!c.is_zero()) v.emplace_back(k, c);
    return v;
}

std::string witness3(int i, int j, int k) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
}

// dense row reduction over GF(p), rows kept fully reduced
struct ModElim {
    long p;
    int n;
    std::vector<std::vector<long>> rows;
    std::vector<int> piv;

    ModElim(long p_, int n_) : p(p_), n(n_) {}

    void reduce(std::vector<long>& v) const {
        for (size_t r = 0; r < rows.size(); ++r) {
            long c = v[piv[r]];
            if (!c) continue;
            for (int k = 0; k < n; ++k)
                if (rows[r][k]) v[k] = mod_pos(v[k] - c * rows[r][k], p);
        }
    }

    bool add(std::vector<long> v) {
        reduce(v);
        int pc = -1;
        for (int k = 0; k < n; ++k)
            if (v[k]) { pc = k; break; }
        if (pc < 0) return false;
        long inv = inverse_mod(v[pc], p);
        for (auto& x : v) x = x * inv % p;
        for (auto& row : rows) {
            long c = row[pc];
            if (!c) continue;
            for (int k = 0; k < n; ++k)
                if (v[k]) row[k] = mod_pos(row[k] - c * v[k], p);
        }
        rows.push_back(std::move(v));
        piv.push_back(pc);
        return true;
    }

    std::vector<std::vector<long>> kernel() const {
        std::vector<char> is_piv(n, 0);
        for (int c : piv) is_piv[c] = 1;
        std::vector<std::vector<long>> out;
        for (int f = 0; f < n; ++f) {
            if (is_piv[f]) continue;
            std::vector<long> v(n, 0);
            v[f] = 1;
            for (size_t r = 0; r < rows.size(); ++r) v[piv[r]] = mod_pos(-rows[r][f], p);
            out.push_back(std::move(v));
        }
        return out;
    }
};

bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

// ---- sparse vectors

SparseVec sv_unit(int i) { return SparseVec{{i, Cyclotomic(1L)}}; }

SparseVec sv_add(const SparseVec& a, const SparseVec& b, const Cyclotomic& scale) {
    SparseVec out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, b[j].second * scale);
            ++j;
        } else {
            Cyclotomic c = a[i].second + b[j].second * scale;
            if (!c.is_zero()) out.emplace_back(a[i].first, c);
            ++i;
            ++j;
        }
    }
    return out;
}

SparseVec sv_scale(const SparseVec& a, const Cyclotomic& s) {
    if (s.is_zero()) return {};
    SparseVec out = a;
    for (auto& [k, c] : out) c *= s;
    return out;
}

Cyclotomic sv_get(const SparseVec& a, int i) {
    auto it = std::lower_bound(a.begin(), a.end(), i, [](const auto& e, int k) { return e.first < k; });
    return (it != a.end() && it->first == i) ? it->second : Cyclotomic(0L);
}

SparseVec SparseEliminator::reduce(SparseVec v) const {
    while (!v.empty()) {
        auto it = pivot_.find(v.back().first);
        if (it == pivot_.end()) break;
        const Cyclotomic c = v.back().second;
        v = sv_add(v, rows_[it->second], -c);
    }
    return v;
}

bool SparseEliminator::add(const SparseVec& v) {
    SparseVec r = reduce(v);
    if (r.empty()) return false;
    const Cyclotomic inv = r.back().second.inverse();
    r = sv_scale(r, inv);
    r.back().second = Cyclotomic(1L);
    pivot_[r.back().first] = rows_.size();
    rows_.push_back(std::move(r));
    return true;
}

std::vector<SparseVec> SparseEliminator::kernel(int n) const {
    // back-substitute in increasing pivot order
    std::map<int, SparseVec> red;
    for (auto& [p, idx] : pivot_) {
        SparseVec row = rows_[idx];
        std::vector<std::pair<int, Cyclotomic>> hits;
        for (auto& [c, a] : row)
            if (c != p && red.count(c)) hits.emplace_back(c, a);
        for (auto& [c, a] : hits) row = sv_add(row, red[c], -a);
        red[p] = std::move(row);
    }
    std::map<int, SparseVec> by_free;
    for (auto& [p, row] : red)
        for (auto& [c, a] : row)
            if (c != p) by_free[c].emplace_back(p, -a);
    std::vector<SparseVec> out;
    for (int f = 0; f < n; ++f) {
        if (pivot_.count(f)) continue;
        SparseVec v = by_free[f];
        v.emplace_back(f, Cyclotomic(1L));
        std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        out.push_back(std::move(v));
    }
    return out;
}

// ---- algebras

FinDimAlgebra FinDimAlgebra::zero(int dim) {
    FinDimAlgebra a;
    a.dim = dim;
    a.labels.resize(dim);
    for (int i = 0; i < dim; ++i) a.labels[i] = "b" + std::to_string(i);
    a.table.resize(dim);
    return a;
}

void FinDimAlgebra::set_product(int i, int j, SparseVec v) {
    if (v.empty())
        table[i].erase(j);
    else
        table[i][j] = std::move(v);
}

const SparseVec& FinDimAlgebra::product(int i, int j) const {
    auto it = table[i].find(j);
    return it == table[i].end() ? kEmpty : it->second;
}

SparseVec FinDimAlgebra::multiply(const SparseVec& a, const SparseVec& b) const {
    std::map<int, Cyclotomic> acc;
    for (auto& [i, x] : a)
        for (auto& [j, y] : b) {
            const SparseVec& p = product(i, j);
            if (p.empty()) continue;
            Cyclotomic xy = x * y;
            for (auto& [k, c] : p) {
                auto it = acc.find(k);
                if (it == acc.end())
                    acc.emplace(k, c * xy);
                else
                    it->second += c * xy;
            }
        }
    return from_map(acc);
}

SparseVec FinDimAlgebra::act(int g, const SparseVec& a) const {
    SparseVec out;
    for (auto& [i, x] : a) out = sv_add(out, action[g][i], x);
    return out;
}

long FinDimAlgebra::conductor() const {
    long n = 1;
    auto take = [&](const SparseVec& v) {
        for (auto& [k, c] : v) n = lcm_long(n, c.conductor());
    };
    for (auto& row : table)
        for (auto& [j, v] : row) take(v);
    take(unit);
    for (auto& g : action)
        for (auto& v : g) take(v);
    return n;
}

void FinDimAlgebra::validate() const {
    if (dim < 0 || static_cast<int>(table.size()) != dim) throw InputError("algebra: table size does not match dim");
    for (int i = 0; i < dim; ++i)
        for (auto& [j, v] : table[i]) {
            if (j < 0 || j >= dim) throw InputError("algebra: product index out of range");
            for (auto& [k, c] : v)
                if (k < 0 || k >= dim) throw InputError("algebra: structure constant index out of range");
        }
    for (auto& [k, c] : unit)
        if (k < 0 || k >= dim) throw InputError("algebra: unit index out of range");
    for (int i = 0; i < dim; ++i) {
        SparseVec b = sv_unit(i);
        if (multiply(unit, b) != b || multiply(b, unit) != b)
            throw InputError("algebra: unit fails on basis element " + std::to_string(i));
    }
    // associativity on every triple where either side can be nonzero
    std::vector<std::vector<int>> left(dim);
    for (int i = 0; i < dim; ++i)
        for (auto& [j, v] : table[i]) left[j].push_back(i);
    auto check = [&](int i, int j, int l) {
        SparseVec lhs = multiply(product(i, j), sv_unit(l));
        SparseVec rhs = multiply(sv_unit(i), product(j, l));
        if (lhs != rhs) throw InputError("algebra: associativity fails on basis triple " + witness3(i, j, l));
    };
    for (int i = 0; i < dim; ++i)
        for (auto& [j, v] : table[i]) {
            std::set<int> ls;
            for (auto& [k, c] : v)
                for (auto& [l, w] : table[k]) ls.insert(l);
            for (auto& [l, w] : table[j]) ls.insert(l);
            for (int l : ls) check(i, j, l);
        }
    for (int j = 0; j < dim; ++j)
        for (auto& [l, v] : table[j]) {
            std::set<int> is;
            for (auto& [k, c] : v)
                for (int i : left[k]) is.insert(i);
            for (int i : is) check(i, j, l);
        }
    if (!grading.empty() || !action.empty()) {
        if (!group) throw InputError("algebra: grading or action without a group");
    }
    if (!grading.empty()) {
        if (static_cast<int>(grading.size()) != dim) throw InputError("algebra: grading length differs from dim");
        for (int d : grading)
            if (d < 0 || d >= group->order()) throw InputError("algebra: grading entry out of range");
        for (int i = 0; i < dim; ++i)
            for (auto& [j, v] : table[i])
                for (auto& [k, c] : v)
                    if (grading[k] != group->mul(grading[i], grading[j]))
                        throw InputError("algebra: grading is not multiplicative on " + witness3(i, j, k));
    }
    if (!action.empty()) {
        const int n = group->order();
        if (static_cast<int>(action.size()) != n) throw InputError("algebra: action needs one map per group element");
        for (auto& g : action)
            if (static_cast<int>(g.size()) != dim) throw InputError("algebra: action map has wrong size");
        for (int i = 0; i < dim; ++i)
            if (action[0][i] != sv_unit(i)) throw InputError("algebra: identity does not act trivially");
        const auto gens = generating_set(*group, whole_group(*group));
        for (int s : gens) {
            for (int h = 0; h < n; ++h)
                for (int i = 0; i < dim; ++i)
                    if (act(s, action[h][i]) != action[group->mul(s, h)][i])
                        throw InputError("algebra: action is not a representation at g=" + std::to_string(s) +
                                         ", h=" + std::to_string(h));
            if (act(s, unit) != unit) throw InputError("algebra: action does not fix the unit");
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j)
                    if (multiply(action[s][i], action[s][j]) != act(s, product(i, j)))
                        throw InputError("algebra: action is not by automorphisms at g=" + std::to_string(s) +
                                         " on (" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
}

FinDimAlgebra group_algebra(std::shared_ptr<const FiniteGroup> g) {
    return twisted_group_algebra(CocycleTable::trivial(std::move(g)));
}

FinDimAlgebra matrix_algebra(int r) {
    FinDimAlgebra a = FinDimAlgebra::zero(r * r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            a.labels[i * r + j] = "E" + std::to_string(i) + std::to_string(j);
            for (int k = 0; k < r; ++k) a.set_product(i * r + j, j * r + k, sv_unit(i * r + k));
        }
    for (int i = 0; i < r; ++i) a.unit.emplace_back(i * r + i, Cyclotomic(1L));
    return a;
}

FinDimAlgebra function_algebra(int n) {
    FinDimAlgebra a = FinDimAlgebra::zero(n);
    for (int i = 0; i < n; ++i) {
        a.labels[i] = "e" + std::to_string(i);
        a.set_product(i, i, sv_unit(i));
        a.unit.emplace_back(i, Cyclotomic(1L));
    }
    return a;
}

FinDimAlgebra direct_sum(const FinDimAlgebra& a, const FinDimAlgebra& b) {
    FinDimAlgebra s = FinDimAlgebra::zero(a.dim + b.dim);
    auto shift = [](const SparseVec& v, int o) {
        SparseVec w = v;
        for (auto& [k, c] : w) k += o;
        return w;
    };
    for (int i = 0; i < a.dim; ++i) {
        s.labels[i] = a.labels[i];
        for (auto& [j, v] : a.table[i]) s.set_product(i, j, v);
    }
    for (int i = 0; i < b.dim; ++i) {
        s.labels[a.dim + i] = b.labels[i];
        for (auto& [j, v] : b.table[i]) s.set_product(a.dim + i, a.dim + j, shift(v, a.dim));
    }
    s.unit = a.unit;
    for (auto& e : shift(b.unit, a.dim)) s.unit.push_back(e);
    const bool same_group = a.group && b.group && *a.group == *b.group;
    if (same_group) {
        s.group = a.group;
        if (!a.grading.empty() && !b.grading.empty()) {
            s.grading = a.grading;
            s.grading.insert(s.grading.end(), b.grading.begin(), b.grading.end());
        }
        if (!a.action.empty() && !b.action.empty()) {
            s.action.resize(a.action.size());
            for (size_t g = 0; g < a.action.size(); ++g) {
                s.action[g] = a.action[g];
                for (auto& v : b.action[g]) s.action[g].push_back(shift(v, a.dim));
            }
        }
    }
    return s;
}

FinDimAlgebra skew_group_algebra(const FinDimAlgebra& a) {
    if (!a.group || a.action.empty()) throw InputError("skew_group_algebra: algebra carries no group action");
    const FiniteGroup& g = *a.group;
    const int n = g.order();
    FinDimAlgebra s = FinDimAlgebra::zero(a.dim * n);
    s.group = a.group;
    s.grading.resize(s.dim);
    if (!a.support.empty()) s.support.resize(s.dim);
    for (int i = 0; i < a.dim; ++i)
        for (int x = 0; x < n; ++x) {
            const int idx = skew_index(i, x, n);
            s.labels[idx] = a.labels[i] + "*u" + std::to_string(x);
            s.grading[idx] = x;
            if (!a.support.empty()) s.support[idx] = a.support[i];
        }
    for (int i = 0; i < a.dim; ++i)
        for (int x = 0; x < n; ++x)
            for (int j = 0; j < a.dim; ++j) {
                SparseVec p = a.multiply(sv_unit(i), a.action[x][j]);
                if (p.empty()) continue;
                for (int y = 0; y < n; ++y) {
                    const int xy = g.mul(x, y);
                    SparseVec v = p;
                    for (auto& [k, c] : v) k = skew_index(k, xy, n);
                    s.set_product(skew_index(i, x, n), skew_index(j, y, n), std::move(v));
                }
            }
    for (auto& [k, c] : a.unit) s.unit.emplace_back(skew_index(k, 0, n), c);
    return s;
}

// ---- center and HH0

namespace {

// conjugacy class of each basis element's degree; a single class when ungraded
std::vector<int> basis_classes(const FinDimAlgebra& a, int& nclasses) {
    std::vector<int> cls(a.dim, 0);
    nclasses = 1;
    if (a.grading.empty()) return cls;
    nclasses = a.group->num_classes();
    for (int i = 0; i < a.dim; ++i) cls[i] = a.group->class_of(a.grading[i]);
    return cls;
}

}  // namespace

CenterResult center(const FinDimAlgebra& a) {
    int nc = 1;
    const auto cls = basis_classes(a, nc);
    std::vector<std::vector<int>> left(a.dim);
    for (int i = 0; i < a.dim; ++i)
        for (auto& [j, v] : a.table[i]) left[j].push_back(i);
    CenterResult res;
    for (int c = 0; c < nc; ++c) {
        std::vector<int> unknowns;
        for (int i = 0; i < a.dim; ++i)
            if (cls[i] == c) unknowns.push_back(i);
        if (unknowns.empty()) continue;
        std::map<std::pair<int, int>, SparseVec> eqs;  // (i, k) -> coefficients over local unknowns
        for (size_t lj = 0; lj < unknowns.size(); ++lj) {
            const int j = unknowns[lj];
            std::set<int> partners;
            for (auto& [i, v] : a.table[j]) partners.insert(i);
            for (int i : left[j]) partners.insert(i);
            for (int i : partners) {
                SparseVec comm = sv_add(a.product(j, i), a.product(i, j), Cyclotomic(-1L));
                for (auto& [k, x] : comm) eqs[{i, k}].emplace_back(static_cast<int>(lj), x);
            }
        }
        SparseEliminator el;
        for (auto& [key, row] : eqs) el.add(row);
        for (auto& kv : el.kernel(static_cast<int>(unknowns.size()))) {
            SparseVec v;
            for (auto& [lj, x] : kv) v.emplace_back(unknowns[lj], x);
            res.basis.push_back(std::move(v));
            if (a.grading.empty()) {
                res.grading_class.push_back(-1);
                res.degree.push_back(-1);
            } else {
                res.grading_class.push_back(c);
                const auto& members = a.group->classes()[c];
                res.degree.push_back(members.size() == 1 ? members[0] : -1);
            }
        }
    }
    return res;
}

CommutatorSpace commutator_space(const FinDimAlgebra& a) {
    int nc = 1;
    CommutatorSpace cs;
    cs.class_of_basis = basis_classes(a, nc);
    cs.per_class.resize(nc);
    std::set<std::pair<int, int>> pairs;
    for (int i = 0; i < a.dim; ++i)
        for (auto& [j, v] : a.table[i])
            if (i != j) pairs.emplace(std::min(i, j), std::max(i, j));
    for (auto& [i, j] : pairs) {
        SparseVec comm = sv_add(a.product(i, j), a.product(j, i), Cyclotomic(-1L));
        if (comm.empty()) continue;
        const int c = cs.class_of_basis[comm.front().first];
        for (auto& [k, x] : comm)
            if (cs.class_of_basis[k] != c) throw VerificationError("commutator mixes conjugacy classes of degrees");
        cs.per_class[c].add(comm);
    }
    return cs;
}

HH0Result hh0(const FinDimAlgebra& a) {
    CommutatorSpace cs = commutator_space(a);
    HH0Result r;
    r.class_dims.assign(cs.per_class.size(), 0);
    for (int i = 0; i < a.dim; ++i) {
        const int c = cs.class_of_basis[i];
        if (!cs.per_class[c].is_pivot(i)) {
            r.quotient_basis.push_back(i);
            ++r.class_dims[c];
        }
    }
    r.dim = static_cast<int>(r.quotient_basis.size());
    if (a.grading.empty()) r.class_dims.clear();
    return r;
}

// ---- cocycles

CocycleTable CocycleTable::make(std::shared_ptr<const FiniteGroup> g, long n, std::vector<std::vector<long>> c) {
    if (!g) throw InputError("cocycle without a group");
    if (n < 1) throw InputError("cocycle root_order must be positive");
    const int k = g->order();
    if (static_cast<int>(c.size()) != k) throw InputError("cocycle table must be |G| x |G|");
    for (auto& row : c) {
        if (static_cast<int>(row.size()) != k) throw InputError("cocycle table must be |G| x |G|");
        for (auto& x : row) x = mod_pos(x, n);
    }
    for (int x = 0; x < k; ++x)
        if (c[0][x] != 0 || c[x][0] != 0)
            throw InputError("cocycle is not normalized at element " + std::to_string(x));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            for (int d = 0; d < k; ++d)
                if (mod_pos(c[a][b] + c[g->mul(a, b)][d] - c[b][d] - c[a][g->mul(b, d)], n) != 0)
                    throw InputError("cocycle identity fails on triple " + witness3(a, b, d));
    CocycleTable t;
    t.group = std::move(g);
    t.root_order = n;
    t.c = std::move(c);
    return t;
}

CocycleTable CocycleTable::trivial(std::shared_ptr<const FiniteGroup> g) {
    const int k = g->order();
    CocycleTable t;
    t.group = std::move(g);
    t.root_order = 1;
    t.c.assign(k, std::vector<long>(k, 0));
    return t;
}

FinDimAlgebra twisted_group_algebra(const CocycleTable& alpha) {
    const FiniteGroup& g = *alpha.group;
    const int n = g.order();
    FinDimAlgebra a = FinDimAlgebra::zero(n);
    a.group = alpha.group;
    a.grading.resize(n);
    for (int x = 0; x < n; ++x) {
        a.labels[x] = "u" + std::to_string(x);
        a.grading[x] = x;
        for (int y = 0; y < n; ++y) a.set_product(x, y, SparseVec{{g.mul(x, y), alpha.value(x, y)}});
    }
    a.unit = sv_unit(0);
    return a;
}

namespace {

struct H2Data {
    int d = 0;
    std::vector<std::vector<long>> complement;  // cocycle vectors spanning a complement of B^2
};

H2Data h2_data(const FiniteGroup& g, long p) {
    if (!is_prime_long(p)) throw InputError("H^2 representatives need a prime root order, got " + std::to_string(p));
    const int n = g.order();
    const int m = n - 1;
    H2Data out;
    if (m == 0) return out;
    auto var = [m](int a, int b) { return (a - 1) * m + (b - 1); };
    ModElim eq(p, m * m);
    for (int a = 1; a < n; ++a)
        for (int b = 1; b < n; ++b)
            for (int c = 1; c < n; ++c) {
                std::vector<long> row(m * m, 0);
                auto put = [&](int x, int y, long s) {
                    if (x != 0 && y != 0) row[var(x, y)] = mod_pos(row[var(x, y)] + s, p);
                };
                put(a, b, 1);
                put(g.mul(a, b), c, 1);
                put(b, c, -1);
                put(a, g.mul(b, c), -1);
                eq.add(std::move(row));
            }
    auto cocycles = eq.kernel();
    ModElim span(p, m * m);
    for (int x = 1; x < n; ++x) {
        std::vector<long> row(m * m, 0);
        for (int a = 1; a < n; ++a)
            for (int b = 1; b < n; ++b) {
                long v = (a == x) + (b == x) - (g.mul(a, b) == x);
                row[var(a, b)] = mod_pos(v, p);
            }
        span.add(std::move(row));
    }
    for (auto& z : cocycles)
        if (span.add(z)) out.complement.push_back(z);
    out.d = static_cast<int>(out.complement.size());
    return out;
}

}  // namespace

int h2_rank(const FiniteGroup& g, long p) { return h2_data(g, p).d; }

std::vector<CocycleTable> h2_representatives(std::shared_ptr<const FiniteGroup> g, long p) {
    H2Data h = h2_data(*g, p);
    const int n = g->order(), m = n - 1;
    long total = 1;
    for (int i = 0; i < h.d; ++i) {
        total *= p;
        if (total > 4096) throw InputError("H^2 too large to enumerate");
    }
    std::vector<CocycleTable> out;
    for (long code = 0; code < total; ++code) {
        std::vector<long> coef(h.d);
        long rest = code;
        for (int i = h.d - 1; i >= 0; --i) {
            coef[i] = rest % p;
            rest /= p;
        }
        std::vector<std::vector<long>> c(n, std::vector<long>(n, 0));
        for (int a = 1; a < n; ++a)
            for (int b = 1; b < n; ++b) {
                long v = 0;
                for (int i = 0; i < h.d; ++i) v += coef[i] * h.complement[i][(a - 1) * m + (b - 1)];
                c[a][b] = mod_pos(v, p);
            }
        out.push_back(CocycleTable::make(g, p, std::move(c)));
    }
    return out;
}

std::vector<int> alpha_regular_classes(const CocycleTable& alpha) {
    const FiniteGroup& g = *alpha.group;
    std::vector<int> out;
    for (int c = 0; c < g.num_classes(); ++c) {
        const int x = g.classes()[c].front();
        bool regular = true;
        for (int h : centralizer(g, x).elements)
            if (mod_pos(alpha.c[x][h] - alpha.c[h][x], alpha.root_order) != 0) { regular = false; break; }
        if (regular) out.push_back(c);
    }
    return out;
}

}  // namespace orbicalc
