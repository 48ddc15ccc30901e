#include "orbicalc/gset.hpp"

#include <tuple>

#include "orbicalc/character_table.hpp"
#include "orbicalc/linalg.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace orbicalc {

namespace {

int index_in(const Subgroup& h, int g) {
    auto it = std::lower_bound(h.elements.begin(), h.elements.end(), g);
    if (it == h.elements.end() || *it != g) throw std::logic_error("element not in subgroup");
    return static_cast<int>(it - h.elements.begin());
}

// Res^G_H in irreducible coordinates, cached per (table of G, H)
std::shared_ptr<const RatMat> restriction_matrix(const FiniteGroup& g, const Subgroup& h) {
    static std::mutex mu;
    static std::map<std::pair<const CharacterTable*, std::vector<int>>, std::shared_ptr<const RatMat>> cache;
    auto key = std::make_pair(character_table(g).get(), h.elements);
    {
        std::lock_guard lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto r = std::make_shared<const RatMat>(restriction(g, h).matrix);
    std::lock_guard lock(mu);
    return cache.emplace(key, r).first->second;
}

std::shared_ptr<const FiniteGroup> stabilizer_group(const FiniteGroup& g, const Subgroup& h) {
    static std::mutex mu;
    static std::map<std::pair<const CharacterTable*, std::vector<int>>, std::shared_ptr<const FiniteGroup>> cache;
    auto key = std::make_pair(character_table(g).get(), h.elements);
    {
        std::lock_guard lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto r = std::make_shared<const FiniteGroup>(subgroup_as_group(g, h));
    std::lock_guard lock(mu);
    return cache.emplace(key, r).first->second;
}

// Value of the virtual character with irreducible coordinates z of Stab(rep) on the
// element s, seen from the point p = t.rep: z(t^-1 s t).
Cyclotomic value_at(const EquivariantK0& k, int orbit, const RatVec& z, int p, int s) {
    const FiniteGroup& g = *k.x->group;
    const K0Orbit& o = k.orbits[orbit];
    const int t = k.transversal[p];
    const int sp = g.mul(g.mul(g.inv(t), s), t);
    const int idx = index_in(o.stabilizer, sp);
    const auto& tab = *o.ring->table;
    const int c = o.stabilizer_group->class_of(idx);
    Cyclotomic v(0L);
    for (int i = 0; i < z.size(); ++i)
        if (!z(i).is_zero()) v += tab.chi[i][c] * Cyclotomic(z(i));
    return v;
}

RatVec segment_irreducible(const EquivariantK0& k, int orbit, const RatVec& xi) {
    const K0Orbit& o = k.orbits[orbit];
    return o.ring->to_irreducible(xi.segment(o.offset, o.rank()));
}

}  // namespace

// ---- G-sets

GSet GSet::make(std::shared_ptr<const FiniteGroup> g, std::vector<std::vector<int>> act) {
    if (!g) throw InputError("G-set without a group");
    const int n = g->order();
    if (static_cast<int>(act.size()) != n)
        throw InputError("G-set action must have one row per group element (" + std::to_string(n) + ")");
    const int size = act.empty() ? 0 : static_cast<int>(act[0].size());
    for (int a = 0; a < n; ++a) {
        if (static_cast<int>(act[a].size()) != size) throw InputError("G-set action rows differ in length");
        std::vector<char> seen(size, 0);
        for (int x : act[a]) {
            if (x < 0 || x >= size) throw InputError("G-set action entry out of range");
            if (seen[x]) throw InputError("G-set action row " + std::to_string(a) + " is not a permutation");
            seen[x] = 1;
        }
    }
    for (int x = 0; x < size; ++x)
        if (act[0][x] != x) throw InputError("identity does not act trivially");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const auto& ab = act[g->mul(a, b)];
            for (int x = 0; x < size; ++x)
                if (act[a][act[b][x]] != ab[x])
                    throw InputError("action is not compatible with multiplication at g=" + std::to_string(a) +
                                     ", h=" + std::to_string(b) + ", x=" + std::to_string(x));
        }
    GSet s;
    s.group = std::move(g);
    s.size = size;
    s.act = std::move(act);
    return s;
}

GSet GSet::point(std::shared_ptr<const FiniteGroup> g) {
    const int n = g->order();
    return make(std::move(g), std::vector<std::vector<int>>(n, std::vector<int>{0}));
}

Subgroup GSet::stabilizer(int x) const {
    Subgroup h;
    for (int a = 0; a < group->order(); ++a)
        if (act[a][x] == x) h.elements.push_back(a);
    return h;
}

std::vector<int> GSet::orbit(int x) const {
    std::vector<int> o;
    for (int a = 0; a < group->order(); ++a) o.push_back(act[a][x]);
    std::sort(o.begin(), o.end());
    o.erase(std::unique(o.begin(), o.end()), o.end());
    return o;
}

GSet coset_gset(std::shared_ptr<const FiniteGroup> g, const Subgroup& h) {
    if (!is_subgroup(*g, h.elements)) throw std::invalid_argument("coset_gset: not a subgroup");
    const int n = g->order();
    std::vector<int> label(n, -1);
    std::vector<int> reps;
    for (int a = 0; a < n; ++a) {
        if (label[a] >= 0) continue;
        for (int y : h.elements) label[g->mul(a, y)] = static_cast<int>(reps.size());
        reps.push_back(a);
    }
    std::vector<std::vector<int>> act(n, std::vector<int>(reps.size()));
    for (int a = 0; a < n; ++a)
        for (size_t i = 0; i < reps.size(); ++i) act[a][i] = label[g->mul(a, reps[i])];
    return GSet::make(std::move(g), std::move(act));
}

GSet disjoint_union(const GSet& a, const GSet& b) {
    if (!(*a.group == *b.group)) throw std::invalid_argument("disjoint_union: different groups");
    std::vector<std::vector<int>> act(a.act.size());
    for (size_t g = 0; g < act.size(); ++g) {
        act[g] = a.act[g];
        for (int y : b.act[g]) act[g].push_back(y + a.size);
    }
    GSet s;
    s.group = a.group;
    s.size = a.size + b.size;
    s.act = std::move(act);
    return s;
}

bool is_equivariant(const GSet& x, const GSet& y, const std::vector<int>& f) {
    if (!(*x.group == *y.group) || static_cast<int>(f.size()) != x.size) return false;
    for (int v : f)
        if (v < 0 || v >= y.size) return false;
    for (int g = 0; g < x.group->order(); ++g)
        for (int p = 0; p < x.size; ++p)
            if (f[x.act[g][p]] != y.act[g][f[p]]) return false;
    return true;
}

FixedPoints fixed_points(const GSet& x, const Subgroup& h) {
    const FiniteGroup& g = *x.group;
    if (!is_subgroup(g, h.elements)) throw std::invalid_argument("fixed_points: not a subgroup");
    FixedPoints fp;
    const auto gens = generating_set(g, h);
    for (int p = 0; p < x.size; ++p) {
        bool fixed = true;
        for (int s : gens)
            if (x.act[s][p] != p) { fixed = false; break; }
        if (fixed) fp.points.push_back(p);
    }
    fp.normalizer = normalizer(g, h).group;
    auto ng = std::make_shared<const FiniteGroup>(subgroup_as_group(g, fp.normalizer));
    std::vector<std::vector<int>> act(fp.normalizer.order(), std::vector<int>(fp.points.size()));
    for (int i = 0; i < fp.normalizer.order(); ++i)
        for (size_t j = 0; j < fp.points.size(); ++j) {
            int q = x.act[fp.normalizer.elements[i]][fp.points[j]];
            act[i][j] = static_cast<int>(std::lower_bound(fp.points.begin(), fp.points.end(), q) - fp.points.begin());
        }
    fp.residual = GSet::make(ng, std::move(act));
    return fp;
}

// ---- equivariant K0

int EquivariantK0::rank() const {
    int r = 0;
    for (auto& o : orbits) r += o.rank();
    return r;
}

RatVec EquivariantK0::unit() const {
    RatVec u(rank());
    for (auto& o : orbits) u.segment(o.offset, o.rank()) = o.ring->unit();
    return u;
}

RatVec EquivariantK0::multiply(const RatVec& a, const RatVec& b) const {
    RatVec c(rank());
    for (auto& o : orbits)
        c.segment(o.offset, o.rank()) =
            o.ring->multiply(a.segment(o.offset, o.rank()), b.segment(o.offset, o.rank()));
    return c;
}

EquivariantK0 equivariant_k0(const GSet& x, Mode mode) {
    const FiniteGroup& g = *x.group;
    EquivariantK0 k;
    k.mode = mode;
    k.x = std::make_shared<const GSet>(x);
    k.orbit_of.assign(x.size, -1);
    k.transversal.assign(x.size, -1);
    const auto gens = generating_set(g, whole_group(g));
    int offset = 0;
    for (int p = 0; p < x.size; ++p) {
        if (k.orbit_of[p] >= 0) continue;
        K0Orbit o;
        o.rep = p;
        const int idx = static_cast<int>(k.orbits.size());
        std::vector<int> queue{p};
        k.orbit_of[p] = idx;
        k.transversal[p] = 0;
        for (size_t q = 0; q < queue.size(); ++q)
            for (int s : gens) {
                int y = x.act[s][queue[q]];
                if (k.orbit_of[y] >= 0) continue;
                k.orbit_of[y] = idx;
                k.transversal[y] = g.mul(s, k.transversal[queue[q]]);
                queue.push_back(y);
            }
        std::sort(queue.begin(), queue.end());
        o.points = std::move(queue);
        o.stabilizer = x.stabilizer(p);
        o.stabilizer_group = stabilizer_group(g, o.stabilizer);
        o.ring = cached_rep_ring(*o.stabilizer_group, mode);
        o.offset = offset;
        offset += o.rank();
        k.orbits.push_back(std::move(o));
    }
    return k;
}

RatVec rg_action(const EquivariantK0& k, const RepRing& rg, const RatVec& v, const RatVec& xi) {
    if (rg.table != character_table(*k.x->group))
        throw InputError("rg_action: representation ring belongs to a different group");
    if (v.size() != rg.rank() || xi.size() != k.rank()) throw InputError("rg_action: coordinate length mismatch");
    const RatVec z = rg.to_irreducible(v);
    RatVec out(k.rank());
    for (auto& o : k.orbits) {
        auto res = restriction_matrix(*k.x->group, o.stabilizer);
        RatVec w = o.ring->from_irreducible(*res * z);
        out.segment(o.offset, o.rank()) = o.ring->multiply(w, xi.segment(o.offset, o.rank()));
    }
    return out;
}

// ---- orbifold decomposition

int OrbifoldSummand::rank() const {
    int r = 0;
    for (auto& p : pieces) r += p.rank();
    return r;
}

std::vector<int> OrbifoldDecomposition::summand_ranks() const {
    std::vector<int> r;
    for (auto& s : summands) r.push_back(s.rank());
    return r;
}

std::vector<int> OrbifoldDecomposition::row_offsets() const {
    std::vector<int> off{0};
    for (auto& s : summands) off.push_back(off.back() + s.rank());
    return off;
}

namespace {

// m * v, skipping zero coordinates of v
RatVec sparse_apply(const RatMat& m, const std::vector<Rational>& v) {
    RatVec out = RatVec::Zero(m.rows());
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            if (m(r, static_cast<Eigen::Index>(i)) != 0) out(r) += m(r, static_cast<Eigen::Index>(i)) * v[i];
    }
    return out;
}

}  // namespace

OrbifoldDecomposition orbifold_decompose(const GSet& x, Mode mode) {
    const FiniteGroup& g = *x.group;
    OrbifoldDecomposition d;
    d.mode = mode;
    d.k0 = equivariant_k0(x, mode);
    const Integer n = g.order();
    // per orbit: the irreducible coordinates of every basis class
    std::vector<std::vector<RatVec>> basis_irr(d.k0.orbits.size());
    for (size_t o = 0; o < d.k0.orbits.size(); ++o) {
        const auto& ring = *d.k0.orbits[o].ring;
        for (int j = 0; j < ring.rank(); ++j) basis_irr[o].push_back(to_rational(IntVec(ring.basis.col(j))));
    }
    // nonzero map entries (row, col, value); the map is block diagonal by orbit
    std::vector<std::tuple<int, int, Rational>> entries;
    std::vector<int> row_orbit;
    const int cols = d.k0.rank();
    // invariant basis and its left inverse per (order, action)
    std::map<std::pair<long, std::vector<long>>, std::tuple<IntMat, RatMat, RatMat>> piece_bases;
    for (auto& cls : cyclic_subgroup_classes(g)) {
        OrbifoldSummand sm;
        sm.cls = cls;
        sm.order = cls.rep.order();
        sm.normalizer = normalizer(g, cls.rep);
        const int s = cls.generator;
        const long m = sm.order;
        for (int p = 0; p < x.size; ++p)
            if (x.act[s][p] == p) sm.fixed.push_back(p);
        std::vector<char> seen(x.size, 0);
        for (int p : sm.fixed) {
            if (seen[p]) continue;
            OrbifoldPiece pc;
            pc.point = p;
            pc.orbit = d.k0.orbit_of[p];
            for (int u : sm.normalizer.group.elements) {
                int q = x.act[u][p];
                if (q == p) pc.point_stabilizer.elements.push_back(u);
                if (!seen[q]) {
                    seen[q] = 1;
                    pc.n_orbit.push_back(q);
                }
            }
            std::sort(pc.n_orbit.begin(), pc.n_orbit.end());
            pc.action = summand_action(g, sm.normalizer, pc.point_stabilizer.elements, mode, m);
            auto key = std::make_pair(m, pc.action);
            auto hit = piece_bases.find(key);
            if (hit == piece_bases.end()) {
                IntMat basis = primitive_invariant_basis(m, pc.action);
                RatMat b = to_rational(basis);
                RatMat left = left_inverse<Rational>(b);
                hit = piece_bases.emplace(key, std::make_tuple(std::move(basis), std::move(b), std::move(left))).first;
            }
            pc.basis = std::get<0>(hit->second);
            const RatMat& b = std::get<1>(hit->second);
            const RatMat& left = std::get<2>(hit->second);
            const int row0 = static_cast<int>(row_orbit.size());
            const auto& orb = d.k0.orbits[pc.orbit];
            for (int j = 0; j < orb.rank(); ++j) {
                Poly val = power_coordinates(value_at(d.k0, pc.orbit, basis_irr[pc.orbit][j], p, s), m);
                RatVec c = sparse_apply(left, val);
                if (sparse_apply(b, std::vector<Rational>(c.begin(), c.end())) != Eigen::Map<const RatVec>(val.data(), static_cast<Eigen::Index>(val.size())))
                    throw VerificationError("fixed-point value leaves the invariant summand at point " +
                                            std::to_string(p));
                for (int r = 0; r < pc.rank(); ++r)
                    if (c(r) != 0) {
                        if (!is_localized(c(r), n))
                            throw VerificationError("LatticeMap entry " + to_string(c(r)) + " outside Z[1/" +
                                                    to_string(n) + "]");
                        entries.emplace_back(row0 + r, orb.offset + j, c(r));
                    }
            }
            row_orbit.insert(row_orbit.end(), pc.rank(), pc.orbit);
            sm.pieces.push_back(std::move(pc));
        }
        d.summands.push_back(std::move(sm));
    }
    d.map.n = n;
    d.map.matrix = RatMat::Zero(static_cast<int>(row_orbit.size()), cols);
    for (auto& [r, c, v] : entries) d.map.matrix(r, c) = std::move(v);
    for (size_t o = 0; o < d.k0.orbits.size(); ++o) {
        const auto& orb = d.k0.orbits[o];
        std::vector<int> sel;
        for (size_t r = 0; r < row_orbit.size(); ++r)
            if (row_orbit[r] == static_cast<int>(o)) sel.push_back(static_cast<int>(r));
        IntMat block(static_cast<int>(sel.size()), orb.rank());
        for (size_t r = 0; r < sel.size(); ++r)
            for (int c = 0; c < orb.rank(); ++c) {
                const Rational& v = d.map.matrix(sel[r], orb.offset + c);
                if (!is_integral(v)) throw VerificationError("orbifold map entry is not integral");
                block(r, c) = numerator_of(v);
            }
        auto diag = smith_normal_form(block).diagonal();
        bool iso = block.rows() == block.cols();
        for (const auto& v : diag)
            if (v == 0 || !prime_support_divides(v, n)) iso = false;
        if (!iso) {
            std::ostringstream os;
            os << "orbifold map not invertible over Z[1/" << n << "] on the orbit of point " << orb.rep << " ("
               << block.rows() << "x" << block.cols() << "); SNF diagonal:";
            for (auto& v : diag) os << ' ' << v;
            throw VerificationError(os.str());
        }
        d.block_snf.push_back(std::move(diag));
    }
    return d;
}

std::vector<Poly> fixed_point_values(const OrbifoldDecomposition& d, int summand, const RatVec& xi) {
    const auto& sm = d.summands.at(summand);
    std::vector<RatVec> irr;
    for (size_t o = 0; o < d.k0.orbits.size(); ++o) irr.push_back(segment_irreducible(d.k0, static_cast<int>(o), xi));
    std::vector<Poly> out;
    for (int p : sm.fixed) {
        const int o = d.k0.orbit_of[p];
        out.push_back(power_coordinates(value_at(d.k0, o, irr[o], p, sm.cls.generator), sm.order));
    }
    return out;
}

RatMat k0_pullback(const EquivariantK0& kx, const EquivariantK0& ky, const std::vector<int>& f) {
    if (!is_equivariant(*kx.x, *ky.x, f)) throw InputError("k0_pullback: map is not G-equivariant");
    RatMat m = RatMat::Zero(kx.rank(), ky.rank());
    for (size_t oy = 0; oy < ky.orbits.size(); ++oy) {
        const auto& yo = ky.orbits[oy];
        for (int j = 0; j < yo.rank(); ++j) {
            RatVec xi = RatVec::Zero(ky.rank());
            xi(yo.offset + j) = 1;
            RatVec z = segment_irreducible(ky, static_cast<int>(oy), xi);
            for (auto& xo : kx.orbits) {
                const int fy = f[xo.rep];
                if (ky.orbit_of[fy] != static_cast<int>(oy)) continue;
                const auto& tab = *xo.ring->table;
                std::vector<Cyclotomic> vals;
                for (int c = 0; c < tab.size(); ++c) {
                    const int h = xo.stabilizer.elements[tab.class_reps[c]];
                    vals.push_back(value_at(ky, static_cast<int>(oy), z, fy, h));
                }
                auto coords = tab.decompose(vals);
                RatVec w(tab.size());
                for (int i = 0; i < tab.size(); ++i) w(i) = coords[i].rational_value();
                m.block(xo.offset, yo.offset + j, xo.rank(), 1) = xo.ring->from_irreducible(w);
            }
        }
    }
    return m;
}

FunctorialityReport check_functoriality(const OrbifoldDecomposition& dx, const OrbifoldDecomposition& dy,
                                        const std::vector<int>& f) {
    FunctorialityReport rep;
    RatMat pb = k0_pullback(dx.k0, dy.k0, f);
    if (dx.summands.size() != dy.summands.size()) {
        rep.witness = "summand lists differ";
        return rep;
    }
    auto offs = dx.row_offsets();
    for (int j = 0; j < dy.k0.rank(); ++j) {
        RatVec xi = RatVec::Zero(dy.k0.rank());
        xi(j) = 1;
        RatVec pulled = pb.col(j);
        RatVec image = dx.map.matrix * pulled;
        for (size_t k = 0; k < dx.summands.size(); ++k) {
            const auto& sx = dx.summands[k];
            const auto& sy = dy.summands[k];
            auto vx = fixed_point_values(dx, static_cast<int>(k), pulled);
            auto vy = fixed_point_values(dy, static_cast<int>(k), xi);
            for (size_t i = 0; i < sx.fixed.size(); ++i) {
                const int q = f[sx.fixed[i]];
                auto it = std::lower_bound(sy.fixed.begin(), sy.fixed.end(), q);
                if (it == sy.fixed.end() || *it != q || vy[it - sy.fixed.begin()] != vx[i]) {
                    rep.witness = "class " + std::to_string(j) + ", summand " + std::to_string(k) + ", point " +
                                  std::to_string(sx.fixed[i]);
                    return rep;
                }
            }
            // summand coordinates of the pulled-back class are the fixed-point values at the piece points
            int row = offs[k];
            for (auto& pc : sx.pieces) {
                auto it = std::lower_bound(sx.fixed.begin(), sx.fixed.end(), pc.point);
                const Poly& v = vx[it - sx.fixed.begin()];
                RatVec pv(v.size());
                for (size_t i = 0; i < v.size(); ++i) pv(i) = v[i];
                if (to_rational(pc.basis) * image.segment(row, pc.rank()) != pv) {
                    rep.witness = "summand coordinates at point " + std::to_string(pc.point);
                    return rep;
                }
                row += pc.rank();
            }
        }
    }
    rep.ok = true;
    return rep;
}

bool check_idempotent_projection(const OrbifoldDecomposition& d, const VistoliDecomposition& v,
                                 std::string* witness) {
    if (d.mode != v.mode || d.summands.size() != v.summands.size()) {
        if (witness) *witness = "decompositions do not match";
        return false;
    }
    auto offs = d.row_offsets();
    for (int j = 0; j < d.k0.rank(); ++j) {
        RatVec xi = RatVec::Zero(d.k0.rank());
        xi(j) = 1;
        RatVec base = d.map.matrix * xi;
        for (size_t k = 0; k < v.tilde_idempotents.size(); ++k) {
            RatVec img = d.map.matrix * rg_action(d.k0, v.ring, v.tilde_idempotents[k], xi);
            for (int r = 0; r < img.size(); ++r) {
                const bool inside = r >= offs[k] && r < offs[k + 1];
                if (img(r) != (inside ? base(r) : Rational(0))) {
                    if (witness) *witness = "class " + std::to_string(j) + ", idempotent " + std::to_string(k);
                    return false;
                }
            }
        }
    }
    return true;
}

// ---- inertia

InertiaDecomposition inertia_decompose(const GSet& x) {
    const FiniteGroup& g = *x.group;
    const int n = g.order();
    InertiaDecomposition res;
    std::vector<int> label(static_cast<size_t>(n) * x.size, -1);
    for (int a = 0; a < n; ++a)
        for (int p = 0; p < x.size; ++p) {
            if (x.act[a][p] != p || label[static_cast<size_t>(a) * x.size + p] >= 0) continue;
            const int idx = static_cast<int>(res.invariant_form.size());
            res.invariant_form.emplace_back(a, p);
            for (int u = 0; u < n; ++u) label[static_cast<size_t>(g.conj(u, a)) * x.size + x.act[u][p]] = idx;
        }
    res.dimension = static_cast<int>(res.invariant_form.size());
    std::vector<int> hits(res.dimension, 0);
    for (const auto& cl : g.classes()) {
        InertiaClassTerm t;
        t.g = cl.front();
        t.centralizer = centralizer(g, t.g);
        for (int p = 0; p < x.size; ++p)
            if (x.act[t.g][p] == p) t.fixed.push_back(p);
        std::vector<char> seen(x.size, 0);
        for (int p : t.fixed) {
            if (seen[p]) continue;
            t.orbit_reps.push_back(p);
            for (int u : t.centralizer.elements) seen[x.act[u][p]] = 1;
            const int idx = label[static_cast<size_t>(t.g) * x.size + p];
            res.bijection.push_back(idx);
            ++hits[idx];
        }
        res.class_form.push_back(std::move(t));
    }
    res.bijective = std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
    auto k0 = equivariant_k0(x, Mode::Split);
    res.k0_rank = k0.rank();
    res.blocks_are_tables = true;
    std::vector<int> covered(res.dimension, 0);
    for (size_t o = 0; o < k0.orbits.size(); ++o) {
        const auto& orb = k0.orbits[o];
        const auto& tab = *orb.ring->table;
        std::vector<int> seen_orbits;
        for (int c = 0; c < tab.size(); ++c) {
            const int h = orb.stabilizer.elements[tab.class_reps[c]];
            seen_orbits.push_back(label[static_cast<size_t>(h) * x.size + orb.rep]);
        }
        std::sort(seen_orbits.begin(), seen_orbits.end());
        if (std::adjacent_find(seen_orbits.begin(), seen_orbits.end()) != seen_orbits.end())
            res.blocks_are_tables = false;
        for (int i : seen_orbits) ++covered[i];
    }
    for (int c : covered)
        if (c != 1) res.blocks_are_tables = false;
    return res;
}

// ---- Mackey

MackeyReport mackey_check(const FiniteGroup& g, const CyclicClass& sigma) {
    MackeyReport rep;
    const int s = sigma.generator;
    const long m = sigma.rep.order();
    rep.sigma_order = m;
    Normalizer nz = normalizer(g, sigma.rep);
    rep.index = nz.group.order() / m;
    const IntMat b = primitive_invariant_basis(m, summand_action(g, nz, nz.group.elements, Mode::Split, m));
    const RatMat bq = to_rational(b);
    const RatMat left = left_inverse<Rational>(bq);
    const RatMat r = restriction_to_cyclic(g, s).matrix;  // m x #irr
    const RatMat res_ind = r * r.transpose();             // Frobenius reciprocity: Ind = Res^T
    const Poly e = primitive_idempotent(m, Integer(g.order())).element.rational_coords();
    std::vector<int> exponent_of(g.order(), -1);
    for (long j = 0, y = 0; j < m; ++j, y = g.mul(y, s)) exponent_of[y] = static_cast<int>(j);
    auto dcs = double_cosets(g, sigma.rep);
    for (auto& dc : dcs) {
        DoubleCosetTerm t;
        t.rep = dc.rep;
        t.intersection_order = dc.intersection.order();
        t.in_normalizer = nz.group.contains(dc.rep);
        t.annihilated = true;
        rep.terms.push_back(t);
    }
    rep.composite = RatMat(b.cols(), b.cols());
    rep.double_coset_sum = true;
    for (int k = 0; k < b.cols(); ++k) {
        Poly lifted(m, Rational(0));
        for (int i = 0; i < b.rows(); ++i) lifted[i] = bq(i, k);
        Poly incl = cyclic_mul(e, lifted);
        RatVec c(m);
        for (long i = 0; i < m; ++i) c(i) = incl[i];
        RatVec ri = res_ind * c;
        Poly red = reduce_mod_phi(Poly(ri.data(), ri.data() + m), m);
        RatVec rv(red.size());
        for (size_t i = 0; i < red.size(); ++i) rv(i) = red[i];
        RatVec coords = left * rv;
        if (bq * coords != rv) throw VerificationError("Mackey composite leaves the invariant summand");
        rep.composite.col(k) = coords;
        // per double coset: [sigma:tau] f(y^-1 z y) on tau, zero elsewhere
        std::vector<Cyclotomic> cc(incl.begin(), incl.end()), rc(ri.data(), ri.data() + m);
        std::vector<Cyclotomic> fv(m), total(m, Cyclotomic(0L));
        for (long j = 0; j < m; ++j) fv[j] = cyclic_value(cc, j);
        for (size_t d = 0; d < dcs.size(); ++d) {
            const auto& tau = dcs[d].intersection;
            const long idx = m / tau.order();
            const int y = dcs[d].rep;
            for (int z : tau.elements) {
                const int w = g.mul(g.mul(g.inv(y), z), y);
                Cyclotomic term = fv[exponent_of[w]] * Cyclotomic(idx);
                total[exponent_of[z]] += term;
                if (exponent_of[z] == 1 % m && m > 1 && !term.is_zero()) rep.terms[d].annihilated = false;
            }
            if (m == 1) rep.terms[d].annihilated = false;
        }
        for (long j = 0; j < m; ++j)
            if (total[j] != cyclic_value(rc, j)) rep.double_coset_sum = false;
    }
    rep.ok = rep.double_coset_sum && rep.composite == RatMat::Identity(b.cols(), b.cols()) * Rational(rep.index);
    for (auto& t : rep.terms)
        if (!t.in_normalizer && !t.annihilated) rep.ok = false;
    return rep;
}

}  // namespace orbicalc
