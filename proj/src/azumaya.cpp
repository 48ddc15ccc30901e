#include "orbicalc/azumaya.hpp"

#include "orbicalc/linalg.hpp"

#include <set>

namespace orbicalc {

namespace {

CycMat identity(int r) {
    CycMat m(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) m(i, j) = Cyclotomic(i == j ? 1L : 0L);
    return m;
}

bool mat_equal(const CycMat& a, const CycMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (a(i, j) != b(i, j)) return false;
    return true;
}

// lambda with a = lambda b, if any
std::optional<Cyclotomic> proportional(const CycMat& a, const CycMat& b) {
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j)
            if (!b(i, j).is_zero()) {
                Cyclotomic l = a(i, j) / b(i, j);
                if (l.is_zero()) return std::nullopt;
                CycMat lb = b;
                for (int p = 0; p < b.rows(); ++p)
                    for (int q = 0; q < b.cols(); ++q) lb(p, q) *= l;
                if (!mat_equal(a, lb)) return std::nullopt;
                return l;
            }
    return std::nullopt;
}

int azumaya_index(int p, int a, int b, int r) { return (p * r + a) * r + b; }

// g(E_ab) = rho E_ab rho^-1 = sum_cd rho_ca inv_bd E_cd, at point q
SparseVec conjugate_unit(const CycMat& rho, const CycMat& inv, int a, int b, int q, int r) {
    SparseVec v;
    for (int c = 0; c < r; ++c) {
        if (rho(c, a).is_zero()) continue;
        for (int d = 0; d < r; ++d) {
            if (inv(b, d).is_zero()) continue;
            v.emplace_back(azumaya_index(q, c, d, r), rho(c, a) * inv(b, d));
        }
    }
    return v;
}

int rank_of(const std::vector<SparseVec>& vs) {
    SparseEliminator el;
    for (auto& v : vs) el.add(v);
    return el.rank();
}

std::string vec_str(const SparseVec& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(v[i].first) + ":" + v[i].second.str();
    }
    return s + "]";
}

}  // namespace

ProjectiveRep ProjectiveRep::make(std::shared_ptr<const FiniteGroup> g, std::vector<CycMat> rho) {
    if (!g) throw InputError("projective representation without a group");
    const int n = g->order();
    if (static_cast<int>(rho.size()) != n) throw InputError("projective representation needs one matrix per element");
    const int r = static_cast<int>(rho[0].rows());
    if (r < 1) throw InputError("projective representation of rank 0");
    for (auto& m : rho)
        if (m.rows() != r || m.cols() != r) throw InputError("projective representation matrices must be r x r");
    if (!mat_equal(rho[0], identity(r))) throw InputError("projective representation must send e to the identity");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (!proportional(mul<Cyclotomic>(rho[a], rho[b]), rho[g->mul(a, b)]))
                throw InputError("rho(" + std::to_string(a) + ") rho(" + std::to_string(b) +
                                 ") is not a nonzero multiple of rho(product)");
    ProjectiveRep p;
    p.group = std::move(g);
    p.r = r;
    p.rho = std::move(rho);
    return p;
}

ProjectiveRep ProjectiveRep::trivial(std::shared_ptr<const FiniteGroup> g) {
    const int n = g->order();
    return make(std::move(g), std::vector<CycMat>(n, identity(1)));
}

ProjectiveRep ProjectiveRep::pauli(std::shared_ptr<const FiniteGroup> g) {
    if (g->order() != 4 || g->exponent() != 2) throw InputError("Pauli representation needs the Klein four group");
    CycMat z = identity(2), x(2, 2);
    z(1, 1) = Cyclotomic(-1L);
    x(0, 0) = x(1, 1) = Cyclotomic(0L);
    x(0, 1) = x(1, 0) = Cyclotomic(1L);
    const int a = 1, b = 2;
    std::vector<CycMat> rho(4);
    rho[0] = identity(2);
    rho[a] = z;
    rho[b] = x;
    rho[g->mul(a, b)] = mul<Cyclotomic>(z, x);
    return make(std::move(g), std::move(rho));
}

ProjectiveRep ProjectiveRep::twisted_regular(const CocycleTable& alpha) {
    const FiniteGroup& g = *alpha.group;
    const int n = g.order();
    std::vector<CycMat> rho(n);
    for (int x = 0; x < n; ++x) {
        CycMat m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = Cyclotomic(0L);
        for (int h = 0; h < n; ++h) m(g.mul(x, h), h) = alpha.value(x, h);
        rho[x] = std::move(m);
    }
    return make(alpha.group, std::move(rho));
}

Cyclotomic ProjectiveRep::multiplier(int g, int h) const {
    return *proportional(mul<Cyclotomic>(rho[g], rho[h]), rho[group->mul(g, h)]);
}

AzumayaModel equivariant_azumaya(const GSet& x, const ProjectiveRep& rho) {
    if (!rho.group || !x.group || !(*rho.group == *x.group))
        throw InputError("azumaya model: representation and G-set use different groups");
    const FiniteGroup& g = *x.group;
    const int r = rho.r, n = g.order();
    FinDimAlgebra a = FinDimAlgebra::zero(x.size * r * r);
    a.group = x.group;
    a.support.resize(a.dim);
    for (int p = 0; p < x.size; ++p)
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                const int idx = azumaya_index(p, i, j, r);
                a.labels[idx] = "e" + std::to_string(p) + "E" + std::to_string(i) + std::to_string(j);
                a.support[idx] = p;
                for (int k = 0; k < r; ++k) a.set_product(idx, azumaya_index(p, j, k, r), sv_unit(azumaya_index(p, i, k, r)));
            }
    for (int p = 0; p < x.size; ++p)
        for (int i = 0; i < r; ++i) a.unit.emplace_back(azumaya_index(p, i, i, r), Cyclotomic(1L));
    a.action.assign(n, std::vector<SparseVec>(a.dim));
    for (int s = 0; s < n; ++s) {
        const CycMat inv = inverse<Cyclotomic>(rho.rho[s]);
        for (int p = 0; p < x.size; ++p)
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j)
                    a.action[s][azumaya_index(p, i, j, r)] = conjugate_unit(rho.rho[s], inv, i, j, x.apply(s, p), r);
    }
    a.validate();
    AzumayaModel m;
    m.x = std::make_shared<const GSet>(x);
    m.rho = rho;
    m.algebra = std::move(a);
    return m;
}

RestrictedAlgebra restrict_to_fixed(const FinDimAlgebra& f, const GSet& x, const Subgroup& sigma) {
    if (f.support.size() != static_cast<size_t>(f.dim) || f.action.empty())
        throw InputError("restrict_to_fixed: algebra needs a support map and a group action");
    if (!f.group || !(*f.group == *x.group)) throw InputError("restrict_to_fixed: algebra and G-set use different groups");
    const FiniteGroup& g = *x.group;
    RestrictedAlgebra out;
    out.sigma = sigma;
    std::vector<int> local_point(x.size, -1);
    for (int p = 0; p < x.size; ++p) {
        bool fixed = true;
        for (int s : sigma.elements)
            if (x.apply(s, p) != p) { fixed = false; break; }
        if (fixed) {
            local_point[p] = static_cast<int>(out.points.size());
            out.points.push_back(p);
        }
    }
    std::vector<int> local(f.dim, -1);
    for (int i = 0; i < f.dim; ++i) {
        if (f.support[i] < 0 || f.support[i] >= x.size) throw InputError("restrict_to_fixed: support outside the G-set");
        if (local_point[f.support[i]] < 0) continue;
        local[i] = static_cast<int>(out.original.size());
        out.original.push_back(i);
    }
    auto to_local = [&](const SparseVec& v) {
        SparseVec w;
        for (auto& [idx, c] : v) {
            if (local[idx] < 0) throw VerificationError("restriction leaves the fixed locus at basis element " + std::to_string(idx));
            w.emplace_back(local[idx], c);
        }
        return w;
    };
    FinDimAlgebra a = FinDimAlgebra::zero(static_cast<int>(out.original.size()));
    a.group = std::make_shared<const FiniteGroup>(subgroup_as_group(g, sigma));
    a.support.resize(a.dim);
    for (int idx = 0; idx < a.dim; ++idx) {
        const int orig = out.original[idx];
        a.labels[idx] = f.labels[orig];
        a.support[idx] = local_point[f.support[orig]];
        for (auto& [j, v] : f.table[orig])
            if (local[j] >= 0) a.set_product(idx, local[j], to_local(v));
    }
    for (auto& [idx, c] : f.unit)
        if (local[idx] >= 0) a.unit.emplace_back(local[idx], c);
    a.action.assign(sigma.order(), std::vector<SparseVec>(a.dim));
    for (int i = 0; i < sigma.order(); ++i)
        for (int idx = 0; idx < a.dim; ++idx) a.action[i][idx] = to_local(f.action[sigma.elements[i]][out.original[idx]]);
    out.algebra = std::move(a);
    return out;
}

RestrictedAlgebra restrict_to_fixed(const AzumayaModel& m, const Subgroup& sigma) {
    return restrict_to_fixed(m.algebra, *m.x, sigma);
}

GradedCenterReport verify_strongly_graded(const FinDimAlgebra& f, int num_points) {
    if (!f.group || f.action.empty()) throw InputError("verify_strongly_graded: algebra carries no group action");
    const FiniteGroup& g = *f.group;
    const int n = g.order();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (g.mul(a, b) != g.mul(b, a)) throw InputError("verify_strongly_graded: grading group must be abelian");
    if (static_cast<int>(f.support.size()) != f.dim) throw InputError("verify_strongly_graded: support map missing");
    for (int p : f.support)
        if (p < 0 || p >= num_points) throw InputError("verify_strongly_graded: support out of range");

    const FinDimAlgebra s = skew_group_algebra(f);
    const CenterResult z = center(s);
    GradedCenterReport rep;
    rep.skew_dim = s.dim;
    std::vector<std::vector<SparseVec>> comp(n);
    for (size_t k = 0; k < z.basis.size(); ++k) comp[z.degree[k]].push_back(z.basis[k]);

    // point idempotents 1_p inside F # G
    std::vector<SparseVec> one(num_points);
    for (auto& [i, c] : f.unit) one[f.support[i]].emplace_back(skew_index(i, 0, n), c);

    auto fail = [&](const std::string& w) {
        if (rep.witness.empty()) rep.witness = w;
    };
    rep.component_dims.resize(n);
    rep.rank_one.resize(n);
    std::vector<int> z_at_point(num_points, 0);
    for (int x = 0; x < n; ++x) {
        rep.component_dims[x] = static_cast<int>(comp[x].size());
        bool ok = rep.component_dims[x] == num_points;
        for (int p = 0; p < num_points; ++p) {
            std::vector<SparseVec> local;
            for (auto& v : comp[x]) local.push_back(s.multiply(one[p], v));
            const int d = rank_of(local);
            z_at_point[p] += d;
            if (d != 1) {
                ok = false;
                fail("degree " + std::to_string(x) + " center component has dim " + std::to_string(d) + " at point " +
                     std::to_string(p) + (comp[x].empty() ? std::string(" (empty)") : "; spanned by " + vec_str(comp[x][0])));
            }
        }
        if (rep.component_dims[x] != num_points && rep.witness.empty())
            fail("degree " + std::to_string(x) + " center component has dim " + std::to_string(rep.component_dims[x]));
        rep.rank_one[x] = ok;
    }

    rep.products_surjective = true;
    for (int x = 0; x < n && rep.products_surjective; ++x)
        for (int y = 0; y < n; ++y) {
            SparseEliminator target;
            for (auto& v : comp[g.mul(x, y)]) target.add(v);
            SparseEliminator img;
            for (auto& u : comp[x])
                for (auto& v : comp[y]) {
                    SparseVec w = s.multiply(u, v);
                    if (!target.contains(w)) throw VerificationError("center is not graded: product leaves its degree");
                    img.add(w);
                }
            if (img.rank() != target.rank()) {
                rep.products_surjective = false;
                fail("multiplication of degrees " + std::to_string(x) + " and " + std::to_string(y) +
                     " is not surjective (rank " + std::to_string(img.rank()) + " of " + std::to_string(target.rank()) + ")");
                break;
            }
        }

    // F tensor over Map(points) with Z, and its image under multiplication
    std::vector<int> f_at_point(num_points, 0);
    for (int p : f.support) ++f_at_point[p];
    rep.tensor_dim = 0;
    for (int p = 0; p < num_points; ++p) rep.tensor_dim += f_at_point[p] * z_at_point[p];
    SparseEliminator img;
    for (int i = 0; i < f.dim; ++i)
        for (auto& v : z.basis) img.add(s.multiply(sv_unit(skew_index(i, 0, n)), v));
    rep.image_rank = img.rank();
    if (rep.image_rank != rep.skew_dim) fail("multiplication F (x) Z -> F # G is not surjective");
    if (rep.tensor_dim != rep.skew_dim) fail("dim F (x) Z = " + std::to_string(rep.tensor_dim) + " differs from dim F # G");

    bool all_rank_one = true;
    for (bool b : rep.rank_one) all_rank_one = all_rank_one && b;
    rep.ok = all_rank_one && rep.products_surjective && rep.image_rank == rep.skew_dim && rep.tensor_dim == rep.skew_dim;
    return rep;
}

TwistedHH0Report twisted_hh0_decomposition(const AzumayaModel& m) { return twisted_hh0_decomposition(m.algebra, *m.x); }

TwistedHH0Report twisted_hh0_decomposition(const FinDimAlgebra& f, const GSet& xs) {
    if (!f.group || !(*f.group == *xs.group) || f.action.empty())
        throw InputError("twisted_hh0_decomposition: algebra must carry an action of the G-set's group");
    const FiniteGroup& g = *xs.group;
    const int n = g.order();
    const FinDimAlgebra a = skew_group_algebra(f);
    const HH0Result h = hh0(a);
    CommutatorSpace comm = commutator_space(a);

    // L_g embedded in F # G
    std::vector<std::vector<SparseVec>> lg(n);
    for (int x = 0; x < n; ++x) {
        const Subgroup sigma = cyclic_subgroup(g, x);
        const RestrictedAlgebra res = restrict_to_fixed(f, xs, sigma);
        const int so = sigma.order();
        const int xi = static_cast<int>(std::lower_bound(sigma.elements.begin(), sigma.elements.end(), x) - sigma.elements.begin());
        const FinDimAlgebra s = skew_group_algebra(res.algebra);
        const CenterResult z = center(s);
        for (size_t k = 0; k < z.basis.size(); ++k) {
            if (z.degree[k] != xi) continue;
            SparseVec v;
            for (auto& [idx, c] : z.basis[k]) {
                const int fi = idx / so;
                if (idx % so != xi) throw std::logic_error("center component is not homogeneous");
                v.emplace_back(skew_index(res.original[fi], x, n), c);
            }
            std::sort(v.begin(), v.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
            lg[x].push_back(std::move(v));
        }
    }

    // conjugation by u_h: h(a) u_{h g h^-1}
    auto phi = [&](int hh, const SparseVec& v) {
        std::map<int, Cyclotomic> acc;
        for (auto& [idx, c] : v) {
            const int fi = idx / n, x = idx % n;
            const int y = g.conj(hh, x);
            for (auto& [j, d] : f.action[hh][fi]) {
                auto it = acc.find(skew_index(j, y, n));
                if (it == acc.end())
                    acc.emplace(skew_index(j, y, n), c * d);
                else
                    it->second += c * d;
            }
        }
        SparseVec out;
        for (auto& [k, c] : acc)
            if (!c.is_zero()) out.emplace_back(k, c);
        return out;
    };

    TwistedHH0Report rep;
    rep.lhs = h.dim;
    rep.stable = true;
    rep.injective = true;
    const auto gens = generating_set(g, whole_group(g));
    for (int c = 0; c < g.num_classes(); ++c) {
        std::vector<SparseVec> basis;
        SparseEliminator span;
        for (int x : g.classes()[c])
            for (auto& v : lg[x]) {
                basis.push_back(v);
                span.add(v);
            }
        std::map<std::pair<int, int>, SparseVec> eqs;
        for (size_t i = 0; i < basis.size(); ++i)
            for (int s : gens) {
                SparseVec w = phi(s, basis[i]);
                if (!span.contains(w)) rep.stable = false;
                w = sv_add(w, basis[i], Cyclotomic(-1L));
                for (auto& [k, x] : w) eqs[{s, k}].emplace_back(static_cast<int>(i), x);
            }
        SparseEliminator el;
        for (auto& [key, row] : eqs) el.add(row);
        const auto inv = el.kernel(static_cast<int>(basis.size()));

        SparseEliminator modcomm = comm.per_class[c];
        for (auto& coeffs : inv) {
            SparseVec v;
            for (auto& [i, x] : coeffs) v = sv_add(v, basis[i], x);
            if (!modcomm.add(v)) rep.injective = false;
        }
        TwistedClassTerm t;
        t.cls = c;
        t.lhs = h.class_dims.empty() ? 0 : h.class_dims[c];
        t.rhs = static_cast<int>(inv.size());
        rep.rhs += t.rhs;
        rep.terms.push_back(t);
    }
    rep.ok = rep.stable && rep.injective && rep.lhs == rep.rhs;
    for (auto& t : rep.terms) rep.ok = rep.ok && t.lhs == t.rhs;
    return rep;
}

}  // namespace orbicalc
