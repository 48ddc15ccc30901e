#include "orbicalc/blocks.hpp"

#include "orbicalc/linalg.hpp"
#include "orbicalc/polyfactor.hpp"
#include "orbicalc/rep_ring.hpp"

#include <map>
#include <random>
#include <tuple>

namespace orbicalc {

namespace {

// ---- polynomials over Q, low degree first

Poly ptrim(Poly f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
    return f;
}

Poly pmul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return ptrim(c);
}

Poly psub(const Poly& a, const Poly& b) {
    Poly c(std::max(a.size(), b.size()), Rational(0));
    for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
    return ptrim(c);
}

std::pair<Poly, Poly> pdivmod(Poly a, const Poly& b) {
    const int db = static_cast<int>(b.size()) - 1;
    a = ptrim(a);
    Poly q;
    if (static_cast<int>(a.size()) - 1 >= db) q.assign(a.size() - db, Rational(0));
    while (!a.empty() && static_cast<int>(a.size()) - 1 >= db) {
        const int shift = static_cast<int>(a.size()) - 1 - db;
        const Rational c = a.back() / b.back();
        q[shift] = c;
        for (int i = 0; i <= db; ++i) a[shift + i] -= c * b[i];
        a = ptrim(a);
    }
    return {ptrim(q), a};
}

// s with s a = 1 mod b, for coprime a, b
Poly inverse_mod_poly(const Poly& a, const Poly& b) {
    Poly r0 = b, r1 = pdivmod(a, b).second, s0, s1{Rational(1)};
    while (!r1.empty()) {
        auto [q, r] = pdivmod(r0, r1);
        Poly s2 = psub(s0, pmul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.size() != 1) throw VerificationError("idempotent lifting: factors are not coprime");
    const Rational inv = Rational(1) / r0[0];
    for (auto& c : s0) c *= inv;
    return pdivmod(s0, b).second;
}

Poly monic_rational(const ZPoly& f) {
    Poly p;
    for (auto& c : f) p.emplace_back(c);
    const Rational lc = p.back();
    for (auto& c : p) c /= lc;
    return p;
}

// ---- commutative Q-algebras given by left multiplication matrices

struct QAlgebra {
    int dim = 0;
    // left[i] lists the nonzero entries (row, col, value) of multiplication by b_i
    std::vector<std::vector<std::tuple<int, int, Rational>>> left;
    RatVec unit;

    RatMat mult_by(const RatVec& u) const {
        RatMat m = RatMat::Constant(dim, dim, Rational(0));
        for (int i = 0; i < dim; ++i) {
            if (u(i).is_zero()) continue;
            for (auto& [r, c, x] : left[i]) m(r, c) += x * u(i);
        }
        return m;
    }
    RatVec times(const RatVec& u, const RatVec& v) const {
        RatVec out = RatVec::Constant(dim, Rational(0));
        for (int i = 0; i < dim; ++i) {
            if (u(i).is_zero()) continue;
            for (auto& [r, c, x] : left[i])
                if (!v(c).is_zero()) out(r) += x * u(i) * v(c);
        }
        return out;
    }
};

RatVec mat_vec(const RatMat& m, const RatVec& v) {
    RatVec out = RatVec::Constant(m.rows(), Rational(0));
    for (int j = 0; j < m.cols(); ++j) {
        if (v(j).is_zero()) continue;
        for (int i = 0; i < m.rows(); ++i)
            if (!m(i, j).is_zero()) out(i) += m(i, j) * v(j);
    }
    return out;
}

// Primitive idempotents of a commutative semisimple Q-algebra, found by splitting
// along minimal polynomials of elements.
std::vector<RatVec> primitive_idempotents(const QAlgebra& c) {
    // multiplication by an idempotent is a projection, so its rank is its trace
    std::vector<Rational> trace(c.dim, Rational(0));
    for (int i = 0; i < c.dim; ++i)
        for (auto& [r, col, x] : c.left[i])
            if (r == col) trace[i] += x;
    auto component_dim = [&](const RatVec& e) {
        Rational t(0);
        for (int i = 0; i < c.dim; ++i) t += trace[i] * e(i);
        return static_cast<int>(t.convert_to<long>());
    };

    std::vector<RatVec> done, todo{c.unit};
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> idx(0, std::max(0, c.dim - 1));
    while (!todo.empty()) {
        RatVec e = todo.back();
        todo.pop_back();
        const int w = component_dim(e);
        if (w == 0) continue;
        if (w == 1) {
            done.push_back(e);
            continue;
        }
        bool resolved = false;
        for (int attempt = 0; attempt < c.dim + 400 && !resolved; ++attempt) {
            // basis elements first, then sparse random combinations (dense ones blow up the Krylov coefficients)
            RatVec y = RatVec::Constant(c.dim, Rational(0));
            if (attempt < c.dim) {
                y(attempt) = Rational(1);
            } else {
                const int terms = 2 + (attempt - c.dim) / 50;
                for (int t = 0; t < terms; ++t) y(idx(rng)) += Rational(coef(rng));
            }
            const RatMat lx = c.mult_by(c.times(e, y));
            // Krylov sequence e, x e, x^2 e, ... until the first dependence
            std::vector<RatVec> powers, reduced;
            std::vector<int> pivot;
            std::vector<std::vector<Rational>> combo;  // reduced[j] = sum_k combo[j][k] powers[k]
            Poly f;
            RatVec v = e;
            for (int k = 0; k <= w; ++k) {
                std::vector<Rational> cmb(k + 1, Rational(0));
                cmb[k] = Rational(1);
                RatVec r = v;
                for (size_t j = 0; j < reduced.size(); ++j) {
                    const Rational a = r(pivot[j]);
                    if (a.is_zero()) continue;
                    r -= reduced[j] * a;
                    for (size_t t = 0; t < combo[j].size(); ++t) cmb[t] -= a * combo[j][t];
                }
                int p = -1;
                for (int i = 0; i < c.dim; ++i)
                    if (!r(i).is_zero()) { p = i; break; }
                powers.push_back(v);
                if (p < 0) {
                    f = cmb;  // monic of degree k
                    break;
                }
                const Rational inv = Rational(1) / r(p);
                r *= inv;
                for (auto& x : cmb) x *= inv;
                reduced.push_back(r);
                pivot.push_back(p);
                combo.push_back(std::move(cmb));
                v = mat_vec(lx, v);
            }
            const int d = static_cast<int>(f.size()) - 1;
            const auto factors = factor_squarefree(clear_denominators(f));
            if (factors.size() == 1) {
                if (d == w) {
                    done.push_back(e);
                    resolved = true;
                }
                continue;
            }
            for (const auto& zf : factors) {
                const Poly fi = monic_rational(zf);
                const Poly gi = pdivmod(f, fi).first;
                const Poly ei = pdivmod(pmul(inverse_mod_poly(gi, fi), gi), f).second;
                RatVec out = RatVec::Constant(c.dim, Rational(0));
                for (size_t k = 0; k < ei.size(); ++k)
                    if (!ei[k].is_zero()) out += powers[k] * ei[k];
                todo.push_back(out);
            }
            resolved = true;
        }
        if (!resolved) throw VerificationError("block splitting found no separating element");
    }
    return done;
}

// Z over Q(zeta_m) with structure constants gamma[i][j] (length dim each), viewed over Q
QAlgebra restrict_scalars(const std::vector<std::vector<std::vector<Cyclotomic>>>& gamma,
                          const std::vector<Cyclotomic>& unit, long m) {
    const int n = static_cast<int>(unit.size());
    const int phi = static_cast<int>(euler_phi(m));
    QAlgebra q;
    q.dim = n * phi;
    std::vector<std::map<std::pair<int, int>, Rational>> acc(q.dim);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (gamma[i][j][k].is_zero()) continue;
                // coordinates of gamma zeta^s for every exponent s = a + b
                std::vector<Poly> pcs(2 * phi - 1);
                for (int e = 0; e < 2 * phi - 1; ++e) pcs[e] = power_coordinates(gamma[i][j][k] * Cyclotomic::zeta(m, e), m);
                for (int a = 0; a < phi; ++a)
                    for (int b = 0; b < phi; ++b)
                        for (int t = 0; t < phi; ++t)
                            if (!pcs[a + b][t].is_zero()) acc[i * phi + a][{k * phi + t, j * phi + b}] += pcs[a + b][t];
            }
    q.left.resize(q.dim);
    for (int i = 0; i < q.dim; ++i)
        for (auto& [rc, x] : acc[i])
            if (!x.is_zero()) q.left[i].emplace_back(rc.first, rc.second, x);
    q.unit = RatVec::Constant(q.dim, Rational(0));
    for (int i = 0; i < n; ++i) {
        const Poly pc = power_coordinates(unit[i], m);
        for (int t = 0; t < phi; ++t) q.unit(i * phi + t) = pc[t];
    }
    return q;
}

}  // namespace

BlockCountReport simple_block_count(const FinDimAlgebra& a, long ext_conductor) {
    BlockCountReport rep;
    if (ext_conductor < 1) throw InputError("block count: extension conductor must be positive");
    rep.base_conductor = canonical_conductor(a.conductor());
    rep.ext_conductor = canonical_conductor(ext_conductor);
    if (rep.ext_conductor % rep.base_conductor != 0)
        throw InputError("block count: Q(zeta_" + std::to_string(a.conductor()) + ") is not inside Q(zeta_" +
                         std::to_string(ext_conductor) + ")");
    const int n = a.dim;
    rep.dim = n;

    // radical = kernel of the trace form
    std::vector<Cyclotomic> tr(n, Cyclotomic(0L));
    for (int k = 0; k < n; ++k)
        for (auto& [m, v] : a.table[k]) tr[k] += sv_get(v, m);
    CycMat t = CycMat::Constant(n, n, Cyclotomic(0L));
    for (int i = 0; i < n; ++i)
        for (auto& [j, v] : a.table[i])
            for (auto& [k, c] : v) t(i, j) += c * tr[k];
    const CycMat rad = kernel<Cyclotomic>(t);
    rep.radical_dim = static_cast<int>(rad.cols());

    std::vector<SparseVec> rvecs;
    SparseEliminator rspan;
    for (int c = 0; c < rad.cols(); ++c) {
        SparseVec v;
        for (int i = 0; i < n; ++i)
            if (!rad(i, c).is_zero()) v.emplace_back(i, rad(i, c));
        rvecs.push_back(v);
        rspan.add(v);
    }
    for (auto& r : rvecs)
        for (int i = 0; i < n; ++i)
            if (!rspan.contains(a.multiply(sv_unit(i), r)) || !rspan.contains(a.multiply(r, sv_unit(i))))
                throw VerificationError("trace-form kernel is not an ideal");
    {
        std::vector<SparseVec> power = rvecs;
        for (int step = 0; step <= n && !power.empty(); ++step) {
            SparseEliminator next;
            std::vector<SparseVec> basis;
            for (auto& p : power)
                for (auto& r : rvecs) {
                    SparseVec w = a.multiply(p, r);
                    if (next.add(w)) basis.push_back(w);
                }
            if (static_cast<int>(basis.size()) >= static_cast<int>(power.size()) && !basis.empty())
                throw VerificationError("trace-form kernel is not nilpotent");
            power = std::move(basis);
        }
    }

    // semisimple quotient on the non-pivot coordinates of the radical
    const auto ech = rref<Cyclotomic>(CycMat(rad.transpose()));
    std::vector<char> is_piv(n, 0);
    for (int p : ech.pivots) is_piv[p] = 1;
    std::vector<int> qidx(n, -1), qcols;
    for (int i = 0; i < n; ++i)
        if (!is_piv[i]) {
            qidx[i] = static_cast<int>(qcols.size());
            qcols.push_back(i);
        }
    auto to_quotient = [&](const SparseVec& v) {
        std::vector<Cyclotomic> dense(n, Cyclotomic(0L));
        for (auto& [i, c] : v) dense[i] = c;
        for (size_t r = 0; r < ech.pivots.size(); ++r) {
            const Cyclotomic c = dense[ech.pivots[r]];
            if (c.is_zero()) continue;
            for (int j = 0; j < n; ++j)
                if (!ech.r(r, j).is_zero()) dense[j] -= c * ech.r(r, j);
        }
        SparseVec out;
        for (int i : qcols)
            if (!dense[i].is_zero()) out.emplace_back(qidx[i], dense[i]);
        return out;
    };
    const int sdim = static_cast<int>(qcols.size());
    FinDimAlgebra s = FinDimAlgebra::zero(sdim);
    for (int i = 0; i < sdim; ++i)
        for (int j = 0; j < sdim; ++j) s.set_product(i, j, to_quotient(a.product(qcols[i], qcols[j])));
    s.unit = to_quotient(a.unit);

    // center of the quotient with its own structure constants
    const CenterResult z = center(s);
    const int m = static_cast<int>(z.basis.size());
    rep.center_dim = m;
    CycMat zm = CycMat::Constant(sdim, m, Cyclotomic(0L));
    for (int k = 0; k < m; ++k)
        for (auto& [i, c] : z.basis[k]) zm(i, k) = c;
    CycMat prods = CycMat::Constant(sdim, m * m + 1, Cyclotomic(0L));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (auto& [k, c] : s.multiply(z.basis[i], z.basis[j])) prods(k, i * m + j) = c;
    for (auto& [k, c] : s.unit) prods(k, m * m) = c;
    const auto coords = solve<Cyclotomic>(zm, prods);
    if (!coords) throw VerificationError("center is not closed under multiplication");
    std::vector<std::vector<std::vector<Cyclotomic>>> gamma(m, std::vector<std::vector<Cyclotomic>>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) gamma[i][j].push_back((*coords)(k, i * m + j));
    std::vector<Cyclotomic> zunit;
    for (int k = 0; k < m; ++k) zunit.push_back((*coords)(k, m * m));

    const long nb = rep.base_conductor, ne = rep.ext_conductor;
    const int phib = static_cast<int>(euler_phi(nb)), phie = static_cast<int>(euler_phi(ne));
    const QAlgebra zb = restrict_scalars(gamma, zunit, nb);
    const QAlgebra ze = restrict_scalars(gamma, zunit, ne);
    const auto eb = primitive_idempotents(zb);
    const auto ee = primitive_idempotents(ze);
    rep.blocks_base = static_cast<int>(eb.size());
    rep.blocks_ext = static_cast<int>(ee.size());
    for (auto& e : eb) rep.base_degrees.push_back(rank<Rational>(zb.mult_by(e)) / phib);
    for (auto& e : ee) rep.ext_degrees.push_back(rank<Rational>(ze.mult_by(e)) / phie);

    // base idempotents written in the coordinates of the extension
    rep.inclusion = IntMat::Constant(rep.blocks_ext, rep.blocks_base, Integer(0));
    std::vector<RatVec> lifted;
    for (auto& e : eb) {
        RatVec v = RatVec::Constant(ze.dim, Rational(0));
        for (int i = 0; i < m; ++i) {
            std::vector<Rational> c(phib);
            for (int t = 0; t < phib; ++t) c[t] = e(i * phib + t);
            const Poly pc = power_coordinates(Cyclotomic::from_powers(nb, c), ne);
            for (int t = 0; t < phie; ++t) v(i * phie + t) = pc[t];
        }
        lifted.push_back(v);
    }
    for (int j = 0; j < rep.blocks_ext; ++j) {
        int under = 0;
        for (int i = 0; i < rep.blocks_base; ++i)
            if (ze.times(lifted[i], ee[j]) == ee[j]) {
                rep.inclusion(j, i) = Integer(1);
                ++under;
            }
        if (under != 1) throw VerificationError("extended block " + std::to_string(j) + " lies under " +
                                                std::to_string(under) + " base blocks");
    }
    rep.injective = rank<Rational>(to_rational(rep.inclusion)) == rep.blocks_base;
    return rep;
}

}  // namespace orbicalc
