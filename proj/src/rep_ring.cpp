#include "orbicalc/rep_ring.hpp"

#include "orbicalc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace orbicalc {

namespace {

using i64 = long long;

i64 pow_mod(i64 b, i64 e, i64 p) {
    i64 r = 1;
    b = ((b % p) + p) % p;
    for (; e > 0; e >>= 1, b = b * b % p)
        if (e & 1) r = r * b % p;
    return r;
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Poly zero_poly(size_t len) { return Poly(len, Rational(0)); }

RatVec to_vec(const Poly& p) {
    RatVec v(static_cast<int>(p.size()));
    for (size_t i = 0; i < p.size(); ++i) v(static_cast<int>(i)) = p[i];
    return v;
}

Poly to_poly(const RatVec& v) {
    Poly p(v.size());
    for (int i = 0; i < v.size(); ++i) p[i] = v(i);
    return p;
}

}  // namespace

std::string to_string(Mode m) { return m == Mode::Split ? "split" : "rational"; }

Mode parse_mode(const std::string& s) {
    if (s == "split") return Mode::Split;
    if (s == "rational") return Mode::Rational;
    throw InputError("mode must be 'split' or 'rational', got '" + s + "'");
}

bool RepRingElement::is_rational() const {
    for (const auto& c : coords)
        if (!c.is_rational()) return false;
    return true;
}

bool RepRingElement::is_localized(const Integer& n) const {
    if (!is_rational()) return false;
    for (const auto& c : coords)
        if (!orbicalc::is_localized(c.rational_value(), n)) return false;
    return true;
}

std::vector<Rational> RepRingElement::rational_coords() const {
    std::vector<Rational> r;
    for (const auto& c : coords) r.push_back(c.rational_value());
    return r;
}

// ---- polynomials

Poly reduce_mod_phi(const Poly& c, long j) {
    const auto& phi = cyclotomic_polynomial(j);
    const long deg = static_cast<long>(phi.size()) - 1;
    Poly r = c;
    if (static_cast<long>(r.size()) < deg) r.resize(deg, Rational(0));
    for (long i = static_cast<long>(r.size()) - 1; i >= deg; --i) {
        if (r[i].is_zero()) continue;
        Rational top = r[i];
        for (long k = 0; k <= deg; ++k)
            if (phi[k]) r[i - deg + k] -= top * phi[k];
    }
    r.resize(deg);
    return r;
}

Poly mul_mod_phi(const Poly& a, const Poly& b, long j) {
    Poly p = zero_poly(a.size() + b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t k = 0; k < b.size(); ++k)
            if (!b[k].is_zero()) p[i + k] += a[i] * b[k];
    }
    return reduce_mod_phi(p, j);
}

Poly galois_mod_phi(const Poly& c, long b, long j) {
    Poly p = zero_poly(static_cast<size_t>(j));
    for (size_t i = 0; i < c.size(); ++i)
        if (!c[i].is_zero()) p[mod_pos(static_cast<long>(i) * b, j)] += c[i];
    return reduce_mod_phi(p, j);
}

std::vector<Cyclotomic> cyclic_mul(const std::vector<Cyclotomic>& a, const std::vector<Cyclotomic>& b) {
    const size_t m = a.size();
    std::vector<Cyclotomic> c(m, Cyclotomic(0L));
    for (size_t i = 0; i < m; ++i) {
        if (a[i].is_zero()) continue;
        for (size_t k = 0; k < m; ++k)
            if (!b[k].is_zero()) c[(i + k) % m] += a[i] * b[k];
    }
    return c;
}

Poly cyclic_mul(const Poly& a, const Poly& b) {
    const size_t m = a.size();
    Poly c = zero_poly(m);
    for (size_t i = 0; i < m; ++i) {
        if (a[i].is_zero()) continue;
        for (size_t k = 0; k < m; ++k)
            if (!b[k].is_zero()) c[(i + k) % m] += a[i] * b[k];
    }
    return c;
}

Poly cyclic_galois(const Poly& c, long b) {
    const long m = static_cast<long>(c.size());
    Poly r = zero_poly(m);
    for (long k = 0; k < m; ++k) r[mod_pos(k * b, m)] += c[k];
    return r;
}

Poly cyclic_restrict(const Poly& c, long d) {
    Poly r = zero_poly(d);
    for (size_t k = 0; k < c.size(); ++k) r[k % d] += c[k];
    return r;
}

Cyclotomic cyclic_value(const std::vector<Cyclotomic>& c, long j) {
    const long m = static_cast<long>(c.size());
    Cyclotomic s(0L);
    for (long k = 0; k < m; ++k)
        if (!c[k].is_zero()) s += c[k] * Cyclotomic::zeta(m, k * j);
    return s;
}

Poly power_coordinates(const Cyclotomic& v, long m) {
    static std::mutex mu;
    static std::map<long, std::shared_ptr<const RatMat>> cache;
    std::shared_ptr<const RatMat> conv;
    {
        std::lock_guard lock(mu);
        auto it = cache.find(m);
        if (it != cache.end()) conv = it->second;
    }
    const long phi = euler_phi(m);
    if (!conv) {
        RatMat e(phi, phi);
        for (long i = 0; i < phi; ++i) {
            auto z = Cyclotomic::zeta(m, i).lift(canonical_conductor(m));
            for (long j = 0; j < phi; ++j) e(j, i) = z.coeffs()[j];
        }
        auto inv = std::make_shared<const RatMat>(inverse<Rational>(e));
        std::lock_guard lock(mu);
        conv = cache.emplace(m, inv).first->second;
    }
    auto d = v.descend(m);
    if (!d) throw VerificationError("value " + v.str() + " is not in Q(zeta_" + std::to_string(m) + ")");
    Poly out(phi, Rational(0));
    for (long i = 0; i < phi; ++i)
        for (long j = 0; j < phi; ++j)
            if (!(*conv)(i, j).is_zero()) out[i] += (*conv)(i, j) * d->coeffs()[j];
    return out;
}

// ---- decomposition of Z[1/n][t]/(t^m - 1)

std::vector<CyclicComponent> cyclic_group_ring_decomposition(long m, const Integer& n) {
    if (m <= 0 || n % m != 0)
        throw std::invalid_argument("cyclic_group_ring_decomposition: m must divide n");
    std::vector<CyclicComponent> comps;
    RatMat stacked(0, m);
    for (long j : divisors(m)) {
        CyclicComponent c;
        c.j = j;
        c.rank = euler_phi(j);
        c.projection = RatMat(c.rank, m);
        for (long k = 0; k < m; ++k) {
            Poly tk = zero_poly(k + 1);
            tk[k] = 1;
            Poly red = reduce_mod_phi(tk, j);
            for (long i = 0; i < c.rank; ++i) c.projection(i, k) = red[i];
        }
        RatMat grown(stacked.rows() + c.rank, m);
        grown << stacked, c.projection;
        stacked = grown;
        comps.push_back(std::move(c));
    }
    RatMat inv = inverse<Rational>(stacked);
    long off = 0;
    for (auto& c : comps) {
        c.section = inv.middleCols(off, c.rank);
        off += c.rank;
        for (int a = 0; a < c.section.rows(); ++a)
            for (int b = 0; b < c.section.cols(); ++b)
                if (!is_localized(c.section(a, b), n))
                    throw VerificationError("section entry outside Z[1/n]");
    }
    return comps;
}

PrimitiveIdempotent primitive_idempotent(long m, const Integer& n) {
    if (m <= 0 || n % m != 0) throw std::invalid_argument("primitive_idempotent: |sigma| must divide n");
    Poly e = zero_poly(m);
    e[0] = 1;
    for (long p : prime_factors(m)) {
        // 1 - e_rho' for the subgroup of order p of sigma^dual
        Poly f = zero_poly(m);
        f[0] = 1;
        for (long k = 0; k < p; ++k) f[k * (m / p)] -= Rational(1, p);
        e = cyclic_mul(e, f);
    }
    if (cyclic_mul(e, e) != e) throw VerificationError("e_prim is not idempotent");
    PrimitiveIdempotent out;
    out.m = m;
    out.element.owner = "C" + std::to_string(m);
    out.element.basis = Basis::TPower;
    for (auto& x : e) out.element.coords.emplace_back(x);
    for (long j : divisors(m)) {
        Poly pj = reduce_mod_phi(e, j);
        Poly expect = zero_poly(pj.size());
        if (j == m) expect[0] = 1;
        if (pj != expect) throw VerificationError("e_prim does not project to delta_{j,m}");
        out.projections.push_back(pj);
    }
    if (!out.element.is_localized(n)) throw VerificationError("e_prim leaves Z[1/n]");
    return out;
}

PrimitiveIdempotent primitive_idempotent(const FiniteGroup& g, const Subgroup& sigma, const Integer& n) {
    if (!is_cyclic(g, sigma)) throw std::invalid_argument("primitive_idempotent: subgroup is not cyclic");
    return primitive_idempotent(sigma.order(), n);
}

RepRingElement degree_idempotent(long m, long j, const Integer& n) {
    if (m <= 0 || n % m != 0) throw std::invalid_argument("degree_idempotent: |sigma| must divide n");
    if (j < 0 || j >= m) throw std::invalid_argument("degree_idempotent: element not in sigma");
    RepRingElement e;
    e.owner = "C" + std::to_string(m);
    e.basis = Basis::TPower;
    const Cyclotomic inv_m(Rational(1, m));
    for (long k = 0; k < m; ++k) e.coords.push_back(Cyclotomic::zeta(m, -k * j) * inv_m);
    if (cyclic_mul(e.coords, e.coords) != e.coords) throw VerificationError("degree idempotent is not idempotent");
    return e;
}

LatticeMap cyclic_restriction(long m, long d) {
    if (d <= 0 || m % d != 0) throw std::invalid_argument("cyclic_restriction: not a subgroup");
    LatticeMap r;
    r.n = m;
    r.matrix = RatMat::Zero(d, m);
    for (long k = 0; k < m; ++k) r.matrix(k % d, k) = 1;
    return r;
}

LatticeMap restriction(const FiniteGroup& g, const Subgroup& h) {
    if (!is_subgroup(g, h.elements)) throw std::invalid_argument("restriction: not a subgroup");
    auto tg = character_table(g);
    FiniteGroup hg = subgroup_as_group(g, h);
    auto th = character_table(hg);
    LatticeMap r;
    r.n = g.order();
    r.matrix = RatMat(th->size(), tg->size());
    for (int i = 0; i < tg->size(); ++i) {
        std::vector<Cyclotomic> res;
        for (int c = 0; c < hg.num_classes(); ++c) res.push_back(tg->chi[i][g.class_of(h.elements[th->class_reps[c]])]);
        auto coords = th->decompose(res);
        for (int k = 0; k < th->size(); ++k) r.matrix(k, i) = coords[k].rational_value();
    }
    return r;
}

LatticeMap restriction_to_cyclic(const FiniteGroup& g, int s) {
    auto tg = character_table(g);
    const long m = g.element_order(s);
    LatticeMap r;
    r.n = g.order();
    r.matrix = RatMat(m, tg->size());
    std::vector<int> powers(m);
    for (long j = 0, x = 0; j < m; ++j, x = g.mul(x, s)) powers[j] = x;
    const Cyclotomic inv_m(Rational(1, m));
    for (int i = 0; i < tg->size(); ++i)
        for (long k = 0; k < m; ++k) {
            Cyclotomic c(0L);
            for (long j = 0; j < m; ++j) c += tg->chi[i][g.class_of(powers[j])] * Cyclotomic::zeta(m, -k * j);
            c *= inv_m;
            r.matrix(k, i) = c.rational_value();
        }
    return r;
}

// ---- character square

CharacterIso character_iso(long m) {
    CharacterIso ci;
    ci.m = m;
    const long phi = euler_phi(m);
    for (long j = 0; j < m; ++j)
        if (gcd_long(j, m) == 1) ci.generators.push_back(j);
    if (m == 1) ci.generators = {0};
    ci.lower = CycMat(m, m);
    for (long j = 0; j < m; ++j)
        for (long k = 0; k < m; ++k) ci.lower(j, k) = Cyclotomic::zeta(m, k * j);
    auto e = primitive_idempotent(m, Integer(m)).element.coords;
    ci.inclusion = CycMat(m, phi);
    for (long i = 0; i < phi; ++i) {
        std::vector<Cyclotomic> ti(m, Cyclotomic(0L));
        ti[i] = 1L;
        auto eti = cyclic_mul(e, ti);
        for (long k = 0; k < m; ++k) ci.inclusion(k, i) = eti[k];
    }
    ci.upper = CycMat(phi, phi);
    for (long r = 0; r < phi; ++r)
        for (long i = 0; i < phi; ++i) {
            // value of e t^i at the generator s^(generators[r]), computed from the t-coordinates
            std::vector<Cyclotomic> col(m);
            for (long k = 0; k < m; ++k) col[k] = ci.inclusion(k, i);
            ci.upper(r, i) = cyclic_value(col, ci.generators[r]);
        }
    CycMat around = mul<Cyclotomic>(ci.lower, ci.inclusion);
    ci.commutes = true;
    ci.supported_on_generators = true;
    for (long j = 0; j < m; ++j) {
        auto it = std::find(ci.generators.begin(), ci.generators.end(), j);
        for (long i = 0; i < phi; ++i) {
            if (it == ci.generators.end()) {
                if (!around(j, i).is_zero()) ci.supported_on_generators = false;
            } else if (around(j, i) != ci.upper(it - ci.generators.begin(), i)) {
                ci.commutes = false;
            }
        }
    }
    ci.lower_invertible = rank<Cyclotomic>(ci.lower) == m;
    ci.upper_invertible = rank<Cyclotomic>(ci.upper) == phi;
    return ci;
}

MaximalityReport check_maximality(long m) {
    if (m > 30) throw std::invalid_argument("check_maximality: 2^m enumeration limited to m <= 30");
    MaximalityReport rep;
    rep.m = m;
    auto e = primitive_idempotent(m, Integer(m));
    // exact support of e_sigma as a function on sigma
    unsigned long long supp = 0, gens = 0;
    bool values_one = true;
    for (long j = 0; j < m; ++j) {
        Cyclotomic v = cyclic_value(e.element.coords, j);
        if (!v.is_zero()) {
            supp |= 1ULL << j;
            if (v != Cyclotomic(1L)) values_one = false;
        }
        if (gcd_long(j, m) == 1) gens |= 1ULL << j;
    }
    rep.support_is_generators = values_one && supp == gens;
    // restriction to the subgroup of order d corresponds to restricting functions to multiples of m/d
    rep.restriction_compatible = true;
    rep.proper_restrictions_vanish = true;
    std::vector<unsigned long long> sub_masks;
    for (long d : divisors(m)) {
        if (d == m) continue;
        unsigned long long mask = 0;
        for (long j = 0; j < d; ++j) mask |= 1ULL << (j * (m / d));
        sub_masks.push_back(mask);
        for (long k = 0; k < m; ++k) {
            Poly tk = zero_poly(m);
            tk[k] = 1;
            Poly res = cyclic_restrict(tk, d);
            std::vector<Cyclotomic> rc(res.begin(), res.end()), tc(tk.begin(), tk.end());
            for (long j = 0; j < d; ++j)
                if (cyclic_value(rc, j) != cyclic_value(tc, j * (m / d))) rep.restriction_compatible = false;
        }
        auto er = cyclic_restrict(e.element.rational_coords(), d);
        for (auto& x : er)
            if (!x.is_zero()) rep.proper_restrictions_vanish = false;
    }
    const unsigned long long total = 1ULL << m;
    rep.subsets = total;
    rep.maximal = true;
    for (unsigned long long s = 0; s < total; ++s) {
        bool vanish = true;
        for (auto mask : sub_masks)
            if (s & mask) { vanish = false; break; }
        if (!vanish) continue;
        ++rep.vanishing;
        if ((s & supp) != s) rep.maximal = false;
    }
    return rep;
}

// ---- R(G) rings

std::vector<long> split_structure_constants(const CharacterTable& t) {
    const int r = t.size();
    const long big = lcm_long(t.conductor, 4);
    i64 p = big + 1;
    while (!is_prime(p) || p <= 4L * t.group_order + 1) p += big;
    // primitive root of order big
    i64 z = 0;
    for (i64 g = 2; g < p && !z; ++g) {
        bool ok = true;
        for (long q : prime_factors(static_cast<long>(p - 1)))
            if (pow_mod(g, (p - 1) / q, p) == 1) { ok = false; break; }
        if (ok) z = pow_mod(g, (p - 1) / big, p);
    }
    auto reduce = [&](const Cyclotomic& x) {
        const long c = x.conductor();
        const i64 zc = pow_mod(z, big / c, p);
        i64 s = 0;
        for (size_t i = 0; i < x.coeffs().size(); ++i) {
            if (x.coeffs()[i].is_zero()) continue;
            i64 num = static_cast<i64>(numerator_of(x.coeffs()[i]).convert_to<long long>() % p);
            i64 den = static_cast<i64>(denominator_of(x.coeffs()[i]).convert_to<long long>() % p);
            i64 v = ((num % p) + p) % p * pow_mod(den, p - 2, p) % p;
            s = (s + v * pow_mod(zc, static_cast<i64>(i), p)) % p;
        }
        return s;
    };
    std::vector<std::vector<i64>> red(r, std::vector<i64>(r));
    for (int i = 0; i < r; ++i)
        for (int c = 0; c < r; ++c) red[i][c] = reduce(t.chi[i][c]);
    const i64 inv_n = pow_mod(t.group_order, p - 2, p);
    std::vector<long> n(static_cast<size_t>(r) * r * r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k) {
                i64 s = 0;
                for (int c = 0; c < r; ++c)
                    s = (s + static_cast<i64>(t.class_sizes[c]) * red[i][c] % p * red[j][c] % p *
                                 red[k][t.class_inverse[c]]) % p;
                s = s * inv_n % p;
                if (s > t.group_order) throw VerificationError("structure constant out of range");
                n[(static_cast<size_t>(i) * r + j) * r + k] = static_cast<long>(s);
            }
    return n;
}

std::vector<int> galois_permutation(const FiniteGroup& g, const CharacterTable& t, long a) {
    std::vector<int> perm(t.size(), -1);
    for (int i = 0; i < t.size(); ++i) {
        std::vector<Cyclotomic> row;
        for (int c = 0; c < t.size(); ++c) row.push_back(t.chi[i][g.class_of(g.power(t.class_reps[c], a))]);
        for (int k = 0; k < t.size(); ++k)
            if (t.chi[k] == row) { perm[i] = k; break; }
        if (perm[i] < 0) throw VerificationError("Galois twist of a character is not irreducible");
    }
    return perm;
}

RatVec RepRing::unit() const {
    RatVec z = RatVec::Zero(table->size());
    z(0) = 1;
    return from_irreducible(z);
}

RatVec RepRing::to_irreducible(const RatVec& x) const { return to_rational(basis) * x; }

RatVec RepRing::from_irreducible(const RatVec& z) const {
    RatVec x = basis_left * z;
    if (to_rational(basis) * x != z) throw VerificationError("class outside the R(G) lattice span");
    return x;
}

RatVec RepRing::multiply(const RatVec& x, const RatVec& y) const {
    const int r = table->size();
    RatVec a = to_irreducible(x), b = to_irreducible(y);
    RatVec z = RatVec::Zero(r);
    for (int i = 0; i < r; ++i) {
        if (a(i).is_zero()) continue;
        for (int j = 0; j < r; ++j) {
            if (b(j).is_zero()) continue;
            Rational ab = a(i) * b(j);
            for (int k = 0; k < r; ++k) {
                long c = nconst[(static_cast<size_t>(i) * r + j) * r + k];
                if (c) z(k) += ab * c;
            }
        }
    }
    return from_irreducible(z);
}

RepRing rep_ring(const FiniteGroup& g, Mode mode) {
    RepRing ring;
    ring.mode = mode;
    ring.table = character_table(g);
    const int r = ring.table->size();
    if (mode == Mode::Split) {
        ring.basis = IntMat::Identity(r, r);
    } else {
        std::vector<IntMat> action{IntMat::Identity(r, r)};
        for (long a : unit_generators(g.exponent())) {
            auto perm = galois_permutation(g, *ring.table, a);
            IntMat p = IntMat::Zero(r, r);
            for (int i = 0; i < r; ++i) p(perm[i], i) = 1;
            action.push_back(p);
        }
        ring.basis = invariant_sublattice(action);
    }
    ring.basis_left = left_inverse<Rational>(to_rational(ring.basis));
    ring.nconst = split_structure_constants(*ring.table);
    return ring;
}

RepRing rational_form(const FiniteGroup& g) { return rep_ring(g, Mode::Rational); }

std::shared_ptr<const RepRing> cached_rep_ring(const FiniteGroup& g, Mode mode) {
    static std::mutex mu;
    static std::map<std::pair<const CharacterTable*, Mode>, std::shared_ptr<const RepRing>> cache;
    auto t = character_table(g);
    {
        std::lock_guard lock(mu);
        auto it = cache.find({t.get(), mode});
        if (it != cache.end()) return it->second;
    }
    auto r = std::make_shared<const RepRing>(rep_ring(g, mode));
    std::lock_guard lock(mu);
    return cache.emplace(std::make_pair(t.get(), mode), r).first->second;
}

// ---- Vistoli

IntMat primitive_invariant_basis(long m, const std::vector<long>& exponents) {
    const long phi = euler_phi(m);
    std::vector<IntMat> action{IntMat::Identity(phi, phi)};
    for (long b : exponents) {
        IntMat a(phi, phi);
        for (long i = 0; i < phi; ++i) {
            Poly ti = zero_poly(phi);
            ti[i] = 1;
            Poly img = galois_mod_phi(ti, b, m);
            for (long k = 0; k < phi; ++k) a(k, i) = numerator_of(img[k]);
        }
        action.push_back(a);
    }
    return invariant_sublattice(action);
}

std::vector<long> summand_action(const FiniteGroup& g, const Normalizer& nz, const std::vector<int>& subgroup_elems,
                                 Mode mode, long m) {
    std::vector<long> ex;
    Subgroup sub{subgroup_elems};
    for (int u : generating_set(g, sub)) {
        long a = mod_pos(nz.power_of(u), m);
        if (m > 1 && a != 1 && std::find(ex.begin(), ex.end(), a) == ex.end()) ex.push_back(a);
    }
    if (mode == Mode::Rational)
        for (long b : unit_generators(m))
            if (std::find(ex.begin(), ex.end(), b) == ex.end()) ex.push_back(b);
    return ex;
}

std::vector<int> VistoliDecomposition::summand_ranks() const {
    std::vector<int> r;
    for (auto& s : summands) r.push_back(s.rank());
    return r;
}

std::vector<int> VistoliDecomposition::row_offsets() const {
    std::vector<int> off{0};
    for (auto& s : summands) off.push_back(off.back() + s.rank());
    return off;
}

VistoliDecomposition vistoli_decompose(const FiniteGroup& g, Mode mode) {
    VistoliDecomposition v;
    v.mode = mode;
    v.group_order = g.order();
    v.ring = rep_ring(g, mode);
    const Integer n = g.order();
    const RatMat domain = to_rational(v.ring.basis);
    std::vector<RatMat> blocks;
    int rows = 0;
    for (auto& cls : cyclic_subgroup_classes(g)) {
        VistoliSummand s;
        s.cls = cls;
        s.order = cls.rep.order();
        s.normalizer = normalizer(g, cls.rep);
        s.action = summand_action(g, s.normalizer, s.normalizer.group.elements, mode, s.order);
        s.basis = primitive_invariant_basis(s.order, s.action);
        const long m = s.order;
        // raw: pi_m(e_sigma * Res chi_i) in the power basis of Z[t]/Phi_m
        LatticeMap res = restriction_to_cyclic(g, cls.generator);
        Poly e = primitive_idempotent(m, n).element.rational_coords();
        const long phi = euler_phi(m);
        RatMat raw(phi, res.matrix.cols());
        for (int i = 0; i < res.matrix.cols(); ++i) {
            Poly c = to_poly(res.matrix.col(i));
            Poly pm = reduce_mod_phi(cyclic_mul(e, c), m);
            for (long k = 0; k < phi; ++k) raw(k, i) = pm[k];
        }
        RatMat image = mul<Rational>(raw, domain);
        auto coords = solve<Rational>(to_rational(s.basis), image);
        if (!coords) throw VerificationError("Vistoli image leaves the invariant summand for sigma of order " +
                                             std::to_string(m));
        blocks.push_back(*coords);
        rows += s.rank();
        v.summands.push_back(std::move(s));
    }
    v.map.n = n;
    v.map.matrix = RatMat(rows, v.ring.rank());
    int off = 0;
    for (auto& b : blocks) {
        v.map.matrix.middleRows(off, b.rows()) = b;
        off += static_cast<int>(b.rows());
    }
    v.map.validate();
    IntMat mi = to_integer(v.map.matrix);
    v.snf_diagonal = smith_normal_form(mi).diagonal();
    if (!is_iso_over_localization(mi, n)) {
        std::ostringstream os;
        os << "Vistoli map not invertible over Z[1/" << n << "]; SNF diagonal:";
        for (auto& d : v.snf_diagonal) os << ' ' << d;
        throw VerificationError(os.str());
    }
    RatMat inv = inverse<Rational>(v.map.matrix);
    auto offs = v.row_offsets();
    RatVec total = RatVec::Zero(v.ring.rank());
    for (size_t i = 0; i < v.summands.size(); ++i) {
        const auto& s = v.summands[i];
        // coordinates of 1 in the summand basis
        IntVec one = IntVec::Zero(euler_phi(s.order));
        one(0) = 1;
        IntVec u = lattice_coordinates(s.basis, one);
        RatVec target = RatVec::Zero(rows);
        for (int k = 0; k < u.size(); ++k) target(offs[i] + k) = Rational(u(k));
        RatVec et = inv * target;
        for (int k = 0; k < et.size(); ++k)
            if (!is_localized(et(k), n)) throw VerificationError("tilde idempotent leaves Z[1/n]");
        total += et;
        v.tilde_idempotents.push_back(et);
    }
    if (total != v.ring.unit()) throw VerificationError("tilde idempotents do not sum to 1");
    for (size_t i = 0; i < v.tilde_idempotents.size(); ++i)
        for (size_t j = i; j < v.tilde_idempotents.size(); ++j) {
            RatVec p = v.ring.multiply(v.tilde_idempotents[i], v.tilde_idempotents[j]);
            RatVec expect = (i == j) ? v.tilde_idempotents[i] : RatVec(RatVec::Zero(v.ring.rank()));
            if (p != expect)
                throw VerificationError("tilde idempotents " + std::to_string(i) + "," + std::to_string(j) +
                                        " are not orthogonal idempotents");
        }
    return v;
}

RatVec summand_product(const VistoliDecomposition& v, const RatVec& a, const RatVec& b) {
    auto offs = v.row_offsets();
    RatVec out(a.size());
    for (size_t i = 0; i < v.summands.size(); ++i) {
        const auto& s = v.summands[i];
        const int k = s.rank();
        if (k == 0) continue;
        RatMat bs = to_rational(s.basis);
        RatVec pa = bs * a.segment(offs[i], k), pb = bs * b.segment(offs[i], k);
        Poly prod = mul_mod_phi(to_poly(pa), to_poly(pb), s.order);
        auto x = solve<Rational>(bs, RatMat(to_vec(prod)));
        if (!x) throw VerificationError("summand product leaves the invariant lattice");
        out.segment(offs[i], k) = x->col(0);
    }
    return out;
}

bool check_ring_homomorphism(const VistoliDecomposition& v, std::string* witness) {
    const int k = v.ring.rank();
    std::vector<RatVec> images;
    for (int i = 0; i < k; ++i) images.push_back(v.map.matrix.col(i));
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) {
            RatVec ei = RatVec::Zero(k), ej = RatVec::Zero(k);
            ei(i) = 1;
            ej(j) = 1;
            RatVec lhs = v.map.matrix * v.ring.multiply(ei, ej);
            RatVec rhs = summand_product(v, images[i], images[j]);
            if (lhs != rhs) {
                if (witness) *witness = "basis pair (" + std::to_string(i) + "," + std::to_string(j) + ")";
                return false;
            }
        }
    // unit goes to unit
    RatVec one = v.map.matrix * v.ring.unit();
    RatVec ones = RatVec::Zero(one.size());
    for (size_t i = 0; i < v.tilde_idempotents.size(); ++i) ones += v.map.matrix * v.tilde_idempotents[i];
    if (one != ones) {
        if (witness) *witness = "unit";
        return false;
    }
    return true;
}

bool check_split_rational_compatible(const VistoliDecomposition& split, const VistoliDecomposition& rational,
                                     std::string* witness) {
    if (split.summands.size() != rational.summands.size()) {
        if (witness) *witness = "summand count differs";
        return false;
    }
    // M_split * B_rat == Incl * M_rat, with Incl mapping rational summand coordinates into split ones
    auto so = split.row_offsets(), ro = rational.row_offsets();
    RatMat incl = RatMat::Zero(so.back(), ro.back());
    for (size_t i = 0; i < split.summands.size(); ++i) {
        auto x = solve<Rational>(to_rational(split.summands[i].basis), to_rational(rational.summands[i].basis));
        if (!x) {
            if (witness) *witness = "rational summand not inside split summand " + std::to_string(i);
            return false;
        }
        incl.block(so[i], ro[i], x->rows(), x->cols()) = *x;
    }
    RatMat lhs = split.map.matrix * to_rational(rational.ring.basis);
    RatMat rhs = incl * rational.map.matrix;
    if (lhs != rhs) {
        if (witness) *witness = "square does not commute";
        return false;
    }
    return true;
}

}  // namespace orbicalc
