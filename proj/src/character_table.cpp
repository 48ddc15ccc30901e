#include "orbicalc/character_table.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>

namespace orbicalc {

namespace {

using i64 = long long;

i64 pow_mod(i64 b, i64 e, i64 p) {
    i64 r = 1;
    b %= p;
    if (b < 0) b += p;
    while (e > 0) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

i64 inv_mod(i64 a, i64 p) { return pow_mod(a, p - 2, p); }

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

i64 primitive_root(i64 p) {
    auto qs = prime_factors(static_cast<long>(p - 1));
    for (i64 g = 2; g < p; ++g) {
        bool ok = true;
        for (long q : qs)
            if (pow_mod(g, (p - 1) / q, p) == 1) { ok = false; break; }
        if (ok) return g;
    }
    return 1;
}

using ModMat = std::vector<std::vector<i64>>;

// Column basis of the kernel of a (rows x cols) over GF(p).
ModMat kernel_mod(ModMat a, int cols, i64 p) {
    const int rows = static_cast<int>(a.size());
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][c]) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(a[piv], a[r]);
        i64 inv = inv_mod(a[r][c], p);
        for (int j = 0; j < cols; ++j) a[r][j] = a[r][j] * inv % p;
        for (int i = 0; i < rows; ++i) {
            if (i == r || !a[i][c]) continue;
            i64 f = a[i][c];
            for (int j = 0; j < cols; ++j) a[i][j] = ((a[i][j] - f * a[r][j]) % p + p) % p;
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<char> is_piv(cols, 0);
    for (int c : pivots) is_piv[c] = 1;
    ModMat basis;  // list of column vectors
    for (int f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        std::vector<i64> v(cols, 0);
        v[f] = 1;
        for (size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = (p - a[k][f]) % p;
        basis.push_back(v);
    }
    return basis;
}

// Put a list of vectors (each length r) into reduced echelon form on their coordinates;
// returns pivot coordinates.
std::vector<int> echelonize(ModMat& vecs, int r, i64 p) {
    std::vector<int> piv;
    int k = 0;
    for (int c = 0; c < r && k < static_cast<int>(vecs.size()); ++c) {
        int s = -1;
        for (int i = k; i < static_cast<int>(vecs.size()); ++i)
            if (vecs[i][c]) { s = i; break; }
        if (s < 0) continue;
        std::swap(vecs[s], vecs[k]);
        i64 inv = inv_mod(vecs[k][c], p);
        for (auto& x : vecs[k]) x = x * inv % p;
        for (int i = 0; i < static_cast<int>(vecs.size()); ++i) {
            if (i == k || !vecs[i][c]) continue;
            i64 f = vecs[i][c];
            for (int j = 0; j < r; ++j) vecs[i][j] = ((vecs[i][j] - f * vecs[k][j]) % p + p) % p;
        }
        piv.push_back(c);
        ++k;
    }
    vecs.resize(k);
    return piv;
}

std::map<std::vector<std::vector<int>>, std::shared_ptr<const CharacterTable>> g_tables;
std::shared_mutex g_tables_rw;

}  // namespace

Cyclotomic complex_conj(const Cyclotomic& x) { return x.conj(-1); }

long CharacterTable::degree(int i) const { return static_cast<long>(chi[i][0].rational_value().convert_to<long>()); }

Cyclotomic CharacterTable::inner(const std::vector<Cyclotomic>& f, const std::vector<Cyclotomic>& g) const {
    Cyclotomic s(0L);
    for (size_t c = 0; c < class_sizes.size(); ++c) {
        if (f[c].is_zero() || g[c].is_zero()) continue;
        s += Cyclotomic(static_cast<long>(class_sizes[c])) * f[c] * complex_conj(g[c]);
    }
    return s * Cyclotomic(Rational(1, group_order));
}

std::vector<Cyclotomic> CharacterTable::decompose(const std::vector<Cyclotomic>& f) const {
    std::vector<Cyclotomic> x;
    for (const auto& row : chi) x.push_back(inner(f, row));
    return x;
}

std::vector<Cyclotomic> CharacterTable::class_function(const std::vector<Cyclotomic>& x) const {
    std::vector<Cyclotomic> f(class_sizes.size(), Cyclotomic(0L));
    for (size_t i = 0; i < chi.size(); ++i) {
        if (x[i].is_zero()) continue;
        for (size_t c = 0; c < f.size(); ++c) f[c] += x[i] * chi[i][c];
    }
    return f;
}

CharacterTable compute_character_table(const FiniteGroup& g) {
    const int n = g.order();
    const int r = g.num_classes();
    const int e = g.exponent();
    CharacterTable t;
    t.group_order = n;
    t.conductor = e;
    for (const auto& cls : g.classes()) {
        t.class_sizes.push_back(static_cast<int>(cls.size()));
        t.class_reps.push_back(cls.front());
    }
    for (int c = 0; c < r; ++c) t.class_inverse.push_back(g.class_of(g.inv(t.class_reps[c])));

    i64 p = e + 1;
    const double bound = 2.0 * std::sqrt(static_cast<double>(n));
    while (!is_prime(p) || static_cast<double>(p) <= bound) p += e;
    const i64 z = pow_mod(primitive_root(p), (p - 1) / e, p);

    // class multiplication coefficients c[i][j][l]
    std::vector<std::vector<std::vector<i64>>> coef(r, std::vector<std::vector<i64>>(r, std::vector<i64>(r, 0)));
    for (int l = 0; l < r; ++l) {
        int gl = t.class_reps[l];
        for (int x = 0; x < n; ++x) coef[g.class_of(x)][g.class_of(g.mul(g.inv(x), gl))][l] += 1;
    }

    // simultaneous eigenspaces of M_i, (M_i)[j][l] = c[i][j][l]
    std::vector<ModMat> spaces;  // each a list of basis vectors
    {
        ModMat id(r, std::vector<i64>(r, 0));
        for (int i = 0; i < r; ++i) id[i][i] = 1;
        spaces.push_back(id);
    }
    for (int i = 1; i < r; ++i) {
        std::vector<ModMat> next;
        for (auto& space : spaces) {
            if (space.size() == 1) {
                next.push_back(space);
                continue;
            }
            auto piv = echelonize(space, r, p);
            const int d = static_cast<int>(space.size());
            // A[a][b]: coordinate a of M_i * space[b]
            ModMat a(d, std::vector<i64>(d, 0));
            for (int b = 0; b < d; ++b) {
                std::vector<i64> img(r, 0);
                for (int j = 0; j < r; ++j) {
                    i64 s = 0;
                    for (int l = 0; l < r; ++l)
                        if (space[b][l]) s = (s + coef[i][j][l] % p * space[b][l]) % p;
                    img[j] = s;
                }
                for (int aa = 0; aa < d; ++aa) a[aa][b] = img[piv[aa]];
            }
            int found = 0;
            for (i64 lam = 0; lam < p && found < d; ++lam) {
                ModMat shifted = a;
                for (int k = 0; k < d; ++k) shifted[k][k] = (shifted[k][k] - lam + p) % p;
                ModMat ker = kernel_mod(shifted, d, p);
                if (ker.empty()) continue;
                found += static_cast<int>(ker.size());
                ModMat sub;
                for (auto& kv : ker) {
                    std::vector<i64> v(r, 0);
                    for (int b = 0; b < d; ++b)
                        if (kv[b])
                            for (int j = 0; j < r; ++j) v[j] = (v[j] + kv[b] * space[b][j]) % p;
                    sub.push_back(v);
                }
                next.push_back(sub);
            }
            if (found != d) throw std::logic_error("character_table: class matrix not diagonalizable mod p");
        }
        spaces.swap(next);
    }
    if (static_cast<int>(spaces.size()) != r)
        throw std::logic_error("character_table: eigenspaces did not split into lines");

    std::vector<std::vector<Cyclotomic>> rows;
    for (auto& space : spaces) {
        std::vector<i64> w = space[0];
        if (!w[0]) throw std::logic_error("character_table: eigenvector vanishes at the identity class");
        i64 s0 = inv_mod(w[0], p);
        for (auto& x : w) x = x * s0 % p;
        i64 denom = 0;
        for (int l = 0; l < r; ++l)
            denom = (denom + w[l] * w[t.class_inverse[l]] % p * inv_mod(t.class_sizes[l], p)) % p;
        i64 d2 = static_cast<i64>(n) % p * inv_mod(denom, p) % p;
        i64 deg = 0;
        for (i64 d = 1; d * d <= n; ++d)
            if (d * d % p == d2) { deg = d; break; }
        if (!deg) throw std::logic_error("character_table: no degree matches mod p");
        std::vector<i64> val(r);
        for (int l = 0; l < r; ++l) val[l] = deg * w[l] % p * inv_mod(t.class_sizes[l], p) % p;
        std::vector<Cyclotomic> row;
        for (int l = 0; l < r; ++l) {
            const int gl = t.class_reps[l];
            const int o = g.element_order(gl);
            const i64 zo = pow_mod(z, e / o, p);
            std::vector<Rational> mult(o);
            i64 total = 0;
            for (int j = 0; j < o; ++j) {
                i64 s = 0;
                for (int k = 0, x = 0; k < o; ++k, x = g.mul(x, gl))
                    s = (s + val[g.class_of(x)] * pow_mod(zo, (static_cast<i64>(o) - j) * k % o, p)) % p;
                s = s * inv_mod(o, p) % p;
                if (s > deg) throw std::logic_error("character_table: eigenvalue multiplicity lift failed");
                mult[j] = Rational(static_cast<long>(s));
                total += s;
            }
            if (total != deg) throw std::logic_error("character_table: multiplicities do not sum to the degree");
            row.push_back(Cyclotomic::from_powers(o, mult).lift(canonical_conductor(e)));
        }
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        auto trivial = [](const std::vector<Cyclotomic>& v) {
            for (auto& x : v)
                if (x != Cyclotomic(1L)) return false;
            return true;
        };
        bool ta = trivial(a), tb = trivial(b);
        if (ta != tb) return ta;
        int c = compare(a[0], b[0]);
        if (c != 0) return c < 0;
        for (size_t i = 1; i < a.size(); ++i) {
            c = compare(a[i], b[i]);
            if (c != 0) return c < 0;
        }
        return false;
    });
    t.chi = std::move(rows);
    validate_character_table(t);
    return t;
}

void validate_character_table(const CharacterTable& t) {
    long sq = 0;
    for (int i = 0; i < t.size(); ++i) {
        sq += t.degree(i) * t.degree(i);
        for (int j = i; j < t.size(); ++j) {
            Cyclotomic ip = t.inner(t.chi[i], t.chi[j]);
            if (ip != Cyclotomic(i == j ? 1L : 0L))
                throw VerificationError("character table rows " + std::to_string(i) + "," + std::to_string(j) +
                                        " are not orthonormal");
        }
    }
    if (sq != t.group_order) throw VerificationError("character degrees do not square-sum to |G|");
}

std::shared_ptr<const CharacterTable> character_table(const FiniteGroup& g) {
    auto key = g.table();
    {
        std::shared_lock lock(g_tables_rw);
        auto it = g_tables.find(key);
        if (it != g_tables.end()) return it->second;
    }
    auto t = std::make_shared<const CharacterTable>(compute_character_table(g));
    std::unique_lock lock(g_tables_rw);
    return g_tables.emplace(std::move(key), t).first->second;
}

}  // namespace orbicalc
