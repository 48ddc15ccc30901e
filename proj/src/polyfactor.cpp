#include "orbicalc/polyfactor.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace orbicalc {

namespace {

using i64 = long long;
using FPoly = std::vector<i64>;  // over GF(q), low degree first

i64 md(i64 a, i64 q) { return ((a % q) + q) % q; }

i64 pw(i64 b, i64 e, i64 q) {
    i64 r = 1;
    b = md(b, q);
    for (; e > 0; e >>= 1, b = b * b % q)
        if (e & 1) r = r * b % q;
    return r;
}

void ftrim(FPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

FPoly fsub(const FPoly& a, const FPoly& b, i64 q) {
    FPoly c(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] = md(c[i] - b[i], q);
    ftrim(c);
    return c;
}

FPoly fmul(const FPoly& a, const FPoly& b, i64 q) {
    if (a.empty() || b.empty()) return {};
    FPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % q;
    }
    ftrim(c);
    return c;
}

// quotient and remainder
std::pair<FPoly, FPoly> fdivmod(FPoly a, const FPoly& b, i64 q) {
    ftrim(a);
    if (b.empty()) throw std::domain_error("division by zero polynomial");
    const i64 inv = pw(b.back(), q - 2, q);
    if (a.size() < b.size()) return {{}, a};
    FPoly quo(a.size() - b.size() + 1, 0);
    for (size_t i = a.size(); i-- >= b.size();) {
        i64 c = a[i] * inv % q;
        quo[i - b.size() + 1] = c;
        if (c)
            for (size_t j = 0; j < b.size(); ++j) a[i - b.size() + 1 + j] = md(a[i - b.size() + 1 + j] - c * b[j], q);
        if (i == 0) break;
    }
    ftrim(a);
    ftrim(quo);
    return {quo, a};
}

FPoly fmod(const FPoly& a, const FPoly& b, i64 q) { return fdivmod(a, b, q).second; }

FPoly fmonic(FPoly f, i64 q) {
    if (f.empty()) return f;
    const i64 inv = pw(f.back(), q - 2, q);
    for (auto& c : f) c = c * inv % q;
    return f;
}

FPoly fgcd(FPoly a, FPoly b, i64 q) {
    while (!b.empty()) {
        FPoly r = fmod(a, b, q);
        a = std::move(b);
        b = std::move(r);
    }
    return fmonic(a, q);
}

// s, t with s a + t b = 1 (a, b coprime)
std::pair<FPoly, FPoly> fxgcd(const FPoly& a, const FPoly& b, i64 q) {
    FPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        auto [quo, rem] = fdivmod(r0, r1, q);
        FPoly s2 = fsub(s0, fmul(quo, s1, q), q), t2 = fsub(t0, fmul(quo, t1, q), q);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.size() != 1) throw std::logic_error("xgcd: inputs not coprime");
    const i64 inv = pw(r0[0], q - 2, q);
    for (auto& c : s0) c = c * inv % q;
    for (auto& c : t0) c = c * inv % q;
    return {s0, t0};
}

FPoly fpowmod(FPoly b, i64 e, const FPoly& m, i64 q) {
    FPoly r{1};
    b = fmod(b, m, q);
    for (; e > 0; e >>= 1) {
        if (e & 1) r = fmod(fmul(r, b, q), m, q);
        b = fmod(fmul(b, b, q), m, q);
    }
    return r;
}

FPoly fderiv(const FPoly& f, i64 q) {
    FPoly d;
    for (size_t i = 1; i < f.size(); ++i) d.push_back(static_cast<i64>(i) % q * f[i] % q);
    ftrim(d);
    return d;
}

FPoly reduce(const ZPoly& f, i64 q) {
    FPoly r;
    for (auto& c : f) {
        Integer m = c % q;
        r.push_back(md(m.convert_to<i64>(), q));
    }
    ftrim(r);
    return r;
}

// distinct-degree factorization of a monic squarefree polynomial: (product, degree)
std::vector<std::pair<FPoly, int>> ddf(FPoly f, i64 q) {
    std::vector<std::pair<FPoly, int>> out;
    FPoly x{0, 1};
    FPoly h = fmod(x, f, q);
    for (int d = 1; 2 * d <= static_cast<int>(f.size()) - 1; ++d) {
        h = fpowmod(h, q, f, q);
        FPoly g = fgcd(f, fsub(h, x, q), q);
        if (g.size() > 1) {
            out.emplace_back(g, d);
            f = fdivmod(f, g, q).first;
            h = fmod(h, f, q);
        }
    }
    if (f.size() > 1) out.emplace_back(fmonic(f, q), static_cast<int>(f.size()) - 1);
    return out;
}

// equal-degree splitting (q odd)
void edf(const FPoly& f, int d, i64 q, std::mt19937_64& rng, std::vector<FPoly>& out) {
    const int n = static_cast<int>(f.size()) - 1;
    if (n == d) {
        out.push_back(f);
        return;
    }
    std::uniform_int_distribution<i64> coef(0, q - 1);
    while (true) {
        FPoly a(n, 0);
        for (auto& c : a) c = coef(rng);
        ftrim(a);
        if (a.size() < 2) continue;
        // a^(1 + q + ... + q^(d-1)) then to the (q-1)/2
        FPoly s = fmod(a, f, q), fr = s;
        for (int i = 1; i < d; ++i) {
            fr = fpowmod(fr, q, f, q);
            s = fmod(fmul(s, fr, q), f, q);
        }
        FPoly b = fpowmod(s, (q - 1) / 2, f, q);
        b = fsub(b, FPoly{1}, q);
        FPoly g = fgcd(f, b, q);
        if (g.size() > 1 && g.size() < f.size()) {
            edf(g, d, q, rng, out);
            edf(fmonic(fdivmod(f, g, q).first, q), d, q, rng, out);
            return;
        }
    }
}

// ---- integer polynomials modulo M

Integer smod(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

ZPoly zmod(ZPoly f, const Integer& m) {
    for (auto& c : f) c = smod(c, m);
    return trim(f);
}

ZPoly zsub(const ZPoly& a, const ZPoly& b) {
    ZPoly c(std::max(a.size(), b.size()), Integer(0));
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
    return trim(c);
}

ZPoly zadd(const ZPoly& a, const ZPoly& b) {
    ZPoly c(std::max(a.size(), b.size()), Integer(0));
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] += b[i];
    return trim(c);
}

Integer inv_mod(const Integer& a, const Integer& m) {
    Integer r0 = m, r1 = smod(a, m), s0 = 0, s1 = 1;
    if (r1 < 0) r1 += m;
    while (r1 != 0) {
        Integer qq = r0 / r1;
        Integer r2 = r0 - qq * r1, s2 = s0 - qq * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if (r0 != 1) throw std::logic_error("inv_mod: not invertible");
    return smod(s0, m);
}

std::pair<ZPoly, ZPoly> zdivmod(ZPoly a, const ZPoly& b, const Integer& m) {
    a = zmod(std::move(a), m);
    const Integer inv = inv_mod(b.back(), m);
    if (a.size() < b.size()) return {{}, a};
    ZPoly quo(a.size() - b.size() + 1, Integer(0));
    for (size_t i = a.size(); i-- >= b.size();) {
        Integer c = smod(a[i] * inv, m);
        quo[i - b.size() + 1] = c;
        if (c != 0)
            for (size_t j = 0; j < b.size(); ++j)
                a[i - b.size() + 1 + j] = smod(a[i - b.size() + 1 + j] - c * b[j], m);
        if (i == 0) break;
    }
    return {trim(quo), trim(a)};
}

ZPoly lift_f(const FPoly& f) {
    ZPoly z;
    for (i64 c : f) z.emplace_back(c);
    return trim(z);
}

// one quadratic Hensel step: f = g h mod m, s g + t h = 1 mod m, h monic; returns data mod m^2
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const Integer& m2) {
    ZPoly e = zmod(zsub(f, poly_mul(g, h)), m2);
    auto [qq, r] = zdivmod(poly_mul(s, e), h, m2);
    ZPoly gs = zmod(zadd(g, zadd(poly_mul(t, e), poly_mul(qq, g))), m2);
    ZPoly hs = zmod(zadd(h, r), m2);
    ZPoly b = zmod(zsub(zadd(poly_mul(s, gs), poly_mul(t, hs)), ZPoly{Integer(1)}), m2);
    auto [c, d] = zdivmod(poly_mul(s, b), hs, m2);
    s = zmod(zsub(s, d), m2);
    t = zmod(zsub(t, zadd(poly_mul(t, b), poly_mul(c, gs))), m2);
    g = std::move(gs);
    h = std::move(hs);
}

// lift monic modular factors of f (f = lc * prod mod q) to modulus q^(2^k) >= target
void lift_all(const ZPoly& f, const std::vector<FPoly>& facs, i64 q, const Integer& target, std::vector<ZPoly>& out) {
    if (facs.size() == 1) {
        // f itself, normalized to be monic modulo the final modulus
        Integer m = q;
        while (m < target) m *= m;
        ZPoly mono = f;
        const Integer inv = inv_mod(f.back(), m);
        for (auto& c : mono) c = smod(c * inv, m);
        out.push_back(trim(mono));
        return;
    }
    const size_t half = facs.size() / 2;
    FPoly a{1}, b{1};
    for (size_t i = 0; i < half; ++i) a = fmul(a, facs[i], q);
    for (size_t i = half; i < facs.size(); ++i) b = fmul(b, facs[i], q);
    // g carries the leading coefficient, h is monic
    const i64 lcq = reduce(ZPoly{f.back()}, q)[0];
    FPoly ga = a;
    for (auto& c : ga) c = c * lcq % q;
    auto [s, t] = fxgcd(ga, b, q);
    ZPoly g = lift_f(ga), h = lift_f(b), zs = lift_f(s), zt = lift_f(t);
    Integer m = q;
    while (m < target) {
        m *= m;
        hensel_step(f, g, h, zs, zt, m);
    }
    std::vector<FPoly> fa(facs.begin(), facs.begin() + half), fb(facs.begin() + half, facs.end());
    lift_all(g, fa, q, target, out);
    lift_all(h, fb, q, target, out);
}

bool is_prime_small(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool zpoly_less(const ZPoly& a, const ZPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

}  // namespace

ZPoly trim(ZPoly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

int degree(const ZPoly& f) { return static_cast<int>(trim(f).size()) - 1; }

ZPoly poly_mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly c(a.size() + b.size() - 1, Integer(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    return trim(c);
}

ZPoly primitive_part(const ZPoly& f0) {
    ZPoly f = trim(f0);
    if (f.empty()) return f;
    Integer g = 0;
    for (auto& c : f) g = gcd(g, c);
    if (f.back() < 0) g = -g;
    for (auto& c : f) c /= g;
    return f;
}

std::optional<ZPoly> exact_divide(const ZPoly& a0, const ZPoly& b0) {
    ZPoly a = trim(a0), b = trim(b0);
    if (b.empty()) throw std::domain_error("exact_divide by zero");
    if (a.empty()) return ZPoly{};
    if (a.size() < b.size()) return std::nullopt;
    ZPoly quo(a.size() - b.size() + 1, Integer(0));
    for (size_t i = a.size(); i-- >= b.size();) {
        if (a[i] % b.back() != 0) return std::nullopt;
        Integer c = a[i] / b.back();
        quo[i - b.size() + 1] = c;
        if (c != 0)
            for (size_t j = 0; j < b.size(); ++j) a[i - b.size() + 1 + j] -= c * b[j];
        if (i == 0) break;
    }
    for (auto& c : a)
        if (c != 0) return std::nullopt;
    return trim(quo);
}

ZPoly clear_denominators(const std::vector<Rational>& f) {
    Integer l = 1;
    for (auto& c : f) l = lcm(l, denominator_of(c));
    ZPoly z;
    for (auto& c : f) z.push_back(numerator_of(c * l));
    return primitive_part(z);
}

std::vector<ZPoly> factor_squarefree(const ZPoly& f0) {
    ZPoly f = primitive_part(f0);
    if (f.empty()) throw std::invalid_argument("factor_squarefree: zero polynomial");
    const int n = degree(f);
    if (n <= 1) return n == 1 ? std::vector<ZPoly>{f} : std::vector<ZPoly>{};
    // choose the good prime with the fewest modular factors among the first few
    i64 best_q = 0;
    size_t best_count = 0;
    std::vector<std::pair<FPoly, int>> best_ddf;
    int good = 0;
    for (i64 q = 3; good < 8 && q < 100000; q += 2) {
        if (!is_prime_small(q) || f.back() % q == 0) continue;
        FPoly fq = fmonic(reduce(f, q), q);
        if (fgcd(fq, fderiv(fq, q), q).size() != 1) continue;
        ++good;
        auto d = ddf(fq, q);
        size_t count = 0;
        for (auto& [g, deg] : d) count += (g.size() - 1) / deg;
        if (best_q == 0 || count < best_count) {
            best_q = q;
            best_count = count;
            best_ddf = d;
        }
        if (count == 1) break;
    }
    if (best_q == 0) throw std::invalid_argument("factor_squarefree: input is not squarefree");
    if (best_count == 1) return {f};
    const i64 q = best_q;
    std::mt19937_64 rng(0x5eed + static_cast<unsigned>(n));
    std::vector<FPoly> facs;
    for (auto& [g, deg] : best_ddf) edf(g, deg, q, rng, facs);
    // coefficient bound for factors of lc * f
    Integer maxc = 0;
    for (auto& c : f) maxc = std::max(maxc, c < 0 ? Integer(-c) : c);
    Integer bound = Integer(n + 1) * maxc * abs(f.back());
    bound <<= n;
    const Integer target = 2 * bound + 1;
    std::vector<ZPoly> lifted;
    lift_all(f, facs, q, target, lifted);
    Integer m = q;
    while (m < target) m *= m;
    // recombination
    std::vector<ZPoly> result;
    std::vector<ZPoly> pool = lifted;
    ZPoly rest = f;
    for (size_t s = 1; 2 * s <= pool.size();) {
        bool found = false;
        std::vector<size_t> idx(s);
        for (size_t i = 0; i < s; ++i) idx[i] = i;
        while (true) {
            ZPoly cand{rest.back()};
            for (size_t i : idx) cand = zmod(poly_mul(cand, pool[i]), m);
            cand = primitive_part(cand);
            if (auto quo = exact_divide(rest, cand)) {
                result.push_back(cand);
                rest = *quo;
                for (size_t i = s; i-- > 0;) pool.erase(pool.begin() + idx[i]);
                found = true;
                break;
            }
            // next combination
            size_t i = s;
            while (i > 0 && idx[i - 1] == pool.size() - s + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++s;
    }
    if (degree(rest) > 0) result.push_back(primitive_part(rest));
    std::sort(result.begin(), result.end(), zpoly_less);
    return result;
}

}  // namespace orbicalc
