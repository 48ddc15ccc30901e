#include "orbicalc/cyclotomic.hpp"

#include "orbicalc/linalg.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

namespace orbicalc {

namespace {

struct FieldData {
    long n = 1;
    long phi = 1;
    std::vector<long> poly;               // Phi_n, low degree first
    std::vector<std::vector<long>> pow;   // pow[k] = reduced zeta^k, 0 <= k < n
};

std::vector<long> poly_div_exact(std::vector<long> num, const std::vector<long>& den) {
    // den monic
    const size_t dn = den.size() - 1;
    std::vector<long> q(num.size() - dn, 0);
    for (size_t i = num.size(); i-- > dn;) {
        long c = num[i];
        q[i - dn] = c;
        for (size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    return q;
}

std::vector<long> compute_phi_poly(long n, const std::map<long, std::vector<long>>& known) {
    std::vector<long> p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (long d = 1; d < n; ++d)
        if (n % d == 0) p = poly_div_exact(p, known.at(d));
    return p;
}

std::shared_mutex g_fields_mu;
std::map<long, std::unique_ptr<FieldData>> g_fields;
std::map<long, std::vector<long>> g_polys;

const std::vector<long>& phi_poly_locked(long n) {
    auto it = g_polys.find(n);
    if (it != g_polys.end()) return it->second;
    for (long d : divisors(n))
        if (d < n) phi_poly_locked(d);
    return g_polys.emplace(n, compute_phi_poly(n, g_polys)).first->second;
}

const FieldData& field(long n) {
    thread_local std::unordered_map<long, const FieldData*> local;
    auto lit = local.find(n);
    if (lit != local.end()) return *lit->second;
    {
        std::shared_lock lock(g_fields_mu);
        auto it = g_fields.find(n);
        if (it != g_fields.end()) {
            local.emplace(n, it->second.get());
            return *it->second;
        }
    }
    std::unique_lock lock(g_fields_mu);
    auto it = g_fields.find(n);
    if (it == g_fields.end()) {
        auto f = std::make_unique<FieldData>();
        f->n = n;
        f->poly = phi_poly_locked(n);
        f->phi = static_cast<long>(f->poly.size()) - 1;
        f->pow.assign(n, std::vector<long>(f->phi, 0));
        std::vector<long> cur(f->phi, 0);
        cur[0] = 1;
        for (long k = 0; k < n; ++k) {
            f->pow[k] = cur;
            // multiply by x and reduce
            long top = cur[f->phi - 1];
            for (long j = f->phi - 1; j > 0; --j) cur[j] = cur[j - 1] - top * f->poly[j];
            cur[0] = -top * f->poly[0];
        }
        it = g_fields.emplace(n, std::move(f)).first;
    }
    local.emplace(n, it->second.get());
    return *it->second;
}

std::mutex g_descend_mu;
std::map<std::pair<long, long>, std::shared_ptr<const RatMat>> g_descend;

}  // namespace

long canonical_conductor(long n) {
    if (n <= 0) throw std::invalid_argument("conductor must be positive");
    return (n % 4 == 2) ? n / 2 : n;
}

const std::vector<long>& cyclotomic_polynomial(long n) { return field(n).poly; }

Cyclotomic::Cyclotomic() : n_(1), c_(1, Rational(0)) {}
Cyclotomic::Cyclotomic(long v) : n_(1), c_(1, Rational(v)) {}
Cyclotomic::Cyclotomic(const Rational& v) : n_(1), c_(1, v) {}
Cyclotomic::Cyclotomic(const Integer& v) : n_(1), c_(1, Rational(v)) {}

Cyclotomic Cyclotomic::zeta(long n, long k) {
    if (n <= 0) throw std::invalid_argument("zeta: order must be positive");
    k = mod_pos(k, n);
    Rational sign(1);
    if (n % 4 == 2) {
        long m = n / 2;
        if (k % 2) sign = -1;
        k = mod_pos(k * ((m + 1) / 2), m);
        n = m;
    }
    const FieldData& f = field(n);
    Cyclotomic r;
    r.n_ = n;
    r.c_.assign(f.phi, Rational(0));
    for (long j = 0; j < f.phi; ++j)
        if (f.pow[k][j]) r.c_[j] = sign * f.pow[k][j];
    return r;
}

Cyclotomic Cyclotomic::from_powers(long n, const std::vector<Rational>& c) {
    Cyclotomic r;
    long cn = canonical_conductor(n);
    r.n_ = cn;
    const FieldData& f = field(cn);
    r.c_.assign(f.phi, Rational(0));
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i].is_zero()) continue;
        if (cn == n) {
            const auto& pw = f.pow[i % n];
            for (long j = 0; j < f.phi; ++j)
                if (pw[j]) r.c_[j] += c[i] * pw[j];
        } else {
            r += Cyclotomic(c[i]) * zeta(n, static_cast<long>(i));
        }
    }
    return r;
}

Cyclotomic Cyclotomic::from_reduced(long n, std::vector<Rational> c) {
    if (canonical_conductor(n) != n) throw std::invalid_argument("from_reduced: conductor not canonical");
    if (static_cast<long>(c.size()) != field(n).phi)
        throw std::invalid_argument("from_reduced: wrong coefficient count");
    Cyclotomic r;
    r.n_ = n;
    r.c_ = std::move(c);
    return r;
}

bool Cyclotomic::is_zero() const {
    for (const auto& x : c_)
        if (!x.is_zero()) return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (!c_[i].is_zero()) return false;
    return true;
}

Rational Cyclotomic::rational_value() const {
    if (!is_rational()) throw std::domain_error("cyclotomic value is not rational");
    return c_[0];
}

bool Cyclotomic::is_integral() const {
    for (const auto& x : c_)
        if (!orbicalc::is_integral(x)) return false;
    return true;
}

Cyclotomic Cyclotomic::lift(long m) const {
    m = canonical_conductor(m);
    if (m == n_) return *this;
    if (m % n_ != 0) throw std::invalid_argument("lift: target conductor is not a multiple");
    const FieldData& f = field(m);
    const long step = m / n_;
    Cyclotomic r;
    r.n_ = m;
    r.c_.assign(f.phi, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        const auto& pw = f.pow[(static_cast<long>(i) * step) % m];
        for (long j = 0; j < f.phi; ++j)
            if (pw[j]) r.c_[j] += c_[i] * pw[j];
    }
    return r;
}

std::optional<Cyclotomic> Cyclotomic::descend(long m) const {
    m = canonical_conductor(m);
    if (m % n_ == 0) return lift(m);
    if (is_rational()) return Cyclotomic(c_[0]).lift(m);
    const long big = lcm_long(n_, m);
    Cyclotomic x = lift(big);
    std::shared_ptr<const RatMat> p;
    const FieldData& fb = field(big);
    const FieldData& fm = field(m);
    {
        std::lock_guard lock(g_descend_mu);
        auto it = g_descend.find({big, m});
        if (it != g_descend.end()) p = it->second;
    }
    if (!p) {
        RatMat e(fb.phi, fm.phi);
        for (long i = 0; i < fm.phi; ++i)
            for (long j = 0; j < fb.phi; ++j) e(j, i) = Rational(fb.pow[(i * (big / m)) % big][j]);
        auto li = std::make_shared<const RatMat>(left_inverse<Rational>(e));
        std::lock_guard lock(g_descend_mu);
        p = g_descend.emplace(std::make_pair(big, m), li).first->second;
    }
    std::vector<Rational> y(fm.phi, Rational(0));
    for (long i = 0; i < fm.phi; ++i)
        for (long j = 0; j < fb.phi; ++j)
            if (!(*p)(i, j).is_zero() && !x.c_[j].is_zero()) y[i] += (*p)(i, j) * x.c_[j];
    Cyclotomic r = from_reduced(m, std::move(y));
    if (r.lift(big) != x) return std::nullopt;
    return r;
}

Cyclotomic Cyclotomic::minimized() const {
    if (is_rational()) return Cyclotomic(c_[0]);
    for (long d : divisors(n_)) {
        if (d == n_ || canonical_conductor(d) != d) continue;
        if (auto r = descend(d)) return *r;
    }
    return *this;
}

Cyclotomic Cyclotomic::conj(long a) const {
    if (gcd_long(mod_pos(a, n_), n_) != 1 && n_ > 1)
        throw std::domain_error("conj: exponent not coprime to conductor");
    if (n_ == 1) return *this;
    const FieldData& f = field(n_);
    Cyclotomic r;
    r.n_ = n_;
    r.c_.assign(f.phi, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        const auto& pw = f.pow[mod_pos(static_cast<long>(i) * a, n_)];
        for (long j = 0; j < f.phi; ++j)
            if (pw[j]) r.c_[j] += c_[i] * pw[j];
    }
    return r;
}

Rational Cyclotomic::norm() const {
    Cyclotomic p = *this;
    for (long a : units_mod(n_))
        if (a != 1 && n_ > 1) p *= conj(a);
    return p.rational_value();
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) throw std::domain_error("cyclotomic division by zero");
    if (n_ == 1) return Cyclotomic(Rational(1) / c_[0]);
    Cyclotomic others(1L);
    for (long a : units_mod(n_))
        if (a != 1) others *= conj(a);
    Rational nm = (others * *this).rational_value();
    for (auto& x : others.c_) x /= nm;
    return others;
}

std::complex<double> Cyclotomic::to_complex() const {
    std::complex<double> s = 0;
    const double two_pi = 2.0 * std::acos(-1.0);
    for (size_t i = 0; i < c_.size(); ++i)
        s += c_[i].convert_to<double>() * std::polar(1.0, two_pi * static_cast<double>(i) / static_cast<double>(n_));
    return s;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    if (n_ == o.n_) {
        for (size_t i = 0; i < c_.size(); ++i)
            if (!o.c_[i].is_zero()) c_[i] += o.c_[i];
        return *this;
    }
    if (o.n_ == 1) {
        c_[0] += o.c_[0];
        return *this;
    }
    long m = lcm_long(n_, o.n_);
    if (m != n_) *this = lift(m);
    return *this += o.lift(m);
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
    if (o.n_ == 1) {
        for (auto& x : c_)
            if (!x.is_zero()) x *= o.c_[0];
        return *this;
    }
    if (n_ == 1) {
        Rational s = c_[0];
        *this = o;
        for (auto& x : c_)
            if (!x.is_zero()) x *= s;
        return *this;
    }
    if (n_ != o.n_) {
        long m = lcm_long(n_, o.n_);
        Cyclotomic a = lift(m);
        return *this = (a *= o.lift(m));
    }
    const FieldData& f = field(n_);
    const long phi = f.phi;
    std::vector<Rational> prod(2 * phi - 1, Rational(0));
    for (long i = 0; i < phi; ++i) {
        if (c_[i].is_zero()) continue;
        for (long j = 0; j < phi; ++j)
            if (!o.c_[j].is_zero()) prod[i + j] += c_[i] * o.c_[j];
    }
    for (long i = 2 * phi - 2; i >= phi; --i) {
        if (prod[i].is_zero()) continue;
        Rational c = prod[i];
        for (long j = 0; j < phi; ++j)
            if (f.poly[j]) prod[i - phi + j] -= c * f.poly[j];
    }
    prod.resize(phi);
    c_ = std::move(prod);
    return *this;
}

Cyclotomic& Cyclotomic::operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.n_ == b.n_) return a.c_ == b.c_;
    long m = lcm_long(a.n_, b.n_);
    return a.lift(m).c_ == b.lift(m).c_;
}

int compare(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.n_ != b.n_) {
        long m = lcm_long(a.n_, b.n_);
        return compare(a.lift(m), b.lift(m));
    }
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] < b.c_[i]) return -1;
        if (b.c_[i] < a.c_[i]) return 1;
    }
    return 0;
}

std::string Cyclotomic::str() const {
    std::ostringstream os;
    if (is_rational()) {
        os << to_string(c_[0]);
        return os.str();
    }
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << to_string(c_[i]);
        if (i > 0) os << "*z" << n_ << "^" << i;
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Cyclotomic& x) { return os << x.str(); }

}  // namespace orbicalc
