#include "orbicalc/numeric.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace orbicalc {

std::string to_string(const Integer& x) { return x.str(); }

std::string to_string(const Rational& x) {
    if (is_integral(x)) return numerator_of(x).str();
    return numerator_of(x).str() + "/" + denominator_of(x).str();
}

Rational parse_rational(const std::string& s) {
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer den(s.substr(slash + 1));
        if (den == 0) throw InputError("zero denominator in '" + s + "'");
        return Rational(Integer(s.substr(0, slash)), den);
    } catch (const std::runtime_error& e) {
        if (dynamic_cast<const InputError*>(&e)) throw;
        throw InputError("bad rational literal '" + s + "'");
    }
}

long gcd_long(long a, long b) { return std::gcd(a, b); }
long lcm_long(long a, long b) { return std::lcm(a, b); }

long mod_pos(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

std::vector<long> prime_factors(long n) {
    std::vector<long> ps;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        ps.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

long euler_phi(long n) {
    long r = n;
    for (long p : prime_factors(n)) r = r / p * (p - 1);
    return r;
}

long inverse_mod(long a, long m) {
    long aa = mod_pos(a, m);
    long r0 = aa, r1 = m, s0 = 1, s1 = 0;
    while (r1) {
        long q = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
        std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    }
    if (r0 != 1) throw std::domain_error("inverse_mod: not a unit");
    return mod_pos(s0, m);
}

std::vector<long> divisors(long n) {
    std::vector<long> ds;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) ds.push_back(d);
    return ds;
}

std::vector<long> units_mod(long n) {
    std::vector<long> us;
    for (long a = 1; a <= std::max(1L, n); ++a)
        if (std::gcd(a, n) == 1) us.push_back(a % std::max(1L, n));
    std::sort(us.begin(), us.end());
    return us;
}

std::vector<long> unit_generators(long n) {
    std::vector<long> gens;
    if (n <= 2) return gens;
    std::set<long> span{1};
    for (long a : units_mod(n)) {
        if (span.count(a)) continue;
        gens.push_back(a);
        std::vector<long> frontier(span.begin(), span.end());
        while (!frontier.empty()) {
            std::vector<long> next;
            for (long x : frontier)
                for (long g : gens) {
                    long y = x * g % n;
                    if (span.insert(y).second) next.push_back(y);
                }
            frontier.swap(next);
        }
    }
    return gens;
}

bool prime_support_divides(const Integer& x, const Integer& n) {
    if (x == 0) return false;
    Integer r = abs(x);
    for (;;) {
        Integer g = gcd(r, n);
        if (g == 1) break;
        while (r % g == 0) r /= g;
    }
    return r == 1;
}

RatMat to_rational(const IntMat& m) {
    RatMat r(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
    return r;
}

IntMat to_integer(const RatMat& m) {
    IntMat r(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (!is_integral(m(i, j)))
                throw VerificationError("to_integer: non-integral entry " + to_string(m(i, j)));
            r(i, j) = numerator_of(m(i, j));
        }
    return r;
}

}  // namespace orbicalc
