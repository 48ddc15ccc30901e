#pragma once

#include "orbicalc/numeric.hpp"

#include <complex>
#include <optional>
#include <ostream>
#include <vector>

namespace orbicalc {

// Exact element of Q(zeta_N), stored as the coefficient vector of its residue
// modulo Phi_N in the power basis 1, z, ..., z^(phi(N)-1).
// Conductors N = 2 (mod 4) are folded to N/2 since Q(zeta_2m) = Q(zeta_m), m odd.
class Cyclotomic {
public:
    Cyclotomic();
    Cyclotomic(long v);  // NOLINT: implicit so that Eigen can write Scalar(0)
    Cyclotomic(const Rational& v);  // NOLINT
    Cyclotomic(const Integer& v);  // NOLINT

    // zeta_n^k
    static Cyclotomic zeta(long n, long k = 1);
    // sum_i c[i] zeta_n^i for any length of c
    static Cyclotomic from_powers(long n, const std::vector<Rational>& c);
    // coefficients already in reduced power basis of length phi(n); n must be canonical
    static Cyclotomic from_reduced(long n, std::vector<Rational> c);

    long conductor() const { return n_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    Rational rational_value() const;  // throws if not rational
    bool is_integral() const;         // all coefficients integral

    Cyclotomic lift(long m) const;                     // m multiple of the conductor
    std::optional<Cyclotomic> descend(long m) const;   // same number inside Q(zeta_m), if it lies there
    Cyclotomic minimized() const;                      // smallest conductor holding the value

    Cyclotomic conj(long a) const;  // zeta -> zeta^a
    Cyclotomic inverse() const;
    Rational norm() const;  // field norm down to Q from Q(zeta_conductor)
    std::complex<double> to_complex() const;

    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    Cyclotomic& operator/=(const Cyclotomic& o);
    Cyclotomic operator-() const;

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    // Lexicographic order on coefficients after lifting to a common conductor.
    friend int compare(const Cyclotomic& a, const Cyclotomic& b);
    friend bool operator<(const Cyclotomic& a, const Cyclotomic& b) { return compare(a, b) < 0; }

    std::string str() const;

private:
    long n_ = 1;
    std::vector<Rational> c_;
};

std::ostream& operator<<(std::ostream& os, const Cyclotomic& x);

// Canonical conductor: N = 2 (mod 4) becomes N/2.
long canonical_conductor(long n);
// Integer coefficients of Phi_n, low degree first (monic, length phi(n)+1).
const std::vector<long>& cyclotomic_polynomial(long n);

using CycMat = Mat<Cyclotomic>;
using CycVec = Vec<Cyclotomic>;

}  // namespace orbicalc

namespace Eigen {
template <>
struct NumTraits<orbicalc::Cyclotomic> : GenericNumTraits<orbicalc::Cyclotomic> {
    using Real = orbicalc::Cyclotomic;
    using NonInteger = orbicalc::Cyclotomic;
    using Nested = orbicalc::Cyclotomic;
    using Literal = orbicalc::Cyclotomic;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 4,
        AddCost = 16,
        MulCost = 64
    };
    static int digits10() { return 0; }
    static int max_digits10() { return 0; }
    static Real epsilon() { return Real(0L); }
    static Real dummy_precision() { return Real(0L); }
};
}  // namespace Eigen
