#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <vector>

namespace orbicalc {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using IntMat = Mat<Integer>;
using RatMat = Mat<Rational>;
using IntVec = Vec<Integer>;
using RatVec = Vec<Rational>;

// Malformed user input (exit code 2 at the CLI).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A certificate did not hold (exit code 1 at the CLI).
struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integral(const Rational& q) { return denominator_of(q) == 1; }

std::string to_string(const Integer& x);
std::string to_string(const Rational& x);
Rational parse_rational(const std::string& s);

long gcd_long(long a, long b);
long lcm_long(long a, long b);
long euler_phi(long n);
long mod_pos(long a, long m);
long inverse_mod(long a, long m);
std::vector<long> prime_factors(long n);
std::vector<long> divisors(long n);
std::vector<long> units_mod(long n);
// A generating set of (Z/n)^x.
std::vector<long> unit_generators(long n);

// True iff every prime dividing x divides n (x != 0).
bool prime_support_divides(const Integer& x, const Integer& n);

RatMat to_rational(const IntMat& m);
// Throws if some entry is not an integer.
IntMat to_integer(const RatMat& m);

}  // namespace orbicalc
