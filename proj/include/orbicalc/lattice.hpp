#pragma once

// Integer lattice algebra: Smith form, saturated kernels, invariants, and
// isomorphism tests over Z[1/n].

#include "orbicalc/numeric.hpp"

#include <vector>

namespace orbicalc {

struct SmithForm {
    IntMat d, u, v;  // u * m * v == d
    std::vector<Integer> diagonal() const;
    int rank() const;
};

SmithForm smith_normal_form(const IntMat& m);

// Element of Z[1/n]: reduced fraction whose denominator has prime support in n.
class LocalizedScalar {
public:
    LocalizedScalar(const Rational& value, const Integer& n);
    const Rational& value() const { return value_; }
    const Integer& n() const { return n_; }
    Integer numerator() const { return numerator_of(value_); }
    Integer denominator() const { return denominator_of(value_); }

private:
    Rational value_;
    Integer n_;
};

bool is_localized(const Rational& x, const Integer& n);

// A homomorphism of free Z[1/n]-modules in chosen bases.
struct LatticeMap {
    RatMat matrix;
    Integer n = 1;
    int domain_rank() const { return static_cast<int>(matrix.cols()); }
    int codomain_rank() const { return static_cast<int>(matrix.rows()); }
    // Throws VerificationError if an entry leaves Z[1/n].
    void validate() const;
};

bool is_iso_over_localization(const IntMat& m, const Integer& n);
bool is_iso_over_localization(const LatticeMap& m, const Integer& n);

// Smallest positive integer c with c * m integral.
Integer common_denominator(const RatMat& m);

// Saturated Z-basis (as columns) of {x in Z^c : m x = 0}, in column Hermite form.
IntMat saturated_kernel(const IntMat& m);

// Saturated basis of {v : a v = v for every a}, in column Hermite form.
IntMat invariant_sublattice(const std::vector<IntMat>& action);

// Canonical basis of the column span: columns in Hermite form (pivot rows increasing,
// positive pivots, entries in pivot rows reduced into [0, pivot)).
IntMat column_hermite_form(const IntMat& basis);

// True iff the columns span a saturated sublattice (Z^n / span torsion free).
bool is_saturated(const IntMat& basis);

// Integer coordinates x with basis * x = v (throws if v is not in the lattice span).
IntVec lattice_coordinates(const IntMat& basis, const IntVec& v);

}  // namespace orbicalc
