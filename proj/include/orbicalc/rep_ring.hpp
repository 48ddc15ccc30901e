#pragma once

// Representation rings: the cyclic group ring l[t]/(t^m - 1), its primitive
// idempotent, restriction maps, Galois descent, and the Vistoli decomposition.

#include "orbicalc/character_table.hpp"
#include "orbicalc/cyclotomic.hpp"
#include "orbicalc/group.hpp"
#include "orbicalc/lattice.hpp"

#include <memory>
#include <string>
#include <vector>

namespace orbicalc {

enum class Mode { Split, Rational };
std::string to_string(Mode m);
Mode parse_mode(const std::string& s);

enum class Basis { Irreducible, TPower };

struct RepRingElement {
    std::string owner;
    Basis basis = Basis::TPower;
    std::vector<Cyclotomic> coords;

    bool is_rational() const;
    // rational coordinates with denominators supported on n
    bool is_localized(const Integer& n) const;
    std::vector<Rational> rational_coords() const;
};

// ---- polynomial helpers on Z[1/n][t] (coefficients low degree first)

using Poly = std::vector<Rational>;

Poly reduce_mod_phi(const Poly& c, long j);                  // length phi(j)
Poly mul_mod_phi(const Poly& a, const Poly& b, long j);
Poly galois_mod_phi(const Poly& c, long b, long j);          // t -> t^b
std::vector<Cyclotomic> cyclic_mul(const std::vector<Cyclotomic>& a, const std::vector<Cyclotomic>& b);  // mod t^m - 1
Poly cyclic_mul(const Poly& a, const Poly& b);
Poly cyclic_galois(const Poly& c, long b);                   // t^k -> t^(kb) in Z[t]/(t^m - 1)
Poly cyclic_restrict(const Poly& c, long d);                 // to the subgroup of order d
// Value sum_k c_k zeta_m^(k j) of a t-power element at s^j.
Cyclotomic cyclic_value(const std::vector<Cyclotomic>& c, long j);
// coordinates of v in the basis 1, zeta_m, ..., zeta_m^(phi(m)-1); throws if v is not in Q(zeta_m)
Poly power_coordinates(const Cyclotomic& v, long m);

// ---- cyclic group ring decomposition

struct CyclicComponent {
    long j = 1;        // Phi_j
    long rank = 1;     // phi(j)
    RatMat projection; // rank x m: t^k -> t^k mod Phi_j
    RatMat section;    // m x rank
};

// l[t]/(t^m - 1) = sum over j | m of Z[1/n][t]/Phi_j; throws if m does not divide n.
std::vector<CyclicComponent> cyclic_group_ring_decomposition(long m, const Integer& n);

struct PrimitiveIdempotent {
    long m = 1;
    RepRingElement element;             // t-power coordinates
    std::vector<Poly> projections;      // image in each Z[t]/Phi_j, j | m ascending
};

// prod over primes p | m of (1 - (1/p) sum_{k<p} t^(k m/p)), with idempotence and the
// delta_{j,m} projection property verified.
PrimitiveIdempotent primitive_idempotent(long m, const Integer& n);
PrimitiveIdempotent primitive_idempotent(const FiniteGroup& g, const Subgroup& sigma, const Integer& n);

// e_g for g = s^j: (1/m) sum_k zeta_m^(-kj) t^k; verified idempotent.
RepRingElement degree_idempotent(long m, long j, const Integer& n);

// Res from the cyclic group of order m to its subgroup of order d (t-power bases).
LatticeMap cyclic_restriction(long m, long d);
// Res^G_H in irreducible bases (rows: irreducibles of H).
LatticeMap restriction(const FiniteGroup& g, const Subgroup& h);
// Res^G_sigma into the t-power basis of the cyclic sigma = <s>.
LatticeMap restriction_to_cyclic(const FiniteGroup& g, int s);

// Character square for cyclic sigma of order m:
//   R(sigma)_l  --lower-->  Map(sigma, l)
//   R~(sigma)_l --upper-->  Map(gen(sigma), l)
struct CharacterIso {
    long m = 1;
    CycMat lower;        // m x m, rows s^j, columns t^k
    CycMat upper;        // phi(m) x phi(m), rows generators, columns e t^i
    CycMat inclusion;    // m x phi(m): e t^i in t-coordinates
    std::vector<long> generators;  // exponents j with gcd(j, m) = 1
    bool commutes = false;
    bool supported_on_generators = false;
    bool lower_invertible = false;
    bool upper_invertible = false;
};

CharacterIso character_iso(long m);

struct MaximalityReport {
    long m = 1;
    unsigned long long subsets = 0;     // 2^m idempotents enumerated
    unsigned long long vanishing = 0;   // those killed by every proper restriction
    bool support_is_generators = false; // supp(e_sigma) = gen(sigma)
    bool restriction_compatible = false;
    bool proper_restrictions_vanish = false;
    bool maximal = false;               // all vanishing idempotents f satisfy f e = f
};

MaximalityReport check_maximality(long m);

// ---- R(G) as a ring in a chosen lattice basis

// N[i][j][k] = <chi_i chi_j, chi_k>.
std::vector<long> split_structure_constants(const CharacterTable& t);

// power_perm[a][i]: index of the character g -> chi_i(g^a).
std::vector<int> galois_permutation(const FiniteGroup& g, const CharacterTable& t, long a);

struct RepRing {
    Mode mode = Mode::Split;
    std::shared_ptr<const CharacterTable> table;
    IntMat basis;        // columns in irreducible coordinates
    RatMat basis_left;   // left inverse of basis
    std::vector<long> nconst;

    int rank() const { return static_cast<int>(basis.cols()); }
    RatVec unit() const;
    // Irreducible coordinates of a mode-coordinate vector, and back (throws outside the span).
    RatVec to_irreducible(const RatVec& x) const;
    RatVec from_irreducible(const RatVec& z) const;
    RatVec multiply(const RatVec& x, const RatVec& y) const;
};

RepRing rep_ring(const FiniteGroup& g, Mode mode);
// Gamma-invariant sublattice of the split character lattice with its ring structure.
RepRing rational_form(const FiniteGroup& g);
// shared per (character table, mode)
std::shared_ptr<const RepRing> cached_rep_ring(const FiniteGroup& g, Mode mode);

// ---- Vistoli decomposition

struct VistoliSummand {
    CyclicClass cls;
    long order = 1;
    Normalizer normalizer;
    std::vector<long> action;  // exponents b acting by t -> t^b on Z[t]/Phi_m
    IntMat basis;              // phi(m) x rank, power-basis coordinates
    int rank() const { return static_cast<int>(basis.cols()); }
};

// Invariant basis of Z[t]/Phi_m under t -> t^b for the given exponents.
IntMat primitive_invariant_basis(long m, const std::vector<long>& exponents);
std::vector<long> summand_action(const FiniteGroup& g, const Normalizer& nz, const std::vector<int>& subgroup_elems,
                                 Mode mode, long m);

struct VistoliDecomposition {
    Mode mode = Mode::Split;
    int group_order = 1;
    RepRing ring;
    std::vector<VistoliSummand> summands;
    LatticeMap map;                       // rows: summand coordinates stacked in summand order
    std::vector<Integer> snf_diagonal;
    std::vector<RatVec> tilde_idempotents;  // mode coordinates

    std::vector<int> summand_ranks() const;
    std::vector<int> row_offsets() const;
};

// Builds and certifies: SNF invertibility over Z[1/|G|], tilde idempotents summing to 1,
// orthogonality. Throws VerificationError on any failure.
VistoliDecomposition vistoli_decompose(const FiniteGroup& g, Mode mode);

// Summand-wise product of two image vectors.
RatVec summand_product(const VistoliDecomposition& v, const RatVec& a, const RatVec& b);
// True iff map(b_i b_j) == map(b_i) * map(b_j) for all basis pairs; reports the first failing pair.
bool check_ring_homomorphism(const VistoliDecomposition& v, std::string* witness = nullptr);
// Split map on Gamma-invariants equals the rational map (through the summand inclusions).
bool check_split_rational_compatible(const VistoliDecomposition& split, const VistoliDecomposition& rational,
                                     std::string* witness = nullptr);

}  // namespace orbicalc
