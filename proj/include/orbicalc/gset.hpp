#pragma once

// Finite G-sets as desk-scale orbifolds: equivariant K0, fixed points,
// the orbifold and inertia decompositions, and the Mackey scalar.

#include "orbicalc/group.hpp"
#include "orbicalc/lattice.hpp"
#include "orbicalc/rep_ring.hpp"

#include <memory>
#include <string>
#include <vector>

namespace orbicalc {

struct GSet {
    std::shared_ptr<const FiniteGroup> group;
    int size = 0;
    std::vector<std::vector<int>> act;  // act[g][x] = g.x

    // validates identity, permutation rows and act[g][act[h][x]] = act[gh][x]; throws InputError
    static GSet make(std::shared_ptr<const FiniteGroup> g, std::vector<std::vector<int>> act);
    static GSet point(std::shared_ptr<const FiniteGroup> g);

    int apply(int g, int x) const { return act[g][x]; }
    Subgroup stabilizer(int x) const;
    std::vector<int> orbit(int x) const;  // sorted
};

// left cosets G/H, labelled by their least element in ascending order
GSet coset_gset(std::shared_ptr<const FiniteGroup> g, const Subgroup& h);
GSet disjoint_union(const GSet& a, const GSet& b);
bool is_equivariant(const GSet& x, const GSet& y, const std::vector<int>& f);

struct FixedPoints {
    std::vector<int> points;  // sorted
    Subgroup normalizer;      // N(H)
    GSet residual;            // N(H), as a group in its own right, acting on indices into points
};

FixedPoints fixed_points(const GSet& x, const Subgroup& h);

struct K0Orbit {
    int rep = 0;
    std::vector<int> points;
    Subgroup stabilizer;
    std::shared_ptr<const FiniteGroup> stabilizer_group;
    std::shared_ptr<const RepRing> ring;  // over the stabilizer
    int offset = 0;                       // first coordinate in the glued lattice
    int rank() const { return ring->rank(); }
};

struct EquivariantK0 {
    Mode mode = Mode::Split;
    std::shared_ptr<const GSet> x;
    std::vector<K0Orbit> orbits;  // ordered by least point
    std::vector<int> orbit_of;    // per point
    std::vector<int> transversal; // per point p: g with g.rep = p

    int rank() const;
    RatVec unit() const;
    RatVec multiply(const RatVec& a, const RatVec& b) const;
};

EquivariantK0 equivariant_k0(const GSet& x, Mode mode);

// v in mode coordinates of R(G); acts orbitwise by multiplication with the restriction
RatVec rg_action(const EquivariantK0& k, const RepRing& rg, const RatVec& v, const RatVec& xi);

struct OrbifoldPiece {
    int point = 0;             // least point of an N(sigma)-orbit on the fixed locus
    int orbit = 0;             // G-orbit index
    std::vector<int> n_orbit;  // sorted
    Subgroup point_stabilizer; // inside N(sigma)
    std::vector<long> action;
    IntMat basis;              // phi(m) x rank
    int rank() const { return static_cast<int>(basis.cols()); }
};

struct OrbifoldSummand {
    CyclicClass cls;
    long order = 1;
    Normalizer normalizer;
    std::vector<int> fixed;  // the fixed locus of the representative
    std::vector<OrbifoldPiece> pieces;
    int rank() const;
};

struct OrbifoldDecomposition {
    Mode mode = Mode::Split;
    EquivariantK0 k0;
    std::vector<OrbifoldSummand> summands;
    LatticeMap map;  // rows stacked by summand, then by piece
    std::vector<std::vector<Integer>> block_snf;  // per G-orbit block

    std::vector<int> summand_ranks() const;
    std::vector<int> row_offsets() const;
};

OrbifoldDecomposition orbifold_decompose(const GSet& x, Mode mode);

// The value of xi at every fixed point of the summand, as polynomials mod Phi_m.
std::vector<Poly> fixed_point_values(const OrbifoldDecomposition& d, int summand, const RatVec& xi);

struct FunctorialityReport {
    bool ok = false;
    std::string witness;
};

// f: X -> Y equivariant; pull-back on K0 against pull-back of fixed-point values
FunctorialityReport check_functoriality(const OrbifoldDecomposition& dx, const OrbifoldDecomposition& dy,
                                        const std::vector<int>& f);
RatMat k0_pullback(const EquivariantK0& kx, const EquivariantK0& ky, const std::vector<int>& f);

// tilde idempotents of R(G), acting through rg_action, project onto the matching summand
bool check_idempotent_projection(const OrbifoldDecomposition& d, const VistoliDecomposition& v,
                                 std::string* witness = nullptr);

struct InertiaClassTerm {
    int g = 0;                    // conjugacy class representative
    Subgroup centralizer;
    std::vector<int> fixed;       // X^g
    std::vector<int> orbit_reps;  // least points of C(g)-orbits on X^g
};

struct InertiaDecomposition {
    std::vector<InertiaClassTerm> class_form;
    std::vector<std::pair<int, int>> invariant_form;  // least (g, x) in each G-orbit of the inertia set
    std::vector<int> bijection;  // flattened class_form basis -> invariant_form index
    bool bijective = false;
    bool blocks_are_tables = false;  // each G-orbit block of K0 -> functions is a column-permuted character table
    int k0_rank = 0;
    int dimension = 0;
};

InertiaDecomposition inertia_decompose(const GSet& x);

struct DoubleCosetTerm {
    int rep = 0;
    int intersection_order = 0;
    bool in_normalizer = false;
    bool annihilated = false;  // e_sigma kills the term
};

struct MackeyReport {
    long sigma_order = 1;
    long index = 1;  // [N(sigma):sigma]
    RatMat composite;
    std::vector<DoubleCosetTerm> terms;
    bool double_coset_sum = false;  // the terms add up to Res Ind
    bool ok = false;
};

MackeyReport mackey_check(const FiniteGroup& g, const CyclicClass& sigma);

}  // namespace orbicalc
