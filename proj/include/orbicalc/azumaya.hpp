#pragma once

// Equivariant bundles of matrix algebras over finite G-sets, their graded
// centers, and the degree-zero twisted Hochschild decomposition.

#include "orbicalc/algebra.hpp"
#include "orbicalc/gset.hpp"

namespace orbicalc {

// rho(g) rho(h) = lambda(g,h) rho(gh) with rho(e) = I
struct ProjectiveRep {
    std::shared_ptr<const FiniteGroup> group;
    int r = 1;
    std::vector<CycMat> rho;

    static ProjectiveRep make(std::shared_ptr<const FiniteGroup> g, std::vector<CycMat> rho);  // validates
    static ProjectiveRep trivial(std::shared_ptr<const FiniteGroup> g);                      // r = 1
    // Klein four group: the two least generators act by diag(1,-1) and the swap
    static ProjectiveRep pauli(std::shared_ptr<const FiniteGroup> g);
    // r = |G|, rho(g) e_h = alpha(g,h) e_gh; its multiplier is alpha
    static ProjectiveRep twisted_regular(const CocycleTable& alpha);

    Cyclotomic multiplier(int g, int h) const;
};

struct AzumayaModel {
    std::shared_ptr<const GSet> x;
    ProjectiveRep rho;
    FinDimAlgebra algebra;  // Map(X, M_r); basis p*r*r + a*r + b is e_p E_ab
};

// G acts by g(e_p E) = e_{gp} rho(g) E rho(g)^-1
AzumayaModel equivariant_azumaya(const GSet& x, const ProjectiveRep& rho);

struct RestrictedAlgebra {
    FinDimAlgebra algebra;        // over sigma as a group in its own right; support = index into points
    std::vector<int> points;      // X^sigma
    Subgroup sigma;
    std::vector<int> original;    // basis index in the full model
};

RestrictedAlgebra restrict_to_fixed(const AzumayaModel& m, const Subgroup& sigma);
// any algebra over x carrying a G-action and a support map onto the points of x
RestrictedAlgebra restrict_to_fixed(const FinDimAlgebra& f, const GSet& x, const Subgroup& sigma);

struct GradedCenterReport {
    std::vector<int> component_dims;  // dim of the degree-g part of the center, per element of the grading group
    std::vector<bool> rank_one;       // every point contributes exactly one dimension in degree g
    bool products_surjective = false;
    int tensor_dim = 0;               // dim of F tensored over functions on the points with the center
    int image_rank = 0;               // rank of the multiplication map into F # sigma
    int skew_dim = 0;
    bool ok = false;
    std::string witness;              // first failing check
};

// f carries an action of an abelian group and a support map onto 0..num_points-1
GradedCenterReport verify_strongly_graded(const FinDimAlgebra& f, int num_points);

struct TwistedClassTerm {
    int cls = 0;
    int lhs = 0;  // degree part of HH0(F # G) over the conjugacy class
    int rhs = 0;  // invariants of the sum of L_g over the class
};

struct TwistedHH0Report {
    int lhs = 0;
    int rhs = 0;
    std::vector<TwistedClassTerm> terms;
    bool stable = false;     // the G-action preserves the sum of the L_g
    bool injective = false;  // invariants stay independent modulo commutators
    bool ok = false;
};

TwistedHH0Report twisted_hh0_decomposition(const AzumayaModel& m);
TwistedHH0Report twisted_hh0_decomposition(const FinDimAlgebra& f, const GSet& x);

}  // namespace orbicalc
