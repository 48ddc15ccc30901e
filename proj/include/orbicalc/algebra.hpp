#pragma once

// Finite-dimensional algebras over cyclotomic fields with sparse structure
// constants: centers, HH0, skew and twisted group algebras, 2-cocycles.

#include "orbicalc/cyclotomic.hpp"
#include "orbicalc/group.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace orbicalc {

using SparseVec = std::vector<std::pair<int, Cyclotomic>>;  // sorted by index, no zero entries

SparseVec sv_unit(int i);
SparseVec sv_add(const SparseVec& a, const SparseVec& b, const Cyclotomic& scale = Cyclotomic(1L));
SparseVec sv_scale(const SparseVec& a, const Cyclotomic& s);
Cyclotomic sv_get(const SparseVec& a, int i);

// Incremental row echelon form; the pivot of a row is its largest column.
class SparseEliminator {
public:
    bool add(const SparseVec& v);          // true if v was independent
    SparseVec reduce(SparseVec v) const;   // zero iff v lies in the span
    bool contains(const SparseVec& v) const { return reduce(v).empty(); }
    int rank() const { return static_cast<int>(rows_.size()); }
    bool is_pivot(int col) const { return pivot_.count(col) > 0; }
    // rows as equations in unknowns 0..n-1: a basis of the solution space
    std::vector<SparseVec> kernel(int n) const;

private:
    std::map<int, size_t> pivot_;
    std::vector<SparseVec> rows_;
};

struct FinDimAlgebra {
    int dim = 0;
    std::vector<std::string> labels;
    std::vector<std::map<int, SparseVec>> table;  // table[i][j] = b_i b_j (absent when zero)
    SparseVec unit;
    std::shared_ptr<const FiniteGroup> group;     // for grading and action
    std::vector<int> grading;                     // per basis element, or empty
    std::vector<std::vector<SparseVec>> action;   // action[g][i] = g(b_i), or empty
    std::vector<int> support;                     // point of a G-set per basis element, or empty

    static FinDimAlgebra zero(int dim);
    void set_product(int i, int j, SparseVec v);
    const SparseVec& product(int i, int j) const;
    SparseVec multiply(const SparseVec& a, const SparseVec& b) const;
    SparseVec act(int g, const SparseVec& a) const;
    long conductor() const;  // lcm of the conductors of all constants
    // throws InputError naming the failing basis elements
    void validate() const;
};

FinDimAlgebra group_algebra(std::shared_ptr<const FiniteGroup> g);
FinDimAlgebra matrix_algebra(int r);
FinDimAlgebra function_algebra(int n);
FinDimAlgebra direct_sum(const FinDimAlgebra& a, const FinDimAlgebra& b);
// A # G for A carrying a G-action; graded by G
FinDimAlgebra skew_group_algebra(const FinDimAlgebra& a);
// index of a u_g inside A # G
inline int skew_index(int i, int g, int order) { return i * order + g; }

struct CenterResult {
    std::vector<SparseVec> basis;
    std::vector<int> grading_class;  // conjugacy class of the degree, -1 if ungraded
    std::vector<int> degree;         // the degree itself when its class is a single element, else -1
};

CenterResult center(const FinDimAlgebra& a);

// Span of commutators, split by conjugacy class of the degree when graded (class 0 otherwise).
struct CommutatorSpace {
    std::vector<int> class_of_basis;
    std::vector<SparseEliminator> per_class;
};

CommutatorSpace commutator_space(const FinDimAlgebra& a);

struct HH0Result {
    int dim = 0;
    std::vector<int> quotient_basis;  // basis elements whose classes span A/[A,A]
    std::vector<int> class_dims;      // per conjugacy class when graded
};

HH0Result hh0(const FinDimAlgebra& a);

struct CocycleTable {
    std::shared_ptr<const FiniteGroup> group;
    long root_order = 1;
    std::vector<std::vector<long>> c;  // alpha(g, h) = zeta_N^c[g][h]

    // validates range, normalization and the cocycle identity; throws InputError
    static CocycleTable make(std::shared_ptr<const FiniteGroup> g, long n, std::vector<std::vector<long>> c);
    static CocycleTable trivial(std::shared_ptr<const FiniteGroup> g);
    Cyclotomic value(int g, int h) const { return Cyclotomic::zeta(root_order, c[g][h]); }
};

FinDimAlgebra twisted_group_algebra(const CocycleTable& alpha);

// Representatives of H^2(G, mu_p) for a prime p, trivial class first.
std::vector<CocycleTable> h2_representatives(std::shared_ptr<const FiniteGroup> g, long p);
int h2_rank(const FiniteGroup& g, long p);

// indices into group.classes()
std::vector<int> alpha_regular_classes(const CocycleTable& alpha);

}  // namespace orbicalc
