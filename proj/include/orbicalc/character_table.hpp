#pragma once

#include "orbicalc/cyclotomic.hpp"
#include "orbicalc/group.hpp"

#include <memory>
#include <vector>

namespace orbicalc {

struct CharacterTable {
    int group_order = 0;
    int conductor = 1;                       // exponent of the group
    std::vector<int> class_sizes;
    std::vector<int> class_reps;             // least element of each class
    std::vector<int> class_inverse;          // class of inverses
    std::vector<std::vector<Cyclotomic>> chi;  // chi[i][c]: irreducible i on class c

    int size() const { return static_cast<int>(chi.size()); }
    long degree(int i) const;
    // (1/|G|) sum_c h_c f_c conj(g_c)
    Cyclotomic inner(const std::vector<Cyclotomic>& f, const std::vector<Cyclotomic>& g) const;
    // Coordinates of a class function in the irreducible basis.
    std::vector<Cyclotomic> decompose(const std::vector<Cyclotomic>& f) const;
    // Class function of sum_i x_i chi_i.
    std::vector<Cyclotomic> class_function(const std::vector<Cyclotomic>& x) const;
};

// Burnside-Dixon over GF(p) with p = 1 (mod exponent), lifted to Q(zeta_exponent).
// Rows: trivial character first, then by degree, then lexicographic on values.
CharacterTable compute_character_table(const FiniteGroup& g);

// Cached per multiplication table; thread safe.
std::shared_ptr<const CharacterTable> character_table(const FiniteGroup& g);

// Throws VerificationError unless rows are orthonormal and sum of squared degrees is |G|.
void validate_character_table(const CharacterTable& t);

Cyclotomic complex_conj(const Cyclotomic& x);

}  // namespace orbicalc
