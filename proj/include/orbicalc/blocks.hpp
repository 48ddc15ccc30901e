#pragma once

// Blocks of a finite-dimensional algebra before and after enlarging the
// cyclotomic base field, and the induced map on K0 of the semisimple quotients.

#include "orbicalc/algebra.hpp"

namespace orbicalc {

struct BlockCountReport {
    long base_conductor = 1;     // K = Q(zeta_N), N the conductor of the structure constants
    long ext_conductor = 1;      // L = Q(zeta_N')
    int dim = 0;
    int radical_dim = 0;
    int center_dim = 0;          // dim over K of the center of A / rad A
    int blocks_base = 0;
    int blocks_ext = 0;
    std::vector<int> base_degrees;  // [Z_i : K] for each factor of the center
    std::vector<int> ext_degrees;   // [Z'_j : L]
    IntMat inclusion;               // inclusion(j, i) = 1 when block j of A_L lies in block i of A
    bool injective = false;
};

// Throws InputError unless N divides N'; VerificationError when the trace-form
// radical is not a nilpotent ideal.
BlockCountReport simple_block_count(const FinDimAlgebra& a, long ext_conductor);

}  // namespace orbicalc
