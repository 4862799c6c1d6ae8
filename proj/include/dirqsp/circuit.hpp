#pragma once

#include "dirqsp/angles.hpp"
#include "dirqsp/laurent.hpp"
#include "dirqsp/linalg.hpp"

#include <vector>

namespace dirqsp {

// Gate factors on (control qubit ox walk space), stored in matrix-product
// order: the full operator is gates[0] * gates[1] * ... * gates.back().
struct DirectionalCircuit {
    std::vector<CMatrix> gates;
    int d = 0;
    int query_count = 0;  // d after assembly, d + 2 once corrected
    Eigen::Index walk_dim = 0;
    bool corrected = false;
};

// [R(theta_d, phi_d) D(U)] ... [R(theta_1, phi_1) D(U)] R(theta_0, phi_0,
// rot_lambda + phase_fix_delta), in the phase-modified gate convention.
// Does not include the correction step.
DirectionalCircuit assemble_circuit(const AngleSequence& angles, const CMatrix& u);

// Wraps the product as diag(U^dag, 1) * M * diag(1, U), removing the spare
// power of U from the top-left block; adds the two extra queries.
DirectionalCircuit apply_correction(const DirectionalCircuit& circuit, const CMatrix& u);

CMatrix circuit_product(const DirectionalCircuit& circuit);

// (<+| ox I) M (|+> ox I) = (U^dag P - Q^dag + Q + P^dag U)/2 for the
// corrected circuit.
CMatrix extract_plus_block(const DirectionalCircuit& circuit);

// P(U) for a Laurent polynomial, via powers of U and U^dag.
CMatrix laurent_apply(const LaurentPoly<double>& l, const CMatrix& u);

}  // namespace dirqsp
