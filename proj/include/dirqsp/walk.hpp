#pragma once

#include "dirqsp/linalg.hpp"

#include <string>
#include <vector>

namespace dirqsp {

struct PauliTerm {
    std::string pauli;  // over {I, X, Y, Z}; first character = most significant qubit
    double coeff = 0.0;
};

struct HamiltonianSpec {
    enum class Kind { direct, pauli_lcu };
    Kind kind = Kind::direct;
    // direct
    CMatrix matrix;
    double enc_lambda = 0.0;
    // pauli_lcu
    int n_qubits = 0;
    std::vector<PauliTerm> terms;
};

// Self-inverse block encoding V with (<0| ox I) V (|0> ox I) = H/enc_lambda,
// plus the walk step u = i (2|0><0| ox I_s - I) V.
struct WalkOperator {
    CMatrix u;
    CMatrix v;
    Eigen::Index enc_dim = 0;
    Eigen::Index sys_dim = 0;
    double enc_lambda = 0.0;
};

CMatrix pauli_matrix(const std::string& pauli);
CMatrix dense_hamiltonian(const HamiltonianSpec& spec);

WalkOperator encode_direct(const HamiltonianSpec& spec);
WalkOperator encode_pauli_lcu(const HamiltonianSpec& spec);
WalkOperator encode(const HamiltonianSpec& spec);

// The encoded block H/enc_lambda read back out of v.
CMatrix encoded_block(const WalkOperator& w);

// D = |0><0| ox u + |1><1| ox u^dag on control ox (enc ox sys).
CMatrix directional_controlled(const WalkOperator& w);

struct WalkSpectrumReport {
    bool pass = false;
    int checked = 0;
    double worst_phase_error = 0.0;
};

// Per eigenvalue E_k of the encoded Hamiltonian, restricts u to the
// invariant subspace spanned by {|0>|psi_k>, u|0>|psi_k>} and matches its
// eigenphases against {arcsin(E_k/lambda), pi - arcsin(E_k/lambda)}.
WalkSpectrumReport walk_spectrum_check(const WalkOperator& w, double tol = 1e-10);

}  // namespace dirqsp
