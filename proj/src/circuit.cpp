#include "dirqsp/circuit.hpp"

#include "dirqsp/errors.hpp"

namespace dirqsp {

namespace {

CMatrix control_block(const Mat2& r, Eigen::Index dim) {
    CMatrix out(2 * dim, 2 * dim);
    CMatrix eye = CMatrix::Identity(dim, dim);
    out.topLeftCorner(dim, dim) = r[0] * eye;
    out.topRightCorner(dim, dim) = r[1] * eye;
    out.bottomLeftCorner(dim, dim) = r[2] * eye;
    out.bottomRightCorner(dim, dim) = r[3] * eye;
    return out;
}

CMatrix directional(const CMatrix& u) {
    Eigen::Index dim = u.rows();
    CMatrix d = CMatrix::Zero(2 * dim, 2 * dim);
    d.topLeftCorner(dim, dim) = u;
    d.bottomRightCorner(dim, dim) = u.adjoint();
    return d;
}

}  // namespace

DirectionalCircuit assemble_circuit(const AngleSequence& angles, const CMatrix& u) {
    if (!is_unitary(u)) throw InputError("assemble_circuit: U must be unitary to 1e-12");
    DirectionalCircuit circuit;
    circuit.d = angles.d;
    circuit.query_count = angles.d;
    circuit.walk_dim = u.rows();
    CMatrix d_u = directional(u);
    for (int j = angles.d; j >= 1; --j) {
        Mat2 r = rotation_gate(angles.theta[static_cast<std::size_t>(j)], angles.phi[static_cast<std::size_t>(j)]);
        circuit.gates.push_back(control_block(r, u.rows()) * d_u);
    }
    Mat2 final_r = rotation_gate(angles.theta[0], angles.phi[0], angles.rot_lambda + angles.phase_fix_delta);
    circuit.gates.push_back(control_block(final_r, u.rows()));
    return circuit;
}

DirectionalCircuit apply_correction(const DirectionalCircuit& circuit, const CMatrix& u) {
    if (circuit.corrected) throw InputError("apply_correction: circuit already corrected");
    Eigen::Index dim = u.rows();
    if (dim != circuit.walk_dim) throw InputError("apply_correction: U dimension does not match circuit");
    DirectionalCircuit out = circuit;

    CMatrix left = CMatrix::Identity(2 * dim, 2 * dim);
    left.topLeftCorner(dim, dim) = u.adjoint();  // controlled U^dag on the |0> branch
    CMatrix right = CMatrix::Identity(2 * dim, 2 * dim);
    right.bottomRightCorner(dim, dim) = u;  // anti-controlled U, applied first in time
    out.gates.insert(out.gates.begin(), left);
    out.gates.push_back(right);
    out.query_count = circuit.d + 2;
    out.corrected = true;
    return out;
}

CMatrix circuit_product(const DirectionalCircuit& circuit) {
    if (circuit.gates.empty()) throw InputError("circuit_product: empty circuit");
    CMatrix acc = circuit.gates.front();
    for (std::size_t i = 1; i < circuit.gates.size(); ++i) acc = acc * circuit.gates[i];
    return acc;
}

CMatrix extract_plus_block(const DirectionalCircuit& circuit) {
    CMatrix m = circuit_product(circuit);
    Eigen::Index dim = circuit.walk_dim;
    return (m.topLeftCorner(dim, dim) + m.topRightCorner(dim, dim) + m.bottomLeftCorner(dim, dim) +
            m.bottomRightCorner(dim, dim)) /
           2.0;
}

CMatrix laurent_apply(const LaurentPoly<double>& l, const CMatrix& u) {
    Eigen::Index dim = u.rows();
    CMatrix acc = CMatrix::Zero(dim, dim);
    if (l.is_zero()) return acc;
    CMatrix u_dag = u.adjoint();
    CMatrix pos = CMatrix::Identity(dim, dim);
    for (int k = 0; k <= l.max_power(); ++k) {
        if (k > 0) pos = pos * u;
        auto c = l.coeff(k);
        if (c != std::complex<double>(0.0)) acc += c * pos;
    }
    CMatrix neg = CMatrix::Identity(dim, dim);
    for (int k = -1; k >= l.min_power; --k) {
        neg = neg * u_dag;
        auto c = l.coeff(k);
        if (c != std::complex<double>(0.0)) acc += c * neg;
    }
    return acc;
}

}  // namespace dirqsp
