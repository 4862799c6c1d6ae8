#include "dirqsp/walk.hpp"

#include "dirqsp/errors.hpp"
#include "dirqsp/numerics.hpp"

#include <cmath>

namespace dirqsp {

namespace {

const std::complex<double> kI(0.0, 1.0);

CMatrix single_pauli(char c) {
    CMatrix m(2, 2);
    switch (c) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, -kI, kI, 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: throw InputError(std::string("pauli_matrix: invalid character '") + c + "'");
    }
    return m;
}

// reflection 2|0><0|_enc ox I_s - I on enc ox sys
CMatrix zero_reflection(Eigen::Index enc_dim, Eigen::Index sys_dim) {
    CMatrix r = CMatrix::Zero(enc_dim * sys_dim, enc_dim * sys_dim);
    for (Eigen::Index i = 0; i < enc_dim * sys_dim; ++i) r(i, i) = (i < sys_dim) ? 1.0 : -1.0;
    return r;
}

void validate_walk(const WalkOperator& w, const CMatrix& h) {
    CMatrix v2 = w.v * w.v;
    v2 -= CMatrix::Identity(v2.rows(), v2.cols());
    if (max_abs(v2) > 1e-11) throw VerificationError("encode: block encoding is not self-inverse to 1e-11");
    CMatrix block = encoded_block(w);
    CMatrix target = h / w.enc_lambda;
    if (max_abs(CMatrix(block - target)) > 1e-11)
        throw VerificationError("encode: encoded block does not match H/enc_lambda to 1e-11");
    if (!is_unitary(w.u, 1e-11)) throw VerificationError("encode: walk operator is not unitary to 1e-11");
}

}  // namespace

CMatrix pauli_matrix(const std::string& pauli) {
    if (pauli.empty()) throw InputError("pauli_matrix: empty string");
    CMatrix m = single_pauli(pauli[0]);
    for (std::size_t i = 1; i < pauli.size(); ++i) m = kron(m, single_pauli(pauli[i]));
    return m;
}

CMatrix dense_hamiltonian(const HamiltonianSpec& spec) {
    if (spec.kind == HamiltonianSpec::Kind::direct) return spec.matrix;
    Eigen::Index dim = Eigen::Index(1) << spec.n_qubits;
    CMatrix h = CMatrix::Zero(dim, dim);
    for (const auto& term : spec.terms) h += term.coeff * pauli_matrix(term.pauli);
    return h;
}

CMatrix encoded_block(const WalkOperator& w) {
    return w.v.topLeftCorner(w.sys_dim, w.sys_dim);
}

WalkOperator encode_direct(const HamiltonianSpec& spec) {
    if (spec.kind != HamiltonianSpec::Kind::direct) throw InputError("encode_direct: wrong spec variant");
    const CMatrix& h = spec.matrix;
    if (h.rows() != h.cols() || h.rows() < 1) throw InputError("encode_direct: matrix must be square");
    if (!is_hermitian(h)) throw InputError("encode_direct: matrix is not Hermitian to 1e-12");
    double norm = spectral_norm(h);
    if (!(spec.enc_lambda >= (1.0 + 1e-6) * norm))
        throw InputError("encode_direct: enc_lambda must be >= (1 + 1e-6) * ||H||");

    Eigen::Index n = h.rows();
    CMatrix a = h / spec.enc_lambda;
    EigDecomp eig = eig_hermitian(a);
    CVector s_diag(n);
    for (Eigen::Index k = 0; k < n; ++k)
        s_diag(k) = std::sqrt(std::max(0.0, 1.0 - eig.values(k) * eig.values(k)));
    CMatrix s = eig.vectors * s_diag.asDiagonal() * eig.vectors.adjoint();

    WalkOperator w;
    w.enc_dim = 2;
    w.sys_dim = n;
    w.enc_lambda = spec.enc_lambda;
    w.v = CMatrix(2 * n, 2 * n);
    w.v.topLeftCorner(n, n) = a;
    w.v.topRightCorner(n, n) = s;
    w.v.bottomLeftCorner(n, n) = s;
    w.v.bottomRightCorner(n, n) = -a;
    w.u = kI * (zero_reflection(2, n) * w.v);
    validate_walk(w, h);
    return w;
}

WalkOperator encode_pauli_lcu(const HamiltonianSpec& spec) {
    if (spec.kind != HamiltonianSpec::Kind::pauli_lcu) throw InputError("encode_pauli_lcu: wrong spec variant");
    if (spec.terms.empty()) throw InputError("encode_pauli_lcu: term list is empty");
    if (spec.n_qubits < 1) throw InputError("encode_pauli_lcu: n_qubits must be >= 1");
    double lambda = 0.0;
    for (const auto& term : spec.terms) {
        if (term.pauli.size() != static_cast<std::size_t>(spec.n_qubits))
            throw InputError("encode_pauli_lcu: pauli string length must equal n_qubits");
        if (term.coeff == 0.0) throw InputError("encode_pauli_lcu: coefficients must be nonzero");
        lambda += std::abs(term.coeff);
    }

    Eigen::Index l = static_cast<Eigen::Index>(spec.terms.size());
    Eigen::Index enc_dim = 1;
    while (enc_dim < l) enc_dim *= 2;
    Eigen::Index sys_dim = Eigen::Index(1) << spec.n_qubits;

    // PREPARE: real Householder reflection sending e_0 to the amplitude vector
    Eigen::VectorXd amps = Eigen::VectorXd::Zero(enc_dim);
    for (Eigen::Index j = 0; j < l; ++j)
        amps(j) = std::sqrt(std::abs(spec.terms[static_cast<std::size_t>(j)].coeff) / lambda);
    CMatrix prep = CMatrix::Identity(enc_dim, enc_dim);
    Eigen::VectorXd v = -amps;
    v(0) += 1.0;
    double vn = v.norm();
    if (vn > 1e-14) {
        v /= vn;
        for (Eigen::Index i = 0; i < enc_dim; ++i)
            for (Eigen::Index j = 0; j < enc_dim; ++j) prep(i, j) -= 2.0 * v(i) * v(j);
    }

    CMatrix select = CMatrix::Zero(enc_dim * sys_dim, enc_dim * sys_dim);
    for (Eigen::Index j = 0; j < enc_dim; ++j) {
        CMatrix op;
        if (j < l) {
            const auto& term = spec.terms[static_cast<std::size_t>(j)];
            op = (term.coeff < 0.0 ? -1.0 : 1.0) * pauli_matrix(term.pauli);
        } else {
            op = CMatrix::Identity(sys_dim, sys_dim);  // zero-amplitude padding
        }
        select.block(j * sys_dim, j * sys_dim, sys_dim, sys_dim) = op;
    }

    CMatrix prep_full = kron(prep, CMatrix::Identity(sys_dim, sys_dim));
    WalkOperator w;
    w.enc_dim = enc_dim;
    w.sys_dim = sys_dim;
    w.enc_lambda = lambda;
    w.v = prep_full.adjoint() * select * prep_full;
    w.u = kI * (zero_reflection(enc_dim, sys_dim) * w.v);
    validate_walk(w, dense_hamiltonian(spec));
    return w;
}

WalkOperator encode(const HamiltonianSpec& spec) {
    return spec.kind == HamiltonianSpec::Kind::direct ? encode_direct(spec) : encode_pauli_lcu(spec);
}

CMatrix directional_controlled(const WalkOperator& w) {
    Eigen::Index dim = w.u.rows();
    CMatrix d = CMatrix::Zero(2 * dim, 2 * dim);
    d.topLeftCorner(dim, dim) = w.u;
    d.bottomRightCorner(dim, dim) = w.u.adjoint();
    return d;
}

WalkSpectrumReport walk_spectrum_check(const WalkOperator& w, double tol) {
    CMatrix h = encoded_block(w) * w.enc_lambda;
    h = (h + CMatrix(h.adjoint())) / 2.0;
    EigDecomp eig = eig_hermitian(h);

    WalkSpectrumReport report;
    report.pass = true;
    auto wrap = [](double a) {
        while (a > pi_v<double>()) a -= 2.0 * pi_v<double>();
        while (a <= -pi_v<double>()) a += 2.0 * pi_v<double>();
        return a;
    };
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
        double ratio = eig.values(k) / w.enc_lambda;
        if (std::abs(ratio) > 1.0 - 1e-8)
            throw InputError("walk_spectrum_check: |E_k|/enc_lambda too close to 1 (qubitized subspace collapses)");
        CVector b1 = CVector::Zero(w.enc_dim * w.sys_dim);
        b1.head(w.sys_dim) = eig.vectors.col(k);
        CVector b2 = w.u * b1;
        b2 -= (b1.dot(b2)) * b1;
        double nrm = b2.norm();
        if (nrm < 1e-8) throw NumericError("walk_spectrum_check: invariant subspace degenerated");
        b2 /= nrm;

        std::complex<double> m00 = b1.dot(w.u * b1), m01 = b1.dot(w.u * b2);
        std::complex<double> m10 = b2.dot(w.u * b1), m11 = b2.dot(w.u * b2);
        std::complex<double> tr = m00 + m11, det = m00 * m11 - m01 * m10;
        std::complex<double> disc = std::sqrt(tr * tr - 4.0 * det);
        std::complex<double> e1 = (tr + disc) / 2.0, e2 = (tr - disc) / 2.0;

        double want1 = std::asin(ratio);
        double want2 = wrap(pi_v<double>() - want1);
        double got1 = std::arg(e1), got2 = std::arg(e2);
        auto dist = [&](double a, double b) { return std::abs(wrap(a - b)); };
        double pairing_a = std::max(dist(got1, want1), dist(got2, want2));
        double pairing_b = std::max(dist(got1, want2), dist(got2, want1));
        double err = std::min(pairing_a, pairing_b);
        report.worst_phase_error = std::max(report.worst_phase_error, err);
        if (err > tol) report.pass = false;
        ++report.checked;
    }
    return report;
}

}  // namespace dirqsp
