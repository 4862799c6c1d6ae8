#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>

namespace dirqsp {

// Dense complex matrices, row-major entry order.
using CMatrix = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVector = Eigen::VectorXcd;

struct EigDecomp {
    Eigen::VectorXd values;  // ascending
    CMatrix vectors;         // orthonormal columns
};

double max_abs(const CMatrix& m);
bool is_unitary(const CMatrix& m, double tol = 1e-12);
bool is_hermitian(const CMatrix& m, double tol = 1e-12);

CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix kron(const CMatrix& a, const CMatrix& b);

// Deterministic Hermitian eigendecomposition meeting
// ||H V - V diag|| <= 1e-11 ||H|| and ||V^dag V - I|| <= 1e-12.
EigDecomp eig_hermitian(const CMatrix& h);

// V diag(e^{-i E_k t}) V^dag; unitary to 1e-12.
CMatrix exp_minus_iht(const CMatrix& h, double t);

// Largest singular value, via eig_hermitian of m^dag m.
double spectral_norm(const CMatrix& m);

// Haar-random unitary / GUE-style Hermitian, bit-deterministic per seed
// (SplitMix64 Ginibre draw + Householder QR with phase fixing).
CMatrix random_unitary(Eigen::Index dim, std::uint64_t seed);
CMatrix random_hermitian(Eigen::Index dim, std::uint64_t seed);

}  // namespace dirqsp
