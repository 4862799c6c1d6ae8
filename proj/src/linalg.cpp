#include "dirqsp/linalg.hpp"

#include "dirqsp/errors.hpp"
#include "dirqsp/numerics.hpp"

#include <cmath>

namespace dirqsp {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

bool is_unitary(const CMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    CMatrix g = m.adjoint() * m;
    g -= CMatrix::Identity(m.rows(), m.cols());
    return max_abs(g) <= tol;
}

bool is_hermitian(const CMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    CMatrix d = m - m.adjoint();
    return max_abs(d) <= tol;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw InputError("matmul: inner dimensions do not match");
    return a * b;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

EigDecomp eig_hermitian(const CMatrix& h) {
    if (h.rows() != h.cols()) throw InputError("eig_hermitian: matrix must be square");
    if (!is_hermitian(h)) throw InputError("eig_hermitian: matrix is not Hermitian to 1e-12");
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
    if (solver.info() != Eigen::Success) throw NumericError("eig_hermitian: eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

CMatrix exp_minus_iht(const CMatrix& h, double t) {
    EigDecomp eig = eig_hermitian(h);
    CVector phases(eig.values.size());
    for (Eigen::Index k = 0; k < eig.values.size(); ++k)
        phases(k) = std::exp(std::complex<double>(0.0, -eig.values(k) * t));
    return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

double spectral_norm(const CMatrix& m) {
    CMatrix gram = m.adjoint() * m;
    gram = (gram + CMatrix(gram.adjoint())) / 2.0;  // clean roundoff asymmetry
    EigDecomp eig = eig_hermitian(gram);
    double top = eig.values(eig.values.size() - 1);
    return std::sqrt(std::max(0.0, top));
}

namespace {

CMatrix ginibre(Eigen::Index dim, std::uint64_t seed) {
    SplitMix64 rng = SplitMix64(seed).split(0x6D617472ULL);
    CMatrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) {
            double u1 = rng.next_double(), u2 = rng.next_double();
            double r = std::sqrt(-2.0 * std::log(u1));
            g(i, j) = std::complex<double>(r * std::cos(2.0 * pi_v<double>() * u2),
                                           r * std::sin(2.0 * pi_v<double>() * u2));
        }
    return g;
}

}  // namespace

CMatrix random_unitary(Eigen::Index dim, std::uint64_t seed) {
    if (dim < 1) throw InputError("random_unitary: dim must be >= 1");
    CMatrix g = ginibre(dim, seed);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < dim; ++j) {
        std::complex<double> d = r(j, j);
        double a = std::abs(d);
        q.col(j) *= (a > 0.0) ? d / a : std::complex<double>(1.0, 0.0);
    }
    return q;
}

CMatrix random_hermitian(Eigen::Index dim, std::uint64_t seed) {
    if (dim < 1) throw InputError("random_hermitian: dim must be >= 1");
    CMatrix g = ginibre(dim, seed ^ 0x48AD21ULL);
    return (g + CMatrix(g.adjoint())) / 2.0;
}

}  // namespace dirqsp
