#include "qls/density_matrix.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <string>

#include "qls/errors.hpp"

namespace qls {

double DensityMatrix::hermiticity_defect() const {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

Eigen::MatrixXcd DensityMatrix::motional() const {
    const int n = n_fock;
    return m.topLeftCorner(n, n) + m.bottomRightCorner(n, n);
}

DensityMatrix DensityMatrix::ground_squeezed(const PhysicalParams& p,
                                             double max_truncation_loss) {
    const int n = p.fock_cutoff;
    SqueezedState s = squeezed_state(p.squeezing_r, n, max_truncation_loss);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(2 * n);
    psi.head(n) = s.normalized().cast<Complex>();
    DensityMatrix rho;
    rho.n_fock = n;
    rho.m = psi * psi.adjoint();
    return rho;
}

double povm_signal_raw(const DensityMatrix& rho, const SqueezedState& probe) {
    if (probe.n_fock() != rho.n_fock) {
        throw DimensionMismatch("povm_signal: probe cutoff " +
                                std::to_string(probe.n_fock()) + " vs state cutoff " +
                                std::to_string(rho.n_fock));
    }
    Eigen::VectorXcd v = probe.normalized().cast<Complex>();
    const Complex overlap = v.adjoint() * (rho.motional() * v);
    return 1.0 - overlap.real();
}

double povm_signal(const DensityMatrix& rho, const SqueezedState& probe) {
    return std::clamp(povm_signal_raw(rho, probe), 0.0, 1.0);
}

}  // namespace qls
