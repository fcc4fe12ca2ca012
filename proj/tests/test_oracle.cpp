#include <doctest.h>

#include "oracle_helpers.hpp"
#include "qls/density_matrix.hpp"
#include "qls/lindblad.hpp"
#include "qls/rng.hpp"

using namespace qls;

TEST_CASE("stepper matches the dense matrix exponential") {
    PhysicalParams p;
    p.fock_cutoff = 8;
    Rng rng(2024);
    const DensityMatrix rho0 = DensityMatrix::ground_squeezed(p);
    for (int trial = 0; trial < 4; ++trial) {
        const double delta = -8.0 + 16.0 * rng.uniform();
        const double t = 1.0 + 30.0 * rng.uniform();
        const Eigen::MatrixXcd liou = qls_test::dense_liouvillian(p, delta);
        const Eigen::MatrixXcd expected = qls_test::apply_expm(liou, rho0.m, t);
        const DensityMatrix got = evolve(LindbladGenerator(p, delta), rho0, t);
        CHECK((got.m - expected).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("eigendecomposition route agrees with the exponential route") {
    PhysicalParams p;
    p.fock_cutoff = 6;
    p.squeezing_r = 0.4;
    const DensityMatrix rho0 = DensityMatrix::ground_squeezed(p);
    const Eigen::MatrixXcd liou = qls_test::dense_liouvillian(p, 3.3);
    const qls_test::EigOracle eig(liou);
    for (const double t : {2.0, 17.0, 44.0}) {
        const Eigen::MatrixXcd a = qls_test::apply_expm(liou, rho0.m, t);
        const Eigen::MatrixXcd b = eig.at(rho0.m, t);
        CHECK((a - b).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("background generator matches its dense exponential") {
    PhysicalParams p;
    p.fock_cutoff = 7;
    p.squeezing_r = 0.6;
    const DensityMatrix rho0 = DensityMatrix::ground_squeezed(p);
    const Eigen::MatrixXcd liou = qls_test::dense_liouvillian(p, 0.0, true);
    const Eigen::MatrixXcd expected = qls_test::apply_expm(liou, rho0.m, 25.0);
    const DensityMatrix got = evolve(LindbladGenerator::background(p), rho0, 25.0);
    CHECK((got.m - expected).cwiseAbs().maxCoeff() < 1e-7);
}
