#include "qls/lindblad.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "qls/errors.hpp"

namespace qls {

SparseOp build_hamiltonian(const PhysicalParams& p, double delta) {
    const int n = p.fock_cutoff;
    using Triplet = Eigen::Triplet<Complex>;
    std::vector<Triplet> ts;
    ts.reserve(static_cast<std::size_t>(6 * n));

    const double w = rabi_phase_per_T;  // Rabi phase per unit time
    const double dz = -0.5 * delta * w;
    const double dx = 0.5 * w;
    const double dc = 0.5 * p.lamb_dicke * w;

    for (int m = 0; m < n; ++m) {
        const int g = m;      // (e=0, m)
        const int e = n + m;  // (e=1, m)
        // -(delta/2) sz: sz = diag(-1 on g, +1 on e)
        if (dz != 0.0) {
            ts.emplace_back(g, g, Complex(-dz, 0.0));
            ts.emplace_back(e, e, Complex(dz, 0.0));
        }
        // (1/2) sx: couples (g,m) <-> (e,m)
        ts.emplace_back(g, e, Complex(dx, 0.0));
        ts.emplace_back(e, g, Complex(dx, 0.0));
        // (eta/2)(s+ a + s- ad): <e,m|H|g,m+1> = dc sqrt(m+1), plus mirror
        if (m + 1 < n) {
            const double v = dc * std::sqrt(m + 1.0);
            ts.emplace_back(n + m, m + 1, Complex(v, 0.0));
            ts.emplace_back(m + 1, n + m, Complex(v, 0.0));
        }
    }
    SparseOp h(2 * n, 2 * n);
    h.setFromTriplets(ts.begin(), ts.end());
    h.makeCompressed();
    return h;
}

void LindbladGenerator::init_dissipators(const PhysicalParams& p) {
    const int n = p.fock_cutoff;
    n_fock_ = n;
    decay_rate_ = 1.0 / p.decay_time;
    heating_rate_ = 1.0 / p.heating_time;

    const SparseOp a1 = annihilation(n);
    const SparseOp id2 = sparse_identity(2);
    const SparseOp idn = sparse_identity(n);
    sm_ = kron(sigma_minus(), idn);
    sp_ = kron(sigma_plus(), idn);
    a_ = kron(id2, a1);
    ad_ = kron(id2, SparseOp(a1.adjoint()));

    // K = (1/2)[ (1/tau_d) s+ s- + (1/tau_h)(ad a + a ad) ], diagonal on this basis.
    k_diag_ = Eigen::VectorXd::Zero(2 * n);
    for (int m = 0; m < n; ++m) {
        const double heat = heating_rate_ * (m + (m + 1 < n ? m + 1.0 : 0.0));
        k_diag_[m] = 0.5 * heat;
        k_diag_[n + m] = 0.5 * (heat + decay_rate_);
    }
}

LindbladGenerator::LindbladGenerator(const PhysicalParams& p, double delta) {
    p.validate();
    init_dissipators(p);
    h_ = build_hamiltonian(p, delta);
}

LindbladGenerator LindbladGenerator::background(const PhysicalParams& p) {
    p.validate();
    LindbladGenerator g;
    g.init_dissipators(p);
    g.h_ = SparseOp(2 * p.fock_cutoff, 2 * p.fock_cutoff);  // H = 0
    return g;
}

void LindbladGenerator::apply(const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out,
                              Workspace& ws) const {
    const Complex mi(0.0, -1.0);
    // -i [H, rho]
    ws.t1.noalias() = h_ * rho;
    ws.t1.noalias() -= rho * h_;
    out = mi * ws.t1;
    // (1/tau_d) s- rho s+
    ws.t1.noalias() = sm_ * rho;
    ws.t2.noalias() = ws.t1 * sp_;
    out.noalias() += decay_rate_ * ws.t2;
    // (1/tau_h) (a rho ad + ad rho a)
    ws.t1.noalias() = a_ * rho;
    ws.t2.noalias() = ws.t1 * ad_;
    out.noalias() += heating_rate_ * ws.t2;
    ws.t1.noalias() = ad_ * rho;
    ws.t2.noalias() = ws.t1 * a_;
    out.noalias() += heating_rate_ * ws.t2;
    // -(K rho + rho K), K diagonal
    out.noalias() -= k_diag_.cast<Complex>().asDiagonal() * rho;
    out.noalias() -= rho * k_diag_.cast<Complex>().asDiagonal();
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
// 5th-order weights (also the last stage row: first-same-as-last)
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// embedded 4th-order weights
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                 e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

double error_norm(const Eigen::MatrixXcd& y, const Eigen::MatrixXcd& ynew,
                  const Eigen::MatrixXcd& diff, double atol, double rtol) {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < y.cols(); ++j) {
        for (Eigen::Index i = 0; i < y.rows(); ++i) {
            const double sc =
                atol + rtol * std::max(std::abs(y(i, j)), std::abs(ynew(i, j)));
            worst = std::max(worst, std::abs(diff(i, j)) / sc);
        }
    }
    return worst;
}

void gate_invariants(DensityMatrix& rho, double t, const IntegratorOptions& o) {
    const double herm = rho.hermiticity_defect();
    if (herm > o.hermiticity_tol) {
        throw IntegrationFailure("evolve: hermiticity defect " + std::to_string(herm) +
                                 " at t = " + std::to_string(t));
    }
    rho.m = 0.5 * (rho.m + rho.m.adjoint().eval());
    const double tr = rho.trace_real();
    if (std::abs(tr - 1.0) > o.trace_tol) {
        throw IntegrationFailure("evolve: trace " + std::to_string(tr) + " at t = " +
                                 std::to_string(t));
    }
    if (o.check_positivity && rho.min_eigenvalue() < -o.positivity_tol) {
        throw IntegrationFailure("evolve: negative eigenvalue " +
                                 std::to_string(rho.min_eigenvalue()) + " at t = " +
                                 std::to_string(t));
    }
}

}  // namespace

std::vector<DensityMatrix> evolve_multi(const LindbladGenerator& gen,
                                        const DensityMatrix& rho0,
                                        const std::vector<double>& times,
                                        const IntegratorOptions& opts) {
    if (rho0.n_fock != gen.n_fock()) {
        throw DimensionMismatch("evolve: state cutoff does not match generator");
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0.0 || (i > 0 && times[i] < times[i - 1])) {
            throw Error("evolve: times must be ascending and nonnegative");
        }
    }

    std::vector<DensityMatrix> out;
    out.reserve(times.size());

    const int d = gen.dim();
    Eigen::MatrixXcd y = rho0.m;
    Eigen::MatrixXcd k1(d, d), k2(d, d), k3(d, d), k4(d, d), k5(d, d), k6(d, d), k7(d, d);
    Eigen::MatrixXcd ytmp(d, d), ynew(d, d), diff(d, d);
    LindbladGenerator::Workspace ws{Eigen::MatrixXcd(d, d), Eigen::MatrixXcd(d, d)};

    double t = 0.0;
    gen.apply(y, k1, ws);
    double dt = 0.01 / (1.0 + k1.cwiseAbs().maxCoeff());
    long steps = 0;

    auto snapshot = [&](double at) {
        DensityMatrix r{y, gen.n_fock()};
        gate_invariants(r, at, opts);
        out.push_back(std::move(r));
    };

    for (double target : times) {
        while (target - t > 1e-14 * std::max(1.0, target)) {
            const bool clipped = t + dt >= target;
            const double h = clipped ? target - t : dt;
            if (++steps > opts.max_steps) {
                throw IntegrationFailure("evolve: exceeded max step count");
            }
            ytmp = y + h * (a21 * k1);
            gen.apply(ytmp, k2, ws);
            ytmp = y + h * (a31 * k1 + a32 * k2);
            gen.apply(ytmp, k3, ws);
            ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
            gen.apply(ytmp, k4, ws);
            ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
            gen.apply(ytmp, k5, ws);
            ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
            gen.apply(ytmp, k6, ws);
            ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            gen.apply(ynew, k7, ws);
            diff = ynew - (y + h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 +
                                    e7 * k7));
            const double err = error_norm(y, ynew, diff, opts.abs_tol, opts.rel_tol);
            if (err <= 1.0) {
                t = clipped ? target : t + h;
                y.swap(ynew);
                k1.swap(k7);  // first-same-as-last
                const double grow = 0.9 * std::pow(std::max(err, 1e-16), -0.2);
                if (!clipped) dt = h * std::min(5.0, std::max(0.2, grow));
            } else {
                dt = h * std::max(0.2, 0.9 * std::pow(err, -0.2));
                if (!(dt > 1e-14 * std::max(1.0, std::abs(t)))) {
                    throw IntegrationFailure("evolve: step size underflow at t = " +
                                             std::to_string(t));
                }
            }
        }
        snapshot(target);
    }
    return out;
}

DensityMatrix evolve(const LindbladGenerator& gen, const DensityMatrix& rho0, double t,
                     const IntegratorOptions& opts) {
    return evolve_multi(gen, rho0, {t}, opts)[0];
}

}  // namespace qls
