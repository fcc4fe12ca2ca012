#ifndef QLS_LINDBLAD_HPP
#define QLS_LINDBLAD_HPP

#include <vector>

#include "qls/density_matrix.hpp"
#include "qls/fock_ops.hpp"
#include "qls/params.hpp"

namespace qls {

// H = (pi/T) * (-(delta/2) sz + (1/2) sx + (eta/2)(s+ a + s- ad)) on the
// 2N-dimensional product space, with delta in units of the Rabi frequency.
// Built symmetrically, so it is Hermitian to the last bit.
SparseOp build_hamiltonian(const PhysicalParams& p, double delta);

// Generator of drho/dt = -i[H,rho] + (1/tau_d) D[s-]rho + (1/tau_h)(D[a] + D[ad])rho
// in units of 1/T. All operators live on the truncated space, so the flow is
// exactly trace preserving and completely positive there.
class LindbladGenerator {
  public:
    LindbladGenerator(const PhysicalParams& p, double delta);

    // Background variant: same dissipators, H = 0.
    static LindbladGenerator background(const PhysicalParams& p);

    struct Workspace {
        Eigen::MatrixXcd t1, t2;
    };

    // out = L(rho). `ws` avoids per-call allocation in the stepper.
    void apply(const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out, Workspace& ws) const;

    int n_fock() const { return n_fock_; }
    int dim() const { return 2 * n_fock_; }
    const SparseOp& hamiltonian() const { return h_; }
    double decay_rate() const { return decay_rate_; }
    double heating_rate() const { return heating_rate_; }

  private:
    LindbladGenerator() = default;
    void init_dissipators(const PhysicalParams& p);

    SparseOp h_, sm_, sp_, a_, ad_;
    Eigen::VectorXd k_diag_;  // (1/2) sum_j rate_j X_j^dag X_j  (diagonal here)
    double decay_rate_ = 0.0, heating_rate_ = 0.0;
    int n_fock_ = 0;
};

struct IntegratorOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    long max_steps = 20'000'000;
    // Invariant gates applied to every returned state.
    double trace_tol = 1e-8;
    double hermiticity_tol = 1e-10;
    double positivity_tol = 1e-8;
    bool check_positivity = true;
};

// Adaptive Dormand-Prince 5(4) propagation of rho0 to each time in `times`
// (ascending, in units of T). Throws IntegrationFailure if step control
// stalls or an invariant gate fails.
std::vector<DensityMatrix> evolve_multi(const LindbladGenerator& gen,
                                        const DensityMatrix& rho0,
                                        const std::vector<double>& times,
                                        const IntegratorOptions& opts = {});

DensityMatrix evolve(const LindbladGenerator& gen, const DensityMatrix& rho0, double t,
                     const IntegratorOptions& opts = {});

}  // namespace qls

#endif
