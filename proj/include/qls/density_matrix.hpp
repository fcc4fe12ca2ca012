#ifndef QLS_DENSITY_MATRIX_HPP
#define QLS_DENSITY_MATRIX_HPP

#include <Eigen/Dense>

#include "qls/fock_ops.hpp"
#include "qls/params.hpp"
#include "qls/squeezed.hpp"

namespace qls {

// Two-level system tensor truncated motional mode. Basis index e * N + n with
// the electronic index e (0 = ground, 1 = excited) slowest.
struct DensityMatrix {
    Eigen::MatrixXcd m;
    int n_fock = 0;

    int dim() const { return 2 * n_fock; }

    double trace_real() const { return m.trace().real(); }
    // max |m - m^dagger| over entries
    double hermiticity_defect() const;
    double min_eigenvalue() const;

    // Partial trace over the electronic subsystem: N x N motional state.
    Eigen::MatrixXcd motional() const;

    // Electronic ground state tensor squeezed vacuum, renormalized after
    // truncation. `max_truncation_loss` is forwarded to squeezed_state.
    static DensityMatrix ground_squeezed(const PhysicalParams& p,
                                         double max_truncation_loss = 1e-4);
};

// Probability of the "outside the reference state" POVM outcome:
// 1 - <probe| Tr_el(rho) |probe>, clipped to [0, 1]. The probe is normalized
// before projecting. Throws DimensionMismatch on cutoff disagreement.
double povm_signal(const DensityMatrix& rho, const SqueezedState& probe);

// Same without clipping, for diagnostics.
double povm_signal_raw(const DensityMatrix& rho, const SqueezedState& probe);

}  // namespace qls

#endif
