#ifndef QLS_SQUEEZED_HPP
#define QLS_SQUEEZED_HPP

#include <Eigen/Dense>

namespace qls {

// Squeezed vacuum exp((r/2)(ad^2 - a^2))|0> truncated to n_fock levels.
//
// Amplitudes are real in this phase convention and vanish at odd Fock
// indices. They are the exact infinite-space coefficients, so the truncated
// vector's norm falls short of 1 by `truncation_loss` (grows with r).
struct SqueezedState {
    Eigen::VectorXd amplitudes;   // length n_fock
    double truncation_loss = 0.0; // 1 - sum of squared amplitudes

    int n_fock() const { return static_cast<int>(amplitudes.size()); }
    Eigen::VectorXd normalized() const;
};

// Closed-form even-Fock amplitude: <2n|S(r)|0> = sech(r)^(1/2) tanh(r)^n sqrt((2n)!)/(2^n n!).
//
// Throws TruncationWarning when the norm deficit exceeds `max_truncation_loss`
// (the cutoff is too small for the requested squeezing).
SqueezedState squeezed_state(double r, int n_fock, double max_truncation_loss = 1e-4);

}  // namespace qls

#endif
