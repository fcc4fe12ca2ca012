#include "qls/squeezed.hpp"

#include <cmath>
#include <string>

#include "qls/errors.hpp"

namespace qls {

Eigen::VectorXd SqueezedState::normalized() const {
    return amplitudes / amplitudes.norm();
}

SqueezedState squeezed_state(double r, int n_fock, double max_truncation_loss) {
    if (r < 0.0) throw Error("squeezed_state: r must be >= 0");
    if (n_fock < 1) throw Error("squeezed_state: cutoff must be >= 1");

    SqueezedState s;
    s.amplitudes = Eigen::VectorXd::Zero(n_fock);
    const double th = std::tanh(r);
    double c = std::sqrt(1.0 / std::cosh(r));
    s.amplitudes[0] = c;
    // c_{2n} / c_{2n-2} = tanh(r) * sqrt((2n-1)/(2n))
    for (int n = 1; 2 * n < n_fock; ++n) {
        c *= th * std::sqrt((2.0 * n - 1.0) / (2.0 * n));
        s.amplitudes[2 * n] = c;
    }
    s.truncation_loss = 1.0 - s.amplitudes.squaredNorm();
    if (s.truncation_loss > max_truncation_loss) {
        throw TruncationWarning("squeezed_state: norm deficit " +
                                std::to_string(s.truncation_loss) + " exceeds " +
                                std::to_string(max_truncation_loss) + " at cutoff " +
                                std::to_string(n_fock) + " (r = " + std::to_string(r) + ")");
    }
    return s;
}

}  // namespace qls
