#include "qls/fock_ops.hpp"

#include <cmath>
#include <vector>

namespace qls {

namespace {
using Triplet = Eigen::Triplet<Complex>;

SparseOp from_triplets(int rows, int cols, const std::vector<Triplet>& ts) {
    SparseOp m(rows, cols);
    m.setFromTriplets(ts.begin(), ts.end());
    m.makeCompressed();
    return m;
}
}  // namespace

SparseOp annihilation(int n_fock) {
    std::vector<Triplet> ts;
    ts.reserve(static_cast<std::size_t>(n_fock));
    for (int n = 1; n < n_fock; ++n) {
        ts.emplace_back(n - 1, n, Complex(std::sqrt(static_cast<double>(n)), 0.0));
    }
    return from_triplets(n_fock, n_fock, ts);
}

SparseOp sigma_x() {
    return from_triplets(2, 2, {{0, 1, Complex(1, 0)}, {1, 0, Complex(1, 0)}});
}

SparseOp sigma_z() {
    return from_triplets(2, 2, {{0, 0, Complex(-1, 0)}, {1, 1, Complex(1, 0)}});
}

SparseOp sigma_plus() {
    return from_triplets(2, 2, {{1, 0, Complex(1, 0)}});
}

SparseOp sigma_minus() {
    return from_triplets(2, 2, {{0, 1, Complex(1, 0)}});
}

SparseOp kron(const SparseOp& a, const SparseOp& b) {
    std::vector<Triplet> ts;
    ts.reserve(static_cast<std::size_t>(a.nonZeros()) * static_cast<std::size_t>(b.nonZeros()));
    for (int ka = 0; ka < a.outerSize(); ++ka) {
        for (SparseOp::InnerIterator ia(a, ka); ia; ++ia) {
            for (int kb = 0; kb < b.outerSize(); ++kb) {
                for (SparseOp::InnerIterator ib(b, kb); ib; ++ib) {
                    ts.emplace_back(static_cast<int>(ia.row() * b.rows() + ib.row()),
                                    static_cast<int>(ia.col() * b.cols() + ib.col()),
                                    ia.value() * ib.value());
                }
            }
        }
    }
    return from_triplets(static_cast<int>(a.rows() * b.rows()),
                         static_cast<int>(a.cols() * b.cols()), ts);
}

SparseOp sparse_identity(int dim) {
    SparseOp m(dim, dim);
    m.setIdentity();
    return m;
}

}  // namespace qls
