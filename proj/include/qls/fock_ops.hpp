#ifndef QLS_FOCK_OPS_HPP
#define QLS_FOCK_OPS_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>

namespace qls {

using Complex = std::complex<double>;
using SparseOp = Eigen::SparseMatrix<Complex>;
using DenseOp = Eigen::MatrixXcd;

// Truncated annihilation operator on N Fock levels: a[n-1, n] = sqrt(n).
SparseOp annihilation(int n_fock);

// Two-level operators in the (g, e) basis, g first.
SparseOp sigma_x();
SparseOp sigma_z();        // |e><e| - |g><g|
SparseOp sigma_plus();     // |e><g|
SparseOp sigma_minus();    // |g><e|

// Kronecker product, row-major block layout: (A kron B)[i*p+k, j*q+l] = A[i,j] B[k,l].
SparseOp kron(const SparseOp& a, const SparseOp& b);

// Identity of the given dimension.
SparseOp sparse_identity(int dim);

}  // namespace qls

#endif
