#pragma once

#include "qwr/dense_matrix.hpp"

#include <vector>

namespace qwr {

/// Eigenvalues of a general complex square matrix (values only, unordered):
/// Householder reduction to upper Hessenberg form followed by implicit
/// single-shift QR with deflation. O(n^3); intended for the dense map
/// unitaries up to a few thousand states.
std::vector<cplx> dense_eigenvalues(DenseMatrix a);

} // namespace qwr
