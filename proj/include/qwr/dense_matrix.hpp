#pragma once

#include "qwr/state_vector.hpp"

#include <cstddef>
#include <vector>

namespace qwr {

/// Small dense square complex matrix, row-major. Used for circuit-to-matrix
/// oracles, classical reference transforms and spectral analysis; not a
/// general linear-algebra library.
class DenseMatrix {
public:
    DenseMatrix() : n_(0) {}
    explicit DenseMatrix(std::size_t n) : data_(n * n, cplx(0)), n_(n) {}

    static DenseMatrix identity(std::size_t n);

    std::size_t size() const { return n_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

    cplx* row(std::size_t r) { return data_.data() + r * n_; }
    const cplx* row(std::size_t r) const { return data_.data() + r * n_; }

    DenseMatrix adjoint() const;
    DenseMatrix transpose() const;
    std::vector<cplx> apply(const std::vector<cplx>& v) const;

    /// Max |A_ij - B_ij|.
    static double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);
    /// Max |(A A^dag - I)_ij|.
    double unitarity_error() const;

private:
    std::vector<cplx> data_;
    std::size_t n_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);

} // namespace qwr
