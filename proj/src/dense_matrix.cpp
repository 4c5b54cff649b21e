#include "qwr/dense_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace qwr {

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = cplx(1);
    return m;
}

DenseMatrix DenseMatrix::adjoint() const {
    DenseMatrix m(n_);
    for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t c = 0; c < n_; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
}

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix m(n_);
    for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t c = 0; c < n_; ++c) m(c, r) = (*this)(r, c);
    return m;
}

std::vector<cplx> DenseMatrix::apply(const std::vector<cplx>& v) const {
    if (v.size() != n_) throw std::invalid_argument("DenseMatrix::apply: size mismatch");
    std::vector<cplx> out(n_, cplx(0));
    for (std::size_t r = 0; r < n_; ++r) {
        const cplx* row_r = row(r);
        cplx acc(0);
        for (std::size_t c = 0; c < n_; ++c) acc += row_r[c] * v[c];
        out[r] = acc;
    }
    return out;
}

double DenseMatrix::max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.size() != b.size()) throw std::invalid_argument("max_abs_diff: size mismatch");
    double m = 0.0;
    for (std::size_t r = 0; r < a.size(); ++r)
        for (std::size_t c = 0; c < a.size(); ++c)
            m = std::max(m, std::abs(a(r, c) - b(r, c)));
    return m;
}

double DenseMatrix::unitarity_error() const {
    const DenseMatrix p = (*this) * adjoint();
    double m = 0.0;
    for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t c = 0; c < n_; ++c) {
            const cplx expect = (r == c) ? cplx(1) : cplx(0);
            m = std::max(m, std::abs(p(r, c) - expect));
        }
    return m;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.size() != b.size()) throw std::invalid_argument("matrix product: size mismatch");
    const std::size_t n = a.size();
    DenseMatrix out(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t k = 0; k < n; ++k) {
            const cplx arc = a(r, k);
            if (arc == cplx(0)) continue;
            const cplx* brow = b.row(k);
            cplx* orow = out.row(r);
            for (std::size_t c = 0; c < n; ++c) orow[c] += arc * brow[c];
        }
    }
    return out;
}

} // namespace qwr
