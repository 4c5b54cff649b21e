#include "qwr/eigenphases.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qwr {

namespace {

// Unitary plane rotation G = [[c, s], [-conj(s), c]] with real c >= 0 such
// that G (x, y)^T has zero second component.
struct Givens {
    double c;
    cplx s;
};

Givens make_givens(cplx x, cplx y) {
    const double ax = std::abs(x), ay = std::abs(y);
    if (ay == 0.0) return {1.0, cplx(0)};
    if (ax == 0.0) return {0.0, cplx(1)};
    const double r = std::hypot(ax, ay);
    return {ax / r, (x / ax) * std::conj(y) / r};
}

void hessenberg_reduce(DenseMatrix& a) {
    const std::size_t n = a.size();
    if (n < 3) return;
    std::vector<cplx> v(n), w(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        // Householder vector for column k below the subdiagonal.
        double norm_x = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) norm_x += std::norm(a(i, k));
        norm_x = std::sqrt(norm_x);
        if (norm_x < 1e-300) continue;
        const cplx x0 = a(k + 1, k);
        const cplx phase = (std::abs(x0) > 0) ? x0 / std::abs(x0) : cplx(1);
        const cplx alpha = -phase * norm_x;
        double vnorm_sq = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i] = a(i, k);
            if (i == k + 1) v[i] -= alpha;
            vnorm_sq += std::norm(v[i]);
        }
        if (vnorm_sq < 1e-280) continue;
        const double inv = 1.0 / std::sqrt(vnorm_sq);
        for (std::size_t i = k + 1; i < n; ++i) v[i] *= inv;
        // Left update: A -= 2 v (v^dag A) on rows k+1.., cols k..
        for (std::size_t j = k; j < n; ++j) {
            cplx dot(0);
            for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * a(i, j);
            w[j] = 2.0 * dot;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx vi = v[i];
            cplx* row = a.row(i);
            for (std::size_t j = k; j < n; ++j) row[j] -= vi * w[j];
        }
        // Right update: A -= 2 (A v) v^dag on all rows, cols k+1..
        for (std::size_t i = 0; i < n; ++i) {
            const cplx* row = a.row(i);
            cplx dot(0);
            for (std::size_t j = k + 1; j < n; ++j) dot += row[j] * v[j];
            w[i] = 2.0 * dot;
        }
        for (std::size_t i = 0; i < n; ++i) {
            const cplx wi = w[i];
            cplx* row = a.row(i);
            for (std::size_t j = k + 1; j < n; ++j) row[j] -= wi * std::conj(v[j]);
        }
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = cplx(0);
    }
}

std::pair<cplx, cplx> eig2x2(cplx a, cplx b, cplx c, cplx d) {
    const cplx half_tr = 0.5 * (a + d);
    const cplx det = a * d - b * c;
    const cplx disc = std::sqrt(half_tr * half_tr - det);
    return {half_tr + disc, half_tr - disc};
}

// Implicit single-shift QR sweep on the active window [lo, hi].
void qr_sweep(DenseMatrix& h, std::size_t lo, std::size_t hi, cplx shift) {
    cplx x = h(lo, lo) - shift;
    cplx y = h(lo + 1, lo);
    for (std::size_t k = lo; k < hi; ++k) {
        const Givens g = make_givens(x, y);
        if (k > lo) {
            h(k, k - 1) = g.c * x + g.s * y;
            h(k + 1, k - 1) = cplx(0);
        }
        // rows k, k+1
        for (std::size_t j = k; j <= hi; ++j) {
            const cplx t0 = h(k, j);
            const cplx t1 = h(k + 1, j);
            h(k, j) = g.c * t0 + g.s * t1;
            h(k + 1, j) = -std::conj(g.s) * t0 + g.c * t1;
        }
        // columns k, k+1 (right-multiplication by G^dag)
        const std::size_t imax = std::min(k + 2, hi);
        for (std::size_t i = lo; i <= imax; ++i) {
            const cplx t0 = h(i, k);
            const cplx t1 = h(i, k + 1);
            h(i, k) = t0 * g.c + t1 * std::conj(g.s);
            h(i, k + 1) = -t0 * g.s + t1 * g.c;
        }
        if (k + 1 < hi) {
            x = h(k + 1, k);
            y = h(k + 2, k);
        }
    }
}

} // namespace

std::vector<cplx> dense_eigenvalues(DenseMatrix a) {
    const std::size_t n = a.size();
    if (n == 0) return {};
    if (n == 1) return {a(0, 0)};
    std::vector<cplx> eig;
    eig.reserve(n);
    hessenberg_reduce(a);

    const double eps = std::numeric_limits<double>::epsilon();
    std::size_t hi = n - 1;
    int iters_since_deflation = 0;
    while (true) {
        // Deflate negligible subdiagonals.
        std::size_t lo = hi;
        while (lo > 0) {
            const double sub = std::abs(a(lo, lo - 1));
            const double scale = std::abs(a(lo - 1, lo - 1)) + std::abs(a(lo, lo));
            if (sub <= eps * std::max(scale, 1e-300)) {
                a(lo, lo - 1) = cplx(0);
                break;
            }
            --lo;
        }
        if (lo == hi) {
            eig.push_back(a(hi, hi));
            if (hi == 0) break;
            --hi;
            iters_since_deflation = 0;
            continue;
        }
        if (lo + 1 == hi) {
            const auto [l1, l2] = eig2x2(a(lo, lo), a(lo, hi), a(hi, lo), a(hi, hi));
            eig.push_back(l1);
            eig.push_back(l2);
            if (lo == 0) break;
            hi = lo - 1;
            iters_since_deflation = 0;
            continue;
        }
        if (++iters_since_deflation > 40 * int(hi - lo + 1))
            throw std::runtime_error("dense_eigenvalues: QR iteration failed to converge");
        // Wilkinson shift from the trailing 2x2; exceptional shift now and
        // then to break symmetric stalls.
        cplx shift;
        if (iters_since_deflation % 12 == 0) {
            shift = a(hi, hi) + cplx(std::abs(a(hi, hi - 1)), 0.0);
        } else {
            const auto [l1, l2] =
                eig2x2(a(hi - 1, hi - 1), a(hi - 1, hi), a(hi, hi - 1), a(hi, hi));
            shift = (std::abs(l1 - a(hi, hi)) < std::abs(l2 - a(hi, hi))) ? l1 : l2;
        }
        qr_sweep(a, lo, hi, shift);
    }
    return eig;
}

} // namespace qwr
