#include "qwr/qwt.hpp"

#include "qwr/multicontrol.hpp"

#include <cmath>
#include <stdexcept>

namespace qwr {

DaubechiesCoefficients DaubechiesCoefficients::from_angles(const WaveletAngles& a) {
    const double s0 = std::sin(a.theta0), k0 = std::cos(a.theta0);
    const double s1 = std::sin(a.theta1), k1 = std::cos(a.theta1);
    return {s1 * k0, -s1 * s0, k1 * s0, k1 * k0};
}

Mat2 rotation_c0(const WaveletAngles& a) {
    const double s = std::sin(a.theta0), c = std::cos(a.theta0);
    return {cplx(s), cplx(c), cplx(c), cplx(-s)};
}

Mat2 rotation_c1(const WaveletAngles& a) {
    const double s = std::sin(a.theta1), c = std::cos(a.theta1);
    return {cplx(s), cplx(c), cplx(c), cplx(-s)};
}

namespace {

// System qubits in ascending register order, skipping the ancilla. sys[0] is
// the most significant system bit.
std::vector<int> system_qubits(int width, int ancilla) {
    if (ancilla < 0 || ancilla >= width)
        throw std::invalid_argument("qwt: ancilla out of range");
    std::vector<int> sys;
    sys.reserve(width - 1);
    for (int q = 0; q < width; ++q)
        if (q != ancilla) sys.push_back(q);
    return sys;
}

struct BlockLayout {
    std::vector<int> block; // lowest n system qubits, MSB first
    std::vector<int> zeros; // higher system qubits, conditioned on 0
};

BlockLayout block_layout(int n, int width, int ancilla) {
    const std::vector<int> sys = system_qubits(width, ancilla);
    const int n_q = int(sys.size());
    if (n > n_q) throw std::invalid_argument("qwt: block larger than system");
    BlockLayout l;
    l.zeros.assign(sys.begin(), sys.begin() + (n_q - n));
    l.block.assign(sys.begin() + (n_q - n), sys.end());
    return l;
}

void emit_shuffle(ZeroControlBlock& zc, const std::vector<int>& block) {
    const int n = int(block.size());
    for (int i = n - 2; i >= 0; --i) zc.swap(block[i], block[i + 1]);
}

void emit_bit_reversal(ZeroControlBlock& zc, const std::vector<int>& block) {
    const int n = int(block.size());
    for (int i = 0; i < n / 2; ++i) zc.swap(block[i], block[n - 1 - i]);
}

// Kernel of Eq-structure (I (x) C1) P (ladder) P (I (x) C0), emitted in
// application order. The ladder applies, for j = 0..n-1, an X on block bit
// n-1-j conditioned on all higher block bits being 0; conjugated by the bit
// reversal this is the decrement-by-one permutation.
void emit_kernel(ZeroControlBlock& zc, const std::vector<int>& block,
                 const WaveletAngles& a) {
    const int n = int(block.size());
    zc.gate(Gate::refl(block[n - 1], a.theta0));
    emit_bit_reversal(zc, block);
    for (int j = 0; j < n; ++j) {
        const int target = block[n - 1 - j];
        const std::vector<int> internal(block.begin(), block.begin() + (n - 1 - j));
        zc.mcx_zero(target, internal);
    }
    emit_bit_reversal(zc, block);
    zc.gate(Gate::refl(block[n - 1], a.theta1));
}

} // namespace

Circuit build_shuffle(int n, int width, int ancilla) {
    if (n < 2 || n > width - 1) throw std::invalid_argument("build_shuffle: n out of range");
    const BlockLayout l = block_layout(n, width, ancilla);
    Circuit c(width);
    {
        ZeroControlBlock zc(c, l.zeros, ancilla);
        emit_shuffle(zc, l.block);
    }
    return c;
}

Circuit build_bit_reversal(int n, int width, int ancilla) {
    if (n < 1 || n > width - 1)
        throw std::invalid_argument("build_bit_reversal: n out of range");
    const BlockLayout l = block_layout(n, width, ancilla);
    Circuit c(width);
    {
        ZeroControlBlock zc(c, l.zeros, ancilla);
        emit_bit_reversal(zc, l.block);
    }
    return c;
}

Circuit build_kernel(int n, int width, int ancilla, const WaveletAngles& a) {
    if (n < 2 || n > width - 1) throw std::invalid_argument("build_kernel: n out of range");
    const BlockLayout l = block_layout(n, width, ancilla);
    Circuit c(width);
    {
        ZeroControlBlock zc(c, l.zeros, ancilla);
        emit_kernel(zc, l.block, a);
    }
    return c;
}

Circuit build_qwt(int n_q, int width, int ancilla, const WaveletAngles& a) {
    if (n_q < 2) throw std::invalid_argument("build_qwt: n_q must be >= 2");
    if (width != n_q + 1) throw std::invalid_argument("build_qwt: width must be n_q + 1");
    Circuit c(width);
    for (int n = n_q; n >= 3; --n) {
        const BlockLayout l = block_layout(n, width, ancilla);
        ZeroControlBlock zc(c, l.zeros, ancilla);
        emit_kernel(zc, l.block, a);
        emit_shuffle(zc, l.block);
    }
    {
        const BlockLayout l = block_layout(2, width, ancilla);
        ZeroControlBlock zc(c, l.zeros, ancilla);
        emit_kernel(zc, l.block, a);
    }
    return c;
}

DenseMatrix classical_kernel_matrix(int n, const WaveletAngles& a) {
    if (n < 2) throw std::invalid_argument("classical_kernel_matrix: n < 2");
    const DaubechiesCoefficients f = DaubechiesCoefficients::from_angles(a);
    const std::size_t size = std::size_t(1) << n;
    DenseMatrix m(size);
    for (std::size_t r2 = 0; r2 < size; r2 += 2) {
        m(r2, r2) = f.c0;
        m(r2, (r2 + 1) % size) = f.c1;
        m(r2, (r2 + 2) % size) = f.c2;
        m(r2, (r2 + 3) % size) = f.c3;
        m(r2 + 1, r2) = f.c3;
        m(r2 + 1, (r2 + 1) % size) = -f.c2;
        m(r2 + 1, (r2 + 2) % size) = f.c1;
        m(r2 + 1, (r2 + 3) % size) = -f.c0;
    }
    return m;
}

DenseMatrix classical_shuffle_matrix(int n) {
    if (n < 1) throw std::invalid_argument("classical_shuffle_matrix: n < 1");
    const std::size_t size = std::size_t(1) << n;
    DenseMatrix m(size);
    for (std::size_t j = 0; j < size; ++j) {
        // element at j moves to (j >> 1) with its low bit promoted to the top
        const std::size_t dest = (j >> 1) | ((j & 1) << (n - 1));
        m(dest, j) = cplx(1);
    }
    return m;
}

DenseMatrix classical_dwt_matrix(int n_q, const WaveletAngles& a) {
    if (n_q < 2) throw std::invalid_argument("classical_dwt_matrix: n_q < 2");
    const std::size_t size = std::size_t(1) << n_q;
    auto embed = [size](const DenseMatrix& top) {
        DenseMatrix m = DenseMatrix::identity(size);
        for (std::size_t r = 0; r < top.size(); ++r)
            for (std::size_t c = 0; c < top.size(); ++c) m(r, c) = top(r, c);
        return m;
    };
    DenseMatrix result = DenseMatrix::identity(size);
    for (int n = n_q; n >= 3; --n) {
        result = embed(classical_kernel_matrix(n, a)) * result;
        result = embed(classical_shuffle_matrix(n)) * result;
    }
    result = embed(classical_kernel_matrix(2, a)) * result;
    return result;
}

namespace {

void kernel_stage(std::vector<cplx>& v, std::size_t s, const DaubechiesCoefficients& f,
                  std::vector<cplx>& tmp) {
    for (std::size_t m = 0; m < s / 2; ++m) {
        const cplx v0 = v[2 * m];
        const cplx v1 = v[2 * m + 1];
        const cplx v2 = v[(2 * m + 2) % s];
        const cplx v3 = v[(2 * m + 3) % s];
        tmp[2 * m] = f.c0 * v0 + f.c1 * v1 + f.c2 * v2 + f.c3 * v3;
        tmp[2 * m + 1] = f.c3 * v0 - f.c2 * v1 + f.c1 * v2 - f.c0 * v3;
    }
    std::copy(tmp.begin(), tmp.begin() + s, v.begin());
}

void kernel_stage_inverse(std::vector<cplx>& v, std::size_t s, const DaubechiesCoefficients& f,
                          std::vector<cplx>& tmp) {
    for (std::size_t m = 0; m < s / 2; ++m) {
        const cplx y0 = v[2 * m];
        const cplx y1 = v[2 * m + 1];
        const cplx ym2 = v[(2 * m + s - 2) % s];
        const cplx ym1 = v[(2 * m + s - 1) % s];
        tmp[2 * m] = f.c0 * y0 + f.c3 * y1 + f.c2 * ym2 + f.c1 * ym1;
        tmp[2 * m + 1] = f.c1 * y0 - f.c2 * y1 + f.c3 * ym2 - f.c0 * ym1;
    }
    std::copy(tmp.begin(), tmp.begin() + s, v.begin());
}

void shuffle_stage(std::vector<cplx>& v, std::size_t s, std::vector<cplx>& tmp) {
    for (std::size_t j = 0; j < s; j += 2) tmp[j / 2] = v[j];
    for (std::size_t j = 1; j < s; j += 2) tmp[s / 2 + j / 2] = v[j];
    std::copy(tmp.begin(), tmp.begin() + s, v.begin());
}

void shuffle_stage_inverse(std::vector<cplx>& v, std::size_t s, std::vector<cplx>& tmp) {
    for (std::size_t i = 0; i < s / 2; ++i) {
        tmp[2 * i] = v[i];
        tmp[2 * i + 1] = v[s / 2 + i];
    }
    std::copy(tmp.begin(), tmp.begin() + s, v.begin());
}

std::size_t checked_size(const std::vector<cplx>& v) {
    const std::size_t n = v.size();
    if (n < 4 || (n & (n - 1)) != 0)
        throw std::invalid_argument("classical_dwt_d4: length must be a power of two >= 4");
    return n;
}

} // namespace

void classical_dwt_d4(std::vector<cplx>& v, const WaveletAngles& a) {
    const std::size_t n = checked_size(v);
    const DaubechiesCoefficients f = DaubechiesCoefficients::from_angles(a);
    std::vector<cplx> tmp(n);
    for (std::size_t s = n; s >= 8; s /= 2) {
        kernel_stage(v, s, f, tmp);
        shuffle_stage(v, s, tmp);
    }
    kernel_stage(v, 4, f, tmp);
}

void classical_idwt_d4(std::vector<cplx>& v, const WaveletAngles& a) {
    const std::size_t n = checked_size(v);
    const DaubechiesCoefficients f = DaubechiesCoefficients::from_angles(a);
    std::vector<cplx> tmp(n);
    kernel_stage_inverse(v, 4, f, tmp);
    for (std::size_t s = 8; s <= n; s *= 2) {
        shuffle_stage_inverse(v, s, tmp);
        kernel_stage_inverse(v, s, f, tmp);
    }
}

} // namespace qwr
