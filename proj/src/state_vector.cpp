#include "qwr/state_vector.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qwr {

Mat2 mat2_identity() { return {cplx(1), cplx(0), cplx(0), cplx(1)}; }

Mat2 mat2_adjoint(const Mat2& u) {
    return {std::conj(u[0]), std::conj(u[2]), std::conj(u[1]), std::conj(u[3])};
}

Mat2 mat2_mul(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

double mat2_unitarity_error(const Mat2& u) {
    const Mat2 p = mat2_mul(u, mat2_adjoint(u));
    double err = 0.0;
    err = std::max(err, std::abs(p[0] - cplx(1)));
    err = std::max(err, std::abs(p[1]));
    err = std::max(err, std::abs(p[2]));
    err = std::max(err, std::abs(p[3] - cplx(1)));
    return err;
}

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > 30)
        throw std::invalid_argument("StateVector: unsupported qubit count " +
                                    std::to_string(num_qubits));
    amps_.assign(std::uint64_t(1) << num_qubits, cplx(0));
    amps_[0] = cplx(1);
}

StateVector StateVector::basis_state(int num_qubits, std::uint64_t index) {
    StateVector s(num_qubits);
    if (index >= s.size()) throw std::out_of_range("basis_state: index out of range");
    s.amps_[0] = cplx(0);
    s.amps_[index] = cplx(1);
    return s;
}

std::uint64_t StateVector::qubit_mask(int q) const {
    check_qubit(q);
    return std::uint64_t(1) << (num_qubits_ - 1 - q);
}

void StateVector::check_qubit(int q) const {
    if (q < 0 || q >= num_qubits_)
        throw std::out_of_range("qubit index " + std::to_string(q) + " out of range for " +
                                std::to_string(num_qubits_) + " qubits");
}

namespace {

// Inserts a zero bit at the position selected by mask (a power of two):
// bits >= mask shift up by one, bits below stay.
inline std::uint64_t insert_zero_bit(std::uint64_t x, std::uint64_t mask) {
    return ((x & ~(mask - 1)) << 1) | (x & (mask - 1));
}

} // namespace

void StateVector::apply_single_qubit(int target, const Mat2& u) {
    const std::uint64_t mask = qubit_mask(target);
    assert(mat2_unitarity_error(u) < 1e-10);
    const std::uint64_t half = amps_.size() >> 1;
    cplx* a = amps_.data();
    for (std::uint64_t i = 0; i < half; ++i) {
        const std::uint64_t i0 = insert_zero_bit(i, mask);
        const std::uint64_t i1 = i0 | mask;
        const cplx t0 = a[i0];
        const cplx t1 = a[i1];
        a[i0] = u[0] * t0 + u[1] * t1;
        a[i1] = u[2] * t0 + u[3] * t1;
    }
}

void StateVector::apply_phase(int target, double phi) {
    const std::uint64_t mask = qubit_mask(target);
    const cplx p = std::polar(1.0, phi);
    const std::uint64_t half = amps_.size() >> 1;
    cplx* a = amps_.data();
    for (std::uint64_t i = 0; i < half; ++i) a[insert_zero_bit(i, mask) | mask] *= p;
}

void StateVector::apply_controlled_phase(int control, int target, double phi) {
    if (control == target) throw std::invalid_argument("controlled_phase: equal indices");
    std::uint64_t m1 = qubit_mask(control);
    std::uint64_t m2 = qubit_mask(target);
    if (m1 > m2) std::swap(m1, m2);
    const cplx p = std::polar(1.0, phi);
    const std::uint64_t quarter = amps_.size() >> 2;
    cplx* a = amps_.data();
    for (std::uint64_t i = 0; i < quarter; ++i) {
        const std::uint64_t base = insert_zero_bit(insert_zero_bit(i, m1), m2);
        a[base | m1 | m2] *= p;
    }
}

void StateVector::apply_controlled_not(int control, int target) {
    if (control == target) throw std::invalid_argument("controlled_not: equal indices");
    const std::uint64_t cm = qubit_mask(control);
    const std::uint64_t tm = qubit_mask(target);
    const std::uint64_t lo = std::min(cm, tm);
    const std::uint64_t hi = std::max(cm, tm);
    const std::uint64_t quarter = amps_.size() >> 2;
    cplx* a = amps_.data();
    for (std::uint64_t i = 0; i < quarter; ++i) {
        const std::uint64_t base = insert_zero_bit(insert_zero_bit(i, lo), hi);
        std::swap(a[base | cm], a[base | cm | tm]);
    }
}

void StateVector::apply_toffoli(int c1, int c2, int target) {
    if (c1 == c2 || c1 == target || c2 == target)
        throw std::invalid_argument("toffoli: duplicate indices");
    const std::uint64_t m1 = qubit_mask(c1);
    const std::uint64_t m2 = qubit_mask(c2);
    const std::uint64_t tm = qubit_mask(target);
    std::uint64_t s0 = m1, s1 = m2, s2 = tm;
    if (s0 > s1) std::swap(s0, s1);
    if (s1 > s2) std::swap(s1, s2);
    if (s0 > s1) std::swap(s0, s1);
    const std::uint64_t eighth = amps_.size() >> 3;
    cplx* a = amps_.data();
    for (std::uint64_t i = 0; i < eighth; ++i) {
        const std::uint64_t base =
            insert_zero_bit(insert_zero_bit(insert_zero_bit(i, s0), s1), s2);
        std::swap(a[base | m1 | m2], a[base | m1 | m2 | tm]);
    }
}

void StateVector::apply_swap(int q1, int q2) {
    if (q1 == q2) throw std::invalid_argument("swap: equal indices");
    std::uint64_t m1 = qubit_mask(q1);
    std::uint64_t m2 = qubit_mask(q2);
    if (m1 > m2) std::swap(m1, m2);
    const std::uint64_t quarter = amps_.size() >> 2;
    cplx* a = amps_.data();
    for (std::uint64_t i = 0; i < quarter; ++i) {
        const std::uint64_t base = insert_zero_bit(insert_zero_bit(i, m1), m2);
        std::swap(a[base | m1], a[base | m2]);
    }
}

void StateVector::apply_diagonal(std::span<const cplx> table) {
    if (table.size() != amps_.size())
        throw std::invalid_argument("apply_diagonal: table size mismatch");
    cplx* a = amps_.data();
    const cplx* t = table.data();
    for (std::uint64_t i = 0; i < amps_.size(); ++i) a[i] *= t[i];
}

double StateVector::norm_sq() const {
    double s = 0.0;
    for (const cplx& v : amps_) s += std::norm(v);
    return s;
}

std::vector<double> StateVector::probability_distribution() const {
    std::vector<double> p(amps_.size());
    for (std::uint64_t i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_[i]);
    return p;
}

cplx inner_product(const StateVector& a, const StateVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("inner_product: dimension mismatch");
    cplx s(0);
    for (std::uint64_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

} // namespace qwr
