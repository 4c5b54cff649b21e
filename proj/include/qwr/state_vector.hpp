#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace qwr {

using cplx = std::complex<double>;

/// 2x2 complex matrix, row-major: {u00, u01, u10, u11}.
using Mat2 = std::array<cplx, 4>;

Mat2 mat2_identity();
Mat2 mat2_adjoint(const Mat2& u);
Mat2 mat2_mul(const Mat2& a, const Mat2& b);
/// Max |(U U^dag - I)_{ij}|.
double mat2_unitarity_error(const Mat2& u);

/// Dense complex amplitude vector over 2^num_qubits basis states.
///
/// Qubit 0 is the most significant bit of the basis index, so for a
/// register |a_0 a_1 ... a_{w-1}> the index is sum_p a_p 2^{w-1-p}.
/// All gate applications are in place and preserve the norm.
class StateVector {
public:
    explicit StateVector(int num_qubits);

    /// |index> with unit amplitude.
    static StateVector basis_state(int num_qubits, std::uint64_t index);

    int num_qubits() const { return num_qubits_; }
    std::uint64_t size() const { return amps_.size(); }

    cplx& operator[](std::uint64_t i) { return amps_[i]; }
    const cplx& operator[](std::uint64_t i) const { return amps_[i]; }
    std::span<cplx> amplitudes() { return {amps_.data(), amps_.size()}; }
    std::span<const cplx> amplitudes() const { return {amps_.data(), amps_.size()}; }

    /// Bit mask selecting qubit q in a basis index (MSB convention).
    std::uint64_t qubit_mask(int q) const;

    void apply_single_qubit(int target, const Mat2& u);
    /// diag(1, e^{i phi}) on one qubit.
    void apply_phase(int target, double phi);
    void apply_controlled_phase(int control, int target, double phi);
    void apply_controlled_not(int control, int target);
    void apply_toffoli(int c1, int c2, int target);
    void apply_swap(int q1, int q2);

    /// Multiply every amplitude by table[i] (caller guarantees |table[i]| = 1
    /// when unitarity is required).
    void apply_diagonal(std::span<const cplx> table);

    double norm_sq() const;
    std::vector<double> probability_distribution() const;

private:
    void check_qubit(int q) const;

    std::vector<cplx> amps_;
    int num_qubits_;
};

/// <a|b> = sum conj(a_i) b_i. Throws on dimension mismatch.
cplx inner_product(const StateVector& a, const StateVector& b);

} // namespace qwr
