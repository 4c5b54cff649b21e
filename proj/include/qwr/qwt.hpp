#pragma once

#include "qwr/circuit.hpp"
#include "qwr/dense_matrix.hpp"

#include <cmath>
#include <vector>

namespace qwr {

/// Rotation angles of the two wavelet kernel rotations.
struct WaveletAngles {
    double theta0 = M_PI / 3.0;
    double theta1 = 5.0 * M_PI / 12.0;
};

/// Four-tap filter coefficients of the wavelet kernel rows. Derived from the
/// kernel rotations: the circuit realizes rows
///   even:  c0 c1 c2 c3   (starting at column 2m, periodic)
///   odd:   c3 -c2 c1 -c0
/// with c0 = sin(t1)cos(t0), c1 = -sin(t1)sin(t0), c2 = cos(t1)sin(t0),
/// c3 = cos(t1)cos(t0). Note the signs of c1: relative to the textbook
/// Daubechies-4 low-pass filter this convention alternates signs, so the even
/// channel has zero mean instead of the odd one. Orthonormality
/// (sum c_i^2 = 1, c0 c2 + c1 c3 = 0) holds exactly for any angles.
struct DaubechiesCoefficients {
    double c0, c1, c2, c3;

    static DaubechiesCoefficients from_angles(const WaveletAngles& a);
};

/// [[sin t, cos t], [cos t, -sin t]] for theta0 / theta1.
Mat2 rotation_c0(const WaveletAngles& a);
Mat2 rotation_c1(const WaveletAngles& a);

/// All builders act on the lowest n of the width-1 system qubits (the
/// register qubits in ascending order, skipping `ancilla`), conditioned on
/// the higher system qubits being 0 when n < width-1, i.e. the direct sum
/// with the identity on the rest of the system space.

/// Shuffle Pi_{2^n} (+) I: bit rotate (a0..a_{n-1}) -> (a_{n-1}, a0..a_{n-2})
/// on indices below 2^n, built from n-1 swaps of 3 controlled-nots each.
Circuit build_shuffle(int n, int width, int ancilla);

/// Full bit reversal P_{2^n} (+) I via floor(n/2) swaps.
Circuit build_bit_reversal(int n, int width, int ancilla);

/// Wavelet kernel D^(4)_{2^n} (+) I: (I (x) C1) P (not-ladder) P (I (x) C0).
Circuit build_kernel(int n, int width, int ancilla, const WaveletAngles& a = {});

/// Pyramidal wavelet transform: kernel and shuffle at sizes 2^{n_q} down to
/// 8, then the final 4x4 kernel.
Circuit build_qwt(int n_q, int width, int ancilla, const WaveletAngles& a = {});

/// Classical reference transforms (same kernel, shuffle and stage ordering
/// as the circuits; used as oracles and as the fast ideal-evolution path).
DenseMatrix classical_kernel_matrix(int n, const WaveletAngles& a = {});
DenseMatrix classical_shuffle_matrix(int n);
DenseMatrix classical_dwt_matrix(int n_q, const WaveletAngles& a = {});

/// In-place pyramidal transform of a length-2^{n_q} vector (n_q >= 2) and its
/// inverse. O(N) per call.
void classical_dwt_d4(std::vector<cplx>& v, const WaveletAngles& a = {});
void classical_idwt_d4(std::vector<cplx>& v, const WaveletAngles& a = {});

} // namespace qwr
