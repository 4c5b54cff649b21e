#pragma once

#include "qwr/state_vector.hpp"

#include <array>
#include <string>
#include <vector>

namespace qwr {

enum class GateKind { OneQubit, ControlledPhase, ControlledNot, Toffoli, Swap };

/// An elementary gate. Qubit roles per kind:
///   OneQubit:        q[0] = target, matrix u
///   ControlledPhase: q[0] = control, q[1] = target, angle
///   ControlledNot:   q[0] = control, q[1] = target
///   Toffoli:         q[0], q[1] = controls, q[2] = target
///   Swap:            q[0], q[1]
///
/// Imperfect gates jitter the phase of the gate's active rotation and leave
/// the identity eigenspaces alone. For the flip gates (ControlledNot,
/// Toffoli, Swap) `shifts` holds one entry, the extra phase on the
/// odd-parity eigenspace (ideal eigenphase pi); perturbed ControlledPhase
/// gates fold the jitter into `angle`, perturbed OneQubit gates into `u`.
struct Gate {
    GateKind kind;
    std::array<int, 3> q{-1, -1, -1};
    double angle = 0.0;
    Mat2 u{};
    std::vector<double> shifts;
    std::string label;

    static Gate one_qubit(int target, const Mat2& u, std::string label = "U1");
    static Gate x(int target);
    /// diag(1, e^{i phi}).
    static Gate phase(int target, double phi);
    /// Reflection [[sin t, cos t], [cos t, -sin t]]; X is the theta = 0 case.
    static Gate refl(int target, double theta);
    /// Proper rotation [[cos a, -sin a], [sin a, cos a]].
    static Gate rot(int target, double alpha);
    static Gate cphase(int control, int target, double phi);
    static Gate cnot(int control, int target);
    static Gate toffoli(int c1, int c2, int target);
    static Gate swap(int q1, int q2);

    Gate adjoint() const;
    /// Number of qubits the gate touches (1, 2 or 3).
    int arity() const;
    bool is_perturbed() const { return !shifts.empty(); }
};

/// Applies `g` (including any eigenphase shifts) to `state` in place.
void apply_gate(StateVector& state, const Gate& g);

struct GateCount {
    long one_qubit = 0;
    long controlled_phase = 0;
    long controlled_not = 0;
    long toffoli = 0;
    long swap = 0;

    long total() const { return one_qubit + controlled_phase + controlled_not + toffoli + swap; }
};

} // namespace qwr
