#pragma once

#include "qwr/circuit.hpp"

#include <vector>

namespace qwr {

/// Emits an X on `target` conditioned on all `controls` being 1.
/// m <= 2 controls map to X / CNOT / Toffoli directly; larger fans use
/// Toffoli networks over borrowed qubits (any register qubit outside the
/// gate, in arbitrary state, restored exactly), so the cost is linear in m.
/// Requires width >= m + 2 for m >= 3.
void emit_mcx(Circuit& out, const std::vector<int>& controls, int target);

/// Emits `g` conditioned on all `controls` being 1 (X-basis controls).
/// A single control is compiled directly; two or more accumulate their
/// conjunction onto `ancilla` (assumed |0> on entry, restored on exit).
void emit_controlled(Circuit& out, const Gate& g, const std::vector<int>& controls,
                     int ancilla);

/// Lowers a gate with any number of on-controls through the ancilla.
/// controls == {} returns just g.
Circuit lower_multicontrolled(const Gate& g, const std::vector<int>& controls, int ancilla,
                              int width);

/// Emitter for a block of gates that are all conditioned on the same set of
/// qubits being 0 (the direct-sum-with-identity blocks of the pyramid).
/// Each elementary gate is lowered on its own, X-conjugating the zero
/// controls around it and routing fans of two or more controls through the
/// ancilla, which is restored to |0> gate by gate.
class ZeroControlBlock {
public:
    ZeroControlBlock(Circuit& out, std::vector<int> zero_controls, int ancilla);
    ~ZeroControlBlock();

    ZeroControlBlock(const ZeroControlBlock&) = delete;
    ZeroControlBlock& operator=(const ZeroControlBlock&) = delete;

    void gate(const Gate& g);
    /// X on target conditioned on this block plus `extra_zero_controls` = 0.
    void mcx_zero(int target, const std::vector<int>& extra_zero_controls);
    /// Swap expanded to its three controlled-nots.
    void swap(int q1, int q2);

private:
    Circuit& out_;
    std::vector<int> zeros_;
    int ancilla_;
    int control_;
};

} // namespace qwr
