#pragma once

#include "qwr/dense_matrix.hpp"
#include "qwr/gate.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace qwr {

/// Ordered gate sequence on a register of `width` qubits (system + ancilla).
/// Immutable by convention once built; gates are validated on add.
class Circuit {
public:
    explicit Circuit(int width);

    int width() const { return width_; }
    const std::vector<Gate>& gates() const { return gates_; }
    std::size_t size() const { return gates_.size(); }

    void add(Gate g);
    void append(const Circuit& other);

    Circuit adjoint() const;

    void apply(StateVector& state) const;

    GateCount count_gates() const;

private:
    std::vector<Gate> gates_;
    int width_;
};

/// Column j is the circuit applied to |j>. Guarded at width <= 14.
DenseMatrix circuit_to_matrix(const Circuit& c);

/// Text format: `width=<w>` header, then one gate per line,
/// `KIND q_indices... [angle]` with angles at 17 significant digits.
void write_circuit(std::ostream& os, const Circuit& c);
Circuit read_circuit(std::istream& is);

std::string circuit_to_text(const Circuit& c);
Circuit circuit_from_text(const std::string& text);

} // namespace qwr
