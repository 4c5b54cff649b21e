#include "qwr/multicontrol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qwr {

namespace {

Mat2 mat2_rz(double lambda) {
    return {std::polar(1.0, -lambda / 2), cplx(0), cplx(0), std::polar(1.0, lambda / 2)};
}

Mat2 mat2_ry(double gamma) {
    const double c = std::cos(gamma / 2), s = std::sin(gamma / 2);
    return {cplx(c), cplx(-s), cplx(s), cplx(c)};
}

bool is_identity(const Mat2& u) {
    return std::abs(u[0] - cplx(1)) < 1e-15 && std::abs(u[1]) < 1e-15 &&
           std::abs(u[2]) < 1e-15 && std::abs(u[3] - cplx(1)) < 1e-15;
}

std::vector<int> borrow_pool(int width, const std::vector<int>& controls, int target) {
    std::vector<int> pool;
    for (int q = 0; q < width; ++q) {
        if (q == target) continue;
        if (std::find(controls.begin(), controls.end(), q) != controls.end()) continue;
        pool.push_back(q);
    }
    return pool;
}

// Barenco-style Toffoli staircase over m-2 borrowed qubits, 4(m-2) Toffolis.
// Borrows may hold arbitrary states; they are restored exactly.
void emit_staircase(Circuit& out, const std::vector<int>& c, const std::vector<int>& w,
                    int target) {
    const int m = int(c.size());
    auto half = [&] {
        out.add(Gate::toffoli(c[m - 1], w[m - 3], target));
        for (int j = m - 3; j >= 1; --j) out.add(Gate::toffoli(c[j + 1], w[j - 1], w[j]));
        out.add(Gate::toffoli(c[0], c[1], w[0]));
        for (int j = 1; j <= m - 3; ++j) out.add(Gate::toffoli(c[j + 1], w[j - 1], w[j]));
    };
    half();
    half();
}

} // namespace

void emit_mcx(Circuit& out, const std::vector<int>& controls, int target) {
    const int m = int(controls.size());
    if (m == 0) {
        out.add(Gate::x(target));
        return;
    }
    if (m == 1) {
        out.add(Gate::cnot(controls[0], target));
        return;
    }
    if (m == 2) {
        out.add(Gate::toffoli(controls[0], controls[1], target));
        return;
    }
    const std::vector<int> pool = borrow_pool(out.width(), controls, target);
    if (int(pool.size()) >= m - 2) {
        emit_staircase(out, controls, {pool.begin(), pool.begin() + (m - 2)}, target);
        return;
    }
    if (pool.empty())
        throw std::invalid_argument("emit_mcx: no borrowable qubit (width too small)");
    // Split through one borrowed qubit f: two halves, each emitted twice, so
    // f is restored whatever its initial state.
    const int f = pool[0];
    const int k = (m + 1) / 2;
    std::vector<int> g1(controls.begin(), controls.begin() + k);
    std::vector<int> g2(controls.begin() + k, controls.end());
    g2.push_back(f);
    emit_mcx(out, g2, target);
    emit_mcx(out, g1, f);
    emit_mcx(out, g2, target);
    emit_mcx(out, g1, f);
}

namespace {

// Controlled form of an arbitrary one-qubit unitary. Named special cases keep
// the common gates short; the general path is the ZY euler-angle network.
void emit_controlled_one_qubit(Circuit& out, int control, int target, const Mat2& u) {
    if (is_identity(u)) return;
    // X
    if (std::abs(u[0]) < 1e-15 && std::abs(u[3]) < 1e-15 && std::abs(u[1] - cplx(1)) < 1e-15 &&
        std::abs(u[2] - cplx(1)) < 1e-15) {
        out.add(Gate::cnot(control, target));
        return;
    }
    // diagonal: diag(e^{ia}, e^{ib})
    if (std::abs(u[1]) < 1e-15 && std::abs(u[2]) < 1e-15) {
        const double a = std::arg(u[0]);
        const double b = std::arg(u[3]);
        if (std::abs(a) > 1e-15) out.add(Gate::phase(control, a));
        if (std::abs(b - a) > 1e-15) out.add(Gate::cphase(control, target, b - a));
        return;
    }
    const bool real = std::abs(u[0].imag()) < 1e-15 && std::abs(u[1].imag()) < 1e-15 &&
                      std::abs(u[2].imag()) < 1e-15 && std::abs(u[3].imag()) < 1e-15;
    // reflection [[s, c], [c, -s]]: conjugate a CNOT by half-angle rotations
    if (real && std::abs(u[1] - u[2]) < 1e-15 && std::abs(u[0] + u[3]) < 1e-15) {
        const double theta = std::atan2(u[0].real(), u[1].real());
        out.add(Gate::rot(target, theta / 2));
        out.add(Gate::cnot(control, target));
        out.add(Gate::rot(target, -theta / 2));
        return;
    }
    // general: U = e^{ia} Rz(beta) Ry(gamma) Rz(delta), C-U = P(a) A X B X C
    const cplx det = u[0] * u[3] - u[1] * u[2];
    const double alpha = 0.5 * std::arg(det);
    const cplx ph = std::polar(1.0, -alpha);
    const Mat2 v = {u[0] * ph, u[1] * ph, u[2] * ph, u[3] * ph};
    const double gamma = 2.0 * std::atan2(std::abs(v[2]), std::abs(v[0]));
    double beta, delta;
    if (std::abs(v[0]) < 1e-12) {
        // antidiagonal: beta - delta = 2 arg(v10), pick beta + delta = 0
        beta = std::arg(v[2]);
        delta = -std::arg(v[2]);
    } else if (std::abs(v[2]) < 1e-12) {
        beta = std::arg(v[3]);
        delta = std::arg(v[3]);
    } else {
        beta = std::arg(v[3]) + std::arg(v[2]);
        delta = std::arg(v[3]) - std::arg(v[2]);
    }
    const Mat2 a_mat = mat2_mul(mat2_rz(beta), mat2_ry(gamma / 2));
    const Mat2 b_mat = mat2_mul(mat2_ry(-gamma / 2), mat2_rz(-(delta + beta) / 2));
    const Mat2 c_mat = mat2_rz((delta - beta) / 2);
    if (!is_identity(c_mat)) out.add(Gate::one_qubit(target, c_mat));
    out.add(Gate::cnot(control, target));
    if (!is_identity(b_mat)) out.add(Gate::one_qubit(target, b_mat));
    out.add(Gate::cnot(control, target));
    if (!is_identity(a_mat)) out.add(Gate::one_qubit(target, a_mat));
    if (std::abs(alpha) > 1e-15) out.add(Gate::phase(control, alpha));
}

void emit_controlled_gate(Circuit& out, const Gate& g, int control) {
    switch (g.kind) {
        case GateKind::OneQubit:
            emit_controlled_one_qubit(out, control, g.q[0], g.u);
            return;
        case GateKind::ControlledPhase: {
            const double h = g.angle / 2;
            out.add(Gate::cphase(g.q[0], g.q[1], h));
            out.add(Gate::cnot(control, g.q[0]));
            out.add(Gate::cphase(g.q[0], g.q[1], -h));
            out.add(Gate::cnot(control, g.q[0]));
            out.add(Gate::cphase(control, g.q[1], h));
            return;
        }
        case GateKind::ControlledNot:
            out.add(Gate::toffoli(control, g.q[0], g.q[1]));
            return;
        case GateKind::Toffoli:
            emit_mcx(out, {control, g.q[0], g.q[1]}, g.q[2]);
            return;
        case GateKind::Swap:
            out.add(Gate::cnot(g.q[1], g.q[0]));
            out.add(Gate::toffoli(control, g.q[0], g.q[1]));
            out.add(Gate::cnot(g.q[1], g.q[0]));
            return;
    }
}

void check_disjoint(const Gate& g, const std::vector<int>& controls, int ancilla) {
    for (int i = 0; i < g.arity(); ++i) {
        if (g.q[i] == ancilla)
            throw std::invalid_argument("lowering: ancilla collides with gate qubit");
        if (std::find(controls.begin(), controls.end(), g.q[i]) != controls.end())
            throw std::invalid_argument("lowering: control collides with gate qubit");
    }
    if (std::find(controls.begin(), controls.end(), ancilla) != controls.end())
        throw std::invalid_argument("lowering: ancilla collides with controls");
}

} // namespace

void emit_controlled(Circuit& out, const Gate& g, const std::vector<int>& controls,
                     int ancilla) {
    check_disjoint(g, controls, ancilla);
    if (controls.empty()) {
        out.add(g);
        return;
    }
    if (controls.size() == 1) {
        emit_controlled_gate(out, g, controls[0]);
        return;
    }
    emit_mcx(out, controls, ancilla);
    emit_controlled_gate(out, g, ancilla);
    emit_mcx(out, controls, ancilla);
}

Circuit lower_multicontrolled(const Gate& g, const std::vector<int>& controls, int ancilla,
                              int width) {
    Circuit out(width);
    emit_controlled(out, g, controls, ancilla);
    return out;
}

ZeroControlBlock::ZeroControlBlock(Circuit& out, std::vector<int> zero_controls, int ancilla)
    : out_(out), zeros_(std::move(zero_controls)), ancilla_(ancilla) {
    for (int z : zeros_)
        if (z == ancilla_) throw std::invalid_argument("ZeroControlBlock: ancilla in controls");
    control_ = zeros_.empty() ? -1 : zeros_[0];
}

ZeroControlBlock::~ZeroControlBlock() = default;

// Every multi-controlled elementary gate is lowered on its own: the zero
// controls are conjugated by X around the gate, and two or more controls go
// through the ancilla, which is recomputed and uncomputed per gate.
void ZeroControlBlock::gate(const Gate& g) {
    if (zeros_.empty()) {
        out_.add(g);
        return;
    }
    for (int z : zeros_) out_.add(Gate::x(z));
    emit_controlled(out_, g, zeros_, ancilla_);
    for (auto it = zeros_.rbegin(); it != zeros_.rend(); ++it) out_.add(Gate::x(*it));
}

void ZeroControlBlock::mcx_zero(int target, const std::vector<int>& extra_zero_controls) {
    std::vector<int> all(zeros_);
    all.insert(all.end(), extra_zero_controls.begin(), extra_zero_controls.end());
    for (int z : all) out_.add(Gate::x(z));
    emit_mcx(out_, all, target); // the ancilla serves as a borrow when needed
    for (auto it = all.rbegin(); it != all.rend(); ++it) out_.add(Gate::x(*it));
}

void ZeroControlBlock::swap(int q1, int q2) {
    gate(Gate::cnot(q1, q2));
    gate(Gate::cnot(q2, q1));
    gate(Gate::cnot(q1, q2));
}

} // namespace qwr
