#include "qwr/gate.hpp"

#include <cmath>
#include <stdexcept>

namespace qwr {

Gate Gate::one_qubit(int target, const Mat2& u, std::string label) {
    Gate g;
    g.kind = GateKind::OneQubit;
    g.q = {target, -1, -1};
    g.u = u;
    g.label = std::move(label);
    return g;
}

Gate Gate::x(int target) {
    return one_qubit(target, {cplx(0), cplx(1), cplx(1), cplx(0)}, "X");
}

Gate Gate::phase(int target, double phi) {
    Gate g = one_qubit(target, {cplx(1), cplx(0), cplx(0), std::polar(1.0, phi)}, "PHASE");
    g.angle = phi;
    return g;
}

Gate Gate::refl(int target, double theta) {
    const double s = std::sin(theta), c = std::cos(theta);
    Gate g = one_qubit(target, {cplx(s), cplx(c), cplx(c), cplx(-s)}, "REFL");
    g.angle = theta;
    return g;
}

Gate Gate::rot(int target, double alpha) {
    const double s = std::sin(alpha), c = std::cos(alpha);
    Gate g = one_qubit(target, {cplx(c), cplx(-s), cplx(s), cplx(c)}, "ROT");
    g.angle = alpha;
    return g;
}

Gate Gate::cphase(int control, int target, double phi) {
    Gate g;
    g.kind = GateKind::ControlledPhase;
    g.q = {control, target, -1};
    g.angle = phi;
    g.label = "CPHASE";
    return g;
}

Gate Gate::cnot(int control, int target) {
    Gate g;
    g.kind = GateKind::ControlledNot;
    g.q = {control, target, -1};
    g.label = "CNOT";
    return g;
}

Gate Gate::toffoli(int c1, int c2, int target) {
    Gate g;
    g.kind = GateKind::Toffoli;
    g.q = {c1, c2, target};
    g.label = "TOFFOLI";
    return g;
}

Gate Gate::swap(int q1, int q2) {
    Gate g;
    g.kind = GateKind::Swap;
    g.q = {q1, q2, -1};
    g.label = "SWAP";
    return g;
}

int Gate::arity() const {
    switch (kind) {
        case GateKind::OneQubit: return 1;
        case GateKind::Toffoli: return 3;
        default: return 2;
    }
}

Gate Gate::adjoint() const {
    Gate g = *this;
    switch (kind) {
        case GateKind::OneQubit:
            g.u = mat2_adjoint(u);
            if (label == "PHASE" || label == "ROT") g.angle = -angle;
            break;
        case GateKind::ControlledPhase:
            g.angle = -angle;
            break;
        case GateKind::ControlledNot:
        case GateKind::Toffoli:
        case GateKind::Swap:
            break;
    }
    // The fixed pi in the flip eigenspace conjugates to itself mod 2pi,
    // so negating the shifts alone yields the exact inverse.
    for (double& s : g.shifts) s = -s;
    return g;
}

namespace {

inline std::uint64_t insert_zero_bit(std::uint64_t x, std::uint64_t mask) {
    return ((x & ~(mask - 1)) << 1) | (x & (mask - 1));
}

// (a, b) -> mixing matrix of e^{i s_plus} P_+ + e^{i(pi + s_minus)} P_- in the
// flip pair basis: [[ (a+b)/2, (a-b)/2 ], [ (a-b)/2, (a+b)/2 ]].
struct FlipMix {
    cplx d, o;
    FlipMix(double s_plus, double s_minus) {
        const cplx a = std::polar(1.0, s_plus);
        const cplx b = -std::polar(1.0, s_minus);
        d = 0.5 * (a + b);
        o = 0.5 * (a - b);
    }
    inline void apply(cplx& x, cplx& y) const {
        const cplx t0 = x, t1 = y;
        x = d * t0 + o * t1;
        y = o * t0 + d * t1;
    }
};

void apply_shifted_cnot(StateVector& s, const Gate& g) {
    const std::uint64_t cm = s.qubit_mask(g.q[0]);
    const std::uint64_t tm = s.qubit_mask(g.q[1]);
    const FlipMix mix(0.0, g.shifts[0]);
    const std::uint64_t lo = std::min(cm, tm), hi = std::max(cm, tm);
    const std::uint64_t quarter = s.size() >> 2;
    for (std::uint64_t i = 0; i < quarter; ++i) {
        const std::uint64_t base = insert_zero_bit(insert_zero_bit(i, lo), hi);
        mix.apply(s[base | cm], s[base | cm | tm]);
    }
}

void apply_shifted_toffoli(StateVector& s, const Gate& g) {
    const std::uint64_t m1 = s.qubit_mask(g.q[0]);
    const std::uint64_t m2 = s.qubit_mask(g.q[1]);
    const std::uint64_t tm = s.qubit_mask(g.q[2]);
    const FlipMix mix(0.0, g.shifts[0]);
    std::uint64_t srt[3] = {m1, m2, tm};
    if (srt[0] > srt[1]) std::swap(srt[0], srt[1]);
    if (srt[1] > srt[2]) std::swap(srt[1], srt[2]);
    if (srt[0] > srt[1]) std::swap(srt[0], srt[1]);
    const std::uint64_t eighth = s.size() >> 3;
    for (std::uint64_t i = 0; i < eighth; ++i) {
        const std::uint64_t base =
            insert_zero_bit(insert_zero_bit(insert_zero_bit(i, srt[0]), srt[1]), srt[2]);
        mix.apply(s[base | m1 | m2], s[base | m1 | m2 | tm]);
    }
}

void apply_shifted_swap(StateVector& s, const Gate& g) {
    std::uint64_t m1 = s.qubit_mask(g.q[0]);
    std::uint64_t m2 = s.qubit_mask(g.q[1]);
    if (m1 > m2) std::swap(m1, m2);
    const FlipMix mix(0.0, g.shifts[0]);
    const std::uint64_t quarter = s.size() >> 2;
    for (std::uint64_t i = 0; i < quarter; ++i) {
        const std::uint64_t base = insert_zero_bit(insert_zero_bit(i, m1), m2);
        mix.apply(s[base | m1], s[base | m2]);
    }
}

} // namespace

void apply_gate(StateVector& state, const Gate& g) {
    if (!g.is_perturbed()) {
        switch (g.kind) {
            case GateKind::OneQubit:
                // Diagonal fast path covers the phase gates of the rotor maps.
                if (g.u[1] == cplx(0) && g.u[2] == cplx(0) && g.u[0] == cplx(1))
                    state.apply_phase(g.q[0], std::arg(g.u[3]));
                else
                    state.apply_single_qubit(g.q[0], g.u);
                return;
            case GateKind::ControlledPhase:
                state.apply_controlled_phase(g.q[0], g.q[1], g.angle);
                return;
            case GateKind::ControlledNot:
                state.apply_controlled_not(g.q[0], g.q[1]);
                return;
            case GateKind::Toffoli:
                state.apply_toffoli(g.q[0], g.q[1], g.q[2]);
                return;
            case GateKind::Swap:
                state.apply_swap(g.q[0], g.q[1]);
                return;
        }
    }
    if (g.shifts.size() != 1)
        throw std::invalid_argument("apply_gate: bad shift count");
    switch (g.kind) {
        case GateKind::ControlledNot: apply_shifted_cnot(state, g); return;
        case GateKind::Toffoli: apply_shifted_toffoli(state, g); return;
        case GateKind::Swap: apply_shifted_swap(state, g); return;
        default:
            // perturbed OneQubit / ControlledPhase gates fold the jitter
            // into their matrix / angle and never carry shifts
            throw std::invalid_argument("apply_gate: unexpected shifted gate kind");
    }
}

} // namespace qwr
