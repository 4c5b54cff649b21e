#include "qwr/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace qwr {

NoiseModel NoiseModel::noisy_gates(double eps) {
    NoiseModel m;
    m.kind = Kind::NoisyGates;
    m.epsilon = eps;
    m.validate();
    return m;
}

NoiseModel NoiseModel::static_imperfections(double eps, double mu,
                                            std::uint64_t disorder_seed) {
    NoiseModel m;
    m.kind = Kind::Static;
    m.epsilon = eps;
    m.mu = mu;
    m.seed = disorder_seed;
    m.validate();
    return m;
}

NoiseModel NoiseModel::pseudo_static(double eps, std::uint64_t sequence_seed) {
    NoiseModel m;
    m.kind = Kind::PseudoStatic;
    m.epsilon = eps;
    m.seed = sequence_seed;
    m.validate();
    return m;
}

void NoiseModel::validate() const {
    if (epsilon < 0.0) throw std::invalid_argument("NoiseModel: epsilon < 0");
    if (mu < 0.0) throw std::invalid_argument("NoiseModel: mu < 0");
}

std::string NoiseModel::name() const {
    switch (kind) {
        case Kind::Ideal: return "ideal";
        case Kind::NoisyGates: return "noisy";
        case Kind::Static: return "static";
        case Kind::PseudoStatic: return "pseudo-static";
    }
    return "?";
}

StaticDisorder sample_static_disorder(int num_qubits, double eps, double mu,
                                      std::uint64_t seed) {
    StaticDisorder d;
    d.eta.resize(num_qubits);
    d.mu_link.resize(num_qubits);
    RngStream rng = RngStream::keyed(seed, 0x5d1c);
    for (int l = 0; l < num_qubits; ++l) d.eta[l] = eps == 0.0 ? 0.0 : rng.uniform(-eps / 2, eps / 2);
    for (int l = 0; l < num_qubits; ++l)
        d.mu_link[l] = mu == 0.0 ? 0.0 : rng.uniform(-mu / 2, mu / 2);
    return d;
}

StaticKick::StaticKick(int num_qubits, const StaticDisorder& d)
    : disorder_(d), num_qubits_(num_qubits) {
    if (int(d.eta.size()) != num_qubits || int(d.mu_link.size()) != num_qubits)
        throw std::invalid_argument("StaticKick: disorder size mismatch");
    const std::uint64_t dim = std::uint64_t(1) << num_qubits;
    z_table_.resize(dim);
    for (std::uint64_t idx = 0; idx < dim; ++idx) {
        double phi = 0.0;
        for (int l = 0; l < num_qubits; ++l) {
            const std::uint64_t mask = std::uint64_t(1) << (num_qubits - 1 - l);
            // sz |0> = +|0>
            phi += (idx & mask) ? -d.eta[l] : d.eta[l];
        }
        z_table_[idx] = std::polar(1.0, phi);
    }
    link_cs_.resize(num_qubits);
    for (int l = 0; l < num_qubits; ++l) {
        link_cs_[l] = {std::cos(d.mu_link[l]), std::sin(d.mu_link[l])};
        if (d.mu_link[l] != 0.0) any_link_ = true;
    }
}

void StaticKick::apply(StateVector& state) const {
    if (state.num_qubits() != num_qubits_)
        throw std::invalid_argument("StaticKick: state width mismatch");
    state.apply_diagonal(z_table_);
    if (!any_link_) return;
    const std::uint64_t half = state.size() >> 1;
    for (int l = 0; l < num_qubits_; ++l) {
        const auto [c, s] = link_cs_[l];
        if (s == 0.0) continue;
        const cplx is(0.0, s);
        const std::uint64_t ma = state.qubit_mask(l);
        const std::uint64_t mb = state.qubit_mask((l + 1) % num_qubits_);
        const std::uint64_t mask = ma | mb;
        // exp(i mu sx sx) mixes idx with idx^mask; enumerate the half-space
        // with bit a clear so each pair is visited once.
        for (std::uint64_t i = 0; i < half; ++i) {
            const std::uint64_t idx = ((i & ~(ma - 1)) << 1) | (i & (ma - 1));
            const std::uint64_t partner = idx ^ mask;
            const cplx t0 = state[idx];
            const cplx t1 = state[partner];
            state[idx] = c * t0 + is * t1;
            state[partner] = is * t0 + c * t1;
        }
    }
}

void apply_static_kick(StateVector& state, const StaticDisorder& d) {
    StaticKick kick(state.num_qubits(), d);
    kick.apply(state);
}

namespace {

// Spectral decomposition of a 2x2 unitary: u = sum lambda_i v_i v_i^dag.
struct EigenPair2 {
    cplx lambda[2];
    cplx v[2][2]; // v[i] = i-th orthonormal eigenvector
};

EigenPair2 eig2(const Mat2& u) {
    EigenPair2 e;
    if (std::abs(u[1]) < 1e-15 && std::abs(u[2]) < 1e-15) {
        e.lambda[0] = u[0];
        e.lambda[1] = u[3];
        e.v[0][0] = 1, e.v[0][1] = 0;
        e.v[1][0] = 0, e.v[1][1] = 1;
        return e;
    }
    const cplx tr = u[0] + u[3];
    const cplx det = u[0] * u[3] - u[1] * u[2];
    const cplx disc = std::sqrt(tr * tr - 4.0 * det);
    e.lambda[0] = 0.5 * (tr + disc);
    e.lambda[1] = 0.5 * (tr - disc);
    for (int i = 0; i < 2; ++i) {
        cplx a, b;
        if (std::abs(u[1]) >= std::abs(u[2])) {
            a = u[1];
            b = e.lambda[i] - u[0];
        } else {
            a = e.lambda[i] - u[3];
            b = u[2];
        }
        const double nrm = std::sqrt(std::norm(a) + std::norm(b));
        e.v[i][0] = a / nrm;
        e.v[i][1] = b / nrm;
    }
    return e;
}

Mat2 rebuild_with_shifts(const EigenPair2& e, double s0, double s1) {
    const cplx l0 = e.lambda[0] * std::polar(1.0, s0);
    const cplx l1 = e.lambda[1] * std::polar(1.0, s1);
    Mat2 out{};
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            out[r * 2 + c] =
                l0 * e.v[0][r] * std::conj(e.v[0][c]) + l1 * e.v[1][r] * std::conj(e.v[1][c]);
    return out;
}

// Eigenvalues equal to 1 belong to the part of the gate that does nothing;
// the jitter rotates only the active part, so those stay exact.
bool is_active_eigenvalue(const cplx& lambda) { return std::abs(lambda - cplx(1)) > 1e-12; }

} // namespace

Gate perturb_gate(const Gate& g, double eps, RngStream& rng) {
    if (eps < 0.0) throw std::invalid_argument("perturb_gate: eps < 0");
    if (eps == 0.0) return g;
    Gate out = g;
    switch (g.kind) {
        case GateKind::OneQubit: {
            const EigenPair2 e = eig2(g.u);
            const double s0 =
                is_active_eigenvalue(e.lambda[0]) ? rng.uniform(-eps / 2, eps / 2) : 0.0;
            const double s1 =
                is_active_eigenvalue(e.lambda[1]) ? rng.uniform(-eps / 2, eps / 2) : 0.0;
            if (s0 != 0.0 || s1 != 0.0) out.u = rebuild_with_shifts(e, s0, s1);
            return out;
        }
        case GateKind::ControlledPhase:
            out.angle = g.angle + rng.uniform(-eps / 2, eps / 2);
            return out;
        case GateKind::ControlledNot:
        case GateKind::Toffoli:
        case GateKind::Swap:
            // one shift on the odd-parity (eigenphase pi) space
            out.shifts.assign(1, rng.uniform(-eps / 2, eps / 2));
            return out;
    }
    return out;
}

NoiseSession::NoiseSession(const NoiseModel& model, int register_width) {
    model.validate();
    if (model.kind == NoiseModel::Kind::Static)
        kick_.emplace(register_width, sample_static_disorder(register_width, model.epsilon,
                                                             model.mu, model.seed));
}

void NoiseSession::after_gate(StateVector& state, std::size_t gate_index,
                              int time_step) const {
    (void)gate_index;
    (void)time_step;
    if (kick_) kick_->apply(state);
}

Circuit pseudo_static_sequence(const Circuit& circuit, double eps, std::uint64_t seed) {
    if (eps == 0.0) return circuit;
    Circuit out(circuit.width());
    RngStream rng = RngStream::keyed(seed, 0x9a5e);
    for (const Gate& g : circuit.gates()) out.add(perturb_gate(g, eps, rng));
    return out;
}

} // namespace qwr
