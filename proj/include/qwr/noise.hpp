#pragma once

#include "qwr/circuit.hpp"
#include "qwr/rng.hpp"
#include "qwr/state_vector.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qwr {

/// Imperfection model applied during evolution.
///  - Ideal: exact gates.
///  - NoisyGates: every gate eigenphase jittered by a fresh uniform angle in
///    [-eps/2, eps/2] at each application.
///  - Static: exact gates, but a fixed random phase operator
///    exp(i sum_l eta_l sz_l) exp(i sum_l mu_l sx_l sx_{l+1}) acts after every
///    elementary gate (circular qubit chain, ancilla included).
///  - PseudoStatic: one seeded eigenphase jitter of the whole circuit, reused
///    identically on every map iteration.
struct NoiseModel {
    enum class Kind { Ideal, NoisyGates, Static, PseudoStatic };

    Kind kind = Kind::Ideal;
    double epsilon = 0.0;
    double mu = 0.0;
    std::uint64_t seed = 0;

    static NoiseModel ideal() { return {}; }
    static NoiseModel noisy_gates(double eps);
    static NoiseModel static_imperfections(double eps, double mu, std::uint64_t disorder_seed);
    static NoiseModel pseudo_static(double eps, std::uint64_t sequence_seed);

    void validate() const;
    std::string name() const;
};

/// Fixed per-qubit detunings and per-link couplings of the static model.
struct StaticDisorder {
    std::vector<double> eta;     // one per qubit, |eta_l| <= eps/2
    std::vector<double> mu_link; // one per circular link (l, l+1), |mu_l| <= mu/2
};

/// Deterministic function of the seed; index l = 0..num_qubits-1.
StaticDisorder sample_static_disorder(int num_qubits, double eps, double mu,
                                      std::uint64_t seed);

/// exp(i sum eta_l sz_l) then exp(i mu_l sx_l sx_{l+1}) for each link in
/// ascending l, all exact 2^w-diagonal / two-qubit rotations.
void apply_static_kick(StateVector& state, const StaticDisorder& d);

/// Precomputed tables for applying the same kick after every gate.
class StaticKick {
public:
    StaticKick(int num_qubits, const StaticDisorder& d);
    void apply(StateVector& state) const;
    const StaticDisorder& disorder() const { return disorder_; }

private:
    StaticDisorder disorder_;
    std::vector<cplx> z_table_;
    std::vector<std::pair<double, double>> link_cs_; // (cos mu_l, sin mu_l)
    int num_qubits_;
    bool any_link_ = false;
};

/// Returns g with the phase of each active eigenspace (eigenvalue != 1)
/// shifted by an independent uniform draw in [-eps/2, eps/2]; exactly
/// unitary. A controlled phase keeps its form with the angle jittered,
/// flip gates carry the shift of their odd-parity eigenphase, one-qubit
/// gates fold the perturbation into their matrix. eps == 0 returns g
/// unchanged without consuming draws.
Gate perturb_gate(const Gate& g, double eps, RngStream& rng);

/// Per-run dispatch of the inter-gate noise action: Ideal and NoisyGates do
/// nothing here (the noisy jitter is applied at gate level), Static applies
/// the fixed disorder kick after every elementary gate, PseudoStatic does
/// nothing (its perturbed circuit is frozen up front).
class NoiseSession {
public:
    NoiseSession(const NoiseModel& model, int register_width);
    void after_gate(StateVector& state, std::size_t gate_index, int time_step) const;
    bool has_kick() const { return kick_.has_value(); }

private:
    std::optional<StaticKick> kick_;
};

/// The pseudo-static model's fixed perturbed circuit: every gate jittered
/// once, seeded, then reused for every map iteration.
Circuit pseudo_static_sequence(const Circuit& circuit, double eps, std::uint64_t seed);

} // namespace qwr
