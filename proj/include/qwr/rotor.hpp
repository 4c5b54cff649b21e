#pragma once

#include "qwr/circuit.hpp"
#include "qwr/dense_matrix.hpp"
#include "qwr/noise.hpp"
#include "qwr/qwt.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qwr {

/// Parameters of the kicked wavelet rotor map
///   U = W^dag exp(-i k (x - pi)^2 / 2) W exp(-i T n^2 / 2)
/// on N = 2^{n_q} states.
struct MapParams {
    int n_q;
    double T = 1.4;
    double k = 1.0;
    WaveletAngles angles{};

    std::uint64_t dim() const { return std::uint64_t(1) << n_q; }
};

/// Array-index conventions: momentum n = index - N/2 in [-N/2, N/2) in the
/// computational basis, position x = 2 pi j / N for wavelet-basis index j.
struct IndexMap {
    std::uint64_t N;

    long long momentum_of(std::uint64_t index) const {
        return (long long)index - (long long)(N / 2);
    }
    std::uint64_t index_of_momentum(long long n) const {
        return std::uint64_t(n + (long long)(N / 2));
    }
    double position_of(std::uint64_t j) const { return 2.0 * M_PI * double(j) / double(N); }
};

/// The register layout used throughout: one ancilla at register qubit 0 (the
/// most significant bit), system qubits a_0..a_{n_q-1} at register 1..n_q.
/// With the ancilla in |0> the system amplitudes are the first N entries.
inline constexpr int kAncilla = 0;
inline int register_width(const MapParams& p) { return p.n_q + 1; }

/// Diagonal circuit for exp(-i T n^2 / 2) up to a global phase, built from
/// n_q one-qubit phase gates and n_q(n_q-1)/2 controlled-phase gates.
Circuit build_ut_circuit(const MapParams& p);
/// Same construction for exp(-i k (x - pi)^2 / 2).
Circuit build_uk_circuit(const MapParams& p);

/// Full map circuit: U_T, W, U_k, W^dag on n_q + 1 qubits.
Circuit build_map_circuit(const MapParams& p);

/// Fast classical oracle for one ideal map iteration on an N-dim system
/// vector: diagonal, pyramidal transform, diagonal, inverse transform.
class MapOracle {
public:
    explicit MapOracle(const MapParams& p);

    const MapParams& params() const { return params_; }
    void apply(std::vector<cplx>& psi) const;
    void apply(StateVector& system_state) const;

private:
    MapParams params_;
    std::vector<cplx> ut_, uk_;
};

/// One ideal map iteration on an N-dim vector (convenience wrapper around a
/// freshly built MapOracle; hold a MapOracle to iterate).
void exact_map_apply(std::vector<cplx>& psi, const MapParams& p);

/// The map as an N x N unitary (column j = map applied to |j>).
DenseMatrix exact_map_matrix(const MapParams& p);

/// Per-iteration observables of an evolution run. Times are iteration counts
/// (fractional when sub-iteration checkpoints were requested).
struct EvolutionRecord {
    std::vector<double> times;
    std::vector<double> fidelity;
    std::vector<double> ipr;
    std::vector<std::pair<double, std::vector<double>>> snapshots;
    long gates_per_iteration = 0;
    double final_ancilla_one_population = 0.0;
};

struct EvolveOptions {
    int steps = 1;
    bool record_fidelity = true;
    bool record_ipr = true;
    std::vector<int> snapshot_times;
    /// > 1 records fidelity every n_g / checkpoints_per_step gates against a
    /// gate-level ideal reference (used for sub-iteration timescales).
    int checkpoints_per_step = 1;
    /// Ideal runs use the classical oracle unless forced to the gate level.
    bool force_gate_level = false;
    std::uint64_t seed = 0;
    /// Stop early once fidelity falls below this floor (0 = never).
    double fidelity_floor = 0.0;
};

/// Iterates the map on `initial` (an N-dim system state, normalized) under
/// the given noise model. Fidelity is measured against the ideal trajectory
/// of the same initial state.
EvolutionRecord evolve(const StateVector& initial, const MapParams& p, const NoiseModel& noise,
                       const EvolveOptions& opt);

/// Probability concentrated at momentum n = 0 (array index N/2).
StateVector initial_momentum_zero(const MapParams& p);

/// Previously reported elementary-gate totals for this transform circuit,
/// keyed by n_q; printed next to our own counts for comparison.
const std::vector<std::pair<int, long>>& published_gate_counts();

} // namespace qwr
