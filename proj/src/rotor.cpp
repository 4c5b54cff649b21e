#include "qwr/rotor.hpp"

#include "qwr/multicontrol.hpp"

#include <cmath>
#include <stdexcept>

namespace qwr {

namespace {

constexpr long double kTwoPiL = 6.283185307179586476925286766559L;

// Quadratic phases grow like N^2; reduce mod 2 pi in extended precision so
// circuit and oracle agree elementwise well below 1e-12.
double reduced_phase(long double x) { return double(std::remainderl(x, kTwoPiL)); }

// Diagonal circuit for phase(m) = -coeff/2 * (m - N/2)^2 on the system
// index m = sum_p a_p 2^{n_q-1-p}. Expanding drops the constant N^2/4 term
// (a global phase): single-qubit terms -coeff/2 (w_p^2 - N w_p) and pair
// terms -coeff w_p w_q.
Circuit build_quadratic_phase(const MapParams& p, double coeff) {
    const int w = register_width(p);
    Circuit c(w);
    const long double n_states = (long double)p.dim();
    for (int i = 0; i < p.n_q; ++i) {
        const long double wi = std::exp2l(p.n_q - 1 - i);
        const double phi = reduced_phase(-0.5L * coeff * (wi * wi - n_states * wi));
        c.add(Gate::phase(i + 1, phi));
    }
    for (int i = 0; i < p.n_q; ++i) {
        const long double wi = std::exp2l(p.n_q - 1 - i);
        for (int j = i + 1; j < p.n_q; ++j) {
            const long double wj = std::exp2l(p.n_q - 1 - j);
            const double phi = reduced_phase(-(long double)coeff * wi * wj);
            c.add(Gate::cphase(i + 1, j + 1, phi));
        }
    }
    return c;
}

double uk_coefficient(const MapParams& p) {
    const double step = 2.0 * M_PI / double(p.dim());
    return p.k * step * step;
}

} // namespace

Circuit build_ut_circuit(const MapParams& p) {
    if (p.n_q < 1) throw std::invalid_argument("build_ut_circuit: n_q < 1");
    return build_quadratic_phase(p, p.T);
}

Circuit build_uk_circuit(const MapParams& p) {
    if (p.n_q < 1) throw std::invalid_argument("build_uk_circuit: n_q < 1");
    return build_quadratic_phase(p, uk_coefficient(p));
}

Circuit build_map_circuit(const MapParams& p) {
    if (p.n_q < 2) throw std::invalid_argument("build_map_circuit: n_q < 2");
    const int w = register_width(p);
    Circuit c(w);
    c.append(build_ut_circuit(p));
    const Circuit qwt = build_qwt(p.n_q, w, kAncilla, p.angles);
    c.append(qwt);
    c.append(build_uk_circuit(p));
    c.append(qwt.adjoint());
    return c;
}

MapOracle::MapOracle(const MapParams& p) : params_(p) {
    if (p.n_q < 2) throw std::invalid_argument("MapOracle: n_q < 2");
    const std::uint64_t n = p.dim();
    ut_.resize(n);
    uk_.resize(n);
    const double ck = uk_coefficient(p);
    for (std::uint64_t m = 0; m < n; ++m) {
        const long double d = (long double)m - (long double)(n / 2);
        ut_[m] = std::polar(1.0, reduced_phase(-0.5L * params_.T * d * d));
        uk_[m] = std::polar(1.0, reduced_phase(-0.5L * ck * d * d));
    }
}

void MapOracle::apply(std::vector<cplx>& psi) const {
    const std::uint64_t n = params_.dim();
    if (psi.size() != n) throw std::invalid_argument("MapOracle::apply: dimension mismatch");
    for (std::uint64_t m = 0; m < n; ++m) psi[m] *= ut_[m];
    classical_dwt_d4(psi, params_.angles);
    for (std::uint64_t j = 0; j < n; ++j) psi[j] *= uk_[j];
    classical_idwt_d4(psi, params_.angles);
}

void MapOracle::apply(StateVector& s) const {
    if (s.num_qubits() != params_.n_q)
        throw std::invalid_argument("MapOracle::apply: state width mismatch");
    std::vector<cplx> psi(s.amplitudes().begin(), s.amplitudes().end());
    apply(psi);
    std::copy(psi.begin(), psi.end(), s.amplitudes().begin());
}

void exact_map_apply(std::vector<cplx>& psi, const MapParams& p) {
    MapOracle(p).apply(psi);
}

DenseMatrix exact_map_matrix(const MapParams& p) {
    const MapOracle oracle(p);
    const std::uint64_t n = p.dim();
    DenseMatrix m(n);
    std::vector<cplx> col(n);
    for (std::uint64_t j = 0; j < n; ++j) {
        std::fill(col.begin(), col.end(), cplx(0));
        col[j] = cplx(1);
        oracle.apply(col);
        for (std::uint64_t i = 0; i < n; ++i) m(i, j) = col[i];
    }
    return m;
}

StateVector initial_momentum_zero(const MapParams& p) {
    return StateVector::basis_state(p.n_q, p.dim() / 2);
}

const std::vector<std::pair<int, long>>& published_gate_counts() {
    static const std::vector<std::pair<int, long>> counts = {
        {6, 1509}, {7, 2974}, {8, 5237}, {9, 8470}, {10, 12821}, {11, 18462}, {12, 25541}};
    return counts;
}

namespace {

struct BlockObservables {
    double mass;
    double ipr;
};

// IPR over the first N entries (the ancilla-|0> block), renormalized by the
// block mass so leakage onto the ancilla does not bias the count.
BlockObservables block_observables(const StateVector& s, std::uint64_t n) {
    double mass = 0.0, sum4 = 0.0;
    for (std::uint64_t m = 0; m < n; ++m) {
        const double p = std::norm(s[m]);
        mass += p;
        sum4 += p * p;
    }
    return {mass, mass * mass / std::max(sum4, 1e-300)};
}

std::vector<double> block_probabilities(const StateVector& s, std::uint64_t n) {
    double mass = 0.0;
    std::vector<double> prob(n);
    for (std::uint64_t m = 0; m < n; ++m) {
        prob[m] = std::norm(s[m]);
        mass += prob[m];
    }
    if (mass > 0)
        for (double& x : prob) x /= mass;
    return prob;
}

EvolutionRecord evolve_oracle(const StateVector& initial, const MapParams& p,
                              const EvolveOptions& opt) {
    const std::uint64_t n = p.dim();
    const MapOracle oracle(p);
    std::vector<cplx> psi(initial.amplitudes().begin(), initial.amplitudes().end());
    EvolutionRecord rec;
    rec.gates_per_iteration = build_map_circuit(p).count_gates().total();
    auto snap_it = opt.snapshot_times.begin();
    for (int t = 1; t <= opt.steps; ++t) {
        oracle.apply(psi);
        rec.times.push_back(t);
        if (opt.record_fidelity) rec.fidelity.push_back(1.0);
        if (opt.record_ipr) {
            double sum4 = 0.0;
            for (std::uint64_t m = 0; m < n; ++m) sum4 += std::norm(psi[m]) * std::norm(psi[m]);
            rec.ipr.push_back(1.0 / std::max(sum4, 1e-300));
        }
        while (snap_it != opt.snapshot_times.end() && *snap_it == t) {
            std::vector<double> prob(n);
            for (std::uint64_t m = 0; m < n; ++m) prob[m] = std::norm(psi[m]);
            rec.snapshots.emplace_back(t, std::move(prob));
            ++snap_it;
        }
    }
    return rec;
}

} // namespace

EvolutionRecord evolve(const StateVector& initial, const MapParams& p, const NoiseModel& noise,
                       const EvolveOptions& opt) {
    noise.validate();
    if (opt.steps < 1) throw std::invalid_argument("evolve: steps must be >= 1");
    if (initial.num_qubits() != p.n_q)
        throw std::invalid_argument("evolve: initial state width mismatch");
    if (std::abs(initial.norm_sq() - 1.0) > 1e-8)
        throw std::invalid_argument("evolve: initial state not normalized");

    if (noise.kind == NoiseModel::Kind::Ideal && !opt.force_gate_level)
        return evolve_oracle(initial, p, opt);

    const std::uint64_t n = p.dim();
    const int width = register_width(p);
    const Circuit ideal_circuit = build_map_circuit(p);
    const Circuit* run_circuit = &ideal_circuit;
    Circuit pseudo(width);
    if (noise.kind == NoiseModel::Kind::PseudoStatic) {
        pseudo = pseudo_static_sequence(ideal_circuit, noise.epsilon, noise.seed);
        run_circuit = &pseudo;
    }
    const NoiseSession session(noise, width);

    StateVector state(width);
    state[0] = cplx(0);
    for (std::uint64_t m = 0; m < n; ++m) state[m] = initial[m];

    // Ideal reference: the classical oracle at whole iterations, or a
    // gate-level twin when sub-iteration checkpoints are requested.
    const bool gate_level_ref = opt.checkpoints_per_step > 1;
    std::vector<cplx> ref;
    std::optional<StateVector> ref_state;
    if (opt.record_fidelity) {
        if (gate_level_ref) {
            ref_state.emplace(width);
            (*ref_state)[0] = cplx(0);
            for (std::uint64_t m = 0; m < n; ++m) (*ref_state)[m] = initial[m];
        } else {
            ref.assign(initial.amplitudes().begin(), initial.amplitudes().end());
        }
    }
    const MapOracle oracle(p);

    EvolutionRecord rec;
    const long n_g = long(run_circuit->size());
    rec.gates_per_iteration = n_g;
    const bool noisy = noise.kind == NoiseModel::Kind::NoisyGates;
    Gate scratch;
    auto snap_it = opt.snapshot_times.begin();

    bool stop = false;
    for (int t = 1; t <= opt.steps && !stop; ++t) {
        long done = 0;
        for (std::size_t i = 0; i < run_circuit->gates().size(); ++i) {
            const Gate& g = run_circuit->gates()[i];
            if (noisy) {
                RngStream rng = RngStream::keyed(noise.seed, std::uint64_t(t), i);
                scratch = perturb_gate(g, noise.epsilon, rng);
                apply_gate(state, scratch);
            } else {
                apply_gate(state, g);
            }
            session.after_gate(state, i, t);
            ++done;
            if (gate_level_ref) {
                apply_gate(*ref_state, ideal_circuit.gates()[i]);
                const long next_mark = (done * opt.checkpoints_per_step) / n_g;
                const long prev_mark = ((done - 1) * opt.checkpoints_per_step) / n_g;
                if (next_mark > prev_mark) {
                    const double time = (t - 1) + double(done) / double(n_g);
                    const double f = std::norm(inner_product(*ref_state, state));
                    rec.times.push_back(time);
                    rec.fidelity.push_back(f);
                    if (opt.record_ipr) rec.ipr.push_back(block_observables(state, n).ipr);
                    if (opt.fidelity_floor > 0 && f < opt.fidelity_floor) {
                        stop = true;
                        break;
                    }
                }
            }
        }
        if (!gate_level_ref) {
            rec.times.push_back(t);
            double f = 1.0;
            if (opt.record_fidelity) {
                oracle.apply(ref);
                cplx overlap(0);
                for (std::uint64_t m = 0; m < n; ++m) overlap += std::conj(ref[m]) * state[m];
                f = std::norm(overlap);
                rec.fidelity.push_back(f);
            }
            if (opt.record_ipr) rec.ipr.push_back(block_observables(state, n).ipr);
            while (snap_it != opt.snapshot_times.end() && *snap_it == t) {
                rec.snapshots.emplace_back(t, block_probabilities(state, n));
                ++snap_it;
            }
            if (opt.fidelity_floor > 0 && opt.record_fidelity && f < opt.fidelity_floor)
                stop = true;
        }
    }
    rec.final_ancilla_one_population = 1.0 - block_observables(state, n).mass;
    return rec;
}

} // namespace qwr
