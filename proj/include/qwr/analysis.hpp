#pragma once

#include "qwr/dense_matrix.hpp"
#include "qwr/rotor.hpp"
#include "qwr/state_vector.hpp"

#include <optional>
#include <span>
#include <vector>

namespace qwr {

/// |<a|b>|^2 for equal-width normalized states.
double fidelity(const StateVector& a, const StateVector& b);

/// First downward crossing of `threshold`, linearly interpolated between
/// neighbouring samples; +infinity when never crossed within the horizon.
/// The series must start at or above the threshold.
double find_tf(std::span<const double> times, std::span<const double> f,
               double threshold = 0.9);
/// Same, on an implicit integer time grid t = 0, 1, 2, ...
double find_tf(std::span<const double> f, double threshold = 0.9);

/// Inverse participation ratio 1 / sum |psi_n|^4 of a normalized vector.
double ipr(std::span<const cplx> amplitudes);
double ipr(const StateVector& state);

/// Non-overlapping block means of width `window` (a trailing partial block
/// is averaged over its actual length).
std::vector<double> window_average(std::span<const double> series, int window = 50);

/// Ordinary least squares y = slope x + intercept with the standard error of
/// the slope estimated from the residuals.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double residual_rms = 0.0;
    std::size_t points = 0;
};
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

/// Same fit, but the slope standard error uses a Bartlett-kernel
/// autocorrelation correction with the given lag bandwidth, for series with
/// slow oscillations (window-averaged IPR traces).
LinearFit linear_fit_hac(std::span<const double> x, std::span<const double> y, int bandwidth);

/// The map as an N x N unitary in the momentum index convention.
/// Guarded at N <= 2^13.
DenseMatrix build_full_unitary(const MapParams& p);

struct PowerLawFit {
    double exponent = 0.0;  // alpha in <|U|^2> ~ 1/d^alpha
    double log10_residual_rms = 0.0;
    std::size_t points = 0;
    bool valid = false;
};

/// <|U_{n,n'}|^2> averaged along the diagonal versus d = |n - n'|, with
/// log-log power fits on the asymptotic window d in [max(10, 10k), N/4] and,
/// when 5k >= 10, the intermediate window d in [2, max(4, k)].
struct MatrixElementDecay {
    std::vector<double> distance;
    std::vector<double> mean_sq;
    PowerLawFit asymptotic;
    PowerLawFit intermediate;
};
MatrixElementDecay matrix_element_decay(const DenseMatrix& u, double k);
/// Same observable accumulated column by column from the classical oracle,
/// so N = 2^12 and beyond never materializes the matrix.
MatrixElementDecay matrix_element_decay_from_map(const MapParams& p);

/// Quasi-energies of a unitary: eigenphases in [0, 2pi), sorted, plus the
/// circular spacings rescaled to unit mean (exact mean 2pi/N).
struct SpectralResult {
    std::vector<double> omega;
    std::vector<double> spacings;
    double max_modulus_deviation = 0.0; // max | |lambda| - 1 |
};
SpectralResult quasi_energy_spectrum(const DenseMatrix& u);

struct SpacingHistogram {
    std::vector<double> bin_centers;
    std::vector<double> density;
    double bin_width = 0.1;
    double small_s_fraction = 0.0;        // fraction of spacings below s = 0.1
    double poisson_small_s = 0.0;         // 1 - e^{-0.1}
    double ks_statistic = 0.0;            // against P(s) = e^{-s}
    double ks_p_value = 0.0;
};
/// Histogram of P(s) over s in [0, 5]; needs >= 200 spacings.
SpacingHistogram level_spacing_stats(const SpectralResult& spectrum, int bins = 50);

/// One measured fidelity timescale.
struct ScalingPoint {
    double eps;
    int n_q;
    long n_g;
    double t_f;
};

enum class ScalingLaw { NoisyLaw, StaticLaw };

/// One-parameter least squares of the timescale law
///   NoisyLaw:  t_f = C / (eps^2 n_g)
///   StaticLaw: t_f = D / (eps n_g sqrt(n_q))
/// plus a free-exponent diagnostic fit t_f ~ eps^{-gamma} (with the known
/// n_g / n_q dependence divided out). Requires >= 4 points spanning at
/// least one decade in eps.
struct ScalingFit {
    ScalingLaw law;
    double constant = 0.0;       // C or D
    double free_exponent = 0.0;  // gamma
    double log10_residual_rms = 0.0;
    std::size_t points = 0;
};
ScalingFit fit_scaling(const std::vector<ScalingPoint>& points, ScalingLaw law);

enum class DecayShape { Exponential, Gaussian };

/// Compares ln f ~ -t against ln f ~ -t^2 on the decaying part of the
/// series; requires the series to fall below 0.5.
struct DecayShapeFit {
    DecayShape shape;
    double rate = 0.0; // A in exp(-A t), or B in exp(-(B t)^2)
    double residual_exponential = 0.0;
    double residual_gaussian = 0.0;
};
DecayShapeFit fidelity_decay_shape(std::span<const double> times, std::span<const double> f);

/// Accuracy border eps_s = D eps_r^2 / (C sqrt(n_q)) and the corresponding
/// error rates p = eps^2.
struct ThresholdResult {
    double eps_s;
    double p_r;
    double p_s;
};
ThresholdResult threshold_epsilon_s(double eps_r, int n_q, double c_const, double d_const);

} // namespace qwr
