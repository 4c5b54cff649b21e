#include "qwr/analysis.hpp"

#include "qwr/eigenphases.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace qwr {

double fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(inner_product(a, b));
}

double find_tf(std::span<const double> times, std::span<const double> f, double threshold) {
    if (f.empty() || times.size() != f.size())
        throw std::invalid_argument("find_tf: empty or mismatched series");
    if (f[0] < threshold)
        throw std::invalid_argument("find_tf: series starts below threshold");
    for (std::size_t i = 1; i < f.size(); ++i) {
        if (f[i] < threshold) {
            const double frac = (f[i - 1] - threshold) / (f[i - 1] - f[i]);
            return times[i - 1] + frac * (times[i] - times[i - 1]);
        }
    }
    return std::numeric_limits<double>::infinity();
}

double find_tf(std::span<const double> f, double threshold) {
    std::vector<double> t(f.size());
    std::iota(t.begin(), t.end(), 0.0);
    return find_tf(t, f, threshold);
}

double ipr(std::span<const cplx> amplitudes) {
    double sum4 = 0.0;
    for (const cplx& a : amplitudes) {
        const double p = std::norm(a);
        sum4 += p * p;
    }
    return 1.0 / std::max(sum4, 1e-300);
}

double ipr(const StateVector& state) { return ipr(state.amplitudes()); }

std::vector<double> window_average(std::span<const double> series, int window) {
    if (window < 1) throw std::invalid_argument("window_average: window must be >= 1");
    std::vector<double> out;
    out.reserve(series.size() / window + 1);
    for (std::size_t start = 0; start < series.size(); start += window) {
        const std::size_t stop = std::min(series.size(), start + window);
        double acc = 0.0;
        for (std::size_t i = start; i < stop; ++i) acc += series[i];
        out.push_back(acc / double(stop - start));
    }
    return out;
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("linear_fit: need >= 2 matched points");
    const double n = double(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-300) throw std::invalid_argument("linear_fit: degenerate x");
    LinearFit fit;
    fit.points = x.size();
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.slope * x[i] + fit.intercept);
        ss_res += r * r;
    }
    fit.residual_rms = std::sqrt(ss_res / n);
    if (x.size() > 2)
        fit.slope_stderr = std::sqrt(ss_res / (n - 2.0) / (sxx - sx * sx / n));
    return fit;
}

LinearFit linear_fit_hac(std::span<const double> x, std::span<const double> y, int bandwidth) {
    LinearFit fit = linear_fit(x, y);
    const std::size_t n = x.size();
    if (bandwidth < 1 || n < 3) return fit;
    double x_mean = 0.0;
    for (double v : x) x_mean += v;
    x_mean /= double(n);
    double sxx = 0.0;
    std::vector<double> score(n); // (x_i - xbar) * residual_i
    for (std::size_t i = 0; i < n; ++i) {
        const double cx = x[i] - x_mean;
        sxx += cx * cx;
        score[i] = cx * (y[i] - (fit.slope * x[i] + fit.intercept));
    }
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) var += score[i] * score[i];
    for (int lag = 1; lag <= bandwidth && std::size_t(lag) < n; ++lag) {
        const double w = 1.0 - double(lag) / double(bandwidth + 1);
        double gamma = 0.0;
        for (std::size_t i = 0; i + lag < n; ++i) gamma += score[i] * score[i + lag];
        var += 2.0 * w * gamma;
    }
    fit.slope_stderr = std::sqrt(std::max(var, 0.0)) / sxx;
    return fit;
}

DenseMatrix build_full_unitary(const MapParams& p) {
    if (p.dim() > (std::uint64_t(1) << 13))
        throw std::invalid_argument("build_full_unitary: N > 2^13 resource guard");
    return exact_map_matrix(p);
}

namespace {

PowerLawFit fit_power_law(const std::vector<double>& d, const std::vector<double>& v,
                          double d_lo, double d_hi) {
    PowerLawFit fit;
    // a window needs real dynamic range, not just a point count
    if (!(d_hi >= 4.0 * d_lo)) return fit;
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] < d_lo || d[i] > d_hi) continue;
        if (v[i] <= 0.0) continue;
        lx.push_back(std::log10(d[i]));
        ly.push_back(std::log10(v[i]));
    }
    fit.points = lx.size();
    if (lx.size() < 4) return fit; // degenerate window: reported, not fitted
    const LinearFit lf = linear_fit(lx, ly);
    fit.exponent = -lf.slope;
    fit.log10_residual_rms = lf.residual_rms;
    fit.valid = true;
    return fit;
}

MatrixElementDecay finish_decay(std::vector<double> sum_sq, std::vector<double> counts,
                                std::size_t n, double k) {
    MatrixElementDecay out;
    for (std::size_t d = 1; d < n; ++d) {
        out.distance.push_back(double(d));
        out.mean_sq.push_back(sum_sq[d] / counts[d]);
    }
    const double asym_lo = std::max(10.0, 10.0 * k);
    const double asym_hi = double(n) / 4.0;
    out.asymptotic = fit_power_law(out.distance, out.mean_sq, asym_lo, asym_hi);
    if (5.0 * k >= 10.0) {
        const double mid_hi = std::max(4.0, k);
        out.intermediate = fit_power_law(out.distance, out.mean_sq, 2.0, mid_hi);
    }
    return out;
}

} // namespace

MatrixElementDecay matrix_element_decay(const DenseMatrix& u, double k) {
    const std::size_t n = u.size();
    if (n < 8) throw std::invalid_argument("matrix_element_decay: matrix too small");
    std::vector<double> sum_sq(n, 0.0), counts(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const std::size_t d = i > j ? i - j : j - i;
            sum_sq[d] += std::norm(u(i, j));
            counts[d] += 1.0;
        }
    return finish_decay(std::move(sum_sq), std::move(counts), n, k);
}

MatrixElementDecay matrix_element_decay_from_map(const MapParams& p) {
    const MapOracle oracle(p);
    const std::size_t n = p.dim();
    std::vector<double> sum_sq(n, 0.0), counts(n, 0.0);
    std::vector<cplx> col(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::fill(col.begin(), col.end(), cplx(0));
        col[j] = cplx(1);
        oracle.apply(col);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == j) continue;
            const std::size_t d = i > j ? i - j : j - i;
            sum_sq[d] += std::norm(col[i]);
            counts[d] += 1.0;
        }
    }
    return finish_decay(std::move(sum_sq), std::move(counts), n, p.k);
}

SpectralResult quasi_energy_spectrum(const DenseMatrix& u) {
    const std::size_t n = u.size();
    if (n < 2) throw std::invalid_argument("quasi_energy_spectrum: matrix too small");
    if (n > (std::size_t(1) << 11))
        throw std::invalid_argument("quasi_energy_spectrum: N > 2^11 dense-eigensolve guard");
    const std::vector<cplx> lambda = dense_eigenvalues(u);
    SpectralResult res;
    res.omega.reserve(n);
    for (const cplx& l : lambda) {
        res.max_modulus_deviation =
            std::max(res.max_modulus_deviation, std::abs(std::abs(l) - 1.0));
        double w = std::arg(l);
        if (w < 0) w += 2.0 * M_PI;
        res.omega.push_back(w);
    }
    if (res.max_modulus_deviation > 1e-6)
        throw std::invalid_argument("quasi_energy_spectrum: input not unitary within 1e-6");
    std::sort(res.omega.begin(), res.omega.end());
    res.spacings.reserve(n);
    const double scale = double(n) / (2.0 * M_PI); // exact mean spacing 2pi/N
    for (std::size_t i = 0; i + 1 < n; ++i)
        res.spacings.push_back((res.omega[i + 1] - res.omega[i]) * scale);
    res.spacings.push_back((2.0 * M_PI - (res.omega.back() - res.omega.front())) * scale);
    return res;
}

namespace {

// Asymptotic Kolmogorov-Smirnov tail probability.
double ks_q(double lambda) {
    if (lambda < 1e-12) return 1.0;
    double sum = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = 2.0 * ((j % 2) ? 1.0 : -1.0) * std::exp(-2.0 * j * j * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-12) break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

} // namespace

SpacingHistogram level_spacing_stats(const SpectralResult& spectrum, int bins) {
    const std::vector<double>& s = spectrum.spacings;
    if (s.size() < 200) throw std::invalid_argument("level_spacing_stats: < 200 spacings");
    if (bins < 2) throw std::invalid_argument("level_spacing_stats: bins < 2");
    SpacingHistogram h;
    const double s_max = 5.0;
    h.bin_width = s_max / double(bins);
    h.bin_centers.resize(bins);
    h.density.assign(bins, 0.0);
    for (int b = 0; b < bins; ++b) h.bin_centers[b] = (b + 0.5) * h.bin_width;
    std::size_t small = 0;
    for (double x : s) {
        if (x < 0.1) ++small;
        const int b = int(x / h.bin_width);
        if (b >= 0 && b < bins) h.density[b] += 1.0;
    }
    for (double& d : h.density) d /= double(s.size()) * h.bin_width;
    h.small_s_fraction = double(small) / double(s.size());
    h.poisson_small_s = 1.0 - std::exp(-0.1);

    std::vector<double> sorted(s.begin(), s.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = double(sorted.size());
    double d_max = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double cdf = 1.0 - std::exp(-sorted[i]);
        d_max = std::max(d_max, std::abs(cdf - double(i) / n));
        d_max = std::max(d_max, std::abs(double(i + 1) / n - cdf));
    }
    h.ks_statistic = d_max;
    const double sq = std::sqrt(n);
    h.ks_p_value = ks_q((sq + 0.12 + 0.11 / sq) * d_max);
    return h;
}

ScalingFit fit_scaling(const std::vector<ScalingPoint>& points, ScalingLaw law) {
    if (points.size() < 4) throw std::invalid_argument("fit_scaling: need >= 4 points");
    double eps_min = points[0].eps, eps_max = points[0].eps;
    for (const auto& p : points) {
        eps_min = std::min(eps_min, p.eps);
        eps_max = std::max(eps_max, p.eps);
    }
    if (eps_max / eps_min < 10.0 - 1e-9)
        throw std::invalid_argument("fit_scaling: eps span below one decade");
    ScalingFit fit;
    fit.law = law;
    fit.points = points.size();
    // One free parameter: ln const = mean of ln(t_f) + ln(predictor).
    std::vector<double> lx, ly, lc;
    for (const auto& p : points) {
        if (!(p.t_f > 0.0) || !std::isfinite(p.t_f))
            throw std::invalid_argument("fit_scaling: nonpositive or infinite t_f");
        const double predictor = (law == ScalingLaw::NoisyLaw)
                                     ? p.eps * p.eps * double(p.n_g)
                                     : p.eps * double(p.n_g) * std::sqrt(double(p.n_q));
        lc.push_back(std::log(p.t_f * predictor));
        // Free-exponent diagnostic: divide out the gate/qubit dependence.
        const double known = (law == ScalingLaw::NoisyLaw)
                                 ? double(p.n_g)
                                 : double(p.n_g) * std::sqrt(double(p.n_q));
        lx.push_back(std::log10(p.eps));
        ly.push_back(std::log10(p.t_f * known));
    }
    fit.constant = std::exp(std::accumulate(lc.begin(), lc.end(), 0.0) / double(lc.size()));
    const LinearFit lf = linear_fit(lx, ly);
    fit.free_exponent = -lf.slope;
    fit.log10_residual_rms = lf.residual_rms;
    return fit;
}

DecayShapeFit fidelity_decay_shape(std::span<const double> times, std::span<const double> f) {
    if (times.size() != f.size() || f.size() < 4)
        throw std::invalid_argument("fidelity_decay_shape: bad series");
    double f_min = 1.0;
    for (double v : f) f_min = std::min(f_min, v);
    if (f_min > 0.5)
        throw std::invalid_argument("fidelity_decay_shape: series does not decay below 0.5");
    // Fit through the origin on the early decay, where the functional form
    // is clean; deep tails of averaged runs are mixture-dominated.
    double st2 = 0, st_lnf = 0, st4 = 0, st2_lnf = 0;
    std::vector<double> ts, lnfs;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] >= 0.995 || f[i] < 0.25) continue;
        const double lnf = std::log(f[i]);
        ts.push_back(times[i]);
        lnfs.push_back(lnf);
        st2 += times[i] * times[i];
        st_lnf += times[i] * lnf;
        st4 += times[i] * times[i] * times[i] * times[i];
        st2_lnf += times[i] * times[i] * lnf;
    }
    if (ts.size() < 3) throw std::invalid_argument("fidelity_decay_shape: too few decay points");
    const double a_exp = -st_lnf / st2;       // ln f = -a t
    const double b2_gauss = -st2_lnf / st4;   // ln f = -(b t)^2
    double res_e = 0.0, res_g = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double re = lnfs[i] + a_exp * ts[i];
        const double rg = lnfs[i] + b2_gauss * ts[i] * ts[i];
        res_e += re * re;
        res_g += rg * rg;
    }
    DecayShapeFit out;
    out.residual_exponential = std::sqrt(res_e / double(ts.size()));
    out.residual_gaussian = std::sqrt(res_g / double(ts.size()));
    if (out.residual_exponential <= out.residual_gaussian) {
        out.shape = DecayShape::Exponential;
        out.rate = a_exp;
    } else {
        out.shape = DecayShape::Gaussian;
        out.rate = std::sqrt(std::max(b2_gauss, 0.0));
    }
    return out;
}

ThresholdResult threshold_epsilon_s(double eps_r, int n_q, double c_const, double d_const) {
    if (eps_r <= 0 || n_q <= 0 || c_const <= 0 || d_const <= 0)
        throw std::invalid_argument("threshold_epsilon_s: inputs must be positive");
    ThresholdResult r;
    r.eps_s = d_const * eps_r * eps_r / (c_const * std::sqrt(double(n_q)));
    r.p_r = eps_r * eps_r;
    r.p_s = r.eps_s * r.eps_s;
    return r;
}

} // namespace qwr
