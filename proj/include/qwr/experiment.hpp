#pragma once

#include "qwr/analysis.hpp"
#include "qwr/noise.hpp"
#include "qwr/rotor.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qwr {

/// Flat key = value configuration with [section] prefixes ("run.nq").
/// Unknown keys fail fast at validation.
class Config {
public:
    static Config from_file(const std::string& path);
    static Config from_text(const std::string& text);

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long get_long(const std::string& key, long fallback) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }
    std::string to_text() const;

    /// Throws listing the offending key when one is not in `known`.
    void validate_keys(const std::vector<std::string>& known) const;

private:
    std::map<std::string, std::string> entries_;
};

/// Writes rows of doubles with 17 significant digits; byte-stable across
/// reruns of the same configuration.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

std::string format_double(double v);

/// Minimal self-contained SVG line plot.
struct PlotSeries {
    std::vector<double> x, y;
    std::string label;
    std::string color = "#000000";
};
struct PlotOptions {
    bool log_x = false;
    bool log_y = false;
    std::string title, x_label, y_label;
    /// Reference power-law guide lines (drawn through the data midpoint).
    std::vector<double> guide_slopes;
};
void write_svg_plot(const std::string& path, const std::vector<PlotSeries>& series,
                    const PlotOptions& opt);

/// Run manifest (JSON): configuration echo, seeds, version, wall time.
void write_manifest(const std::string& path, const Config& config, double wall_seconds,
                    const std::vector<std::string>& outputs);

inline constexpr const char* kVersion = "qwr 1.0";

/// A fidelity-timescale measurement job grid. Each (n_q, eps, seed) cell is
/// an independent evolution, distributed over a small worker pool; results
/// are deterministic per cell and assembled in grid order.
struct TimescaleJob {
    int n_q;
    double eps;
    std::uint64_t seed;
};

struct TimescaleResult {
    TimescaleJob job;
    long n_g = 0;
    double t_f = 0.0; // +inf when never crossed within the horizon
    DecayShapeFit shape;
    bool shape_valid = false;
};

struct TimescaleScan {
    NoiseModel::Kind kind;
    /// Static model: mu = mu_over_eps * eps.
    double mu_over_eps = 0.0;
    double k = 1.0;
    double T = 1.4;
    std::vector<int> nq_list;
    std::vector<double> eps_grid;
    std::vector<std::uint64_t> seeds;
    int max_steps = 200000;
    double fidelity_floor = 0.15;
    /// > 1 turns on sub-iteration fidelity checkpoints (gate-level reference).
    int checkpoints_per_step = 1;
    int workers = 2;
};

std::vector<TimescaleResult> run_timescale_scan(const TimescaleScan& scan);

/// Geometric mean of t_f over seeds for each (n_q, eps) cell; cells whose
/// t_f never crossed are dropped.
std::vector<ScalingPoint> aggregate_scaling_points(const std::vector<TimescaleResult>& rows);

/// Gate totals of the full map circuit per n_q, with the published reference
/// value (0 when none) and a cubic fit of our counts.
struct GateCountRow {
    int n_q;
    long ours;
    long published; // 0 = no reference value
    GateCount breakdown;
};
struct GateCountReport {
    std::vector<GateCountRow> rows;
    double cubic_max_rel_residual = 0.0;
    std::vector<double> cubic_coeffs; // a0 + a1 n + a2 n^2 + a3 n^3
};
GateCountReport gate_count_report(int nq_min, int nq_max, double T = 1.4, double k = 1.0);

} // namespace qwr
