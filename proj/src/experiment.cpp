#include "qwr/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace qwr {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_text(ss.str());
}

Config Config::from_text(const std::string& text) {
    Config c;
    std::istringstream in(text);
    std::string line, section;
    while (std::getline(in, line)) {
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: expected key = value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw std::runtime_error("config: empty key in '" + line + "'");
        c.set(section.empty() ? key : section + "." + key, value);
    }
    return c;
}

void Config::set(const std::string& key, const std::string& value) { entries_[key] = value; }

bool Config::has(const std::string& key) const { return entries_.count(key) > 0; }

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("config: key '" + key + "' is not a number: " + it->second);
    }
}

long Config::get_long(const std::string& key, long fallback) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    try {
        std::size_t pos = 0;
        const long v = std::stol(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("config: key '" + key + "' is not an integer: " + it->second);
    }
}

std::string Config::to_text() const {
    std::ostringstream os;
    for (const auto& [k, v] : entries_) os << k << " = " << v << '\n';
    return os.str();
}

void Config::validate_keys(const std::vector<std::string>& known) const {
    for (const auto& [k, v] : entries_) {
        (void)v;
        if (std::find(known.begin(), known.end(), k) == known.end())
            throw std::runtime_error("config: unknown key '" + k + "'");
    }
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    for (std::size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? "," : "");
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << format_double(row[i]) << (i + 1 < row.size() ? "," : "");
        out << '\n';
    }
}

namespace {

struct Axis {
    double lo, hi;
    bool log;
    double to_unit(double v) const {
        const double a = log ? std::log10(lo) : lo;
        const double b = log ? std::log10(hi) : hi;
        const double x = log ? std::log10(v) : v;
        return (x - a) / std::max(b - a, 1e-300);
    }
};

} // namespace

void write_svg_plot(const std::string& path, const std::vector<PlotSeries>& series,
                    const PlotOptions& opt) {
    const double w = 720, h = 520, ml = 70, mr = 30, mt = 40, mb = 55;
    double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (opt.log_x && s.x[i] <= 0) continue;
            if (opt.log_y && s.y[i] <= 0) continue;
            x_lo = std::min(x_lo, s.x[i]);
            x_hi = std::max(x_hi, s.x[i]);
            y_lo = std::min(y_lo, s.y[i]);
            y_hi = std::max(y_hi, s.y[i]);
        }
    if (x_lo >= x_hi) x_hi = x_lo + 1;
    if (y_lo >= y_hi) y_hi = y_lo + (opt.log_y ? y_lo : 1);
    const Axis ax{x_lo, x_hi, opt.log_x}, ay{y_lo, y_hi, opt.log_y};
    auto px = [&](double v) { return ml + ax.to_unit(v) * (w - ml - mr); };
    auto py = [&](double v) { return h - mb - ay.to_unit(v) * (h - mt - mb); };

    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_svg_plot: cannot open " + path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h
        << "' viewBox='0 0 " << w << ' ' << h << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    out << "<rect x='" << ml << "' y='" << mt << "' width='" << w - ml - mr << "' height='"
        << h - mt - mb << "' fill='none' stroke='black'/>\n";
    auto tick_values = [](const Axis& a) {
        std::vector<double> t;
        if (a.log) {
            for (int d = int(std::floor(std::log10(a.lo))); d <= int(std::ceil(std::log10(a.hi)));
                 ++d)
                t.push_back(std::pow(10.0, d));
        } else {
            const double span = a.hi - a.lo;
            const double step = std::pow(10.0, std::floor(std::log10(span / 4)));
            for (double v = std::ceil(a.lo / step) * step; v <= a.hi + 1e-12 * span; v += step)
                t.push_back(v);
            while (t.size() > 12) {
                std::vector<double> half;
                for (std::size_t i = 0; i < t.size(); i += 2) half.push_back(t[i]);
                t.swap(half);
            }
        }
        return t;
    };
    char buf[64];
    for (double v : tick_values(ax)) {
        if (v < x_lo || v > x_hi) continue;
        out << "<line x1='" << px(v) << "' y1='" << h - mb << "' x2='" << px(v) << "' y2='"
            << h - mb + 5 << "' stroke='black'/>\n";
        std::snprintf(buf, sizeof buf, "%g", v);
        out << "<text x='" << px(v) << "' y='" << h - mb + 18
            << "' font-size='11' text-anchor='middle'>" << buf << "</text>\n";
    }
    for (double v : tick_values(ay)) {
        if (v < y_lo || v > y_hi) continue;
        out << "<line x1='" << ml - 5 << "' y1='" << py(v) << "' x2='" << ml << "' y2='" << py(v)
            << "' stroke='black'/>\n";
        std::snprintf(buf, sizeof buf, "%g", v);
        out << "<text x='" << ml - 8 << "' y='" << py(v) + 4
            << "' font-size='11' text-anchor='end'>" << buf << "</text>\n";
    }
    if (!opt.title.empty())
        out << "<text x='" << w / 2 << "' y='" << mt - 14
            << "' font-size='14' text-anchor='middle'>" << opt.title << "</text>\n";
    if (!opt.x_label.empty())
        out << "<text x='" << w / 2 << "' y='" << h - 12
            << "' font-size='12' text-anchor='middle'>" << opt.x_label << "</text>\n";
    if (!opt.y_label.empty())
        out << "<text x='16' y='" << h / 2 << "' font-size='12' text-anchor='middle' "
            << "transform='rotate(-90 16 " << h / 2 << ")'>" << opt.y_label << "</text>\n";

    // Power-law guide lines through the plot center (log-log plots only).
    if (opt.log_x && opt.log_y) {
        for (double slope : opt.guide_slopes) {
            const double cx = std::sqrt(x_lo * x_hi), cy = std::sqrt(y_lo * y_hi);
            const double lx0 = std::log10(x_lo), lx1 = std::log10(x_hi);
            auto yv = [&](double lx) {
                return std::pow(10.0, std::log10(cy) + slope * (lx - std::log10(cx)));
            };
            out << "<line x1='" << px(std::pow(10, lx0)) << "' y1='"
                << py(std::clamp(yv(lx0), y_lo, y_hi)) << "' x2='" << px(std::pow(10, lx1))
                << "' y2='" << py(std::clamp(yv(lx1), y_lo, y_hi))
                << "' stroke='#888888' stroke-dasharray='6 4'/>\n";
            std::snprintf(buf, sizeof buf, "slope %g", slope);
            out << "<text x='" << px(cx) + 6 << "' y='" << py(std::clamp(cy, y_lo, y_hi)) - 6
                << "' font-size='11' fill='#666666'>" << buf << "</text>\n";
        }
    }
    int li = 0;
    for (const auto& s : series) {
        out << "<polyline fill='none' stroke='" << s.color << "' stroke-width='1.4' points='";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (opt.log_x && s.x[i] <= 0) continue;
            if (opt.log_y && s.y[i] <= 0) continue;
            out << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
        }
        out << "'/>\n";
        if (!s.label.empty()) {
            out << "<text x='" << w - mr - 150 << "' y='" << mt + 16 + 14 * li
                << "' font-size='11' fill='" << s.color << "'>" << s.label << "</text>\n";
            ++li;
        }
    }
    out << "</svg>\n";
}

void write_manifest(const std::string& path, const Config& config, double wall_seconds,
                    const std::vector<std::string>& outputs) {
    nlohmann::json j;
    j["version"] = kVersion;
    j["wall_seconds"] = wall_seconds;
    nlohmann::json cfg = nlohmann::json::object();
    for (const auto& [k, v] : config.entries()) cfg[k] = v;
    j["config"] = cfg;
    j["outputs"] = outputs;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_manifest: cannot open " + path);
    out << j.dump(2) << '\n';
}

namespace {

NoiseModel scan_noise(const TimescaleScan& scan, const TimescaleJob& job) {
    switch (scan.kind) {
        case NoiseModel::Kind::NoisyGates: {
            NoiseModel m = NoiseModel::noisy_gates(job.eps);
            m.seed = job.seed;
            return m;
        }
        case NoiseModel::Kind::Static:
            return NoiseModel::static_imperfections(job.eps, scan.mu_over_eps * job.eps,
                                                    job.seed);
        case NoiseModel::Kind::PseudoStatic:
            return NoiseModel::pseudo_static(job.eps, job.seed);
        case NoiseModel::Kind::Ideal: break;
    }
    throw std::invalid_argument("run_timescale_scan: noise kind must not be ideal");
}

// Crude upper bounds on the expected crossing time, used only to size the
// simulation horizon; runs stop early once the fidelity floor is reached.
int horizon_steps(const TimescaleScan& scan, const TimescaleJob& job, long n_g) {
    const double rq = std::sqrt(double(job.n_q));
    const double noisy_pred = 10.0 / (job.eps * job.eps * double(n_g));
    const double static_pred = 30.0 / (job.eps * double(n_g) * rq);
    const double pseudo_pred =
        std::min(noisy_pred, 700.0 / (job.eps * double(n_g) * rq));
    double pred = noisy_pred;
    if (scan.kind == NoiseModel::Kind::Static) pred = static_pred;
    if (scan.kind == NoiseModel::Kind::PseudoStatic) pred = pseudo_pred;
    const double cap = std::ceil(4.0 * pred) + 100.0;
    return int(std::min<double>(scan.max_steps, cap));
}

} // namespace

std::vector<TimescaleResult> run_timescale_scan(const TimescaleScan& scan) {
    std::vector<TimescaleJob> jobs;
    for (int n_q : scan.nq_list)
        for (double eps : scan.eps_grid)
            for (std::uint64_t seed : scan.seeds) jobs.push_back({n_q, eps, seed});

    std::map<int, long> ng_by_nq;
    for (int n_q : scan.nq_list) {
        MapParams p{n_q, scan.T, scan.k, {}};
        ng_by_nq[n_q] = build_map_circuit(p).count_gates().total();
    }

    std::vector<TimescaleResult> results(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            const TimescaleJob& job = jobs[i];
            const MapParams p{job.n_q, scan.T, scan.k, {}};
            const long n_g = ng_by_nq.at(job.n_q);
            EvolveOptions opt;
            opt.steps = horizon_steps(scan, job, n_g);
            opt.record_fidelity = true;
            opt.record_ipr = false;
            opt.fidelity_floor = scan.fidelity_floor;
            opt.checkpoints_per_step = scan.checkpoints_per_step;
            const NoiseModel noise = scan_noise(scan, job);
            const EvolutionRecord rec = evolve(initial_momentum_zero(p), p, noise, opt);

            TimescaleResult r;
            r.job = job;
            r.n_g = rec.gates_per_iteration;
            std::vector<double> t{0.0}, f{1.0};
            t.insert(t.end(), rec.times.begin(), rec.times.end());
            f.insert(f.end(), rec.fidelity.begin(), rec.fidelity.end());
            r.t_f = find_tf(t, f);
            try {
                r.shape = fidelity_decay_shape(t, f);
                r.shape_valid = true;
            } catch (const std::invalid_argument&) {
                r.shape_valid = false;
            }
            results[i] = std::move(r);
        }
    };
    const int n_workers = std::max(1, std::min<int>(scan.workers, int(jobs.size())));
    std::vector<std::thread> threads;
    threads.reserve(n_workers);
    for (int i = 0; i < n_workers; ++i) threads.emplace_back(worker);
    for (auto& th : threads) th.join();
    return results;
}

std::vector<ScalingPoint> aggregate_scaling_points(const std::vector<TimescaleResult>& rows) {
    std::map<std::pair<int, double>, std::vector<const TimescaleResult*>> cells;
    for (const auto& r : rows) cells[{r.job.n_q, r.job.eps}].push_back(&r);
    std::vector<ScalingPoint> points;
    for (const auto& [key, cell] : cells) {
        double log_sum = 0.0;
        int n_finite = 0;
        long n_g = 0;
        for (const TimescaleResult* r : cell) {
            n_g = r->n_g;
            if (std::isfinite(r->t_f) && r->t_f > 0) {
                log_sum += std::log(r->t_f);
                ++n_finite;
            }
        }
        if (n_finite == 0) continue;
        points.push_back({key.second, key.first, n_g, std::exp(log_sum / n_finite)});
    }
    return points;
}

namespace {

// Solves the 4x4 normal equations of a cubic least-squares fit.
std::vector<double> cubic_fit(const std::vector<double>& x, const std::vector<double>& y) {
    double a[4][5] = {};
    for (std::size_t i = 0; i < x.size(); ++i) {
        double p[4] = {1, x[i], x[i] * x[i], x[i] * x[i] * x[i]};
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) a[r][c] += p[r] * p[c];
            a[r][4] += p[r] * y[i];
        }
    }
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        std::swap(a[col], a[piv]);
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            const double m = a[r][col] / a[col][col];
            for (int c = col; c < 5; ++c) a[r][c] -= m * a[col][c];
        }
    }
    return {a[0][4] / a[0][0], a[1][4] / a[1][1], a[2][4] / a[2][2], a[3][4] / a[3][3]};
}

} // namespace

GateCountReport gate_count_report(int nq_min, int nq_max, double T, double k) {
    GateCountReport report;
    std::vector<double> xs, ys;
    for (int n_q = nq_min; n_q <= nq_max; ++n_q) {
        const MapParams p{n_q, T, k, {}};
        const Circuit c = build_map_circuit(p);
        GateCountRow row;
        row.n_q = n_q;
        row.breakdown = c.count_gates();
        row.ours = row.breakdown.total();
        row.published = 0;
        for (const auto& [nq_ref, count] : published_gate_counts())
            if (nq_ref == n_q) row.published = count;
        report.rows.push_back(row);
        xs.push_back(double(n_q));
        ys.push_back(double(row.ours));
    }
    if (xs.size() >= 4) {
        report.cubic_coeffs = cubic_fit(xs, ys);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double x = xs[i];
            const double fit = report.cubic_coeffs[0] + report.cubic_coeffs[1] * x +
                               report.cubic_coeffs[2] * x * x + report.cubic_coeffs[3] * x * x * x;
            report.cubic_max_rel_residual =
                std::max(report.cubic_max_rel_residual, std::abs(fit - ys[i]) / ys[i]);
        }
    }
    return report;
}

} // namespace qwr
