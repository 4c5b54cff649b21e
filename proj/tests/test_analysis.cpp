#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qwr/analysis.hpp"
#include "qwr/eigenphases.hpp"
#include "test_util.hpp"

#include <cmath>
#include <random>

using namespace qwr;

TEST_CASE("fidelity") {
    std::mt19937 rng(3);
    SUBCASE("identical states give 1") {
        const StateVector s = testutil::random_state(4, rng);
        CHECK(fidelity(s, s) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("orthogonal basis states give 0") {
        CHECK(fidelity(StateVector::basis_state(3, 1), StateVector::basis_state(3, 2)) == 0.0);
    }
    SUBCASE("equal-weight mixture gives 1/2") {
        StateVector psi = StateVector::basis_state(2, 0);
        StateVector mix(2);
        mix[0] = cplx(1.0 / std::sqrt(2.0));
        mix[1] = cplx(1.0 / std::sqrt(2.0));
        CHECK(fidelity(psi, mix) == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("symmetric in its arguments") {
        const StateVector a = testutil::random_state(4, rng);
        const StateVector b = testutil::random_state(4, rng);
        CHECK(fidelity(a, b) == doctest::Approx(fidelity(b, a)).epsilon(1e-12));
    }
}

TEST_CASE("find_tf") {
    SUBCASE("linear interpolation") {
        const std::vector<double> f = {1.0, 0.95, 0.85};
        CHECK(find_tf(f) == doctest::Approx(1.5).epsilon(1e-12));
    }
    SUBCASE("never crossing returns infinity") {
        const std::vector<double> f(100, 1.0);
        CHECK(std::isinf(find_tf(f)));
    }
    SUBCASE("gaussian series inverts the closed form") {
        const double tau = 37.3;
        std::vector<double> f;
        for (int t = 0; t <= 100; ++t) f.push_back(std::exp(-(t / tau) * (t / tau)));
        const double expect = tau * std::sqrt(std::log(1.0 / 0.9));
        CHECK(std::abs(find_tf(f) - expect) < 1.0);
    }
    SUBCASE("starting below the threshold throws") {
        const std::vector<double> f = {0.5, 0.4};
        CHECK_THROWS(find_tf(f));
    }
}

TEST_CASE("ipr") {
    SUBCASE("basis state gives 1") { CHECK(ipr(StateVector::basis_state(4, 3)) == doctest::Approx(1.0)); }
    SUBCASE("uniform over N gives N") {
        StateVector s(4);
        for (int i = 0; i < 16; ++i) s[i] = cplx(0.25);
        CHECK(ipr(s) == doctest::Approx(16.0).epsilon(1e-12));
    }
    SUBCASE("two equal components give 2") {
        StateVector s(3);
        s[0] = cplx(1.0 / std::sqrt(2.0));
        s[5] = cplx(0, 1.0 / std::sqrt(2.0));
        CHECK(ipr(s) == doctest::Approx(2.0).epsilon(1e-12));
    }
}

TEST_CASE("window average") {
    SUBCASE("constant series unchanged") {
        const std::vector<double> s(120, 3.25);
        for (double v : window_average(s, 50)) CHECK(v == doctest::Approx(3.25));
    }
    SUBCASE("alternating 0/2 with window 2") {
        std::vector<double> s;
        for (int i = 0; i < 30; ++i) s.push_back(i % 2 ? 2.0 : 0.0);
        for (double v : window_average(s, 2)) CHECK(v == doctest::Approx(1.0));
    }
    SUBCASE("length 100 with window 50 gives 2 block means") {
        std::vector<double> s(100);
        for (int i = 0; i < 100; ++i) s[i] = double(i);
        const auto w = window_average(s, 50);
        REQUIRE(w.size() == 2);
        CHECK(w[0] == doctest::Approx(24.5));
        CHECK(w[1] == doctest::Approx(74.5));
    }
}

TEST_CASE("dense eigenvalues") {
    SUBCASE("diagonal matrix returns its diagonal") {
        DenseMatrix d(5);
        for (int i = 0; i < 5; ++i) d(i, i) = std::polar(1.0, 0.7 * i);
        auto eig = dense_eigenvalues(d);
        std::sort(eig.begin(), eig.end(), [](cplx a, cplx b) { return std::arg(a) < std::arg(b); });
        for (int i = 0; i < 5; ++i) CHECK(std::abs(eig[i] - std::polar(1.0, 0.7 * i)) < 1e-12);
    }
    SUBCASE("non-normal upper triangular") {
        DenseMatrix m(2);
        m(0, 0) = 1;
        m(0, 1) = 1;
        m(1, 1) = 2;
        auto eig = dense_eigenvalues(m);
        std::sort(eig.begin(), eig.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
        CHECK(std::abs(eig[0] - cplx(1)) < 1e-12);
        CHECK(std::abs(eig[1] - cplx(2)) < 1e-12);
    }
    SUBCASE("planted unitary spectrum is recovered through random conjugation") {
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> u(0, 2 * M_PI);
        const int n = 64;
        DenseMatrix m(n);
        std::vector<double> planted;
        for (int i = 0; i < n; ++i) {
            planted.push_back(u(rng));
            m(i, i) = std::polar(1.0, planted.back());
        }
        // conjugate by a few hundred random Givens rotations (unitary similarity)
        for (int rot = 0; rot < 4 * n; ++rot) {
            const int a = int(u(rng) / (2 * M_PI) * n) % n;
            int b = int(u(rng) / (2 * M_PI) * n) % n;
            if (a == b) b = (b + 1) % n;
            const double th = u(rng);
            const cplx ph = std::polar(1.0, u(rng));
            const double c = std::cos(th);
            // rows
            for (int j = 0; j < n; ++j) {
                const cplx x = m(a, j), y = m(b, j);
                m(a, j) = c * x + std::sin(th) * ph * y;
                m(b, j) = -std::sin(th) * std::conj(ph) * x + c * y;
            }
            // columns (adjoint rotation)
            for (int i = 0; i < n; ++i) {
                const cplx x = m(i, a), y = m(i, b);
                m(i, a) = c * x + std::sin(th) * std::conj(ph) * y;
                m(i, b) = -std::sin(th) * ph * x + c * y;
            }
        }
        auto eig = dense_eigenvalues(m);
        std::vector<double> got;
        for (const cplx& l : eig) {
            CHECK(std::abs(std::abs(l) - 1.0) < 1e-9);
            double w = std::arg(l);
            if (w < 0) w += 2 * M_PI;
            got.push_back(w);
        }
        std::sort(got.begin(), got.end());
        std::sort(planted.begin(), planted.end());
        for (int i = 0; i < n; ++i) CHECK(std::abs(got[i] - planted[i]) < 1e-9);
    }
}

TEST_CASE("quasi-energy spectrum") {
    SUBCASE("identity: all quasi-energies are 0") {
        const auto res = quasi_energy_spectrum(DenseMatrix::identity(16));
        for (double w : res.omega) CHECK(std::abs(w) < 1e-12);
    }
    SUBCASE("rigid spectrum: all normalized spacings are exactly 1") {
        const int n = 128;
        DenseMatrix d(n);
        for (int i = 0; i < n; ++i) d(i, i) = std::polar(1.0, 2 * M_PI * i / n);
        const auto res = quasi_energy_spectrum(d);
        for (double s : res.spacings) CHECK(s == doctest::Approx(1.0).epsilon(1e-9));
        double mean = 0;
        for (double s : res.spacings) mean += s;
        CHECK(mean / n == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("random phases give Poisson spacings") {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> u(0, 2 * M_PI);
        const int n = 1024;
        DenseMatrix d(n);
        for (int i = 0; i < n; ++i) d(i, i) = std::polar(1.0, u(rng));
        const auto res = quasi_energy_spectrum(d);
        const auto stats = level_spacing_stats(res);
        CHECK(stats.ks_p_value > 0.01);
        CHECK(std::abs(stats.small_s_fraction - stats.poisson_small_s) <
              4.0 * std::sqrt(stats.poisson_small_s / n));
    }
    SUBCASE("non-unitary input is rejected") {
        DenseMatrix m(8);
        for (int i = 0; i < 8; ++i) m(i, i) = 2.0;
        CHECK_THROWS(quasi_energy_spectrum(m));
    }
}

TEST_CASE("level spacing histogram") {
    SUBCASE("synthetic rigid spectrum: all mass in the bin containing s = 1") {
        SpectralResult rigid;
        const int n = 512;
        for (int i = 0; i < n; ++i) {
            rigid.omega.push_back(2 * M_PI * i / n);
            rigid.spacings.push_back(1.0);
        }
        const auto stats = level_spacing_stats(rigid);
        const int bin_of_one = int(1.0 / stats.bin_width);
        CHECK(stats.density[bin_of_one] * stats.bin_width == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(stats.small_s_fraction == 0.0);
    }
    SUBCASE("eigen-derived rigid spectrum keeps its mass at the s = 1 bin edge") {
        const int n = 512;
        DenseMatrix d(n);
        for (int i = 0; i < n; ++i) d(i, i) = std::polar(1.0, 2 * M_PI * i / n);
        const auto stats = level_spacing_stats(quasi_energy_spectrum(d));
        double mass = 0.0;
        for (std::size_t b = 0; b < stats.density.size(); ++b)
            mass += stats.density[b] * stats.bin_width;
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
        // numerically the unit spacings straddle the 0.9/1.0 bin boundary
        const int bin_of_one = int(1.0 / stats.bin_width);
        const double near_one = (stats.density[bin_of_one] + stats.density[bin_of_one - 1]) *
                                stats.bin_width;
        CHECK(near_one == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("too few spacings throws") {
        DenseMatrix d = DenseMatrix::identity(16);
        CHECK_THROWS(level_spacing_stats(quasi_energy_spectrum(d)));
    }
}

TEST_CASE("scaling fits") {
    SUBCASE("exact noisy-law data recovers C = 5") {
        std::vector<ScalingPoint> pts;
        for (double eps : {1e-4, 3e-4, 1e-3, 3e-3, 1e-2})
            pts.push_back({eps, 8, 5237, 5.0 / (eps * eps * 5237)});
        const ScalingFit fit = fit_scaling(pts, ScalingLaw::NoisyLaw);
        CHECK(fit.constant == doctest::Approx(5.0).epsilon(1e-10));
        CHECK(fit.free_exponent == doctest::Approx(2.0).epsilon(1e-10));
    }
    SUBCASE("exact static-law data recovers D") {
        std::vector<ScalingPoint> pts;
        for (double eps : {1e-5, 1e-4, 1e-3, 1e-2})
            for (int nq : {6, 8})
                pts.push_back({eps, nq, nq * 100L, 4.5 / (eps * nq * 100 * std::sqrt(double(nq)))});
        const ScalingFit fit = fit_scaling(pts, ScalingLaw::StaticLaw);
        CHECK(fit.constant == doctest::Approx(4.5).epsilon(1e-10));
        CHECK(fit.free_exponent == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("insufficient span throws") {
        std::vector<ScalingPoint> pts = {
            {1e-3, 6, 100, 10}, {2e-3, 6, 100, 5}, {3e-3, 6, 100, 3}, {4e-3, 6, 100, 2}};
        CHECK_THROWS(fit_scaling(pts, ScalingLaw::NoisyLaw));
    }
}

TEST_CASE("fidelity decay shape") {
    std::vector<double> t;
    for (int i = 0; i <= 600; ++i) t.push_back(i);
    SUBCASE("exponential") {
        std::vector<double> f;
        for (double x : t) f.push_back(std::exp(-x / 100.0));
        const auto fit = fidelity_decay_shape(t, f);
        CHECK(fit.shape == DecayShape::Exponential);
        CHECK(fit.rate == doctest::Approx(0.01).epsilon(0.01));
    }
    SUBCASE("gaussian") {
        std::vector<double> f;
        for (double x : t) f.push_back(std::exp(-(x / 100.0) * (x / 100.0)));
        const auto fit = fidelity_decay_shape(t, f);
        CHECK(fit.shape == DecayShape::Gaussian);
        CHECK(fit.rate == doctest::Approx(0.01).epsilon(0.01));
    }
    SUBCASE("insufficient decay throws") {
        std::vector<double> f(t.size(), 0.97);
        CHECK_THROWS(fidelity_decay_shape(t, f));
    }
}

TEST_CASE("threshold formula") {
    SUBCASE("reference point: eps_r = 1e-2, n_q = 10, C = 5, D = 4.5") {
        const auto r = threshold_epsilon_s(1e-2, 10, 5.0, 4.5);
        CHECK(r.eps_s == doctest::Approx(2.846e-5).epsilon(1e-3));
        CHECK(r.p_r == doctest::Approx(1e-4).epsilon(1e-12));
        CHECK(r.p_s == doctest::Approx(8.1e-10).epsilon(0.01));
    }
    SUBCASE("unit collapse") {
        CHECK(threshold_epsilon_s(1.0, 1, 3.3, 3.3).eps_s == doctest::Approx(1.0));
    }
    SUBCASE("quadrupling n_q halves eps_s") {
        const double a = threshold_epsilon_s(1e-2, 4, 5, 4.5).eps_s;
        const double b = threshold_epsilon_s(1e-2, 16, 5, 4.5).eps_s;
        CHECK(a / b == doctest::Approx(2.0).epsilon(1e-12));
    }
}

TEST_CASE("matrix element decay on synthetic data") {
    SUBCASE("planted power law is recovered") {
        const int n = 512;
        DenseMatrix m(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                const double d = std::abs(i - j);
                m(i, j) = cplx(std::sqrt(1.0 / std::pow(d, 3.5)), 0);
            }
        const auto decay = matrix_element_decay(m, /*k=*/1.0);
        REQUIRE(decay.asymptotic.valid);
        CHECK(decay.asymptotic.exponent == doctest::Approx(3.5).epsilon(1e-6));
    }
    SUBCASE("diagonal input declines to fit") {
        const auto decay = matrix_element_decay(DenseMatrix::identity(64), 1.0);
        for (double v : decay.mean_sq) CHECK(v == 0.0);
        CHECK_FALSE(decay.asymptotic.valid);
    }
}

TEST_CASE("linear fit recovers an exact line") {
    std::vector<double> x, y;
    for (int i = 0; i < 20; ++i) {
        x.push_back(i);
        y.push_back(3.0 - 0.25 * i);
    }
    const LinearFit f = linear_fit(x, y);
    CHECK(f.slope == doctest::Approx(-0.25).epsilon(1e-12));
    CHECK(f.intercept == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(f.slope_stderr < 1e-12);
}
