#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qwr/qwt.hpp"
#include "test_util.hpp"

#include <cmath>
#include <random>

using namespace qwr;

namespace {

constexpr int kAnc = 0;

// Compares the ancilla-|0> block of a width-(n_q+1) circuit matrix against an
// N x N reference, including leakage into the ancilla-|1> half.
double block_vs_reference(const Circuit& c, const DenseMatrix& ref) {
    const DenseMatrix m = circuit_to_matrix(c);
    const std::size_t n = ref.size();
    double diff = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m.size(); ++i) {
            const cplx want = (i < n) ? ref(i, j) : cplx(0);
            diff = std::max(diff, std::abs(m(i, j) - want));
        }
    return diff;
}

} // namespace

TEST_CASE("rotation matrices") {
    const WaveletAngles a{};
    SUBCASE("theta0 = pi/3") {
        const Mat2 c0 = rotation_c0(a);
        CHECK(c0[0].real() == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-14));
        CHECK(c0[1].real() == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(c0[2].real() == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(c0[3].real() == doctest::Approx(-std::sqrt(3.0) / 2).epsilon(1e-14));
    }
    SUBCASE("degenerate angle pi/2") {
        const Mat2 m = rotation_c0({M_PI / 2, 0});
        CHECK(std::abs(m[0] - cplx(1)) < 1e-15);
        CHECK(std::abs(m[1]) < 1e-15);
        CHECK(std::abs(m[3] + cplx(1)) < 1e-15);
    }
    SUBCASE("involution C C = I") {
        const Mat2 c0 = rotation_c0(a);
        const Mat2 p = mat2_mul(c0, c0);
        CHECK(std::abs(p[0] - cplx(1)) < 1e-14);
        CHECK(std::abs(p[1]) < 1e-14);
        CHECK(std::abs(p[2]) < 1e-14);
        CHECK(std::abs(p[3] - cplx(1)) < 1e-14);
    }
    SUBCASE("orthogonal with determinant -1") {
        const Mat2 c1 = rotation_c1(a);
        CHECK(mat2_unitarity_error(c1) < 1e-14);
        const cplx det = c1[0] * c1[3] - c1[1] * c1[2];
        CHECK(std::abs(det + cplx(1)) < 1e-14);
    }
}

TEST_CASE("filter coefficients satisfy the orthonormality identities") {
    const auto f = DaubechiesCoefficients::from_angles({});
    CHECK(std::abs(f.c0 * f.c0 + f.c1 * f.c1 + f.c2 * f.c2 + f.c3 * f.c3 - 1.0) < 1e-12);
    CHECK(std::abs(f.c0 * f.c2 + f.c1 * f.c3) < 1e-12);
    // the normalized [[c2, c3], [c3, -c2]] reproduces the theta0 rotation
    const double r = std::sqrt(f.c2 * f.c2 + f.c3 * f.c3);
    CHECK(f.c2 / r == doctest::Approx(std::sin(M_PI / 3)).epsilon(1e-13));
    CHECK(f.c3 / r == doctest::Approx(std::cos(M_PI / 3)).epsilon(1e-13));
    // and [[c0, c3], [c3, -c0]] normalized reproduces theta1
    const double r1 = std::sqrt(f.c0 * f.c0 + f.c3 * f.c3);
    CHECK(f.c0 / r1 == doctest::Approx(std::sin(5 * M_PI / 12)).epsilon(1e-13));
    CHECK(f.c3 / r1 == doctest::Approx(std::cos(5 * M_PI / 12)).epsilon(1e-13));
}

TEST_CASE("classical transforms") {
    SUBCASE("kernel matrix is orthogonal") {
        for (int n = 2; n <= 5; ++n) CHECK(classical_kernel_matrix(n).unitarity_error() < 1e-12);
    }
    SUBCASE("pyramid matrix is orthogonal: M^T M = I") {
        const DenseMatrix m = classical_dwt_matrix(3);
        CHECK(DenseMatrix::max_abs_diff(m.transpose() * m, DenseMatrix::identity(8)) < 1e-12);
    }
    SUBCASE("transform of the zero vector is zero") {
        std::vector<cplx> v(16, cplx(0));
        classical_dwt_d4(v);
        for (const cplx& x : v) CHECK(std::abs(x) == 0.0);
    }
    SUBCASE("norm preservation on random vectors") {
        std::mt19937 rng(53);
        std::normal_distribution<double> g;
        for (int n_q = 2; n_q <= 7; ++n_q) {
            std::vector<cplx> v(std::size_t(1) << n_q);
            double norm = 0;
            for (cplx& x : v) {
                x = cplx(g(rng), g(rng));
                norm += std::norm(x);
            }
            classical_dwt_d4(v);
            double norm2 = 0;
            for (const cplx& x : v) norm2 += std::norm(x);
            CHECK(std::abs(norm2 - norm) < 1e-12 * norm);
        }
    }
    SUBCASE("fast transform agrees with the matrix") {
        std::mt19937 rng(59);
        std::normal_distribution<double> g;
        const int n_q = 4;
        const DenseMatrix m = classical_dwt_matrix(n_q);
        std::vector<cplx> v(16);
        for (cplx& x : v) x = cplx(g(rng), g(rng));
        const std::vector<cplx> want = m.apply(v);
        classical_dwt_d4(v);
        for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(v[i] - want[i]) < 1e-12);
    }
    SUBCASE("inverse transform undoes the forward one") {
        std::mt19937 rng(61);
        std::normal_distribution<double> g;
        std::vector<cplx> v(64), orig(64);
        for (std::size_t i = 0; i < 64; ++i) v[i] = orig[i] = cplx(g(rng), g(rng));
        classical_dwt_d4(v);
        classical_idwt_d4(v);
        for (std::size_t i = 0; i < 64; ++i) CHECK(std::abs(v[i] - orig[i]) < 1e-12);
    }
    SUBCASE("bad lengths throw") {
        std::vector<cplx> v(6);
        CHECK_THROWS(classical_dwt_d4(v));
        std::vector<cplx> w(2);
        CHECK_THROWS(classical_dwt_d4(w));
    }
}

TEST_CASE("shuffle circuit") {
    SUBCASE("n = 3: bit rotation on basis states") {
        // (a0 a1 a2) -> (a2 a0 a1): index 1 -> 4, index 0 -> 0
        const Circuit c = build_shuffle(3, 4, kAnc);
        DenseMatrix want(8);
        for (std::size_t j = 0; j < 8; ++j) {
            const std::size_t dest = (j >> 1) | ((j & 1) << 2);
            want(dest, j) = cplx(1);
        }
        CHECK(block_vs_reference(c, want) < 1e-12);
    }
    SUBCASE("direct-sum branch: indices above the block are untouched") {
        // n = 2 inside a 3-bit system: index 5 stays put
        const Circuit c = build_shuffle(2, 4, kAnc);
        StateVector s = StateVector::basis_state(4, 5);
        c.apply(s);
        CHECK(std::abs(s[5] - cplx(1)) < 1e-12);
    }
    SUBCASE("permutation maps basis states to basis states with phase +1") {
        const Circuit c = build_shuffle(3, 5, kAnc);
        for (std::size_t j = 0; j < 8; ++j) {
            StateVector s = StateVector::basis_state(5, j);
            c.apply(s);
            int hits = 0;
            for (std::uint64_t i = 0; i < s.size(); ++i) {
                if (std::abs(s[i]) > 1e-9) {
                    ++hits;
                    CHECK(std::abs(s[i] - cplx(1)) < 1e-12);
                }
            }
            CHECK(hits == 1);
        }
    }
    SUBCASE("n out of range throws") {
        CHECK_THROWS(build_shuffle(1, 4, kAnc));
        CHECK_THROWS(build_shuffle(4, 4, kAnc));
    }
}

TEST_CASE("bit reversal circuit") {
    SUBCASE("n = 3 mappings") {
        const Circuit c = build_bit_reversal(3, 4, kAnc);
        StateVector s = StateVector::basis_state(4, 1); // 001 -> 100
        c.apply(s);
        CHECK(std::abs(s[4] - cplx(1)) < 1e-12);
        StateVector p = StateVector::basis_state(4, 2); // palindrome 010
        c.apply(p);
        CHECK(std::abs(p[2] - cplx(1)) < 1e-12);
    }
    SUBCASE("applying twice is the identity on all basis states") {
        const Circuit c = build_bit_reversal(3, 4, kAnc);
        for (std::size_t j = 0; j < 8; ++j) {
            StateVector s = StateVector::basis_state(4, j);
            c.apply(s);
            c.apply(s);
            CHECK(std::abs(s[j] - cplx(1)) < 1e-12);
        }
    }
}

TEST_CASE("kernel circuit") {
    SUBCASE("n = 2 equals the classical 4x4 kernel") {
        const Circuit c = build_kernel(2, 3, kAnc);
        CHECK(block_vs_reference(c, classical_kernel_matrix(2)) < 1e-10);
    }
    SUBCASE("n = 3 matrix is unitary and real") {
        const Circuit c = build_kernel(3, 4, kAnc);
        const DenseMatrix m = circuit_to_matrix(c);
        CHECK(m.unitarity_error() < 1e-10);
        double max_imag = 0.0;
        for (std::size_t r = 0; r < m.size(); ++r)
            for (std::size_t col = 0; col < m.size(); ++col)
                max_imag = std::max(max_imag, std::abs(m(r, col).imag()));
        CHECK(max_imag < 1e-12);
        CHECK(block_vs_reference(c, classical_kernel_matrix(3)) < 1e-10);
    }
    SUBCASE("kernel followed by its adjoint is the identity on random states") {
        std::mt19937 rng(67);
        const Circuit c = build_kernel(3, 4, kAnc);
        StateVector s = testutil::random_state(4, rng);
        StateVector before = s;
        c.apply(s);
        c.adjoint().apply(s);
        CHECK(testutil::max_state_diff(before, s) < 1e-11);
    }
    SUBCASE("n < 2 throws") { CHECK_THROWS(build_kernel(1, 3, kAnc)); }
}

TEST_CASE("pyramidal transform circuit") {
    SUBCASE("n_q = 2 is the bare kernel") {
        const DenseMatrix qwt = circuit_to_matrix(build_qwt(2, 3, kAnc));
        const DenseMatrix ker = circuit_to_matrix(build_kernel(2, 3, kAnc));
        CHECK(DenseMatrix::max_abs_diff(qwt, ker) < 1e-12);
    }
    SUBCASE("matches the classical pyramid for n_q = 2..5") {
        for (int n_q = 2; n_q <= 5; ++n_q) {
            CAPTURE(n_q);
            const Circuit c = build_qwt(n_q, n_q + 1, kAnc);
            CHECK(block_vs_reference(c, classical_dwt_matrix(n_q)) < 1e-9);
        }
    }
    SUBCASE("every stage circuit is unitary on its own") {
        for (int n = 2; n <= 4; ++n) {
            CHECK(circuit_to_matrix(build_kernel(n, 5, kAnc)).unitarity_error() < 1e-10);
            CHECK(circuit_to_matrix(build_shuffle(n, 5, kAnc)).unitarity_error() < 1e-10);
            CHECK(circuit_to_matrix(build_bit_reversal(n, 5, kAnc)).unitarity_error() < 1e-10);
        }
    }
    SUBCASE("ancilla returns to |0> on product states") {
        std::mt19937 rng(71);
        const int n_q = 5;
        const Circuit c = build_qwt(n_q, n_q + 1, kAnc);
        StateVector sys = testutil::random_state(n_q, rng);
        StateVector full(n_q + 1);
        full[0] = cplx(0);
        for (std::uint64_t m = 0; m < sys.size(); ++m) full[m] = sys[m];
        c.apply(full);
        double anc1 = 0.0;
        for (std::uint64_t i = sys.size(); i < full.size(); ++i) anc1 += std::norm(full[i]);
        CHECK(anc1 < 1e-18);
    }
}
