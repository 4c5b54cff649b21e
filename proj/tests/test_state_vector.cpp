#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qwr/state_vector.hpp"
#include "test_util.hpp"

#include <cmath>
#include <random>

using namespace qwr;

TEST_CASE("identity gate leaves any state unchanged") {
    std::mt19937 rng(7);
    StateVector s = testutil::random_state(3, rng);
    StateVector before = s;
    s.apply_single_qubit(1, mat2_identity());
    CHECK(testutil::max_state_diff(before, s) == doctest::Approx(0.0));
}

TEST_CASE("wavelet rotation on |0> gives (sin, cos) column") {
    // C(theta0) with theta0 = pi/3 applied to (1, 0)
    const double theta = M_PI / 3.0;
    const Mat2 c0 = {cplx(std::sin(theta)), cplx(std::cos(theta)), cplx(std::cos(theta)),
                     cplx(-std::sin(theta))};
    StateVector s = StateVector::basis_state(1, 0);
    s.apply_single_qubit(0, c0);
    CHECK(s[0].real() == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-14));
    CHECK(s[1].real() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("not on the most significant qubit flips the high bit") {
    StateVector s = StateVector::basis_state(2, 0);
    const Mat2 x = {cplx(0), cplx(1), cplx(1), cplx(0)};
    s.apply_single_qubit(0, x);
    CHECK(std::abs(s[2] - cplx(1)) < 1e-15);
    CHECK(std::abs(s[0]) < 1e-15);
    CHECK(std::abs(s[1]) < 1e-15);
    CHECK(std::abs(s[3]) < 1e-15);
}

TEST_CASE("controlled phase") {
    SUBCASE("phi = 0 is the identity") {
        std::mt19937 rng(3);
        StateVector s = testutil::random_state(2, rng);
        StateVector before = s;
        s.apply_controlled_phase(0, 1, 0.0);
        CHECK(testutil::max_state_diff(before, s) == doctest::Approx(0.0));
    }
    SUBCASE("sign flip on |11> of the uniform state") {
        StateVector s(2);
        for (int i = 0; i < 4; ++i) s[i] = cplx(0.5);
        s.apply_controlled_phase(0, 1, M_PI);
        CHECK(std::abs(s[0] - cplx(0.5)) < 1e-15);
        CHECK(std::abs(s[1] - cplx(0.5)) < 1e-15);
        CHECK(std::abs(s[2] - cplx(0.5)) < 1e-15);
        CHECK(std::abs(s[3] - cplx(-0.5)) < 1e-15);
    }
    SUBCASE("phi then -phi is the identity") {
        std::mt19937 rng(5);
        StateVector s = testutil::random_state(4, rng);
        StateVector before = s;
        s.apply_controlled_phase(1, 3, 0.7321);
        s.apply_controlled_phase(1, 3, -0.7321);
        CHECK(testutil::max_state_diff(before, s) < 1e-14);
    }
    SUBCASE("equal indices throw") {
        StateVector s(2);
        CHECK_THROWS(s.apply_controlled_phase(1, 1, 0.5));
    }
}

TEST_CASE("toffoli") {
    SUBCASE("|110> -> |111>") {
        StateVector s = StateVector::basis_state(3, 0b110);
        s.apply_toffoli(0, 1, 2);
        CHECK(std::abs(s[0b111] - cplx(1)) < 1e-15);
    }
    SUBCASE("|100> unchanged") {
        StateVector s = StateVector::basis_state(3, 0b100);
        s.apply_toffoli(0, 1, 2);
        CHECK(std::abs(s[0b100] - cplx(1)) < 1e-15);
    }
    SUBCASE("involution") {
        std::mt19937 rng(11);
        StateVector s = testutil::random_state(4, rng);
        StateVector before = s;
        s.apply_toffoli(3, 1, 0);
        s.apply_toffoli(3, 1, 0);
        CHECK(testutil::max_state_diff(before, s) < 1e-14);
    }
    SUBCASE("duplicate indices throw") {
        StateVector s(3);
        CHECK_THROWS(s.apply_toffoli(0, 0, 2));
    }
}

TEST_CASE("swap and controlled-not") {
    SUBCASE("swap |10> -> |01>") {
        StateVector s = StateVector::basis_state(2, 0b10);
        s.apply_swap(0, 1);
        CHECK(std::abs(s[0b01] - cplx(1)) < 1e-15);
    }
    SUBCASE("swap equals three alternating cnots on every basis state") {
        for (std::uint64_t j = 0; j < 4; ++j) {
            StateVector a = StateVector::basis_state(2, j);
            StateVector b = a;
            a.apply_swap(0, 1);
            b.apply_controlled_not(0, 1);
            b.apply_controlled_not(1, 0);
            b.apply_controlled_not(0, 1);
            CHECK(testutil::max_state_diff(a, b) < 1e-15);
        }
    }
    SUBCASE("cnot with clear control does nothing") {
        StateVector s = StateVector::basis_state(2, 0b01); // control bit 0 clear
        s.apply_controlled_not(0, 1);
        CHECK(std::abs(s[0b01] - cplx(1)) < 1e-15);
    }
}

TEST_CASE("inner product") {
    std::mt19937 rng(13);
    SUBCASE("<psi|psi> = 1") {
        StateVector s = testutil::random_state(5, rng);
        CHECK(std::abs(inner_product(s, s) - cplx(1)) < 1e-13);
    }
    SUBCASE("distinct basis states are orthogonal") {
        StateVector a = StateVector::basis_state(3, 0);
        StateVector b = StateVector::basis_state(3, 1);
        CHECK(std::abs(inner_product(a, b)) == 0.0);
    }
    SUBCASE("direct sum") {
        StateVector a = StateVector::basis_state(1, 0);
        StateVector b(1);
        b[0] = b[1] = cplx(1.0 / std::sqrt(2.0));
        CHECK(std::abs(inner_product(a, b) - cplx(1.0 / std::sqrt(2.0))) < 1e-15);
    }
    SUBCASE("dimension mismatch throws") {
        StateVector a(2), b(3);
        CHECK_THROWS(inner_product(a, b));
    }
}

TEST_CASE("probability distribution") {
    SUBCASE("basis state is a delta") {
        StateVector s = StateVector::basis_state(3, 5);
        const auto p = s.probability_distribution();
        for (std::size_t i = 0; i < p.size(); ++i) CHECK(p[i] == doctest::Approx(i == 5 ? 1 : 0));
    }
    SUBCASE("uniform superposition") {
        StateVector s(3);
        for (int i = 0; i < 8; ++i) s[i] = cplx(1.0 / std::sqrt(8.0));
        for (double p : s.probability_distribution()) CHECK(p == doctest::Approx(0.125));
    }
    SUBCASE("complex amplitudes") {
        StateVector s(1);
        s[0] = cplx(1.0 / std::sqrt(2.0), 0);
        s[1] = cplx(0, 1.0 / std::sqrt(2.0));
        const auto p = s.probability_distribution();
        CHECK(p[0] == doctest::Approx(0.5));
        CHECK(p[1] == doctest::Approx(0.5));
    }
}

TEST_CASE("norm preservation over a long random gate sequence") {
    std::mt19937 rng(17);
    StateVector s = testutil::random_state(6, rng);
    std::uniform_int_distribution<int> pick(0, 5);
    std::uniform_real_distribution<double> ang(-M_PI, M_PI);
    const int gates = 500;
    for (int i = 0; i < gates; ++i) {
        int a = pick(rng), b = pick(rng), c = pick(rng);
        while (b == a) b = pick(rng);
        while (c == a || c == b) c = pick(rng);
        switch (i % 5) {
            case 0: s.apply_single_qubit(a, testutil::random_unitary2(rng)); break;
            case 1: s.apply_controlled_phase(a, b, ang(rng)); break;
            case 2: s.apply_controlled_not(a, b); break;
            case 3: s.apply_toffoli(a, b, c); break;
            case 4: s.apply_swap(a, b); break;
        }
    }
    CHECK(std::abs(s.norm_sq() - 1.0) < gates * 1e-13);
}

TEST_CASE("gate application is linear") {
    std::mt19937 rng(19);
    StateVector a = testutil::random_state(3, rng);
    StateVector b = testutil::random_state(3, rng);
    const cplx alpha(0.3, 0.4), beta(-0.2, 0.85);
    const Mat2 u = testutil::random_unitary2(rng);
    StateVector mix(3);
    for (int i = 0; i < 8; ++i) mix[i] = alpha * a[i] + beta * b[i];
    mix.apply_single_qubit(1, u);
    a.apply_single_qubit(1, u);
    b.apply_single_qubit(1, u);
    for (int i = 0; i < 8; ++i)
        CHECK(std::abs(mix[i] - (alpha * a[i] + beta * b[i])) < 1e-12);
}

TEST_CASE("gate followed by its adjoint restores the state") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        StateVector s = testutil::random_state(4, rng);
        StateVector before = s;
        const Mat2 u = testutil::random_unitary2(rng);
        s.apply_single_qubit(2, u);
        s.apply_single_qubit(2, mat2_adjoint(u));
        CHECK(testutil::max_state_diff(before, s) < 1e-12);
    }
}

TEST_CASE("out of range qubit index throws") {
    StateVector s(2);
    CHECK_THROWS(s.apply_single_qubit(2, mat2_identity()));
    CHECK_THROWS(s.apply_single_qubit(-1, mat2_identity()));
}
