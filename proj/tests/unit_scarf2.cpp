#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ptdarboux/scarf2.hpp"

using ptdarboux::cdouble;
using ptdarboux::QBranch;
using ptdarboux::Regime;

namespace {

std::mt19937 rng(77001);

double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// random couplings inside the unbroken region
ptdarboux::ScarfParams random_unbroken() {
    const double v1 = uniform(0.5, 40.0);
    const double v2 = uniform(-(v1 + 0.25), v1 + 0.25);
    return ptdarboux::make_params(v1, v2);
}

} // namespace

TEST_CASE("parameter validation and derived shape values") {
    CHECK_THROWS_AS(ptdarboux::make_params(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ptdarboux::make_params(-3.0, 1.0), std::invalid_argument);

    const auto deep = ptdarboux::make_params(25.0, 5.0);
    CHECK(deep.s == cdouble(5.5, 0.0));
    CHECK(deep.t == cdouble(4.5, 0.0));

    const auto shallow = ptdarboux::make_params(16.0, 4.0);
    CHECK(shallow.s == cdouble(4.5, 0.0));
    CHECK(shallow.t == cdouble(3.5, 0.0));

    const auto symmetric = ptdarboux::make_params(7.3, 0.0);
    CHECK(symmetric.s == symmetric.t);

    const auto [s, t] = ptdarboux::shape_params(deep);
    CHECK(s == deep.s);
    CHECK(t == deep.t);
}

TEST_CASE("shape identities hold to machine precision") {
    for (int trial = 0; trial < 100; ++trial) {
        const double v1 = uniform(0.1, 50.0);
        const double v2 = uniform(-60.0, 60.0);
        const auto params = ptdarboux::make_params(v1, v2);
        const cdouble s2 = params.s * params.s;
        const cdouble t2 = params.t * params.t;
        CHECK(std::abs(s2 - t2 - 2.0 * v2) <=
              1e-12 * std::max(1.0, std::abs(2.0 * v2)));
        CHECK(std::abs(s2 + t2 - (2.0 * v1 + 0.5)) <=
              1e-12 * std::max(1.0, std::abs(2.0 * v1 + 0.5)));
    }
}

TEST_CASE("regime classification") {
    CHECK(ptdarboux::classify(ptdarboux::make_params(25.0, 5.0)) ==
          Regime::UnbrokenPT);
    // exact boundary counts as unbroken
    CHECK(ptdarboux::classify(ptdarboux::make_params(0.75, 1.0)) ==
          Regime::UnbrokenPT);
    CHECK(ptdarboux::classify(ptdarboux::make_params(6.0, 6.5)) ==
          Regime::BrokenPT);
    CHECK(ptdarboux::classify(ptdarboux::make_params(6.0, -6.5)) ==
          Regime::BrokenPT);
}

TEST_CASE("exponent parameters per branch") {
    const auto params = ptdarboux::make_params(25.0, 5.0);
    const auto plus = ptdarboux::pq(params, QBranch::plus);
    CHECK(plus.p == cdouble(2.5, 0.0));
    CHECK(plus.q == cdouble(2.0, 0.0));
    const auto minus = ptdarboux::pq(params, QBranch::minus);
    CHECK(minus.p == cdouble(2.5, 0.0));
    CHECK(minus.q == cdouble(-2.5, 0.0));

    // equal couplings sit on t = 1/2, so the minus branch lands on -1/2
    const auto equal = ptdarboux::make_params(12.5, 12.5);
    CHECK(ptdarboux::pq(equal, QBranch::minus).q == cdouble(-0.5, 0.0));

    CHECK_THROWS_AS(
        ptdarboux::pq(ptdarboux::make_params(6.0, 6.5), QBranch::plus),
        std::domain_error);
}

TEST_CASE("potential values and symmetry") {
    const auto params = ptdarboux::make_params(25.0, 5.0);
    CHECK(ptdarboux::potential(params, 0.0) == cdouble(-25.0, 0.0));
    CHECK(std::abs(ptdarboux::potential(params, 20.0)) < 1e-7);
    CHECK(std::abs(ptdarboux::potential(params, -20.0)) < 1e-7);
    CHECK(std::abs(ptdarboux::potential(params, 40.0)) < 1e-15);
    // conj(V(-x)) == V(x), exactly: cosh is even and tanh odd in
    // floating point
    for (int i = 0; i <= 200; ++i) {
        const double x = -10.0 + 0.1 * i;
        const cdouble diff = std::conj(ptdarboux::potential(params, -x)) -
                             ptdarboux::potential(params, x);
        CHECK(std::abs(diff) == 0.0);
    }
}

TEST_CASE("exact bound spectra of the worked couplings") {
    const std::vector<double> deep =
        ptdarboux::spectrum(ptdarboux::make_params(25.0, 5.0));
    REQUIRE(deep.size() == 5);
    CHECK(deep[0] == -81.0 / 4.0);
    CHECK(deep[1] == -49.0 / 4.0);
    CHECK(deep[2] == -25.0 / 4.0);
    CHECK(deep[3] == -9.0 / 4.0);
    CHECK(deep[4] == -1.0 / 4.0);

    const std::vector<double> shallow =
        ptdarboux::spectrum(ptdarboux::make_params(16.0, 4.0));
    REQUIRE(shallow.size() == 4);
    CHECK(shallow[0] == -49.0 / 4.0);
    CHECK(shallow[1] == -25.0 / 4.0);
    CHECK(shallow[2] == -9.0 / 4.0);
    CHECK(shallow[3] == -1.0 / 4.0);
}

TEST_CASE("level count edge cases") {
    // s + t <= 1 supports no bound level (only reachable off v2 = 0)
    const auto empty = ptdarboux::make_params(0.1, 0.35);
    CHECK(ptdarboux::spectrum(empty).empty());
    CHECK(ptdarboux::level_count(empty) == 0);

    CHECK_THROWS_AS(ptdarboux::spectrum(ptdarboux::make_params(6.0, 6.5)),
                    std::domain_error);
}

TEST_CASE("spectrum is increasing, negative, and correctly counted") {
    for (int trial = 0; trial < 60; ++trial) {
        const auto params = random_unbroken();
        const auto energies = ptdarboux::spectrum(params);
        const double bound =
            (params.s.real() + params.t.real() - 1.0) / 2.0;
        int expected = 0;
        while (expected < bound)
            ++expected;
        CHECK(static_cast<int>(energies.size()) == expected);
        for (size_t i = 0; i < energies.size(); ++i) {
            CHECK(energies[i] < 0.0);
            if (i > 0)
                CHECK(energies[i] > energies[i - 1]);
        }
    }
}

TEST_CASE("analytically continued spectrum in the broken regime") {
    const auto params = ptdarboux::make_params(6.0, 6.5);
    const auto energies = ptdarboux::broken_spectrum(params);
    REQUIRE(energies.size() == 4);
    // frozen closed-form values (s = sqrt(12.75), t = i/2)
    const cdouble e0(-1.5896428928642875, -0.6426785535678562);
    const cdouble e1(-0.0189286785928625, -0.1426785535678562);
    CHECK(std::abs(energies[0] - e0) < 1e-14);
    CHECK(std::abs(energies[1] - std::conj(e0)) < 1e-14);
    CHECK(std::abs(energies[2] - e1) < 1e-14);
    CHECK(std::abs(energies[3] - std::conj(e1)) < 1e-14);
    // closure under conjugation is exact, not approximate
    CHECK(energies[1] == std::conj(energies[0]));
    CHECK(energies[3] == std::conj(energies[2]));
}

TEST_CASE("broken-regime closure for random couplings") {
    for (int trial = 0; trial < 40; ++trial) {
        const double v1 = uniform(0.5, 20.0);
        const double v2 =
            (trial % 2 == 0 ? 1.0 : -1.0) * (v1 + 0.25 + uniform(0.1, 10.0));
        const auto energies =
            ptdarboux::broken_spectrum(ptdarboux::make_params(v1, v2));
        for (const cdouble& e : energies) {
            bool found = false;
            for (const cdouble& other : energies)
                if (other == std::conj(e))
                    found = true;
            CHECK(found);
        }
    }
}

TEST_CASE("boundary couplings degenerate to coinciding real pairs") {
    // exactly representable boundary couplings: |v2| = v1 + 1/4
    const auto params = ptdarboux::make_params(0.75, 1.0);
    CHECK(params.t == cdouble(0.0, 0.0));
    const auto energies = ptdarboux::broken_spectrum(params);
    REQUIRE(energies.size() % 2 == 0);
    for (size_t i = 0; i + 1 < energies.size(); i += 2) {
        CHECK(energies[i].imag() == 0.0);
        CHECK(energies[i] == energies[i + 1]);
    }
}

TEST_CASE("bound states decay and validate their index") {
    const auto params = ptdarboux::make_params(25.0, 5.0);
    for (int n = 0; n < 5; ++n) {
        const double mid =
            std::abs(ptdarboux::eigenfunction(params, QBranch::plus, n, 0.0));
        const double far = std::abs(
            ptdarboux::eigenfunction(params, QBranch::plus, n, 20.0));
        const double far_neg = std::abs(
            ptdarboux::eigenfunction(params, QBranch::plus, n, -20.0));
        CHECK(far < 1e-3 * mid);
        CHECK(far_neg < 1e-3 * mid);
    }
    CHECK_THROWS_AS(ptdarboux::eigenfunction(params, QBranch::plus, 5, 0.0),
                    std::out_of_range);
    CHECK_THROWS_AS(ptdarboux::eigenfunction(params, QBranch::plus, -1, 0.0),
                    std::out_of_range);
}

TEST_CASE("ground state reduces to the bare product of powers") {
    const auto params = ptdarboux::make_params(25.0, 5.0);
    const auto pqv = ptdarboux::pq(params, QBranch::plus);
    for (double x : {-3.0, -0.7, 0.0, 1.1, 4.2}) {
        const cdouble zm(0.5, -0.5 * std::sinh(x));
        const cdouble zp(0.5, 0.5 * std::sinh(x));
        const cdouble bare = ptdarboux::cpow_halfplane(zm, -pqv.p) *
                             ptdarboux::cpow_halfplane(zp, -pqv.q);
        const cdouble full =
            ptdarboux::eigenfunction(params, QBranch::plus, 0, x);
        // same shape; only the constant prefactor differs
        const cdouble ratio = full / bare;
        const cdouble ratio0 =
            ptdarboux::eigenfunction(params, QBranch::plus, 0, 0.0) /
            ptdarboux::cpow_halfplane(cdouble(0.5, 0.0), -pqv.p - pqv.q);
        CHECK(std::abs(ratio - ratio0) < 1e-12 * std::abs(ratio0));
    }
}

TEST_CASE("analytic eigenfunction derivative matches finite differences") {
    const auto params = ptdarboux::make_params(25.0, 5.0);
    const double h = 1e-5;
    for (int n = 0; n < 5; ++n) {
        for (int i = 0; i < 40; ++i) {
            const double x = uniform(-4.0, 4.0);
            const cdouble fd =
                (ptdarboux::eigenfunction(params, QBranch::plus, n, x + h) -
                 ptdarboux::eigenfunction(params, QBranch::plus, n, x - h)) /
                (2.0 * h);
            const cdouble an =
                ptdarboux::eigenfunction_deriv(params, QBranch::plus, n, x);
            CHECK(std::abs(an - fd) < 1e-6 * std::max(1.0, std::abs(an)));
        }
    }
}

TEST_CASE("sampled reflection symmetry detector") {
    const auto grid = ptdarboux::make_grid(10.0, 501);
    const auto params = ptdarboux::make_params(25.0, 5.0);
    std::vector<cdouble> v_samples(grid.N), odd_real(grid.N);
    for (int i = 0; i < grid.N; ++i) {
        v_samples[i] = ptdarboux::potential(params, grid.nodes[i]);
        odd_real[i] = grid.nodes[i];
    }
    CHECK(ptdarboux::is_pt_symmetric(grid, v_samples, 1e-12));
    CHECK_FALSE(ptdarboux::is_pt_symmetric(grid, odd_real, 1e-12));

    // an off-center grid is rejected
    ptdarboux::Grid shifted = grid;
    for (double& x : shifted.nodes)
        x += 0.5;
    CHECK_THROWS_AS(ptdarboux::is_pt_symmetric(shifted, v_samples, 1e-12),
                    std::invalid_argument);

    std::vector<cdouble> short_samples(grid.N - 1);
    CHECK_THROWS_AS(ptdarboux::is_pt_symmetric(grid, short_samples, 1e-12),
                    std::invalid_argument);
}
