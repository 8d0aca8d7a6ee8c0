#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ptdarboux/errors.hpp"
#include "ptdarboux/specialfn.hpp"

using ptdarboux::cdouble;

namespace {

double rel_err(cdouble got, cdouble want) {
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

// independent oracle: the classical three-term recurrence in n
cdouble jacobi_recurrence(int n, cdouble a, cdouble b, cdouble z) {
    if (n == 0)
        return 1.0;
    cdouble prev = 1.0;
    cdouble cur = (a + 1.0) + (a + b + 2.0) * (z - 1.0) / 2.0;
    for (int k = 2; k <= n; ++k) {
        const double kk = k;
        const cdouble c1 =
            2.0 * kk * (kk + a + b) * (2.0 * kk + a + b - 2.0);
        const cdouble c2 = (2.0 * kk + a + b - 1.0) *
                           ((2.0 * kk + a + b) * (2.0 * kk + a + b - 2.0) * z +
                            a * a - b * b);
        const cdouble c3 =
            2.0 * (kk + a - 1.0) * (kk + b - 1.0) * (2.0 * kk + a + b);
        const cdouble next = (c2 * cur - c3 * prev) / c1;
        prev = cur;
        cur = next;
    }
    return cur;
}

std::mt19937 rng(20260815);

double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

cdouble random_complex(double lo, double hi) {
    return {uniform(lo, hi), uniform(lo, hi)};
}

} // namespace

TEST_CASE("principal-branch power on the right half-plane") {
    CHECK(std::abs(ptdarboux::cpow_halfplane(1.0, cdouble(2.3, -1.1)) - 1.0) <
          1e-15);
    CHECK(std::abs(ptdarboux::cpow_halfplane(cdouble(0.7, 3.0), 0.0) - 1.0) <
          1e-15);

    // base (1 - i sinh 1)/2 raised to -5/2, against a 20-digit
    // arbitrary-precision evaluation
    const cdouble base(0.5, -0.5 * std::sinh(1.0));
    const cdouble want(-1.0698028924054386, 1.5853111958458794);
    CHECK(rel_err(ptdarboux::cpow_halfplane(base, -2.5), want) < 1e-14);

    CHECK_THROWS_AS(ptdarboux::cpow_halfplane(cdouble(-1.0, 0.5), 2.0),
                    std::domain_error);
    CHECK_THROWS_AS(ptdarboux::cpow_halfplane(cdouble(0.0, 1.0), 2.0),
                    std::domain_error);
}

TEST_CASE("gamma at classical points") {
    CHECK(rel_err(ptdarboux::complex_gamma(1.0), 1.0) < 1e-13);
    CHECK(rel_err(ptdarboux::complex_gamma(5.0), 24.0) < 1e-13);
    CHECK(rel_err(ptdarboux::complex_gamma(0.5),
                  std::sqrt(std::numbers::pi)) < 1e-13);
}

TEST_CASE("gamma through the reflection formula") {
    CHECK(rel_err(ptdarboux::complex_gamma(-4.5), -0.060019601300504246) <
          1e-11);
}

TEST_CASE("gamma against frozen high-precision values") {
    struct Sample {
        cdouble z, want;
    };
    const Sample samples[] = {
        {{2.5, 1.5}, {0.30993622584074135, 0.73408427362148134}},
        {{-2.5, 0.5}, {-0.33387520352243234, -0.20645730796360841}},
        {{0.5, -3.0}, {0.021445670552430646, -0.0068653648372616779}},
        {{-6.3, -0.7}, {0.00021492434874099306, 0.00052350050209263617}},
    };
    for (const Sample& s : samples)
        CHECK(rel_err(ptdarboux::complex_gamma(s.z), s.want) < 1e-10);
}

TEST_CASE("gamma poles are reported distinctly") {
    CHECK_THROWS_AS(ptdarboux::complex_gamma(0.0), ptdarboux::pole_error);
    CHECK_THROWS_AS(ptdarboux::complex_gamma(-1.0), ptdarboux::pole_error);
    CHECK_THROWS_AS(ptdarboux::complex_gamma(-7.0), ptdarboux::pole_error);
}

TEST_CASE("gamma functional equation on random samples") {
    for (int trial = 0; trial < 50; ++trial) {
        cdouble z = random_complex(-8.0, 8.0);
        // keep away from the pole line
        if (std::abs(z.imag()) < 0.1)
            z += cdouble(0.0, 0.2);
        const cdouble lhs = ptdarboux::complex_gamma(z + 1.0);
        const cdouble rhs = z * ptdarboux::complex_gamma(z);
        CHECK(rel_err(lhs, rhs) < 1e-9);
    }
}

TEST_CASE("generalized binomial") {
    CHECK(rel_err(ptdarboux::gen_binomial(4.0, 2.0), 6.0) < 1e-12);
    CHECK(rel_err(ptdarboux::gen_binomial(cdouble(3.0, 1.0),
                                          cdouble(3.0, 1.0)),
                  1.0) < 1e-12);
    // the ground-level prefactor for the deep worked example
    CHECK(rel_err(ptdarboux::gen_binomial(0.0, -4.5),
                  0.070735530263064594) < 1e-11);
    // consistency with the gamma building blocks
    const cdouble via_gamma =
        1.0 / (ptdarboux::complex_gamma(-3.5) * ptdarboux::complex_gamma(5.5));
    CHECK(rel_err(ptdarboux::gen_binomial(0.0, -4.5), via_gamma) < 1e-12);
    CHECK_THROWS_AS(ptdarboux::gen_binomial(-1.0, 0.5),
                    ptdarboux::pole_error);
}

TEST_CASE("falling-factorial binomial") {
    CHECK(std::abs(ptdarboux::falling_binomial(cdouble(1.7, -2.2), 0) -
                   1.0) < 1e-15);
    CHECK(rel_err(ptdarboux::falling_binomial(3.0, 2), 3.0) < 1e-14);
    CHECK(rel_err(ptdarboux::falling_binomial(-2.5, 3), -6.5625) < 1e-14);
    // matches the integer binomial where both exist
    for (int n = 0; n <= 10; ++n) {
        double binom = 1.0;
        for (int k = 0; k <= n; ++k) {
            CHECK(rel_err(ptdarboux::falling_binomial(n, k), binom) < 1e-12);
            binom = binom * (n - k) / (k + 1);
        }
    }
    // never a pole, even at negative integer upper index
    CHECK(rel_err(ptdarboux::falling_binomial(-1.0, 2), 1.0) < 1e-14);
}

TEST_CASE("jacobi explicit sum: low degrees") {
    const cdouble a(1.3, -0.4), b(-2.1, 0.9), z(0.3, 1.1);
    CHECK(std::abs(ptdarboux::jacobi(0, a, b, z) - 1.0) < 1e-15);
    const cdouble n1 = (a + 1.0) + (a + b + 2.0) * (z - 1.0) / 2.0;
    CHECK(rel_err(ptdarboux::jacobi(1, a, b, z), n1) < 1e-14);
}

TEST_CASE("jacobi explicit sum vs frozen oracle") {
    const cdouble z(0.0, std::sinh(0.7));
    const cdouble want(-0.31881433708707479, 0.082757104512479209);
    CHECK(rel_err(ptdarboux::jacobi(4, -5.5, -4.5, z), want) < 1e-10);
}

TEST_CASE("jacobi explicit sum vs three-term recurrence") {
    for (int trial = 0; trial < 50; ++trial) {
        const int n = std::uniform_int_distribution<int>(0, 8)(rng);
        const cdouble a = random_complex(-3.0, 3.0);
        const cdouble b = random_complex(-3.0, 3.0);
        cdouble z = random_complex(-2.1, 2.1); // |z| <= 3
        const cdouble got = ptdarboux::jacobi(n, a, b, z);
        const cdouble want = jacobi_recurrence(n, a, b, z);
        CHECK(rel_err(got, want) < 1e-9);
    }
}

TEST_CASE("jacobi parity symmetry") {
    for (int trial = 0; trial < 30; ++trial) {
        const int n = std::uniform_int_distribution<int>(0, 7)(rng);
        const cdouble a = random_complex(-2.5, 2.5);
        const cdouble b = random_complex(-2.5, 2.5);
        const cdouble z = random_complex(-2.0, 2.0);
        const cdouble lhs = ptdarboux::jacobi(n, a, b, -z);
        const cdouble rhs =
            (n % 2 == 0 ? 1.0 : -1.0) * ptdarboux::jacobi(n, b, a, z);
        CHECK(rel_err(lhs, rhs) < 1e-10);
    }
}

TEST_CASE("jacobi derivative identity") {
    const cdouble a(0.7, -1.1), b(2.2, 0.3), z(0.4, 0.8);
    CHECK(std::abs(ptdarboux::jacobi_deriv(0, a, b, z)) == 0.0);
    CHECK(rel_err(ptdarboux::jacobi_deriv(1, a, b, z), (a + b + 2.0) / 2.0) <
          1e-13);
    // central finite-difference oracle
    const double h = 1e-5;
    for (int trial = 0; trial < 20; ++trial) {
        const int n = std::uniform_int_distribution<int>(1, 7)(rng);
        const cdouble aa = random_complex(-2.5, 2.5);
        const cdouble bb = random_complex(-2.5, 2.5);
        const cdouble zz = random_complex(-1.5, 1.5);
        const cdouble fd = (ptdarboux::jacobi(n, aa, bb, zz + h) -
                            ptdarboux::jacobi(n, aa, bb, zz - h)) /
                           (2.0 * h);
        const cdouble an = ptdarboux::jacobi_deriv(n, aa, bb, zz);
        CHECK(std::abs(an - fd) <
              1e-6 * std::max(1.0, std::abs(an)));
    }
}

TEST_CASE("degenerate-parameter hypergeometric closed form") {
    CHECK(std::abs(ptdarboux::hyp_f_abbz(cdouble(1.2, -0.7), 0.0) - 1.0) <
          1e-15);
    CHECK(rel_err(ptdarboux::hyp_f_abbz(1.0, 0.5), 2.0) < 1e-14);
    CHECK_THROWS_AS(ptdarboux::hyp_f_abbz(1.0, cdouble(1.5, 0.0)),
                    std::domain_error);
    for (int trial = 0; trial < 100; ++trial) {
        const cdouble a = random_complex(-2.0, 2.0);
        const cdouble b = random_complex(0.5, 3.0); // any b; series needs c=b off poles
        cdouble z = random_complex(-0.6, 0.6);
        if (!(1.0 - z.real() > 0.0))
            z = -z;
        const cdouble closed = ptdarboux::hyp_f_abbz(a, z);
        const cdouble series = ptdarboux::hyp2f1_series(a, b, b, z, 1e-14);
        CHECK(rel_err(closed, series) < 1e-9);
    }
}

TEST_CASE("quadratic-parameter hypergeometric closed form") {
    CHECK(std::abs(ptdarboux::hyp_f_half(cdouble(0.8, 1.4), 0.0) - 1.0) <
          1e-13);
    const cdouble z(0.3, 0.4);
    CHECK(rel_err(ptdarboux::hyp_f_half(0.5, z),
                  1.0 / std::sqrt(1.0 - z)) < 1e-13);
    for (int trial = 0; trial < 100; ++trial) {
        // keep 2a away from non-positive integers for the series oracle
        const cdouble a =
            cdouble(uniform(0.3, 2.5), uniform(0.05, 1.5));
        cdouble z = random_complex(-0.6, 0.6);
        if (!(1.0 - z.real() > 0.0))
            z = -z;
        const cdouble closed = ptdarboux::hyp_f_half(a, z);
        const cdouble series =
            ptdarboux::hyp2f1_series(a, a + 0.5, 2.0 * a, z, 1e-14);
        CHECK(rel_err(closed, series) < 1e-9);
    }
}

TEST_CASE("series oracle basics") {
    CHECK(std::abs(ptdarboux::hyp2f1_series(cdouble(1.1, 0.5),
                                            cdouble(-0.3, 1.0),
                                            cdouble(2.5, -0.2), 0.0,
                                            1e-14) -
                   1.0) < 1e-15);
    // F(1,1;2;z) = -log(1-z)/z
    const cdouble got = ptdarboux::hyp2f1_series(1.0, 1.0, 2.0, 0.5, 1e-14);
    CHECK(rel_err(got, 2.0 * std::log(2.0)) < 1e-12);
    CHECK_THROWS_AS(
        ptdarboux::hyp2f1_series(1.0, 1.0, 2.0, cdouble(0.95, 0.0), 1e-14),
        std::domain_error);
    CHECK_THROWS_AS(ptdarboux::hyp2f1_series(1.0, 1.0, -3.0, 0.5, 1e-14),
                    ptdarboux::pole_error);
    // slow but convergent near the disc edge
    CHECK(std::isfinite(std::abs(
        ptdarboux::hyp2f1_series(0.7, 1.3, 2.1, cdouble(0.88, 0.1), 1e-12))));
}
