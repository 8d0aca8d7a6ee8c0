#include "ptdarboux/specialfn.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ptdarboux/errors.hpp"

namespace ptdarboux {

namespace {

bool is_nonpositive_integer(cdouble z) {
    return z.imag() == 0.0 && z.real() <= 0.0 &&
           z.real() == std::floor(z.real());
}

// Lanczos g = 7, 9-term coefficient set; ~1e-13 relative over the
// moderate arguments used here.
constexpr double lanczos_g = 7.0;
constexpr double lanczos_c[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

cdouble gamma_core(cdouble z) {
    // valid for Re z >= 1/2
    const cdouble zm1 = z - 1.0;
    cdouble x = lanczos_c[0];
    for (int i = 1; i < 9; ++i)
        x += lanczos_c[i] / (zm1 + static_cast<double>(i));
    const cdouble t = zm1 + lanczos_g + 0.5;
    const double sqrt_two_pi = 2.5066282746310002; // sqrt(2 pi)
    return sqrt_two_pi * std::pow(t, zm1 + 0.5) * std::exp(-t) * x;
}

} // namespace

cdouble cpow_halfplane(cdouble z, cdouble mu) {
    if (!(z.real() > 0.0))
        throw std::domain_error(
            "cpow_halfplane: base must lie in the open right half-plane");
    return std::exp(mu * std::log(z));
}

cdouble complex_gamma(cdouble z) {
    if (is_nonpositive_integer(z))
        throw pole_error("complex_gamma: pole at non-positive integer");
    if (z.real() < 0.5) {
        // reflection through sin(pi z)
        const double pi = std::numbers::pi;
        return pi / (std::sin(pi * z) * complex_gamma(1.0 - z));
    }
    return gamma_core(z);
}

cdouble gen_binomial(cdouble alpha, cdouble beta) {
    return complex_gamma(alpha + 1.0) /
           (complex_gamma(beta + 1.0) * complex_gamma(alpha - beta + 1.0));
}

cdouble falling_binomial(cdouble alpha, int k) {
    if (k < 0)
        throw std::invalid_argument("falling_binomial: k must be >= 0");
    cdouble result = 1.0;
    for (int j = 0; j < k; ++j)
        result *= (alpha - static_cast<double>(j)) / (j + 1.0);
    return result;
}

cdouble jacobi(int n, cdouble a, cdouble b, cdouble z) {
    if (n < 0)
        throw std::invalid_argument("jacobi: degree must be >= 0");
    const cdouble zm1 = z - 1.0;
    const cdouble zp1 = z + 1.0;
    cdouble sum = 0.0;
    for (int m = 0; m <= n; ++m) {
        cdouble term = falling_binomial(static_cast<double>(n) + a, m) *
                       falling_binomial(static_cast<double>(n) + b, n - m);
        for (int j = 0; j < n - m; ++j)
            term *= zm1;
        for (int j = 0; j < m; ++j)
            term *= zp1;
        sum += term;
    }
    return sum * std::ldexp(1.0, -n);
}

cdouble jacobi_deriv(int n, cdouble a, cdouble b, cdouble z) {
    if (n <= 0)
        return 0.0;
    return 0.5 * (static_cast<double>(n) + a + b + 1.0) *
           jacobi(n - 1, a + 1.0, b + 1.0, z);
}

cdouble hyp_f_abbz(cdouble a, cdouble z) {
    const cdouble w = 1.0 - z;
    if (!(w.real() > 0.0))
        throw std::domain_error("hyp_f_abbz: requires Re(1-z) > 0");
    return cpow_halfplane(w, -a);
}

cdouble hyp_f_half(cdouble a, cdouble z) {
    const cdouble w = 1.0 - z;
    if (!(w.real() > 0.0))
        throw std::domain_error("hyp_f_half: requires Re(1-z) > 0");
    // principal sqrt of a right-half-plane number has positive real
    // part, so 1 + sqrt(w) stays in the half-plane too
    const cdouble r = cpow_halfplane(w, 0.5);
    return cpow_halfplane(2.0, 2.0 * a - 1.0) / r *
           cpow_halfplane(1.0 + r, 1.0 - 2.0 * a);
}

cdouble hyp2f1_series(cdouble a, cdouble b, cdouble c, cdouble z,
                      double tol) {
    if (is_nonpositive_integer(c))
        throw pole_error("hyp2f1_series: c at non-positive integer");
    if (std::abs(z) > 0.9)
        throw std::domain_error("hyp2f1_series: requires |z| <= 0.9");
    constexpr int cap = 10000;
    cdouble sum = 1.0;
    cdouble term = 1.0;
    int small_run = 0;
    for (int k = 0; k < cap; ++k) {
        const double dk = static_cast<double>(k);
        term *= (a + dk) * (b + dk) / ((c + dk) * (dk + 1.0)) * z;
        sum += term;
        if (std::abs(term) <= tol * std::abs(sum)) {
            if (++small_run >= 3)
                return sum;
        } else {
            small_run = 0;
        }
    }
    throw convergence_error("hyp2f1_series: no convergence within term cap",
                            cap);
}

} // namespace ptdarboux
