#pragma once

#include <complex>

namespace ptdarboux {

using cdouble = std::complex<double>;

// z^mu with the principal logarithm. Restricted to Re z > 0: every base
// this library raises to a complex power lies on the vertical line
// Re z = 1/2 (or to its right), so the branch cut along (-inf, 0] is
// never approached and the result is continuous in z.
cdouble cpow_halfplane(cdouble z, cdouble mu);

// Gamma function for complex argument: Lanczos approximation with the
// reflection formula for Re z < 1/2. Relative error ~1e-13 on the
// ranges exercised here. Throws pole_error at non-positive integers.
cdouble complex_gamma(cdouble z);

// Generalized binomial coefficient Gamma(alpha+1) /
// (Gamma(beta+1) * Gamma(alpha-beta+1)). Throws pole_error when any
// gamma argument lands on a non-positive integer.
cdouble gen_binomial(cdouble alpha, cdouble beta);

// Binomial coefficient as a falling-factorial product,
// alpha*(alpha-1)*...*(alpha-k+1)/k!. Defined for every complex alpha;
// no gamma poles can occur, which matters when alpha depends on free
// complex parameters mid-sum.
cdouble falling_binomial(cdouble alpha, int k);

// Jacobi polynomial P_n^{a,b}(z) with complex parameters and argument,
// evaluated by the explicit finite sum
//   2^{-n} sum_m C(n+a, m) C(n+b, n-m) (z-1)^{n-m} (z+1)^m
// with both binomials as falling-factorial products.
cdouble jacobi(int n, cdouble a, cdouble b, cdouble z);

// d/dz P_n^{a,b}(z) = ((n+a+b+1)/2) * P_{n-1}^{a+1,b+1}(z); 0 for n = 0.
cdouble jacobi_deriv(int n, cdouble a, cdouble b, cdouble z);

// Gauss hypergeometric F(a, b; b; z) = (1-z)^{-a}. Requires
// Re(1-z) > 0 so the power stays on the principal branch.
cdouble hyp_f_abbz(cdouble a, cdouble z);

// Gauss hypergeometric F(a, a+1/2; 2a; z) =
// 2^{2a-1} (1-z)^{-1/2} [1 + (1-z)^{1/2}]^{1-2a}. Requires Re(1-z) > 0.
cdouble hyp_f_half(cdouble a, cdouble z);

// Direct Gauss series, used only as a test oracle for the two closed
// forms above. Requires |z| <= 0.9; terminates when the term magnitude
// stays below tol*|sum| for 3 consecutive terms; throws
// convergence_error after 10000 terms and pole_error when c is a
// non-positive integer.
cdouble hyp2f1_series(cdouble a, cdouble b, cdouble c, cdouble z, double tol);

} // namespace ptdarboux
