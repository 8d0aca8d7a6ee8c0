#pragma once

#include <utility>
#include <vector>

#include "grid.hpp"
#include "specialfn.hpp"

namespace ptdarboux {

// The complex PT-invariant Scarf II potential
//   V(x) = -v1 sech^2 x - i v2 sech x tanh x,  v1 > 0,
// with derived shape parameters s = sqrt(v1+v2+1/4), t = sqrt(v1-v2+1/4).
// Each radicand is taken with its principal square root, so s and t are
// real when possible and otherwise purely imaginary with non-negative
// imaginary part.
struct ScarfParams {
    double v1 = 0.0;
    double v2 = 0.0;
    cdouble s;
    cdouble t;
};

ScarfParams make_params(double v1, double v2);

enum class Regime { UnbrokenPT, BrokenPT };

// Branch of the quadratic for the second exponent parameter q.
enum class QBranch { plus, minus };

struct PQPair {
    cdouble p;
    cdouble q;
    QBranch q_branch = QBranch::plus;
};

// UnbrokenPT iff |v2| <= v1 + 1/4; the boundary counts as unbroken
// (t = 0, all energies real).
Regime classify(const ScarfParams& params);

std::pair<cdouble, cdouble> shape_params(const ScarfParams& params);

// Exponent parameters p = -1/4 + s/2 (only the positive root of the
// p-quadratic yields decaying states) and q = -1/4 +/- t/2 per branch.
// Unbroken regime only.
PQPair pq(const ScarfParams& params, QBranch q_branch);

cdouble potential(const ScarfParams& params, double x);

// Exact bound spectrum E_n = -(n + 1/2 - (s+t)/2)^2 for integer
// n strictly below (s+t-1)/2; strictly increasing and negative.
// Unbroken regime only; empty when (s+t-1)/2 <= 0.
std::vector<double> spectrum(const ScarfParams& params);

// Analytic continuation of the bound-state formula to complex t,
// evaluated on both signs of t. In the broken regime the two branches
// are exact complex conjugates, so the result is closed under
// conjugation; at the regime boundary (t = 0) the pairs degenerate to
// coinciding real values. Levels are interleaved (+ branch, - branch)
// per index n.
std::vector<cdouble> broken_spectrum(const ScarfParams& params);

// Unnormalized bound eigenfunction
//   phi_n(x) = C * zm^{-p} * zp^{-q} * P_n^{-2p-1/2, -2q-1/2}(i sinh x),
// zm = (1 - i sinh x)/2, zp = (1 + i sinh x)/2, with C the generalized
// binomial (n over n-2p-1/2). Physical bound states use the plus
// q-branch. Unbroken regime only; throws std::out_of_range when n is
// not below the level count.
cdouble eigenfunction(const ScarfParams& params, QBranch q_branch, int n,
                      double x);

// Analytic derivative of eigenfunction() (power rule on the two complex
// powers plus the polynomial derivative); needed to apply first-order
// intertwiners pointwise.
cdouble eigenfunction_deriv(const ScarfParams& params, QBranch q_branch,
                            int n, double x);

// True iff max_i |conj(f(-x_i)) - f(x_i)| <= tol. The grid must be
// symmetric about 0 and match the sample count.
bool is_pt_symmetric(const Grid& grid, const std::vector<cdouble>& samples,
                     double tol);

// Number of bound levels (the n < (s+t-1)/2 count). Unbroken regime.
int level_count(const ScarfParams& params);

} // namespace ptdarboux
