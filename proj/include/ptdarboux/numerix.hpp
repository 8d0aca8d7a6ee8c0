#pragma once

#include <functional>
#include <vector>

#include "grid.hpp"
#include "specialfn.hpp"

namespace ptdarboux {

// -d^2/dx^2 + V(x) discretized with the 3-point stencil and hard-wall
// (Dirichlet) ends: diag_i = 2/h^2 + V(x_i), constant off-diagonal
// -1/h^2. Complex symmetric, not Hermitian, whenever V is complex.
struct TridiagonalOperator {
    std::vector<cdouble> diag;
    double off = 0.0;
    double h = 0.0;
};

TridiagonalOperator discretize(const std::function<cdouble(double)>& V,
                               const Grid& grid);

// Matrix-vector product with the Dirichlet convention (neighbors
// outside the grid are zero).
std::vector<cdouble> apply(const TridiagonalOperator& op,
                           const std::vector<cdouble>& psi);

// All N eigenvalues of the complex tridiagonal matrix. The matrix is
// already Hessenberg, so this runs a shifted QR iteration with
// deflation valid for general non-Hermitian complex matrices; no
// Hermitian or complex-symmetric shortcut is taken. Practical cap
// N <= 4096 (dense working storage). Throws convergence_error naming
// the deflation index if the iteration stalls.
std::vector<cdouble> eigenvalues_all(const TridiagonalOperator& op);

// Eigenvalues with Re < re_max, sorted ascending by real part. Entries
// whose imaginary part is below im_tol * max(1, |Re|) are coerced to
// the real axis (discretization noise floor); larger imaginary parts
// are kept complex.
std::vector<cdouble> bound_spectrum(const std::vector<cdouble>& eigs,
                                    double re_max = 0.0,
                                    double im_tol = 1e-6);

// ||op psi - E psi||_2 / ||psi||_2 over interior nodes (the two
// boundary rows see the hard wall, not the differential operator, and
// are excluded). Throws on a zero vector.
double residual(const TridiagonalOperator& op,
                const std::vector<cdouble>& psi, cdouble E);

// Greedy nearest-neighbor spectrum pairing: candidate pairs sorted by
// ascending absolute gap, accepted while both sides are unused and the
// gap is within tol. Leftovers are reported per side.
struct MatchReport {
    struct MatchedPair {
        int ia = 0;
        int ib = 0;
        double gap = 0.0;
    };
    std::vector<MatchedPair> pairs;
    std::vector<int> unmatched_a;
    std::vector<int> unmatched_b;
};

MatchReport match_spectra(const std::vector<cdouble>& a,
                          const std::vector<cdouble>& b, double tol);

// True iff every eigenvalue with |Im| > im_tol has a distinct partner
// within pair_tol of its complex conjugate.
bool conjugate_pair_check(const std::vector<cdouble>& eigs, double im_tol,
                          double pair_tol);

// Second-order first derivative: central differences in the interior,
// one-sided 3-point stencils at the two ends. Needs >= 3 samples.
std::vector<cdouble> central_derivative(const std::vector<cdouble>& samples,
                                        double h);

} // namespace ptdarboux
