#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "grid.hpp"
#include "scarf2.hpp"

namespace ptdarboux {

// The two seed families with closed-form log-derivatives:
//   CaseI  — polynomial-free seed, b = c, any unbroken (v1, v2);
//   CaseII — requires v1 = v2 (= V0) and the minus q-branch (q = -1/2).
enum class SeedCase { CaseI, CaseII };

// A Darboux seed choice: the factorization energy epsilon, the
// auxiliary exponent lambda, and the hypergeometric parameter triple
// (a, b, c) = (-p-q+lambda, -p-q-lambda, -2p+1/2) fixed by the case.
struct SeedSpec {
    SeedCase seed_case = SeedCase::CaseI;
    ScarfParams params;
    PQPair pq;
    cdouble lambda;
    cdouble epsilon;
    cdouble a, b, c;
};

// Partner construction bundle. v_minus = v_plus - 2 f' everywhere;
// degenerate_susy marks epsilon = 0 (partner keeps every level,
// including the lowest — impossible for real potentials).
struct PartnerPair {
    std::function<cdouble(double)> v_plus;
    std::function<cdouble(double)> v_minus;
    std::function<cdouble(double)> f;
    std::function<cdouble(double)> f_prime;
    cdouble epsilon;
    bool degenerate_susy = false;
};

// Builds the seed for the given case. CaseI: lambda = p - q - 1/2,
// epsilon = -lambda^2 (minus branch deletes the ground state, plus
// branch at p = q + 1/2 gives epsilon = 0). CaseII: forces the minus
// branch (q = -1/2), lambda = -1/4, epsilon = -1/16; rejects v1 != v2.
// Both cases reject the broken regime.
SeedSpec make_seed(const ScarfParams& params, SeedCase seed_case,
                   QBranch q_branch);

// Seed solution u(x) of the original equation at energy epsilon
// (overall scale fixed to 1). CaseI: zm^{-p} zp^{q+1/2}.
// CaseII: 2^{-2p-1/2} zm^{-p} [1 + zp^{1/2}]^{2p+1/2}.
// Nonzero for every real x.
cdouble seed_u(const SeedSpec& spec, double x);

// Log-derivative f = u'/u in closed form.
// CaseI:  i(p+q+1/2) sech x - (p-q-1/2) tanh x.
// CaseII: (1/4) tanh x - (i/4) sech x + i(2p+1/2) sech x * zp^{1/2}.
cdouble f_closed(const SeedSpec& spec, double x);

// Term-by-term analytic derivative of f_closed.
cdouble f_prime_closed(const SeedSpec& spec, double x);

// Partner potential V_- = V_+ - 2 f' (the derivative identity is the
// authoritative construction path; the expanded closed forms are
// cross-checks against it).
cdouble partner_potential(const SeedSpec& spec, double x);

// CaseI partners keep the Scarf II functional form ("satellite"
// potentials): returns the couplings (4(p^2+(q+1/2)^2) - v1,
// 4(p^2-(q+1/2)^2) - v2) of -c1 sech^2 x - i c2 sech x tanh x.
// CaseII partners leave the family: nullopt.
std::optional<std::pair<double, double>>
satellite_coefficients(const SeedSpec& spec);

// f^2 + f' - V_+ + epsilon; identically zero for an exact seed.
cdouble riccati_residual(const SeedSpec& spec, double x);

// Partner eigenfunction psi_n = -phi_n' + f phi_n (unnormalized), with
// phi_n the physical plus-branch bound state and its analytic
// derivative. Identically zero when epsilon = E_n (state deletion).
cdouble partner_eigenfunction(const SeedSpec& spec, int n, double x);

// The formal norm ratio E_n - epsilon (inverse squared rescaling of
// psi_n). Negative values can occur for non-Hermitian H and are
// returned as-is; epsilon = E_n (deleted state) has no finite value and
// throws.
double normalization_factor(const SeedSpec& spec, int n);

// Applies the intertwiner mismatch (A H_+ - H_- A) to test_fn on the
// grid, with A = -D + f via second-order central differences and H_+/-
// the discretized operators. Returns the sup-norm of the mismatch over
// interior nodes relative to the size of the applied composites,
// max(sup|A H_+ g|, sup|H_- A g|); second-order small in h for smooth
// decaying test functions. Two nodes per side are excluded so the
// one-sided end stencils and the hard wall do not contaminate the
// measurement.
double intertwining_residual(const SeedSpec& spec,
                             const std::vector<cdouble>& test_fn,
                             const Grid& grid);

// Literal expanded closed form of the CaseII partner; used only to
// cross-check partner_potential.
cdouble case2_partner_closed(const SeedSpec& spec, double x);

// Convenience bundle of the construction as callables.
PartnerPair make_partner(const SeedSpec& spec);

} // namespace ptdarboux
