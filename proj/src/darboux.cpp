#include "ptdarboux/darboux.hpp"

#include <cmath>
#include <stdexcept>

#include "ptdarboux/numerix.hpp"

namespace ptdarboux {

namespace {

const cdouble I(0.0, 1.0);

cdouble zp_of(double x) { return {0.5, 0.5 * std::sinh(x)}; }
cdouble zm_of(double x) { return {0.5, -0.5 * std::sinh(x)}; }

void require_valid(const SeedSpec& spec) {
    if (spec.seed_case == SeedCase::CaseII && spec.params.v1 != spec.params.v2)
        throw std::domain_error("seed: CaseII requires v1 = v2");
}

} // namespace

SeedSpec make_seed(const ScarfParams& params, SeedCase seed_case,
                   QBranch q_branch) {
    if (classify(params) == Regime::BrokenPT)
        throw std::domain_error("make_seed: broken regime rejected");
    SeedSpec spec;
    spec.seed_case = seed_case;
    spec.params = params;
    if (seed_case == SeedCase::CaseII) {
        if (params.v1 != params.v2)
            throw std::domain_error("make_seed: CaseII requires v1 = v2");
        // t = 1/2 here, and only the minus branch reaches the required
        // q = -1/2; the requested branch is overridden.
        spec.pq = pq(params, QBranch::minus);
        spec.lambda = -0.25;
        spec.epsilon = -1.0 / 16.0;
    } else {
        spec.pq = pq(params, q_branch);
        spec.lambda = spec.pq.p - spec.pq.q - 0.5;
        spec.epsilon = -spec.lambda * spec.lambda;
    }
    spec.a = -spec.pq.p - spec.pq.q + spec.lambda;
    spec.b = -spec.pq.p - spec.pq.q - spec.lambda;
    spec.c = -2.0 * spec.pq.p + 0.5;
    return spec;
}

cdouble seed_u(const SeedSpec& spec, double x) {
    require_valid(spec);
    const cdouble p = spec.pq.p;
    const cdouble q = spec.pq.q;
    if (spec.seed_case == SeedCase::CaseI)
        return cpow_halfplane(zm_of(x), -p) *
               cpow_halfplane(zp_of(x), q + 0.5);
    const cdouble two_p_half = 2.0 * p + 0.5;
    return cpow_halfplane(2.0, -two_p_half) *
           cpow_halfplane(zm_of(x), -p) *
           cpow_halfplane(1.0 + cpow_halfplane(zp_of(x), 0.5), two_p_half);
}

cdouble f_closed(const SeedSpec& spec, double x) {
    require_valid(spec);
    const cdouble p = spec.pq.p;
    const cdouble q = spec.pq.q;
    const double sech = 1.0 / std::cosh(x);
    const double th = std::tanh(x);
    if (spec.seed_case == SeedCase::CaseI)
        return I * (p + q + 0.5) * sech - (p - q - 0.5) * th;
    return 0.25 * th - 0.25 * I * sech +
           I * (2.0 * p + 0.5) * sech * cpow_halfplane(zp_of(x), 0.5);
}

cdouble f_prime_closed(const SeedSpec& spec, double x) {
    require_valid(spec);
    const cdouble p = spec.pq.p;
    const cdouble q = spec.pq.q;
    const double sech = 1.0 / std::cosh(x);
    const double th = std::tanh(x);
    if (spec.seed_case == SeedCase::CaseI)
        return -I * (p + q + 0.5) * sech * th - (p - q - 0.5) * sech * sech;
    // CaseII: the square-root factor differentiates to
    // d/dx zp^{1/2} = (i/4) cosh x * zp^{-1/2}
    const cdouble root = cpow_halfplane(zp_of(x), 0.5);
    return 0.25 * sech * sech + 0.25 * I * sech * th -
           (2.0 * p + 0.5) * (I * sech * th * root + 0.25 / root);
}

cdouble partner_potential(const SeedSpec& spec, double x) {
    return potential(spec.params, x) - 2.0 * f_prime_closed(spec, x);
}

std::optional<std::pair<double, double>>
satellite_coefficients(const SeedSpec& spec) {
    if (spec.seed_case == SeedCase::CaseII)
        return std::nullopt;
    const double p = spec.pq.p.real();
    const double qh = spec.pq.q.real() + 0.5;
    return std::make_pair(4.0 * (p * p + qh * qh) - spec.params.v1,
                          4.0 * (p * p - qh * qh) - spec.params.v2);
}

cdouble riccati_residual(const SeedSpec& spec, double x) {
    const cdouble f = f_closed(spec, x);
    return f * f + f_prime_closed(spec, x) - potential(spec.params, x) +
           spec.epsilon;
}

cdouble partner_eigenfunction(const SeedSpec& spec, int n, double x) {
    // physical bound states live on the plus q-branch regardless of the
    // seed's branch
    return -eigenfunction_deriv(spec.params, QBranch::plus, n, x) +
           f_closed(spec, x) * eigenfunction(spec.params, QBranch::plus, n, x);
}

double normalization_factor(const SeedSpec& spec, int n) {
    const std::vector<double> energies = spectrum(spec.params);
    if (n < 0 || n >= static_cast<int>(energies.size()))
        throw std::out_of_range(
            "normalization_factor: level index out of range");
    const double gap = energies[n] - spec.epsilon.real();
    if (std::abs(gap) <= 1e-12 * std::max(1.0, std::abs(energies[n])))
        throw std::domain_error(
            "normalization_factor: state deleted (E_n = epsilon), no finite "
            "rescaling");
    return gap;
}

double intertwining_residual(const SeedSpec& spec,
                             const std::vector<cdouble>& test_fn,
                             const Grid& grid) {
    const int N = grid.N;
    if (static_cast<int>(test_fn.size()) != N)
        throw std::invalid_argument(
            "intertwining_residual: sample count does not match grid");
    if (N < 7)
        throw std::invalid_argument("intertwining_residual: grid too small");

    const TridiagonalOperator h_plus = discretize(
        [&](double x) { return potential(spec.params, x); }, grid);
    const TridiagonalOperator h_minus = discretize(
        [&](double x) { return partner_potential(spec, x); }, grid);
    std::vector<cdouble> f_samples(N);
    for (int i = 0; i < N; ++i)
        f_samples[i] = f_closed(spec, grid.nodes[i]);

    auto apply_a = [&](const std::vector<cdouble>& g) {
        std::vector<cdouble> out = central_derivative(g, grid.h);
        for (int i = 0; i < N; ++i)
            out[i] = -out[i] + f_samples[i] * g[i];
        return out;
    };

    const std::vector<cdouble> lhs = apply_a(ptdarboux::apply(h_plus, test_fn));
    const std::vector<cdouble> rhs = ptdarboux::apply(h_minus, apply_a(test_fn));

    // trim 2 nodes per side: one-sided derivative stencils and the hard
    // wall touch exactly that margin
    double sup_mismatch = 0.0;
    double sup_composite = 0.0;
    for (int i = 2; i < N - 2; ++i) {
        sup_mismatch = std::max(sup_mismatch, std::abs(lhs[i] - rhs[i]));
        sup_composite = std::max(sup_composite,
                                 std::max(std::abs(lhs[i]), std::abs(rhs[i])));
    }
    if (sup_composite == 0.0)
        return sup_mismatch;
    return sup_mismatch / sup_composite;
}

cdouble case2_partner_closed(const SeedSpec& spec, double x) {
    if (spec.seed_case != SeedCase::CaseII)
        throw std::domain_error("case2_partner_closed: CaseII spec required");
    const double v0 = spec.params.v1;
    const double g = 2.0 * spec.pq.p.real() + 0.5;
    const double coeff = 0.25 + g * g - v0;
    const double sech = 1.0 / std::cosh(x);
    const double th = std::tanh(x);
    const cdouble shape(sech * sech, sech * th);
    return -coeff * shape + g * shape * cpow_halfplane(zp_of(x), 0.5);
}

PartnerPair make_partner(const SeedSpec& spec) {
    PartnerPair pair;
    pair.v_plus = [spec](double x) { return potential(spec.params, x); };
    pair.v_minus = [spec](double x) { return partner_potential(spec, x); };
    pair.f = [spec](double x) { return f_closed(spec, x); };
    pair.f_prime = [spec](double x) { return f_prime_closed(spec, x); };
    pair.epsilon = spec.epsilon;
    pair.degenerate_susy = std::abs(spec.epsilon) <= 1e-12;
    return pair;
}

} // namespace ptdarboux
