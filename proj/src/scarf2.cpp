#include "ptdarboux/scarf2.hpp"

#include <cmath>
#include <stdexcept>

#include "ptdarboux/errors.hpp"

namespace ptdarboux {

namespace {

// Principal square root of a real radicand: exactly real when r >= 0,
// otherwise purely imaginary with non-negative imaginary part. Keeps
// the real case free of spurious imaginary round-off.
cdouble sqrt_real(double r) {
    if (r >= 0.0)
        return {std::sqrt(r), 0.0};
    return {0.0, std::sqrt(-r)};
}

void require_unbroken(const ScarfParams& params, const char* who) {
    if (classify(params) == Regime::BrokenPT)
        throw std::domain_error(std::string(who) +
                                ": broken regime not supported here");
}

// Count of integers n with n < bound (strictly), clamped at 0.
int strict_count(double bound) {
    if (bound <= 0.0)
        return 0;
    return static_cast<int>(std::ceil(bound));
}

} // namespace

ScarfParams make_params(double v1, double v2) {
    if (!(v1 > 0.0))
        throw std::invalid_argument("ScarfParams: v1 must be positive");
    ScarfParams p;
    p.v1 = v1;
    p.v2 = v2;
    p.s = sqrt_real(v1 + v2 + 0.25);
    p.t = sqrt_real(v1 - v2 + 0.25);
    return p;
}

Regime classify(const ScarfParams& params) {
    return std::abs(params.v2) <= params.v1 + 0.25 ? Regime::UnbrokenPT
                                                   : Regime::BrokenPT;
}

std::pair<cdouble, cdouble> shape_params(const ScarfParams& params) {
    return {params.s, params.t};
}

PQPair pq(const ScarfParams& params, QBranch q_branch) {
    require_unbroken(params, "pq");
    PQPair out;
    out.p = -0.25 + params.s / 2.0;
    out.q = q_branch == QBranch::plus ? -0.25 + params.t / 2.0
                                      : -0.25 - params.t / 2.0;
    out.q_branch = q_branch;
    return out;
}

cdouble potential(const ScarfParams& params, double x) {
    const double sech = 1.0 / std::cosh(x);
    const double th = std::tanh(x);
    return {-params.v1 * sech * sech, -params.v2 * sech * th};
}

int level_count(const ScarfParams& params) {
    require_unbroken(params, "level_count");
    const double st = params.s.real() + params.t.real();
    return strict_count((st - 1.0) / 2.0);
}

std::vector<double> spectrum(const ScarfParams& params) {
    require_unbroken(params, "spectrum");
    const double w = (params.s.real() + params.t.real()) / 2.0;
    const int count = level_count(params);
    std::vector<double> energies(count);
    for (int n = 0; n < count; ++n) {
        const double d = n + 0.5 - w;
        energies[n] = -d * d;
    }
    return energies;
}

std::vector<cdouble> broken_spectrum(const ScarfParams& params) {
    // Exactly one of s, t can be imaginary (s^2 + t^2 = 2 v1 + 1/2 > 0);
    // flipping its sign is the other quasi-parity branch and evaluates to
    // the exact floating-point conjugate, so the output is closed under
    // conjugation with no tolerance. Both branches share the level count
    // n < (Re(s) + Re(t) - 1)/2.
    const int count =
        strict_count((params.s.real() + params.t.real() - 1.0) / 2.0);
    std::vector<cdouble> energies;
    energies.reserve(2 * static_cast<size_t>(count));
    for (int n = 0; n < count; ++n) {
        const cdouble d = (n + 0.5) - (params.s + params.t) / 2.0;
        const cdouble e = -d * d;
        energies.push_back(e);
        energies.push_back(std::conj(e));
    }
    return energies;
}

namespace {

struct EigenParts {
    cdouble prefactor;
    cdouble zm_pow; // zm^{-p}
    cdouble zp_pow; // zp^{-q}
    cdouble a, b;   // polynomial parameters
    cdouble zeta;   // i sinh x
    PQPair pq;
};

EigenParts eigen_parts(const ScarfParams& params, QBranch q_branch, int n,
                       double x) {
    require_unbroken(params, "eigenfunction");
    const int count = level_count(params);
    if (n < 0 || n >= count)
        throw std::out_of_range("eigenfunction: level index out of range");
    EigenParts parts;
    parts.pq = pq(params, q_branch);
    const double sh = std::sinh(x);
    const cdouble zm(0.5, -0.5 * sh);
    const cdouble zp(0.5, 0.5 * sh);
    parts.zeta = cdouble(0.0, sh);
    parts.a = -2.0 * parts.pq.p - 0.5;
    parts.b = -2.0 * parts.pq.q - 0.5;
    try {
        parts.prefactor = gen_binomial(
            static_cast<double>(n), static_cast<double>(n) + parts.a);
    } catch (const pole_error&) {
        // The prefactor only fixes the overall scale (states are used
        // unnormalized); at parameter values where a gamma pole makes
        // it meaningless, drop it rather than poison the state.
        parts.prefactor = 1.0;
    }
    parts.zm_pow = cpow_halfplane(zm, -parts.pq.p);
    parts.zp_pow = cpow_halfplane(zp, -parts.pq.q);
    return parts;
}

} // namespace

cdouble eigenfunction(const ScarfParams& params, QBranch q_branch, int n,
                      double x) {
    const EigenParts parts = eigen_parts(params, q_branch, n, x);
    return parts.prefactor * parts.zm_pow * parts.zp_pow *
           jacobi(n, parts.a, parts.b, parts.zeta);
}

cdouble eigenfunction_deriv(const ScarfParams& params, QBranch q_branch,
                            int n, double x) {
    const EigenParts parts = eigen_parts(params, q_branch, n, x);
    const double sech = 1.0 / std::cosh(x);
    const double th = std::tanh(x);
    const cdouble p = parts.pq.p;
    const cdouble q = parts.pq.q;
    // log-derivative of the two power factors...
    const cdouble logder =
        cdouble(0.0, 1.0) * (p - q) * sech - (p + q) * th;
    const cdouble poly = jacobi(n, parts.a, parts.b, parts.zeta);
    const cdouble dpoly = jacobi_deriv(n, parts.a, parts.b, parts.zeta);
    // ...plus the chain rule through the polynomial argument i sinh x
    const cdouble dzeta(0.0, std::cosh(x));
    return parts.prefactor * parts.zm_pow * parts.zp_pow *
           (logder * poly + dzeta * dpoly);
}

bool is_pt_symmetric(const Grid& grid, const std::vector<cdouble>& samples,
                     double tol) {
    const int N = grid.N;
    if (static_cast<int>(samples.size()) != N)
        throw std::invalid_argument(
            "is_pt_symmetric: sample count does not match grid");
    const double sym_tol = 1e-12 * std::max(1.0, grid.L);
    for (int i = 0; i < N; ++i)
        if (std::abs(grid.nodes[i] + grid.nodes[N - 1 - i]) > sym_tol)
            throw std::invalid_argument(
                "is_pt_symmetric: grid not symmetric about 0");
    double worst = 0.0;
    for (int i = 0; i < N; ++i)
        worst = std::max(worst,
                         std::abs(std::conj(samples[N - 1 - i]) - samples[i]));
    return worst <= tol;
}

} // namespace ptdarboux
