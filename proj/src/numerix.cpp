#include "ptdarboux/numerix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

#include "ptdarboux/errors.hpp"

namespace ptdarboux {

TridiagonalOperator discretize(const std::function<cdouble(double)>& V,
                               const Grid& grid) {
    TridiagonalOperator op;
    op.h = grid.h;
    op.off = -1.0 / (grid.h * grid.h);
    op.diag.resize(grid.N);
    const double two_h2 = 2.0 / (grid.h * grid.h);
    for (int i = 0; i < grid.N; ++i)
        op.diag[i] = two_h2 + V(grid.nodes[i]);
    return op;
}

std::vector<cdouble> apply(const TridiagonalOperator& op,
                           const std::vector<cdouble>& psi) {
    const int N = static_cast<int>(op.diag.size());
    if (static_cast<int>(psi.size()) != N)
        throw std::invalid_argument("apply: vector length mismatch");
    std::vector<cdouble> out(N);
    for (int i = 0; i < N; ++i) {
        cdouble v = op.diag[i] * psi[i];
        if (i > 0)
            v += op.off * psi[i - 1];
        if (i + 1 < N)
            v += op.off * psi[i + 1];
        out[i] = v;
    }
    return out;
}

std::vector<cdouble> eigenvalues_all(const TridiagonalOperator& op) {
    const int n = static_cast<int>(op.diag.size());
    if (n == 0)
        return {};
    // dense working storage; the QR iteration below is O(n^2) memory
    constexpr int practical_cap = 4096;
    if (n > practical_cap)
        throw std::invalid_argument(
            "eigenvalues_all: matrix exceeds the practical size cap (4096)");
    if (n == 1)
        return {op.diag[0]};

    // The tridiagonal matrix is already upper Hessenberg, so the
    // general-matrix path reduces to the shifted QR eigenvalue
    // iteration with deflation, valid for arbitrary complex
    // (non-Hermitian) matrices. Column-major dense fill; the matrix is
    // structurally symmetric so layout is immaterial, but LAPACK wants
    // column-major natively.
    std::vector<cdouble> H(static_cast<size_t>(n) * n, cdouble(0.0, 0.0));
    for (int i = 0; i < n; ++i) {
        H[static_cast<size_t>(i) * n + i] = op.diag[i];
        if (i + 1 < n) {
            H[static_cast<size_t>(i) * n + (i + 1)] = op.off; // sub
            H[static_cast<size_t>(i + 1) * n + i] = op.off;   // super
        }
    }
    std::vector<cdouble> w(n);
    const lapack_int info = LAPACKE_zhseqr(
        LAPACK_COL_MAJOR, 'E', 'N', n, 1, n,
        reinterpret_cast<lapack_complex_double*>(H.data()), n,
        reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, n);
    if (info < 0)
        throw std::invalid_argument(
            "eigenvalues_all: invalid argument passed to the QR driver");
    if (info > 0)
        throw convergence_error(
            "eigenvalues_all: QR iteration failed to deflate", info);
    return w;
}

std::vector<cdouble> bound_spectrum(const std::vector<cdouble>& eigs,
                                    double re_max, double im_tol) {
    std::vector<cdouble> bound;
    for (const cdouble& e : eigs) {
        if (!(e.real() < re_max))
            continue;
        if (std::abs(e.imag()) <= im_tol * std::max(1.0, std::abs(e.real())))
            bound.emplace_back(e.real(), 0.0);
        else
            bound.push_back(e);
    }
    std::sort(bound.begin(), bound.end(), [](cdouble a, cdouble b) {
        if (a.real() != b.real())
            return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return bound;
}

double residual(const TridiagonalOperator& op,
                const std::vector<cdouble>& psi, cdouble E) {
    const int N = static_cast<int>(op.diag.size());
    if (static_cast<int>(psi.size()) != N)
        throw std::invalid_argument("residual: vector length mismatch");
    if (N < 3)
        throw std::invalid_argument("residual: need at least 3 nodes");
    double num = 0.0;
    double den = 0.0;
    for (int i = 1; i + 1 < N; ++i) {
        const cdouble r = op.off * psi[i - 1] + op.diag[i] * psi[i] +
                          op.off * psi[i + 1] - E * psi[i];
        num += std::norm(r);
        den += std::norm(psi[i]);
    }
    if (den == 0.0)
        throw std::invalid_argument("residual: zero vector");
    return std::sqrt(num / den);
}

MatchReport match_spectra(const std::vector<cdouble>& a,
                          const std::vector<cdouble>& b, double tol) {
    struct Candidate {
        double gap;
        int ia, ib;
    };
    std::vector<Candidate> candidates;
    candidates.reserve(a.size() * b.size());
    for (int i = 0; i < static_cast<int>(a.size()); ++i)
        for (int j = 0; j < static_cast<int>(b.size()); ++j)
            candidates.push_back({std::abs(a[i] - b[j]), i, j});
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& lhs, const Candidate& rhs) {
                  if (lhs.gap != rhs.gap)
                      return lhs.gap < rhs.gap;
                  if (lhs.ia != rhs.ia)
                      return lhs.ia < rhs.ia;
                  return lhs.ib < rhs.ib;
              });
    MatchReport report;
    std::vector<bool> used_a(a.size(), false), used_b(b.size(), false);
    for (const Candidate& c : candidates) {
        if (c.gap > tol)
            break;
        if (used_a[c.ia] || used_b[c.ib])
            continue;
        used_a[c.ia] = used_b[c.ib] = true;
        report.pairs.push_back({c.ia, c.ib, c.gap});
    }
    for (int i = 0; i < static_cast<int>(a.size()); ++i)
        if (!used_a[i])
            report.unmatched_a.push_back(i);
    for (int j = 0; j < static_cast<int>(b.size()); ++j)
        if (!used_b[j])
            report.unmatched_b.push_back(j);
    return report;
}

bool conjugate_pair_check(const std::vector<cdouble>& eigs, double im_tol,
                          double pair_tol) {
    for (int i = 0; i < static_cast<int>(eigs.size()); ++i) {
        if (std::abs(eigs[i].imag()) <= im_tol)
            continue;
        const cdouble want = std::conj(eigs[i]);
        bool found = false;
        for (int j = 0; j < static_cast<int>(eigs.size()); ++j) {
            if (j != i && std::abs(eigs[j] - want) <= pair_tol) {
                found = true;
                break;
            }
        }
        if (!found)
            return false;
    }
    return true;
}

std::vector<cdouble> central_derivative(const std::vector<cdouble>& samples,
                                        double h) {
    const int N = static_cast<int>(samples.size());
    if (N < 3)
        throw std::invalid_argument("central_derivative: need >= 3 samples");
    std::vector<cdouble> out(N);
    const double inv_2h = 1.0 / (2.0 * h);
    out[0] = (-3.0 * samples[0] + 4.0 * samples[1] - samples[2]) * inv_2h;
    for (int i = 1; i + 1 < N; ++i)
        out[i] = (samples[i + 1] - samples[i - 1]) * inv_2h;
    out[N - 1] =
        (3.0 * samples[N - 1] - 4.0 * samples[N - 2] + samples[N - 3]) *
        inv_2h;
    return out;
}

} // namespace ptdarboux
