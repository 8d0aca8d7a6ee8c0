#pragma once

#include <stdexcept>
#include <vector>

namespace ptdarboux {

// Uniform real grid on [-L, L], symmetric about 0. Nodes are generated
// as (i - (N-1)/2)*h so that x_i + x_{N-1-i} == 0 exactly in floating
// point; parity-based checks rely on this.
struct Grid {
    double L = 0.0;
    int N = 0;
    double h = 0.0;
    std::vector<double> nodes;
};

inline Grid make_grid(double L, int N) {
    if (!(L > 0.0))
        throw std::invalid_argument("grid half-width must be positive");
    if (N < 3)
        throw std::invalid_argument("grid needs at least 3 nodes");
    Grid g;
    g.L = L;
    g.N = N;
    g.h = 2.0 * L / (N - 1);
    g.nodes.resize(N);
    const double mid = 0.5 * (N - 1);
    for (int i = 0; i < N; ++i)
        g.nodes[i] = (i - mid) * g.h;
    return g;
}

} // namespace ptdarboux
