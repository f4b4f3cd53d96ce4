// Orthogonality of the spectral eigenvectors for one self-adjoint extension.
#include <cstdio>

#include <qhyper/transforms.hpp>

int main() {
    using namespace qhyper;
    JacobiOperator op(Regime::case1(0.5, 0.3, 0.8));
    auto ext = op.extension(0.7);
    auto m = discretize_measure(op, ext, -4, 4);
    auto G = orthogonality_matrix(m);
    std::printf("%zu quadrature nodes, %zu mass points\n", m.nodes.size(), m.masses.size());
    for (std::size_t i = 0; i < std::min<std::size_t>(m.masses.size(), 6); ++i)
        std::printf("  x0 = %+.12f  weight = %.6e\n", m.masses[i].point.x0, m.masses[i].point.weight);
    std::printf("max |G - I| over k,l in [-4,4]: %.3e\n", G.max_dev_from_identity());
    return G.max_dev_from_identity() < 1e-6 ? 0 : 1;
}
