// The q-exponential approaching exp(lambda z) as q -> 1.
#include <cmath>
#include <cstdio>

#include <qhyper/transforms.hpp>

int main() {
    using namespace qhyper;
    const double lambda = 1.0;
    for (double q : {0.5, 0.9, 0.99, 0.999}) {
        double worst = 0.0;
        for (int i = 0; i <= 20; ++i) worst = std::max(worst, qexp_limit_error(q, lambda, -1.0 + 0.1 * i));
        cplx v = q_exponential(0.5, 0.5 * (1.0 - q) * lambda, q);
        std::printf("q = %.3f  E_q(0.5) = %.12f%+.3ei  exp(0.5) = %.12f  max rel err on [-1,1] = %.3e\n", q, v.real(),
                    v.imag(), std::exp(0.5), worst);
    }
    return 0;
}
