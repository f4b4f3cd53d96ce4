#include <gtest/gtest.h>

#include <qhyper/verify.hpp>

using namespace qhyper;
using verify::rel;

namespace {
std::vector<EigenParams> draws(std::uint64_t seed, int n) {
    verify::Sampler S(seed);
    std::vector<EigenParams> out;
    for (auto& g : verify::sample_regimes(S, n)) out.push_back(g.params());
    // a generic complex parameter set outside the two regimes
    out.emplace_back(cplx(0.8, 0.3), cplx(-0.6, 1.1), 0.45);
    return out;
}
} // namespace

TEST(Params, LatticeRejected) {
    EXPECT_THROW(EigenParams(0.5, 0.25, 0.5), Error);
    EXPECT_THROW(EigenParams(cplx(0, 1), 0.25, 0.5), Error);  // -a^2 t = 0.25
    EXPECT_THROW(EigenParams(0.0, 0.3, 0.5), Error);
}

TEST(SpectralParam, RootChoice) {
    auto s = SpectralParam::from_z(cplx(0.3, 0.2));
    EXPECT_LE(std::abs(s.y), 1.0);
    EXPECT_LT(std::abs(0.5 * (s.y + 1.0 / s.y) - s.z), 1e-14);
    auto b = SpectralParam::from_z(0.4);
    EXPECT_GE(b.y.imag(), 0.0);
}

TEST(Solutions, RecurrenceAllFamilies) {
    verify::Sampler S(21);
    for (auto& p : draws(21, 5)) {
        Eigenfunctions ef(p);
        cplx y = S.y_inside(), z = 0.5 * (y + 1.0 / y);
        auto u = ef.u_range(y, -16, 16), v = ef.v_range(y, -16, 16), F = ef.F_range(y, -16, 16);
        for (int k = -15; k <= 15; ++k) {
            auto i = static_cast<std::size_t>(k + 16);
            EXPECT_LT(ef.residual(u[i - 1], u[i], u[i + 1], z, k), 1e-10);
            EXPECT_LT(ef.residual(v[i - 1], v[i], v[i + 1], z, k), 1e-10);
            EXPECT_LT(ef.residual(F[i - 1], F[i], F[i + 1], z, k), 1e-10);
            cplx w[3];
            for (int j = 0; j < 3; ++j) w[j] = 0.3 * u[i - 1 + j] - cplx(0.2, 1.1) * v[i - 1 + j];
            EXPECT_LT(ef.residual(w[0], w[1], w[2], z, k), 1e-10);
        }
    }
}

TEST(Solutions, NoiseIsNotASolution) {
    EigenParams p(cplx(0.6, 0.2), cplx(0.1, 0.9), 0.5);
    EXPECT_GT(recurrence_residual(cplx(0.3, 0.1), cplx(-0.7, 0.2), cplx(0.4, 0.9), p, cplx(0.2, 0.3), 2), 1e-2);
}

TEST(Solutions, LimitsAtPlusInfinity) {
    Eigenfunctions ef(EigenParams(cplx(0.6, 0.2), cplx(0.1, 0.9), 0.5));
    cplx y(0.3, 0.4);
    EXPECT_LT(std::abs(ef.u(y, 60) - 1.0), 1e-14);
    EXPECT_LT(std::abs(ef.v(y, 61) + 1.0), 1e-14);
}

TEST(Solutions, SymmetryFlip) {
    for (auto& p : draws(22, 3)) {
        Eigenfunctions ef(p), fl(p.flipped());
        cplx y(0.35, -0.45);
        for (int k = -10; k <= 10; k += 5) {
            EXPECT_LT(rel(ef.u(y, k), fl.u(-y, k)), 1e-12);
            EXPECT_LT(rel(ef.v(y, k), fl.v(-y, k)), 1e-12);
            EXPECT_LT(rel(ef.F(y, k), fl.F(-y, k)), 1e-12);
            double sg = (k % 2 == 0) ? 1.0 : -1.0;
            EXPECT_LT(rel(fl.v(y, k), sg * ef.u(y, k)), 1e-12);
        }
    }
}

TEST(Connection, Expansions) {
    verify::Sampler S(23);
    for (auto& p : draws(23, 5)) {
        Eigenfunctions ef(p);
        cplx y = S.y_inside();
        for (int k = -10; k <= 10; ++k) {
            cplx F = ef.F(y, k);
            cplx rec = ef.d(y, 1) * ef.u(y, k) + ef.d(y, -1) * ef.v(y, k);
            EXPECT_LT(std::abs(F - rec) / std::max(std::abs(F), std::abs(ef.d(y, 1) * ef.u(y, k))), 1e-9);
            if (std::abs(p.t * std::pow(p.q, k)) < 1.0)
                EXPECT_LT(rel(ef.u_direct(y, k), ef.c(y, 1) * ef.F(y, k) + ef.c(1.0 / y, 1) * ef.F(1.0 / y, k)), 1e-9);
        }
    }
}

TEST(Connection, Determinant) {
    verify::Sampler S(24);
    for (auto& p : draws(24, 5)) {
        Eigenfunctions ef(p);
        cplx y = S.y_inside();
        cplx det = ef.c(y, 1) * ef.c(1.0 / y, -1) - ef.c(1.0 / y, 1) * ef.c(y, -1);
        cplx closed = 2.0 * p.a / (1.0 / y - y) * theta(-p.a * p.a * p.t, p.q) / theta(p.t, p.q);
        EXPECT_LT(rel(det, closed), 1e-10);
    }
}

TEST(Connection, ConjugationInRegimes) {
    verify::Sampler S(25);
    for (auto& g : verify::sample_regimes(S, 3)) {
        Eigenfunctions ef(g.params());
        const auto& p = ef.params();
        cplx y = S.y_inside();
        cplx lhs = std::conj(ef.c(std::conj(y), 1));
        cplx rhs = theta(p.t, p.q) / theta(std::conj(p.t), p.q) * ef.c(y, -1);
        EXPECT_LT(rel(lhs, rhs), 1e-11) << g.name();
    }
}

TEST(Connection, SingularAtLattice) {
    Eigenfunctions ef(EigenParams(cplx(0.6, 0.2), cplx(0.1, 0.9), 0.5));
    EXPECT_THROW(ef.c(std::sqrt(0.5), 1), Error);
}

TEST(Asymptotics, Case2DecayingBranch) {
    JacobiOperator op(Regime::case2(0.4, 1.1, -0.7));
    cplx y(0.5, 0.3);
    auto f = op.alphaF_range(y, -40, -40);
    // alpha_k F_k(y) y^k tends to a constant as k -> -infinity
    auto g = op.alphaF_range(y, -41, -41);
    cplx r1 = f[0] * std::pow(y, -40), r2 = g[0] * std::pow(y, -41);
    EXPECT_LT(rel(r1, r2), 1e-12);
}
