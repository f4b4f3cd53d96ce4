#include <gtest/gtest.h>

#include <numbers>

#include <qhyper/verify.hpp>

using namespace qhyper;
using verify::rel;

namespace {
std::vector<Regime> regimes() {
    verify::Sampler S(31);
    auto r = verify::sample_regimes(S, 3);
    r.push_back(verify::reference_case1());
    r.push_back(verify::reference_case2());
    return r;
}
} // namespace

TEST(Regime, Case1RejectsPositiveRealT) {
    try {
        Regime::case1(0.5, std::numbers::pi / 2, 0.8);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DomainViolation);
        EXPECT_NE(std::string(e.what()).find("positive real"), std::string::npos);
    }
}

TEST(Regime, Case2RejectsNonNegativeT) {
    EXPECT_THROW(Regime::case2(0.5, 1.0, 0.3), Error);
    EXPECT_THROW(Regime::case2(0.5, 0.0, -0.3), Error);
}

TEST(Coefficients, PositiveAndBothFormsAgree) {
    for (auto& g : regimes()) {
        JacobiOperator op(g);
        double q = g.q;
        for (int k = -20; k <= 20; ++k) {
            double ak = op.a(k);
            EXPECT_GT(ak, 0.0);
            double other;
            if (g.is_case1()) {
                cplx num = 1.0 + cplx(0.0, g.r) * std::polar(1.0, g.psi) * std::pow(q, k);
                other = std::abs(num / (cplx(0.0, g.r) * std::pow(q, k)));
            } else {
                double s = g.s, t = g.t2;
                other = std::pow(q, 0.5 - k) / std::abs(s * t) *
                        std::sqrt((1.0 - t * std::pow(q, k)) * (1.0 - t * s * s * std::pow(q, k - 1)));
            }
            EXPECT_LT(std::abs(ak - other) / ak, 1e-13) << g.name() << " k=" << k;
        }
    }
}

TEST(Coefficients, BoundedTowardMinusInfinity) {
    for (auto& g : regimes()) {
        JacobiOperator op(g);
        for (int k = -40; k <= -20; ++k) EXPECT_LT(std::abs(op.a(k) - 1.0), 2.0 * std::pow(g.q, -k) * (1.0 + std::abs(g.r) + 1.0 / std::abs(g.t2)) + 1e-15);
        EXPECT_NEAR(op.a(-40), 1.0, 1e-9);
    }
}

TEST(Symmetrization, CoefficientMatchesAk) {
    for (auto& g : regimes()) {
        JacobiOperator op(g);
        const auto& p = op.params();
        for (int k = -10; k <= 10; ++k) {
            cplx c = op.alpha(k) / op.alpha(k + 1) * rec_C(p, k);
            EXPECT_LT(std::abs(c.imag()), 1e-12 * op.a(k)) << g.name() << " k=" << k;
            EXPECT_LT(std::abs(std::abs(c) - op.a(k)) / op.a(k), 1e-12);
            // |alpha_{k-1}/alpha_k|^2 against the symmetry condition
            double lhs = std::norm(op.alpha(k - 1) / op.alpha(k));
            cplx rhs = -(1.0 - std::pow(p.q, k - 1) * p.t) / (1.0 + std::conj(p.a * p.a * p.t) * std::pow(p.q, k - 2)) *
                       std::conj(p.a * p.t) / (p.q * p.a * p.t);
            EXPECT_LT(std::abs(lhs - rhs) / lhs, 1e-12);
        }
    }
}

TEST(Symmetrization, Case2AlphaTwoForms) {
    // theta-product form of the case-2 normalization
    JacobiOperator op(Regime::case2(0.45, 1.3, -0.6));
    double q = 0.45, s = 1.3, t = -0.6;
    for (int k = -8; k <= 8; ++k) {
        double direct = std::pow(q, 0.5 * k) *
                        std::sqrt(std::abs((qpinf(t * std::pow(q, k), q) / qpinf(t * s * s * std::pow(q, k - 1), q)).real() *
                                           (theta(s * s * t / q, q) / theta(t, q)).real()));
        EXPECT_LT(std::abs(std::abs(op.alpha(k)) - direct) / direct, 1e-12);
    }
}

TEST(Wronskian, KIndependentAndIdentity) {
    verify::Sampler S(32);
    for (auto& g : regimes()) {
        JacobiOperator op(g);
        cplx y = S.y_inside();
        auto f = op.alphaF_range(y, -16, 16);
        auto h = op.alphaF_range(1.0 / y, -16, 16);
        cplx W0 = op.wronskian_at(f[16], f[17], h[16], h[17], 0);
        for (int k = -15; k <= 15; ++k) {
            auto i = static_cast<std::size_t>(k + 16);
            EXPECT_LT(rel(op.wronskian_at(f[i], f[i + 1], h[i], h[i + 1], k), W0), 1e-10);
            EXPECT_EQ(op.wronskian_at(f[i], f[i + 1], f[i], f[i + 1], k), cplx(0.0));
        }
        if (!g.is_case1()) EXPECT_LT(rel(W0, 0.5 * (1.0 / y - y)), 1e-10);
        if (g.is_case1()) {
            auto hc = op.alphaF_range(std::conj(1.0 / y), 0, 1);
            cplx Wc = op.wronskian_at(f[16], f[17], std::conj(hc[0]), std::conj(hc[1]), 0);
            EXPECT_LT(rel(Wc, 0.5 * (1.0 / y - y)), 1e-10);
        }
    }
}

TEST(Wronskian, UVIndependent) {
    verify::Sampler S(33);
    for (auto& g : regimes()) {
        JacobiOperator op(g);
        cplx y = S.y_inside();
        auto u = op.alphaU_range(y, 0, 1, 1), v = op.alphaU_range(y, 0, 1, -1);
        EXPECT_GT(std::abs(op.wronskian_at(u[0], u[1], v[0], v[1], 0)), 1e-8);
    }
}

TEST(Wronskian, TailLimits) {
    verify::Sampler S(34);
    for (auto& g : regimes()) {
        JacobiOperator op(g);
        cplx y = S.y_inside(), w = S.y_inside();
        for (int sign : {1, -1}) {
            cplx closed = op.tail_wronskian_limit_closed(y, sign);
            EXPECT_LT(std::abs(op.tail_wronskian(w, y, 60, sign) - closed), 1e-8 * std::max(1.0, std::abs(closed)));
            EXPECT_LT(std::abs(op.tail_wronskian_limit(w, y, sign) - closed), 1e-8 * std::max(1.0, std::abs(closed)));
        }
        // v-limit: opposite sign and a -> -a
        cplx cu = op.tail_wronskian_limit_closed(y, 1), cv = op.tail_wronskian_limit_closed(y, -1);
        EXPECT_LT(rel(cv / op.ef().d(y, -1), -cu / op.ef().d(y, 1)), 1e-13);
    }
}

TEST(Gamma, PhaseConstant) {
    for (auto& g : regimes()) {
        JacobiOperator op(g);
        if (!g.is_case1()) {
            EXPECT_EQ(op.gamma(), 0.0);
            cplx y(0.3, -0.5);
            for (int k : {-5, 0, 5})
                EXPECT_LT(rel(std::conj(op.alphaF_range(std::conj(y), k, k)[0]), op.alphaF_range(y, k, k)[0]), 1e-12);
            continue;
        }
        for (cplx y : {cplx(0.3, 0.4), cplx(-0.6, 0.1), cplx(0.2, -0.7)})
            for (int k : {-5, 0, 5}) {
                cplx C = std::conj(op.alphaF_range(std::conj(y), k, k)[0]) / op.alphaF_range(y, k, k)[0];
                EXPECT_NEAR(std::abs(C), 1.0, 1e-10);
                EXPECT_LT(std::abs(C - std::polar(1.0, 2.0 * op.gamma())), 1e-10);
            }
    }
}

TEST(Extension, CoefficientsAndDomain) {
    const double pi = std::numbers::pi;
    for (auto& g : regimes()) {
        JacobiOperator op(g);
        auto [ie, ifp] = op.extension_imag_parts();
        EXPECT_LT(ie, 1e-12);
        EXPECT_LT(ifp, 1e-12);
        for (double th : {0.0, pi / 4, pi / 2, 3 * pi / 4}) {
            auto ext = op.extension(th);
            EXPECT_EQ(ext.B, std::conj(ext.A));
            EXPECT_LT(op.defect_residual(ext), 1e-9);
            EXPECT_LT(std::abs(op.boundary_condition_wronskian(ext, cplx(0.3, 0.4), 60)), 1e-7);
        }
    }
    const cplx il0(0.0, 1.0 - std::numbers::sqrt2);
    EXPECT_LT(std::abs(0.5 * (il0 + 1.0 / il0) - cplx(0.0, 1.0)), 4 * std::numeric_limits<double>::epsilon());
}

TEST(Extension, PsiIsEigenvectorAndReal) {
    verify::Sampler S(35);
    for (auto& g : regimes()) {
        JacobiOperator op(g);
        auto ext = op.extension(0.9);
        cplx y = S.y_inside();
        auto ps = op.psi_range(ext, y, -11, 11);
        cplx z = 0.5 * (y + 1.0 / y);
        for (int k = -10; k <= 10; ++k) {
            auto i = static_cast<std::size_t>(k + 11);
            cplx lhs = 2.0 * z * ps[i], rhs = op.a(k) * ps[i + 1] + op.a(k - 1) * ps[i - 1];
            EXPECT_LT(std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs)), 1e-10);
        }
        // real spectral parameter
        for (double chi : {0.4, 1.3, 2.7}) {
            cplx e = std::polar(1.0, chi);
            for (int k = -5; k <= 5; ++k) {
                cplx v = op.psi(ext, e, k);
                if (!g.is_case1()) {
                    EXPECT_LT(std::abs(v.imag()), 1e-10 * std::max(1.0, std::abs(v)));
                    cplx Au = ext.A * op.alphaU_range(e, k, k, 1)[0];
                    EXPECT_LT(std::abs(v - 2.0 * Au.real()), 1e-10 * std::max(1.0, std::abs(v)));
                } else {
                    // psi_k = A alpha u + theta(tbar)/theta(t) e^{-2i gamma} conj(A alpha u(conj z))
                    const auto& p = op.params();
                    cplx Au = ext.A * op.alphaU_range(e, k, k, 1)[0];
                    cplx Aub = ext.A * op.alphaU_range(std::conj(e), k, k, 1)[0];
                    cplx form = Au + theta(std::conj(p.t), p.q) / theta(p.t, p.q) * std::polar(1.0, -2 * op.gamma()) *
                                         std::conj(Aub);
                    EXPECT_LT(std::abs(v - form), 1e-10 * std::max(1.0, std::abs(v)));
                }
            }
        }
    }
}

TEST(BigPsi, SquareSummableAndConjugationSymmetric) {
    for (auto& g : regimes()) {
        JacobiOperator op(g);
        cplx y(0.35, 0.5);
        auto P = op.big_psi_range(y, -60, 0);
        double s40 = 0.0, s60 = 0.0;
        for (int k = -60; k <= 0; ++k) {
            double v = std::norm(P[static_cast<std::size_t>(k + 60)]);
            s60 += v;
            if (k >= -40) s40 += v;
        }
        EXPECT_LT((s60 - s40) / s60, 1e-12);
        cplx z = 0.5 * (y + 1.0 / y);
        cplx yb = SpectralParam::from_z(std::conj(z)).y;
        for (int k = -4; k <= 4; ++k) EXPECT_LT(rel(std::conj(op.big_psi(yb, k)), op.big_psi(y, k)), 1e-10);
        EXPECT_THROW(op.big_psi(cplx(1.5, 0.0), 0), Error);
    }
}

TEST(Green, WronskianClosedFormAndSymmetry) {
    for (auto& g : regimes()) {
        JacobiOperator op(g);
        auto ext = op.extension(0.4);
        cplx z(0.3, 0.8);
        auto gd = op.green_data(ext, z, -6, 6);
        for (int k = -5; k <= 5; ++k) {
            auto i = static_cast<std::size_t>(k + 6);
            cplx Wn = op.wronskian_at(gd.Psi[i], gd.Psi[i + 1], gd.psibar[i], gd.psibar[i + 1], k);
            EXPECT_LT(rel(Wn, gd.W), 1e-9) << g.name() << " k=" << k;
            for (int l = -5; l <= 5; ++l) EXPECT_EQ(gd.at(k, l), gd.at(l, k));
        }
        EXPECT_THROW(op.green_data(ext, cplx(0.3, 0.0), 0, 1), Error);
    }
}

TEST(Green, ResolventDoubleSum) {
    for (auto& g : regimes()) {
        JacobiOperator op(g);
        auto ext = op.extension(1.1);
        cplx z(-0.4, 1.5);
        auto xi = verify::test_vector(-3, 3, 1), eta = verify::test_vector(-3, 3, 2);
        auto gd = op.green_data(ext, z, -3, 3);
        cplx direct = 0.0, sum = 0.0;
        for (int k = -3; k <= 3; ++k)
            for (int l = -3; l <= 3; ++l) direct += gd.at(k, l) * xi[l] * std::conj(eta[k]);
        for (int k = -3; k <= 3; ++k)
            for (int l = k; l <= 3; ++l) {
                auto ik = static_cast<std::size_t>(k + 3), il = static_cast<std::size_t>(l + 3);
                sum += gd.Psi[ik] * gd.psibar[il] * (xi[l] * std::conj(eta[k]) + xi[k] * std::conj(eta[l])) *
                       (k == l ? 0.5 : 1.0);
            }
        EXPECT_LT(rel(direct * gd.W, sum), 1e-10);
    }
}

TEST(Green, ResolventSolvesEquation) {
    for (auto& g : regimes()) {
        JacobiOperator op(g);
        auto ext = op.extension(0.0);
        cplx z(0.2, 0.9);
        auto gd = op.green_data(ext, z, -12, 12);
        // (z - L) applied to column l = 0 gives e_0
        for (int k = -10; k <= 10; ++k) {
            cplx Lx = 0.5 * (op.a(k) * gd.at(k + 1, 0) + op.a(k - 1) * gd.at(k - 1, 0));
            cplx r = z * gd.at(k, 0) - Lx - (k == 0 ? 1.0 : 0.0);
            EXPECT_LT(std::abs(r), 1e-8) << g.name() << " k=" << k;
        }
    }
}
