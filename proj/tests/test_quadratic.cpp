#include <gtest/gtest.h>

#include <qhyper/quadratic.hpp>
#include <qhyper/transforms.hpp>
#include <qhyper/verify.hpp>

using namespace qhyper;
using verify::rel;

namespace {

struct Draw {
    EigenParams p;
    cplx y;
};

std::vector<Draw> draws(std::uint64_t seed, int n) {
    verify::Sampler S(seed);
    std::vector<Draw> out;
    for (int i = 0; i < n; ++i) {
        double q = S.uni(0.2, 0.7);
        cplx a = std::polar(S.uni(0.5, 1.5), S.uni(-3.0, 3.0));
        cplx t = std::polar(S.uni(0.3, 3.0), S.uni(-3.0, 3.0));
        out.push_back({EigenParams(a, t, q), std::polar(S.uni(0.3, 0.9), S.uni(-3.0, 3.0))});
    }
    return out;
}

template <class Seq>
double worst_iterated(const EigenParams& p, cplx y, Seq seq) {
    cplx z = 0.5 * (y + 1.0 / y);
    double w = 0.0;
    for (int k = -6; k <= 6; ++k) {
        cplx f[5];
        for (int j = 0; j < 5; ++j) f[j] = seq(k - 2 + j);
        w = std::max(w, iterated_recurrence_residual(f, p, z, k));
    }
    return w;
}

} // namespace

TEST(IteratedRecurrence, HoldsForAllFamilies) {
    for (auto& d : draws(41, 6)) {
        Eigenfunctions ef(d.p);
        auto F = ef.F_range(d.y, -8, 8), Fi = ef.F_range(1.0 / d.y, -8, 8);
        auto u = ef.u_range(d.y, -8, 8), v = ef.v_range(d.y, -8, 8);
        auto at = [](const std::vector<cplx>& s) { return [&s](int k) { return s[static_cast<std::size_t>(k + 8)]; }; };
        EXPECT_LT(worst_iterated(d.p, d.y, at(F)), 1e-10);
        EXPECT_LT(worst_iterated(d.p, d.y, at(Fi)), 1e-10);
        EXPECT_LT(worst_iterated(d.p, d.y, at(u)), 1e-10);
        EXPECT_LT(worst_iterated(d.p, d.y, at(v)), 1e-10);
    }
}

TEST(IteratedRecurrence, RejectsRandomSequences) {
    verify::Sampler S(42);
    for (auto& d : draws(43, 4)) {
        std::vector<cplx> r(17);
        for (auto& x : r) x = cplx(S.uni(-1.0, 1.0), S.uni(-1.0, 1.0));
        EXPECT_GT(worst_iterated(d.p, d.y, [&](int k) { return r[static_cast<std::size_t>(k + 8)]; }), 1e-3);
    }
}

TEST(IteratedRecurrence, ZeroSpectralParameter) {
    EigenParams p(cplx(0.8, 0.2), cplx(1.4, -0.3), 0.4);
    Eigenfunctions ef(p);
    cplx y(0.0, 1.0);
    auto F = ef.F_range(y, -8, 8);
    EXPECT_LT(worst_iterated(p, y, [&](int k) { return F[static_cast<std::size_t>(k + 8)]; }), 1e-10);
}

TEST(BigQJacobi, EvenSubsequenceMatches) {
    for (auto& d : draws(44, 6)) {
        Eigenfunctions ef(d.p);
        auto P = bigq_match(d.p, d.y);
        const double Q = d.p.q * d.p.q;
        for (int k = -8; k <= 0; ++k) {
            if (std::abs(std::pow(Q, -k) / d.p.t) >= 0.9) continue;
            EXPECT_LT(rel(ef.F(d.y, 2 * k), phi_gamma(P, Q, k)), 1e-10) << k;
            EXPECT_LT(bigqjacobi_residual(phi_gamma(P, Q, k - 1), phi_gamma(P, Q, k), phi_gamma(P, Q, k + 1), P, Q, k),
                      1e-10);
        }
    }
}

TEST(BigQJacobi, RecurrenceAwayFromUnitCircle) {
    EigenParams p(cplx(0.9, 0.1), cplx(2.0, 0.5), 0.45);
    cplx y(-4.0, 1.0);
    y = SpectralParam::from_z(0.5 * (y + 1.0 / y)).y;
    auto P = bigq_match(p, y);
    const double Q = p.q * p.q;
    for (int k = -8; k <= 0; ++k)
        EXPECT_LT(bigqjacobi_residual(phi_gamma(P, Q, k - 1), phi_gamma(P, Q, k), phi_gamma(P, Q, k + 1), P, Q, k), 1e-9);
}

TEST(BigQJacobi, LeadingBehaviour) {
    for (auto& d : draws(45, 4)) {
        auto P = bigq_match(d.p, d.y);
        const double Q = d.p.q * d.p.q;
        double prev = INFINITY;
        for (int k : {-10, -20, -30, -40}) {
            double e = std::abs(phi_gamma(P, Q, k) / std::pow(d.p.a * d.y, -2 * k) - 1.0);
            EXPECT_LT(e, std::max(prev * 1e-2, 1e-14));
            prev = e;
        }
        EXPECT_LT(prev, 1e-12);
    }
}

TEST(QuadraticTransform, RandomSamples) {
    verify::Sampler S(46);
    for (int i = 0; i < 50; ++i) {
        double q = S.uni(0.2, 0.8);
        cplx a = std::polar(S.uni(0.5, 1.5), S.uni(-3.0, 3.0));
        cplx y = std::polar(S.uni(0.2, 0.9), S.uni(-3.0, 3.0));
        cplx z = std::polar(S.uni(0.0, 0.95) * std::min(1.0, std::norm(a)), S.uni(-3.0, 3.0));
        EXPECT_LT(quad_transform_check(a, y, z, q), 1e-10);
    }
    EXPECT_LT(quad_transform_check(0.8, 0.5, 0.0, 0.4), 1e-15);
    EXPECT_THROW(quad_transform(0.5, 0.5, 0.3, 0.4), Error);
}

TEST(QuadraticTransform, SpecializedEvenAndOdd) {
    verify::Sampler S(47);
    for (int i = 0; i < 6; ++i) {
        double q = S.uni(0.2, 0.6);
        cplx a = std::polar(S.uni(0.6, 1.4), S.uni(-3.0, 3.0));
        cplx t = std::polar(S.uni(1.5, 3.0) / (std::pow(q, 3) * std::min(1.0, std::norm(a))), S.uni(-3.0, 3.0));
        cplx y = std::polar(S.uni(0.3, 0.9), S.uni(-3.0, 3.0));
        Eigenfunctions ef(EigenParams(a, t, q));
        for (int k = 0; k <= 2; ++k) {
            auto s = quadrel1(a, t, y, q, k);
            EXPECT_LT(s.residual(), 1e-10);
            EXPECT_LT(rel(ef.F(y, 2 * k), std::pow(a * y, -2 * k) * s.rhs), 1e-10);
            EXPECT_LT(rel(ef.F(y, 2 * k + 1), std::pow(a * y, -2 * k - 1) * quadrel1(a, q * t, y, q, k).rhs), 1e-10);
        }
    }
    EXPECT_THROW(quadrel1(0.9, 0.1, 0.5, 0.4, 0), Error);
}

TEST(QuadraticTransform, RegularizedAcrossLattice) {
    double q = 0.4;
    cplx a(0.9, 0.2), t = 40.0;
    for (int N : {1, 2}) {
        double y2 = std::pow(q, -N);
        auto at = quadrel1_regularized(a, t, std::sqrt(y2), q, 0);
        EXPECT_LT(at.residual(), 1e-8);
        // smooth through the lattice point: difference quotients agree
        cplx slope0 = 0.0;
        for (double eps : {1e-7, 1e-6, -1e-7}) {
            auto near = quadrel1_regularized(a, t, std::sqrt(y2 * (1.0 + eps)), q, 0);
            EXPECT_LT(near.residual(), 1e-8);
            cplx slope = (near.lhs - at.lhs) / eps;
            if (slope0 == 0.0) slope0 = slope;
            EXPECT_LT(rel(slope, slope0), 1e-2);
        }
    }
    cplx y(0.5, 0.3);
    auto reg = quadrel1_regularized(a, t, y, q, 0), plain = quadrel1(a, t, y, q, 0);
    cplx factor = qpinf(q * q * y * y * y * y, q * q);
    EXPECT_LT(rel(reg.rhs, plain.rhs * factor), 1e-10);
}

TEST(QExpTwoSeries, MatchesDirect) {
    for (double q : {0.3, 0.5, 0.6})
        for (cplx t : {cplx(0.7), cplx(1.5), cplx(-2.6), cplx(0.5, 0.5)})
            for (cplx z : {cplx(-0.8), cplx(0.2), cplx(0.4, 0.3), cplx(1.5)})
                EXPECT_LT(rel(qexp_as_3phi2(z, t, q), q_exponential(z, t, q)), 1e-9) << q << " " << t << " " << z;
}

TEST(QExpTwoSeries, Domain) {
    double q = 0.5;
    EXPECT_EQ(qexp_as_3phi2(0.3, 0.0, q), cplx(1.0));
    EXPECT_THROW(qexp_as_3phi2(0.3, 0.4, q), Error);
    // just outside |t| = q the two-series form still agrees
    EXPECT_LT(rel(qexp_as_3phi2(0.3, 0.55, q), q_exponential(0.3, 0.55, q)), 1e-9);
}
