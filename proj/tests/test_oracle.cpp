#include <gtest/gtest.h>

#include <qhyper/oracle.hpp>
#include <qhyper/oracle_fixtures.hpp>
#include <qhyper/spectrum.hpp>
#include <qhyper/verify.hpp>

using namespace qhyper;
using namespace qhyper::oracle;
using verify::rel;

namespace {

std::vector<Regime> regimes() {
    return {verify::reference_case1(), verify::reference_case2(), Regime::case1(0.4, 0.0, -1.3)};
}

double fraction_in_band(const Eigen::VectorXd& ev, double eps) {
    int in = 0;
    for (int i = 0; i < ev.size(); ++i) in += std::abs(ev(i)) <= 1.0 + eps;
    return double(in) / double(ev.size());
}

} // namespace

TEST(Truncation, EigenReconstruction) {
    for (auto& g : regimes()) {
        JacobiOperator op(g);
        for (int N : {10, 40, 100}) {
            auto r = truncated_eigen(TruncatedOperator(op, N));
            EXPECT_LT(r.reconstruction_error, 1e-10) << g.name() << " N=" << N;
            for (int i = 1; i < r.values.size(); ++i) EXPECT_LE(r.values(i - 1), r.values(i));
        }
    }
    JacobiOperator op(verify::reference_case1());
    EXPECT_THROW(TruncatedOperator(op, 0), Error);
    EXPECT_THROW(truncated_eigen(TruncatedOperator(op, 401)), Error);
}

TEST(Truncation, BandCountGrows) {
    // half the window carries the growing coefficients, so the in-band share tends to 1/2
    for (auto& g : regimes()) {
        JacobiOperator op(g);
        int prev = 0;
        for (int N : {10, 20, 40, 100, 200}) {
            TruncatedOperator T(op, N);
            int in = eigen_count_below(T, 1.001) - eigen_count_below(T, -1.001);
            EXPECT_GT(in, prev) << g.name();
            EXPECT_LE(std::abs(in - N), 2) << g.name() << " N=" << N;
            prev = in;
        }
    }
}

TEST(Truncation, SturmCountMatchesDenseWhenConditioned) {
    for (auto& g : regimes()) {
        JacobiOperator op(g);
        TruncatedOperator T(op, 20);
        auto ev = truncated_eigen(T, false).values;
        for (double x : {-3.0, -1.001, -0.5, 0.2, 1.001, 7.0}) {
            int dense = 0;
            for (int i = 0; i < ev.size(); ++i) dense += ev(i) < x;
            EXPECT_EQ(eigen_count_below(T, x), dense) << g.name() << " x=" << x;
        }
        EXPECT_NEAR(fraction_in_band(ev, 1e-3), double(eigen_count_below(T, 1.001) - eigen_count_below(T, -1.001)) / T.size(),
                    1e-12);
    }
}

TEST(Truncation, OutlyingEigenvaluesNearMassPoints) {
    // an even Dirichlet window selects theta = 0; wide windows lose small eigenvalues to the coefficient growth
    for (auto& g : {verify::reference_case1(), verify::reference_case2()}) {
        JacobiOperator op(g);
        auto ds = locate_discrete_y(op, op.extension(0.0), 1e3);
        ASSERT_FALSE(ds.points.empty());
        auto ev = truncated_eigen(TruncatedOperator(op, 40), false).values;
        for (auto& m : ds.points) {
            double best = INFINITY;
            for (int i = 0; i < ev.size(); ++i) best = std::min(best, std::abs(ev(i) - m.x0));
            EXPECT_LT(best, 1e-4) << g.name() << " x0=" << m.x0;
        }
    }
}

TEST(Truncation, ResolveResidual) {
    verify::Sampler S(51);
    for (auto& g : regimes()) {
        JacobiOperator op(g);
        for (int N : {20, 100}) {
            TruncatedOperator T(op, N);
            std::vector<cplx> xi(static_cast<std::size_t>(T.size()));
            for (auto& x : xi) x = cplx(S.uni(-1, 1), S.uni(-1, 1));
            for (cplx z : {cplx(0.0, 2.0), cplx(0.5, 0.1), cplx(-3.0, 1e-3)}) {
                auto x = truncated_resolve(T, z, xi);
                EXPECT_LT(resolve_residual(T, z, x, xi), 1e-13) << g.name() << " N=" << N << " z=" << z;
            }
            EXPECT_THROW(truncated_resolve(T, 0.5, xi), Error);
            EXPECT_THROW(truncated_resolve(T, cplx(0, 1), std::vector<cplx>(3)), Error);
        }
    }
}

TEST(Truncation, ResolventConverges) {
    JacobiOperator op(verify::reference_case1());
    auto ext = op.extension(0.0);
    cplx z(0.0, 2.0);
    auto G = op.green_data(ext, z, -2, 2);
    double prev = INFINITY;
    for (int N : {24, 50, 100}) {
        TruncatedOperator T(op, N);
        double err = 0.0;
        for (int l = -2; l <= 2; ++l) {
            std::vector<cplx> e(static_cast<std::size_t>(T.size()), 0.0);
            e[static_cast<std::size_t>(l + N)] = 1.0;
            auto x = truncated_resolve(T, z, e);
            for (int k = -2; k <= 2; ++k) err = std::max(err, std::abs(x[static_cast<std::size_t>(k + N)] - G.at(k, l)));
        }
        EXPECT_LE(err, prev * 1.0001 + 1e-15);
        prev = err;
    }
    EXPECT_LT(prev, 1e-10);
}

TEST(HighPrecision, QPochhammerKnownValue) {
    auto v = format_hp(hp_qpoch_inf(hcplx(hreal("0.5")), hreal("0.5")));
    EXPECT_EQ(v.re.substr(0, 18), "2.8878809508660242");
    EXPECT_NEAR(v.to_double().real(), 0.28878809508660242, 1e-17);
}

TEST(HighPrecision, AgreesWithDoublePath) {
    json p{{"q", 0.6}, {"numer", {{0.3, 0.2}, {-0.5, 0.1}}}, {"denom", {{0.4, -0.2}}}, {"z", {0.2, 0.3}}};
    auto hp = highprec_eval("phi_series", p).to_double();
    auto sv = double_eval("phi_series", p);
    EXPECT_LT(std::abs(sv.value - hp), sv.abs_error_estimate + 1e-15);
    json t{{"q", 0.4}, {"z", {0.7, -0.2}}};
    EXPECT_LT(rel(highprec_eval("theta", t).to_double(), double_eval("theta", t).value), 1e-14);
    EXPECT_THROW(highprec_eval("nope", t), Error);
    EXPECT_THROW(double_eval("nope", t), Error);
}

TEST(Fixtures, LoadAndWithinBound) {
    auto fx = load_fixtures(QHYPER_FIXTURES);
    ASSERT_GE(fx.size(), 50u);
    for (auto& f : fx) {
        auto sv = double_eval(f.expr, f.params);
        cplx r = f.value.to_double();
        double bound = sv.abs_error_estimate + 64.0 * std::numeric_limits<double>::epsilon() * std::abs(r);
        EXPECT_LE(std::abs(sv.value - r), bound) << f.expr << " " << f.params.dump();
    }
    EXPECT_THROW(load_fixtures("/nonexistent/fixtures.json"), Error);
}

TEST(Fixtures, FrozenValuesReproduce) {
    auto fx = load_fixtures(QHYPER_FIXTURES);
    for (std::size_t i = 0; i < fx.size(); i += 7) {
        auto again = highprec_eval(fx[i].expr, fx[i].params, fx[i].value.digits);
        EXPECT_LT(rel(again.to_double(), fx[i].value.to_double()), 1e-15) << fx[i].expr;
    }
}

TEST(Fixtures, OracleSuitePasses) {
    auto rep = verify::oracle_suite(QHYPER_FIXTURES, 30);
    EXPECT_TRUE(rep.pass) << verify::fmt(rep.max_residual);
}
