#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "jacobi.hpp"

namespace qhyper::oracle {

// symmetric tridiagonal window of L on indices k in [-N, N], zero coupling outside
struct TruncatedOperator {
    int N = 0;
    std::vector<double> off;  // off[i] couples k = i - N and k + 1

    TruncatedOperator(const JacobiOperator& op, int N_) : N(N_) {
        if (N < 1) throw Error(ErrorKind::DomainViolation, "truncation half-width must be positive");
        off.resize(static_cast<std::size_t>(2 * N));
        for (int k = -N; k < N; ++k) off[static_cast<std::size_t>(k + N)] = 0.5 * op.a(k);
    }
    int size() const { return 2 * N + 1; }
    Eigen::MatrixXd dense() const {
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(size(), size());
        for (int i = 0; i + 1 < size(); ++i) T(i, i + 1) = T(i + 1, i) = off[static_cast<std::size_t>(i)];
        return T;
    }
};

// number of eigenvalues below x by a Sturm sequence; stays exact on strongly graded windows
inline int eigen_count_below(const TruncatedOperator& T, double x) {
    int c = 0;
    double d = -x;
    if (d < 0.0) ++c;
    for (double b : T.off) {
        if (d == 0.0) d = -std::numeric_limits<double>::min();
        d = -x - b * (b / d);
        if (d < 0.0) ++c;
    }
    return c;
}

struct EigenResult {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // columns
    double reconstruction_error = 0.0;
};

inline EigenResult truncated_eigen(const TruncatedOperator& T, bool check = true) {
    if (T.N > 400) throw Error(ErrorKind::DomainViolation, "truncation limited to N <= 400");
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(T.size());
    Eigen::VectorXd sub(T.size() - 1);
    for (int i = 0; i + 1 < T.size(); ++i) sub(i) = T.off[static_cast<std::size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw Error(ErrorKind::ConvergenceFailure, "tridiagonal eigensolver failed");
    EigenResult r{es.eigenvalues(), es.eigenvectors(), 0.0};
    if (check) {
        Eigen::MatrixXd D = T.dense();
        Eigen::MatrixXd R = r.vectors * r.values.asDiagonal() * r.vectors.transpose() - D;
        r.reconstruction_error = R.norm() / D.norm();
    }
    return r;
}

// (z - T) x = xi by tridiagonal elimination; xi indexed from -N
inline std::vector<cplx> truncated_resolve(const TruncatedOperator& T, cplx z, const std::vector<cplx>& xi) {
    if (z.imag() == 0.0) throw Error(ErrorKind::DomainViolation, "resolve needs z off the real line");
    const auto n = static_cast<std::size_t>(T.size());
    if (xi.size() != n) throw Error(ErrorKind::DomainViolation, "right-hand side has the wrong length");
    std::vector<cplx> cp(n), dp(n), x(n);
    // sub/super diagonals are -off, diagonal is z
    cplx b = z;
    cp[0] = -T.off[0] / b;
    dp[0] = xi[0] / b;
    for (std::size_t i = 1; i < n; ++i) {
        cplx lo = -T.off[i - 1];
        cplx m = z - lo * cp[i - 1];
        if (i + 1 < n) cp[i] = -T.off[i] / m;
        dp[i] = (xi[i] - lo * dp[i - 1]) / m;
    }
    x[n - 1] = dp[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = dp[i] - cp[i] * x[i + 1];
    return x;
}

// max_i |r_i| over max_i (|z x_i| + |T terms| + |xi_i|); edge rows of a growing window sit at the rounding floor
inline double resolve_residual(const TruncatedOperator& T, cplx z, const std::vector<cplx>& x,
                               const std::vector<cplx>& xi) {
    double worst = 0.0, big = 0.0;
    const auto n = static_cast<std::size_t>(T.size());
    for (std::size_t i = 0; i < n; ++i) {
        cplx Tx = 0.0;
        double scale = std::abs(z * x[i]) + std::abs(xi[i]);
        if (i > 0) {
            Tx += T.off[i - 1] * x[i - 1];
            scale += std::abs(T.off[i - 1] * x[i - 1]);
        }
        if (i + 1 < n) {
            Tx += T.off[i] * x[i + 1];
            scale += std::abs(T.off[i] * x[i + 1]);
        }
        worst = std::max(worst, std::abs(z * x[i] - Tx - xi[i]));
        big = std::max(big, scale);
    }
    return big > 0.0 ? worst / big : 0.0;
}

// extended precision (50 decimal digits)
using hreal = boost::multiprecision::cpp_bin_float_50;
using hcplx = boost::multiprecision::cpp_complex_50;

inline hcplx to_h(cplx z) { return hcplx(hreal(z.real()), hreal(z.imag())); }

inline hcplx hp_qpoch_inf(const hcplx& a, const hreal& q) {
    hcplx r(1), x = a;
    const hreal eps("1e-55");
    while (abs(x) >= eps) {
        r *= hcplx(1) - x;
        x *= q;
    }
    return r;
}

inline hcplx hp_theta(const hcplx& z, const hreal& q) { return hp_qpoch_inf(z, q) * hp_qpoch_inf(hcplx(q) / z, q); }

inline hcplx hp_phi_series(const std::vector<hcplx>& numer, const std::vector<hcplx>& denom, const hreal& q,
                           const hcplx& z) {
    hcplx sum(0), term(1);
    hreal qn(1);
    const hreal eps("1e-52");
    int small = 0;
    for (int n = 0; n < 200000; ++n) {
        sum += term;
        hcplx f = z / (hcplx(1) - hcplx(qn * q));
        for (auto& a : numer) f *= hcplx(1) - a * qn;
        for (auto& b : denom) f /= hcplx(1) - b * qn;
        term *= f;
        qn *= q;
        if (abs(term) == 0) break;
        if (abs(term) < eps * abs(sum)) {
            if (++small >= 3) break;
        } else {
            small = 0;
        }
    }
    return sum;
}

// direct series form, |t| < 1
inline hcplx hp_q_exponential(cplx z_, cplx t_, double q_) {
    hcplx z = to_h(z_), t = to_h(t_);
    hreal q(q_);
    hcplx s = sqrt(z * z - hcplx(1));
    hcplx y1 = z - s, y2 = z + s;
    hcplx y = (abs(y1) <= abs(y2)) ? y1 : y2;
    hreal p = sqrt(q), p4 = sqrt(p);
    hcplx pre = hp_qpoch_inf(-t, p) / hp_qpoch_inf(hcplx(q) * t * t, q * q);
    return pre * hp_phi_series({hcplx(p4) * y, hcplx(p4) / y}, {hcplx(-p)}, p, -t);
}

struct HighPrecValue {
    std::string re;
    std::string im;
    int digits = 40;
    cplx to_double() const { return {std::stod(re), std::stod(im)}; }
};

inline HighPrecValue format_hp(const hcplx& v, int digits = 40) {
    return {real(v).str(digits, std::ios_base::scientific), imag(v).str(digits, std::ios_base::scientific), digits};
}

} // namespace qhyper::oracle
