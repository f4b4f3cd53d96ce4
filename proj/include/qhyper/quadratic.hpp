#pragma once

#include <algorithm>
#include <cmath>

#include "eigenfunctions.hpp"

namespace qhyper {

// c_k = (1 + a^2 t q^{k-1})/(a t q^{k-1}), d_k = (1/a)(1 - q^{1-k}/t)
inline cplx iter_c(const EigenParams& p, int k) { return p.a * (1.0 + std::pow(p.q, 1 - k) / (p.a * p.a * p.t)); }
inline cplx iter_d(const EigenParams& p, int k) { return (1.0 - std::pow(p.q, 1 - k) / p.t) / p.a; }

// f holds f_{k-2}, f_{k-1}, f_k, f_{k+1}, f_{k+2}; f_{k-1}, f_{k+1} are unused
inline double iterated_recurrence_residual(const cplx (&f)[5], const EigenParams& p, cplx z, int k) {
    cplx lhs = 4.0 * z * z * f[2];
    cplx t1 = iter_c(p, k) * iter_c(p, k + 1) * f[4];
    cplx t2 = (iter_c(p, k) * iter_d(p, k + 1) + iter_d(p, k) * iter_c(p, k - 1)) * f[2];
    cplx t3 = iter_d(p, k) * iter_d(p, k - 1) * f[0];
    double scale = std::max({std::abs(lhs), std::abs(t1), std::abs(t2), std::abs(t3)});
    return scale == 0.0 ? 0.0 : std::abs(lhs - t1 - t2 - t3) / scale;
}

struct BigQJacobiParams {
    cplx a, b, c, x, gamma;
};

// Phi_gamma(x Q^k; a, b, c; Q)
inline cplx phi_gamma(const BigQJacobiParams& P, double Q, int k) {
    check_base(Q);
    cplx w = std::pow(Q, 1 - k) / P.x;
    cplx pre = qpoch_multi({-w / (P.b * P.c), -w * P.gamma / P.a}, Q, kInfinity) /
               qpoch_multi({-w / (P.a * P.b), -w / (P.a * P.c)}, Q, kInfinity);
    cplx s = phi_series({Q * P.gamma / P.a, P.b * P.gamma, P.c * P.gamma}, {-w * P.gamma / P.a, Q * P.gamma * P.gamma},
                        Q, -w / (P.b * P.c))
                 .value;
    return pre * std::pow(P.a * P.gamma, -k) * s;
}

// residual of the big q-Jacobi three-term recurrence for F(x Q^{k-1}), F(x Q^k), F(x Q^{k+1})
inline double bigqjacobi_residual(cplx Fm, cplx F0, cplx Fp, const BigQJacobiParams& P, double Q, int k) {
    cplx a = P.a, b = P.b, c = P.c, x = P.x;
    double Qk = std::pow(Q, -k);
    cplx lhs = (P.gamma + 1.0 / P.gamma) * F0;
    cplx t1 = a * (1.0 + Qk / (a * b * x)) * (1.0 + Qk / (a * c * x)) * Fp;
    cplx t2 = -(Qk * (1.0 / (b * x) + 1.0 / (c * x) + Q / (a * b * c * x) + 1.0 / (a * x)) +
                Qk * Qk / (x * x * a * b * c) * (1.0 + Q)) *
              F0;
    cplx t3 = (1.0 / a) * (1.0 + Q * Qk / (b * c * x)) * (1.0 + Qk / x) * Fm;
    double scale = std::max({std::abs(lhs), std::abs(t1), std::abs(t2), std::abs(t3)});
    return scale == 0.0 ? 0.0 : std::abs(lhs - t1 - t2 - t3) / scale;
}

// the even subsequence F_{2k}(y) as a big q-Jacobi solution in base q^2
inline BigQJacobiParams bigq_match(const EigenParams& p, cplx y) {
    return {p.a * p.a, -1.0, -p.q, -p.t / p.q, y * y};
}

struct QuadSides {
    cplx lhs;
    cplx rhs;
    double residual() const {
        double s = std::max(std::abs(lhs), std::abs(rhs));
        return s == 0.0 ? 0.0 : std::abs(lhs - rhs) / s;
    }
};

// 2phi1(ay,-ay;qy^2;q,-z/a^2) against its 3phi2 form in base q^2
inline QuadSides quad_transform(cplx a, cplx y, cplx z, double q) {
    check_base(q);
    if (!(std::abs(z) < std::min(1.0, std::norm(a))))
        throw Error(ErrorKind::DomainViolation, "quadratic transformation needs |z| < min(1, |a|^2)");
    cplx a2 = a * a, y2 = y * y;
    const double Q = q * q;
    QuadSides s;
    s.lhs = phi_series({a * y, -a * y}, {q * y2}, q, -z / a2).value;
    cplx pre = qpoch_multi({z, q * z * y2 / a2}, Q, kInfinity) / qpinf(-z / a2, q);
    s.rhs = pre * phi_series({Q * y2 / a2, -y2, -q * y2}, {q * z * y2 / a2, Q * y2 * y2}, Q, z).value;
    return s;
}

inline double quad_transform_check(cplx a, cplx y, cplx z, double q) { return quad_transform(a, y, z, q).residual(); }

// the z = q^{2-2k}/t specialization, with both sides of the F_{2k} series
inline QuadSides quadrel1(cplx a, cplx t, cplx y, double q, int k) {
    check_base(q);
    cplx a2t = a * a * t, y2 = y * y;
    const double Q = q * q;
    cplx z = std::pow(q, 2 - 2 * k) / t;
    if (std::abs(z) >= 1.0 || std::abs(z / (a * a)) >= 1.0)
        throw Error(ErrorKind::DomainViolation, "series arguments of the specialized identity must be inside the unit disc");
    QuadSides s;
    s.lhs = phi_series({a * y, -a * y}, {q * y2}, q, -std::pow(q, 2 - 2 * k) / a2t).value;
    cplx w3 = std::pow(q, 3 - 2 * k) / a2t;
    cplx pre = qpoch_multi({z, w3 * y2}, Q, kInfinity) / qpoch_multi({-w3, -std::pow(q, 2 - 2 * k) / a2t}, Q, kInfinity);
    s.rhs = pre * phi_series({Q * y2 / (a * a), -y2, -q * y2}, {w3 * y2, Q * y2 * y2}, Q, z).value;
    return s;
}

// both sides multiplied by (q^2 y^4; q^2)_inf, finite at y^2 in q^{-N}
inline QuadSides quadrel1_regularized(cplx a, cplx t, cplx y, double q, int k, int max_terms = 4000) {
    cplx a2t = a * a * t, y2 = y * y;
    const double Q = q * q;
    cplx z = std::pow(q, 2 - 2 * k) / t;
    cplx w = -std::pow(q, 2 - 2 * k) / a2t;
    QuadSides s;
    {
        CompensatedSum acc;
        cplx coef = 1.0;
        double qn = 1.0;
        for (int n = 0; n < max_terms; ++n) {
            cplx term = coef * qpinf(q * y2 * qn, q);
            acc.add(term);
            if (n > 4 && std::abs(term) < 1e-18 * std::abs(acc.value())) break;
            coef *= (1.0 - a * y * qn) * (1.0 + a * y * qn) / (1.0 - q * qn) * w;
            qn *= q;
        }
        s.lhs = qpinf(-q * y2, q) * acc.value();
    }
    {
        cplx w3 = std::pow(q, 3 - 2 * k) / a2t;
        cplx pre = qpoch_multi({z, w3 * y2}, Q, kInfinity) / qpoch_multi({-w3, -std::pow(q, 2 - 2 * k) / a2t}, Q, kInfinity);
        CompensatedSum acc;
        cplx coef = 1.0;
        double Qn = 1.0;
        for (int n = 0; n < max_terms; ++n) {
            cplx term = coef * qpinf(Q * y2 * y2 * Qn, Q);
            acc.add(term);
            if (n > 4 && std::abs(term) < 1e-18 * std::abs(acc.value())) break;
            coef *= (1.0 - Q * y2 / (a * a) * Qn) * (1.0 + y2 * Qn) * (1.0 + q * y2 * Qn) /
                    ((1.0 - w3 * y2 * Qn) * (1.0 - Q * Qn)) * z;
            Qn *= Q;
        }
        s.rhs = pre * acc.value();
    }
    return s;
}

// E_q(z;t) as a sum of two 3phi2 series; needs |t| > q
inline cplx qexp_as_3phi2(cplx z, cplx t, double q) {
    check_base(q);
    if (t == 0.0) return 1.0;
    if (std::abs(t) <= q)
        throw Error(ErrorKind::DomainViolation, "the two-3phi2 form needs |t| > q");
    cplx y = SpectralParam::from_z(z).y;
    double qh = std::sqrt(q), q4 = std::sqrt(qh);
    auto term = [&](cplx v) {
        cplx v2 = v * v;
        cplx num = qpoch_multi({q4 / v, -q4 / v, -q4 * t * v, -q4 / (t * v)}, qh, kInfinity) *
                   qpoch_multi({-q / t, -q * v2 / t}, q, kInfinity);
        cplx den = qpoch_multi({-qh, 1.0 / v2, -qh / t, qh / t}, qh, kInfinity) * qpinf(q * t * t, q * q);
        if (std::abs(den) < 1e-300) throw Error(ErrorKind::SingularParameter, "denominator vanishes");
        return num / den * phi_series({qh * v2, -v2, -qh * v2}, {-q * v2 / t, q * v2 * v2}, q, -q / t).value;
    };
    return term(y) + term(1.0 / y);
}

} // namespace qhyper
