#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "qcore.hpp"

namespace qhyper {

inline constexpr double kLatticeTol = 1e-10;

struct EigenParams {
    cplx a;
    cplx t;
    double q;

    EigenParams(cplx a_, cplx t_, double q_) : a(a_), t(t_), q(q_) {
        check_base(q);
        if (a == 0.0) throw Error(ErrorKind::DomainViolation, "a must be nonzero");
        if (t == 0.0) throw Error(ErrorKind::DomainViolation, "t must be nonzero");
        if (in_q_lattice(t, q, kLatticeTol))
            throw Error(ErrorKind::SingularParameter, "t lies on the lattice q^Z");
        if (in_q_lattice(-a * a * t, q, kLatticeTol))
            throw Error(ErrorKind::SingularParameter, "-a^2 t lies on the lattice q^Z");
    }
    EigenParams flipped() const { return EigenParams(-a, t, q); }
};

struct SpectralParam {
    cplx y;
    cplx z;

    static SpectralParam from_y(cplx y) {
        if (y == 0.0) throw Error(ErrorKind::DomainViolation, "y must be nonzero");
        return {y, 0.5 * (y + 1.0 / y)};
    }
    // root of y^2 - 2zy + 1 = 0 with |y| <= 1, ties toward Im y >= 0
    static SpectralParam from_z(cplx z) {
        cplx s = std::sqrt(z * z - 1.0);
        cplx y1 = z - s, y2 = z + s;
        double m1 = std::abs(y1), m2 = std::abs(y2);
        cplx y;
        if (std::abs(m1 - m2) <= 1e-14 * std::max(m1, m2))
            y = (y1.imag() >= 0.0) ? y1 : y2;
        else
            y = (m1 < m2) ? y1 : y2;
        return {y, z};
    }
};

inline cplx c_fn(cplx y, cplx a, cplx t, double q) {
    cplx den = qpoch_multi({-q, 1.0 / (y * y), t, q / t}, q, kInfinity);
    if (std::abs(den) < 1e-300 || in_q_lattice(y * y, q, kLatticeTol, 0, std::numeric_limits<long>::max()))
        throw Error(ErrorKind::SingularParameter, "c-function denominator vanishes");
    return qpoch_multi({a / y, -q / (a * y), a * y * t, q / (a * y * t)}, q, kInfinity) / den;
}

inline cplx d_fn(cplx y, cplx a, cplx t, double q) {
    cplx den = qpoch_multi({-1.0, q * y * y, -a * a * t / q, -q * q / (a * a * t)}, q, kInfinity);
    if (std::abs(den) < 1e-300 || in_q_lattice(y * y, q, kLatticeTol, std::numeric_limits<long>::min(), -1))
        throw Error(ErrorKind::SingularParameter, "d-function denominator vanishes");
    return qpoch_multi({-a * y, q * y / a, -a * t / (q * y), -q * q * y / (a * t)}, q, kInfinity) / den;
}

inline cplx rec_C(const EigenParams& p, int k) {
    cplx w = p.a * p.t * std::pow(p.q, k - 1);
    return (1.0 + p.a * w) / w;
}
inline cplx rec_D(const EigenParams& p, int k) {
    cplx w = p.a * p.t * std::pow(p.q, k - 1);
    return (1.0 - p.t * std::pow(p.q, k - 1)) / w;
}

// |2z f_k - C_k f_{k+1} + D_k f_{k-1}| over the largest of the three terms
inline double recurrence_residual(cplx fm1, cplx f0, cplx fp1, const EigenParams& p, cplx z, int k) {
    cplx t1 = 2.0 * z * f0, t2 = rec_C(p, k) * fp1, t3 = rec_D(p, k) * fm1;
    double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
    if (scale == 0.0) return 0.0;
    return std::abs(t1 - t2 + t3) / scale;
}

class Eigenfunctions {
public:
    explicit Eigenfunctions(EigenParams p) : p_(p) {
        double L = std::log(0.9 * std::abs(p_.a * p_.a * p_.t)) / std::log(p_.q);
        kF_ = static_cast<int>(std::ceil(2.0 - L)) - 1;
        while (F_arg_abs(kF_ + 1) < 0.9) ++kF_;
        while (F_arg_abs(kF_) >= 0.9) --kF_;
        double M = std::log(0.9 / std::abs(p_.t)) / std::log(p_.q);
        kuv_ = static_cast<int>(std::floor(M)) + 1;
        while (std::abs(p_.t) * std::pow(p_.q, kuv_ - 1) < 0.9) --kuv_;
        while (std::abs(p_.t) * std::pow(p_.q, kuv_) >= 0.9) ++kuv_;
    }

    const EigenParams& params() const { return p_; }
    int F_direct_max_k() const { return kF_; }
    int uv_direct_min_k() const { return kuv_; }

    cplx C(int k) const { return rec_C(p_, k); }
    cplx D(int k) const { return rec_D(p_, k); }

    cplx F_direct(cplx y, int k) const {
        check_F_param(y);
        cplx arg = -std::pow(p_.q, 2 - k) / (p_.a * p_.a * p_.t);
        if (std::abs(arg) >= 1.0)
            throw Error(ErrorKind::SummationOutOfRange, "F_k series argument has modulus >= 1");
        cplx ay = p_.a * y;
        return std::pow(ay, -k) * phi21(ay, -ay, p_.q * y * y, p_.q, arg);
    }

    std::vector<cplx> F_range(cplx y, int kmin, int kmax) const {
        std::vector<cplx> out;
        if (kmax < kmin) return out;
        out.reserve(static_cast<std::size_t>(kmax - kmin + 1));
        int kd = std::min(kmax, kF_);
        for (int k = kmin; k <= kd; ++k) out.push_back(F_direct(y, k));
        if (kmax > kF_) {
            cplx z = 0.5 * (y + 1.0 / y);
            cplx f0, f1;
            int k;
            if (kmin <= kF_ - 1) {
                f0 = out[static_cast<std::size_t>(kF_ - 1 - kmin)];
                f1 = out[static_cast<std::size_t>(kF_ - kmin)];
            } else {
                f0 = F_direct(y, kF_ - 1);
                f1 = F_direct(y, kF_);
            }
            k = kF_;
            while (k < kmax) {
                cplx f2 = (2.0 * z * f1 + D(k) * f0) / C(k);
                f0 = f1;
                f1 = f2;
                ++k;
                if (k >= kmin) out.push_back(f1);
            }
        }
        return out;
    }
    cplx F(cplx y, int k) const { return F_range(y, k, k)[0]; }

    cplx c(cplx y, int sign = 1) const { return c_fn(y, double(sign) * p_.a, p_.t, p_.q); }
    cplx d(cplx y, int sign = 1) const { return d_fn(y, double(sign) * p_.a, p_.t, p_.q); }

    cplx u_direct(cplx y, int k) const {
        cplx arg = p_.t * std::pow(p_.q, k);
        if (std::abs(arg) >= 1.0) throw Error(ErrorKind::SummationOutOfRange, "u_k series argument has modulus >= 1");
        return phi21(p_.a * y, p_.a / y, -p_.q, p_.q, arg);
    }
    cplx v_direct(cplx y, int k) const {
        cplx arg = p_.t * std::pow(p_.q, k);
        if (std::abs(arg) >= 1.0) throw Error(ErrorKind::SummationOutOfRange, "v_k series argument has modulus >= 1");
        return sgn(k) * phi21(-p_.a * y, -p_.a / y, -p_.q, p_.q, arg);
    }

    // sign=+1 gives u, sign=-1 gives v
    std::vector<cplx> uv_range(cplx y, int kmin, int kmax, int sign) const {
        std::vector<cplx> out;
        if (kmax < kmin) return out;
        out.reserve(static_cast<std::size_t>(kmax - kmin + 1));
        int kc = std::min(kmax, kuv_ - 1);
        if (kmin <= kc) {
            cplx cy = c(y, sign), ciy = c(1.0 / y, sign);
            auto Fy = F_range(y, kmin, kc);
            auto Fiy = F_range(1.0 / y, kmin, kc);
            for (std::size_t i = 0; i < Fy.size(); ++i) out.push_back(cy * Fy[i] + ciy * Fiy[i]);
        }
        for (int k = std::max(kmin, kuv_); k <= kmax; ++k)
            out.push_back(sign > 0 ? u_direct(y, k) : v_direct(y, k));
        return out;
    }
    std::vector<cplx> u_range(cplx y, int kmin, int kmax) const { return uv_range(y, kmin, kmax, 1); }
    std::vector<cplx> v_range(cplx y, int kmin, int kmax) const { return uv_range(y, kmin, kmax, -1); }
    cplx u(cplx y, int k) const { return u_range(y, k, k)[0]; }
    cplx v(cplx y, int k) const { return v_range(y, k, k)[0]; }

    double residual(cplx fm1, cplx f0, cplx fp1, cplx z, int k) const {
        return recurrence_residual(fm1, f0, fp1, p_, z, k);
    }

private:
    static double sgn(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }
    double F_arg_abs(int k) const { return std::pow(p_.q, 2 - k) / std::abs(p_.a * p_.a * p_.t); }
    void check_F_param(cplx y) const {
        if (y == 0.0) throw Error(ErrorKind::DomainViolation, "y must be nonzero");
        if (in_q_lattice(y * y, p_.q, kLatticeTol, std::numeric_limits<long>::min(), -1))
            throw Error(ErrorKind::SingularParameter, "y^2 lies in q^{-N}");
    }

    EigenParams p_;
    int kF_ = 0;
    int kuv_ = 0;
};

} // namespace qhyper
