#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "eigenfunctions.hpp"
#include "qcore.hpp"

namespace qhyper {

enum class RegimeKind { Case1, Case2 };

struct Regime {
    RegimeKind kind = RegimeKind::Case1;
    double q = 0.5;
    double psi = 0.0; // case 1
    double r = 1.0;   // case 1
    double s = 1.0;   // case 2
    double t2 = -1.0; // case 2, the real t

    // a = sqrt(q) e^{i psi}, t = i r e^{-i psi}
    static Regime case1(double q, double psi, double r) {
        check_base(q);
        if (r == 0.0 || !std::isfinite(r)) throw Error(ErrorKind::DomainViolation, "case 1 requires r != 0");
        Regime g;
        g.kind = RegimeKind::Case1;
        g.q = q;
        g.psi = psi;
        g.r = r;
        cplx t = g.t();
        if (std::abs(t.imag()) <= 1e-12 * std::abs(t) && t.real() > 0.0)
            throw Error(ErrorKind::DomainViolation, "case 1 requires t = i r e^{-i psi} not on the positive real axis");
        (void)g.params();
        return g;
    }
    // a = i s, t < 0
    static Regime case2(double q, double s, double t) {
        check_base(q);
        if (s == 0.0 || !std::isfinite(s)) throw Error(ErrorKind::DomainViolation, "case 2 requires s != 0");
        if (!(t < 0.0)) throw Error(ErrorKind::DomainViolation, "case 2 requires t < 0");
        Regime g;
        g.kind = RegimeKind::Case2;
        g.q = q;
        g.s = s;
        g.t2 = t;
        (void)g.params();
        return g;
    }

    bool is_case1() const { return kind == RegimeKind::Case1; }
    cplx a() const {
        return is_case1() ? std::sqrt(q) * std::polar(1.0, psi) : cplx(0.0, s);
    }
    cplx t() const { return is_case1() ? cplx(0.0, r) * std::polar(1.0, -psi) : cplx(t2, 0.0); }
    EigenParams params() const { return EigenParams(a(), t(), q); }
    std::string name() const { return is_case1() ? "case1" : "case2"; }
};

struct ExtensionCoeffs {
    double theta = 0.0;
    double E = 0.0;
    double F = 0.0;
    cplx A;
    cplx B;
    double lambda0 = 1.0 - std::numbers::sqrt2;
    bool reduced = false;
};

class JacobiOperator {
public:
    explicit JacobiOperator(Regime reg) : reg_(reg), ef_(reg.params()) {
        if (reg_.is_case1()) {
            phi_.assign(2 * kTab + 1, 0.0);
            for (int k = 0; k < kTab; ++k) phi_[kTab + k + 1] = phi_[kTab + k] + dphi(k);
            for (int k = -1; k >= -kTab; --k) phi_[kTab + k] = phi_[kTab + k + 1] - dphi(k);
        }
        gamma_ = compute_gamma();
    }

    const Regime& regime() const { return reg_; }
    const Eigenfunctions& ef() const { return ef_; }
    const EigenParams& params() const { return ef_.params(); }
    double q() const { return reg_.q; }
    double gamma() const { return gamma_; }

    double a(int k) const {
        double q = reg_.q;
        if (reg_.is_case1()) {
            double qk = std::pow(q, k);
            return std::sqrt(1.0 - 2.0 * reg_.r * qk * std::sin(reg_.psi) + reg_.r * reg_.r * qk * qk) /
                   (std::abs(reg_.r) * qk);
        }
        double t = reg_.t2, s2 = reg_.s * reg_.s;
        return std::sqrt((1.0 - std::pow(q, -k) / t) * (1.0 - std::pow(q, 1 - k) / (t * s2)));
    }

    double phi(int k) const {
        if (!reg_.is_case1()) return 0.0;
        if (k >= -kTab && k <= kTab) return phi_[static_cast<std::size_t>(k + kTab)];
        double v = phi_[k > 0 ? 2 * kTab : 0];
        if (k > kTab)
            for (int j = kTab; j < k; ++j) v += dphi(j);
        else
            for (int j = -kTab - 1; j >= k; --j) v -= dphi(j);
        return v;
    }

    cplx alpha(int k) const {
        double q = reg_.q;
        if (reg_.is_case1()) return std::polar(std::pow(q, 0.5 * k), phi(k));
        double t = reg_.t2, s2 = reg_.s * reg_.s;
        // (t q^k;q)_inf / (t s^2 q^{k-1};q)_inf factor by factor, both products overflow for k << 0
        double ratio = (theta(s2 * t / q, q) / theta(t, q)).real();
        double x = t * std::pow(q, k), w = t * s2 * std::pow(q, k - 1);
        while (std::abs(x) + std::abs(w) > 1e-17) {
            ratio *= (1.0 - x) / (1.0 - w);
            x *= q;
            w *= q;
        }
        cplx unit = std::pow(cplx(0.0, reg_.s > 0 ? 1.0 : -1.0), k);
        return unit * std::pow(q, 0.5 * k) * std::sqrt(std::abs(ratio));
    }

    std::vector<cplx> alpha_range(int kmin, int kmax) const {
        std::vector<cplx> out;
        for (int k = kmin; k <= kmax; ++k) out.push_back(alpha(k));
        return out;
    }

    cplx wronskian_at(cplx fk, cplx fk1, cplx gk, cplx gk1, int k) const {
        return 0.5 * a(k) * (fk1 * gk - fk * gk1);
    }
    template <class S1, class S2>
    cplx wronskian(const S1& f, const S2& g, int k) const {
        return wronskian_at(f(k), f(k + 1), g(k), g(k + 1), k);
    }

    // alpha_k F_k(y), k in [kmin, kmax]
    std::vector<cplx> alphaF_range(cplx y, int kmin, int kmax) const {
        auto F = ef_.F_range(y, kmin, kmax);
        for (int k = kmin; k <= kmax; ++k) F[static_cast<std::size_t>(k - kmin)] *= alpha(k);
        return F;
    }
    std::vector<cplx> alphaU_range(cplx y, int kmin, int kmax, int sign) const {
        auto u = ef_.uv_range(y, kmin, kmax, sign);
        for (int k = kmin; k <= kmax; ++k) u[static_cast<std::size_t>(k - kmin)] *= alpha(k);
        return u;
    }

    ExtensionCoeffs extension(double th, bool reduced = false) const {
        ExtensionCoeffs ext;
        ext.theta = th;
        ext.reduced = reduced;
        const double l0 = ext.lambda0, q = reg_.q, sq = std::sqrt(q);
        const cplx I(0.0, 1.0);
        cplx E, F;
        if (reduced) {
            if (!reg_.is_case1() || reg_.psi != 0.0)
                throw Error(ErrorKind::DomainViolation, "reduced extension coefficients need case 1 with psi = 0");
            E = theta(reg_.r / (sq * l0), q);
            F = theta(-reg_.r / (sq * l0), q);
        } else if (reg_.is_case1()) {
            cplx ep = std::polar(1.0, reg_.psi), em = std::conj(ep);
            double r = reg_.r;
            E = qpoch_multi({I * l0 * sq * ep, -I * l0 * sq * em, r / (sq * l0), q * sq * l0 / r}, q, kInfinity);
            F = qpoch_multi({-I * l0 * sq * ep, I * l0 * sq * em, -r / (sq * l0), -q * sq * l0 / r}, q, kInfinity);
        } else {
            double s = reg_.s, t = reg_.t2;
            E = qpoch_multi({-s * l0, -l0 * q / s, s * t / (q * l0), q * q * l0 / (s * t)}, q, kInfinity);
            F = qpoch_multi({s * l0, l0 * q / s, -s * t / (q * l0), -q * q * l0 / (s * t)}, q, kInfinity);
        }
        ext.E = E.real();
        ext.F = F.real();
        cplx Abar = ext.E * std::polar(1.0, th) + ext.F * std::polar(1.0, -th);
        ext.A = std::conj(Abar);
        ext.B = Abar;
        return ext;
    }
    // imaginary parts of the raw products, for the reality check
    std::pair<double, double> extension_imag_parts() const {
        const double l0 = 1.0 - std::numbers::sqrt2, q = reg_.q, sq = std::sqrt(q);
        const cplx I(0.0, 1.0);
        cplx E, F;
        if (reg_.is_case1()) {
            cplx ep = std::polar(1.0, reg_.psi), em = std::conj(ep);
            double r = reg_.r;
            E = qpoch_multi({I * l0 * sq * ep, -I * l0 * sq * em, r / (sq * l0), q * sq * l0 / r}, q, kInfinity);
            F = qpoch_multi({-I * l0 * sq * ep, I * l0 * sq * em, -r / (sq * l0), -q * sq * l0 / r}, q, kInfinity);
        } else {
            double s = reg_.s, t = reg_.t2;
            E = qpoch_multi({-s * l0, -l0 * q / s, s * t / (q * l0), q * q * l0 / (s * t)}, q, kInfinity);
            F = qpoch_multi({s * l0, l0 * q / s, -s * t / (q * l0), -q * q * l0 / (s * t)}, q, kInfinity);
        }
        return {std::abs(E.imag()) / std::max(1.0, std::abs(E)), std::abs(F.imag()) / std::max(1.0, std::abs(F))};
    }

    // psi_k = A alpha_k u_k + conj(A) alpha_k v_k at spectral parameter y
    std::vector<cplx> psi_range(const ExtensionCoeffs& ext, cplx y, int kmin, int kmax) const {
        auto u = ef_.u_range(y, kmin, kmax);
        auto v = ef_.v_range(y, kmin, kmax);
        std::vector<cplx> out(u.size());
        for (int k = kmin; k <= kmax; ++k) {
            auto i = static_cast<std::size_t>(k - kmin);
            out[i] = alpha(k) * (ext.A * u[i] + ext.B * v[i]);
        }
        return out;
    }
    cplx psi(const ExtensionCoeffs& ext, cplx y, int k) const { return psi_range(ext, y, k, k)[0]; }

    std::vector<cplx> big_psi_range(cplx y, int kmin, int kmax) const {
        if (std::abs(y) >= 1.0) throw Error(ErrorKind::DomainViolation, "Psi requires |y| < 1");
        auto f = alphaF_range(y, kmin, kmax);
        cplx ph = std::polar(1.0, gamma_);
        for (auto& x : f) x *= ph;
        return f;
    }
    cplx big_psi(cplx y, int k) const { return big_psi_range(y, k, k)[0]; }

    // A c(y;a) + conj(A) c(y;-a)
    cplx W1(const ExtensionCoeffs& ext, cplx y) const { return ext.A * ef_.c(y, 1) + ext.B * ef_.c(y, -1); }
    // conj(A) c(y;-a) + A c(y;a)
    cplx h(const ExtensionCoeffs& ext, cplx y) const { return ext.B * ef_.c(y, -1) + ext.A * ef_.c(y, 1); }

    // [Psi(z), conj(psi(conj z))], |y| < 1
    cplx green_wronskian(const ExtensionCoeffs& ext, cplx y) const {
        cplx yb = std::conj(1.0 / y);
        cplx brace = std::conj(ext.A * ef_.c(yb, 1)) + ext.A * std::conj(ef_.c(yb, -1));
        return std::polar(1.0, gamma_) * brace * 0.5 * (1.0 / y - y);
    }

    struct GreenData {
        int kmin = 0, kmax = -1;
        std::vector<cplx> Psi;     // Psi_k(z)
        std::vector<cplx> psibar;  // conj(psi_k(conj z))
        cplx W;
        cplx at(int k, int l) const {
            int lo = std::min(k, l), hi = std::max(k, l);
            return Psi[static_cast<std::size_t>(lo - kmin)] * psibar[static_cast<std::size_t>(hi - kmin)] / W;
        }
    };

    GreenData green_data(const ExtensionCoeffs& ext, cplx z, int kmin, int kmax) const {
        if (std::abs(z.imag()) == 0.0) throw Error(ErrorKind::DomainViolation, "Green kernel requires z off the real line");
        auto sp = SpectralParam::from_z(z);
        GreenData g;
        g.kmin = kmin;
        g.kmax = kmax;
        g.Psi = big_psi_range(sp.y, kmin, kmax);
        auto ps = psi_range(ext, std::conj(sp.y), kmin, kmax);
        g.psibar.resize(ps.size());
        for (std::size_t i = 0; i < ps.size(); ++i) g.psibar[i] = std::conj(ps[i]);
        g.W = green_wronskian(ext, sp.y);
        if (std::abs(g.W) < 1e-14)
            throw Error(ErrorKind::SingularWronskian, "Wronskian vanishes at this z");
        return g;
    }
    cplx green_kernel(const ExtensionCoeffs& ext, cplx z, int k, int l) const {
        return green_data(ext, z, std::min(k, l), std::max(k, l)).at(k, l);
    }

    // [conj(alpha u(conj w)), alpha F(y)]_N; sign=-1 uses v
    cplx tail_wronskian(cplx w, cplx y, int N, int sign) const {
        auto u = alphaU_range(std::conj(w), N, N + 1, sign);
        auto F = alphaF_range(y, N, N + 1);
        return wronskian_at(std::conj(u[0]), std::conj(u[1]), F[0], F[1], N);
    }
    cplx tail_wronskian_limit_closed(cplx y, int sign) const {
        double q = reg_.q;
        cplx d = ef_.d(y, sign);
        if (reg_.is_case1()) return -double(sign) * std::sqrt(q) / cplx(0.0, reg_.r) * d;
        double s = reg_.s, t = reg_.t2;
        cplx pref = cplx(0.0, q / (s * t)) * theta(s * s * t / q, q) / theta(t, q);
        return double(sign) * pref * d;
    }
    // doubles N until consecutive values agree within tol
    cplx tail_wronskian_limit(cplx w, cplx y, int sign, int N0 = 30, int Nmax = 480, double tol = 1e-9) const {
        cplx prev = tail_wronskian(w, y, N0, sign);
        for (int N = 2 * N0; N <= Nmax; N *= 2) {
            cplx cur = tail_wronskian(w, y, N, sign);
            if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
            prev = cur;
        }
        throw Error(ErrorKind::NonConvergence, "tail Wronskian did not settle");
    }

    cplx boundary_condition_wronskian(const ExtensionCoeffs& ext, cplx y, int N) const {
        const cplx il0(0.0, ext.lambda0);
        cplx ph = std::polar(1.0, gamma_);
        auto P1 = alphaF_range(il0, N, N + 1);
        auto P2 = alphaF_range(-il0, N, N + 1);
        cplx e1 = std::polar(1.0, ext.theta), e2 = std::conj(e1);
        cplx g0 = ph * (e1 * P1[0] + e2 * P2[0]);
        cplx g1 = ph * (e1 * P1[1] + e2 * P2[1]);
        auto ps = psi_range(ext, std::conj(y), N, N + 1);
        return wronskian_at(std::conj(ps[0]), std::conj(ps[1]), g0, g1, N);
    }

    double defect_residual(const ExtensionCoeffs& ext) const {
        const cplx il0(0.0, ext.lambda0);
        cplx e1 = std::polar(1.0, ext.theta), e2 = std::conj(e1);
        cplx Xm = e1 * ef_.d(il0, -1) + e2 * ef_.d(-il0, -1);
        cplx Xp = e1 * ef_.d(il0, 1) + e2 * ef_.d(-il0, 1);
        cplx l = std::conj(ext.B) * Xm, r = std::conj(ext.A) * Xp;
        double scale = std::max({std::abs(l), std::abs(r), 1e-300});
        return std::abs(l - r) / scale;
    }

private:
    static constexpr int kTab = 1024;

    double dphi(int k) const {
        const cplx I(0.0, 1.0);
        return std::arg(1.0 + I * reg_.r * std::polar(1.0, reg_.psi) * std::pow(reg_.q, k)) -
               0.5 * std::numbers::pi * (reg_.r > 0 ? 1.0 : -1.0);
    }

    cplx conj_ratio(cplx y, int k) const {
        auto f1 = alphaF_range(y, k, k)[0];
        auto f2 = alphaF_range(std::conj(y), k, k)[0];
        return std::conj(f2) / f1;
    }

    double compute_gamma() const {
        if (!reg_.is_case1()) return 0.0;
        cplx C0 = conj_ratio(cplx(0.3, 0.4), 0);
        cplx C1 = conj_ratio(cplx(-0.25, 0.55), 3);
        if (std::abs(std::abs(C0) - 1.0) > 1e-10 || std::abs(C1 - C0) > 1e-10)
            throw Error(ErrorKind::ValidationFailed, "conjugation constant is not a k- and y-independent phase");
        return 0.5 * std::arg(C0);
    }

    Regime reg_;
    Eigenfunctions ef_;
    std::vector<double> phi_;
    double gamma_ = 0.0;
};

} // namespace qhyper
