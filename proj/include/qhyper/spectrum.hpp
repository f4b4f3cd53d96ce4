#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "jacobi.hpp"

namespace qhyper {

inline double continuous_density(const JacobiOperator& op, const ExtensionCoeffs& ext, double chi) {
    if (!(chi > 0.0 && chi < std::numbers::pi))
        throw Error(ErrorKind::DomainViolation, "density is defined for 0 < chi < pi");
    cplx w = op.W1(ext, std::polar(1.0, chi));
    return 1.0 / (2.0 * std::numbers::pi * std::norm(w));
}

// factorized weight for case 1 with psi = 0: A c(y;a) + conj(A) c(y;-a)
inline cplx weight_E_factorized(const JacobiOperator& op, const ExtensionCoeffs& ext, cplx y) {
    const Regime& g = op.regime();
    if (!g.is_case1() || g.psi != 0.0)
        throw Error(ErrorKind::DomainViolation, "factorized weight needs case 1 with psi = 0");
    double q = g.q, sq = std::sqrt(q);
    cplx ir(0.0, g.r);
    cplx pre = qpoch_multi({sq / y, -sq / y}, q, kInfinity) /
               (qpinf(-q, q) * theta(ir, q) * qpinf(1.0 / (y * y), q));
    return pre * (theta(y * sq * ir, q) * ext.A + theta(-y * sq * ir, q) * ext.B);
}

struct MassPoint {
    double x0 = 0.0;
    double y0 = 0.0;
    double weight = 0.0;     // mass(k,l) = psi_k conj(psi_l) * weight
    double weight_imag = 0.0;
    cplx W1;                 // A c(1/y0;a) + conj(A) c(1/y0;-a)
    cplx hprime;
    double h_rel = 0.0;      // |h(y0)| / local scale
};

struct DiscreteSpectrum {
    std::vector<MassPoint> points;
};

// real restriction of e^{i beta} h on the real y axis
class RealH {
public:
    RealH(const JacobiOperator& op, const ExtensionCoeffs& ext)
        : op_(op), ext_(ext), rot_(std::polar(1.0, std::arg(theta(op.params().t, op.q())))) {}
    double operator()(double y) const { return (rot_ * op_.h(ext_, y)).real(); }
    cplx full(double y) const { return rot_ * op_.h(ext_, y); }
    double scale(double y) const {
        return std::abs(ext_.A * op_.ef().c(y, 1)) + std::abs(ext_.B * op_.ef().c(y, -1));
    }

private:
    const JacobiOperator& op_;
    const ExtensionCoeffs& ext_;
    cplx rot_;
};

inline double refine_root(const RealH& f, double lo, double hi) {
    if (lo > hi) std::swap(lo, hi);
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    boost::uintmax_t iters = 200;
    auto tol = boost::math::tools::eps_tolerance<double>(50);
    auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
    return 0.5 * (a + b);
}

inline std::vector<double> zeros_in_y_window(const JacobiOperator& op, const ExtensionCoeffs& ext, double ylo,
                                             double yhi, int per_decade = 750) {
    if (ylo * yhi <= 0.0 || std::abs(ylo) <= 1.0 || std::abs(yhi) <= 1.0)
        throw Error(ErrorKind::DomainViolation, "y window must lie on one side with |y| > 1");
    double sgn = ylo > 0 ? 1.0 : -1.0;
    double lo = std::min(std::abs(ylo), std::abs(yhi)), hi = std::max(std::abs(ylo), std::abs(yhi));
    int n = std::max(8, static_cast<int>(std::ceil(per_decade * std::log10(hi / lo))));
    RealH f(op, ext);
    std::vector<double> ys(static_cast<std::size_t>(n + 1)), fs(ys.size());
    for (int i = 0; i <= n; ++i) {
        ys[static_cast<std::size_t>(i)] = sgn * lo * std::pow(hi / lo, double(i) / n);
        fs[static_cast<std::size_t>(i)] = f(ys[static_cast<std::size_t>(i)]);
        if (!std::isfinite(fs[static_cast<std::size_t>(i)]))
            throw Error(ErrorKind::WindowTooNarrow, "h overflows inside the scan window");
    }
    std::vector<std::size_t> cells;
    for (std::size_t i = 0; i + 1 < ys.size(); ++i)
        if ((fs[i] > 0.0) != (fs[i + 1] > 0.0)) cells.push_back(i);
    for (std::size_t j = 1; j < cells.size(); ++j)
        if (cells[j] == cells[j - 1] + 1) {
            std::string msg = "adjacent sign changes near y=" + std::to_string(ys[cells[j]]) +
                              "; unrefined bracket [" + std::to_string(ys[cells[j - 1]]) + ", " +
                              std::to_string(ys[cells[j] + 1]) + "]";
            throw Error(ErrorKind::WindowTooWide, msg);
        }
    std::vector<double> out;
    for (auto i : cells) out.push_back(refine_root(f, ys[i], ys[i + 1]));
    return out;
}

inline cplx h_derivative(const JacobiOperator& op, const ExtensionCoeffs& ext, double y0, double rel_step) {
    double e = rel_step * std::abs(y0);
    return (op.h(ext, y0 + e) - op.h(ext, y0 - e)) / (2.0 * e);
}

// h'(y0) from the trapezoidal rule on a circle of radius rho_rel |y0|
inline cplx h_derivative_contour(const JacobiOperator& op, const ExtensionCoeffs& ext, double y0,
                                 double rho_rel = 1e-3, int M = 32) {
    const double rho = rho_rel * std::abs(y0);
    cplx acc = 0.0;
    for (int j = 0; j < M; ++j) {
        cplx e = std::polar(1.0, 2.0 * std::numbers::pi * (j + 0.5) / M);
        acc += op.h(ext, y0 + rho * e) * std::conj(e);
    }
    return acc / (double(M) * rho);
}

inline MassPoint make_mass_point(const JacobiOperator& op, const ExtensionCoeffs& ext, double y0) {
    MassPoint m;
    m.y0 = y0;
    m.x0 = 0.5 * (y0 + 1.0 / y0);
    RealH f(op, ext);
    double scale = f.scale(y0);
    m.h_rel = std::abs(op.h(ext, y0)) / scale;
    cplx d1 = h_derivative(op, ext, y0, 1e-6);
    cplx d2 = h_derivative(op, ext, y0, 1e-7);
    if (std::abs(d1) * std::abs(y0) < 1e-12 * scale)
        throw Error(ErrorKind::NonSimpleZero, "h' vanishes at y0=" + std::to_string(y0));
    if (std::abs(d1 - d2) > 1e-7 * std::abs(d1))
        throw Error(ErrorKind::ValidationFailed, "finite-difference derivative of h is inconsistent");
    m.hprime = h_derivative_contour(op, ext, y0);
    if (std::abs(m.hprime - d1) > 1e-7 * std::abs(d1))
        throw Error(ErrorKind::ValidationFailed, "contour and difference derivatives of h disagree");
    m.W1 = op.W1(ext, 1.0 / y0);
    cplx w = 1.0 / (y0 * std::conj(m.W1) * m.hprime);
    m.weight = w.real();
    m.weight_imag = w.imag();
    return m;
}

inline DiscreteSpectrum locate_discrete(const JacobiOperator& op, const ExtensionCoeffs& ext, double x_min,
                                        double x_max, int per_decade = 750) {
    if (!(x_min < x_max) || (x_min <= 1.0 && x_max >= -1.0) || (x_min < -1.0 && x_max > 1.0))
        throw Error(ErrorKind::DomainViolation, "x window must be an interval on one side of [-1,1]");
    auto y_of = [](double x) { return x > 0 ? x + std::sqrt(x * x - 1.0) : x - std::sqrt(x * x - 1.0); };
    DiscreteSpectrum ds;
    for (double y0 : zeros_in_y_window(op, ext, y_of(x_min), y_of(x_max), per_decade))
        ds.points.push_back(make_mass_point(op, ext, y0));
    std::sort(ds.points.begin(), ds.points.end(), [](auto& a, auto& b) { return a.x0 < b.x0; });
    return ds;
}

// both signs, 1 < |y| <= ymax
inline DiscreteSpectrum locate_discrete_y(const JacobiOperator& op, const ExtensionCoeffs& ext, double ymax,
                                          int per_decade = 750, double ymin = 1.0 + 1e-9) {
    DiscreteSpectrum ds;
    for (double sg : {1.0, -1.0})
        for (double y0 : zeros_in_y_window(op, ext, sg * ymin, sg * ymax, per_decade))
            ds.points.push_back(make_mass_point(op, ext, y0));
    std::sort(ds.points.begin(), ds.points.end(), [](auto& a, auto& b) { return a.x0 < b.x0; });
    return ds;
}

// psi_k(x0) for k in [kmin,kmax] at a mass point, through alpha F(1/y0)
inline std::vector<cplx> psi_at_mass(const JacobiOperator& op, const MassPoint& m, int kmin, int kmax) {
    auto f = op.alphaF_range(1.0 / m.y0, kmin, kmax);
    for (auto& x : f) x *= m.W1;
    return f;
}

inline cplx discrete_mass(const JacobiOperator& op, const MassPoint& m, int k, int l) {
    auto pk = psi_at_mass(op, m, k, k)[0];
    auto pl = psi_at_mass(op, m, l, l)[0];
    return pk * std::conj(pl) * m.weight;
}

// contour integral (1/2 pi i) \oint G_{l,k}(z) dz on a circle around x0
inline cplx contour_mass(const JacobiOperator& op, const ExtensionCoeffs& ext, double x0, double radius, int k,
                         int l, int M = 128) {
    cplx acc = 0.0;
    for (int j = 0; j < M; ++j) {
        double ph = 2.0 * std::numbers::pi * (j + 0.5) / M;
        cplx e = std::polar(1.0, ph);
        cplx z = x0 + radius * e;
        acc += op.green_kernel(ext, z, l, k) * radius * e;
    }
    return acc / double(M);
}

// nome tau with q = e^{i pi tau}
inline cplx elliptic_tau(double q) { return {0.0, -std::log(q) / std::numbers::pi}; }

inline cplx elliptic_g(cplx w, double r, double q) {
    cplx y = std::exp(cplx(0.0, 2.0 * std::numbers::pi) * w);
    cplx c = std::sqrt(q) * cplx(0.0, r) * y;
    cplx den = theta(-c, q);
    if (std::abs(den) < 1e-300 || std::abs(den) < 1e-13 * std::abs(theta(c, q)))
        throw Error(ErrorKind::PoleEncountered, "elliptic g has a pole here");
    return theta(c, q) / den;
}

// number of zeros of y -> theta(sign * sqrt(q) i r y) in the annulus q^2 R < |y| <= R
inline int theta_zero_count_annulus(double r, double q, double sign, double R, int M = 4096) {
    auto winding = [&](double rad) {
        double total = 0.0;
        cplx prev = theta(sign * std::sqrt(q) * cplx(0.0, r) * rad, q);
        for (int j = 1; j <= M; ++j) {
            cplx cur = theta(sign * std::sqrt(q) * cplx(0.0, r) * std::polar(rad, 2.0 * std::numbers::pi * j / M), q);
            total += std::arg(cur / prev);
            prev = cur;
        }
        return total / (2.0 * std::numbers::pi);
    };
    return static_cast<int>(std::lround(winding(R) - winding(q * q * R)));
}

struct EllipticOrder {
    int zeros;
    int poles;
};

inline EllipticOrder elliptic_g_order(double r, double q, double R = 1.137) {
    return {theta_zero_count_annulus(r, q, 1.0, R), theta_zero_count_annulus(r, q, -1.0, R)};
}

struct BoundaryReport {
    double y = 1.0;
    cplx wronskian;
    double wronskian_error = 0.0;
    double recurrence_residual = 0.0;
    std::vector<std::pair<int, double>> growth;  // |H_k / ((-k) a^{-k} y^{-k-1}) - 1|
    bool pass = false;
};

inline cplx dF_dy(const JacobiOperator& op, double y0, int k, double h = 1e-4) {
    auto D = [&](double s) { return (op.ef().F(y0 + s, k) - op.ef().F(y0 - s, k)) / (2.0 * s); };
    return (4.0 * D(0.5 * h) - D(h)) / 3.0;
}

inline BoundaryReport boundary_point_diagnostic(const JacobiOperator& op, double y0) {
    if (std::abs(std::abs(y0) - 1.0) > 0.0) throw Error(ErrorKind::DomainViolation, "boundary diagnostic needs y = +1 or -1");
    BoundaryReport rep;
    rep.y = y0;
    const int k = -10;
    cplx H0 = dF_dy(op, y0, k), H1 = dF_dy(op, y0, k + 1), Hm = dF_dy(op, y0, k - 1);
    auto aF = op.alphaF_range(y0, k, k + 1);
    rep.wronskian = op.wronskian_at(op.alpha(k) * H0, op.alpha(k + 1) * H1, std::conj(aF[0]), std::conj(aF[1]), k);
    rep.wronskian_error = std::abs(rep.wronskian + 0.5);
    rep.recurrence_residual = op.ef().residual(Hm, H0, H1, y0, k);
    cplx a = op.params().a;
    bool decreasing = true;
    double prev = 1e300;
    for (int kk : {-25, -30, -35, -40}) {
        cplx H = dF_dy(op, y0, kk);
        cplx lead = double(-kk) * std::pow(a, -kk) * std::pow(y0, -kk - 1);
        double e = std::abs(H / lead - 1.0);
        rep.growth.emplace_back(kk, e);
        if (e > prev * 1.01 + 1e-9) decreasing = false;
        prev = e;
    }
    rep.pass = rep.wronskian_error < 1e-7 && rep.recurrence_residual < 1e-7 && decreasing && prev < 1e-6;
    return rep;
}

} // namespace qhyper
