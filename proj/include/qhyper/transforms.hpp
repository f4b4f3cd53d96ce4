#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "spectrum.hpp"

namespace qhyper {

struct L2Vector {
    int kmin = 0;
    std::vector<cplx> c;

    int kmax() const { return kmin + static_cast<int>(c.size()) - 1; }
    cplx operator[](int k) const {
        return (k < kmin || k > kmax()) ? cplx(0.0) : c[static_cast<std::size_t>(k - kmin)];
    }
    static L2Vector unit(int k) { return {k, {cplx(1.0)}}; }
};

class CMatrix {
public:
    CMatrix(int kmin, int kmax) : kmin_(kmin), n_(kmax - kmin + 1), d_(static_cast<std::size_t>(n_ * n_)) {}
    cplx& operator()(int k, int l) { return d_[idx(k, l)]; }
    cplx operator()(int k, int l) const { return d_[idx(k, l)]; }
    int kmin() const { return kmin_; }
    int kmax() const { return kmin_ + n_ - 1; }
    double max_dev_from_identity() const {
        double m = 0.0;
        for (int k = kmin(); k <= kmax(); ++k)
            for (int l = kmin(); l <= kmax(); ++l) m = std::max(m, std::abs((*this)(k, l) - (k == l ? 1.0 : 0.0)));
        return m;
    }
    double max_abs() const {
        double m = 0.0;
        for (auto& x : d_) m = std::max(m, std::abs(x));
        return m;
    }
    double hermitian_defect() const {
        double m = 0.0;
        for (int k = kmin(); k <= kmax(); ++k)
            for (int l = kmin(); l <= kmax(); ++l) m = std::max(m, std::abs((*this)(k, l) - std::conj((*this)(l, k))));
        return m;
    }
    CMatrix& operator+=(const CMatrix& o) {
        for (std::size_t i = 0; i < d_.size(); ++i) d_[i] += o.d_[i];
        return *this;
    }

private:
    std::size_t idx(int k, int l) const { return static_cast<std::size_t>((k - kmin_) * n_ + (l - kmin_)); }
    int kmin_, n_;
    std::vector<cplx> d_;
};

struct MeasureNode {
    double chi;
    double weight;  // quadrature weight times density
    std::vector<cplx> psi;
};

struct MeasureMass {
    MassPoint point;
    std::vector<cplx> psi;
};

struct DiscretizedMeasure {
    int kmin = 0, kmax = -1;
    double theta = 0.0;
    std::vector<MeasureNode> nodes;
    std::vector<MeasureMass> masses;
    double quad_error_estimate = 0.0;
    double tail_estimate = 0.0;
    double ymax_scanned = 0.0;
};

struct MeasureOptions {
    double quad_tol = 1e-9;
    double tail_tol = 1e-9;
    double ymax_limit = 1e7;
    int per_decade = 750;
    int max_depth = 24;
};

namespace detail {

using Gauss = boost::math::quadrature::gauss<double, 20>;

struct Panel {
    std::vector<MeasureNode> nodes;
    CMatrix G;
};

inline Panel eval_panel(const JacobiOperator& op, const ExtensionCoeffs& ext, double lo, double hi, int kmin,
                        int kmax) {
    Panel p{{}, CMatrix(kmin, kmax)};
    const auto& x = Gauss::abscissa();
    const auto& w = Gauss::weights();
    double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    auto add = [&](double chi, double wt) {
        MeasureNode nd;
        nd.chi = chi;
        nd.weight = wt * h * continuous_density(op, ext, chi);
        nd.psi = op.psi_range(ext, std::polar(1.0, chi), kmin, kmax);
        for (int k = kmin; k <= kmax; ++k)
            for (int l = kmin; l <= kmax; ++l)
                p.G(k, l) += nd.weight * nd.psi[static_cast<std::size_t>(k - kmin)] *
                             std::conj(nd.psi[static_cast<std::size_t>(l - kmin)]);
        p.nodes.push_back(std::move(nd));
    };
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0.0) {
            add(c, w[i]);
        } else {
            add(c - h * x[i], w[i]);
            add(c + h * x[i], w[i]);
        }
    }
    return p;
}

inline double mdiff(const CMatrix& a, const CMatrix& b) {
    double m = 0.0;
    for (int k = a.kmin(); k <= a.kmax(); ++k)
        for (int l = a.kmin(); l <= a.kmax(); ++l) m = std::max(m, std::abs(a(k, l) - b(k, l)));
    return m;
}

inline void adapt(const JacobiOperator& op, const ExtensionCoeffs& ext, double lo, double hi, Panel whole,
                  double tol, int depth, const MeasureOptions& opt, DiscretizedMeasure& out, CMatrix& G) {
    double mid = 0.5 * (lo + hi);
    Panel L = eval_panel(op, ext, lo, mid, out.kmin, out.kmax);
    Panel R = eval_panel(op, ext, mid, hi, out.kmin, out.kmax);
    CMatrix both = L.G;
    both += R.G;
    double err = mdiff(both, whole.G);
    if (err <= tol) {
        out.quad_error_estimate += err;
        G += both;
        for (auto& n : L.nodes) out.nodes.push_back(std::move(n));
        for (auto& n : R.nodes) out.nodes.push_back(std::move(n));
        return;
    }
    if (depth >= opt.max_depth) throw Error(ErrorKind::QuadratureFailure, "adaptive quadrature exceeded depth limit");
    adapt(op, ext, lo, mid, std::move(L), 0.5 * tol, depth + 1, opt, out, G);
    adapt(op, ext, mid, hi, std::move(R), 0.5 * tol, depth + 1, opt, out, G);
}

} // namespace detail

inline DiscretizedMeasure discretize_measure(const JacobiOperator& op, const ExtensionCoeffs& ext, int kmin, int kmax,
                                             const MeasureOptions& opt = {}) {
    DiscretizedMeasure m;
    m.kmin = kmin;
    m.kmax = kmax;
    m.theta = ext.theta;
    const double pi = std::numbers::pi;
    // geometric refinement toward both endpoints
    std::vector<double> cuts{0.0};
    for (double e : {1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 0.1}) cuts.push_back(e);
    for (double e : {0.1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) cuts.push_back(pi - e);
    cuts.push_back(pi);
    CMatrix G(kmin, kmax);
    double per = opt.quad_tol / double(cuts.size() - 1);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        auto whole = detail::eval_panel(op, ext, cuts[i], cuts[i + 1], kmin, kmax);
        detail::adapt(op, ext, cuts[i], cuts[i + 1], std::move(whole), per, 0, opt, m, G);
    }

    // discrete part: multiplicative windows until two consecutive windows contribute below tail_tol
    double factor = std::max(10.0, 1.5 / (op.q() * op.q()));
    double lo = 1.0 + 1e-9;
    int quiet = 0;
    while (quiet < 2) {
        double hi = lo * factor;
        if (hi > opt.ymax_limit)
            throw Error(ErrorKind::WindowTooNarrow, "discrete tail not converged below |y| = " + std::to_string(lo));
        double contrib = 0.0;
        for (double sg : {1.0, -1.0}) {
            for (double y0 : zeros_in_y_window(op, ext, sg * lo, sg * hi, opt.per_decade)) {
                MeasureMass mm;
                mm.point = make_mass_point(op, ext, y0);
                mm.psi = psi_at_mass(op, mm.point, kmin, kmax);
                for (int k = kmin; k <= kmax; ++k)
                    for (int l = kmin; l <= kmax; ++l)
                        contrib = std::max(contrib, std::abs(mm.psi[static_cast<std::size_t>(k - kmin)] *
                                                             std::conj(mm.psi[static_cast<std::size_t>(l - kmin)]) *
                                                             mm.point.weight));
                m.masses.push_back(std::move(mm));
            }
        }
        quiet = contrib < opt.tail_tol ? quiet + 1 : 0;
        m.tail_estimate = contrib;
        m.ymax_scanned = hi;
        lo = hi;
    }
    std::sort(m.masses.begin(), m.masses.end(), [](auto& a, auto& b) { return a.point.x0 < b.point.x0; });
    return m;
}

inline CMatrix orthogonality_matrix(const DiscretizedMeasure& m) {
    CMatrix G(m.kmin, m.kmax);
    auto idx = [&](int k) { return static_cast<std::size_t>(k - m.kmin); };
    for (auto& nd : m.nodes)
        for (int k = m.kmin; k <= m.kmax; ++k)
            for (int l = m.kmin; l <= m.kmax; ++l) G(k, l) += nd.weight * nd.psi[idx(k)] * std::conj(nd.psi[idx(l)]);
    for (auto& ms : m.masses)
        for (int k = m.kmin; k <= m.kmax; ++k)
            for (int l = m.kmin; l <= m.kmax; ++l)
                G(k, l) += ms.point.weight * ms.psi[idx(k)] * std::conj(ms.psi[idx(l)]);
    return G;
}

inline CMatrix orthogonality_matrix(const JacobiOperator& op, const ExtensionCoeffs& ext, int kmin, int kmax,
                                    const MeasureOptions& opt = {}) {
    return orthogonality_matrix(discretize_measure(op, ext, kmin, kmax, opt));
}

// <xi, psi(x)> with x = (y + 1/y)/2
inline cplx fourier_theta(const JacobiOperator& op, const ExtensionCoeffs& ext, const L2Vector& xi, cplx y) {
    if (xi.c.empty()) return 0.0;
    auto ps = op.psi_range(ext, y, xi.kmin, xi.kmax());
    cplx s = 0.0;
    for (int k = xi.kmin; k <= xi.kmax(); ++k) s += xi[k] * std::conj(ps[static_cast<std::size_t>(k - xi.kmin)]);
    return s;
}
inline cplx fourier_theta_real(const JacobiOperator& op, const ExtensionCoeffs& ext, const L2Vector& xi, double x) {
    cplx y = (std::abs(x) < 1.0) ? std::polar(1.0, std::acos(x)) : SpectralParam::from_z(x).y;
    return fourier_theta(op, ext, xi, y);
}
inline cplx fourier_theta_mass(const JacobiOperator& op, const L2Vector& xi, const MassPoint& m) {
    if (xi.c.empty()) return 0.0;
    auto ps = psi_at_mass(op, m, xi.kmin, xi.kmax());
    cplx s = 0.0;
    for (int k = xi.kmin; k <= xi.kmax(); ++k) s += xi[k] * std::conj(ps[static_cast<std::size_t>(k - xi.kmin)]);
    return s;
}

// transform values on the nodes and masses of a discretized measure
struct TransformSamples {
    std::vector<cplx> at_nodes;
    std::vector<cplx> at_masses;
};

inline TransformSamples sample_transform(const DiscretizedMeasure& m, const L2Vector& xi) {
    TransformSamples s;
    for (auto& nd : m.nodes) {
        cplx v = 0.0;
        for (int k = xi.kmin; k <= xi.kmax(); ++k) v += xi[k] * std::conj(nd.psi[static_cast<std::size_t>(k - m.kmin)]);
        s.at_nodes.push_back(v);
    }
    for (auto& ms : m.masses) {
        cplx v = 0.0;
        for (int k = xi.kmin; k <= xi.kmax(); ++k) v += xi[k] * std::conj(ms.psi[static_cast<std::size_t>(k - m.kmin)]);
        s.at_masses.push_back(v);
    }
    return s;
}

// evaluator receives the spectral parameter: e^{i chi} on the continuous part, y0 at a mass point
using TransformEvaluator = std::function<cplx(cplx y, bool is_mass)>;

inline cplx inverse_transform(const DiscretizedMeasure& m, const TransformEvaluator& Fxi, int l) {
    if (l < m.kmin || l > m.kmax) throw Error(ErrorKind::DomainViolation, "index outside the discretized range");
    auto il = static_cast<std::size_t>(l - m.kmin);
    cplx s = 0.0;
    for (auto& nd : m.nodes) s += nd.weight * Fxi(std::polar(1.0, nd.chi), false) * nd.psi[il];
    for (auto& ms : m.masses) s += ms.point.weight * Fxi(cplx(ms.point.y0), true) * ms.psi[il];
    return s;
}

inline cplx inverse_transform(const DiscretizedMeasure& m, const TransformSamples& s, int l) {
    auto il = static_cast<std::size_t>(l - m.kmin);
    cplx acc = 0.0;
    for (std::size_t i = 0; i < m.nodes.size(); ++i) acc += m.nodes[i].weight * s.at_nodes[i] * m.nodes[i].psi[il];
    for (std::size_t i = 0; i < m.masses.size(); ++i)
        acc += m.masses[i].point.weight * s.at_masses[i] * m.masses[i].psi[il];
    return acc;
}

// int x F xi conj(F eta) dmu, the spectral form of <L xi, eta>
inline cplx spectral_form(const DiscretizedMeasure& m, const TransformSamples& a, const TransformSamples& b,
                          bool with_x) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < m.nodes.size(); ++i)
        acc += m.nodes[i].weight * (with_x ? std::cos(m.nodes[i].chi) : 1.0) * a.at_nodes[i] * std::conj(b.at_nodes[i]);
    for (std::size_t i = 0; i < m.masses.size(); ++i)
        acc += m.masses[i].point.weight * (with_x ? m.masses[i].point.x0 : 1.0) * a.at_masses[i] *
               std::conj(b.at_masses[i]);
    return acc;
}

// <L xi, eta> with 2 L e_k = a_k e_{k+1} + a_{k-1} e_{k-1}
inline cplx apply_form(const JacobiOperator& op, const L2Vector& xi, const L2Vector& eta) {
    cplx s = 0.0;
    for (int k = xi.kmin - 1; k <= xi.kmax() + 1; ++k) {
        cplx Lxi = 0.5 * (op.a(k - 1) * xi[k - 1] + op.a(k) * xi[k + 1]);
        s += Lxi * std::conj(eta[k]);
    }
    return s;
}

// E_q(z; t), z = (y + 1/y)/2, with a rounding and truncation estimate
inline SeriesValue q_exponential_value(cplx z, cplx t, double q) {
    check_base(q);
    SeriesValue out;
    if (t == 0.0) return out;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    cplx y = SpectralParam::from_z(z).y;
    double p = std::sqrt(q), p4 = std::sqrt(p);
    cplx pre = qpinf(-t, p) / qpinf(q * t * t, q * q);
    if (std::abs(t) < 0.9) {
        SeriesValue s = phi_series({p4 * y, p4 / y}, {cplx(-p)}, p, -t);
        out.value = pre * s.value;
        out.abs_error_estimate = std::abs(pre) * s.abs_error_estimate + 16.0 * eps * std::abs(out.value);
        out.terms_used = s.terms_used;
        return out;
    }
    // same series as u_0 in base q^{1/2} with a = q^{1/4} and t -> -t, through the connection formula
    Eigenfunctions ef(EigenParams(p4, -t, p));
    cplx A = ef.c(y) * ef.F(y, 0), B = ef.c(1.0 / y) * ef.F(1.0 / y, 0);
    out.value = pre * (A + B);
    out.abs_error_estimate = 64.0 * eps * std::abs(pre) * (std::abs(A) + std::abs(B));
    return out;
}

inline cplx q_exponential(cplx z, cplx t, double q) { return q_exponential_value(z, t, q).value; }

inline double qexp_limit_error(double q, double lambda, double z) {
    cplx v = q_exponential(z, 0.5 * (1.0 - q) * lambda, q);
    double ex = std::exp(lambda * z);
    return std::abs(v - ex) / ex;
}

// psi_k(x) through E_{q^2}(x; -i r q^k); case 1 with psi = 0
inline cplx psi_E_form(const JacobiOperator& op, const ExtensionCoeffs& ext, double x, int k) {
    const Regime& g = op.regime();
    if (!g.is_case1() || g.psi != 0.0) throw Error(ErrorKind::DomainViolation, "the E-form needs case 1 with psi = 0");
    double q = g.q, r = g.r, gam = op.gamma();
    cplx ir(0.0, g.r);
    cplx th = theta(ir, q);
    double qk = std::pow(q, k);
    cplx inner = std::pow(q, 0.5 * k) * std::polar(1.0, op.phi(k) + gam + std::arg(ext.A)) * th *
                 qpinf(-r * r * q * q * qk * qk, std::pow(q, 4)) / qpinf(ir * qk, q) *
                 q_exponential(x, -ir * qk, q * q);
    return 2.0 * std::polar(1.0, -gam) * std::abs(ext.A) / th * inner.real();
}

} // namespace qhyper
