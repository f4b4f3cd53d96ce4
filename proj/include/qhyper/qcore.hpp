#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qhyper {

using cplx = std::complex<double>;

enum class ErrorKind {
    ZeroArgument,
    DivergentArgument,
    PoleInDenominator,
    SingularParameter,
    SummationOutOfRange,
    DomainViolation,
    NonConvergence,
    ValidationFailed,
    NonSimpleZero,
    WindowTooWide,
    WindowTooNarrow,
    QuadratureFailure,
    PoleEncountered,
    SingularWronskian,
    ConvergenceFailure,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::ZeroArgument: return "ZeroArgument";
    case ErrorKind::DivergentArgument: return "DivergentArgument";
    case ErrorKind::PoleInDenominator: return "PoleInDenominator";
    case ErrorKind::SingularParameter: return "SingularParameter";
    case ErrorKind::SummationOutOfRange: return "SummationOutOfRange";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::ValidationFailed: return "ValidationFailed";
    case ErrorKind::NonSimpleZero: return "NonSimpleZero";
    case ErrorKind::WindowTooWide: return "WindowTooWide";
    case ErrorKind::WindowTooNarrow: return "WindowTooNarrow";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::PoleEncountered: return "PoleEncountered";
    case ErrorKind::SingularWronskian: return "SingularWronskian";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct SeriesValue {
    cplx value{1.0, 0.0};
    double abs_error_estimate = 0.0;
    int terms_used = 0;
    bool terminated = false;
};

// Neumaier summation, applied componentwise.
class CompensatedSum {
public:
    void add(cplx x) {
        add1(re_, cre_, x.real());
        add1(im_, cim_, x.imag());
    }
    cplx value() const { return {re_ + cre_, im_ + cim_}; }

private:
    static void add1(double& s, double& c, double x) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double re_ = 0.0, im_ = 0.0, cre_ = 0.0, cim_ = 0.0;
};

inline void check_base(double q) {
    if (!(q > 0.0 && q < 1.0))
        throw Error(ErrorKind::DomainViolation, "base q must satisfy 0 < q < 1");
}

inline bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// x within relative tol of q^n for some integer n; optionally restrict n to [nmin, nmax].
inline bool in_q_lattice(cplx x, double q, double tol = 1e-10,
                         long nmin = std::numeric_limits<long>::min(),
                         long nmax = std::numeric_limits<long>::max()) {
    if (x == 0.0) return false;
    double n = std::round(std::log(std::abs(x)) / std::log(q));
    if (n < static_cast<double>(nmin) || n > static_cast<double>(nmax)) return false;
    return std::abs(x - std::pow(q, n)) <= tol * std::abs(x);
}

inline cplx qpoch_finite(cplx a, double q, int k) {
    if (k < 0) throw Error(ErrorKind::DomainViolation, "finite q-Pochhammer needs k >= 0");
    cplx r = 1.0;
    double qi = 1.0;
    for (int i = 0; i < k; ++i, qi *= q) r *= 1.0 - a * qi;
    return r;
}

inline constexpr double kProductTail = 1e-17;

inline SeriesValue qpoch_infinite(cplx a, double q) {
    check_base(q);
    SeriesValue out;
    cplx r = 1.0;
    cplx x = a;
    int i = 0;
    while (std::abs(x) >= kProductTail) {
        r *= 1.0 - x;
        x *= q;
        if (++i > 10000000)
            throw Error(ErrorKind::NonConvergence, "q-Pochhammer product did not settle");
    }
    out.value = r;
    out.terms_used = i;
    out.terminated = false;
    // remaining factors multiply by exp(O(|x|/(1-q)))
    out.abs_error_estimate = std::abs(r) * (std::abs(x) / (1.0 - q) + 4.0 * i * std::numeric_limits<double>::epsilon());
    return out;
}

inline cplx qpinf(cplx a, double q) { return qpoch_infinite(a, q).value; }

// k < 0 means infinite.
inline constexpr int kInfinity = -1;

inline cplx qpoch_multi(std::span<const cplx> as, double q, int k) {
    cplx r = 1.0;
    for (cplx a : as) r *= (k < 0) ? qpinf(a, q) : qpoch_finite(a, q, k);
    return r;
}
inline cplx qpoch_multi(std::initializer_list<cplx> as, double q, int k) {
    return qpoch_multi(std::span<const cplx>(as.begin(), as.size()), q, k);
}

inline cplx theta(cplx z, double q) {
    if (z == 0.0) throw Error(ErrorKind::ZeroArgument, "theta(0) is undefined");
    return qpinf(z, q) * qpinf(q / z, q);
}

inline cplx theta_multi(std::initializer_list<cplx> zs, double q) {
    cplx r = 1.0;
    for (cplx z : zs) r *= theta(z, q);
    return r;
}

struct SeriesOptions {
    double rel_tol = 1e-16;
    int max_terms = 200000;
};

// r+1 phi r with numerator list `numer` (length r+1) and denominator list `denom` (length r).
inline SeriesValue phi_series(std::span<const cplx> numer, std::span<const cplx> denom, double q, cplx z,
                              SeriesOptions opt = {}) {
    check_base(q);
    if (numer.size() != denom.size() + 1)
        throw Error(ErrorKind::DomainViolation, "phi_series expects one more numerator than denominator parameter");

    // terminating if some numerator parameter equals q^{-m}, m >= 0
    long stop = -1;
    for (cplx a : numer) {
        if (a != 0.0 && in_q_lattice(a, q, 1e-10, std::numeric_limits<long>::min(), 0)) {
            long m = -std::lround(std::log(std::abs(a)) / std::log(q));
            if (stop < 0 || m < stop) stop = m;
        }
    }
    if (stop < 0 && std::abs(z) >= 1.0)
        throw Error(ErrorKind::DivergentArgument, "|z| >= 1 for a non-terminating series");

    SeriesValue out;
    CompensatedSum sum;
    cplx term = 1.0;
    double absmass = 0.0, maxpartial = 0.0, lastratio = 0.0;
    int small = 0;
    int n = 0;
    double qn = 1.0;
    for (;;) {
        sum.add(term);
        absmass += std::abs(term);
        maxpartial = std::max(maxpartial, std::abs(sum.value()));
        if (stop >= 0 && n == stop) {
            out.terminated = true;
            ++n;
            break;
        }
        cplx f = z / (1.0 - qn * q);
        for (cplx a : numer) f *= 1.0 - a * qn;
        for (cplx b : denom) {
            cplx den = 1.0 - b * qn;
            if (std::abs(den) < 1e-14 * std::max(1.0, std::abs(b * qn)))
                throw Error(ErrorKind::PoleInDenominator, "denominator Pochhammer vanishes before termination");
            f /= den;
        }
        cplx next = term * f;
        ++n;
        qn *= q;
        if (std::abs(term) > 0.0) lastratio = std::abs(f);
        term = next;
        if (term == 0.0) break;
        if (std::abs(term) < opt.rel_tol * maxpartial) {
            if (++small >= 3) {
                sum.add(term);
                absmass += std::abs(term);
                ++n;
                break;
            }
        } else {
            small = 0;
        }
        if (n > opt.max_terms) throw Error(ErrorKind::NonConvergence, "series did not converge within the term budget");
    }
    out.value = sum.value();
    out.terms_used = n;
    double rho = std::min(0.999, std::max(lastratio, std::abs(z)));
    double tail = out.terminated ? 0.0 : std::abs(term) * rho / (1.0 - rho);
    out.abs_error_estimate = tail + 4.0 * std::numeric_limits<double>::epsilon() * absmass;
    if (!finite(out.value)) throw Error(ErrorKind::NonConvergence, "series produced a non-finite value");
    return out;
}

inline SeriesValue phi_series(std::initializer_list<cplx> numer, std::initializer_list<cplx> denom, double q, cplx z,
                              SeriesOptions opt = {}) {
    return phi_series(std::span<const cplx>(numer.begin(), numer.size()),
                      std::span<const cplx>(denom.begin(), denom.size()), q, z, opt);
}

inline cplx phi21(cplx a, cplx b, cplx c, double q, cplx z) { return phi_series({a, b}, {c}, q, z).value; }

} // namespace qhyper
