#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oracle.hpp"
#include "qcore.hpp"
#include "transforms.hpp"

namespace qhyper::oracle {

using json = nlohmann::json;

inline cplx json_cplx(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

inline std::vector<hcplx> json_hlist(const json& j) {
    std::vector<hcplx> out;
    for (auto& e : j) out.push_back(to_h(json_cplx(e)));
    return out;
}
inline std::vector<cplx> json_list(const json& j) {
    std::vector<cplx> out;
    for (auto& e : j) out.push_back(json_cplx(e));
    return out;
}

// expr in {qpoch_infinite, theta, phi_series, q_exponential}
inline HighPrecValue highprec_eval(const std::string& expr, const json& p, int digits = 40) {
    hreal q(p.at("q").get<double>());
    if (expr == "qpoch_infinite") return format_hp(hp_qpoch_inf(to_h(json_cplx(p.at("a"))), q), digits);
    if (expr == "theta") return format_hp(hp_theta(to_h(json_cplx(p.at("z"))), q), digits);
    if (expr == "phi_series")
        return format_hp(hp_phi_series(json_hlist(p.at("numer")), json_hlist(p.at("denom")), q,
                                       to_h(json_cplx(p.at("z")))),
                         digits);
    if (expr == "q_exponential")
        return format_hp(hp_q_exponential(json_cplx(p.at("z")), json_cplx(p.at("t")), p.at("q").get<double>()), digits);
    throw Error(ErrorKind::DomainViolation, "unknown oracle expression " + expr);
}

// the double-precision library path for the same expression; abs error estimate where available
inline SeriesValue double_eval(const std::string& expr, const json& p) {
    double q = p.at("q").get<double>();
    if (expr == "qpoch_infinite") return qpoch_infinite(json_cplx(p.at("a")), q);
    if (expr == "theta") {
        SeriesValue a = qpoch_infinite(json_cplx(p.at("z")), q), b = qpoch_infinite(q / json_cplx(p.at("z")), q);
        SeriesValue out;
        out.value = a.value * b.value;
        out.abs_error_estimate = a.abs_error_estimate * std::abs(b.value) + b.abs_error_estimate * std::abs(a.value);
        return out;
    }
    if (expr == "phi_series") {
        auto n = json_list(p.at("numer")), d = json_list(p.at("denom"));
        return phi_series(n, d, q, json_cplx(p.at("z")));
    }
    if (expr == "q_exponential") return q_exponential_value(json_cplx(p.at("z")), json_cplx(p.at("t")), q);
    throw Error(ErrorKind::DomainViolation, "unknown oracle expression " + expr);
}

struct Fixture {
    std::string expr;
    json params;
    HighPrecValue value;
};

inline json to_json(const Fixture& f) {
    return {{"expr", f.expr}, {"params", f.params}, {"value_re", f.value.re}, {"value_im", f.value.im},
            {"digits", f.value.digits}};
}

inline std::vector<Fixture> load_fixtures(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::DomainViolation, "cannot open fixture file " + path);
    json j = json::parse(in);
    std::vector<Fixture> out;
    for (auto& e : j) {
        Fixture f;
        f.expr = e.at("expr").get<std::string>();
        f.params = e.at("params");
        f.value.re = e.at("value_re").get<std::string>();
        f.value.im = e.at("value_im").get<std::string>();
        f.value.digits = e.at("digits").get<int>();
        out.push_back(std::move(f));
    }
    return out;
}

} // namespace qhyper::oracle
