#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <qhyper/verify.hpp>

using json = nlohmann::json;
using namespace qhyper;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

cplx parse_complex(const std::string& raw) {
    std::string s;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw UsageError("empty complex number");
    auto num = [&](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        char* end = nullptr;
        double v = std::strtod(t.c_str(), &end);
        if (end != t.c_str() + t.size()) throw UsageError("cannot parse number '" + raw + "'");
        return v;
    };
    if (s.back() != 'i' && s.back() != 'j') return num(s);
    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;)
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    if (split == std::string::npos) return {0.0, num(s)};
    return {num(s.substr(0, split)), num(s.substr(split))};
}

std::string csv_num(double x) {
    std::ostringstream o;
    o << std::setprecision(17) << x;
    return o.str();
}

json jc(cplx z) { return json::array({z.real(), z.imag()}); }

// flag values, with a JSON config underneath; flags win
class Options {
public:
    void bind(CLI::App* sub, const std::string& name, const std::string& help) {
        auto* o = sub->add_option("--" + name, flags_[name], help);
        opts_[sub].emplace(name, o);
    }
    void set_config(const json& j) { cfg_ = j; }
    void select(CLI::App* sub) { cur_ = sub; }

    std::optional<std::string> raw(const std::string& name) const {
        auto it = opts_.find(cur_);
        if (it != opts_.end()) {
            auto o = it->second.find(name);
            if (o != it->second.end() && o->second->count() > 0) return flags_.at(name);
        }
        if (cfg_.contains(name)) {
            const json& v = cfg_.at(name);
            if (v.is_string()) return v.get<std::string>();
            if (v.is_array() && v.size() == 2) {
                std::ostringstream s;
                s << std::setprecision(17) << v[0].get<double>() << (v[1].get<double>() < 0 ? "" : "+")
                  << v[1].get<double>() << "i";
                return s.str();
            }
            std::ostringstream s;
            if (v.is_number_integer())
                s << v.get<long long>();
            else
                s << std::setprecision(17) << v.get<double>();
            return s.str();
        }
        return std::nullopt;
    }
    bool has(const std::string& name) const { return raw(name).has_value(); }
    std::string str(const std::string& name, const std::string& def) const { return raw(name).value_or(def); }
    double real(const std::string& name) const {
        auto v = raw(name);
        if (!v) throw UsageError("missing required option --" + name);
        cplx z = parse_complex(*v);
        if (z.imag() != 0.0) throw UsageError("--" + name + " must be real");
        return z.real();
    }
    double real(const std::string& name, double def) const { return has(name) ? real(name) : def; }
    cplx complex(const std::string& name) const {
        auto v = raw(name);
        if (!v) throw UsageError("missing required option --" + name);
        return parse_complex(*v);
    }
    cplx complex(const std::string& name, cplx def) const { return has(name) ? complex(name) : def; }
    int integer(const std::string& name, int def) const {
        if (!has(name)) return def;
        double v = real(name);
        if (v != std::floor(v)) throw UsageError("--" + name + " must be an integer");
        return static_cast<int>(v);
    }

private:
    std::map<std::string, std::string> flags_;
    std::map<CLI::App*, std::map<std::string, CLI::Option*>> opts_;
    json cfg_ = json::object();
    CLI::App* cur_ = nullptr;
};

Regime regime_from(const Options& o) {
    std::string c = o.str("case", "");
    double q = o.real("q");
    if (c == "1") return Regime::case1(q, o.real("psi", 0.0), o.real("r"));
    if (c == "2") return Regime::case2(q, o.real("s"), o.real("t"));
    throw UsageError("--case must be 1 or 2");
}

json regime_json(const Regime& g) {
    if (g.is_case1()) return {{"case", 1}, {"q", g.q}, {"psi", g.psi}, {"r", g.r}};
    return {{"case", 2}, {"q", g.q}, {"s", g.s}, {"t", g.t2}};
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw UsageError("cannot open output file " + path);
        }
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

cplx spectral_y(const Options& o) {
    if (o.has("y")) return o.complex("y");
    if (o.has("z")) return SpectralParam::from_z(o.complex("z")).y;
    throw UsageError("one of --y or --z is required");
}

int cmd_eval(const Options& o) {
    std::string fn = o.str("fn", "");
    double q = o.real("q");
    cplx v;
    if (fn == "qexp") {
        v = q_exponential(o.complex("z"), o.complex("t"), q);
    } else if (fn == "theta") {
        v = theta(o.complex("z"), q);
    } else if (fn == "qpoch") {
        v = qpoch_infinite(o.complex("a"), q).value;
    } else if (fn == "phi_gamma") {
        BigQJacobiParams P{o.complex("a"), o.complex("b"), o.complex("c"), o.complex("x"), o.complex("gamma")};
        v = phi_gamma(P, q, o.integer("k", 0));
    } else if (fn == "u" || fn == "v" || fn == "F" || fn == "c" || fn == "d" || fn == "psi") {
        std::optional<Regime> g;
        EigenParams p = [&] {
            if (o.has("case")) {
                g = regime_from(o);
                return g->params();
            }
            return EigenParams(o.complex("a"), o.complex("t"), q);
        }();
        Eigenfunctions ef(p);
        cplx y = spectral_y(o);
        int k = o.integer("k", 0);
        int sign = o.integer("sign", 1);
        if (sign != 1 && sign != -1) throw UsageError("--sign must be 1 or -1");
        if (fn == "u") v = ef.u(y, k);
        if (fn == "v") v = ef.v(y, k);
        if (fn == "F") v = ef.F(y, k);
        if (fn == "c") v = ef.c(y, sign);
        if (fn == "d") v = ef.d(y, sign);
        if (fn == "psi") {
            if (!g) throw UsageError("--fn psi needs a regime (--case)");
            JacobiOperator op(*g);
            v = op.psi(op.extension(o.real("theta", 0.0)), y, k);
        }
    } else {
        throw UsageError("--fn must be one of u, v, F, c, d, psi, theta, qpoch, qexp, phi_gamma");
    }
    Output out(o.str("out", ""));
    if (o.str("format", "json") == "csv")
        out.os() << "fn,re,im\n" << fn << "," << csv_num(v.real()) << "," << csv_num(v.imag()) << "\n";
    else
        out.os() << json{{"fn", fn}, {"value", jc(v)}}.dump(2) << "\n";
    return 0;
}

json grid_summary(const std::vector<MassPoint>& pts, double q) {
    auto fit = verify::fit_quadratic_grids(pts, q);
    return {{"grids", fit.grids}, {"y", fit.y}, {"members", fit.members}, {"fit_residual", fit.residual},
            {"two_grid_structure", fit.grids <= 2 && fit.residual < 1e-8}};
}

json mass_points_json(const JacobiOperator& op, const DiscreteSpectrum& ds, int k) {
    json arr = json::array();
    for (auto& m : ds.points)
        arr.push_back({{"x0", m.x0}, {"y0", m.y0}, {"mass_kk", discrete_mass(op, m, k, k).real()}, {"weight", m.weight}});
    return arr;
}

// without --xmin/--xmax both sides 1 < |x| < 1e4 are searched
DiscreteSpectrum discrete_in_window(const JacobiOperator& op, const ExtensionCoeffs& ext, const Options& o) {
    double lo = o.real("xmin", 1.0 + 1e-9), hi = o.real("xmax", 1e4);
    DiscreteSpectrum ds = locate_discrete(op, ext, lo, hi);
    if (!o.has("xmin") && !o.has("xmax")) {
        auto neg = locate_discrete(op, ext, -hi, -lo);
        ds.points.insert(ds.points.begin(), neg.points.begin(), neg.points.end());
    }
    return ds;
}

int cmd_spectrum(const Options& o) {
    Regime g = regime_from(o);
    JacobiOperator op(g);
    double th = o.real("theta", 0.0);
    auto ext = op.extension(th);
    int n = o.integer("resolution", 200);
    if (n < 1) throw UsageError("--resolution must be positive");
    int k = o.integer("k", 0);
    json cont = json::array();
    std::ostringstream csv;
    csv << "chi,density\n";
    for (int i = 0; i < n; ++i) {
        double chi = std::numbers::pi * (i + 0.5) / n;
        double d = continuous_density(op, ext, chi);
        cont.push_back({{"chi", chi}, {"density", d}});
        csv << csv_num(chi) << "," << csv_num(d) << "\n";
    }
    DiscreteSpectrum ds = discrete_in_window(op, ext, o);
    json doc{{"continuous", cont}, {"discrete", mass_points_json(op, ds, k)}, {"regime", regime_json(g)}, {"theta", th}};
    if (g.is_case1() && g.psi == 0.0) doc["summary"] = grid_summary(ds.points, g.q);
    if (o.has("density-csv")) {
        Output c(o.str("density-csv", ""));
        c.os() << csv.str();
    }
    Output out(o.str("out", ""));
    out.os() << doc.dump(2) << "\n";
    return 0;
}

int cmd_masspoints(const Options& o) {
    Regime g = regime_from(o);
    JacobiOperator op(g);
    double th = o.real("theta", 0.0);
    auto ext = op.extension(th);
    DiscreteSpectrum ds = discrete_in_window(op, ext, o);
    json doc{{"regime", regime_json(g)}, {"theta", th}, {"discrete", mass_points_json(op, ds, o.integer("k", 0))}};
    Output out(o.str("out", ""));
    out.os() << doc.dump(2) << "\n";
    return 0;
}

int cmd_orthogonality(const Options& o) {
    Regime g = regime_from(o);
    JacobiOperator op(g);
    double th = o.real("theta", 0.0);
    int kmin = o.integer("kmin", -4), kmax = o.integer("kmax", 4);
    if (kmin > kmax) throw UsageError("--kmin must not exceed --kmax");
    MeasureOptions mo;
    mo.quad_tol = o.real("quad-tol", mo.quad_tol);
    mo.tail_tol = o.real("tail-tol", mo.tail_tol);
    auto G = orthogonality_matrix(op, op.extension(th), kmin, kmax, mo);
    Output out(o.str("out", ""));
    if (o.str("format", "csv") == "json") {
        json entries = json::array();
        for (int k = kmin; k <= kmax; ++k)
            for (int l = kmin; l <= kmax; ++l) entries.push_back({{"k", k}, {"l", l}, {"value", jc(G(k, l))}});
        out.os() << json{{"regime", regime_json(g)}, {"theta", th}, {"max_dev", G.max_dev_from_identity()},
                         {"entries", entries}}
                        .dump(2)
                 << "\n";
    } else {
        out.os() << "k,l,re,im,abs_err\n";
        for (int k = kmin; k <= kmax; ++k)
            for (int l = kmin; l <= kmax; ++l) {
                cplx v = G(k, l);
                out.os() << k << "," << l << "," << csv_num(v.real()) << "," << csv_num(v.imag()) << ","
                         << csv_num(std::abs(v - (k == l ? 1.0 : 0.0))) << "\n";
            }
        std::cerr << json{{"regime", regime_json(g)}, {"theta", th}}.dump() << "\n";
    }
    return G.max_dev_from_identity() < o.real("tol", 1e-6) ? 0 : 1;
}

int cmd_quadcheck(const Options& o) {
    int n = o.integer("samples", 50);
    verify::Sampler S(static_cast<std::uint64_t>(o.integer("seed", 5)));
    double tol = o.real("tol", 1e-10), worst = 0.0;
    Output out(o.str("out", ""));
    out.os() << "case,q,a_re,a_im,y_re,y_im,z_re,z_im,residual\n";
    for (int i = 0; i < n; ++i) {
        double q = S.uni(0.2, 0.8);
        cplx a = std::polar(S.uni(0.5, 1.5), S.uni(-3.0, 3.0));
        cplx y = std::polar(S.uni(0.2, 0.9), S.uni(-3.0, 3.0));
        cplx z = std::polar(S.uni(0.0, 0.95) * std::min(1.0, std::norm(a)), S.uni(-3.0, 3.0));
        double r = quad_transform_check(a, y, z, q);
        worst = std::max(worst, r);
        out.os() << i << "," << csv_num(q) << "," << csv_num(a.real()) << "," << csv_num(a.imag()) << ","
                 << csv_num(y.real()) << "," << csv_num(y.imag()) << "," << csv_num(z.real()) << ","
                 << csv_num(z.imag()) << "," << csv_num(r) << "\n";
    }
    return worst < tol ? 0 : 1;
}

int cmd_qexp_limit(const Options& o) {
    std::vector<double> qs;
    if (o.has("q"))
        qs.push_back(o.real("q"));
    else
        qs = {0.9, 0.99};
    int n = o.integer("points", 21);
    if (n < 2) throw UsageError("--points must be at least 2");
    double lam = o.real("lambda", 1.0);
    Output out(o.str("out", ""));
    out.os() << "q,lambda,z,re,im,rel_err\n";
    for (double q : qs)
        for (int i = 0; i < n; ++i) {
            double z = -1.0 + 2.0 * i / (n - 1);
            cplx v = q_exponential(z, 0.5 * (1.0 - q) * lam, q);
            out.os() << csv_num(q) << "," << csv_num(lam) << "," << csv_num(z) << "," << csv_num(v.real()) << ","
                     << csv_num(v.imag()) << "," << csv_num(std::abs(v - std::exp(lam * z)) / std::exp(lam * z))
                     << "\n";
        }
    return 0;
}

// orthogonality suite with a user regime; unspecified parameters take the reference values
Regime regime_from_defaults(const Options& o) {
    std::string c = o.str("case", "1");
    double q = o.real("q", 0.5);
    if (c == "1") return Regime::case1(q, o.real("psi", 0.3), o.real("r", 0.8));
    if (c == "2") return Regime::case2(q, o.real("s", 1.3), o.real("t", -0.4));
    throw UsageError("--case must be 1 or 2");
}

json report_json(const verify::SuiteReport& r) {
    return {{"suite", r.suite}, {"cases", r.cases}, {"max_residual", r.max_residual}, {"tolerance", r.tolerance},
            {"pass", r.pass}, {"notes", r.notes}};
}

int cmd_verify(const Options& o, const std::string& suite) {
    using namespace verify;
    std::vector<SuiteReport> reps;
    auto run = [&](const std::string& name) {
        if (name == "recurrence") reps.push_back(recurrence());
        else if (name == "connection") reps.push_back(connection());
        else if (name == "wronskian") reps.push_back(wronskian());
        else if (name == "extension") reps.push_back(extension());
        else if (name == "quadratic") reps.push_back(quadratic());
        else if (name == "orthogonality") {
            if (o.has("case")) {
                reps.push_back(orthogonality({{regime_from_defaults(o), o.real("theta", 0.7)}}));
            } else {
                reps.push_back(orthogonality());
            }
        } else if (name == "inversion") reps.push_back(inversion());
        else if (name == "discrete") reps.push_back(discrete_structure());
        else if (name == "resolvent") reps.push_back(resolvent());
        else if (name == "qexp-limit") reps.push_back(qexp_limit());
        else if (name == "boundary") reps.push_back(boundary());
        else if (name == "oracle") reps.push_back(oracle_suite(o.str("fixtures", "")));
        else throw UsageError("unknown suite " + name);
    };
    if (suite == "all") {
        for (auto* s : {"recurrence", "connection", "wronskian", "extension", "quadratic", "orthogonality", "inversion",
                        "discrete", "resolvent", "qexp-limit", "boundary", "oracle"})
            run(s);
    } else {
        run(suite);
    }
    json doc;
    bool pass = true;
    if (reps.size() == 1) {
        doc = report_json(reps[0]);
        pass = reps[0].pass;
    } else {
        int cases = 0;
        double worst = 0.0;
        json sub = json::array();
        for (auto& r : reps) {
            cases += r.cases;
            worst = std::max(worst, r.max_residual);
            pass = pass && r.pass;
            sub.push_back(report_json(r));
        }
        doc = {{"suite", "all"}, {"cases", cases}, {"max_residual", worst}, {"pass", pass}, {"suites", sub}};
    }
    Output out(o.str("out", ""));
    out.os() << doc.dump(2) << "\n";
    return pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qhyper: q-hypergeometric eigenfunctions and spectral decompositions of a doubly infinite Jacobi operator"};
    app.require_subcommand(1);
    std::string config;
    app.add_option("--config", config, "JSON config file; flags override its entries");
    Options opts;

    const std::vector<std::pair<std::string, std::string>> common{
        {"case", "regime: 1 or 2"}, {"q", "base, 0 < q < 1"}, {"psi", "case 1 angle"}, {"r", "case 1 r"},
        {"s", "case 2 s"},          {"t", "t (complex for eval)"}, {"theta", "extension parameter"},
        {"out", "output file"},     {"format", "json or csv"}};
    auto add = [&](CLI::App* sub, std::vector<std::pair<std::string, std::string>> extra) {
        for (auto& [n, h] : common) opts.bind(sub, n, h);
        for (auto& [n, h] : extra) opts.bind(sub, n, h);
    };

    auto* ev = app.add_subcommand("eval", "evaluate a single function");
    add(ev, {{"fn", "u, v, F, c, d, psi, theta, qpoch, qexp, phi_gamma"},
             {"a", "a (complex)"},
             {"b", "b (complex)"},
             {"c", "c (complex)"},
             {"x", "x (complex)"},
             {"gamma", "gamma (complex)"},
             {"y", "spectral parameter y"},
             {"z", "spectral variable z"},
             {"k", "index"},
             {"sign", "+1 or -1 for c, d"}});
    auto* sp = app.add_subcommand("spectrum", "density over chi and mass points over an x window");
    add(sp, {{"resolution", "number of chi samples"},
             {"xmin", "x window lower end"},
             {"xmax", "x window upper end"},
             {"k", "index for mass_kk"},
             {"density-csv", "write the density CSV here"}});
    auto* mp = app.add_subcommand("masspoints", "discrete mass points in an x window");
    add(mp, {{"xmin", "x window lower end"}, {"xmax", "x window upper end"}, {"k", "index for mass_kk"}});
    auto* og = app.add_subcommand("orthogonality", "orthogonality matrix G_{kl}");
    add(og, {{"kmin", "first index"},
             {"kmax", "last index"},
             {"quad-tol", "quadrature tolerance"},
             {"tail-tol", "discrete tail tolerance"},
             {"tol", "pass threshold for max|G-I|"}});
    auto* qc = app.add_subcommand("quadcheck", "residuals of the quadratic transformation");
    add(qc, {{"samples", "number of samples"}, {"seed", "random seed"}, {"tol", "pass threshold"}});
    auto* ql = app.add_subcommand("qexp-limit", "q-exponential against exp(lambda z)");
    add(ql, {{"lambda", "lambda"}, {"points", "z grid size on [-1,1]"}});
    auto* vf = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    vf->add_option("suite", suite,
                   "recurrence, connection, wronskian, extension, quadratic, orthogonality, inversion, discrete, "
                   "resolvent, qexp-limit, boundary, oracle, all")
        ->required();
    add(vf, {{"fixtures", "oracle fixture file"}});

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (!config.empty()) {
            std::ifstream in(config);
            if (!in) throw UsageError("cannot open config file " + config);
            json j = json::parse(in);
            if (!j.is_object()) throw UsageError("config must be a JSON object");
            opts.set_config(j);
        }
        for (auto* sub : app.get_subcommands()) {
            opts.select(sub);
            if (sub == ev) return cmd_eval(opts);
            if (sub == sp) return cmd_spectrum(opts);
            if (sub == mp) return cmd_masspoints(opts);
            if (sub == og) return cmd_orthogonality(opts);
            if (sub == qc) return cmd_quadcheck(opts);
            if (sub == ql) return cmd_qexp_limit(opts);
            if (sub == vf) return cmd_verify(opts, suite);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
