// Writes extended-precision reference values used by the test suite.
#include <fstream>
#include <iostream>
#include <random>

#include <qhyper/oracle_fixtures.hpp>

using qhyper::oracle::Fixture;
using qhyper::oracle::json;

static json cj(double re, double im) { return json::array({re, im}); }

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: stamp_oracle <out.json>\n";
        return 2;
    }
    std::vector<std::pair<std::string, json>> cases = {
        {"qpoch_infinite", {{"a", cj(0.5, 0)}, {"q", 0.5}}},
        {"qpoch_infinite", {{"a", cj(0.3, 0.2)}, {"q", 0.7}}},
        {"qpoch_infinite", {{"a", cj(-1.0, 0)}, {"q", 0.5}}},
        {"qpoch_infinite", {{"a", cj(2.5, -1.0)}, {"q", 0.3}}},
        {"theta", {{"z", cj(-1.0, 0)}, {"q", 0.5}}},
        {"theta", {{"z", cj(0.3, 0.1)}, {"q", 0.5}}},
        {"theta", {{"z", cj(0.15, 0.05)}, {"q", 0.5}}},
        {"phi_series", {{"numer", json::array({cj(0.3, 0.4), cj(0.6, -0.8)})}, {"denom", json::array({cj(-0.5, 0)})},
                        {"q", 0.5}, {"z", cj(0.4, 0.2)}}},
        {"phi_series", {{"numer", json::array({cj(0.5, 0), cj(-0.5, 0)})}, {"denom", json::array({cj(0.25, 0.1)})},
                        {"q", 0.3}, {"z", cj(-0.7, 0)}}},
        {"phi_series", {{"numer", json::array({cj(1.2, 0.3), cj(-0.9, 0.1), cj(0.2, 0.2)})},
                        {"denom", json::array({cj(0.4, -0.3), cj(-0.6, 0)})}, {"q", 0.6}, {"z", cj(0.1, 0.5)}}},
        {"phi_series", {{"numer", json::array({cj(4.0, 0), cj(0.7, 0.2)})}, {"denom", json::array({cj(0.3, 0)})},
                        {"q", 0.5}, {"z", cj(0.9, 0.3)}}},
        {"q_exponential", {{"z", cj(0.3, 0)}, {"t", cj(0.2, 0)}, {"q", 0.5}}},
        {"q_exponential", {{"z", cj(0.3, 0.1)}, {"t", cj(0.5, 0)}, {"q", 0.5}}},
        {"q_exponential", {{"z", cj(1.7, 0)}, {"t", cj(0.3, 0)}, {"q", 0.4}}},
        {"q_exponential", {{"z", cj(-0.4, 0)}, {"t", cj(-0.6, 0)}, {"q", 0.6}}},
        {"q_exponential", {{"z", cj(0.2, 0)}, {"t", cj(0.1, 0.3)}, {"q", 0.3}}},
    };
    std::mt19937_64 rng(20240521);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    auto rc = [&](double rmax) { return cj(rmax * (2 * U(rng) - 1), rmax * (2 * U(rng) - 1)); };
    for (int i = 0; i < 20; ++i) {
        double q = 0.1 + 0.8 * U(rng);
        cases.push_back({"qpoch_infinite", {{"a", rc(3.0)}, {"q", q}}});
        cases.push_back({"theta", {{"z", rc(2.0)}, {"q", q}}});
        cases.push_back({"phi_series", {{"numer", json::array({rc(1.5), rc(1.5)})},
                                        {"denom", json::array({rc(0.8)})}, {"q", q}, {"z", rc(0.6)}}});
        cases.push_back({"q_exponential", {{"z", rc(1.5)}, {"t", rc(0.6)}, {"q", q}}});
    }
    json out = json::array();
    for (auto& [expr, p] : cases)
        out.push_back(qhyper::oracle::to_json(Fixture{expr, p, qhyper::oracle::highprec_eval(expr, p)}));
    std::ofstream(argv[1]) << out.dump(1) << "\n";
    std::cout << "wrote " << out.size() << " reference values\n";
    return 0;
}
