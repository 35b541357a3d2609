// tiltfuse: exact fusion combinatorics of SL2 tilting modules in odd
// characteristic.  Subcommands expose decomposition, characters, the fusion
// graph, tensor-power counts, closed-form generating functions, verification
// suites, root-sum coefficient evaluation, and growth diagnostics.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tiltfuse/algebra.hpp"
#include "tiltfuse/asymptotics.hpp"
#include "tiltfuse/fusion.hpp"
#include "tiltfuse/genfun.hpp"
#include "tiltfuse/rootsum.hpp"

using namespace tiltfuse;
using nlohmann::json;

namespace {

// "n:mult,..." list, bare "n", or the alias "V"
TiltingMultiset parse_tilting(const std::string& s) {
    if (s == "V") return {{1, Int(1)}};
    TiltingMultiset T;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto colon = item.find(':');
        long n = std::stol(item.substr(0, colon));
        long mult = colon == std::string::npos ? 1 : std::stol(item.substr(colon + 1));
        if (n < 0 || mult <= 0) throw CLI::ValidationError("--tilting", "weights must be >= 0, multiplicities >= 1");
        T[n] += mult;
    }
    if (T.empty()) throw CLI::ValidationError("--tilting", "empty tilting multiset");
    return T;
}

std::string tilting_label(const TiltingMultiset& T) {
    std::string out;
    for (auto it = T.rbegin(); it != T.rend(); ++it) {
        if (!out.empty()) out += ",";
        out += std::to_string(it->first) + ":" + it->second.get_str();
    }
    return out;
}

int emit_report(const Report& rep) {
    std::cout << rep.to_json().dump(2) << "\n";
    return rep.all_pass() ? 0 : 1;
}

mpfr_prec_t default_precision() {
    if (const char* env = std::getenv("TILTFUSE_PRECISION")) {
        long v = std::atol(env);
        if (v >= 64) return static_cast<mpfr_prec_t>(v);
    }
    return 256;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact SL2 tilting fusion combinatorics"};
    app.require_subcommand(1);

    unsigned long p = 3, n = 1, nmax = 10, k = 1, lmax = 50, l = 0, seed = 42, samples = 1000, smax = 2;
    long precision = static_cast<long>(default_precision());
    unsigned jobs = 1;
    std::string format = "json", tilting = "V", suite = "recurrences";
    std::vector<unsigned long> k_list;
    double cutoff = -1;

    app.add_option("--precision", precision, "working precision in bits (>= 64)")->check(CLI::Range(64l, 1l << 20));
    app.add_option("--jobs", jobs, "worker cap for verification/growth runs");

    auto add_common = [&](CLI::App* sub, bool with_n) {
        sub->add_option("--p", p, "odd prime characteristic")->required();
        if (with_n) sub->add_option("--n", n, "highest weight / index")->required();
        sub->add_option("--format", format)->check(CLI::IsMember({"json", "csv", "dot", "text"}));
    };

    auto* cmd_decompose = app.add_subcommand("decompose", "T(n) (x) T(1) into indecomposables");
    add_common(cmd_decompose, true);
    auto* cmd_char = app.add_subcommand("char", "formal character of T(n)");
    add_common(cmd_char, true);
    auto* cmd_graph = app.add_subcommand("graph", "fusion graph on weights < nmax");
    add_common(cmd_graph, false);
    cmd_graph->add_option("--nmax", nmax, "exclusive weight bound")->required();
    auto* cmd_count = app.add_subcommand("count", "summand count b_k of T^{(x)k}");
    add_common(cmd_count, false);
    cmd_count->add_option("--k", k)->required();
    cmd_count->add_option("--tilting", tilting);
    auto* cmd_genfun = app.add_subcommand("genfun", "closed-form rational Z_n");
    add_common(cmd_genfun, true);
    auto* cmd_verify = app.add_subcommand("verify", "identity/estimate suites");
    add_common(cmd_verify, false);
    cmd_verify->add_option("--suite", suite)->check(CLI::IsMember({"recurrences", "multiplicativity", "cs", "estimates"}));
    cmd_verify->add_option("--nmax", nmax);
    cmd_verify->add_option("--smax", smax);
    cmd_verify->add_option("--seed", seed);
    cmd_verify->add_option("--samples", samples);
    auto* cmd_coeff = app.add_subcommand("coeff", "Taylor coefficients of Z_n vs the DP oracle");
    add_common(cmd_coeff, true);
    cmd_coeff->add_option("--lmax", lmax);
    auto* cmd_rootsum = app.add_subcommand("rootsum", "mu_{n-1}(x^l) by the root-sum formula");
    add_common(cmd_rootsum, true);
    cmd_rootsum->add_option("--l", l, "tensor exponent l")->required();
    auto* cmd_alpha = app.add_subcommand("alpha", "growth exponent alpha_p");
    add_common(cmd_alpha, false);
    auto* cmd_growth = app.add_subcommand("growth", "ratio table b_k k^{alpha_p}/(dim T)^k");
    add_common(cmd_growth, false);
    cmd_growth->add_option("--k", k_list, "k values (repeatable)")->required();
    cmd_growth->add_option("--tilting", tilting);
    auto* cmd_tail = app.add_subcommand("tail", "exact high-weight mass of T^{(x)k}");
    add_common(cmd_tail, false);
    cmd_tail->add_option("--k", k)->required();
    cmd_tail->add_option("--tilting", tilting);
    cmd_tail->add_option("--cutoff", cutoff, "weight cutoff (default sqrt(k) log k)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the message
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(precision);

    try {
        if (cmd_decompose->parsed()) {
            auto dec = tensor_by_V(static_cast<long>(n), p);
            if (format == "text") {
                std::string out;
                for (auto it = dec.rbegin(); it != dec.rend(); ++it) {
                    if (!out.empty()) out += " + ";
                    if (it->second != 1) out += it->second.get_str() + "*";
                    out += "T(" + std::to_string(it->first) + ")";
                }
                std::cout << out << "\n";
            } else {
                json summands = json::array();
                for (auto it = dec.rbegin(); it != dec.rend(); ++it)
                    summands.push_back({it->first, it->second.get_si()});
                std::cout << json{{"summands", summands}}.dump() << "\n";
            }
        } else if (cmd_char->parsed()) {
            SymLaurent chi = tilting_character(n, p);
            if (format == "text") {
                std::cout << chi.str() << "\n";
            } else {
                json weights = json::array();
                for (const auto& [m, c] : chi.coeffs()) weights.push_back({m, c.get_str()});
                std::cout << json{{"n", n}, {"dim", chi.at_one().get_str()}, {"weights", weights}}.dump() << "\n";
            }
        } else if (cmd_graph->parsed()) {
            FusionGraph g = fusion_graph(p, static_cast<long>(nmax));
            if (format == "dot") {
                std::cout << fusion_graph_dot(g);
            } else {
                json edges = json::array();
                for (const auto& e : g.edges) edges.push_back({{"src", e.src}, {"dst", e.dst}, {"mult", e.mult}, {"boundary", e.boundary}});
                std::cout << json{{"p", p}, {"n_max", g.n_max}, {"edges", edges}}.dump() << "\n";
            }
        } else if (cmd_count->parsed()) {
            Int b = b_k(parse_tilting(tilting), k, p);
            if (format == "text") std::cout << b.get_str() << "\n";
            else std::cout << json{{"p", p}, {"k", k}, {"b_k", b.get_str()}}.dump() << "\n";
        } else if (cmd_genfun->parsed()) {
            RatFn z = Z_closed(p, n);
            if (format == "text") std::cout << "(" << z.num().str() << ") / (" << z.den().str() << ")\n";
            else std::cout << json{{"p", p}, {"n", n}, {"numerator", z.num().str()}, {"denominator", z.den().str()}}.dump() << "\n";
        } else if (cmd_verify->parsed()) {
            Report rep;
            if (suite == "recurrences") rep = verify_linear_recurrences(p, cmd_verify->count("--nmax") ? nmax : p * p * p);
            else if (suite == "multiplicativity") rep = verify_multiplicativity(p, smax, seed);
            else if (suite == "cs") rep = verify_cs_identities(p, smax);
            else rep = verify_estimates(p, smax, samples, seed, prec);
            return emit_report(rep);
        } else if (cmd_coeff->parsed()) {
            return emit_report(coeffs_vs_oracle(p, n, lmax));
        } else if (cmd_rootsum->parsed()) {
            RootSumPlan plan(p, n, prec);
            MuRootSumResult res = mu_rootsum(plan, l);
            std::cout << json{{"n", n},
                              {"l", l},
                              {"value", res.rounded.get_str()},
                              {"residual", res.residual},
                              {"precision_bits_used", res.precision_bits_used},
                              {"n_roots", res.n_roots}}
                             .dump()
                      << "\n";
        } else if (cmd_alpha->parsed()) {
            Real a = alpha_p(p, prec);
            if (format == "text") std::cout << a.str(static_cast<std::size_t>(prec / 4)) << "\n";
            else std::cout << json{{"p", p}, {"alpha_p", a.str(static_cast<std::size_t>(prec / 4))}, {"precision_bits", precision}}.dump() << "\n";
        } else if (cmd_growth->parsed()) {
            TiltingMultiset T = parse_tilting(tilting);
            TiltingPolySpec spec = spec_from_tilting(T, p);
            auto table = growth_table(T, p, k_list, 128);
            if (format == "json") std::cout << growth_summary(table, spec, tilting_label(T)).dump(2) << "\n";
            else std::cout << growth_csv(table, spec);
        } else if (cmd_tail->parsed()) {
            TiltingPolySpec spec = spec_from_tilting(parse_tilting(tilting), p);
            double c = cutoff < 0 ? default_cutoff(k) : cutoff;
            TailMass tm = weight_tail_mass(spec, k, c, prec);
            std::cout << json{{"p", p}, {"k", k}, {"cutoff", tm.cutoff}, {"mass", tm.mass.get_str()}, {"ratio", tm.ratio.str(20)}}.dump() << "\n";
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
