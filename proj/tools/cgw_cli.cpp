// cgw: command-line front end for the multiple-SLE / Coulomb-gas toolkit.
//
//   cgw enumerate --n-arcs 4
//   cgw meander   --n-arcs 3 --kappa 5
//   cgw eval      --n-arcs 2 --basis 1 --kappa 5 --points 0,1,2,3
//   cgw limit     --n-arcs 2 --fn weight:1 --connectivity 1 --kappa 5 --points 0,1,2,3
//   cgw weights   --n-arcs 2 --kappa 5 --points 0,1,2,3
//   cgw crossing  --n-arcs 2 --basis 1 --kappa 5 --points 0,1,2,3
//   cgw classify  --n-arcs 2 --fn weight:2 --interval 1 --kappa 5 --points 0,1,2,3
//   cgw cft       --kappa 16/5
//   cgw verify    --suite kappa6
//
// Exit status: 0 success, 1 numerical failure, 2 usage error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cgw/cft.hpp"
#include "cgw/combinatorics.hpp"
#include "cgw/config.hpp"
#include "cgw/coulomb_gas.hpp"
#include "cgw/frobenius.hpp"
#include "cgw/limits.hpp"
#include "cgw/meander.hpp"
#include "cgw/weights.hpp"

using nlohmann::json;
using namespace cgw;

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

json envelope(const std::string& command)
{
    return json{{"schema", 1}, {"command", command}};
}

std::vector<double> parse_points(const std::string& s)
{
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw UsageError("bad number in --points: " + tok);
        } catch (const std::logic_error&) {
            throw UsageError("bad number in --points: " + tok);
        }
    }
    return out;
}

// Accepts decimals and p/q fractions.
double parse_kappa(const std::string& s)
{
    auto slash = s.find('/');
    double k = 0;
    try {
        k = slash == std::string::npos ? std::stod(s) : std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
    } catch (const std::logic_error&) {
        throw UsageError("bad kappa: " + s);
    }
    if (!(k > 0 && k < 8)) throw UsageError("kappa must lie in (0, 8)");
    return k;
}

std::vector<double> checked_points(const std::string& s, int n_arcs)
{
    auto x = parse_points(s);
    if (static_cast<int>(x.size()) != 2 * n_arcs)
        throw UsageError("--points needs exactly 2N = " + std::to_string(2 * n_arcs) + " values");
    for (size_t k = 1; k < x.size(); ++k)
        if (!(x[k] > x[k - 1])) throw UsageError("--points must be strictly increasing");
    return x;
}

std::vector<int> diagram_pairing_1based(const ArcDiagram& d)
{
    std::vector<int> p;
    for (int v : d.pairing) p.push_back(v + 1);
    return p;
}

// basis:T | weight:T | regularized:T | theta:S:I
Evaluator make_function(const std::string& spec, int n_arcs, double kappa, const QuadConfig& q)
{
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw UsageError("function spec must look like basis:T or weight:T");
    const std::string kind = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    int a = 0, b = 0;
    try {
        auto c2 = rest.find(':');
        a = std::stoi(rest.substr(0, c2));
        if (c2 != std::string::npos) b = std::stoi(rest.substr(c2 + 1));
    } catch (const std::logic_error&) {
        throw UsageError("bad index in function spec " + spec);
    }
    const int C = static_cast<int>(catalan_small(n_arcs));
    if (kind == "basis" || kind == "regularized" || kind == "weight") {
        if (a < 1 || a > C) throw UsageError("index out of range in " + spec);
        const ArcDiagram d = enumerate_connectivities(n_arcs)[static_cast<size_t>(a - 1)];
        if (kind == "basis") return [=](const std::vector<double>& x) { return basis_value(d, kappa, x, q); };
        if (kind == "regularized")
            return [=](const std::vector<double>& x) { return regularized_basis_value(d, kappa, x, q); };
        return [=](const std::vector<double>& x) { return solve_weights(n_arcs, kappa, x, q).values(a - 1); };
    }
    if (kind == "theta") {
        auto th = build_theta(n_arcs, a, b, kappa, q);
        return th.evaluate;
    }
    throw UsageError("unknown function kind " + kind);
}

struct Common {
    int n_arcs = 2;
    std::string kappa = "5";
    std::string points;
    std::string config;
    std::string format;
};

RunConfig load(const Common& c)
{
    RunConfig cfg = c.config.empty() ? RunConfig{} : load_config(c.config);
    if (!c.format.empty()) cfg.format = c.format;
    cfg.validate();
    return cfg;
}

void emit(const json& j)
{
    std::cout << j.dump(2) << "\n";
}

// ------------------------------------------------------------------ verify

struct Check {
    std::string name;
    bool pass;
    std::string detail;
};

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::vector<Check> suite_kappa6(const QuadConfig& q)
{
    std::vector<Check> out;
    for (int N : {2, 3}) {
        std::vector<double> x;
        for (int k = 0; k < 2 * N; ++k) x.push_back(k);
        double worst = 0;
        for (const auto& d : enumerate_connectivities(N))
            for (int c = 1; c <= 2 * N; ++c) {
                if (N == 3 && c > 2) continue;
                worst = std::max(worst, std::abs(evaluate_basis(build_spec(d, c, 6.0), x, q).value - 1.0));
            }
        out.push_back({"kappa6_constant_N" + std::to_string(N), worst < 1e-6, "max |F-1| = " + fmt(worst)});
    }
    for (int N : {2, 3}) {
        std::vector<double> x;
        for (int k = 0; k < 2 * N; ++k) x.push_back(k + 0.1 * k * k);
        std::vector<std::pair<int, int>> arcs;
        for (int m = 0; m + 1 < N; ++m) arcs.push_back({2 * m + 1, 2 * m + 2});
        const double lhs = evaluate_dotsenko_fateev_kernel(x, 1, arcs, 6.0, q).value;
        const double rhs = dotsenko_fateev_rhs(x, 1);
        const double rel = std::abs(lhs - rhs) / std::abs(rhs);
        out.push_back({"kappa6_integral_identity_N" + std::to_string(N), rel < 1e-6, "rel = " + fmt(rel)});
    }
    return out;
}

std::vector<Check> suite_combinatorics()
{
    std::vector<Check> out;
    bool counts = true;
    for (int N = 1; N <= 7; ++N)
        counts = counts && static_cast<long>(enumerate_connectivities(N).size()) == catalan_small(N);
    out.push_back({"enumeration_counts_N1_7", counts, "C_N diagrams"});
    bool chi = true;
    for (int N = 2; N <= 5; ++N)
        for (int i = 1; i <= 2 * N; ++i) {
            auto ds = enumerate_connectivities(N, i);
            const auto C1 = static_cast<size_t>(catalan_small(N - 1));
            for (size_t r = C1; r < ds.size(); ++r) {
                auto img = cut_map_chi(ds[r], i);
                for (size_t t = 0; t < C1; ++t) chi = chi && loop_count(img, ds[t]) == loop_count(ds[r], ds[t]) + 1;
            }
        }
    out.push_back({"chi_loop_increment_N2_5", chi, "l(chi(rho),theta) = l(rho,theta)+1"});
    return out;
}

std::vector<Check> suite_meander()
{
    std::vector<Check> out;
    bool ok = true;
    std::string detail;
    for (int N = 1; N <= 5; ++N)
        for (const auto& z : meander_zeros(N)) {
            const int r = numeric_rank(build_meander_matrix(N, z.n), 1e-9);
            if (r != rank_at_zero(N, z.q, z.qpp)) {
                ok = false;
                detail = "N=" + std::to_string(N) + " q=" + std::to_string(z.q);
            }
        }
    out.push_back({"meander_rank_at_zeros_N1_5", ok, ok ? "all zeros" : detail});
    bool sign = true;
    for (int N = 1; N <= 4; ++N) sign = sign && sign_relation_check(N);
    out.push_back({"sign_relation_N1_4", sign, "n = -1"});
    return out;
}

std::vector<Check> suite_cft()
{
    std::vector<Check> out;
    bool ok = true;
    for (long q = 2; q <= 8; ++q)
        for (long qp = 2; qp <= 8; ++qp) {
            if (std::gcd(q, qp) != 1) continue;
            const Rational k(4 * q, qp);
            if (!(k < Rational(8))) continue;
            auto m = minimal_model_map(k);
            ok = ok && m && m->model.central_charge == central_charge_exact(k);
        }
    out.push_back({"minimal_model_central_charge", ok, "coprime q, q' <= 8"});
    return out;
}

int run_verify(const std::string& suite, const RunConfig& cfg)
{
    std::vector<Check> checks;
    auto add = [&](std::vector<Check> v) { checks.insert(checks.end(), v.begin(), v.end()); };
    if (suite == "kappa6" || suite == "all") add(suite_kappa6(cfg.quad));
    if (suite == "combinatorics" || suite == "all") add(suite_combinatorics());
    if (suite == "meander" || suite == "all") add(suite_meander());
    if (suite == "cft" || suite == "all") add(suite_cft());
    if (checks.empty()) throw UsageError("unknown suite " + suite);
    bool all = true;
    for (const auto& c : checks) {
        std::printf("%-4s %-36s %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
        all = all && c.pass;
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"cgw: Coulomb-gas solutions, connectivity weights and crossing probabilities"};
    app.require_subcommand(1);
    Common c;
    auto common = [&](CLI::App* s, bool pts) {
        s->add_option("--n-arcs,-N", c.n_arcs, "number of arcs N")->check(CLI::Range(1, kMaxMeanderArcs));
        s->add_option("--kappa,-k", c.kappa, "SLE speed (decimal or p/q)");
        if (pts) s->add_option("--points,-x", c.points, "comma-separated x_1 < ... < x_2N")->required();
        s->add_option("--config", c.config, "JSON run configuration");
        s->add_option("--format", c.format, "json or csv");
    };

    int anchor = 0;
    auto* en = app.add_subcommand("enumerate", "list the arc connectivities");
    en->add_option("--n-arcs,-N", c.n_arcs)->check(CLI::Range(0, kMaxMeanderArcs));
    en->add_option("--anchor", anchor, "put the diagrams with arc {i,i+1} first");

    double fug = std::nan("");
    bool zeros = false;
    auto* me = app.add_subcommand("meander", "meander matrix, determinant and rank");
    common(me, false);
    me->add_option("--fugacity", fug, "use n directly instead of kappa");
    me->add_flag("--zeros", zeros, "list the determinant zeros with their ranks");

    int basis = 0, weight = 0, cpt = 1;
    bool regularized = false;
    auto* ev = app.add_subcommand("eval", "evaluate a basis function");
    common(ev, true);
    ev->add_option("--basis", basis, "1-based basis index")->required();
    ev->add_option("--c", cpt, "conjugate-charge point");
    ev->add_flag("--regularized", regularized, "evaluate lim F/n");

    std::string fn;
    int connectivity = 0, interval = 0;
    auto* li = app.add_subcommand("limit", "collapse limits and [L_sigma]");
    common(li, true);
    li->add_option("--fn", fn, "basis:T | weight:T | regularized:T | theta:S:I")->required();
    auto* conn_opt = li->add_option("--connectivity", connectivity, "apply [L_sigma]");
    auto* int_opt = li->add_option("--interval", interval, "single collapse of (x_i, x_{i+1})");
    conn_opt->excludes(int_opt);

    std::string sweep;
    auto* we = app.add_subcommand("weights", "connectivity weights at x");
    common(we, true);
    we->add_option("--sweep-kappa", sweep, "a:b:count, CSV over kappa");

    auto* cr = app.add_subcommand("crossing", "crossing probabilities");
    common(cr, true);
    auto* b_opt = cr->add_option("--basis", basis, "F = F_T");
    auto* w_opt = cr->add_option("--weight", weight, "F = Pi_T");
    auto* f_opt = cr->add_option("--fn", fn, "function spec");
    b_opt->excludes(w_opt)->excludes(f_opt);
    w_opt->excludes(f_opt);

    auto* cl = app.add_subcommand("classify", "classify an interval of F");
    common(cl, true);
    cl->add_option("--fn", fn)->required();
    cl->add_option("--interval", interval)->required();

    int r = 0, s = 0;
    auto* cf = app.add_subcommand("cft", "central charge, Kac weights, minimal model");
    cf->add_option("--kappa,-k", c.kappa)->required();
    cf->add_option("--r", r);
    cf->add_option("--s", s);

    std::string suite = "all";
    auto* ve = app.add_subcommand("verify", "run the built-in checks");
    ve->add_option("--suite", suite, "kappa6 | combinatorics | meander | cft | all");
    ve->add_option("--config", c.config);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const RunConfig cfg = load(c);
        const QuadConfig& q = cfg.quad;
        const LadderConfig& lad = cfg.ladder;

        if (*en) {
            auto ds = anchor ? enumerate_connectivities(c.n_arcs, anchor) : enumerate_connectivities(c.n_arcs);
            json j = envelope("enumerate");
            j["n_arcs"] = c.n_arcs;
            j["count"] = ds.size();
            j["diagrams"] = json::array();
            for (size_t t = 0; t < ds.size(); ++t)
                j["diagrams"].push_back({{"index", t + 1}, {"parens", ds[t].parens()}, {"pairing", diagram_pairing_1based(ds[t])}});
            emit(j);
            return 0;
        }
        if (*cf) {
            const double kappa = parse_kappa(c.kappa);
            json j = envelope("cft");
            j["kappa"] = kappa;
            j["central_charge"] = central_charge(kappa);
            j["fugacity"] = fugacity(kappa);
            j["leg_weights"] = {s_leg_weight(0, kappa), s_leg_weight(1, kappa), s_leg_weight(2, kappa)};
            auto lab = one_leg_operator_label(kappa);
            j["one_leg_label"] = {lab.first, lab.second};
            if (r > 0 && s > 0) j["kac_weight"] = kac_weight(r, s, kappa).value;
            if (auto m = minimal_model_map(kappa)) {
                j["minimal_model"] = {{"p", m->model.p},
                                      {"p_prime", m->model.p_prime},
                                      {"central_charge", std::to_string(m->model.central_charge.numerator()) + "/" +
                                                             std::to_string(m->model.central_charge.denominator())},
                                      {"fact", to_string(m->fact)}};
            }
            emit(j);
            return 0;
        }
        if (*ve) return run_verify(suite, cfg);

        const double kappa = parse_kappa(c.kappa);
        if (*me) {
            const double n = std::isnan(fug) ? fugacity(kappa) : fug;
            json j = envelope("meander");
            j["n_arcs"] = c.n_arcs;
            j["fugacity"] = n;
            auto M = build_meander_matrix(c.n_arcs, n);
            if (cfg.format == "csv") {
                for (Eigen::Index a = 0; a < M.entries.rows(); ++a)
                    for (Eigen::Index b = 0; b < M.entries.cols(); ++b)
                        std::printf("%.17g%c", M.entries(a, b), b + 1 == M.entries.cols() ? '\n' : ',');
                return 0;
            }
            j["determinant"] = M.entries.determinant();
            j["rank"] = numeric_rank(M);
            j["exponents"] = json::array();
            for (Eigen::Index a = 0; a < M.exponents.rows(); ++a) {
                std::vector<int> row;
                for (Eigen::Index b = 0; b < M.exponents.cols(); ++b) row.push_back(M.exponents(a, b));
                j["exponents"].push_back(row);
            }
            if (zeros) {
                j["zeros"] = json::array();
                for (const auto& z : meander_zeros(c.n_arcs))
                    j["zeros"].push_back({{"q", z.q}, {"q_double_prime", z.qpp}, {"n", z.n}, {"rank", rank_at_zero(c.n_arcs, z.q, z.qpp)}});
            }
            emit(j);
            return 0;
        }

        const auto x = checked_points(c.points, c.n_arcs);
        if (*ev) {
            const auto ds = enumerate_connectivities(c.n_arcs);
            if (basis < 1 || basis > static_cast<int>(ds.size())) throw UsageError("--basis out of range");
            const auto& d = ds[static_cast<size_t>(basis - 1)];
            json j = envelope("eval");
            j["kappa"] = kappa;
            j["basis"] = basis;
            j["parens"] = d.parens();
            if (regularized) {
                j["value"] = regularized_basis_value(d, kappa, x, q, cpt);
            } else if (prefactor_singular(kappa)) {
                j["value"] = basis_value(d, kappa, x, q, cpt);
                j["kappa_limit"] = true;
            } else {
                auto res = evaluate_basis(build_spec(d, cpt, kappa), x, q);
                j["value"] = res.value;
                j["abs_error_est"] = res.abs_error_est;
                j["imag_leak"] = res.imag_leak;
                j["evals"] = res.n_evals;
            }
            emit(j);
            return 0;
        }
        if (*li) {
            auto F = make_function(fn, c.n_arcs, kappa, q);
            if (*int_opt) {
                if (interval < 1 || interval >= 2 * c.n_arcs) throw UsageError("--interval must be in 1..2N-1");
                VecEvaluator G = [&](const std::vector<double>& y) {
                    Eigen::VectorXd v(1);
                    v(0) = F(y);
                    return v;
                };
                auto res = collapse_limit_vec(G, x, interval, kappa, lad);
                if (cfg.format == "csv") {
                    std::printf("delta,value\n");
                    for (size_t k = 0; k < res.fit.deltas.size(); ++k)
                        std::printf("%.17g,%.17g\n", res.fit.deltas[k], res.fit.values(static_cast<Eigen::Index>(k), 0));
                    std::printf("# limit=%.17g residual=%.3g\n", res.value(0), res.fit.residual);
                    return 0;
                }
                json j = envelope("limit");
                j["interval"] = interval;
                j["value"] = res.value(0);
                j["residual"] = res.fit.residual;
                j["ladder"] = json::array();
                for (size_t k = 0; k < res.fit.deltas.size(); ++k)
                    j["ladder"].push_back({res.fit.deltas[k], res.fit.values(static_cast<Eigen::Index>(k), 0)});
                emit(j);
                return 0;
            }
            if (!*conn_opt) throw UsageError("limit needs --connectivity or --interval");
            const auto ds = enumerate_connectivities(c.n_arcs);
            if (connectivity < 1 || connectivity > static_cast<int>(ds.size())) throw UsageError("--connectivity out of range");
            json j = envelope("limit");
            j["connectivity"] = connectivity;
            j["value"] = apply_L(ds[static_cast<size_t>(connectivity - 1)], F, x, kappa, lad);
            emit(j);
            return 0;
        }
        if (*we) {
            if (!sweep.empty()) {
                double a = 0, b = 0;
                int count = 0;
                if (std::sscanf(sweep.c_str(), "%lf:%lf:%d", &a, &b, &count) != 3 || count < 2)
                    throw UsageError("--sweep-kappa wants a:b:count");
                const int C = static_cast<int>(catalan_small(c.n_arcs));
                std::printf("kappa");
                for (int t = 1; t <= C; ++t) std::printf(",Pi_%d", t);
                std::printf("\n");
                std::vector<std::string> lines(static_cast<size_t>(count));
                parallel_for(count, [&](int k) {
                    const double kk = a + (b - a) * k / (count - 1);
                    std::ostringstream os;
                    os.precision(12);
                    os << kk;
                    try {
                        auto w = solve_weights(c.n_arcs, kk, x, q);
                        for (Eigen::Index t = 0; t < w.values.size(); ++t) os << "," << w.values(t);
                    } catch (const SingularMeander&) {
                        for (int t = 0; t < C; ++t) os << ",nan";
                    }
                    lines[static_cast<size_t>(k)] = os.str();
                });
                for (const auto& l : lines) std::printf("%s\n", l.c_str());
                return 0;
            }
            auto w = solve_weights(c.n_arcs, kappa, x, q);
            if (cfg.format == "csv") {
                const auto ds = enumerate_connectivities(c.n_arcs);
                std::printf("index,parens,Pi\n");
                for (Eigen::Index t = 0; t < w.values.size(); ++t)
                    std::printf("%ld,%s,%.17g\n", static_cast<long>(t + 1), ds[static_cast<size_t>(t)].parens().c_str(), w.values(t));
                return 0;
            }
            json j = envelope("weights");
            j["kappa"] = kappa;
            j["values"] = std::vector<double>(w.values.data(), w.values.data() + w.values.size());
            j["condition"] = w.condition;
            emit(j);
            return 0;
        }
        if (*cr) {
            std::string spec = fn;
            if (basis) spec = "basis:" + std::to_string(basis);
            if (weight) spec = "weight:" + std::to_string(weight);
            if (spec.empty()) throw UsageError("crossing needs --basis, --weight or --fn");
            auto F = make_function(spec, c.n_arcs, kappa, q);
            auto d = crossing_probabilities(c.n_arcs, F, x, kappa, q, lad);
            json j = envelope("crossing");
            j["kappa"] = kappa;
            j["function"] = spec;
            j["probabilities"] = std::vector<double>(d.probs.data(), d.probs.data() + d.probs.size());
            j["coefficients"] = std::vector<double>(d.coefficients.data(), d.coefficients.data() + d.coefficients.size());
            j["partition_value"] = d.partition_value;
            j["direct_value"] = d.direct_value;
            j["sum"] = d.probs.sum();
            j["warnings"] = d.warnings;
            emit(j);
            return 0;
        }
        if (*cl) {
            if (interval < 1 || interval >= 2 * c.n_arcs) throw UsageError("--interval must be in 1..2N-1");
            auto F = make_function(fn, c.n_arcs, kappa, q);
            auto res = classify_interval(c.n_arcs, F, x, interval, kappa, lad, cfg.thresholds);
            json j = envelope("classify");
            j["sle_type"] = to_string(res.sle_type);
            j["cft_type"] = to_string(res.cft_type);
            j["A0"] = res.fit.A0;
            j["B0"] = res.fit.B0;
            j["C0"] = res.fit.C0;
            j["A1"] = res.fit.A1;
            j["fit_residual"] = res.fit.residual;
            j["coefficients"] = std::vector<double>(res.coefficients.data(), res.coefficients.data() + res.coefficients.size());
            emit(j);
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
