#include "jacsob/cli.hpp"

#include "jacsob/errors.hpp"
#include "jacsob/experiments.hpp"
#include "jacsob/report.hpp"
#include "jacsob/sobolev.hpp"
#include "jacsob/spectral_ops.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace jacsob {

namespace {

using ordered_json = nlohmann::ordered_json;

struct RunConfig {
    std::string command;
    double alpha = 0.0;
    double beta = 0.0;
    double p = 2.0;
    int m = 1;
    int k = 1;
    int N = 256;
    std::uint64_t seed = 42;
    GridSpec grid;
    std::string out;
    std::string format = "json";

    // command-specific
    std::optional<int> n;
    double theta = kPi / 2;
    double varphi = kPi / 2;
    double r = 0.5;
    std::optional<double> t;
    std::optional<double> sigma;
    std::string kind;
    std::string mode = "integral";
    int l = 0;
    std::string variant = "variable";
    std::string which = "R1";
    int points = 0;
};

std::string fmt17(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ordered_json num(double v) { return std::isinf(v) ? ordered_json(fmt17(v)) : ordered_json(v); }

class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
        if (!path.empty() && path != "-") {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) {
                throw std::runtime_error("cannot open output file '" + path + "'");
            }
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : fallback_; }
    void finish() {
        stream().flush();
        if (file_.is_open() && !file_) {
            throw std::runtime_error("failed writing output file");
        }
    }

private:
    std::ofstream file_;
    std::ostream& fallback_;
};

ordered_json params_json(const JacobiParams& p) { return {{"alpha", p.alpha()}, {"beta", p.beta()}}; }

// A scalar result: bare number on the terminal, a small record in a file.
void emit_scalar(const RunConfig& cfg, const JacobiParams& params, const std::string& name, double value,
                 std::ostream& out) {
    Output o(cfg.out, out);
    if (cfg.out.empty() || cfg.out == "-") {
        o.stream() << fmt17(value) << '\n';
    } else if (parse_format(cfg.format) == ReportFormat::json) {
        ordered_json j;
        j["command"] = cfg.command;
        j["params"] = params_json(params);
        j[name] = num(value);
        o.stream() << j.dump(2) << '\n';
    } else {
        o.stream() << "command," << name << '\n' << cfg.command << ',' << fmt17(value) << '\n';
    }
    o.finish();
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void emit_table(const RunConfig& cfg, const JacobiParams& params, const std::optional<JacobiParams>& basis,
                const Table& table, std::ostream& out) {
    Output o(cfg.out, out);
    if (parse_format(cfg.format) == ReportFormat::json) {
        ordered_json j;
        j["command"] = cfg.command;
        j["params"] = params_json(params);
        if (basis) {
            j["basis"] = params_json(*basis);
        }
        j["columns"] = table.columns;
        ordered_json rows = ordered_json::array();
        for (const auto& r : table.rows) {
            ordered_json row = ordered_json::array();
            for (double v : r) {
                row.push_back(num(v));
            }
            rows.push_back(std::move(row));
        }
        j["rows"] = std::move(rows);
        o.stream() << j.dump(2) << '\n';
    } else {
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            o.stream() << (i ? "," : "") << table.columns[i];
        }
        o.stream() << '\n';
        for (const auto& r : table.rows) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                o.stream() << (i ? "," : "") << fmt17(r[i]);
            }
            o.stream() << '\n';
        }
    }
    o.finish();
}

Table coefficient_table(const SpectralCoefficients& c) {
    Table t{{"n", "coefficient"}, {}};
    for (std::size_t n = 0; n < c.size(); ++n) {
        t.rows.push_back({static_cast<double>(n), c.coeffs[n]});
    }
    return t;
}

void require_grid_resolves(const RunConfig& cfg, int N) {
    const int resolved = max_resolved_degree(*build_grid(cfg.grid));
    if (N > resolved) {
        throw ConfigError("N = " + std::to_string(N) + " exceeds what the grid resolves (" + std::to_string(resolved) + ")");
    }
}

SpectralCoefficients input_function(const RunConfig& cfg, const JacobiParams& params) {
    if (cfg.N < 1) {
        throw ConfigError("N must be positive");
    }
    if (cfg.n) {
        if (*cfg.n < 0 || *cfg.n >= cfg.N) {
            throw ConfigError("--n must lie in [0, N)");
        }
        return SpectralCoefficients::unit(params, *cfg.n, cfg.N);
    }
    return random_test_function(params, cfg.N, cfg.seed);
}

DerivativeVariant parse_variant(const std::string& s) {
    if (s == "variable") {
        return DerivativeVariant::variable_index;
    }
    if (s == "interlacing") {
        return DerivativeVariant::interlacing;
    }
    throw ConfigError("--variant must be variable or interlacing, got '" + s + "'");
}

PotentialKind parse_kind(const std::string& s, const JacobiParams& params) {
    if (s.empty()) {
        return default_potential_kind(params);
    }
    if (s == "riesz") {
        return PotentialKind::riesz;
    }
    if (s == "bessel") {
        return PotentialKind::bessel;
    }
    throw ConfigError("--kind must be riesz or bessel, got '" + s + "'");
}

RieszKind parse_which(const std::string& s) {
    static const std::map<std::string, RieszKind> kinds{
        {"R1", RieszKind::R1}, {"R2", RieszKind::R2}, {"R1-tilde", RieszKind::R1_tilde}, {"R2-tilde", RieszKind::R2_tilde}};
    const auto it = kinds.find(s);
    if (it == kinds.end()) {
        throw ConfigError("--which must be R1, R2, R1-tilde or R2-tilde, got '" + s + "'");
    }
    return it->second;
}

PoissonSpec parse_poisson(const RunConfig& cfg) {
    if (cfg.mode == "semigroup") {
        const double t = cfg.t.value_or(-std::log(cfg.r));
        if (!(t > 0.0)) {
            throw ConfigError("--t must be positive");
        }
        return {PoissonMode::semigroup, t, 0};
    }
    if (!(cfg.r > 0.0 && cfg.r < 1.0)) {
        throw ConfigError("--r must lie in (0, 1)");
    }
    if (cfg.mode == "integral") {
        return {PoissonMode::integral, cfg.r, 0};
    }
    if (cfg.mode == "spectral") {
        return {PoissonMode::spectral_integral, cfg.r, 0};
    }
    if (cfg.mode == "tail") {
        return {PoissonMode::tail, cfg.r, cfg.l};
    }
    throw ConfigError("--mode must be semigroup, integral, spectral or tail, got '" + cfg.mode + "'");
}

void check_theta(double theta, const char* name) {
    if (!(theta > 0.0 && theta < kPi)) {
        throw ConfigError(std::string("--") + name + " must lie in (0, pi)");
    }
}

int run_eval(const std::string& what, const RunConfig& cfg, std::ostream& out) {
    const JacobiParams params(cfg.alpha, cfg.beta);
    if (what == "range") {
        const ExponentRange e = exponent_range(params);
        emit_table(cfg, params, std::nullopt, {{"lower", "upper", "critical"}, {{e.lower, e.upper, critical_exponent(params)}}},
                   out);
        return kExitPass;
    }
    if (what == "psi") {
        check_theta(cfg.theta, "theta");
        emit_scalar(cfg, params, "value", psi(params, cfg.theta), out);
        return kExitPass;
    }
    const int n = cfg.n.value_or(0);
    if (n < 0) {
        throw ConfigError("--n must be nonnegative");
    }
    if (what == "phi") {
        check_theta(cfg.theta, "theta");
        emit_scalar(cfg, params, "value", phi(params, n, cfg.theta), out);
    } else {
        emit_scalar(cfg, params, "value", eigenvalue(params, n), out);
    }
    return kExitPass;
}

int run_apply(const std::string& what, const RunConfig& cfg, std::ostream& out) {
    const JacobiParams params(cfg.alpha, cfg.beta);
    if (cfg.k < 1 || cfg.k > 8) {
        throw ConfigError("--k must lie in 1..8");
    }
    SpectralCoefficients c = input_function(cfg, params);
    if (what == "derivative") {
        c = derivative_spectral({parse_variant(cfg.variant), cfg.k}, c);
    } else if (what == "potential") {
        const PotentialKind kind = parse_kind(cfg.kind, params);
        c = potential(c, cfg.sigma.value_or(cfg.m), kind);
    } else if (what == "poisson") {
        c = poisson(c, parse_poisson(cfg));
    } else {
        c = riesz_transform(params, c, cfg.k, parse_which(cfg.which));
    }
    emit_table(cfg, params, c.params, coefficient_table(c), out);
    return kExitPass;
}

int run_norm(const std::string& what, const RunConfig& cfg, std::ostream& out) {
    const JacobiParams params(cfg.alpha, cfg.beta);
    if (what != "lp") {
        require_exponent(params, cfg.p);
    } else if (!(cfg.p >= 1.0)) {
        throw ConfigError("--p must be at least 1");
    }
    require_grid_resolves(cfg, cfg.N);
    const SpectralCoefficients c = input_function(cfg, params);
    BasisCache cache(build_grid(cfg.grid));
    double value = 0.0;
    if (what == "sobolev") {
        value = sobolev_norm(c, {parse_variant(cfg.variant), cfg.m, cfg.p}, cache);
    } else if (what == "potential") {
        value = potential_norm(c, cfg.sigma.value_or(cfg.m), cfg.p, cache);
    } else {
        value = lp_norm(cache.table(params, cfg.N).synthesize(c), cfg.p);
    }
    emit_scalar(cfg, params, "norm", value, out);
    return kExitPass;
}

int run_kernel(const RunConfig& cfg, std::ostream& out) {
    const JacobiParams params(cfg.alpha, cfg.beta);
    if (!(cfg.r > 0.0 && cfg.r < 1.0)) {
        throw ConfigError("--r must lie in (0, 1)");
    }
    const int terms = kernel_required_terms(params, cfg.r);
    if (cfg.points <= 0) {
        check_theta(cfg.theta, "theta");
        check_theta(cfg.varphi, "varphi");
        emit_scalar(cfg, params, "value", kernel_eval(params, cfg.r, cfg.theta, cfg.varphi, terms), out);
        return kExitPass;
    }
    std::vector<double> pts(static_cast<std::size_t>(cfg.points));
    for (int i = 0; i < cfg.points; ++i) {
        pts[i] = kPi * (i + 0.5) / cfg.points;
    }
    const auto K = kernel_matrix(params, cfg.r, pts, pts, terms);
    Table t{{"theta", "varphi", "kernel"}, {}};
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = 0; j < pts.size(); ++j) {
            t.rows.push_back({pts[i], pts[j], K[i][j]});
        }
    }
    emit_table(cfg, params, std::nullopt, t, out);
    return kExitPass;
}

int run_verify(const std::string& what, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const JacobiParams params(cfg.alpha, cfg.beta);
    const ReportFormat format = parse_format(cfg.format);
    // validate everything before any computation
    std::function<ExperimentReport()> job;
    if (what == "identities") {
        check_identity_suite(params, cfg.N, cfg.grid);
        job = [&] { return run_identity_suite(params, cfg.N, cfg.grid); };
    } else if (what == "theorem-a") {
        check_theorem_a(params, cfg.p, cfg.m, cfg.N, cfg.grid);
        job = [&] { return run_theorem_a(params, cfg.p, cfg.m, cfg.seed, cfg.N, cfg.grid); };
    } else if (what == "theorem-b") {
        check_theorem_b(params, cfg.p, cfg.N, cfg.grid);
        job = [&] { return run_theorem_b(params, cfg.p, cfg.seed, cfg.N, cfg.grid); };
    } else if (what == "poisson") {
        check_poisson_suite(params, cfg.p, cfg.N, cfg.grid);
        job = [&] { return run_poisson_suite(params, cfg.p, cfg.seed, cfg.N, cfg.grid); };
    } else if (what == "pencil") {
        check_pencil_suite(params, cfg.N, cfg.grid);
        job = [&] { return run_pencil_suite(params, cfg.N, cfg.grid); };
    } else if (what == "classical") {
        check_classical_comparison(params, cfg.p, cfg.m, cfg.grid);
        job = [&] { return run_classical_comparison(params, cfg.p, cfg.m, cfg.grid); };
    } else {
        check_maximal_sobolev(params, cfg.p, cfg.N, cfg.grid);
        job = [&] { return run_maximal_sobolev(params, cfg.p, cfg.seed, cfg.N, cfg.grid); };
    }
    Output o(cfg.out, out);
    const ExperimentReport report = job();
    o.stream() << (format == ReportFormat::json ? report_json(report) : report_csv(report));
    o.finish();
    std::size_t failed = 0;
    for (const auto& c : report.checks) {
        if (!c.pass) {
            ++failed;
            err << "FAIL " << c.description << ": measured " << fmt17(c.measured) << ", threshold "
                << fmt17(c.threshold) << '\n';
        }
    }
    err << report.name << ": " << (report.overall() ? "pass" : "fail") << " (" << report.checks.size() - failed << '/'
        << report.checks.size() << " checks)\n";
    return report.overall() ? kExitPass : kExitFailedCheck;
}

} // namespace

int dispatch(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Jacobi expansions: operators, Sobolev and potential spaces, numerical verification"};
    app.name(argv.empty() ? "jacsob" : argv.front());
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--alpha", cfg.alpha, "Jacobi parameter alpha (> -1)")->capture_default_str();
    app.add_option("--beta", cfg.beta, "Jacobi parameter beta (> -1)")->capture_default_str();
    app.add_option("--p", cfg.p, "Lebesgue exponent")->capture_default_str();
    app.add_option("--m", cfg.m, "Sobolev order / potential order")->capture_default_str();
    app.add_option("--k", cfg.k, "derivative or Riesz order")->capture_default_str();
    app.add_option("--N", cfg.N, "band limit (number of coefficients)")->capture_default_str();
    app.add_option("--seed", cfg.seed, "seed of the random test family")->capture_default_str();
    app.add_option("--grid-panels", cfg.grid.panels_per_side, "quadrature panels per side")->capture_default_str();
    app.add_option("--grid-ratio", cfg.grid.ratio, "geometric panel ratio")->capture_default_str();
    app.add_option("--grid-nodes", cfg.grid.nodes_per_panel, "Gauss nodes per panel")->capture_default_str();
    app.add_option("--out", cfg.out, "output file (default: stdout)");
    app.add_option("--format", cfg.format, "json or csv")->capture_default_str();
    app.add_option("--n", cfg.n, "index of a single eigenfunction (default: seeded random input)");
    app.add_option("--theta", cfg.theta, "evaluation angle in (0, pi)");
    app.add_option("--varphi", cfg.varphi, "second kernel angle in (0, pi)");
    app.add_option("--r", cfg.r, "Poisson radius in (0, 1)")->capture_default_str();
    app.add_option("--t", cfg.t, "semigroup time (default -log r)");
    app.add_option("--sigma", cfg.sigma, "potential order (default m)");
    app.add_option("--kind", cfg.kind, "potential kind: riesz or bessel (default by parameters)");
    app.add_option("--mode", cfg.mode, "Poisson mode: semigroup, integral, spectral, tail")->capture_default_str();
    app.add_option("--l", cfg.l, "tail cut for --mode tail")->capture_default_str();
    app.add_option("--variant", cfg.variant, "derivative variant: variable or interlacing")->capture_default_str();
    app.add_option("--which", cfg.which, "Riesz transform: R1, R2, R1-tilde, R2-tilde")->capture_default_str();
    app.add_option("--points", cfg.points, "kernel table on this many midpoints per axis");

    std::string leaf;
    using Leaf = std::pair<const char*, const char*>;
    const auto group = [&](const std::string& name, const std::string& help, std::initializer_list<Leaf> leaves) {
        CLI::App* g = app.add_subcommand(name, help);
        g->require_subcommand(1);
        g->fallthrough();
        for (const auto& [l, h] : leaves) {
            g->add_subcommand(l, h)->fallthrough()->callback([&leaf, &cfg, name, l] {
                leaf = l;
                cfg.command = name + " " + l;
            });
        }
        return g;
    };
    group("eval", "point values: phi, psi, eigenvalue, exponent range",
          {{"phi", "phi_n(theta), needs --n and --theta"},
           {"psi", "Psi(theta) = sin^{a+1/2}(theta/2) cos^{b+1/2}(theta/2)"},
           {"eigenvalue", "lambda_n = (n + A)^2, needs --n"},
           {"range", "admissible open interval of p and the critical exponent"}});
    group("apply", "spectral operators on an input function",
          {{"derivative", "coefficients of D^(k) f, or of the interlaced variant"},
           {"potential", "Riesz or Bessel potential of order --sigma"},
           {"poisson", "Poisson integral in one of the --mode forms"},
           {"riesz", "Riesz transform selected by --which"}});
    group("norm", "Sobolev, potential and L^p norms",
          {{"sobolev", "sum over j <= m of ||D^(j) f||_p"},
           {"potential", "||g||_p where f is the potential of g"},
           {"lp", "||f||_p"}});
    group("verify", "numerical verification suites",
          {{"identities", "orthonormality, derivative cross-checks, adjoints, factorizations"},
           {"theorem-a", "Sobolev vs potential norm equivalence"},
           {"theorem-b", "potential space inclusion and its failure below the exponent range"},
           {"poisson", "Poisson integrals: boundedness, convergence, kernel bound"},
           {"pencil", "pencil phenomenon around the critical exponent"},
           {"classical", "comparison with classical derivatives"},
           {"maximal", "maximal operators on Sobolev functions"}});
    app.add_subcommand("kernel", "Poisson-Jacobi kernel values")->fallthrough()->callback([&] { cfg.command = "kernel"; });

    std::vector<std::string> args(argv.size() > 1 ? argv.begin() + 1 : argv.end(), argv.end());
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitConfig;
    }

    try {
        parse_format(cfg.format);
        const std::string group_name = cfg.command.substr(0, cfg.command.find(' '));
        if (group_name == "eval") {
            return run_eval(leaf, cfg, out);
        }
        if (group_name == "apply") {
            return run_apply(leaf, cfg, out);
        }
        if (group_name == "norm") {
            return run_norm(leaf, cfg, out);
        }
        if (group_name == "verify") {
            return run_verify(leaf, cfg, out, err);
        }
        return run_kernel(cfg, out);
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << '\n';
    }
    return kExitConfig;
}

} // namespace jacsob
