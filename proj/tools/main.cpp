// ddh: command line driver for the delta-delta discretization of the
// finite Hilbert transform equation on an interval.
//
// Subcommands: solve (nodal profile at one N), study (error norms over a
// refinement sequence), spectrum (numerical-range / resolvent sampling),
// selftest (fast invariant suite).  Exit codes: 0 ok, 2 validation,
// 3 numerical, 4 I/O.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ddh/analysis.hpp"
#include "ddh/rng.hpp"
#include "ddh/spectral.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ddh;

namespace {

constexpr const char* kVersion = "ddhilbert 0.1.0";
constexpr int kSchemaVersion = 1;

// 17 significant digits, scientific; round-trips every double.
std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

Complex parse_complex(const std::string& text) {
    const auto comma = text.find(',');
    try {
        if (comma == std::string::npos) return {std::stod(text), 0.0};
        return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw ValidationError("config field lambda: expected re,im, got '" + text + "'");
    }
}

std::pair<double, double> parse_pair(const std::string& text, const std::string& field) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw ValidationError("config field " + field + ": expected lo,hi, got '" + text + "'");
    try {
        return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw ValidationError("config field " + field + ": expected lo,hi, got '" + text + "'");
    }
}

SolverChoice parse_solver(const std::string& name) {
    if (name == "dense") return SolverChoice::Dense;
    if (name == "levinson") return SolverChoice::Levinson;
    if (name == "auto") return SolverChoice::Auto;
    throw ValidationError("config field solver: expected dense, levinson or auto");
}

fs::path prepare_out_dir(const std::string& out) {
    fs::path dir(out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw IoError("cannot create output directory '" + out + "'");
    return dir;
}

void write_file(const fs::path& path, const std::string& payload) {
    std::ofstream stream(path, std::ios::binary);
    stream << payload;
    if (!stream.good()) throw IoError("cannot write '" + path.string() + "'");
}

// Common experiment flags shared by solve and study.
struct ExperimentArgs {
    double a = -0.15;
    double b = 1.35;
    std::string lambda = "2,0";
    std::string example = "const";
    double alpha = 0.25;
    std::string interior = "0,1.2";
    std::string out = ".";
    std::string format = "both";
    std::string solver = "auto";
    std::uint64_t seed = 0;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--a", a, "Left endpoint");
        cmd->add_option("--b", b, "Right endpoint");
        cmd->add_option("--lambda", lambda, "Spectral parameter as re,im");
        cmd->add_option("--example", example, "Exact case: const, bump or power");
        cmd->add_option("--alpha", alpha, "Power-case exponent in (-1/2, 1/2)");
        cmd->add_option("--interior", interior, "Interior norm window as lo,hi");
        cmd->add_option("--out", out, "Output directory");
        cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "json", "both"}));
        cmd->add_option("--solver", solver)->check(CLI::IsMember({"dense", "levinson", "auto"}));
        cmd->add_option("--seed", seed, "Seed echoed into outputs");
    }

    json echo() const {
        json j;
        j["a"] = a;
        j["b"] = b;
        const Complex lam = parse_complex(lambda);
        j["lambda_re"] = lam.real();
        j["lambda_im"] = lam.imag();
        j["example"] = example;
        j["alpha"] = alpha;
        const auto window = parse_pair(interior, "interior");
        j["interior_lo"] = window.first;
        j["interior_hi"] = window.second;
        j["solver"] = solver;
        j["seed"] = seed;
        return j;
    }
};

int run_solve(const ExperimentArgs& args, int n) {
    const Grid grid = Grid::from_N(args.a, args.b, n);
    const ExactCase exact(exact_kind_from_name(args.example), args.a, args.b, args.alpha);
    const SpectralParameter lam(parse_complex(args.lambda));
    const auto window = parse_pair(args.interior, "interior");
    const ToeplitzOperator op(grid.cells());

    std::vector<Complex> rhs(static_cast<std::size_t>(grid.cells()));
    for (int i = 0; i < grid.cells(); ++i) rhs[i] = exact.f(lam, grid.node(i));
    const SolveResult sol = solve(op, lam, rhs, parse_solver(args.solver));
    const ErrorReport rep = discrete_error(grid, exact, lam, op, sol, window.first, window.second);

    const fs::path dir = prepare_out_dir(args.out);
    {
        std::ostringstream csv;
        csv << "m,x,u_re,u_im,f_re,f_im,U_re,U_im,c_abs,E_abs,s\n";
        for (int i = 0; i < grid.cells(); ++i) {
            const Complex u = exact.u(grid.node(i));
            csv << (i + 1) << ',' << fmt17(grid.node(i)) << ',' << fmt17(u.real()) << ','
                << fmt17(u.imag()) << ',' << fmt17(rhs[i].real()) << ',' << fmt17(rhs[i].imag())
                << ',' << fmt17(sol.U[i].real()) << ',' << fmt17(sol.U[i].imag()) << ','
                << fmt17(std::abs(rep.c[i])) << ',' << fmt17(std::abs(rep.E[i])) << ','
                << fmt17(rep.s[i]) << '\n';
        }
        write_file(dir / ("profile_N" + std::to_string(n) + ".csv"), csv.str());
    }
    if (args.format != "csv") {
        json j;
        j["schema_version"] = kSchemaVersion;
        j["version"] = kVersion;
        j["config"] = args.echo();
        j["config"]["N"] = n;
        j["solver_used"] = sol.method == SolveMethod::Dense ? "dense" : "levinson";
        j["residual_rel"] = sol.residual_rel;
        j["norms"] = json::object();
        for (const char* key : error_norm_keys()) j["norms"][key] = error_norm_value(rep, key);
        write_file(dir / ("profile_N" + std::to_string(n) + ".json"), j.dump(2) + "\n");
    }
    return 0;
}

int run_study(const ExperimentArgs& args, std::vector<int> ns, bool large) {
    StudyConfig cfg;
    cfg.a = args.a;
    cfg.b = args.b;
    cfg.lambda = parse_complex(args.lambda);
    cfg.example = exact_kind_from_name(args.example);
    cfg.alpha = args.alpha;
    if (!ns.empty()) {
        cfg.Ns = std::move(ns);
    } else {
        cfg.Ns.clear();
        int n = 10;
        for (int j = 0; j <= (large ? 6 : 4); ++j, n *= 3) cfg.Ns.push_back(n);
    }
    const auto window = parse_pair(args.interior, "interior");
    cfg.interior_lo = window.first;
    cfg.interior_hi = window.second;
    cfg.solver = parse_solver(args.solver);
    cfg.seed = args.seed;

    const ConvergenceStudy study = run_study(cfg);

    const fs::path dir = prepare_out_dir(args.out);
    json rows = json::array();
    std::ostringstream csv;
    csv << "N,M";
    for (const char* key : error_norm_keys()) csv << ',' << key;
    csv << '\n';
    for (std::size_t i = 0; i < study.Ns.size(); ++i) {
        const ErrorReport& rep = study.reports[i];
        csv << study.Ns[i] << ',' << rep.c.size();
        json row;
        row["N"] = study.Ns[i];
        row["M"] = rep.c.size();
        for (const char* key : error_norm_keys()) {
            csv << ',' << fmt17(error_norm_value(rep, key));
            row[key] = error_norm_value(rep, key);
        }
        csv << '\n';
        rows.push_back(std::move(row));
    }
    if (args.format != "json") write_file(dir / "study.csv", csv.str());
    if (args.format != "csv") {
        json j;
        j["schema_version"] = kSchemaVersion;
        j["version"] = kVersion;
        j["config"] = args.echo();
        j["config"]["Ns"] = study.Ns;
        j["rows"] = std::move(rows);
        j["slopes"] = json::object();
        for (const auto& [key, value] : study.slopes) j["slopes"][key] = value;
        j["slope_window"] = study.slope_window;
        write_file(dir / "study.json", j.dump(2) + "\n");
    }
    return 0;
}

int run_spectrum(int m, int samples, const std::vector<std::string>& lambda_args,
                 std::uint64_t seed, const std::string& out) {
    const ToeplitzOperator op(m);
    SpectralReport scan = rayleigh_scan(op, samples, seed);

    json j;
    j["schema_version"] = kSchemaVersion;
    j["version"] = kVersion;
    j["M"] = m;
    j["samples"] = samples;
    j["seed"] = seed;
    j["rayleigh_min"] = scan.rayleigh_min;
    j["rayleigh_max"] = scan.rayleigh_max;
    j["max_imag_rayleigh"] = scan.max_imag_rayleigh;
    j["resolvent"] = json::array();
    if (!lambda_args.empty()) {
        std::vector<Complex> lambdas;
        lambdas.reserve(lambda_args.size());
        for (const auto& text : lambda_args) lambdas.push_back(parse_complex(text));
        const int trials = std::min(samples, 200);
        const SpectralReport probe = resolvent_probe(op, lambdas, trials, seed);
        for (const auto& sample : probe.resolvent) {
            json row;
            row["lambda_re"] = sample.lambda.real();
            row["lambda_im"] = sample.lambda.imag();
            row["dist"] = sample.dist;
            row["norm_ratio"] = sample.norm_ratio;
            row["trials"] = trials;
            j["resolvent"].push_back(std::move(row));
        }
    }
    const fs::path dir = prepare_out_dir(out);
    write_file(dir / ("spectrum_M" + std::to_string(m) + ".json"), j.dump(2) + "\n");
    return 0;
}

// --- selftest -------------------------------------------------------------

struct Check {
    const char* name;
    bool (*fn)();
};

bool st_grid() {
    const Grid g(-0.15, 1.35, 15);
    if (std::abs(g.h() - 0.1) > 1e-15) return false;
    if (std::abs(g.node(7) - 0.6) > 1e-15) return false;
    const Grid big(-0.15, 1.35, 405);
    for (int i = 0; i < big.cells(); ++i)
        if (std::abs(big.node(i) + big.node(big.cells() - 1 - i) - 1.2) > 4e-15) return false;
    return true;
}

bool st_catalog() {
    const ExactCase power(ExactKind::Power, -0.15, 1.35, 0.25);
    const double mid = 0.6;
    if (std::abs(power.u(mid) - Complex{std::sqrt(0.5), 0.0}) > 1e-14) return false;
    const SpectralParameter lam({0.0, 1.0});  // i = i cot(pi/4)
    const Complex f0 = power.f(lam, 0.0);
    const Complex f1 = power.f(lam, 1.0);
    return std::abs(f0 - f1) < 1e-12;
}

bool st_matvec() {
    for (int m : {2, 17, 256}) {
        const ToeplitzOperator op(m);
        SplitMix64 rng(42);
        std::vector<Complex> v(static_cast<std::size_t>(m));
        for (auto& z : v) z = rng.complex_symmetric();
        const auto direct = op.matvec_direct(v);
        const auto fast = op.matvec_fft(v);
        double num = 0.0, den = 0.0;
        for (int i = 0; i < m; ++i) {
            num += std::norm(direct[i] - fast[i]);
            den += std::norm(direct[i]);
        }
        if (!(std::sqrt(num) <= 1e-11 * std::sqrt(den))) return false;
    }
    return true;
}

bool st_symbol() {
    const auto sv = symbol(1.5707963267948966, 100000);
    return std::abs(sv.partial - sv.closed_form) <= 1e-4 && std::abs(sv.closed_form - 0.5) < 1e-15;
}

bool st_solver_agreement() {
    for (double lr : {2.0, 1.01}) {
        const ToeplitzOperator op(300);
        const SpectralParameter lam({lr, 0.0});
        SplitMix64 rng(7);
        std::vector<Complex> f(300);
        for (auto& z : f) z = rng.complex_symmetric();
        const auto dense = solve_dense(op, lam, f);
        const auto fast = solve_levinson(op, lam, f);
        double num = 0.0, den = 0.0;
        for (int i = 0; i < 300; ++i) {
            num += std::norm(dense.U[i] - fast.U[i]);
            den += std::norm(dense.U[i]);
        }
        const double tol = lr == 2.0 ? 1e-8 : 1e-6;
        if (!(std::sqrt(num / den) <= tol)) return false;
        if (!(fast.bound_ratio <= 1.0 + 1e-8)) return false;
    }
    return true;
}

bool st_stability_guard() {
    try {
        check_stability({0.5, 0.0});
    } catch (const UnstableParameterError&) {
        return true;
    }
    return false;
}

bool st_residual_identity() {
    for (auto kind : {ExactKind::Constant, ExactKind::SqrtBump, ExactKind::Power}) {
        for (int n : {10, 90}) {
            const Grid g = Grid::from_N(-0.15, 1.35, n);
            const ExactCase exact(kind, -0.15, 1.35);
            const SpectralParameter lam({2.0, 0.0});
            const ToeplitzOperator op(g.cells());
            std::vector<Complex> rhs(static_cast<std::size_t>(g.cells()));
            for (int i = 0; i < g.cells(); ++i) rhs[i] = exact.f(lam, g.node(i));
            const auto sol = solve(op, lam, rhs);
            const auto rep = discrete_error(g, exact, lam, op, sol);  // throws on violation
            std::vector<Complex> r = op.apply(rep.E);
            for (int i = 0; i < g.cells(); ++i) r[i] = lam.lambda() * rep.E[i] - r[i] - rep.c[i];
            if (!(l2_norm(r) <= 1e-10 * rep.norm_c_l2)) return false;
        }
    }
    return true;
}

bool st_defect() {
    const Grid g(-0.15, 1.35, 405);
    const auto s = midpoint_defect(g);
    for (int j = 0; j < 405; ++j) {
        if (std::abs(s[j] + s[404 - j]) > 1e-12) return false;
        const double da = g.node(j) - g.a();
        const double db = g.b() - g.node(j);
        const double bound = g.h() * g.h() / 8.0 * std::abs(1.0 / (da * da) - 1.0 / (db * db));
        if (!(std::abs(s[j]) <= bound + 1e-14)) return false;
    }
    const Grid fine = Grid::from_N(-0.15, 1.35, 100000);
    return std::abs(midpoint_defect_at(fine, 0) - 0.115931515658412) <= 1e-3;
}

bool st_pw_error() {
    const Grid g = Grid::from_N(-0.15, 1.35, 10);
    const ExactCase exact(ExactKind::Constant, -0.15, 1.35);
    std::vector<Complex> interp(static_cast<std::size_t>(g.cells()), Complex{1.0, 0.0});
    return pw_constant_l2_error(g, exact, interp) <= 1e-12;
}

bool st_determinism() {
    const ToeplitzOperator op(45);
    const auto one = rayleigh_scan(op, 200, 99);
    const auto two = rayleigh_scan(op, 200, 99);
    return one.rayleigh_min == two.rayleigh_min && one.rayleigh_max == two.rayleigh_max &&
           one.max_imag_rayleigh == two.max_imag_rayleigh;
}

int run_selftest() {
    const Check checks[] = {
        {"grid geometry and reversal symmetry", st_grid},
        {"catalog closed forms", st_catalog},
        {"fft matvec vs direct", st_matvec},
        {"symbol partial sums", st_symbol},
        {"levinson vs dense agreement", st_solver_agreement},
        {"stability rejection on the segment", st_stability_guard},
        {"residual identity, all examples", st_residual_identity},
        {"midpoint defect bound/antisymmetry", st_defect},
        {"piecewise-constant error exactness", st_pw_error},
        {"seeded scan determinism", st_determinism},
    };
    bool all_ok = true;
    for (const Check& check : checks) {
        bool ok = false;
        try {
            ok = check.fn();
        } catch (const std::exception& e) {
            std::cout << "  (" << e.what() << ")\n";
            ok = false;
        }
        std::printf("%-42s %s\n", check.name, ok ? "ok" : "FAIL");
        all_ok = all_ok && ok;
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"delta-delta solver for the finite Hilbert transform equation on an interval"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    ExperimentArgs solve_args;
    int solve_n = 10;
    CLI::App* solve_cmd = app.add_subcommand("solve", "Nodal profile at one refinement level");
    solve_args.add_flags(solve_cmd);
    solve_cmd->add_option("--N", solve_n, "Points per unit length (h = 1/N)");

    ExperimentArgs study_args;
    std::vector<int> study_ns;
    bool study_large = false;
    CLI::App* study_cmd = app.add_subcommand("study", "Error norms over a refinement sequence");
    study_args.add_flags(study_cmd);
    study_cmd->add_option("--Ns", study_ns, "Comma list of refinement levels")->delimiter(',');
    study_cmd->add_flag("--large", study_large, "Extend the default sequence to N = 7290");

    int spec_m = 15;
    int spec_samples = 10000;
    std::vector<std::string> spec_lambdas;
    std::uint64_t spec_seed = 0;
    std::string spec_out = ".";
    CLI::App* spec_cmd = app.add_subcommand("spectrum", "Numerical-range and resolvent sampling");
    spec_cmd->add_option("--M", spec_m, "Section size");
    spec_cmd->add_option("--samples", spec_samples, "Number of random unit vectors");
    spec_cmd->add_option("--lambda", spec_lambdas, "Resolvent probe points re,im (repeatable)");
    spec_cmd->add_option("--seed", spec_seed, "Generator seed");
    spec_cmd->add_option("--out", spec_out, "Output directory");

    CLI::App* selftest_cmd = app.add_subcommand("selftest", "Fast invariant suite (exit 0 iff green)");

    try {
        app.parse(argc, argv);
        if (solve_cmd->parsed()) return run_solve(solve_args, solve_n);
        if (study_cmd->parsed()) return run_study(study_args, study_ns, study_large);
        if (spec_cmd->parsed())
            return run_spectrum(spec_m, spec_samples, spec_lambdas, spec_seed, spec_out);
        if (selftest_cmd->parsed()) return run_selftest();
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ValidationError& e) {
        std::cerr << "error (validation): " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "error (numerical): " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "error (io): " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
