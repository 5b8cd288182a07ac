// pspec: command-line front end for the p-adic spectral toolbox.
//
// Subcommands: verify, spectrum, basis, wavelet, fourier, apply, evolve.
// Exit codes: 0 success, 1 verification failure, 2 configuration error,
// 3 I/O error.

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "padic/bases.hpp"
#include "padic/evolution.hpp"
#include "padic/fourier.hpp"
#include "padic/io.hpp"
#include "padic/operators.hpp"
#include "padic/verify.hpp"

namespace {

using namespace padic;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitIoError = 3;

struct Options {
    long p = 2;
    long r = 1;
    long l = 0;
    double alpha = 1.0;
    std::string backend = "exact";
    std::string k_sign = "+";
    std::string out;
    std::string format = "csv";
    std::string kernel_path;
    std::string f0_path;
    std::vector<double> times;
    std::string region;
    std::uint64_t seed = 0x5eed;
};

void add_window_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--p", opt.p, "Prime p");
    cmd->add_option("--r", opt.r, "Ball exponent r (domain B_r)");
    cmd->add_option("--l", opt.l, "Constancy exponent l (resolution)");
    cmd->add_option("--alpha", opt.alpha, "Operator exponent alpha > 0");
    cmd->add_option("--backend", opt.backend, "Scalar backend")
        ->check(CLI::IsMember({"exact", "float"}));
    cmd->add_option("--k-sign", opt.k_sign, "Sign in k = -1 +- sqrt(p)")
        ->check(CLI::IsMember({"+", "-", "plus", "minus"}));
    cmd->add_option("--out", opt.out, "Output path");
    cmd->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
}

KSign sign_of(const Options& opt) {
    return (opt.k_sign == "-" || opt.k_sign == "minus") ? KSign::Minus : KSign::Plus;
}

BackendKind backend_of(const Options& opt) {
    return opt.backend == "float" ? BackendKind::ComplexFloat : BackendKind::ExactQuad;
}

CosetGrid grid_of(const Options& opt) { return CosetGrid(Prime(opt.p), opt.r, opt.l); }

void require_out(const Options& opt) {
    if (opt.out.empty()) throw std::invalid_argument("--out is required for this command");
}

void require_alpha(const Options& opt) {
    if (opt.alpha <= 0) throw std::invalid_argument("--alpha must be positive");
}

bool integral_alpha(const Options& opt) { return opt.alpha == std::floor(opt.alpha); }

std::optional<KernelSpec> load_kernel(const Options& opt) {
    if (opt.kernel_path.empty()) return std::nullopt;
    return read_kernel_spec(opt.kernel_path);
}

void attach_eigenvalues(BasisSet& basis, const Options& opt, const std::optional<KernelSpec>& kernel) {
    const CosetGrid& grid = basis.grid;
    for (auto& element : basis.elements) {
        if (element.kind == BasisKind::Constant) {
            element.eigenvalue = 0.0;
            continue;
        }
        if (kernel) {
            Rational n = element.kind == BasisKind::Wavelet
                             ? element.offset
                             : wavelet_index_of_center(grid.prime(), element.gamma, element.offset);
            element.eigenvalue = kernel_eigenvalue(*kernel, element.gamma, n);
        } else {
            element.eigenvalue =
                vladimirov_eigenvalue(grid.prime(), element.gamma, grid.ball_exponent(), opt.alpha);
        }
    }
}

int run_verify(const Options& opt) {
    VerifyConfig config{Prime(opt.p), opt.r, opt.l, opt.alpha, backend_of(opt), sign_of(opt), opt.seed};
    std::vector<CheckResult> results = run_verification(config);
    bool all_pass = true;
    std::string report = "name,pass,residual,bound\n";
    for (const auto& result : results) {
        all_pass = all_pass && result.pass;
        std::printf("%s %s max_residual=%s bound=%s\n", result.pass ? "PASS" : "FAIL",
                    result.name.c_str(), format_double(result.residual).c_str(),
                    format_double(result.bound).c_str());
        report += result.name + "," + (result.pass ? "1" : "0") + "," + format_double(result.residual) +
                  "," + format_double(result.bound) + "\n";
    }
    std::printf("%s: %zu checks\n", all_pass ? "OK" : "FAILED", results.size());
    if (!opt.out.empty()) atomic_write_text(opt.out, report);
    return all_pass ? kExitOk : kExitVerifyFailure;
}

int run_spectrum(const Options& opt) {
    require_out(opt);
    require_alpha(opt);
    CosetGrid grid = grid_of(opt);
    auto kernel = load_kernel(opt);
    BasisSet basis = kernel ? wavelet_basis(grid) : orthonormal_basis(grid, sign_of(opt));
    attach_eigenvalues(basis, opt, kernel);
    if (opt.format == "json")
        write_eigenvalue_table_json(opt.out, basis);
    else if (opt.format == "csv")
        write_eigenvalue_table_csv(opt.out, basis);
    else
        throw std::invalid_argument("spectrum: --format must be csv or json");
    return kExitOk;
}

int run_basis_dump(const Options& opt, bool wavelets) {
    require_out(opt);
    require_alpha(opt);
    CosetGrid grid = grid_of(opt);
    auto kernel = load_kernel(opt);
    BasisSet basis = wavelets ? wavelet_basis(grid) : orthonormal_basis(grid, sign_of(opt));
    attach_eigenvalues(basis, opt, kernel);
    if (opt.format == "json")
        write_basis_json(opt.out, basis);
    else if (opt.format == "csv")
        write_basis_csv(opt.out, basis);
    else
        throw std::invalid_argument("basis dumps support csv and json only");
    return kExitOk;
}

int run_fourier(const Options& opt) {
    require_out(opt);
    if (opt.f0_path.empty()) throw std::invalid_argument("fourier: --f0 is required");
    LoadedFunction f = read_function(opt.f0_path);
    Spectrum spectrum = std::holds_alternative<ExactFunction>(f)
                            ? dft_forward(std::get<ExactFunction>(f))
                            : dft_forward(std::get<ComplexFunction>(f));
    if (opt.format == "json")
        write_spectrum(opt.out, spectrum);
    else if (opt.format == "csv") {
        std::string out = "index,k,re,im\n";
        for (std::size_t i = 0; i < spectrum.frequencies.size(); ++i)
            out += std::to_string(i) + "," + to_string(spectrum.frequencies.frequency(i)) + "," +
                   format_double(spectrum.values[i].real()) + "," +
                   format_double(spectrum.values[i].imag()) + "\n";
        atomic_write_text(opt.out, out);
    } else
        throw std::invalid_argument("fourier: --format must be csv or json");
    return kExitOk;
}

int run_apply(const Options& opt) {
    require_out(opt);
    require_alpha(opt);
    if (opt.f0_path.empty()) throw std::invalid_argument("apply: --f0 is required");
    LoadedFunction f = read_function(opt.f0_path);
    auto kernel = load_kernel(opt);

    bool exact_route = std::holds_alternative<ExactFunction>(f) &&
                       backend_of(opt) == BackendKind::ExactQuad && (kernel || integral_alpha(opt));
    if (exact_route) {
        const ExactFunction& exact = std::get<ExactFunction>(f);
        OperatorMatrix<Rational> matrix =
            kernel ? kernel_matrix_exact(exact.grid(), *kernel)
                   : vladimirov_matrix_exact(exact.grid(), static_cast<long>(opt.alpha));
        write_function(opt.out, matrix.apply(exact));
        return kExitOk;
    }
    ComplexFunction dense = std::holds_alternative<ExactFunction>(f)
                                ? to_complex(std::get<ExactFunction>(f))
                                : std::get<ComplexFunction>(f);
    OperatorMatrix<double> matrix = kernel ? kernel_matrix(dense.grid(), *kernel)
                                           : vladimirov_matrix(dense.grid(), opt.alpha);
    write_function(opt.out, matrix.apply(dense));
    return kExitOk;
}

std::pair<Rational, long> parse_region(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("--region expects <center>:<gamma>, e.g. 0:0");
    return {parse_rational(text.substr(0, colon)), std::stol(text.substr(colon + 1))};
}

int run_evolve(const Options& opt) {
    require_out(opt);
    require_alpha(opt);
    if (opt.times.empty()) throw std::invalid_argument("evolve: --times is required");
    CosetGrid grid = grid_of(opt);
    auto kernel = load_kernel(opt);
    EvolutionOperator op =
        kernel ? EvolutionOperator(KernelOperator{*kernel}) : EvolutionOperator(VladimirovOperator{opt.alpha});

    EvolutionRun run = [&] {
        if (!opt.f0_path.empty()) {
            LoadedFunction f = read_function(opt.f0_path);
            if (std::holds_alternative<ExactFunction>(f))
                return solve_spectral(grid, op, std::get<ExactFunction>(f), opt.times, sign_of(opt));
            return solve_spectral(grid, op, std::get<ComplexFunction>(f), opt.times, sign_of(opt));
        }
        // Default initial condition: the indicator of Z_p, when the window
        // resolves it.
        if (grid.ball_exponent() < 0 || grid.constancy_exponent() > 0)
            throw std::invalid_argument("evolve: window cannot hold the default initial condition; pass --f0");
        std::vector<QuadScalar> values(grid.size());
        for (std::size_t m = 0; m < grid.size(); ++m)
            values[m] = QuadScalar(
                Rational(ball_indicator(grid.representative(m), Rational(0), 0, grid.prime()) ? 1 : 0));
        return solve_spectral(grid, op, ExactFunction(grid, std::move(values)), opt.times, sign_of(opt));
    }();

    if (!opt.region.empty()) {
        auto [center, gamma] = parse_region(opt.region);
        std::vector<double> series = survival_series(run, ball_region(grid, center, gamma));
        if (opt.format == "csv")
            write_survival_csv(opt.out, run, series);
        else if (opt.format == "json")
            write_survival_json(opt.out, run, series);
        else
            write_survival_svg(opt.out, run, series);
        return kExitOk;
    }
    if (opt.format == "csv")
        write_snapshots_csv(opt.out, run);
    else if (opt.format == "json")
        write_snapshots_json(opt.out, run);
    else
        write_snapshots_svg(opt.out, run);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-adic spectral toolbox: Fourier analysis on balls, real eigenbases of the "
                 "Vladimirov operator, wavelets and ultrametric Cauchy solvers"};
    app.set_config("--config", "", "Read options from an INI/TOML file (flags take precedence)");
    app.require_subcommand(1);

    Options opt;
    CLI::App* verify = app.add_subcommand("verify", "Run the invariant suite for one configuration");
    add_window_options(verify, opt);
    verify->add_option("--seed", opt.seed, "Seed for randomized invariants");

    CLI::App* spectrum = app.add_subcommand("spectrum", "Eigenvalue table of the diagonal basis");
    add_window_options(spectrum, opt);
    spectrum->add_option("--kernel", opt.kernel_path, "Kernel spec file (wavelet eigenvalues)");

    CLI::App* basis = app.add_subcommand("basis", "Dump the orthonormal eigenbasis with values");
    add_window_options(basis, opt);
    basis->add_option("--kernel", opt.kernel_path, "Kernel spec file (attaches its eigenvalues)");

    CLI::App* wavelet_cmd = app.add_subcommand("wavelet", "Dump the wavelet basis with values");
    add_window_options(wavelet_cmd, opt);
    wavelet_cmd->add_option("--kernel", opt.kernel_path, "Kernel spec file (attaches its eigenvalues)");

    CLI::App* fourier = app.add_subcommand("fourier", "Transform a function file to its spectrum");
    add_window_options(fourier, opt);
    fourier->add_option("--f0", opt.f0_path, "Input function file");

    CLI::App* apply = app.add_subcommand("apply", "Apply an operator to a function file");
    add_window_options(apply, opt);
    apply->add_option("--f0", opt.f0_path, "Input function file");
    apply->add_option("--kernel", opt.kernel_path, "Kernel spec file (default: Vladimirov alpha)");

    CLI::App* evolve = app.add_subcommand("evolve", "Solve the Cauchy problem on a time grid");
    add_window_options(evolve, opt);
    evolve->add_option("--f0", opt.f0_path, "Initial condition file (default: indicator of Z_p)");
    evolve->add_option("--kernel", opt.kernel_path, "Kernel spec file (default: Vladimirov alpha)");
    evolve->add_option("--times", opt.times, "Comma-separated times")->delimiter(',');
    evolve->add_option("--region", opt.region, "Survival region <center>:<gamma> (emits s(t))");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (verify->parsed()) return run_verify(opt);
        if (spectrum->parsed()) return run_spectrum(opt);
        if (basis->parsed()) return run_basis_dump(opt, false);
        if (wavelet_cmd->parsed()) return run_basis_dump(opt, true);
        if (fourier->parsed()) return run_fourier(opt);
        if (apply->parsed()) return run_apply(opt);
        if (evolve->parsed()) return run_evolve(opt);
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIoError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfigError;
    }
    return kExitConfigError;
}
