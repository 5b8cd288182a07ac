#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "padic/bases.hpp"
#include "padic/evolution.hpp"
#include "padic/io.hpp"
#include "support/helpers.hpp"

using namespace padic;
using namespace padic::testing;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() : path(std::filesystem::temp_directory_path() / "pspec-io-test") {
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("function files round trip bit-exactly") {
    TempDir dir;
    auto gen = rng(1771);
    CosetGrid grid(Prime(3), 1, -1);

    SUBCASE("exact backend") {
        ExactFunction f = orthonormal_detail(grid, 1, Rational(0), 2, KSign::Minus);
        std::string path = dir.file("f.json");
        write_function(path, f);
        LoadedFunction loaded = read_function(path);
        REQUIRE(std::holds_alternative<ExactFunction>(loaded));
        CHECK(std::get<ExactFunction>(loaded) == f);

        write_function(dir.file("g.json"), f);
        CHECK(read_text(path) == read_text(dir.file("g.json")));  // deterministic bytes
    }
    SUBCASE("float backend") {
        ComplexFunction f = random_complex_function(grid, gen);
        std::string path = dir.file("f.json");
        write_function(path, f);
        LoadedFunction loaded = read_function(path);
        REQUIRE(std::holds_alternative<ComplexFunction>(loaded));
        CHECK(std::get<ComplexFunction>(loaded) == f);
    }
}

TEST_CASE("spectrum files round trip") {
    TempDir dir;
    auto gen = rng(1772);
    CosetGrid grid(Prime(2), 2, -1);
    Spectrum s = dft_forward(random_complex_function(grid, gen));
    std::string path = dir.file("s.json");
    write_spectrum(path, s);
    Spectrum loaded = read_spectrum(path);
    CHECK(loaded.frequencies == s.frequencies);
    CHECK(loaded.values == s.values);
}

TEST_CASE("kernel files round trip") {
    TempDir dir;
    KernelSpec spec(Prime(3), -1, 2);
    spec.set_scale_default(0, make_ratio(2, 5));
    spec.set_scale_default(2, make_ratio(-1, 7));
    spec.set_override(2, make_ratio(1, 3), Rational(4));
    std::string path = dir.file("kernel.json");
    write_kernel_spec(path, spec);
    KernelSpec loaded = read_kernel_spec(path);
    CHECK(loaded.prime() == Prime(3));
    CHECK(loaded.gamma_min() == -1);
    CHECK(loaded.gamma_max() == 2);
    CHECK(loaded.coefficient(0, Rational(0)) == make_ratio(2, 5));
    CHECK(loaded.coefficient(2, make_ratio(1, 3)) == 4);
    CHECK(loaded.coefficient(2, make_ratio(2, 3)) == make_ratio(-1, 7));
    CHECK(loaded.coefficient(1, Rational(0)) == 0);
}

TEST_CASE("basis dumps are well-formed and deterministic") {
    TempDir dir;
    CosetGrid grid(Prime(2), 1, -1);
    BasisSet basis = orthonormal_basis(grid, KSign::Plus);
    basis.elements[1].eigenvalue = -0.5;

    write_basis_json(dir.file("b.json"), basis);
    write_basis_json(dir.file("b2.json"), basis);
    CHECK(read_text(dir.file("b.json")) == read_text(dir.file("b2.json")));
    std::string text = read_text(dir.file("b.json"));
    CHECK(text.find("\"kind\": \"orthonormal\"") != std::string::npos);
    CHECK(text.find("\"kind\": \"constant\"") != std::string::npos);

    write_basis_csv(dir.file("b.csv"), basis);
    std::string csv = read_text(dir.file("b.csv"));
    CHECK(csv.rfind("kind,gamma,n,label,eigenvalue", 0) == 0);

    BasisSet wavelets = wavelet_basis(grid);
    write_basis_json(dir.file("w.json"), wavelets);
    CHECK(read_text(dir.file("w.json")).find("\"wavelet\"") != std::string::npos);
}

TEST_CASE("time series writers") {
    TempDir dir;
    CosetGrid grid(Prime(2), 1, 0);
    ExactFunction f0 = indicator_function(grid, Rational(0), 0);
    EvolutionRun run = solve_spectral(grid, VladimirovOperator{1.0}, f0, {0.0, 1.0});

    write_snapshots_csv(dir.file("run.csv"), run);
    std::string csv = read_text(dir.file("run.csv"));
    CHECK(csv.rfind("t,f(0),f(1/2)", 0) == 0);
    // The t = 0 row carries the synthesized initial condition.
    std::size_t row = csv.find("\n0,");
    REQUIRE(row != std::string::npos);
    CHECK(close(std::stod(csv.substr(row + 3)), 1.0, 1e-14));

    std::vector<double> series = survival_series(run, ball_region(grid, Rational(0), 0));
    write_survival_csv(dir.file("s.csv"), run, series);
    std::string surv = read_text(dir.file("s.csv"));
    CHECK(surv.rfind("t,s\n0,", 0) == 0);
    CHECK(close(std::stod(surv.substr(6)), 1.0, 1e-14));

    write_snapshots_svg(dir.file("run.svg"), run);
    std::string svg = read_text(dir.file("run.svg"));
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("polyline") != std::string::npos);

    write_snapshots_json(dir.file("run.json"), run);
    write_survival_json(dir.file("s.json"), run, series);
    CHECK(read_text(dir.file("run.json")).find("\"snapshots\"") != std::string::npos);
    CHECK(read_text(dir.file("s.json")).find("\"survival\"") != std::string::npos);
}

TEST_CASE("io error paths") {
    TempDir dir;
    CHECK_THROWS_AS(read_function(dir.file("missing.json")), IoError);

    std::ofstream(dir.file("broken.json")) << "{ not json";
    CHECK_THROWS_AS(read_function(dir.file("broken.json")), IoError);

    std::ofstream(dir.file("wrong.json")) << "{\"format\": \"something-else\"}";
    CHECK_THROWS_AS(read_function(dir.file("wrong.json")), IoError);

    // Malformed rational strings are rejected with the path attached.
    std::ofstream(dir.file("badvalue.json"))
        << "{\"format\":\"pspec-function\",\"p\":2,\"r\":1,\"l\":0,\"backend\":\"exact\","
           "\"values\":[[\"1/0\",\"0\"],[\"0\",\"0\"]]}";
    CHECK_THROWS_AS(read_function(dir.file("badvalue.json")), IoError);

    // Atomic writes leave no temporary behind.
    write_function(dir.file("clean.json"), ExactFunction::zero(CosetGrid(Prime(2), 1, 0)));
    CHECK_FALSE(std::filesystem::exists(dir.file("clean.json") + ".tmp"));
}
